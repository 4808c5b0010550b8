#include <fstream>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "bookemb/cnf.h"
#include "bookemb/gadgets.h"
#include "bookemb/io.h"
#include "bookemb/lemmas.h"
#include "bookemb/solver.h"
#include "bookemb/svg.h"

using namespace bookemb;

namespace {

constexpr int kExitSat = 0;
constexpr int kExitUnsat = 20;
constexpr int kExitUnknown = 30;
constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;

// graphs past this go to the compact text format
constexpr uint32_t kJsonNodeLimit = 100000;

struct GenArgs {
  std::string gadget, variant, out;
  int depth = 2, copies = 15, n = 1000;
};

int runGen(const GenArgs& a) {
  Graph g;
  if (a.gadget == "q1" || a.gadget == "q1+12" || a.gadget == "q1+ab") {
    Q1Variant v = Q1Variant::None;
    if (a.gadget == "q1+12") v = Q1Variant::Plus12;
    if (a.gadget == "q1+ab") v = Q1Variant::PlusAB;
    g = buildQ1(v);
  } else if (a.gadget == "q2" || a.gadget == "q2+12") {
    Q2Variant v = Q2Variant::CentersEdge;
    if (a.gadget == "q2+12") {
      if (!a.variant.empty()) throw Error(ErrorKind::InvalidSpec, "q2+12 takes no --variant");
      v = Q2Variant::Plus12;
    } else if (a.variant == "terminals_edge") {
      v = Q2Variant::TerminalsEdge;
    } else if (!a.variant.empty() && a.variant != "centers_edge") {
      throw Error(ErrorKind::InvalidSpec, "unknown q2 variant: " + a.variant);
    }
    g = buildQ2(a.depth, v);
  } else if (a.gadget == "quad" || a.gadget == "quad+12") {
    Q2Variant inner = Q2Variant::CentersEdge;
    if (a.variant == "terminals_edge")
      inner = Q2Variant::TerminalsEdge;
    else if (!a.variant.empty() && a.variant != "centers_edge")
      throw Error(ErrorKind::InvalidSpec, "unknown quad variant: " + a.variant);
    g = buildQuad(a.copies, a.depth, a.gadget == "quad+12" ? QuadVariant::Plus12 : QuadVariant::None, inner);
  } else if (a.gadget == "g") {
    g = buildG(a.n, a.copies, a.depth);
  } else {
    throw Error(ErrorKind::InvalidSpec, "unknown gadget: " + a.gadget);
  }
  if (g.nodeCount() <= kJsonNodeLimit) {
    writeFile(a.out, serializeGraphJson(g));
  } else {
    std::ofstream out(a.out, std::ios::binary);
    if (!out) throw Error(ErrorKind::ParseError, "cannot open " + a.out + " for writing");
    writeGraphText(out, g);
  }
  writeFile(a.out + ".roles.json", serializeRoles(g));
  std::cout << "wrote " << a.out << ": " << g.nodeCount() << " nodes, " << g.edges().size() << " edges\n";
  return 0;
}

Graph loadGraph(const std::string& path, const std::string& rolesPath = "") {
  Graph g = parseGraphAuto(readFile(path));
  if (!rolesPath.empty()) parseRolesInto(readFile(rolesPath), g);
  return g;
}

/// marker constraints hold if some placement of the markers passes the check
bool constraintsHold(const Graph& g, const BookEmbedding& emb, const ConstraintSet& cs) {
  size_t m = cs.markers.size();
  if (m == 0) return checkConstraints(g, emb, cs).clean();
  uint32_t gaps = std::max<uint32_t>(g.nodeCount(), 1);
  MarkerPlacement mp;
  mp.at.assign(m, {0, 0});
  // markers per gap in rank order; recursive placement enumeration
  std::function<bool(size_t, std::vector<std::vector<uint32_t>>&)> place =
      [&](size_t i, std::vector<std::vector<uint32_t>>& perGap) -> bool {
    if (i == m) return checkConstraints(g, emb, cs, mp).clean();
    for (uint32_t gp = 0; gp < gaps; gp++) {
      auto& list = perGap[gp];
      for (size_t r = 0; r <= list.size(); r++) {
        list.insert(list.begin() + long(r), uint32_t(i));
        for (size_t q = 0; q < list.size(); q++) mp.at[list[q]] = {gp, uint32_t(q)};
        if (place(i + 1, perGap)) return true;
        list.erase(list.begin() + long(r));
        for (size_t q = 0; q < list.size(); q++) mp.at[list[q]] = {gp, uint32_t(q)};
      }
    }
    return false;
  };
  std::vector<std::vector<uint32_t>> perGap(gaps);
  return place(0, perGap);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact book-embedding toolkit"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* cGen = app.add_subcommand("gen", "generate a gadget graph");
  cGen->add_option("--gadget", gen.gadget, "q1|q1+12|q1+ab|q2|q2+12|quad|quad+12|g")->required();
  cGen->add_option("--depth", gen.depth, "stellation depth");
  cGen->add_option("--copies", gen.copies, "glued copies for quad/g");
  cGen->add_option("--n", gen.n, "path length for g");
  cGen->add_option("--variant", gen.variant, "centers_edge|terminals_edge");
  cGen->add_option("--out", gen.out, "output graph path")->required();

  std::string graphPath, rolesPath, certPath, consPath, outPath, name, dimacsPath, modelPath;
  int k = 0, cut = 0;
  bool minPages = false;
  uint64_t budgetNodes = 0;
  double budgetSeconds = 0;
  int threads = 1;

  auto* cSolve = app.add_subcommand("solve", "decide k pages or compute the pagenumber");
  cSolve->add_option("--graph", graphPath)->required();
  cSolve->add_option("--roles", rolesPath, "roles sidecar (needed for role: refs in constraints)");
  cSolve->add_option("--k", k, "page count to decide");
  cSolve->add_flag("--min", minPages, "minimize the page count");
  cSolve->add_option("--constraints", consPath);
  cSolve->add_option("--budget-nodes", budgetNodes);
  cSolve->add_option("--budget-seconds", budgetSeconds);
  cSolve->add_option("--threads", threads);
  cSolve->add_option("--out", outPath, "certificate output on SAT");

  auto* cVerify = app.add_subcommand("verify", "check a certificate");
  cVerify->add_option("--graph", graphPath)->required();
  cVerify->add_option("--roles", rolesPath);
  cVerify->add_option("--cert", certPath)->required();
  cVerify->add_option("--constraints", consPath);

  auto* cEncode = app.add_subcommand("encode", "emit a DIMACS encoding");
  cEncode->add_option("--graph", graphPath)->required();
  cEncode->add_option("--roles", rolesPath);
  cEncode->add_option("--k", k)->required();
  cEncode->add_option("--constraints", consPath);
  cEncode->add_option("--cut", cut, "node placed first in the linearization");
  cEncode->add_option("--out", outPath)->required();

  auto* cDecode = app.add_subcommand("decode", "turn a SAT model into a certificate");
  cDecode->add_option("--graph", graphPath)->required();
  cDecode->add_option("--roles", rolesPath);
  cDecode->add_option("--dimacs", dimacsPath)->required();
  cDecode->add_option("--model", modelPath)->required();
  cDecode->add_option("--out", outPath);

  auto* cLemma = app.add_subcommand("lemma", "run or export a named scenario");
  cLemma->add_option("--name", name)->required();
  cLemma->add_option("--budget-nodes", budgetNodes);
  cLemma->add_option("--budget-seconds", budgetSeconds);
  std::string exportDir;
  cLemma->add_option("--export", exportDir, "write DIMACS + atom map here instead of solving");
  cLemma->add_option("--model", modelPath, "verify an external SAT model");
  cLemma->add_option("--out", outPath, "outcome report path");

  auto* cDraw = app.add_subcommand("draw", "render an arc diagram");
  cDraw->add_option("--graph", graphPath)->required();
  cDraw->add_option("--cert", certPath)->required();
  cDraw->add_option("--out", outPath)->required();

  auto* cStats = app.add_subcommand("stats", "print graph statistics");
  cStats->add_option("--graph", graphPath)->required();
  cStats->add_option("--roles", rolesPath);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (cGen->parsed()) return runGen(gen);

    if (cSolve->parsed()) {
      if (minPages == (k > 0)) {
        std::cerr << "error: give exactly one of --k or --min\n";
        return kExitUsage;
      }
      Graph g = loadGraph(graphPath, rolesPath);
      ConstraintSet cs;
      if (!consPath.empty()) cs = parseConstraints(readFile(consPath), g);
      Budget budget;
      budget.maxExpanded = budgetNodes;
      budget.wallSeconds = budgetSeconds;
      budget.threads = threads;
      if (minPages) {
        PagenumberResult r = pagenumber(g, budget);
        if (!r.pages) {
          std::cout << "UNKNOWN\n";
          return kExitUnknown;
        }
        std::cout << *r.pages << "\n";
        if (!outPath.empty() && r.witness) writeFile(outPath, serializeCertificate(g, *r.witness));
        return kExitSat;
      }
      Verdict v = decideKPages(g, k, cs, budget);
      if (v.kind == Verdict::Kind::Sat) {
        std::cout << "SAT\n";
        if (!outPath.empty()) writeFile(outPath, serializeCertificate(g, *v.witness));
        return kExitSat;
      }
      std::cout << (v.kind == Verdict::Kind::Unsat ? "UNSAT\n" : "UNKNOWN\n");
      return v.kind == Verdict::Kind::Unsat ? kExitUnsat : kExitUnknown;
    }

    if (cVerify->parsed()) {
      Graph g = loadGraph(graphPath, rolesPath);
      BookEmbedding emb = parseCertificate(readFile(certPath), g);
      ValidationReport rep = validateEmbedding(g, emb);
      if (!rep.clean()) {
        for (const auto& i : rep.issues)
          if (!i.warning) std::cerr << "violation: " << i.message << "\n";
        return kExitInvalid;
      }
      if (!consPath.empty()) {
        ConstraintSet cs = parseConstraints(readFile(consPath), g);
        if (!constraintsHold(g, emb, cs)) {
          std::cerr << "violation: constraint set not satisfied by the certificate\n";
          return kExitInvalid;
        }
      }
      std::cout << "ok\n";
      return 0;
    }

    if (cEncode->parsed()) {
      Graph g = loadGraph(graphPath, rolesPath);
      ConstraintSet cs;
      if (!consPath.empty()) cs = parseConstraints(readFile(consPath), g);
      writeFile(outPath, emitDimacs(encode(g, k, cs, NodeId(cut))));
      return 0;
    }

    if (cDecode->parsed()) {
      Graph g = loadGraph(graphPath, rolesPath);
      CnfInstance cnf = parseDimacs(readFile(dimacsPath));
      std::vector<int8_t> model = parseModel(readFile(modelPath), cnf.vars);
      BookEmbedding emb = decode(cnf, model, g, cnf.map.k);
      if (!validateEmbedding(g, emb).clean()) {
        std::cerr << "decoded model is not a valid embedding\n";
        return kExitInvalid;
      }
      std::string cert = serializeCertificate(g, emb);
      if (!outPath.empty())
        writeFile(outPath, cert);
      else
        std::cout << cert;
      return 0;
    }

    if (cLemma->parsed()) {
      Scenario s = makeScenario(name);
      if (!exportDir.empty()) {
        writeFile(exportDir + "/" + s.name + ".cnf", exportScenarioDimacs(s));
        std::cout << "exported " << s.name << ".cnf\n";
        return 0;
      }
      OutcomeReport r;
      if (!modelPath.empty()) {
        r = verifyScenarioModel(s, readFile(modelPath));
      } else {
        Budget budget;
        budget.maxExpanded = budgetNodes;
        budget.wallSeconds = budgetSeconds;
        r = runScenario(s, budget);
      }
      if (!outPath.empty()) writeFile(outPath, reportJson(r, s.graph));
      std::cout << r.scenario << ": " << r.verdict
                << (r.exhausted && r.verdict == "unsat" ? " (search space exhausted)" : "") << "\n";
      if (!r.matchedExpectation) {
        std::cerr << "error: verdict does not match the scenario's expectation\n";
        return kExitInvalid;
      }
      if (r.verdict == "sat") return kExitSat;
      if (r.verdict == "unsat") return kExitUnsat;
      return kExitUnknown;
    }

    if (cDraw->parsed()) {
      Graph g = loadGraph(graphPath, rolesPath);
      BookEmbedding emb = parseCertificate(readFile(certPath), g);
      if (!validateEmbedding(g, emb).clean()) {
        std::cerr << "certificate is not a valid embedding\n";
        return kExitInvalid;
      }
      writeFile(outPath, renderArcDiagram(g, emb));
      return 0;
    }

    if (cStats->parsed()) {
      Graph g = loadGraph(graphPath, rolesPath);
      ValidationReport rep = g.validate();
      std::cout << "nodes: " << g.nodeCount() << "\n"
                << "edges: " << g.edges().size() << "\n"
                << "roles: " << g.roles().size() << "\n"
                << "triangles: " << g.triangles().size() << "\n"
                << "validation: " << (rep.clean() ? "clean" : "FAILED") << " (" << rep.issues.size()
                << " issues)\n";
      return rep.clean() ? 0 : kExitInvalid;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::MalformedModel ? kExitInvalid : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

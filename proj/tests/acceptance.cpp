// Acceptance suite: one pass/fail line per criterion.
// usage: acceptance <cli-binary> <scratch-dir>

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bookemb/cnf.h"
#include "bookemb/gadgets.h"
#include "bookemb/io.h"
#include "bookemb/lemmas.h"
#include "bookemb/solver.h"
#include "oracle.h"
#include "testgraphs.h"

using namespace bookemb;
namespace fs = std::filesystem;

namespace {

std::string cli;
std::string scratch;
int failures = 0;

void report(int criterion, bool pass, const std::string& what) {
  std::cout << "criterion " << criterion << ": " << (pass ? "PASS" : "FAIL") << " - " << what << "\n";
  std::cout.flush();
  if (!pass) failures++;
}

struct RunResult {
  int exitCode = -1;
  double seconds = 0;
  std::string output;
};

RunResult run(const std::string& args) {
  std::string outFile = scratch + "/cmd_output.txt";
  std::string cmd = cli + " " + args + " > " + outFile + " 2>&1";
  auto t0 = std::chrono::steady_clock::now();
  int status = std::system(cmd.c_str());
  RunResult r;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.output = readFile(outFile);
  return r;
}

void criterion1() {
  RunResult a = run("lemma --name lemma1_plus12");
  RunResult b = run("lemma --name lemma1_plusAB");
  bool pass = a.exitCode == 20 && b.exitCode == 20 && a.seconds < 600 && b.seconds < 600 &&
              a.output.find("search space exhausted") != std::string::npos &&
              b.output.find("search space exhausted") != std::string::npos;
  std::ostringstream what;
  what << "lemma1_plus12 and lemma1_plusAB UNSAT by exhaustion (" << a.seconds << "s, " << b.seconds
       << "s)";
  report(1, pass, what.str());
}

void criterion2() {
  RunResult r = run("lemma --name lemma2_outside");
  bool pass = r.exitCode == 20 && r.seconds < 1800 &&
              r.output.find("search space exhausted") != std::string::npos;
  std::ostringstream what;
  what << "lemma2_outside UNSAT by exhaustion (" << r.seconds << "s)";
  report(2, pass, what.str());
}

void criterion3() {
  auto t0 = std::chrono::steady_clock::now();
  struct Case {
    const char* name;
    Graph g;
  };
  std::vector<Case> cases;
  cases.push_back({"C5", testgraphs::cycle(5)});
  cases.push_back({"K4", testgraphs::complete(4)});
  cases.push_back({"K5", testgraphs::complete(5)});
  cases.push_back({"K1,5", testgraphs::star(5)});
  cases.push_back({"Q1", buildQ1()});
  // frozen expectations; the oracle recomputes each value independently
  const int frozen[5] = {1, 2, 3, 1, 2};
  bool pass = true;
  std::ostringstream what;
  what << "pagenumbers";
  for (size_t i = 0; i < cases.size(); i++) {
    PagenumberResult r = pagenumber(cases[i].g);
    int expected = oracle::pagenumber(cases[i].g);
    bool ok = r.pages && *r.pages == expected && expected == frozen[i] && r.witness &&
              validateEmbedding(cases[i].g, *r.witness).clean();
    what << " " << cases[i].name << "=" << (r.pages ? *r.pages : -1);
    pass = pass && ok;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  what << " all oracle-confirmed (" << secs << "s)";
  report(3, pass && secs < 300, what.str());
}

void criterion4() {
  std::mt19937_64 rng(987654321);
  int agreements = 0, total = 0;
  for (int t = 0; t < 200; t++) {
    uint32_t n = 5 + uint32_t(t % 3);
    Graph g = testgraphs::randomConnected(n, rng);
    for (int k = 1; k <= 3; k++) {
      Verdict v = decideKPages(g, k, {});
      DpllOutcome d = dpllSolve(encode(g, k, {}));
      total++;
      bool sat = v.kind == Verdict::Kind::Sat;
      if (d.kind != SatResult::Unknown && sat == (d.kind == SatResult::Sat)) agreements++;
    }
  }
  std::ostringstream what;
  what << "solver/DPLL agreement " << agreements << "/" << total << " on 200 seeded graphs";
  report(4, agreements == total, what.str());
}

void criterion5() {
  Prop1Report rep = runProp1Suite(100, 20250601);
  // corrupted negative control: a color-1 edge exits an interval joined by a
  // color-1 path
  Graph g;
  for (int i = 0; i < 6; i++) g.addNode();
  g.addEdge(0, 1);
  g.addEdge(1, 3);
  g.addEdge(2, 4);
  BookEmbedding bad;
  bad.layout = Layout::fromOrder({0, 1, 2, 3, 4, 5});
  bad.pages.page = {1, 1, 1};
  bad.k = 1;
  bool controlDetected = !checkProposition1(g, bad).clean();
  std::ostringstream what;
  what << rep.embeddings << " embeddings, " << rep.violations
       << " violations; corrupted control detected=" << (controlDetected ? "yes" : "no");
  report(5, rep.embeddings == 100 && rep.violations == 0 && controlDetected, what.str());
}

void criterion6() {
  Graph q1 = buildQ1();
  Graph q2 = buildQ2(2);
  Graph quad = buildQuad(15, 2);
  int innerTerminals = 0;
  for (const auto& [name, id] : quad.roles()) {
    (void)id;
    if (name.rfind("inner_terminal", 0) == 0) innerTerminals++;
  }
  bool pass = q1.nodeCount() == 10 && q2.nodeCount() == 84 && q2.edges().size() == 245 &&
              quad.nodeCount() == 1218 && innerTerminals == 16 &&
              buildG(3, 15, 2).nodeCount() == gNodeCount(3, 15, 2) && gNodeCount(3, 15, 2) == 43797;
  std::ostringstream what;
  what << "Q1=" << q1.nodeCount() << " nodes, Q2(2)=" << q2.nodeCount() << "/" << q2.edges().size()
       << ", quad(15,2)=" << quad.nodeCount() << " nodes/" << innerTerminals
       << " inner terminals, G(3,15,2)=" << gNodeCount(3, 15, 2);
  report(6, pass, what.str());
}

void criterion7() {
  std::string out = scratch + "/g1000.txt";
  RunResult r = run("gen --gadget g --n 1000 --out " + out);
  bool generated = r.exitCode == 0 && r.seconds < 600 &&
                   r.output.find("21875106 nodes") != std::string::npos &&
                   r.output.find("65625311 edges") != std::string::npos;
  RunResult v = run("stats --graph " + out + " --roles " + out + ".roles.json");
  bool validated = v.exitCode == 0 && v.output.find("validation: clean") != std::string::npos;
  std::ostringstream what;
  what << "G(1000,15,2) generated in " << r.seconds << "s, validated in " << v.seconds << "s";
  report(7, generated && validated, what.str());
  fs::remove(out);
  fs::remove(out + ".roles.json");
}

void criterion8() {
  Scenario s = makeScenario("variant_quad");
  OutcomeReport r = runScenario(s);
  bool sat = r.verdict == "sat" && r.matchedExpectation && r.witness.has_value();
  bool verified = sat && validateEmbedding(s.graph, *r.witness).clean();
  // oracle pin: the same instance is satisfiable by exhaustive search
  bool oracleSat = oracle::solveK(s.graph, s.k, s.cs).has_value();
  std::ostringstream what;
  what << "variant_quad(1,0) verdict=" << r.verdict << ", witness verified=" << (verified ? "yes" : "no")
       << ", oracle=" << (oracleSat ? "sat" : "unsat");
  report(8, sat && verified && oracleSat, what.str());
}

void criterion9() {
  // byte-identical artifacts across repeated runs of criteria 1-3 outputs
  Graph k4 = testgraphs::complete(4);
  writeFile(scratch + "/k4.json", serializeGraphJson(k4));
  bool pass = true;
  auto twice = [&](const std::string& args, const std::string& artifact) {
    run(args);
    std::string first = readFile(artifact);
    run(args);
    bool same = readFile(artifact) == first && !first.empty();
    pass = pass && same;
  };
  twice("lemma --name lemma1_plusAB --out " + scratch + "/rep.json", scratch + "/rep.json");
  twice("lemma --name lemma2_control --out " + scratch + "/rep2.json", scratch + "/rep2.json");
  twice("solve --graph " + scratch + "/k4.json --min --out " + scratch + "/cert.json",
        scratch + "/cert.json");
  twice("encode --graph " + scratch + "/k4.json --k 2 --out " + scratch + "/k4.cnf",
        scratch + "/k4.cnf");
  twice("lemma --name lemma3_both_centers_inside --export " + scratch,
        scratch + "/lemma3_both_centers_inside.cnf");
  twice("draw --graph " + scratch + "/k4.json --cert " + scratch + "/cert.json --out " +
            scratch + "/k4.svg",
        scratch + "/k4.svg");
  report(9, pass, "certificates, reports, DIMACS, and SVG byte-identical across reruns");
}

void criterion10() {
  bool pass = true;
  std::ostringstream what;
  for (const char* name : {"lemma3_both_centers_inside", "lemma3_both_centers_outside",
                           "lemma3_c1_out_d1b_not_in_bv", "lemma3_edge_c1c2_not_color3"}) {
    RunResult r = run(std::string("lemma --name ") + name + " --export " + scratch);
    std::string path = scratch + "/" + name + ".cnf";
    bool ok = r.exitCode == 0;
    std::string bytes;
    if (ok) {
      bytes = readFile(path);
      try {
        CnfInstance cnf = parseDimacs(bytes);  // enforces header/body agreement
        ok = cnf.map.names.size() == cnf.vars;  // atom map complete
      } catch (const Error&) {
        ok = false;
      }
    }
    RunResult again = run(std::string("lemma --name ") + name + " --export " + scratch);
    ok = ok && again.exitCode == 0 && readFile(path) == bytes;
    if (!ok) what << " " << name << " BAD;";
    pass = pass && ok;
  }
  // toy decode round-trip: a hand-solvable instance through decode + verify
  Graph c4 = testgraphs::cycle(4);
  writeFile(scratch + "/c4.json", serializeGraphJson(c4));
  CnfInstance toy = encode(c4, 1, {});
  writeFile(scratch + "/toy.cnf", emitDimacs(toy));
  DpllOutcome out = dpllSolve(toy);
  bool toyOk = out.kind == SatResult::Sat;
  if (toyOk) {
    std::string model;
    for (uint32_t v = 1; v <= toy.vars; v++)
      model += (out.model[v - 1] > 0 ? std::to_string(v) : "-" + std::to_string(v)) + " ";
    model += "0\n";
    writeFile(scratch + "/toy.model", model);
    RunResult dec = run("decode --graph " + scratch + "/c4.json --dimacs " + scratch +
                        "/toy.cnf --model " + scratch + "/toy.model --out " + scratch + "/toy.cert");
    RunResult ver = run("verify --graph " + scratch + "/c4.json --cert " + scratch + "/toy.cert");
    toyOk = dec.exitCode == 0 && ver.exitCode == 0;
  }
  what << " lemma3 exports well-formed and deterministic; toy decode round-trip "
       << (toyOk ? "ok" : "FAILED");
  report(10, pass && toyOk, what.str());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <cli-binary> <scratch-dir>\n";
    return 2;
  }
  cli = argv[1];
  scratch = argv[2];
  fs::create_directories(scratch);
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria FAILED")
            << "\n";
  return failures == 0 ? 0 : 1;
}

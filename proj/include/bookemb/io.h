#pragma once

#include <iosfwd>
#include <string>

#include "bookemb/constraints.h"
#include "bookemb/graph.h"

namespace bookemb {

enum class FileKind { GraphJson, GraphText, Roles, Constraints, Certificate, Dimacs, Report };

/// Sniffs by documented headers only ('{' + keys, "bookemb", "c"/"p cnf").
FileKind sniffKind(const std::string& bytes);

// graph JSON: {"n", "edges" (u<v), "roles", "triangles"}; canonical form has
// sorted keys, LF newlines, trailing newline
std::string serializeGraphJson(const Graph& g);
Graph parseGraphJson(const std::string& bytes);

// compact text: "bookemb <n> <m>" header then one "e u v" line per edge
// (u < v), used for graphs too large for JSON; roles/triangles live in the
// sidecar
std::string serializeGraphText(const Graph& g);
void writeGraphText(std::ostream& out, const Graph& g);
Graph parseGraphText(const std::string& bytes);

/// json else text by header
Graph parseGraphAuto(const std::string& bytes);

std::string serializeRoles(const Graph& g);
void parseRolesInto(const std::string& bytes, Graph& g);

std::string serializeCertificate(const Graph& g, const BookEmbedding& emb);
BookEmbedding parseCertificate(const std::string& bytes, const Graph& g);

std::string serializeConstraints(const ConstraintSet& cs);
ConstraintSet parseConstraints(const std::string& bytes, const Graph& g);

std::string readFile(const std::string& path);
void writeFile(const std::string& path, const std::string& bytes);

}  // namespace bookemb

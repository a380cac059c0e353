#pragma once

// Text formats: instance documents (JSON syntax), DIMACS CNF, edge lists, and
// JSON renderings of metadata, results and reports.

#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "rrsp/cnf.hpp"
#include "rrsp/graph.hpp"
#include "rrsp/oracles.hpp"
#include "rrsp/reductions.hpp"
#include "rrsp/solver.hpp"

namespace rrsp {

// line/column are 1-based; 0 when the error is not tied to a text position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line = 0, int column = 0);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Instance document:
//   {"arcs": [{"c1", "chat", "delta", "head", "id", "role"?, "tail"}],
//    "budget": {"gamma", "kind": "continuous"|"discrete"},
//    "nodes", "rule": {"k", "kind": "incl"|"excl"|"sym"}, "sink", "source"}
// Costs and gamma are strings holding exact rationals.
Instance parse_instance(std::string_view text);
nlohmann::json instance_to_json(const Instance& inst);
// Canonical form: sorted keys, arcs by id, two-space indent, trailing newline.
std::string serialize_instance(const Instance& inst);

// DIMACS "p cnf <vars> <clauses>"; clauses are 0-terminated and may span
// lines; 'c' lines are comments; '%' ends the clause section.
CnfFormula parse_dimacs_cnf(std::string_view text);

// One "u v" pair per line with 1-based ids; '#' starts a comment; an optional
// "nodes N" line fixes the node count (default: the largest id seen).
SourceDigraph parse_edge_list(std::string_view text);

nlohmann::json to_json(const Path& path);
nlohmann::json to_json(const Scenario& scenario);
nlohmann::json to_json(const HpReductionMeta& meta);
nlohmann::json to_json(const SatReductionMeta& meta);
nlohmann::json to_json(const SolveResult& result);
// Report documents: {instance, opt, threshold, oracle_answer, verdict}.
nlohmann::json report_json(const std::string& instance_name, const HpVerification& v);
nlohmann::json report_json(const std::string& instance_name, const SatVerification& v);

std::string read_file(const std::string& path);

}  // namespace rrsp

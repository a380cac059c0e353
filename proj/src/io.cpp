#include "rrsp/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace rrsp {
namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& required, const std::set<std::string>& optional,
                const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!required.count(key) && !optional.count(key)) throw ParseError(where + ": unknown key '" + key + "'");
  }
  for (const auto& key : required) {
    if (!obj.contains(key)) throw ParseError(where + ": missing key '" + key + "'");
  }
}

long long get_int(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ParseError(where + "." + key + ": expected an integer");
  return v.get<long long>();
}

int get_small_int(const json& obj, const std::string& key, const std::string& where) {
  const long long v = get_int(obj, key, where);
  if (v < -2'000'000'000LL || v > 2'000'000'000LL) throw ParseError(where + "." + key + ": integer out of range");
  return static_cast<int>(v);
}

Rational get_rational(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_string()) throw ParseError(where + "." + key + ": expected a rational string");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + "." + key + ": " + e.what());
  }
}

std::pair<int, int> locate(std::string_view text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

std::vector<std::string> tokens_of(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

bool parse_int_token(const std::string& tok, long long& value) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last;
}

json ids_json(const std::vector<ArcId>& ids) { return json(ids); }

}  // namespace

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                                        message
                                  : message),
      line_(line),
      column_(column) {}

Instance parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = locate(text, e.byte);
    throw ParseError(e.what(), line, column);
  }
  check_keys(doc, {"arcs", "budget", "nodes", "rule", "sink", "source"}, {}, "document");
  const int nodes = get_small_int(doc, "nodes", "document");
  const int source = get_small_int(doc, "source", "document");
  const int sink = get_small_int(doc, "sink", "document");
  if (!doc["arcs"].is_array()) throw ParseError("document.arcs: expected an array");

  std::vector<Arc> arcs;
  std::set<ArcId> ids;
  for (std::size_t i = 0; i < doc["arcs"].size(); ++i) {
    const json& a = doc["arcs"][i];
    const std::string where = "arcs[" + std::to_string(i) + "]";
    check_keys(a, {"c1", "chat", "delta", "head", "id", "tail"}, {"role"}, where);
    Arc arc;
    arc.id = get_small_int(a, "id", where);
    arc.tail = get_small_int(a, "tail", where);
    arc.head = get_small_int(a, "head", where);
    arc.first_stage_cost = get_rational(a, "c1", where);
    arc.nominal = get_rational(a, "chat", where);
    arc.deviation_cap = get_rational(a, "delta", where);
    if (a.contains("role")) {
      if (!a["role"].is_string()) throw ParseError(where + ".role: expected a string");
      arc.role = parse_arc_role(a["role"].get<std::string>());
      if (!arc.role) throw ParseError(where + ".role: unknown role '" + a["role"].get<std::string>() + "'");
    }
    if (!ids.insert(arc.id).second) throw ParseError(where + ": duplicate arc id " + std::to_string(arc.id));
    arcs.push_back(std::move(arc));
  }

  const json& rule = doc["rule"];
  check_keys(rule, {"k", "kind"}, {}, "rule");
  if (!rule["kind"].is_string()) throw ParseError("rule.kind: expected a string");
  const auto kind = parse_recovery_kind(rule["kind"].get<std::string>());
  if (!kind) throw ParseError("rule.kind: expected incl, excl or sym");
  RecoveryRule parsed_rule{*kind, get_small_int(rule, "k", "rule")};

  const json& budget = doc["budget"];
  check_keys(budget, {"gamma", "kind"}, {}, "budget");
  if (!budget["kind"].is_string()) throw ParseError("budget.kind: expected a string");
  const std::string budget_kind = budget["kind"].get<std::string>();
  const Rational gamma = get_rational(budget, "gamma", "budget");
  Budget parsed_budget;
  if (budget_kind == "continuous") {
    parsed_budget = Budget::continuous(gamma);
  } else if (budget_kind == "discrete") {
    if (gamma.get_den() != 1 || gamma < 0 || gamma > 2'000'000'000) {
      throw ParseError("budget.gamma: discrete budget must be a nonnegative integer");
    }
    parsed_budget = Budget::discrete(static_cast<int>(gamma.get_num().get_si()));
  } else {
    throw ParseError("budget.kind: expected continuous or discrete");
  }

  try {
    return Instance{Digraph(nodes, std::move(arcs), source, sink), parsed_rule, std::move(parsed_budget)};
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("document: ") + e.what());
  }
}

json instance_to_json(const Instance& inst) {
  const Digraph& g = inst.graph;
  json arcs = json::array();
  for (const Arc& a : g.arcs()) {
    json arc = {{"id", a.id},
                {"tail", a.tail},
                {"head", a.head},
                {"c1", to_string(a.first_stage_cost)},
                {"chat", to_string(a.nominal)},
                {"delta", to_string(a.deviation_cap)}};
    if (a.role) arc["role"] = std::string(to_string(*a.role));
    arcs.push_back(std::move(arc));
  }
  json budget;
  if (inst.budget.kind == BudgetKind::kContinuous) {
    budget = {{"kind", "continuous"}, {"gamma", to_string(inst.budget.gamma_c)}};
  } else {
    budget = {{"kind", "discrete"}, {"gamma", std::to_string(inst.budget.gamma_d)}};
  }
  return {{"nodes", g.node_count()},
          {"source", g.source()},
          {"sink", g.sink()},
          {"arcs", std::move(arcs)},
          {"rule", {{"kind", std::string(to_string(inst.rule.kind))}, {"k", inst.rule.k}}},
          {"budget", std::move(budget)}};
}

std::string serialize_instance(const Instance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

CnfFormula parse_dimacs_cnf(std::string_view text) {
  CnfFormula f;
  long long declared_vars = -1, declared_clauses = -1;
  std::vector<int> current;
  int line_no = 0;
  std::size_t start = 0;
  bool done = false;
  while (start <= text.size() && !done) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    const auto toks = tokens_of(line);
    if (toks.empty() || toks[0] == "c" || toks[0].front() == 'c') continue;
    if (toks[0] == "%") break;
    if (toks[0] == "p") {
      if (declared_vars >= 0) throw ParseError("duplicate header", line_no, 1);
      if (toks.size() != 4 || toks[1] != "cnf" || !parse_int_token(toks[2], declared_vars) ||
          !parse_int_token(toks[3], declared_clauses) || declared_vars < 0 || declared_clauses < 0 ||
          declared_vars > 1'000'000) {
        throw ParseError("malformed header, expected 'p cnf <vars> <clauses>'", line_no, 1);
      }
      f.variable_count = static_cast<int>(declared_vars);
      continue;
    }
    if (declared_vars < 0) throw ParseError("clause before 'p cnf' header", line_no, 1);
    for (const auto& tok : toks) {
      if (tok == "%") {
        done = true;
        break;
      }
      long long lit = 0;
      if (!parse_int_token(tok, lit)) throw ParseError("bad literal '" + tok + "'", line_no, 1);
      if (lit == 0) {
        if (current.empty()) throw ParseError("empty clause", line_no, 1);
        f.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (lit < -declared_vars || lit > declared_vars) {
        throw ParseError("variable index out of range in '" + tok + "'", line_no, 1);
      }
      current.push_back(static_cast<int>(lit));
      if (current.size() > 3) throw ParseError("clause has more than 3 literals", line_no, 1);
    }
  }
  if (declared_vars < 0) throw ParseError("missing 'p cnf' header");
  if (!current.empty()) throw ParseError("last clause is not terminated by 0");
  if (static_cast<long long>(f.clauses.size()) != declared_clauses) {
    throw ParseError("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                     std::to_string(f.clauses.size()));
  }
  return f;
}

SourceDigraph parse_edge_list(std::string_view text) {
  SourceDigraph g;
  long long declared = -1;
  int max_id = 0;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto toks = tokens_of(line);
    if (toks.empty()) continue;
    if (toks[0] == "nodes") {
      if (toks.size() != 2 || !parse_int_token(toks[1], declared) || declared < 1 || declared > 64) {
        throw ParseError("expected 'nodes N' with 1 <= N <= 64", line_no, 1);
      }
      continue;
    }
    long long u = 0, v = 0;
    if (toks.size() != 2 || !parse_int_token(toks[0], u) || !parse_int_token(toks[1], v)) {
      throw ParseError("expected 'u v'", line_no, 1);
    }
    if (u < 1 || v < 1 || u > 64 || v > 64) throw ParseError("node ids must be in 1..64", line_no, 1);
    if (u == v) throw ParseError("self-loop at node " + std::to_string(u), line_no, 1);
    const std::pair<int, int> arc{static_cast<int>(u - 1), static_cast<int>(v - 1)};
    if (std::find(g.arcs.begin(), g.arcs.end(), arc) != g.arcs.end()) {
      throw ParseError("repeated arc", line_no, 1);
    }
    g.arcs.push_back(arc);
    max_id = std::max({max_id, static_cast<int>(u), static_cast<int>(v)});
  }
  if (declared >= 0 && declared < max_id) throw ParseError("node id exceeds declared node count");
  g.node_count = declared >= 0 ? static_cast<int>(declared) : max_id;
  if (g.node_count < 1) throw ParseError("empty graph needs a 'nodes N' line");
  return g;
}

json to_json(const Path& path) { return ids_json(path.arc_ids); }

json to_json(const Scenario& scenario) {
  json out = json::object();
  for (const auto& [id, d] : scenario.entries()) out[std::to_string(id)] = to_string(d);
  return out;
}

json to_json(const HpReductionMeta& meta) {
  json diagonals = json::array();
  for (const DiagonalArc& d : meta.diagonal_arcs) {
    diagonals.push_back({{"layer", d.layer}, {"from", d.from + 1}, {"to", d.to + 1}, {"id", d.id}});
  }
  json out = {{"n", meta.n},
              {"budget", meta.budget == BudgetKind::kContinuous ? "continuous" : "discrete"},
              {"vertical_paths", meta.vertical_paths},
              {"dashed_arcs", meta.dashed_arcs},
              {"diagonal_arcs", std::move(diagonals)},
              {"threshold", to_string(meta.threshold)},
              {"k", meta.k}};
  if (meta.budget == BudgetKind::kContinuous) out["M"] = to_string(meta.big_m);
  return out;
}

json to_json(const SatReductionMeta& meta) {
  json gadgets = json::array();
  json literal_arcs = json::array();
  for (std::size_t g = 0; g < meta.gadgets.size(); ++g) {
    const ClauseGadget& gadget = meta.gadgets[g];
    json paths = json::array();
    for (std::size_t p = 0; p < gadget.literal_paths.size(); ++p) {
      const LiteralPath& lp = gadget.literal_paths[p];
      paths.push_back({{"literals", lp.literals}, {"arcs", lp.arcs}, {"literal_arcs", lp.literal_arcs}});
      for (std::size_t c = 0; c < lp.literal_arcs.size(); ++c) {
        literal_arcs.push_back({{"gadget", g}, {"path", p}, {"component", c}, {"arc", lp.literal_arcs[c]}});
      }
    }
    std::vector<int> clauses;
    for (int c : gadget.clauses) clauses.push_back(c + 1);
    gadgets.push_back({{"clauses", clauses},
                       {"source", gadget.source},
                       {"sink", gadget.sink},
                       {"dashed_arc", gadget.dashed_arc},
                       {"exit_arc", gadget.exit_arc},
                       {"literal_paths", std::move(paths)}});
  }
  json segments = json::array();
  for (const auto& seg : meta.codec.segments) segments.push_back({{"false", seg[0]}, {"true", seg[1]}});
  json out = {{"n", meta.n},
              {"m", meta.m},
              {"q", meta.q},
              {"k", meta.k},
              {"gadgets", std::move(gadgets)},
              {"literal_arc_map", std::move(literal_arcs)},
              {"solid_path_codec", {{"entry_arc", meta.codec.entry_arc}, {"segments", std::move(segments)}}}};
  if (meta.r) out["r"] = *meta.r;
  return out;
}

json to_json(const SolveResult& result) {
  return {{"opt", to_string(result.opt)},
          {"first_stage", to_json(result.first_stage)},
          {"worst_scenario", to_json(result.worst_scenario)},
          {"best_recovery", to_json(result.best_recovery)},
          {"explored", result.explored}};
}

json report_json(const std::string& instance_name, const HpVerification& v) {
  json answer = nullptr;
  if (v.hamiltonian_path) {
    std::vector<int> order;
    for (int node : *v.hamiltonian_path) order.push_back(node + 1);
    answer = order;
  }
  return {{"instance", instance_name},
          {"opt", to_string(v.opt)},
          {"threshold", to_string(v.threshold)},
          {"oracle_answer", std::move(answer)},
          {"verdict", v.pass ? "PASS" : "FAIL"}};
}

json report_json(const std::string& instance_name, const SatVerification& v) {
  return {{"instance", instance_name},
          {"opt", to_string(v.opt)},
          {"threshold", to_string(v.expected)},
          {"oracle_answer", v.s_max},
          {"verdict", v.pass ? "PASS" : "FAIL"}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace rrsp

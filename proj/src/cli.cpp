#include "rrsp/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "rrsp/io.hpp"
#include "rrsp/oracles.hpp"
#include "rrsp/random_instances.hpp"
#include "rrsp/reductions.hpp"
#include "rrsp/solver.hpp"

namespace rrsp {
namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

RecoveryKind kind_from(const std::string& text) {
  const auto kind = parse_recovery_kind(text);
  if (!kind) throw UsageError("--kind must be incl, excl or sym");
  return *kind;
}

Budget budget_from(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--budget must look like cont:G or disc:G");
  const std::string kind = text.substr(0, colon);
  Rational gamma;
  try {
    gamma = parse_rational(text.substr(colon + 1));
  } catch (const std::invalid_argument&) {
    throw UsageError("--budget: bad value '" + text.substr(colon + 1) + "'");
  }
  if (gamma < 0) throw UsageError("--budget must be nonnegative");
  if (kind == "cont") return Budget::continuous(gamma);
  if (kind == "disc") {
    if (gamma.get_den() != 1 || gamma > 1'000'000) throw UsageError("--budget disc:G needs an integer G");
    return Budget::discrete(static_cast<int>(gamma.get_num().get_si()));
  }
  throw UsageError("--budget must look like cont:G or disc:G");
}

std::string join_ids(const std::vector<int>& ids, int offset = 0) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) s += ' ';
    s += std::to_string(ids[i] + offset);
  }
  return s.empty() ? "(empty)" : s;
}

std::string scenario_text(const Scenario& scenario) {
  if (scenario.support_size() == 0) return "(none)";
  std::string s;
  for (const auto& [id, d] : scenario.entries()) {
    if (!s.empty()) s += ' ';
    s += std::to_string(id) + ":" + to_string(d);
  }
  return s;
}

void print_solution(std::ostream& out, const SolveResult& r) {
  out << "OPT = " << to_string(r.opt) << "\n";
  out << "first_stage = " << join_ids(r.first_stage.arc_ids) << "\n";
  out << "worst_scenario = " << scenario_text(r.worst_scenario) << "\n";
  out << "best_recovery = " << join_ids(r.best_recovery.arc_ids) << "\n";
  out << "explored = " << r.explored << "\n";
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
}

std::string assignment_text(const std::vector<bool>& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i > 0) s += ' ';
    s += a[i] ? '1' : '0';
  }
  return s;
}

struct Options {
  std::string file;
  std::string kind;
  std::optional<int> k;
  std::string budget;
  std::size_t path_cap = kDefaultPathCap;
  std::string out_path;
  std::string meta_path;
  std::string report_path;
  int q = 1;
  int nodes = 6;
  int arcs = 10;
  std::uint64_t seed = 1;
};

void emit_reduction(std::ostream& out, const Options& o, const Instance& inst, const nlohmann::json& meta) {
  const std::string doc = serialize_instance(inst);
  const std::string meta_text = meta.dump(2) + "\n";
  std::string meta_path = o.meta_path;
  if (meta_path.empty() && !o.out_path.empty()) meta_path = o.out_path + ".meta.json";
  if (o.out_path.empty()) {
    out << doc;
  } else {
    write_text(o.out_path, doc);
  }
  if (!meta_path.empty()) write_text(meta_path, meta_text);
}

int cmd_solve(std::ostream& out, const Options& o) {
  Instance inst = parse_instance(read_file(o.file));
  if (!o.kind.empty()) inst.rule.kind = kind_from(o.kind);
  if (o.k) inst.rule.k = *o.k;
  if (!o.budget.empty()) inst.budget = budget_from(o.budget);
  const auto problems = validate_instance(inst);
  if (!problems.empty()) {
    std::string msg = "invalid instance:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw UsageError(msg);
  }
  SolveOptions options;
  options.path_cap = o.path_cap;
  print_solution(out, solve(inst, options));
  return 0;
}

int cmd_reduce(std::ostream& out, const std::string& which, const Options& o) {
  if (which == "sat3") {
    const CnfFormula f = parse_dimacs_cnf(read_file(o.file));
    try {
      check_sat_reduction_input(f, o.q);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const SatReduction r = reduce_max3sat(f, o.q, kind_from(o.kind));
    emit_reduction(out, o, r.instance, to_json(r.meta));
    return 0;
  }
  const SourceDigraph g = parse_edge_list(read_file(o.file));
  if (g.node_count < 2) throw UsageError("the reduction needs at least 2 nodes");
  if (which == "hp") {
    Rational gamma(1);
    if (!o.budget.empty()) {
      const Budget b = budget_from(o.budget);
      if (b.kind != BudgetKind::kContinuous) throw UsageError("reduce hp takes a continuous budget");
      gamma = b.gamma_c;
    }
    const HpReduction r = reduce_hp_continuous(g, kind_from(o.kind), gamma);
    emit_reduction(out, o, r.instance, to_json(r.meta));
  } else {
    const HpReduction r = reduce_hp_discrete(g, kind_from(o.kind));
    emit_reduction(out, o, r.instance, to_json(r.meta));
  }
  return 0;
}

int finish_verdict(std::ostream& out, const Options& o, bool pass, const std::string& detail,
                   const nlohmann::json& report) {
  if (!detail.empty()) out << "detail: " << detail << "\n";
  out << (pass ? "PASS" : "FAIL") << "\n";
  if (!o.report_path.empty()) write_text(o.report_path, report.dump(2) + "\n");
  return pass ? 0 : kExitFail;
}

int cmd_verify(std::ostream& out, const std::string& which, const Options& o) {
  SolveOptions options;
  options.path_cap = o.path_cap;
  const RecoveryKind kind = kind_from(o.kind);
  if (which == "lemma2") {
    const CnfFormula f = parse_dimacs_cnf(read_file(o.file));
    try {
      check_sat_reduction_input(f, o.q);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const SatVerification v = verify_sat_reduction(f, o.q, kind, options);
    out << "OPT = " << to_string(v.opt) << "\n";
    out << "expected = " << to_string(v.expected) << "\n";
    out << "s_max = " << v.s_max << "\n";
    return finish_verdict(out, o, v.pass, v.detail, report_json(std::filesystem::path(o.file).filename().string(), v));
  }
  const SourceDigraph g = parse_edge_list(read_file(o.file));
  if (g.node_count < 2) throw UsageError("the reduction needs at least 2 nodes");
  HpVerification v;
  if (which == "thm1") {
    Rational gamma(1);
    if (!o.budget.empty()) {
      const Budget b = budget_from(o.budget);
      if (b.kind != BudgetKind::kContinuous) throw UsageError("verify thm1 takes a continuous budget");
      gamma = b.gamma_c;
    }
    v = verify_hp_reduction(g, kind, BudgetKind::kContinuous, gamma, options);
  } else {
    v = verify_hp_reduction(g, kind, BudgetKind::kDiscrete, Rational(1), options);
  }
  out << "OPT = " << to_string(v.opt) << "\n";
  out << "threshold = " << to_string(v.threshold) << "\n";
  out << "hamiltonian_path = " << (v.hamiltonian_path ? join_ids(*v.hamiltonian_path, 1) : "none") << "\n";
  return finish_verdict(out, o, v.pass, v.detail, report_json(std::filesystem::path(o.file).filename().string(), v));
}

int cmd_oracle(std::ostream& out, const std::string& which, const Options& o) {
  if (which == "hp") {
    const auto hp = hp_oracle(parse_edge_list(read_file(o.file)));
    out << "hamiltonian_path = " << (hp ? join_ids(*hp, 1) : "none") << "\n";
    return 0;
  }
  const MaxSatResult r = max3sat_oracle(parse_dimacs_cnf(read_file(o.file)));
  out << "s_max = " << r.s_max << "\n";
  out << "assignment = " << assignment_text(r.assignment) << "\n";
  return 0;
}

int cmd_gen(std::ostream& out, const Options& o) {
  if (o.nodes < 2 || o.nodes > 1000) throw UsageError("--nodes must be in 2..1000");
  if (o.arcs < o.nodes - 1 || o.arcs > 100000) throw UsageError("--arcs must be in nodes-1..100000");
  Rng rng(o.seed);
  RandomDagOptions options;
  options.nodes = o.nodes;
  options.arcs = o.arcs;
  Digraph g = random_dag(rng, options);
  RecoveryRule rule{o.kind.empty() ? RecoveryKind::kIncl : kind_from(o.kind), o.k.value_or(1)};
  Budget budget = o.budget.empty() ? Budget::continuous(Rational(1)) : budget_from(o.budget);
  out << serialize_instance(Instance{std::move(g), rule, std::move(budget)});
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact recoverable robust shortest path solver and reduction toolkit", "rrsp"};
  app.require_subcommand(1);
  Options o;
  std::string which;

  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance document exactly");
  solve_cmd->add_option("instance", o.file, "Instance document")->required();
  solve_cmd->add_option("--kind", o.kind, "Override the recovery kind: incl, excl or sym");
  solve_cmd->add_option("--k", o.k, "Override the recovery bound");
  solve_cmd->add_option("--budget", o.budget, "Override the budget: cont:G or disc:G");
  solve_cmd->add_option("--path-cap", o.path_cap, "Maximum number of enumerated paths");

  auto* reduce_cmd = app.add_subcommand("reduce", "Generate a reduction instance");
  reduce_cmd->add_option("variant", which, "hp, hp-discrete or sat3")
      ->required()
      ->check(CLI::IsMember({"hp", "hp-discrete", "sat3"}));
  reduce_cmd->add_option("input", o.file, "Edge list (hp, hp-discrete) or DIMACS CNF (sat3)")->required();
  reduce_cmd->add_option("--kind", o.kind, "Recovery kind: incl, excl or sym")->required();
  reduce_cmd->add_option("--q", o.q, "Clause tuple length (sat3)");
  reduce_cmd->add_option("--budget", o.budget, "Continuous budget cont:G (hp)");
  reduce_cmd->add_option("--out", o.out_path, "Write the instance here instead of stdout");
  reduce_cmd->add_option("--meta", o.meta_path, "Write the metadata here (default: <out>.meta.json)");

  auto* verify_cmd = app.add_subcommand("verify", "Check a reduction against its oracle");
  verify_cmd->add_option("claim", which, "thm1, discrete or lemma2")
      ->required()
      ->check(CLI::IsMember({"thm1", "discrete", "lemma2"}));
  verify_cmd->add_option("input", o.file, "Edge list (thm1, discrete) or DIMACS CNF (lemma2)")->required();
  verify_cmd->add_option("--kind", o.kind, "Recovery kind: incl, excl or sym")->required();
  verify_cmd->add_option("--q", o.q, "Clause tuple length (lemma2)");
  verify_cmd->add_option("--budget", o.budget, "Continuous budget cont:G (thm1)");
  verify_cmd->add_option("--path-cap", o.path_cap, "Maximum number of enumerated paths");
  verify_cmd->add_option("--report", o.report_path, "Write a JSON report here");

  auto* oracle_cmd = app.add_subcommand("oracle", "Run an exhaustive oracle");
  oracle_cmd->add_option("problem", which, "hp or max3sat")->required()->check(CLI::IsMember({"hp", "max3sat"}));
  oracle_cmd->add_option("input", o.file, "Edge list (hp) or DIMACS CNF (max3sat)")->required();

  auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded random instance");
  gen_cmd->add_option("generator", which, "random-dag")->required()->check(CLI::IsMember({"random-dag"}));
  gen_cmd->add_option("--nodes", o.nodes, "Node count");
  gen_cmd->add_option("--arcs", o.arcs, "Arc count");
  gen_cmd->add_option("--seed", o.seed, "Random seed");
  gen_cmd->add_option("--kind", o.kind, "Recovery kind (default incl)");
  gen_cmd->add_option("--k", o.k, "Recovery bound (default 1)");
  gen_cmd->add_option("--budget", o.budget, "Budget cont:G or disc:G (default cont:1)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (o.k && *o.k < 0) throw UsageError("--k must be nonnegative");
    if (o.path_cap == 0) throw UsageError("--path-cap must be positive");
    if (*solve_cmd) return cmd_solve(out, o);
    if (*reduce_cmd) return cmd_reduce(out, which, o);
    if (*verify_cmd) return cmd_verify(out, which, o);
    if (*oracle_cmd) return cmd_oracle(out, which, o);
    if (*gen_cmd) return cmd_gen(out, o);
  } catch (const SolveOverflow& e) {
    err << "error: " << e.what() << "\n";
    if (e.partial()) {
      err << "incumbent at overflow:\n";
      print_solution(err, *e.partial());
    }
    return kExitFail;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  } catch (const ParseError& e) {
    err << "error: " << o.file << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace rrsp

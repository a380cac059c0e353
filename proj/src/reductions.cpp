#include "rrsp/reductions.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <string>

namespace rrsp {
namespace {

// Accumulates nodes and arcs with sequential ids.
class GraphBuilder {
 public:
  NodeId add_node() { return node_count_++; }

  ArcId add_arc(NodeId tail, NodeId head, ArcRole role, int first_stage, int nominal, int cap) {
    return add_arc(tail, head, role, Rational(first_stage), Rational(nominal), Rational(cap));
  }

  ArcId add_arc(NodeId tail, NodeId head, ArcRole role, Rational first_stage, Rational nominal,
                Rational cap) {
    const ArcId id = static_cast<ArcId>(arcs_.size());
    arcs_.push_back({id, tail, head, std::move(first_stage), std::move(nominal), std::move(cap), role});
    return id;
  }

  Digraph build(NodeId source, NodeId sink) { return Digraph(node_count_, std::move(arcs_), source, sink); }

 private:
  int node_count_ = 0;
  std::vector<Arc> arcs_;
};

struct HpCosts {
  Rational dashed_nominal, dashed_cap;
  Rational vertical_nominal, vertical_cap;
  Rational diagonal_nominal;
};

HpReduction build_hp(const SourceDigraph& src, RecoveryKind kind, const HpCosts& costs, Budget budget) {
  check_source_digraph(src);
  const int n = src.node_count;
  if (n < 2) throw std::invalid_argument("Hamiltonian path reduction needs at least 2 nodes");

  HpReduction out{Instance{Digraph(1, {}, 0, 0), {}, {}}, {}};
  HpReductionMeta& meta = out.meta;
  meta.n = n;
  meta.budget = budget.kind;
  meta.k = kind == RecoveryKind::kSym ? 4 * n : 2 * n;

  // Node ids: s = 0, v_i^j = 1 + (j - 1) n + i for 0-based column i, t last.
  const NodeId s = 0;
  const NodeId t = 2 * n * n + 1;
  auto node = [n](int column, int layer) { return 1 + (layer - 1) * n + column; };

  std::vector<Arc> arcs;
  auto add = [&arcs](NodeId tail, NodeId head, ArcRole role, const Rational& nominal, const Rational& cap) {
    const ArcId id = static_cast<ArcId>(arcs.size());
    arcs.push_back({id, tail, head, Rational(0), nominal, cap, role});
    return id;
  };
  for (int c = 0; c < n; ++c) {
    std::vector<ArcId> chain;
    chain.push_back(add(s, node(c, 1), ArcRole::kDashed, costs.dashed_nominal, costs.dashed_cap));
    for (int j = 1; j < 2 * n; ++j) {
      chain.push_back(add(node(c, j), node(c, j + 1), ArcRole::kVertical, costs.vertical_nominal,
                          costs.vertical_cap));
    }
    chain.push_back(add(node(c, 2 * n), t, ArcRole::kVertical, costs.vertical_nominal, costs.vertical_cap));
    meta.dashed_arcs.push_back(chain.front());
    meta.vertical_paths.push_back(std::move(chain));
  }
  std::vector<std::pair<int, int>> source_arcs = src.arcs;
  std::sort(source_arcs.begin(), source_arcs.end());
  for (int j = 1; j <= n - 1; ++j) {
    for (const auto& [a, b] : source_arcs) {
      const ArcId id = add(node(a, 2 * j), node(b, 2 * j + 1), ArcRole::kDiagonal, costs.diagonal_nominal, Rational(0));
      meta.diagonal_arcs.push_back({j, a, b, id});
    }
  }
  out.instance = Instance{Digraph(2 * n * n + 2, std::move(arcs), s, t),
                          RecoveryRule{kind, meta.k}, std::move(budget)};
  return out;
}

int ipow(int base, int exp) {
  long long acc = 1;
  for (int i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > 1'000'000'000LL) throw std::invalid_argument("reduction size overflow");
  }
  return static_cast<int>(acc);
}

int layer_of(int literal) { return 2 * (std::abs(literal) - 1) + (literal < 0 ? 1 : 0); }

std::string clause_name(std::size_t index) { return "clause " + std::to_string(index + 1); }

}  // namespace

void check_source_digraph(const SourceDigraph& g) {
  if (g.node_count < 1) throw std::invalid_argument("digraph needs at least one node");
  std::set<std::pair<int, int>> seen;
  for (const auto& [a, b] : g.arcs) {
    if (a < 0 || b < 0 || a >= g.node_count || b >= g.node_count) {
      throw std::invalid_argument("arc endpoint out of range");
    }
    if (a == b) throw std::invalid_argument("self-loop at node " + std::to_string(a + 1));
    if (!seen.insert({a, b}).second) {
      throw std::invalid_argument("repeated arc " + std::to_string(a + 1) + " " + std::to_string(b + 1));
    }
  }
}

HpReduction reduce_hp_continuous(const SourceDigraph& g, RecoveryKind kind, const Rational& gamma) {
  if (gamma < 0) throw std::invalid_argument("budget must be nonnegative");
  // Smallest integer strictly above gamma.
  mpz_class floor_gamma;
  mpz_fdiv_q(floor_gamma.get_mpz_t(), gamma.get_num_mpz_t(), gamma.get_den_mpz_t());
  const Rational big_m(floor_gamma + 1);
  HpCosts costs{Rational(0), big_m, Rational(0), big_m, big_m};
  HpReduction out = build_hp(g, kind, costs, Budget::continuous(gamma));
  out.meta.big_m = big_m;
  out.meta.threshold = gamma / out.meta.n;
  return out;
}

HpReduction reduce_hp_discrete(const SourceDigraph& g, RecoveryKind kind) {
  HpCosts costs{Rational(0), Rational(1), Rational(0), Rational(0), Rational(1)};
  HpReduction out = build_hp(g, kind, costs, Budget::discrete(std::max(g.node_count - 1, 0)));
  out.meta.big_m = 1;
  out.meta.threshold = 0;
  return out;
}

Path column_walk_path(const HpReductionMeta& meta, std::span<const int> columns) {
  const int n = meta.n;
  if (static_cast<int>(columns.size()) != n) throw std::invalid_argument("need one column per layer pair");
  for (int c : columns) {
    if (c < 0 || c >= n) throw std::invalid_argument("column out of range");
  }
  Path p;
  p.arc_ids.push_back(meta.vertical_paths[columns[0]][0]);
  p.arc_ids.push_back(meta.vertical_paths[columns[0]][1]);
  for (int j = 1; j < n; ++j) {
    const int from = columns[j - 1];
    const int to = columns[j];
    if (from == to) {
      p.arc_ids.push_back(meta.vertical_paths[from][2 * j]);
    } else {
      auto it = std::find_if(meta.diagonal_arcs.begin(), meta.diagonal_arcs.end(), [&](const DiagonalArc& d) {
        return d.layer == j && d.from == from && d.to == to;
      });
      if (it == meta.diagonal_arcs.end()) {
        throw std::invalid_argument("no arc " + std::to_string(from + 1) + " -> " + std::to_string(to + 1));
      }
      p.arc_ids.push_back(it->id);
    }
    p.arc_ids.push_back(meta.vertical_paths[to][2 * j + 1]);
  }
  p.arc_ids.push_back(meta.vertical_paths[columns[n - 1]][2 * n]);
  return p;
}

Path SolidPathCodec::encode(const std::vector<bool>& assignment) const {
  if (assignment.size() != segments.size()) throw std::invalid_argument("assignment size mismatch");
  Path p;
  p.arc_ids.push_back(entry_arc);
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& route = segments[i][assignment[i] ? 1 : 0];
    p.arc_ids.insert(p.arc_ids.end(), route.begin(), route.end());
  }
  return p;
}

std::optional<std::vector<bool>> SolidPathCodec::decode(const Path& path) const {
  const auto& ids = path.arc_ids;
  if (ids.empty() || ids.front() != entry_arc) return std::nullopt;
  std::vector<bool> assignment;
  std::size_t pos = 1;
  for (const auto& routes : segments) {
    bool matched = false;
    for (int value = 0; value < 2 && !matched; ++value) {
      const auto& route = routes[value];
      if (pos + route.size() <= ids.size() &&
          std::equal(route.begin(), route.end(), ids.begin() + static_cast<std::ptrdiff_t>(pos))) {
        assignment.push_back(value == 1);
        pos += route.size();
        matched = true;
      }
    }
    if (!matched) return std::nullopt;
  }
  if (pos != ids.size()) return std::nullopt;
  return assignment;
}

void check_sat_reduction_input(const CnfFormula& f, int q) {
  const int n = f.variable_count;
  if (n < 1) throw std::invalid_argument("formula has no variables");
  if (f.clauses.empty()) throw std::invalid_argument("formula has no clauses");
  if (q < 1) throw std::invalid_argument("q must be at least 1");
  if (q >= 2 * n) throw std::invalid_argument("q must be smaller than 2n");
  if (q > n) {
    throw std::invalid_argument("q must not exceed n: literal paths need a dummy arc before every literal arc");
  }
  std::vector<bool> positive(n, false), negative(n, false);
  for (std::size_t c = 0; c < f.clauses.size(); ++c) {
    const auto& clause = f.clauses[c];
    if (clause.empty() || clause.size() > 3) {
      throw std::invalid_argument(clause_name(c) + " must have 1 to 3 literals");
    }
    for (std::size_t a = 0; a < clause.size(); ++a) {
      const int v = std::abs(clause[a]);
      if (clause[a] == 0 || v > n) throw std::invalid_argument(clause_name(c) + " has a literal out of range");
      (clause[a] > 0 ? positive : negative)[v - 1] = true;
      for (std::size_t b = a + 1; b < clause.size(); ++b) {
        if (clause[b] == clause[a]) throw std::invalid_argument(clause_name(c) + " repeats a literal");
        if (clause[b] == -clause[a]) {
          throw std::invalid_argument(clause_name(c) + " contains variable x" + std::to_string(v) +
                                      " and its negation");
        }
      }
    }
  }
  for (int v = 0; v < n; ++v) {
    if (!positive[v]) throw std::invalid_argument("variable x" + std::to_string(v + 1) + " never occurs positively");
    if (!negative[v]) throw std::invalid_argument("variable x" + std::to_string(v + 1) + " never occurs negatively");
  }
}

SatReduction reduce_max3sat(const CnfFormula& f, int q, RecoveryKind kind) {
  check_sat_reduction_input(f, q);
  const int n = f.variable_count;
  const int m = static_cast<int>(f.clauses.size());
  const int tuples = ipow(m, q);

  SatReduction out{Instance{Digraph(1, {}, 0, 0), {}, {}}, {}};
  SatReductionMeta& meta = out.meta;
  meta.n = n;
  meta.m = m;
  meta.q = q;
  const bool split = kind != RecoveryKind::kIncl;
  if (split) meta.r = tuples * (q * ipow(3, q) + 1) + 1;

  // Clause tuples and their non-contradictory literal tuples.
  for (int index = 0; index < tuples; ++index) {
    ClauseGadget gadget;
    gadget.clauses.assign(q, 0);
    for (int pos = q - 1, rest = index; pos >= 0; --pos, rest /= m) gadget.clauses[pos] = rest % m;
    std::vector<std::size_t> choice(q, 0);
    for (;;) {
      std::vector<int> lits(q);
      for (int pos = 0; pos < q; ++pos) lits[pos] = f.clauses[gadget.clauses[pos]][choice[pos]];
      bool contradictory = false;
      for (int a = 0; a < q; ++a) {
        for (int b = a + 1; b < q; ++b) contradictory = contradictory || lits[a] == -lits[b];
      }
      if (!contradictory) gadget.literal_paths.push_back({lits, {}, {}});
      int pos = q - 1;
      while (pos >= 0 && ++choice[pos] == f.clauses[gadget.clauses[pos]].size()) choice[pos--] = 0;
      if (pos < 0) break;
    }
    meta.gadgets.push_back(std::move(gadget));
  }

  // Literal-arc copies per layer, in (gadget, literal path, component) order.
  struct Copy {
    std::size_t gadget, path, component;
    NodeId tail = 0, head = 0;
  };
  std::vector<std::vector<Copy>> layer_copies(2 * n);
  for (std::size_t g = 0; g < meta.gadgets.size(); ++g) {
    const auto& paths = meta.gadgets[g].literal_paths;
    for (std::size_t p = 0; p < paths.size(); ++p) {
      for (int c = 0; c < q; ++c) {
        layer_copies[layer_of(paths[p].literals[c])].push_back({g, p, static_cast<std::size_t>(c)});
        meta.gadgets[g].literal_paths[p].literal_arcs.push_back(0);
      }
    }
  }

  GraphBuilder b;
  const NodeId s = b.add_node();
  const NodeId t = b.add_node();
  std::vector<NodeId> u(n);
  for (auto& v : u) v = b.add_node();
  meta.codec.entry_arc = b.add_arc(s, u[0], ArcRole::kSolidNormal, 0, 2, 0);
  meta.codec.segments.resize(n);

  // Horizontal routes: positive literal first, then negative, per variable.
  for (int var = 0; var < n; ++var) {
    const NodeId next = var + 1 < n ? u[var + 1] : t;
    for (int value : {1, 0}) {
      const int layer = 2 * var + (value == 1 ? 0 : 1);
      auto& copies = layer_copies[layer];
      std::vector<std::size_t> per_gadget(meta.gadgets.size(), 0);
      for (const Copy& c : copies) ++per_gadget[c.gadget];
      int length = 1;  // final arc into `next`
      for (std::size_t count : per_gadget) length += 2 * static_cast<int>(count) + 2;
      int first_arc_pieces = 1;
      if (split) {
        if (length > *meta.r) throw std::logic_error("segment longer than split target");
        first_arc_pieces += *meta.r - length;
      }

      auto& route = meta.codec.segments[var][value];
      auto solid = [&](NodeId from, NodeId to) {
        route.push_back(b.add_arc(from, to, ArcRole::kSolidNormal, 0, 2, 0));
      };
      NodeId at = u[var];
      std::size_t ci = 0;
      for (std::size_t g = 0; g < meta.gadgets.size(); ++g) {
        const NodeId in = b.add_node();
        if (g == 0) {
          for (int piece = 1; piece < first_arc_pieces; ++piece) {
            const NodeId mid = b.add_node();
            solid(at, mid);
            at = mid;
          }
        }
        solid(at, in);
        at = in;
        for (; ci < copies.size() && copies[ci].gadget == g; ++ci) {
          Copy& c = copies[ci];
          c.tail = b.add_node();
          c.head = b.add_node();
          solid(at, c.tail);
          const ArcId lit = b.add_arc(c.tail, c.head, ArcRole::kSolidFat, 0, 0, 0);
          route.push_back(lit);
          meta.gadgets[c.gadget].literal_paths[c.path].literal_arcs[c.component] = lit;
          at = c.head;
        }
        const NodeId out_node = b.add_node();
        solid(at, out_node);
        at = out_node;
      }
      solid(at, next);
    }
  }

  // Index copies by (gadget, path, component) to find literal arc endpoints.
  std::vector<std::vector<std::vector<const Copy*>>> copy_of(meta.gadgets.size());
  for (std::size_t g = 0; g < meta.gadgets.size(); ++g) {
    copy_of[g].assign(meta.gadgets[g].literal_paths.size(), std::vector<const Copy*>(q, nullptr));
  }
  for (const auto& layer : layer_copies) {
    for (const Copy& c : layer) copy_of[c.gadget][c.path][c.component] = &c;
  }

  const int path_arcs = 2 * n + 1;
  for (std::size_t g = 0; g < meta.gadgets.size(); ++g) {
    ClauseGadget& gadget = meta.gadgets[g];
    gadget.source = b.add_node();
    gadget.sink = b.add_node();
    gadget.dashed_arc = b.add_arc(s, gadget.source, ArcRole::kDashed, 2, 0, 1);
    for (std::size_t p = 0; p < gadget.literal_paths.size(); ++p) {
      LiteralPath& lp = gadget.literal_paths[p];
      // Visit components in layer order; same-layer copies follow chain order.
      std::vector<int> order(q);
      for (int c = 0; c < q; ++c) order[c] = c;
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int c) { return layer_of(lp.literals[a]) < layer_of(lp.literals[c]); });
      auto dotted = [&](NodeId from, NodeId to) {
        lp.arcs.push_back(b.add_arc(from, to, ArcRole::kDotted, 2, 0, 0));
      };
      NodeId at = gadget.source;
      for (int c : order) {
        const Copy* copy = copy_of[g][p][c];
        dotted(at, copy->tail);
        lp.arcs.push_back(lp.literal_arcs[c]);
        at = copy->head;
      }
      for (int remaining = path_arcs - 2 * q; remaining > 1; --remaining) {
        const NodeId mid = b.add_node();
        dotted(at, mid);
        at = mid;
      }
      dotted(at, gadget.sink);
    }
    gadget.exit_arc = b.add_arc(gadget.sink, t, ArcRole::kDotted, 2, 0, 0);
  }

  if (kind == RecoveryKind::kIncl) {
    meta.k = 2 * n + 3 - q;
  } else if (kind == RecoveryKind::kExcl) {
    meta.k = n * *meta.r + 1 - q;
  } else {
    meta.k = (2 * n + 3) + (n * *meta.r + 1) - 2 * q;
  }
  out.instance = Instance{b.build(s, t), RecoveryRule{kind, meta.k}, Budget::continuous(Rational(1))};
  return out;
}

}  // namespace rrsp

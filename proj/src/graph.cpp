#include "rrsp/graph.hpp"

#include <algorithm>
#include <array>
#include <queue>
#include <utility>

namespace rrsp {
namespace {

constexpr std::array<std::pair<ArcRole, std::string_view>, 7> kRoleNames = {{
    {ArcRole::kVertical, "vertical"},
    {ArcRole::kDiagonal, "diagonal"},
    {ArcRole::kDashed, "dashed"},
    {ArcRole::kDotted, "dotted"},
    {ArcRole::kSolidNormal, "solid-normal"},
    {ArcRole::kSolidFat, "solid-fat"},
    {ArcRole::kPlain, "plain"},
}};

std::string describe_cycle(const std::vector<NodeId>& cycle) {
  std::string text = "cycle detected:";
  for (NodeId v : cycle) text += " " + std::to_string(v);
  if (!cycle.empty()) text += " " + std::to_string(cycle.front());
  return text;
}

// Finds one cycle among nodes left over by Kahn's algorithm. Every such node
// has an incoming arc from another leftover node, so walking backwards must
// revisit a node.
std::vector<NodeId> find_cycle(const Digraph& g, const std::vector<bool>& leftover) {
  std::vector<NodeId> pred(g.node_count(), -1);
  for (const Arc& a : g.arcs()) {
    if (leftover[a.tail] && leftover[a.head] && pred[a.head] < 0) pred[a.head] = a.tail;
  }
  NodeId start = 0;
  while (!leftover[start]) ++start;
  std::vector<int> seen_at(g.node_count(), -1);
  std::vector<NodeId> walk;
  NodeId v = start;
  while (seen_at[v] < 0) {
    seen_at[v] = static_cast<int>(walk.size());
    walk.push_back(v);
    v = pred[v];
  }
  std::vector<NodeId> cycle(walk.begin() + seen_at[v], walk.end());
  std::reverse(cycle.begin(), cycle.end());
  // Rotate so the smallest node comes first.
  std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
  return cycle;
}

std::optional<std::vector<NodeId>> kahn(const Digraph& g, std::vector<bool>* leftover) {
  const int n = g.node_count();
  std::vector<int> indegree(n, 0);
  for (const Arc& a : g.arcs()) ++indegree[a.head];
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (NodeId v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<NodeId> order;
  order.reserve(n);
  while (!ready.empty()) {
    const NodeId v = ready.top();
    ready.pop();
    order.push_back(v);
    for (std::size_t idx : g.out_arcs(v)) {
      if (--indegree[g.arc(idx).head] == 0) ready.push(g.arc(idx).head);
    }
  }
  if (static_cast<int>(order.size()) == n) return order;
  if (leftover != nullptr) {
    leftover->assign(n, false);
    for (NodeId v = 0; v < n; ++v) (*leftover)[v] = indegree[v] > 0;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(ArcRole role) {
  for (const auto& [r, name] : kRoleNames) {
    if (r == role) return name;
  }
  return "plain";
}

std::optional<ArcRole> parse_arc_role(std::string_view text) {
  for (const auto& [r, name] : kRoleNames) {
    if (name == text) return r;
  }
  return std::nullopt;
}

std::string_view to_string(RecoveryKind kind) {
  switch (kind) {
    case RecoveryKind::kIncl: return "incl";
    case RecoveryKind::kExcl: return "excl";
    case RecoveryKind::kSym: return "sym";
  }
  return "incl";
}

std::optional<RecoveryKind> parse_recovery_kind(std::string_view text) {
  if (text == "incl") return RecoveryKind::kIncl;
  if (text == "excl") return RecoveryKind::kExcl;
  if (text == "sym") return RecoveryKind::kSym;
  return std::nullopt;
}

CycleError::CycleError(std::vector<NodeId> cycle)
    : std::runtime_error(describe_cycle(cycle)), cycle_(std::move(cycle)) {}

CapExceeded::CapExceeded(std::string what, std::size_t cap)
    : std::runtime_error(std::move(what) + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}

Digraph::Digraph(int node_count, std::vector<Arc> arcs, NodeId source, NodeId sink)
    : node_count_(node_count), source_(source), sink_(sink), arcs_(std::move(arcs)) {
  if (node_count_ < 1) throw std::invalid_argument("graph needs at least one node");
  auto in_range = [this](NodeId v) { return v >= 0 && v < node_count_; };
  if (!in_range(source_) || !in_range(sink_)) {
    throw std::invalid_argument("source or sink out of range");
  }
  std::sort(arcs_.begin(), arcs_.end(), [](const Arc& a, const Arc& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    const Arc& a = arcs_[i];
    if (i > 0 && arcs_[i - 1].id == a.id) {
      throw std::invalid_argument("duplicate arc id " + std::to_string(a.id));
    }
    if (!in_range(a.tail) || !in_range(a.head)) {
      throw std::invalid_argument("arc " + std::to_string(a.id) + " has an endpoint out of range");
    }
  }
  out_offsets_.assign(node_count_ + 1, 0);
  for (const Arc& a : arcs_) ++out_offsets_[a.tail + 1];
  for (int v = 0; v < node_count_; ++v) out_offsets_[v + 1] += out_offsets_[v];
  out_list_.resize(arcs_.size());
  std::vector<std::size_t> fill(out_offsets_.begin(), out_offsets_.end() - 1);
  for (std::size_t i = 0; i < arcs_.size(); ++i) out_list_[fill[arcs_[i].tail]++] = i;
  topo_ = kahn(*this, nullptr);
}

std::optional<std::size_t> Digraph::index_of(ArcId id) const {
  auto it = std::lower_bound(arcs_.begin(), arcs_.end(), id,
                             [](const Arc& a, ArcId key) { return a.id < key; });
  if (it == arcs_.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - arcs_.begin());
}

const Arc& Digraph::arc_by_id(ArcId id) const {
  const auto idx = index_of(id);
  if (!idx) throw std::out_of_range("unknown arc id " + std::to_string(id));
  return arcs_[*idx];
}

std::span<const std::size_t> Digraph::out_arcs(NodeId node) const {
  return std::span<const std::size_t>(out_list_).subspan(
      out_offsets_[node], out_offsets_[node + 1] - out_offsets_[node]);
}

Digraph Digraph::filtered(const std::function<bool(const Arc&)>& keep) const {
  std::vector<Arc> kept;
  for (const Arc& a : arcs_) {
    if (keep(a)) kept.push_back(a);
  }
  return Digraph(node_count_, std::move(kept), source_, sink_);
}

const Rational& Scenario::deviation(ArcId id) const {
  static const Rational kZero(0);
  auto it = deviations_.find(id);
  return it == deviations_.end() ? kZero : it->second;
}

void Scenario::set(ArcId id, const Rational& value) {
  if (value == 0) {
    deviations_.erase(id);
  } else {
    deviations_[id] = value;
  }
}

Rational Scenario::total() const {
  Rational sum(0);
  for (const auto& [id, d] : deviations_) sum += d;
  return sum;
}

std::vector<NodeId> topological_order(const Digraph& g) {
  if (g.cached_topological_order()) return *g.cached_topological_order();
  std::vector<bool> leftover;
  kahn(g, &leftover);
  throw CycleError(find_cycle(g, leftover));
}

std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> violations;
  const Digraph& g = inst.graph;
  for (const Arc& a : g.arcs()) {
    const std::string tag = "arc " + std::to_string(a.id);
    if (a.tail == a.head) violations.push_back(tag + ": self-loop");
    if (a.first_stage_cost < 0) violations.push_back(tag + ": negative first-stage cost");
    if (a.nominal < 0) violations.push_back(tag + ": negative nominal cost");
    if (a.deviation_cap < 0) violations.push_back(tag + ": negative deviation cap");
  }
  if (!g.is_acyclic()) {
    try {
      topological_order(g);
    } catch (const CycleError& e) {
      violations.emplace_back(e.what());
    }
  }
  if (g.source() == g.sink()) violations.emplace_back("source equals sink");

  std::vector<bool> reached(g.node_count(), false);
  std::vector<NodeId> stack = {g.source()};
  reached[g.source()] = true;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (std::size_t idx : g.out_arcs(v)) {
      const NodeId w = g.arc(idx).head;
      if (!reached[w]) {
        reached[w] = true;
        stack.push_back(w);
      }
    }
  }
  if (!reached[g.sink()]) violations.emplace_back("sink not reachable from source");

  if (inst.rule.k < 0) violations.emplace_back("recovery parameter k is negative");
  if (inst.budget.kind == BudgetKind::kContinuous) {
    if (inst.budget.gamma_c < 0) violations.emplace_back("continuous budget is negative");
  } else if (inst.budget.gamma_d < 0 ||
             inst.budget.gamma_d > static_cast<int>(g.arc_count())) {
    violations.emplace_back("discrete budget outside [0, number of arcs]");
  }
  return violations;
}

void for_each_st_path(const Digraph& g, std::size_t cap,
                      const std::function<void(const Path&)>& visit) {
  for_each_st_path(g, cap, visit, nullptr);
}

void for_each_st_path(const Digraph& g, std::size_t cap,
                      const std::function<void(const Path&)>& visit,
                      const std::function<bool(const Arc&, std::size_t)>& extend) {
  if (!g.is_acyclic()) topological_order(g);  // throws CycleError

  // Prune nodes that cannot reach the sink.
  const auto& order = *g.cached_topological_order();
  std::vector<bool> alive(g.node_count(), false);
  alive[g.sink()] = true;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (*it == g.sink()) continue;
    for (std::size_t idx : g.out_arcs(*it)) {
      if (alive[g.arc(idx).head]) {
        alive[*it] = true;
        break;
      }
    }
  }
  if (!alive[g.source()] || g.source() == g.sink()) return;

  std::size_t emitted = 0;
  Path path;
  // Explicit DFS stack of (node, position in its out-arc list).
  std::vector<std::pair<NodeId, std::size_t>> stack = {{g.source(), 0}};
  while (!stack.empty()) {
    auto& [node, pos] = stack.back();
    const auto outs = g.out_arcs(node);
    if (pos == outs.size()) {
      stack.pop_back();
      if (!path.arc_ids.empty()) path.arc_ids.pop_back();
      continue;
    }
    const Arc& a = g.arc(outs[pos++]);
    if (!alive[a.head]) continue;
    if (extend && !extend(a, path.arc_ids.size())) continue;
    path.arc_ids.push_back(a.id);
    if (a.head == g.sink()) {
      if (++emitted > cap) throw CapExceeded("too many source-sink paths", cap);
      visit(path);
      path.arc_ids.pop_back();
    } else {
      stack.emplace_back(a.head, 0);
    }
  }
}

std::vector<Path> enumerate_st_paths(const Digraph& g, std::size_t cap) {
  std::vector<Path> paths;
  for_each_st_path(g, cap, [&paths](const Path& p) { paths.push_back(p); });
  return paths;
}

bool is_st_path(const Digraph& g, const Path& p) {
  if (p.arc_ids.empty()) return false;
  NodeId at = g.source();
  for (std::size_t i = 0; i < p.arc_ids.size(); ++i) {
    const auto idx = g.index_of(p.arc_ids[i]);
    if (!idx || g.arc(*idx).tail != at) return false;
    at = g.arc(*idx).head;
    if (at == g.sink() && i + 1 != p.arc_ids.size()) return false;
  }
  return at == g.sink();
}

Rational first_stage_cost(const Digraph& g, const Path& p) {
  Rational sum(0);
  for (ArcId id : p.arc_ids) sum += g.arc_by_id(id).first_stage_cost;
  return sum;
}

Rational second_stage_cost(const Digraph& g, const Path& p, const Scenario& scenario) {
  Rational sum(0);
  for (ArcId id : p.arc_ids) sum += g.arc_by_id(id).nominal + scenario.deviation(id);
  return sum;
}

bool scenario_is_feasible(const Instance& inst, const Scenario& scenario) {
  for (const auto& [id, d] : scenario.entries()) {
    const auto idx = inst.graph.index_of(id);
    if (!idx || d < 0 || d > inst.graph.arc(*idx).deviation_cap) return false;
  }
  if (inst.budget.kind == BudgetKind::kContinuous) {
    return scenario.total() <= inst.budget.gamma_c;
  }
  return static_cast<int>(scenario.support_size()) <= inst.budget.gamma_d;
}

}  // namespace rrsp

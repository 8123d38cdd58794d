#include "balgraph/balance.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace balgraph {

bool ClosedWalk::contains(Vertex v) const {
  return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

namespace {

Vertex use_origin(const Digraph& d, EdgeUse u) {
  const Edge& e = d.edge(u.edge);
  return u.reversed ? e.endpoint : e.origin;
}

Vertex use_endpoint(const Digraph& d, EdgeUse u) {
  const Edge& e = d.edge(u.edge);
  return u.reversed ? e.origin : e.endpoint;
}

auto use_key(const Digraph& d, EdgeUse u) { return std::tuple(use_origin(d, u), u.edge, u.reversed); }

}  // namespace

void validate_walk(const Digraph& d, Mode mode, const ClosedWalk& w) {
  if (w.vertices.size() != w.uses.size()) throw WalkError("walk needs one vertex per edge use");
  std::set<EdgeUse> seen;
  for (std::size_t j = 0; j < w.uses.size(); ++j) {
    const EdgeUse u = w.uses[j];
    if (u.edge >= d.edge_count()) throw WalkError("walk uses unknown edge " + std::to_string(u.edge));
    if (mode == Mode::rigid && u.reversed) throw WalkError("rigid walk traverses edge " + std::to_string(u.edge) + " backwards");
    if (!seen.insert(u).second) throw WalkError("walk repeats a use of edge " + std::to_string(u.edge));
    const Vertex next = w.vertices[(j + 1) % w.vertices.size()];
    if (use_origin(d, u) != w.vertices[j] || use_endpoint(d, u) != next) {
      throw WalkError("edge use " + std::to_string(j) + " is not incident to its neighbouring vertices");
    }
  }
}

Element walk_product_edges(const FiniteGroup& g, const Digraph& d, const EdgeLabeling& f,
                           const ClosedWalk& w) {
  validate_walk(d, f.mode, w);
  Element acc = g.identity();
  for (const EdgeUse u : w.uses) {
    const Element x = f.values.at(u.edge);
    acc = g.mul(acc, u.reversed ? g.inv(x) : x);
  }
  return acc;
}

Element walk_product_full(const FiniteGroup& g, const Digraph& d, const FullLabeling& h,
                          const ClosedWalk& w) {
  validate_walk(d, h.mode, w);
  Element acc = g.identity();
  for (std::size_t j = 0; j < w.uses.size(); ++j) {
    const EdgeUse u = w.uses[j];
    const Element x = h.edge_values.at(u.edge);
    acc = g.mul(acc, h.vertex_values.at(w.vertices[j]));
    acc = g.mul(acc, u.reversed ? g.inv(x) : x);
  }
  return acc;
}

void for_each_closed_walk(const Digraph& d, Mode mode, std::optional<Vertex> base,
                          const std::function<void(const ClosedWalk&)>& visit) {
  std::vector<EdgeUse> all_uses;
  for (EdgeId id = 0; id < d.edge_count(); ++id) {
    all_uses.push_back({id, false});
    if (mode == Mode::flexible) all_uses.push_back({id, true});
  }

  // uses_from[v]: uses leaving v, in key order.
  std::vector<std::vector<EdgeUse>> uses_from(d.vertex_count());
  for (const EdgeUse u : all_uses) uses_from[use_origin(d, u)].push_back(u);
  for (auto& list : uses_from) {
    std::sort(list.begin(), list.end(),
              [&](EdgeUse a, EdgeUse b) { return use_key(d, a) < use_key(d, b); });
  }

  std::vector<std::uint8_t> used(2 * d.edge_count(), 0);
  auto slot = [](EdgeUse u) { return 2 * static_cast<std::size_t>(u.edge) + (u.reversed ? 1 : 0); };

  ClosedWalk walk;
  for (const EdgeUse start : all_uses) {
    const auto start_key = use_key(d, start);
    const Vertex home = use_origin(d, start);
    walk.vertices.assign(1, home);
    walk.uses.assign(1, start);
    used[slot(start)] = 1;

    auto extend = [&](auto&& self, Vertex at) -> void {
      if (at == home && (!base || walk.contains(*base))) visit(walk);
      for (const EdgeUse u : uses_from[at]) {
        if (used[slot(u)] || !(use_key(d, u) > start_key)) continue;
        used[slot(u)] = 1;
        walk.vertices.push_back(at);
        walk.uses.push_back(u);
        self(self, use_endpoint(d, u));
        walk.vertices.pop_back();
        walk.uses.pop_back();
        used[slot(u)] = 0;
      }
    };
    extend(extend, use_endpoint(d, start));
    used[slot(start)] = 0;
  }
}

std::vector<ClosedWalk> all_closed_walks(const Digraph& d, Mode mode, std::optional<Vertex> base) {
  std::vector<ClosedWalk> out;
  for_each_closed_walk(d, mode, base, [&](const ClosedWalk& w) { out.push_back(w); });
  return out;
}

BalanceChecker::BalanceChecker(const FiniteGroup& g, const Digraph& d, Target target, Mode mode)
    : group_(&g),
      target_(target),
      mode_(mode),
      slot_count_(target == Target::full ? d.vertex_count() + d.edge_count() : d.edge_count()),
      vertex_count_(d.vertex_count()),
      edge_count_(d.edge_count()) {
  const std::uint32_t edge_offset = target == Target::full ? static_cast<std::uint32_t>(d.vertex_count()) : 0;
  for_each_closed_walk(d, mode, std::nullopt, [&](const ClosedWalk& w) {
    CompiledWalk c;
    c.last_slot = 0;
    for (std::size_t j = 0; j < w.uses.size(); ++j) {
      if (target == Target::full) c.tokens.push_back({w.vertices[j], false});
      c.tokens.push_back({edge_offset + w.uses[j].edge, w.uses[j].reversed});
    }
    for (const Token& t : c.tokens) c.last_slot = std::max(c.last_slot, t.slot);
    walks_.push_back(std::move(c));
  });
  std::stable_sort(walks_.begin(), walks_.end(), [](const CompiledWalk& a, const CompiledWalk& b) {
    return a.tokens.size() < b.tokens.size();
  });
}

Element BalanceChecker::product(const CompiledWalk& w, std::span<const Element> slots) const {
  const FiniteGroup& g = *group_;
  Element acc = g.identity();
  for (const Token& t : w.tokens) {
    const Element x = slots[t.slot];
    acc = g.mul(acc, t.inverted ? g.inv(x) : x);
  }
  return acc;
}

bool BalanceChecker::is_balanced(std::span<const Element> slots) const {
  if (slots.size() != slot_count_) throw std::invalid_argument("labeling has the wrong number of values");
  for (const Element x : slots)
    if (!group_->contains(x)) throw std::invalid_argument("labeling value outside the group");
  const Element one = group_->identity();
  return std::all_of(walks_.begin(), walks_.end(),
                     [&](const CompiledWalk& w) { return product(w, slots) == one; });
}

bool BalanceChecker::is_balanced(const Labeling& l) const {
  const bool full = std::holds_alternative<FullLabeling>(l);
  const Mode mode = full ? std::get<FullLabeling>(l).mode : std::get<EdgeLabeling>(l).mode;
  if (full != (target_ == Target::full) || mode != mode_) {
    throw std::invalid_argument("labeling kind does not match the checker");
  }
  if (full && std::get<FullLabeling>(l).vertex_values.size() != vertex_count_) {
    throw std::invalid_argument("labeling has the wrong number of vertex values");
  }
  const auto slots = to_slots(l);
  return is_balanced(slots);
}

bool is_balanced_edges(const FiniteGroup& g, const Digraph& d, const EdgeLabeling& f) {
  return BalanceChecker(g, d, Target::edges, f.mode).is_balanced(Labeling{f});
}

bool is_balanced_full(const FiniteGroup& g, const Digraph& d, const FullLabeling& h) {
  return BalanceChecker(g, d, Target::full, h.mode).is_balanced(Labeling{h});
}

OracleBudgetExceeded::OracleBudgetExceeded(BigInt required, std::uint64_t budget)
    : std::runtime_error("oracle budget exceeded: " + required.str() + " candidate labelings required, budget is " +
                         std::to_string(budget)),
      required_(std::move(required)),
      budget_(budget) {}

BigInt oracle_candidates(const FiniteGroup& g, const Digraph& d, Target target) {
  const std::size_t slots = target == Target::full ? d.vertex_count() + d.edge_count() : d.edge_count();
  return boost::multiprecision::pow(BigInt(g.order()), static_cast<unsigned>(slots));
}

class Oracle {
 public:
  Oracle(const BalanceChecker& checker, const std::function<void(std::span<const Element>)>& visit)
      : checker_(checker), visit_(visit), slots_(checker.slot_count()), by_last_slot_(checker.slot_count()) {
    for (const auto& w : checker.walks_) by_last_slot_[w.last_slot].push_back(&w);
  }

  void run() { assign(0); }

 private:
  void assign(std::size_t k) {
    if (k == slots_.size()) {
      visit_(slots_);
      return;
    }
    const FiniteGroup& g = *checker_.group_;
    const Element one = g.identity();
    for (std::uint32_t x = 0; x < g.order(); ++x) {
      slots_[k] = Element{x};
      const auto& closing = by_last_slot_[k];
      const bool ok = std::all_of(closing.begin(), closing.end(), [&](const BalanceChecker::CompiledWalk* w) {
        return checker_.product(*w, slots_) == one;
      });
      if (ok) assign(k + 1);
    }
  }

  const BalanceChecker& checker_;
  const std::function<void(std::span<const Element>)>& visit_;
  std::vector<Element> slots_;
  std::vector<std::vector<const BalanceChecker::CompiledWalk*>> by_last_slot_;
};

void brute_force_for_each(const FiniteGroup& g, const Digraph& d, Target target, Mode mode,
                          const std::function<void(std::span<const Element>)>& visit, std::uint64_t budget) {
  BigInt required = oracle_candidates(g, d, target);
  if (required > budget) throw OracleBudgetExceeded(std::move(required), budget);
  const BalanceChecker checker(g, d, target, mode);
  Oracle(checker, visit).run();
}

BigInt brute_force_count(const FiniteGroup& g, const Digraph& d, Target target, Mode mode, std::uint64_t budget) {
  std::uint64_t accepted = 0;
  brute_force_for_each(g, d, target, mode, [&](std::span<const Element>) { ++accepted; }, budget);
  return BigInt(accepted);
}

}  // namespace balgraph

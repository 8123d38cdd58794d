#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "balgraph/digraph.hpp"
#include "balgraph/group.hpp"
#include "balgraph/labeling.hpp"

namespace balgraph {

/// One traversal of an edge, with or against its direction.
struct EdgeUse {
  EdgeId edge = 0;
  bool reversed = false;

  friend auto operator<=>(const EdgeUse&, const EdgeUse&) = default;
};

/// v1, e1, v2, e2, ..., vn, en where e_j goes from v_j to v_{j+1} and e_n
/// returns to v1. Edge uses are pairwise distinct; e and its reversal are
/// distinct uses. The empty walk is the trivial cycle.
struct ClosedWalk {
  std::vector<Vertex> vertices;
  std::vector<EdgeUse> uses;

  std::size_t length() const { return uses.size(); }
  bool contains(Vertex v) const;
  friend bool operator==(const ClosedWalk&, const ClosedWalk&) = default;
};

class WalkError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws WalkError if the walk breaks incidence, repeats an edge use, or
/// uses a reversed edge in rigid mode.
void validate_walk(const Digraph& d, Mode mode, const ClosedWalk& w);

/// f(e1)·f(e2)···f(en), reversed uses contributing inverses.
Element walk_product_edges(const FiniteGroup& g, const Digraph& d, const EdgeLabeling& f,
                           const ClosedWalk& w);
/// h(v1)·h(e1)·h(v2)·h(e2)···h(vn)·h(en).
Element walk_product_full(const FiniteGroup& g, const Digraph& d, const FullLabeling& h,
                          const ClosedWalk& w);

/// Visits every nonempty edge-use-distinct closed walk once per rotation
/// class. The listed rotation starts with the walk's smallest edge use under
/// the order (origin vertex of the use, edge id, reversed). Walks that are
/// reversals of each other are distinct. With `base`, only walks visiting
/// that vertex are reported.
void for_each_closed_walk(const Digraph& d, Mode mode, std::optional<Vertex> base,
                          const std::function<void(const ClosedWalk&)>& visit);
std::vector<ClosedWalk> all_closed_walks(const Digraph& d, Mode mode,
                                         std::optional<Vertex> base = std::nullopt);

/// Checks labelings of one graph against every closed walk. Walks are
/// enumerated once at construction.
class BalanceChecker {
 public:
  BalanceChecker(const FiniteGroup& g, const Digraph& d, Target target, Mode mode);

  /// `slots` as produced by to_slots().
  bool is_balanced(std::span<const Element> slots) const;
  bool is_balanced(const Labeling& l) const;

  std::size_t slot_count() const { return slot_count_; }
  std::size_t walk_count() const { return walks_.size(); }

 private:
  friend class Oracle;

  struct Token {
    std::uint32_t slot;
    bool inverted;
  };
  struct CompiledWalk {
    std::vector<Token> tokens;
    std::uint32_t last_slot;
  };

  Element product(const CompiledWalk& w, std::span<const Element> slots) const;

  const FiniteGroup* group_;
  Target target_;
  Mode mode_;
  std::size_t slot_count_;
  std::size_t vertex_count_;
  std::size_t edge_count_;
  std::vector<CompiledWalk> walks_;  // shortest first
};

bool is_balanced_edges(const FiniteGroup& g, const Digraph& d, const EdgeLabeling& f);
bool is_balanced_full(const FiniteGroup& g, const Digraph& d, const FullLabeling& h);

inline constexpr std::uint64_t kDefaultOracleBudget = 10'000'000;

class OracleBudgetExceeded : public std::runtime_error {
 public:
  OracleBudgetExceeded(BigInt required, std::uint64_t budget);
  const BigInt& required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

 private:
  BigInt required_;
  std::uint64_t budget_;
};

/// Number of candidate labelings the oracle must consider, |G|^slots.
BigInt oracle_candidates(const FiniteGroup& g, const Digraph& d, Target target);

/// Exhaustive search over all |G|^slots labelings, reporting every balanced
/// one in lexicographic slot order. Candidates are extended slot by slot and
/// a walk is checked as soon as all of its slots are assigned, which visits
/// exactly the balanced labelings without testing the rest one by one.
/// Throws OracleBudgetExceeded when |G|^slots > budget.
void brute_force_for_each(const FiniteGroup& g, const Digraph& d, Target target, Mode mode,
                          const std::function<void(std::span<const Element>)>& visit,
                          std::uint64_t budget = kDefaultOracleBudget);

BigInt brute_force_count(const FiniteGroup& g, const Digraph& d, Target target, Mode mode,
                         std::uint64_t budget = kDefaultOracleBudget);

}  // namespace balgraph

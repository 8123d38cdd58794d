#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "balgraph/digraph.hpp"
#include "balgraph/group.hpp"
#include "balgraph/labeling.hpp"

namespace balgraph {

class NotWeaklyConnected : public std::invalid_argument {
 public:
  NotWeaklyConnected() : std::invalid_argument("graph is not weakly connected") {}
};

/// Raised when propagating values from a base vertex meets a conflict,
/// i.e. the input labeling is not balanced.
class UnbalancedLabeling : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// |G₂|^s · |G|^t with its exact value.
struct BalancedCount {
  unsigned s = 0;
  unsigned t = 0;
  BigInt value;

  friend bool operator==(const BalancedCount&, const BalancedCount&) = default;
};

BalancedCount make_count(const FiniteGroup& g, unsigned s, unsigned t);

/// Closed-form number of balanced labelings.
///   edges, flexible: |G|^(|V|-1)
///   full,  flexible: |G|^|V| if the underlying graph is bipartite,
///                    |G₂|·|G|^(|V|-1) otherwise
///   edges, rigid:    |G|^(|V| - #SCC + #cross-SCC edges)
///   full,  rigid:    |G|^(2|V| - #SCC + #cross-SCC edges)
/// Throws NotWeaklyConnected.
BalancedCount count(const FiniteGroup& g, const Digraph& d, Target target, Mode mode);

/// Vertex values with values[base] = identity.
struct Potential {
  std::vector<Element> values;
  Vertex base = 0;

  friend bool operator==(const Potential&, const Potential&) = default;
};

/// f(e) = p(origin)⁻¹ · p(endpoint).
EdgeLabeling potential_to_edges(const FiniteGroup& g, const Digraph& d, const Potential& p);

/// Inverse of potential_to_edges for a flexible labeling: p(base) = 1 and
/// p(w) = p(u)·f(e) across each edge e from u to w, in either direction.
/// Throws UnbalancedLabeling when two routes disagree, NotWeaklyConnected
/// when some vertex is unreachable.
Potential edges_to_potential(const FiniteGroup& g, const Digraph& d, const EdgeLabeling& f, Vertex base = 0);

struct VertexEdgePair {
  Element a;
  EdgeLabeling f;

  friend bool operator==(const VertexEdgePair&, const VertexEdgePair&) = default;
};

/// Bipartite underlying graph: h(e) = f(e), h(base) = a, and across an edge
/// use with value q the far vertex gets q⁻¹·c⁻¹·q where c is the near one.
FullLabeling pair_to_full_bipartite(const FiniteGroup& g, const Digraph& d, Element a, const EdgeLabeling& f,
                                    Vertex base = 0);

/// Non-bipartite underlying graph: a must be an involution. h(base) = a,
/// vertex values spread by conjugation h(w) = q⁻¹·h(u)·q, and
/// h(e) = h(origin)·f(e).
FullLabeling pair_to_full_odd(const FiniteGroup& g, const Digraph& d, Element a, const EdgeLabeling& f,
                              Vertex base = 0);

/// Inverse of whichever pair_to_full_* applies to d.
VertexEdgePair full_to_pair(const FiniteGroup& g, const Digraph& d, const FullLabeling& h, Vertex base = 0);

/// h(v) = vv(v), h(e) = vv(origin)⁻¹·f(e).
FullLabeling pair_to_full_rigid(const FiniteGroup& g, const Digraph& d, const std::vector<Element>& vertex_values,
                                const EdgeLabeling& f);

struct RigidPair {
  std::vector<Element> vertex_values;
  EdgeLabeling f;

  friend bool operator==(const RigidPair&, const RigidPair&) = default;
};

/// f(e) = h(origin)·h(e); vertex values are copied.
RigidPair full_to_pair_rigid(const FiniteGroup& g, const Digraph& d, const FullLabeling& h);

/// The free coordinates of a bijection between a product of value sets and
/// the balanced labelings of one (graph, target, mode). Enumeration is
/// lexicographic over the coordinates, last coordinate fastest; sampling
/// draws each coordinate independently and uniformly.
///
/// Coordinates, by case (base = smallest vertex of the graph or of its SCC):
///   edges, flexible: potential at each non-base vertex
///   full,  flexible: h(base) ∈ G (bipartite) or G₂, then the potential
///   edges, rigid:    potential at each non-base vertex of each SCC, then
///                    each cross-SCC edge value, by edge id
///   full,  rigid:    every vertex value, then the edges/rigid coordinates
class Parametrization {
 public:
  Parametrization(const FiniteGroup& g, const Digraph& d, Target target, Mode mode);

  std::size_t coordinate_count() const { return domains_.size(); }
  /// Allowed values of coordinate i, ascending.
  const std::vector<Element>& domain(std::size_t i) const { return domains_[i]; }
  /// Product of the domain sizes.
  BigInt size() const;

  /// Maps positions (one index into each domain) to a labeling.
  Labeling build(const std::vector<std::size_t>& positions) const;

 private:
  EdgeLabeling rigid_edges(const std::vector<std::size_t>& positions, std::size_t offset) const;
  EdgeLabeling flexible_edges(const std::vector<std::size_t>& positions, std::size_t offset) const;

  const FiniteGroup* group_;
  const Digraph* graph_;
  Target target_;
  Mode mode_;
  StructureReport report_;
  std::vector<std::vector<Element>> domains_;
  // Rigid: per-vertex coordinate index, or npos for SCC bases.
  std::vector<std::size_t> vertex_coordinate_;
  std::vector<std::size_t> cross_edge_coordinate_;
};

/// Single-consumer stream of labelings.
template <class T>
class LabelingStream {
 public:
  LabelingStream(Parametrization param, std::function<T(Labeling)> convert)
      : param_(std::move(param)), convert_(std::move(convert)), positions_(param_.coordinate_count(), 0) {
    for (std::size_t i = 0; i < param_.coordinate_count(); ++i)
      if (param_.domain(i).empty()) done_ = true;
  }

  std::optional<T> next() {
    if (done_) return std::nullopt;
    T out = convert_(param_.build(positions_));
    advance();
    return out;
  }

 private:
  void advance() {
    for (std::size_t i = positions_.size(); i-- > 0;) {
      if (++positions_[i] < param_.domain(i).size()) return;
      positions_[i] = 0;
    }
    done_ = true;
  }

  Parametrization param_;
  std::function<T(Labeling)> convert_;
  std::vector<std::size_t> positions_;
  bool done_ = false;
};

/// Balanced rigid edge labelings: per-SCC potentials times free values on
/// cross-SCC edges. Throws NotWeaklyConnected.
LabelingStream<EdgeLabeling> rigid_edge_enumerator(const FiniteGroup& g, const Digraph& d);

/// Every balanced labeling exactly once, in Parametrization order.
/// The group and graph must outlive the stream. Throws NotWeaklyConnected.
LabelingStream<Labeling> enumerate_all(const FiniteGroup& g, const Digraph& d, Target target, Mode mode);

/// SplitMix64. Fully specified, so sampled output is identical everywhere.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();
  /// Uniform integer in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

/// Uniform draw from the balanced labelings, deterministic per seed.
/// Throws NotWeaklyConnected.
Labeling sample_uniform(const FiniteGroup& g, const Digraph& d, Target target, Mode mode, std::uint64_t seed);

}  // namespace balgraph

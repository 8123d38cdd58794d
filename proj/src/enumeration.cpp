#include "balgraph/enumeration.hpp"

#include <limits>
#include <queue>

namespace balgraph {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

StructureReport require_connected(const Digraph& d) {
  if (d.vertex_count() == 0) throw std::invalid_argument("graph has no vertices");
  StructureReport report = analyze(d);
  if (!report.weakly_connected) throw NotWeaklyConnected();
  return report;
}

void require_edge_values(const FiniteGroup& g, const Digraph& d, const std::vector<Element>& values) {
  if (values.size() != d.edge_count()) throw std::invalid_argument("edge labeling size does not match the graph");
  for (const Element x : values)
    if (!g.contains(x)) throw std::invalid_argument("edge value outside the group");
}

void require_vertex_values(const FiniteGroup& g, const Digraph& d, const std::vector<Element>& values) {
  if (values.size() != d.vertex_count()) throw std::invalid_argument("vertex labeling size does not match the graph");
  for (const Element x : values)
    if (!g.contains(x)) throw std::invalid_argument("vertex value outside the group");
}

// Breadth-first propagation of vertex values over the underlying undirected
// graph. `step(c, q)` gives the value across an edge use with value q from a
// vertex holding c; a reversed use has q = f(e)⁻¹. Every edge not used to
// discover a vertex must agree with the value already assigned.
template <class Step>
std::vector<Element> propagate(const FiniteGroup& g, const Digraph& d, const EdgeLabeling& f, Vertex base,
                               Element start, Step step) {
  if (base >= d.vertex_count()) throw std::invalid_argument("base vertex out of range");
  std::vector<std::optional<Element>> value(d.vertex_count());
  value[base] = start;
  std::queue<Vertex> queue;
  queue.push(base);
  auto reach = [&](Vertex from, Vertex to, Element q, EdgeId id) {
    const Element candidate = step(*value[from], q);
    if (!value[to]) {
      value[to] = candidate;
      queue.push(to);
    } else if (*value[to] != candidate) {
      throw UnbalancedLabeling("inconsistent value at vertex " + std::to_string(to) + " via edge " +
                               std::to_string(id) + "; the edge labeling is not balanced");
    }
  };
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop();
    for (EdgeId id : d.out_edges(u)) reach(u, d.edge(id).endpoint, f.values[id], id);
    for (EdgeId id : d.in_edges(u)) reach(u, d.edge(id).origin, g.inv(f.values[id]), id);
  }
  std::vector<Element> out;
  out.reserve(value.size());
  for (const auto& v : value) {
    if (!v) throw NotWeaklyConnected();
    out.push_back(*v);
  }
  return out;
}

}  // namespace

BalancedCount make_count(const FiniteGroup& g, unsigned s, unsigned t) {
  BigInt value = boost::multiprecision::pow(BigInt(g.order()), t);
  if (s) value *= boost::multiprecision::pow(BigInt(g.involutions().size()), s);
  return BalancedCount{s, t, std::move(value)};
}

BalancedCount count(const FiniteGroup& g, const Digraph& d, Target target, Mode mode) {
  const StructureReport report = require_connected(d);
  const auto n = static_cast<unsigned>(d.vertex_count());
  if (mode == Mode::flexible) {
    if (target == Target::edges) return make_count(g, 0, n - 1);
    return report.bipartite ? make_count(g, 0, n) : make_count(g, 1, n - 1);
  }
  const auto k = static_cast<unsigned>(report.scc_count);
  const auto r = static_cast<unsigned>(report.cross_scc_edges);
  const unsigned rigid_edges = n - k + r;
  return make_count(g, 0, target == Target::edges ? rigid_edges : n + rigid_edges);
}

EdgeLabeling potential_to_edges(const FiniteGroup& g, const Digraph& d, const Potential& p) {
  require_vertex_values(g, d, p.values);
  EdgeLabeling f{Mode::flexible, {}};
  f.values.reserve(d.edge_count());
  for (const Edge& e : d.edges()) f.values.push_back(g.mul(g.inv(p.values[e.origin]), p.values[e.endpoint]));
  return f;
}

Potential edges_to_potential(const FiniteGroup& g, const Digraph& d, const EdgeLabeling& f, Vertex base) {
  require_edge_values(g, d, f.values);
  auto values = propagate(g, d, f, base, g.identity(), [&](Element c, Element q) { return g.mul(c, q); });
  return Potential{std::move(values), base};
}

FullLabeling pair_to_full_bipartite(const FiniteGroup& g, const Digraph& d, Element a, const EdgeLabeling& f,
                                    Vertex base) {
  require_edge_values(g, d, f.values);
  if (!g.contains(a)) throw std::invalid_argument("vertex value outside the group");
  auto vertices = propagate(g, d, f, base, a,
                            [&](Element c, Element q) { return g.mul(g.mul(g.inv(q), g.inv(c)), q); });
  return FullLabeling{Mode::flexible, std::move(vertices), f.values};
}

FullLabeling pair_to_full_odd(const FiniteGroup& g, const Digraph& d, Element a, const EdgeLabeling& f,
                              Vertex base) {
  require_edge_values(g, d, f.values);
  if (!g.contains(a) || g.mul(a, a) != g.identity()) {
    throw std::invalid_argument("base value must be an involution");
  }
  auto vertices = propagate(g, d, f, base, a, [&](Element c, Element q) { return g.mul(g.mul(g.inv(q), c), q); });
  FullLabeling h{Mode::flexible, std::move(vertices), {}};
  h.edge_values.reserve(d.edge_count());
  for (EdgeId id = 0; id < d.edge_count(); ++id) {
    h.edge_values.push_back(g.mul(h.vertex_values[d.edge(id).origin], f.values[id]));
  }
  return h;
}

VertexEdgePair full_to_pair(const FiniteGroup& g, const Digraph& d, const FullLabeling& h, Vertex base) {
  require_vertex_values(g, d, h.vertex_values);
  require_edge_values(g, d, h.edge_values);
  if (base >= d.vertex_count()) throw std::invalid_argument("base vertex out of range");
  VertexEdgePair out{h.vertex_values[base], EdgeLabeling{Mode::flexible, {}}};
  if (is_underlying_bipartite(d)) {
    out.f.values = h.edge_values;
    return out;
  }
  out.f.values.reserve(d.edge_count());
  for (EdgeId id = 0; id < d.edge_count(); ++id) {
    out.f.values.push_back(g.mul(h.vertex_values[d.edge(id).origin], h.edge_values[id]));
  }
  return out;
}

FullLabeling pair_to_full_rigid(const FiniteGroup& g, const Digraph& d, const std::vector<Element>& vertex_values,
                                const EdgeLabeling& f) {
  require_vertex_values(g, d, vertex_values);
  require_edge_values(g, d, f.values);
  FullLabeling h{Mode::rigid, vertex_values, {}};
  h.edge_values.reserve(d.edge_count());
  for (EdgeId id = 0; id < d.edge_count(); ++id) {
    h.edge_values.push_back(g.mul(g.inv(vertex_values[d.edge(id).origin]), f.values[id]));
  }
  return h;
}

RigidPair full_to_pair_rigid(const FiniteGroup& g, const Digraph& d, const FullLabeling& h) {
  require_vertex_values(g, d, h.vertex_values);
  require_edge_values(g, d, h.edge_values);
  RigidPair out{h.vertex_values, EdgeLabeling{Mode::rigid, {}}};
  out.f.values.reserve(d.edge_count());
  for (EdgeId id = 0; id < d.edge_count(); ++id) {
    out.f.values.push_back(g.mul(h.vertex_values[d.edge(id).origin], h.edge_values[id]));
  }
  return out;
}

Parametrization::Parametrization(const FiniteGroup& g, const Digraph& d, Target target, Mode mode)
    : group_(&g), graph_(&d), target_(target), mode_(mode), report_(require_connected(d)) {
  const std::size_t n = d.vertex_count();
  const auto all = g.elements();

  if (mode == Mode::flexible) {
    if (target == Target::full) {
      domains_.push_back(report_.bipartite ? all : g.involutions());
    }
    for (std::size_t v = 1; v < n; ++v) domains_.push_back(all);
    return;
  }

  if (target == Target::full) {
    for (std::size_t v = 0; v < n; ++v) domains_.push_back(all);
  }
  vertex_coordinate_.assign(n, npos);
  std::vector<bool> has_base(report_.scc_count, false);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t c = report_.scc_assignment[v];
    if (!has_base[c]) {
      has_base[c] = true;
      continue;
    }
    vertex_coordinate_[v] = domains_.size();
    domains_.push_back(all);
  }
  cross_edge_coordinate_.assign(d.edge_count(), npos);
  for (EdgeId id = 0; id < d.edge_count(); ++id) {
    const Edge& e = d.edge(id);
    if (report_.scc_assignment[e.origin] != report_.scc_assignment[e.endpoint]) {
      cross_edge_coordinate_[id] = domains_.size();
      domains_.push_back(all);
    }
  }
}

BigInt Parametrization::size() const {
  BigInt out = 1;
  for (const auto& dom : domains_) out *= dom.size();
  return out;
}

EdgeLabeling Parametrization::flexible_edges(const std::vector<std::size_t>& positions, std::size_t offset) const {
  const FiniteGroup& g = *group_;
  Potential p{std::vector<Element>(graph_->vertex_count(), g.identity()), 0};
  for (std::size_t v = 1; v < graph_->vertex_count(); ++v) {
    const std::size_t i = offset + v - 1;
    p.values[v] = domains_[i][positions[i]];
  }
  return potential_to_edges(g, *graph_, p);
}

EdgeLabeling Parametrization::rigid_edges(const std::vector<std::size_t>& positions, std::size_t) const {
  const FiniteGroup& g = *group_;
  const Digraph& d = *graph_;
  auto coordinate = [&](std::size_t i) { return domains_[i][positions[i]]; };
  std::vector<Element> potential(d.vertex_count(), g.identity());
  for (std::size_t v = 0; v < d.vertex_count(); ++v) {
    if (vertex_coordinate_[v] != npos) potential[v] = coordinate(vertex_coordinate_[v]);
  }
  EdgeLabeling f{Mode::rigid, {}};
  f.values.reserve(d.edge_count());
  for (EdgeId id = 0; id < d.edge_count(); ++id) {
    const Edge& e = d.edge(id);
    f.values.push_back(cross_edge_coordinate_[id] != npos
                           ? coordinate(cross_edge_coordinate_[id])
                           : g.mul(g.inv(potential[e.origin]), potential[e.endpoint]));
  }
  return f;
}

Labeling Parametrization::build(const std::vector<std::size_t>& positions) const {
  if (positions.size() != domains_.size()) throw std::invalid_argument("wrong number of coordinates");
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (positions[i] >= domains_[i].size()) throw std::out_of_range("coordinate position out of range");
  }
  const FiniteGroup& g = *group_;
  const Digraph& d = *graph_;

  if (mode_ == Mode::flexible) {
    if (target_ == Target::edges) return flexible_edges(positions, 0);
    const Element a = domains_[0][positions[0]];
    EdgeLabeling f = flexible_edges(positions, 1);
    return report_.bipartite ? pair_to_full_bipartite(g, d, a, f) : pair_to_full_odd(g, d, a, f);
  }

  if (target_ == Target::edges) return rigid_edges(positions, 0);
  std::vector<Element> vertex_values(d.vertex_count());
  for (std::size_t v = 0; v < d.vertex_count(); ++v) vertex_values[v] = domains_[v][positions[v]];
  return pair_to_full_rigid(g, d, vertex_values, rigid_edges(positions, d.vertex_count()));
}

LabelingStream<EdgeLabeling> rigid_edge_enumerator(const FiniteGroup& g, const Digraph& d) {
  return LabelingStream<EdgeLabeling>(Parametrization(g, d, Target::edges, Mode::rigid),
                                      [](Labeling l) { return std::get<EdgeLabeling>(std::move(l)); });
}

LabelingStream<Labeling> enumerate_all(const FiniteGroup& g, const Digraph& d, Target target, Mode mode) {
  return LabelingStream<Labeling>(Parametrization(g, d, target, mode), [](Labeling l) { return l; });
}

SplitMix64::result_type SplitMix64::operator()() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("bound must be positive");
  // 2^64 mod bound; draws below it would bias the low residues.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = (*this)();
    if (r >= threshold) return r % bound;
  }
}

Labeling sample_uniform(const FiniteGroup& g, const Digraph& d, Target target, Mode mode, std::uint64_t seed) {
  const Parametrization param(g, d, target, mode);
  SplitMix64 rng(seed);
  std::vector<std::size_t> positions(param.coordinate_count());
  for (std::size_t i = 0; i < positions.size(); ++i) positions[i] = rng.below(param.domain(i).size());
  return param.build(positions);
}

}  // namespace balgraph

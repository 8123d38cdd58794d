#include "balgraph/digraph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <optional>
#include <queue>
#include <sstream>

namespace balgraph {

Digraph::Digraph(std::size_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)), out_(vertex_count), in_(vertex_count) {
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    if (e.origin >= vertex_count_ || e.endpoint >= vertex_count_) {
      throw std::invalid_argument("edge " + std::to_string(id) + " mentions a vertex outside 0.." +
                                  std::to_string(vertex_count_) + ")");
    }
    out_[e.origin].push_back(id);
    in_[e.endpoint].push_back(id);
  }
}

Digraph Digraph::with_reversed_edge(EdgeId id) const {
  auto edges = edges_;
  std::swap(edges.at(id).origin, edges.at(id).endpoint);
  return Digraph(vertex_count_, std::move(edges));
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<std::size_t> parse_index(std::string_view tok) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
  if (v > std::numeric_limits<Vertex>::max() / 2) return std::nullopt;
  return v;
}

}  // namespace

Digraph parse_graph(std::string_view text) {
  std::optional<std::size_t> declared;
  std::vector<Edge> edges;
  std::size_t max_index = 0;
  bool any_index = false;

  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.starts_with("n=")) {
      if (declared) throw GraphParseError(line_no, "duplicate 'n=' declaration");
      if (!edges.empty()) throw GraphParseError(line_no, "'n=' must precede all edges");
      auto n = parse_index(trim(line.substr(2)));
      if (!n) throw GraphParseError(line_no, "bad vertex count '" + std::string(line) + "'");
      declared = *n;
      continue;
    }

    std::istringstream tokens{std::string(line)};
    std::string a, b, extra;
    if (!(tokens >> a >> b) || (tokens >> extra)) {
      throw GraphParseError(line_no, "expected '<origin> <endpoint>', got '" + std::string(line) + "'");
    }
    auto origin = parse_index(a), endpoint = parse_index(b);
    if (!origin || !endpoint) throw GraphParseError(line_no, "bad vertex index in '" + std::string(line) + "'");
    if (declared && (*origin >= *declared || *endpoint >= *declared)) {
      throw GraphParseError(line_no, "vertex index >= declared n=" + std::to_string(*declared));
    }
    max_index = std::max({max_index, *origin, *endpoint});
    any_index = true;
    edges.push_back(Edge{static_cast<Vertex>(*origin), static_cast<Vertex>(*endpoint)});
  }

  const std::size_t n = declared ? *declared : (any_index ? max_index + 1 : 0);
  return Digraph(n, std::move(edges));
}

Digraph load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string format_graph(const Digraph& g) {
  std::ostringstream os;
  os << "n=" << g.vertex_count() << "\n";
  for (const Edge& e : g.edges()) os << e.origin << " " << e.endpoint << "\n";
  return os.str();
}

bool is_weakly_connected(const Digraph& g) {
  const std::size_t n = g.vertex_count();
  if (n <= 1) return true;
  std::vector<bool> seen(n, false);
  std::vector<Vertex> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    auto visit = [&](Vertex w) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    };
    for (EdgeId id : g.out_edges(v)) visit(g.edge(id).endpoint);
    for (EdgeId id : g.in_edges(v)) visit(g.edge(id).origin);
  }
  return reached == n;
}

bool is_underlying_bipartite(const Digraph& g) {
  for (const Edge& e : g.edges())
    if (e.is_loop()) return false;

  const std::size_t n = g.vertex_count();
  std::vector<int> color(n, -1);
  for (Vertex start = 0; start < n; ++start) {
    if (color[start] != -1) continue;
    color[start] = 0;
    std::queue<Vertex> queue;
    queue.push(start);
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop();
      auto check = [&](Vertex w) {
        if (color[w] == -1) {
          color[w] = 1 - color[v];
          queue.push(w);
          return true;
        }
        return color[w] != color[v];
      };
      for (EdgeId id : g.out_edges(v))
        if (!check(g.edge(id).endpoint)) return false;
      for (EdgeId id : g.in_edges(v))
        if (!check(g.edge(id).origin)) return false;
    }
  }
  return true;
}

std::vector<std::size_t> strongly_connected_components(const Digraph& g) {
  const std::size_t n = g.vertex_count();
  constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, unvisited), lowlink(n, 0), raw_component(n, unvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<Vertex> stack;
  std::size_t next_index = 0, component_count = 0;

  // Explicit call stack: (vertex, position in its out-edge list).
  std::vector<std::pair<Vertex, std::size_t>> frames;
  for (Vertex root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    frames.emplace_back(root, 0);
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      const auto& outs = g.out_edges(v);
      if (pos < outs.size()) {
        const Vertex w = g.edge(outs[pos++]).endpoint;
        if (index[w] == unvisited) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
        continue;
      }
      const Vertex done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const Vertex parent = frames.back().first;
        lowlink[parent] = std::min(lowlink[parent], lowlink[done]);
      }
      if (lowlink[done] == index[done]) {
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          raw_component[w] = component_count;
        } while (w != done);
        ++component_count;
      }
    }
  }

  // Renumber by smallest member so the result is independent of DFS order.
  std::vector<std::size_t> renumber(component_count, unvisited);
  std::size_t next = 0;
  std::vector<std::size_t> component(n);
  for (Vertex v = 0; v < n; ++v) {
    auto& id = renumber[raw_component[v]];
    if (id == unvisited) id = next++;
    component[v] = id;
  }
  return component;
}

StructureReport analyze(const Digraph& g) {
  StructureReport report;
  report.weakly_connected = is_weakly_connected(g);
  report.bipartite = is_underlying_bipartite(g);
  report.scc_assignment = strongly_connected_components(g);
  for (auto c : report.scc_assignment) report.scc_count = std::max(report.scc_count, c + 1);
  for (const Edge& e : g.edges()) {
    if (report.scc_assignment[e.origin] != report.scc_assignment[e.endpoint]) ++report.cross_scc_edges;
  }
  return report;
}

}  // namespace balgraph

#include "balgraph/labeling.hpp"

#include <stdexcept>
#include <string>

namespace balgraph {

std::string_view to_string(Mode m) { return m == Mode::flexible ? "flexible" : "rigid"; }
std::string_view to_string(Target t) { return t == Target::edges ? "edges" : "full"; }

Mode parse_mode(std::string_view s) {
  if (s == "flexible") return Mode::flexible;
  if (s == "rigid") return Mode::rigid;
  throw std::invalid_argument("mode must be 'flexible' or 'rigid', got '" + std::string(s) + "'");
}

Target parse_target(std::string_view s) {
  if (s == "edges") return Target::edges;
  if (s == "full") return Target::full;
  throw std::invalid_argument("target must be 'edges' or 'full', got '" + std::string(s) + "'");
}

std::vector<Element> to_slots(const Labeling& l) {
  if (const auto* f = std::get_if<EdgeLabeling>(&l)) return f->values;
  const auto& h = std::get<FullLabeling>(l);
  std::vector<Element> out(h.vertex_values);
  out.insert(out.end(), h.edge_values.begin(), h.edge_values.end());
  return out;
}

}  // namespace balgraph

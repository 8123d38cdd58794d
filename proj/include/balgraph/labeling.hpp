#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "balgraph/group.hpp"

namespace balgraph {

using BigInt = boost::multiprecision::cpp_int;

/// Flexible: an edge may be walked against its direction, contributing the
/// inverse of its value. Rigid: edges are walked forwards only.
enum class Mode { flexible, rigid };

/// What carries values: edges only, or vertices and edges.
enum class Target { edges, full };

std::string_view to_string(Mode m);
std::string_view to_string(Target t);
/// Throws std::invalid_argument on anything other than the canonical names.
Mode parse_mode(std::string_view s);
Target parse_target(std::string_view s);

/// Values on edges, indexed by edge id. In flexible mode the value of a
/// reversed edge is the inverse of the stored value and is never stored.
struct EdgeLabeling {
  Mode mode = Mode::flexible;
  std::vector<Element> values;

  friend bool operator==(const EdgeLabeling&, const EdgeLabeling&) = default;
};

/// Values on vertices and edges.
struct FullLabeling {
  Mode mode = Mode::flexible;
  std::vector<Element> vertex_values;
  std::vector<Element> edge_values;

  friend bool operator==(const FullLabeling&, const FullLabeling&) = default;
};

using Labeling = std::variant<EdgeLabeling, FullLabeling>;

/// Flattened slot vector: vertex values (full only) followed by edge values.
std::vector<Element> to_slots(const Labeling& l);

}  // namespace balgraph

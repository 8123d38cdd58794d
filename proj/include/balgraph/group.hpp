#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace balgraph {

/// Index of an element inside a particular FiniteGroup (0..order-1).
struct Element {
  std::uint32_t index = 0;

  constexpr Element() = default;
  constexpr explicit Element(std::uint32_t i) : index(i) {}

  friend constexpr auto operator<=>(Element, Element) = default;
};

std::ostream& operator<<(std::ostream& os, Element e);

class GroupSpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a Cayley table fails a group axiom. The message names the
/// axiom and the offending indices.
class GroupAxiomError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite group given by an explicit Cayley table, table[i][j] = i·j.
///
/// Immutable after construction. Built-in constructors put the identity at
/// index 0; tables loaded from files keep the user's numbering.
class FiniteGroup {
 public:
  /// Validates every axiom and throws GroupAxiomError on the first failure.
  /// `element_names` may be empty, in which case elements are named by index.
  FiniteGroup(std::string name, std::size_t order, std::vector<std::uint32_t> table,
              std::vector<std::string> element_names = {});

  std::size_t order() const { return order_; }
  Element identity() const { return identity_; }
  const std::string& name() const { return name_; }

  Element mul(Element a, Element b) const {
    return Element{table_[static_cast<std::size_t>(a.index) * order_ + b.index]};
  }
  Element inv(Element a) const { return inverse_[a.index]; }

  bool contains(Element a) const { return a.index < order_; }

  /// All a with a·a = identity (identity included), ascending.
  std::vector<Element> involutions() const;
  bool is_abelian() const;

  std::vector<Element> elements() const;
  const std::string& element_name(Element a) const { return names_[a.index]; }
  std::optional<Element> find_element(std::string_view name) const;

  /// Raw row-major table, order()*order() entries.
  const std::vector<std::uint32_t>& table() const { return table_; }

 private:
  struct Trusted {};
  FiniteGroup(Trusted, std::string name, std::size_t order, std::vector<std::uint32_t> table,
              std::vector<std::string> element_names);
  void derive_identity_and_inverses();

  friend FiniteGroup make_cyclic(std::size_t);
  friend FiniteGroup make_dihedral(std::size_t);
  friend FiniteGroup make_symmetric(std::size_t);
  friend FiniteGroup make_quaternion();
  friend FiniteGroup make_direct_product(const FiniteGroup&, const FiniteGroup&);

  std::string name_;
  std::size_t order_ = 0;
  std::vector<std::uint32_t> table_;
  std::vector<std::string> names_;
  Element identity_{};
  std::vector<Element> inverse_;
};

/// Checks closure, the Latin-square property, the identity, inverses and
/// associativity, in that order. Returns a description of the first
/// violation, or nullopt when the table defines a group.
std::optional<std::string> find_axiom_violation(std::size_t order,
                                                const std::vector<std::uint32_t>& table);

FiniteGroup make_cyclic(std::size_t n);
/// Symmetries of the regular n-gon, order 2n. Elements r^k then s·r^k.
FiniteGroup make_dihedral(std::size_t n);
/// Permutations of {1..n} in lexicographic order of one-line notation;
/// (a·b)(i) = a(b(i)).
FiniteGroup make_symmetric(std::size_t n);
FiniteGroup make_quaternion();
FiniteGroup make_direct_product(const FiniteGroup& left, const FiniteGroup& right);

/// Reads the Cayley-table text format: the order on the first line, then one
/// row per line. `#` starts a comment.
FiniteGroup load_cayley_table(std::istream& in, std::string name = "table");

/// Parses a group spec string:
///   cyclic:n | dihedral:n | symmetric:n | quaternion:8 |
///   product:<spec>,<spec> | table:<path>
FiniteGroup make_group(std::string_view spec);

inline constexpr std::size_t kMaxSymmetricDegree = 5;
inline constexpr std::size_t kMaxGroupOrder = 2048;

}  // namespace balgraph

#include "balgraph/group.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace balgraph {

std::ostream& operator<<(std::ostream& os, Element e) { return os << e.index; }

namespace {

std::string triple(std::size_t i, std::size_t j, std::size_t k) {
  std::ostringstream os;
  os << "(" << i << ", " << j << ", " << k << ")";
  return os.str();
}

}  // namespace

std::optional<std::string> find_axiom_violation(std::size_t order,
                                                const std::vector<std::uint32_t>& table) {
  if (order == 0) return "order must be positive";
  if (table.size() != order * order) {
    return "table has " + std::to_string(table.size()) + " entries, expected " +
           std::to_string(order * order);
  }
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t { return table[i * order + j]; };

  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = 0; j < order; ++j) {
      if (at(i, j) >= order) {
        return "closure: entry " + std::to_string(at(i, j)) + " at row " + std::to_string(i) +
               ", column " + std::to_string(j) + " is not an element";
      }
    }
  }

  std::vector<std::size_t> seen(order);
  for (std::size_t i = 0; i < order; ++i) {
    std::fill(seen.begin(), seen.end(), order);
    for (std::size_t j = 0; j < order; ++j) {
      if (seen[at(i, j)] != order) {
        return "latin square: row " + std::to_string(i) + " repeats " + std::to_string(at(i, j)) +
               " at columns " + std::to_string(seen[at(i, j)]) + " and " + std::to_string(j);
      }
      seen[at(i, j)] = j;
    }
  }
  for (std::size_t j = 0; j < order; ++j) {
    std::fill(seen.begin(), seen.end(), order);
    for (std::size_t i = 0; i < order; ++i) {
      if (seen[at(i, j)] != order) {
        return "latin square: column " + std::to_string(j) + " repeats " +
               std::to_string(at(i, j)) + " at rows " + std::to_string(seen[at(i, j)]) + " and " +
               std::to_string(i);
      }
      seen[at(i, j)] = i;
    }
  }

  std::optional<std::size_t> identity;
  for (std::size_t e = 0; e < order && !identity; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < order && ok; ++x) ok = at(e, x) == x && at(x, e) == x;
    if (ok) identity = e;
  }
  if (!identity) return "identity: no element e with e·x = x·e = x for all x";

  for (std::size_t i = 0; i < order; ++i) {
    bool found = false;
    for (std::size_t j = 0; j < order && !found; ++j) found = at(i, j) == *identity && at(j, i) == *identity;
    if (!found) return "inverse: element " + std::to_string(i) + " has no two-sided inverse";
  }

  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = 0; j < order; ++j) {
      for (std::size_t k = 0; k < order; ++k) {
        if (at(at(i, j), k) != at(i, at(j, k))) {
          return "associativity: (i·j)·k != i·(j·k) for (i, j, k) = " + triple(i, j, k);
        }
      }
    }
  }
  return std::nullopt;
}

FiniteGroup::FiniteGroup(std::string name, std::size_t order, std::vector<std::uint32_t> table,
                         std::vector<std::string> element_names)
    : name_(std::move(name)), order_(order), table_(std::move(table)), names_(std::move(element_names)) {
  if (auto violation = find_axiom_violation(order_, table_)) throw GroupAxiomError(*violation);
  derive_identity_and_inverses();
}

FiniteGroup::FiniteGroup(Trusted, std::string name, std::size_t order,
                         std::vector<std::uint32_t> table, std::vector<std::string> element_names)
    : name_(std::move(name)), order_(order), table_(std::move(table)), names_(std::move(element_names)) {
  derive_identity_and_inverses();
}

void FiniteGroup::derive_identity_and_inverses() {
  if (names_.empty()) {
    names_.reserve(order_);
    for (std::size_t i = 0; i < order_; ++i) names_.push_back(std::to_string(i));
  }
  if (names_.size() != order_) throw GroupAxiomError("element name count does not match order");

  for (std::uint32_t e = 0; e < order_; ++e) {
    if (table_[e * order_ + e] == e) {
      // In a group the only idempotent is the identity.
      identity_ = Element{e};
      break;
    }
  }
  inverse_.assign(order_, Element{});
  for (std::uint32_t i = 0; i < order_; ++i) {
    for (std::uint32_t j = 0; j < order_; ++j) {
      if (table_[i * order_ + j] == identity_.index) {
        inverse_[i] = Element{j};
        break;
      }
    }
  }
}

std::vector<Element> FiniteGroup::involutions() const {
  std::vector<Element> out;
  for (std::uint32_t i = 0; i < order_; ++i) {
    if (mul(Element{i}, Element{i}) == identity_) out.push_back(Element{i});
  }
  return out;
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t i = 0; i < order_; ++i)
    for (std::size_t j = i + 1; j < order_; ++j)
      if (table_[i * order_ + j] != table_[j * order_ + i]) return false;
  return true;
}

std::vector<Element> FiniteGroup::elements() const {
  std::vector<Element> out(order_);
  for (std::uint32_t i = 0; i < order_; ++i) out[i] = Element{i};
  return out;
}

std::optional<Element> FiniteGroup::find_element(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return Element{static_cast<std::uint32_t>(it - names_.begin())};
}

FiniteGroup make_cyclic(std::size_t n) {
  if (n < 1 || n > kMaxGroupOrder) throw GroupSpecError("cyclic:n requires 1 <= n <= " + std::to_string(kMaxGroupOrder));
  std::vector<std::uint32_t> table(n * n);
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) {
    names[i] = std::to_string(i);
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = static_cast<std::uint32_t>((i + j) % n);
  }
  return FiniteGroup(FiniteGroup::Trusted{}, "cyclic:" + std::to_string(n), n, std::move(table), std::move(names));
}

FiniteGroup make_dihedral(std::size_t n) {
  if (n < 3 || 2 * n > kMaxGroupOrder) throw GroupSpecError("dihedral:n requires 3 <= n <= " + std::to_string(kMaxGroupOrder / 2));
  const std::size_t order = 2 * n;
  // Index k is r^k, index n+k is s·r^k. (s^f r^a)(s^g r^b) = s^(f+g) r^((-1)^g a + b).
  auto index = [n](std::size_t flip, std::size_t rot) { return static_cast<std::uint32_t>(flip * n + rot); };
  std::vector<std::uint32_t> table(order * order);
  std::vector<std::string> names(order);
  for (std::size_t x = 0; x < order; ++x) {
    const std::size_t f = x / n, a = x % n;
    names[x] = (f ? "sr" : "r") + std::to_string(a);
    for (std::size_t y = 0; y < order; ++y) {
      const std::size_t g = y / n, b = y % n;
      const std::size_t twisted = g ? (n - a) % n : a;
      table[x * order + y] = index((f + g) % 2, (twisted + b) % n);
    }
  }
  return FiniteGroup(FiniteGroup::Trusted{}, "dihedral:" + std::to_string(n), order, std::move(table), std::move(names));
}

FiniteGroup make_symmetric(std::size_t n) {
  if (n < 1 || n > kMaxSymmetricDegree) throw GroupSpecError("symmetric:n requires 1 <= n <= " + std::to_string(kMaxSymmetricDegree));
  std::vector<std::vector<std::uint8_t>> perms;
  std::vector<std::uint8_t> p(n);
  std::iota(p.begin(), p.end(), std::uint8_t{0});
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  const std::size_t order = perms.size();
  std::vector<std::uint32_t> table(order * order);
  std::vector<std::string> names(order);
  std::vector<std::uint8_t> composed(n);
  for (std::size_t i = 0; i < order; ++i) {
    for (auto v : perms[i]) names[i] += static_cast<char>('1' + v);
    for (std::size_t j = 0; j < order; ++j) {
      for (std::size_t k = 0; k < n; ++k) composed[k] = perms[i][perms[j][k]];
      auto it = std::lower_bound(perms.begin(), perms.end(), composed);
      table[i * order + j] = static_cast<std::uint32_t>(it - perms.begin());
    }
  }
  return FiniteGroup(FiniteGroup::Trusted{}, "symmetric:" + std::to_string(n), order, std::move(table), std::move(names));
}

FiniteGroup make_quaternion() {
  // Index 2u + s encodes (-1)^s · unit[u], unit = 1, i, j, k.
  // unit_mul[u][v] = (sign, unit) of unit[u]·unit[v].
  static constexpr int unit_sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  static constexpr int unit_prod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr const char* unit_name[4] = {"1", "i", "j", "k"};
  std::vector<std::uint32_t> table(64);
  std::vector<std::string> names(8);
  for (int x = 0; x < 8; ++x) {
    names[x] = (x % 2 ? "-" : "") + std::string(unit_name[x / 2]);
    for (int y = 0; y < 8; ++y) {
      const int u = x / 2, v = y / 2;
      const int sign = (x % 2 + y % 2 + unit_sign[u][v]) % 2;
      table[x * 8 + y] = static_cast<std::uint32_t>(2 * unit_prod[u][v] + sign);
    }
  }
  return FiniteGroup(FiniteGroup::Trusted{}, "quaternion:8", 8, std::move(table), std::move(names));
}

FiniteGroup make_direct_product(const FiniteGroup& left, const FiniteGroup& right) {
  const std::size_t m = right.order();
  const std::size_t order = left.order() * m;
  if (order > kMaxGroupOrder) throw GroupSpecError("product order exceeds " + std::to_string(kMaxGroupOrder));

  // Relabel each factor so that its identity sits at index 0; the pair
  // (0, 0) is then index 0 of the product.
  auto relabel = [](const FiniteGroup& g) {
    std::vector<std::uint32_t> order_to_elem(g.order());
    std::iota(order_to_elem.begin(), order_to_elem.end(), 0u);
    std::swap(order_to_elem[0], order_to_elem[g.identity().index]);
    return order_to_elem;
  };
  const auto lmap = relabel(left), rmap = relabel(right);
  std::vector<std::uint32_t> lpos(left.order()), rpos(m);
  for (std::uint32_t i = 0; i < lmap.size(); ++i) lpos[lmap[i]] = i;
  for (std::uint32_t i = 0; i < rmap.size(); ++i) rpos[rmap[i]] = i;

  std::vector<std::uint32_t> table(order * order);
  std::vector<std::string> names(order);
  for (std::size_t x = 0; x < order; ++x) {
    const Element xl{lmap[x / m]}, xr{rmap[x % m]};
    names[x] = "(" + left.element_name(xl) + "," + right.element_name(xr) + ")";
    for (std::size_t y = 0; y < order; ++y) {
      const Element yl{lmap[y / m]}, yr{rmap[y % m]};
      table[x * order + y] = static_cast<std::uint32_t>(lpos[left.mul(xl, yl).index] * m + rpos[right.mul(xr, yr).index]);
    }
  }
  return FiniteGroup(FiniteGroup::Trusted{}, "product:" + left.name() + "," + right.name(), order,
                     std::move(table), std::move(names));
}

FiniteGroup load_cayley_table(std::istream& in, std::string name) {
  std::vector<long long> numbers;
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> order;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string tok;
    std::vector<long long> row;
    while (tokens >> tok) {
      long long v = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || ptr != tok.data() + tok.size() || v < 0) {
        throw GroupSpecError("cayley table line " + std::to_string(line_no) + ": bad integer '" + tok + "'");
      }
      row.push_back(v);
    }
    if (row.empty()) continue;
    if (!order) {
      if (row.size() != 1 || row[0] < 1 || static_cast<std::size_t>(row[0]) > kMaxGroupOrder) {
        throw GroupSpecError("cayley table line " + std::to_string(line_no) +
                             ": expected the group order (1.." + std::to_string(kMaxGroupOrder) + ")");
      }
      order = static_cast<std::size_t>(row[0]);
      continue;
    }
    if (row.size() != *order) {
      throw GroupSpecError("cayley table line " + std::to_string(line_no) + ": expected " +
                           std::to_string(*order) + " entries, got " + std::to_string(row.size()));
    }
    numbers.insert(numbers.end(), row.begin(), row.end());
  }
  if (!order) throw GroupSpecError("cayley table: missing order line");
  if (numbers.size() != *order * *order) {
    throw GroupSpecError("cayley table: expected " + std::to_string(*order) + " rows, got " +
                         std::to_string(numbers.size() / *order));
  }
  std::vector<std::uint32_t> table(numbers.size());
  for (std::size_t i = 0; i < numbers.size(); ++i) {
    if (static_cast<std::size_t>(numbers[i]) >= *order) {
      throw GroupAxiomError("closure: entry " + std::to_string(numbers[i]) + " at row " +
                            std::to_string(i / *order) + ", column " + std::to_string(i % *order) +
                            " is not an element");
    }
    table[i] = static_cast<std::uint32_t>(numbers[i]);
  }
  return FiniteGroup(std::move(name), *order, std::move(table));
}

namespace {

std::size_t parse_count(std::string_view& rest, std::string_view what) {
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), n);
  if (ec != std::errc{} || ptr == rest.data()) {
    throw GroupSpecError("expected an integer after '" + std::string(what) + ":'");
  }
  rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
  return n;
}

// Consumes one spec from the front of `rest`.
FiniteGroup parse_spec(std::string_view& rest) {
  const auto colon = rest.find(':');
  if (colon == std::string_view::npos) throw GroupSpecError("malformed group spec '" + std::string(rest) + "'");
  const std::string_view kind = rest.substr(0, colon);
  rest.remove_prefix(colon + 1);

  if (kind == "cyclic") return make_cyclic(parse_count(rest, kind));
  if (kind == "dihedral") return make_dihedral(parse_count(rest, kind));
  if (kind == "symmetric") return make_symmetric(parse_count(rest, kind));
  if (kind == "quaternion") {
    if (parse_count(rest, kind) != 8) throw GroupSpecError("only quaternion:8 is supported");
    return make_quaternion();
  }
  if (kind == "product") {
    FiniteGroup left = parse_spec(rest);
    if (rest.empty() || rest.front() != ',') throw GroupSpecError("product: expected ',' between factors");
    rest.remove_prefix(1);
    FiniteGroup right = parse_spec(rest);
    return make_direct_product(left, right);
  }
  if (kind == "table") {
    const std::string path(rest);
    rest = {};
    if (path.empty()) throw GroupSpecError("table: missing path");
    std::ifstream in(path);
    if (!in) throw GroupSpecError("table: cannot open '" + path + "'");
    return load_cayley_table(in, "table:" + path);
  }
  throw GroupSpecError("unknown group kind '" + std::string(kind) + "'");
}

}  // namespace

FiniteGroup make_group(std::string_view spec) {
  std::string_view rest = spec;
  FiniteGroup g = parse_spec(rest);
  if (!rest.empty()) throw GroupSpecError("trailing characters in group spec: '" + std::string(rest) + "'");
  return g;
}

}  // namespace balgraph

#pragma once

#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace qstab {

/// Element of a free commutative monoid on named generators: a finitely
/// supported map generator -> nonnegative coefficient. Zero coefficients are
/// never stored, so the empty map is the identity and equality is structural.
///
/// The monoid order p <= q (q = p + r for some r) is coordinatewise domination.
class MonoidElement {
 public:
  MonoidElement() = default;

  static MonoidElement generator(const std::string& name, long coefficient = 1) {
    MonoidElement m;
    m.add(name, coefficient);
    return m;
  }

  const std::map<std::string, long>& coefficients() const { return coefficients_; }
  bool is_zero() const { return coefficients_.empty(); }

  long coefficient(const std::string& name) const {
    auto it = coefficients_.find(name);
    return it == coefficients_.end() ? 0 : it->second;
  }

  void add(const std::string& name, long coefficient) {
    if (coefficient < 0) throw ArgumentError("negative monoid coefficient for " + name);
    if (coefficient == 0) return;
    coefficients_[name] += coefficient;
  }

  MonoidElement& operator+=(const MonoidElement& other) {
    for (const auto& [g, c] : other.coefficients_) coefficients_[g] += c;
    return *this;
  }
  friend MonoidElement operator+(MonoidElement a, const MonoidElement& b) { return a += b; }

  MonoidElement scaled(long k) const {
    if (k < 0) throw ArgumentError("negative scalar in monoid");
    if (k == 0) return {};
    MonoidElement out = *this;
    for (auto& [g, c] : out.coefficients_) c *= k;
    return out;
  }

  std::string to_string() const {
    if (coefficients_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [g, c] : coefficients_) {
      if (!first) out << '+';
      first = false;
      if (c != 1) out << c << '*';
      out << g;
    }
    return out.str();
  }

  bool operator==(const MonoidElement&) const = default;
  /// Lexicographic on the coefficient map; a total order for containers, not the monoid order.
  auto operator<=>(const MonoidElement&) const = default;

 private:
  std::map<std::string, long> coefficients_;
};

inline std::ostream& operator<<(std::ostream& os, const MonoidElement& m) { return os << m.to_string(); }

/// Monoid order: a <= b iff b - a has nonnegative coordinates.
inline bool monoid_leq(const MonoidElement& a, const MonoidElement& b) {
  for (const auto& [g, c] : a.coefficients())
    if (b.coefficient(g) < c) return false;
  return true;
}

inline bool monoid_less(const MonoidElement& a, const MonoidElement& b) { return a != b && monoid_leq(a, b); }

inline bool comparable(const MonoidElement& a, const MonoidElement& b) { return monoid_leq(a, b) || monoid_leq(b, a); }

/// b - a; requires a <= b.
inline MonoidElement monoid_difference(const MonoidElement& b, const MonoidElement& a) {
  if (!monoid_leq(a, b)) throw ArgumentError("monoid difference " + b.to_string() + " - " + a.to_string() + " is not in the monoid");
  MonoidElement out;
  for (const auto& [g, c] : b.coefficients()) out.add(g, c - a.coefficient(g));
  return out;
}

/// Monoid homomorphism between free monoids, given by generator images.
/// Source generators without an entry map to zero.
struct MonoidMap {
  std::vector<std::string> target_generators;
  std::map<std::string, MonoidElement> images;

  MonoidElement operator()(const MonoidElement& m) const {
    MonoidElement out;
    for (const auto& [g, c] : m.coefficients()) {
      auto it = images.find(g);
      if (it != images.end()) out += it->second.scaled(c);
    }
    return out;
  }

  /// (*this) after `first`: x -> (*this)(first(x)).
  MonoidMap after(const MonoidMap& first) const {
    MonoidMap out;
    out.target_generators = target_generators;
    for (const auto& [g, image] : first.images) {
      auto composed = (*this)(image);
      if (!composed.is_zero()) out.images[g] = composed;
    }
    return out;
  }

  static MonoidMap identity(const std::vector<std::string>& generators) {
    MonoidMap out;
    out.target_generators = generators;
    for (const auto& g : generators) out.images[g] = MonoidElement::generator(g);
    return out;
  }

  /// Quotient killing `killed` and fixing every other generator.
  static MonoidMap face(const std::vector<std::string>& generators, const std::vector<std::string>& killed) {
    MonoidMap out;
    for (const auto& g : generators) {
      bool dead = false;
      for (const auto& k : killed) dead = dead || k == g;
      if (dead) continue;
      out.target_generators.push_back(g);
      out.images[g] = MonoidElement::generator(g);
    }
    return out;
  }
};

}  // namespace qstab

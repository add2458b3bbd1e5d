#pragma once

// Coevents: grade-2 additive truth functions, represented as polynomials of
// degree <= 2 in the containment maps w_i*.
//
// Coefficient layout (the basis order shared with projection matrices):
//   index i-1             a_i   for w_i*,          i = 1..n
//   index n + pair(i,j)   b_ij  for w_i* w_j*,     i < j, lexicographic
// so for n = 3 the order is w1*, w2*, w3*, w1*w2*, w1*w3*, w2*w3*.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "anhom/error.hpp"
#include "anhom/event.hpp"
#include "anhom/gf2.hpp"
#include "anhom/truth_table.hpp"

namespace anhom {

namespace coefficient {

inline std::size_t linear(std::size_t /*n*/, std::size_t i) { return i - 1; }

/// Offset of b_ij among the doubletons, 1-based i < j.
inline std::size_t pair(std::size_t n, std::size_t i, std::size_t j) {
  const std::size_t a = i - 1;
  const std::size_t b = j - 1;
  return a * (2 * n - a - 1) / 2 + (b - a - 1);
}

inline std::size_t quadratic(std::size_t n, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return n + pair(n, i, j);
}

/// Pairs (i,j), i<j, in coefficient order.
inline std::vector<std::pair<std::size_t, std::size_t>> pairs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(n * (n - 1) / 2);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) out.emplace_back(i, j);
  }
  return out;
}

}  // namespace coefficient

class Coevent {
 public:
  /// The zero coevent.
  explicit Coevent(OutcomeSpace space)
      : space_(space), coeffs_(space.coevent_dimension()) {}

  static Coevent from_coefficients(OutcomeSpace space, Gf2Vector coeffs) {
    if (coeffs.size() != space.coevent_dimension()) {
      throw ShapeError("coevent needs n(n+1)/2 coefficients");
    }
    Coevent c(space);
    c.coeffs_ = std::move(coeffs);
    return c;
  }

  /// w_i*.
  static Coevent containment(OutcomeSpace space, std::size_t i) {
    space.check_outcome(i);
    Coevent c(space);
    c.coeffs_.set(coefficient::linear(space.size(), i), true);
    return c;
  }

  /// w_i* w_j*; for i == j this is w_i* since w_i* w_i* = w_i*.
  static Coevent product(OutcomeSpace space, std::size_t i, std::size_t j) {
    if (i == j) return containment(space, i);
    space.check_outcome(i);
    space.check_outcome(j);
    Coevent c(space);
    c.coeffs_.set(coefficient::quadratic(space.size(), i, j), true);
    return c;
  }

  OutcomeSpace space() const noexcept { return space_; }
  std::size_t dimension() const noexcept { return coeffs_.size(); }
  const Gf2Vector& coefficients() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.is_zero(); }

  bool linear(std::size_t i) const {
    space_.check_outcome(i);
    return coeffs_.get(coefficient::linear(space_.size(), i));
  }
  bool quadratic(std::size_t i, std::size_t j) const {
    space_.check_outcome(i);
    space_.check_outcome(j);
    if (i == j) throw ArgumentError("quadratic coefficient needs i != j");
    return coeffs_.get(coefficient::quadratic(space_.size(), i, j));
  }

  Coevent& operator+=(const Coevent& other) {
    if (!(other.space_ == space_)) throw ShapeError("coevents over different spaces");
    coeffs_ ^= other.coeffs_;
    return *this;
  }
  friend Coevent operator+(Coevent lhs, const Coevent& rhs) {
    lhs += rhs;
    return lhs;
  }

  friend bool operator==(const Coevent& a, const Coevent& b) noexcept {
    return a.space_ == b.space_ && a.coeffs_ == b.coeffs_;
  }

 private:
  OutcomeSpace space_;
  Gf2Vector coeffs_;
};

inline Coevent add(const Coevent& phi, const Coevent& psi) { return phi + psi; }

/// Linear functional phi -> phi(A) as a coefficient mask: a_i for i in A and
/// b_ij for i<j both in A.
inline Gf2Vector evaluation_row(const Event& a) {
  const OutcomeSpace space = a.space();
  const std::size_t n = space.size();
  Gf2Vector row(space.coevent_dimension());
  const auto members = a.outcomes();
  for (std::size_t x = 0; x < members.size(); ++x) {
    row.set(coefficient::linear(n, members[x]), true);
    for (std::size_t y = x + 1; y < members.size(); ++y) {
      row.set(coefficient::quadratic(n, members[x], members[y]), true);
    }
  }
  return row;
}

inline bool evaluate(const Coevent& phi, const Event& a) {
  if (!(phi.space() == a.space())) throw ArgumentError("event from another space");
  return evaluation_row(a).dot(phi.coefficients());
}

/// The unique coevent with the given singleton and doubleton values:
/// a_i = s_i and b_ij = d_ij + s_i + s_j.
inline Coevent interpolate(OutcomeSpace space, const Gf2Vector& singletons,
                           const Gf2Vector& doubletons) {
  const std::size_t n = space.size();
  if (singletons.size() != n || doubletons.size() != space.pair_count()) {
    throw ShapeError("interpolate needs n singleton and n(n-1)/2 doubleton values");
  }
  Gf2Vector coeffs(space.coevent_dimension());
  for (std::size_t i = 1; i <= n; ++i) {
    coeffs.set(coefficient::linear(n, i), singletons.get(i - 1));
  }
  for (const auto& [i, j] : coefficient::pairs(n)) {
    const bool b = doubletons.get(coefficient::pair(n, i, j)) ^
                   singletons.get(i - 1) ^ singletons.get(j - 1);
    coeffs.set(coefficient::quadratic(n, i, j), b);
  }
  return Coevent::from_coefficients(space, std::move(coeffs));
}

inline TruthTable to_table(const Coevent& phi) {
  const OutcomeSpace space = phi.space();
  const std::size_t n = space.size();
  // neighbours[i]: outcomes j with b_ij = 1, as a mask.
  std::vector<EventMask> neighbours(n, 0);
  for (const auto& [i, j] : coefficient::pairs(n)) {
    if (phi.quadratic(i, j)) {
      neighbours[i - 1] |= EventMask{1} << (j - 1);
      neighbours[j - 1] |= EventMask{1} << (i - 1);
    }
  }
  // Peel the lowest outcome i off each mask:
  // phi(A) = phi(A - {i}) + a_i + sum over j in A - {i} of b_ij.
  Gf2Vector values(space.event_count());
  for (std::size_t k = 1; k < space.event_count(); ++k) {
    const auto mask = static_cast<EventMask>(k);
    const auto i = static_cast<std::size_t>(std::countr_zero(mask));
    const EventMask rest = mask & (mask - 1);
    const bool v = values.get(rest) ^ phi.linear(i + 1) ^
                   (std::popcount(neighbours[i] & rest) & 1);
    values.set(k, v);
  }
  return TruthTable::from_bits(space, std::move(values));
}

/// The table is not a polynomial of degree <= 2.
class NotACoeventError : public Error {
 public:
  explicit NotACoeventError(const Event& witness)
      : Error("not a coevent: degree-2 reconstruction disagrees on " +
              format_event(witness)),
        witness_(witness) {}

  const Event& witness() const noexcept { return witness_; }

 private:
  Event witness_;
};

/// Reads the coefficients off the singleton and doubleton values, then
/// checks the reconstruction against every event.
inline Coevent from_table(const TruthTable& t) {
  const OutcomeSpace space = t.space();
  const std::size_t n = space.size();
  Gf2Vector singles(n);
  Gf2Vector doubles(space.pair_count());
  for (std::size_t i = 1; i <= n; ++i) {
    singles.set(i - 1, t(EventMask{1} << (i - 1)));
  }
  for (const auto& [i, j] : coefficient::pairs(n)) {
    doubles.set(coefficient::pair(n, i, j),
                t((EventMask{1} << (i - 1)) | (EventMask{1} << (j - 1))));
  }
  Coevent phi = interpolate(space, singles, doubles);
  const TruthTable rebuilt = to_table(phi);
  for (std::size_t k = 1; k < space.event_count(); ++k) {
    const auto mask = static_cast<EventMask>(k);
    if (rebuilt(mask) != t(mask)) throw NotACoeventError(Event(space, mask));
  }
  return phi;
}

/// Checks phi(A_1 u ... u A_m) = sum_{i<j} phi(A_i u A_j)
///                              + (m mod 2) sum_i phi(A_i)
/// for one family of mutually disjoint parts. `value` maps an event mask to
/// the function value, so raw tables can be checked too.
template <class Fn>
bool verify_partition_identity_with(OutcomeSpace space, Fn&& value, std::span<const Event> parts) {
  const std::size_t m = parts.size();
  if (m < 2 || m > space.size()) {
    throw ArgumentError("partition identity needs 2 <= m <= n parts");
  }
  EventMask all = 0;
  for (const auto& p : parts) {
    if (!(p.space() == space)) throw ArgumentError("part from another space");
    if (all & p.mask()) throw DisjointnessError("parts must be mutually disjoint");
    all |= p.mask();
  }
  bool rhs = false;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      rhs ^= value(parts[i].mask() | parts[j].mask());
    }
  }
  if (m % 2 == 1) {
    for (const auto& p : parts) rhs ^= value(p.mask());
  }
  return value(all) == rhs;
}

inline bool verify_partition_identity(const Coevent& phi, std::span<const Event> parts) {
  return verify_partition_identity_with(
      phi.space(),
      [&](EventMask m) { return evaluate(phi, Event(phi.space(), m)); }, parts);
}

inline bool verify_partition_identity(const TruthTable& t, std::span<const Event> parts) {
  return verify_partition_identity_with(t.space(), [&](EventMask m) { return t(m); }, parts);
}

/// The singleton-part instance: phi({a_1..a_m}) from singletons and
/// doubletons.
inline bool verify_pair_expansion(const TruthTable& t, std::span<const std::size_t> outcomes) {
  std::vector<Event> parts;
  parts.reserve(outcomes.size());
  for (auto o : outcomes) parts.push_back(Event::singleton(t.space(), o));
  return verify_partition_identity(t, parts);
}

/// lambda : 2^(Omega x Omega) -> Z2 with lambda(E) = parity of the number of
/// generator pairs in E. Grade-1 additive by construction.
class PairAdditiveMap {
 public:
  explicit PairAdditiveMap(OutcomeSpace space) : space_(space) {}

  OutcomeSpace space() const noexcept { return space_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& generators() const noexcept {
    return generators_;
  }

  void add_generator(std::size_t i, std::size_t j) {
    space_.check_outcome(i);
    space_.check_outcome(j);
    generators_.emplace_back(i, j);
  }

  bool operator()(const ProductEvent& e) const {
    bool acc = false;
    for (const auto& [i, j] : generators_) acc ^= e.contains(i, j);
    return acc;
  }

  /// The map as a truth table over the n^2-point space whose outcome
  /// (i-1)*n + j stands for the pair (i,j). Needs n <= 4.
  TruthTable to_table() const {
    const std::size_t n = space_.size();
    if (n * n > kMaxOutcomes) throw CapacityError("product table needs n <= 4");
    const OutcomeSpace product(n * n);
    EventMask gens = 0;
    for (const auto& [i, j] : generators_) {
      gens ^= EventMask{1} << ((i - 1) * n + (j - 1));
    }
    // Repeated generators cancel, so parity of |E & gens| is lambda(E).
    return TruthTable::from_function(
        product, [gens](EventMask m) { return std::popcount(m & gens) & 1; });
  }

 private:
  OutcomeSpace space_;
  std::vector<std::pair<std::size_t, std::size_t>> generators_;
};

/// lambda = sum over a_i = 1 of (w_i x w_i)* + sum over b_ij = 1 of
/// (w_i x w_j)*, so that lambda(A x A) = phi(A).
inline PairAdditiveMap lift_to_product(const Coevent& phi) {
  const std::size_t n = phi.space().size();
  PairAdditiveMap lambda(phi.space());
  for (std::size_t i = 1; i <= n; ++i) {
    if (phi.linear(i)) lambda.add_generator(i, i);
  }
  for (const auto& [i, j] : coefficient::pairs(n)) {
    if (phi.quadratic(i, j)) lambda.add_generator(i, j);
  }
  return lambda;
}

/// Monomials joined by " + " in coefficient order, e.g.
/// "w3* + w1*w3* + w2*w3*"; "0" for the zero coevent.
inline std::string format_coevent(const Coevent& phi) {
  const std::size_t n = phi.space().size();
  std::string out;
  auto append = [&](const std::string& term) {
    if (!out.empty()) out += " + ";
    out += term;
  };
  for (std::size_t i = 1; i <= n; ++i) {
    if (phi.linear(i)) append("w" + std::to_string(i) + "*");
  }
  for (const auto& [i, j] : coefficient::pairs(n)) {
    if (phi.quadratic(i, j)) {
      append("w" + std::to_string(i) + "*w" + std::to_string(j) + "*");
    }
  }
  return out.empty() ? "0" : out;
}

/// Accepts monomials in any order with arbitrary whitespace. Repeated
/// monomials cancel; w_i* w_i* reduces to w_i*.
inline Coevent parse_coevent(OutcomeSpace space, std::string_view text,
                             std::size_t line = 1, std::size_t column0 = 0) {
  detail::Scanner in(text, line, column0);
  Coevent phi(space);
  if (in.at_end()) in.fail("empty coevent");
  do {
    if (in.accept('0')) continue;
    std::vector<std::size_t> factors;
    while (in.peek() == 'w') {
      in.expect('w');
      const std::size_t col = in.column();
      const std::size_t o = in.number();
      if (o < 1 || o > space.size()) {
        throw IndexError("outcome index " + std::to_string(o) + " outside 1.." +
                         std::to_string(space.size()) + " at " +
                         std::to_string(in.line()) + ":" + std::to_string(col));
      }
      in.expect('*');
      if (std::find(factors.begin(), factors.end(), o) == factors.end()) {
        factors.push_back(o);
      }
    }
    if (factors.empty()) in.fail("expected a monomial such as w1* or w1*w2*");
    if (factors.size() > 2) in.fail("monomial of degree > 2 is not a coevent");
    phi += factors.size() == 1 ? Coevent::containment(space, factors[0])
                               : Coevent::product(space, factors[0], factors[1]);
  } while (in.accept('+'));
  if (!in.at_end()) in.fail("unexpected character in coevent");
  return phi;
}

}  // namespace anhom

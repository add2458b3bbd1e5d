#pragma once

// Arbitrary 1-0 functions on the events of a finite outcome space, their
// classification, interference calculus and the exhaustive enumeration used
// as a brute-force oracle.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "anhom/error.hpp"
#include "anhom/event.hpp"
#include "anhom/gf2.hpp"

namespace anhom {

/// phi : 2^Omega -> Z2 stored as a 2^n-bit table indexed by event mask.
/// phi(empty) = 0 always.
class TruthTable {
 public:
  explicit TruthTable(OutcomeSpace space)
      : space_(space), values_(space.event_count()) {}

  static TruthTable from_bits(OutcomeSpace space, Gf2Vector values) {
    if (values.size() != space.event_count()) {
      throw ShapeError("truth table needs 2^n entries");
    }
    if (values.get(0)) throw ArgumentError("truth function must vanish on {}");
    TruthTable t(space);
    t.values_ = std::move(values);
    return t;
  }

  /// Table whose entry for mask k is bit k of `bits`; requires 2^n <= 64.
  static TruthTable from_integer(OutcomeSpace space, std::uint64_t bits) {
    if (space.event_count() > 64) {
      throw CapacityError("from_integer needs n <= 6");
    }
    TruthTable t(space);
    for (std::size_t k = 0; k < space.event_count(); ++k) {
      if ((bits >> k) & 1u) t.set(static_cast<EventMask>(k), true);
    }
    return t;
  }

  template <class Fn>
  static TruthTable from_function(OutcomeSpace space, Fn&& fn) {
    TruthTable t(space);
    for (std::size_t k = 1; k < space.event_count(); ++k) {
      if (fn(static_cast<EventMask>(k))) t.values_.set(k, true);
    }
    return t;
  }

  /// The containment map w_i*: 1 exactly on events containing outcome i.
  static TruthTable containment(OutcomeSpace space, std::size_t outcome) {
    space.check_outcome(outcome);
    const EventMask bit = EventMask{1} << (outcome - 1);
    return from_function(space, [bit](EventMask m) { return (m & bit) != 0; });
  }

  static TruthTable of_true_events(OutcomeSpace space,
                                   const std::vector<Event>& events) {
    TruthTable t(space);
    for (const auto& e : events) {
      if (!(e.space() == space)) throw ArgumentError("event from another space");
      t.set(e.mask(), true);
    }
    return t;
  }

  OutcomeSpace space() const noexcept { return space_; }
  const Gf2Vector& values() const noexcept { return values_; }

  bool operator()(EventMask mask) const noexcept { return values_.get(mask); }
  bool operator()(const Event& e) const noexcept { return values_.get(e.mask()); }

  void set(EventMask mask, bool value) {
    if (mask == 0 && value) throw ArgumentError("truth function must vanish on {}");
    values_.set(mask, value);
  }

  bool is_zero() const noexcept { return values_.is_zero(); }

  /// Events with value 1, ascending by mask.
  std::vector<Event> true_events() const {
    std::vector<Event> out;
    for (std::size_t k = 1; k < space_.event_count(); ++k) {
      if (values_.get(k)) out.emplace_back(space_, static_cast<EventMask>(k));
    }
    return out;
  }

  TruthTable& operator+=(const TruthTable& other) {
    if (!(other.space_ == space_)) throw ShapeError("tables over different spaces");
    values_ ^= other.values_;
    return *this;
  }
  friend TruthTable operator+(TruthTable lhs, const TruthTable& rhs) {
    lhs += rhs;
    return lhs;
  }
  /// Pointwise product.
  friend TruthTable operator*(const TruthTable& lhs, const TruthTable& rhs) {
    if (!(lhs.space_ == rhs.space_)) throw ShapeError("tables over different spaces");
    return from_function(lhs.space_,
                         [&](EventMask m) { return lhs(m) && rhs(m); });
  }

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  OutcomeSpace space_;
  Gf2Vector values_;
};

/// `[{1},{1,2}]`: the events with value 1, ascending by mask.
inline std::string format_table(const TruthTable& t) {
  std::string out = "[";
  bool first = true;
  for (const auto& e : t.true_events()) {
    if (!first) out.push_back(',');
    out += format_event(e);
    first = false;
  }
  out.push_back(']');
  return out;
}

inline TruthTable parse_table(OutcomeSpace space, std::string_view text) {
  detail::Scanner in(text);
  in.expect('[');
  TruthTable t(space);
  if (!in.accept(']')) {
    do {
      const std::size_t col = in.column();
      const Event e = detail::scan_event(in, space);
      if (e.is_empty()) throw ParseError("{} cannot have value 1", 1, col);
      t.set(e.mask(), true);
    } while (in.accept(','));
    in.expect(']');
  }
  if (!in.at_end()) in.fail("trailing characters after table");
  return t;
}

struct ClassificationReport {
  bool unital = false;
  bool grade1_additive = false;
  bool multiplicative = false;
  bool grade2_additive = false;
  bool homomorphism = false;
  bool two_point_condition = false;

  friend bool operator==(const ClassificationReport&,
                         const ClassificationReport&) = default;
};

namespace detail {

/// Visits every subset of `set` including the empty one.
template <class Fn>
void for_each_subset(EventMask set, Fn&& fn) {
  EventMask sub = set;
  while (true) {
    fn(sub);
    if (sub == 0) break;
    sub = (sub - 1) & set;
  }
}

}  // namespace detail

/// phi(A u B) = phi(A) + phi(B) over disjoint pairs; equivalent to full
/// additivity phi(A+B) = phi(A) + phi(B).
inline bool is_grade1_additive(const TruthTable& t) {
  const EventMask full = t.space().full_mask();
  for (std::size_t a = 0; a < t.space().event_count(); ++a) {
    const auto am = static_cast<EventMask>(a);
    bool ok = true;
    detail::for_each_subset(full & ~am, [&](EventMask b) {
      if (ok && t(am | b) != (t(am) ^ t(b))) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

inline bool is_multiplicative(const TruthTable& t) {
  const std::size_t count = t.space().event_count();
  for (std::size_t a = 0; a < count; ++a) {
    if (!t(static_cast<EventMask>(a))) {
      // phi(A) = 0 forces phi(AB) = 0 for every B, i.e. phi vanishes on
      // every subset of A.
      bool ok = true;
      detail::for_each_subset(static_cast<EventMask>(a), [&](EventMask s) {
        if (ok && t(s)) ok = false;
      });
      if (!ok) return false;
      continue;
    }
    for (std::size_t b = 0; b < count; ++b) {
      const auto bm = static_cast<EventMask>(b);
      if (t(static_cast<EventMask>(a) & bm) != t(bm)) return false;
    }
  }
  return true;
}

/// The six-term identity over all mutually disjoint triples, empty parts
/// included.
inline bool is_grade2_additive(const TruthTable& t) {
  const EventMask full = t.space().full_mask();
  for (std::size_t a = 0; a < t.space().event_count(); ++a) {
    const auto am = static_cast<EventMask>(a);
    bool ok = true;
    detail::for_each_subset(full & ~am, [&](EventMask bm) {
      if (!ok) return;
      detail::for_each_subset(full & ~(am | bm), [&](EventMask cm) {
        if (!ok) return;
        const bool rhs = t(am | bm) ^ t(am | cm) ^ t(bm | cm) ^ t(am) ^ t(bm) ^
                         t(cm);
        if (t(am | bm | cm) != rhs) ok = false;
      });
    });
    if (!ok) return false;
  }
  return true;
}

/// I^m(a_1..a_m) = phi({a_1..a_m}) + phi(a_1) + ... + phi(a_m).
inline bool interference(const TruthTable& t,
                         std::span<const std::size_t> tuple) {
  const OutcomeSpace space = t.space();
  if (tuple.size() < 2 || tuple.size() > space.size()) {
    throw ArgumentError("interference needs 2 <= m <= n outcomes");
  }
  EventMask set = 0;
  bool acc = false;
  for (auto o : tuple) {
    space.check_outcome(o);
    const EventMask bit = EventMask{1} << (o - 1);
    if (set & bit) throw ArgumentError("interference outcomes must be distinct");
    set |= bit;
    acc ^= t(bit);
  }
  return acc ^ t(set);
}

inline bool interference(const TruthTable& t,
                         std::initializer_list<std::size_t> tuple) {
  return interference(t, std::span<const std::size_t>(tuple.begin(), tuple.size()));
}

/// True iff I^m(a_1..a_m) equals the sum of I^2(a_i, a_j) over i<j for every
/// set of m >= 2 distinct outcomes. Both sides are symmetric in the tuple, so
/// each unordered set is checked once.
inline bool check_two_point(const TruthTable& t) {
  const std::size_t n = t.space().size();
  std::vector<bool> pair_interference(n * n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const EventMask bi = EventMask{1} << i;
      const EventMask bj = EventMask{1} << j;
      pair_interference[i * n + j] = t(bi | bj) ^ t(bi) ^ t(bj);
    }
  }
  for (std::size_t s = 0; s < t.space().event_count(); ++s) {
    const auto set = static_cast<EventMask>(s);
    if (std::popcount(set) < 2) continue;
    bool lhs = t(set);
    bool rhs = false;
    for (EventMask rest = set; rest != 0; rest &= rest - 1) {
      const auto i = static_cast<std::size_t>(std::countr_zero(rest));
      lhs ^= t(EventMask{1} << i);
      for (EventMask later = rest & (rest - 1); later != 0; later &= later - 1) {
        const auto j = static_cast<std::size_t>(std::countr_zero(later));
        rhs ^= pair_interference[i * n + j];
      }
    }
    if (lhs != rhs) return false;
  }
  return true;
}

inline ClassificationReport classify(const TruthTable& t) {
  ClassificationReport r;
  r.unital = t(t.space().full_mask());
  r.grade1_additive = is_grade1_additive(t);
  r.multiplicative = is_multiplicative(t);
  r.grade2_additive = is_grade2_additive(t);
  r.two_point_condition = check_two_point(t);
  r.homomorphism = r.unital && r.grade1_additive && r.multiplicative;
  return r;
}

/// For additive nonzero phi, the outcomes a with phi({a}) = 1, so that
/// phi = a_1* + ... + a_m*.
inline std::vector<std::size_t> decompose_additive(const TruthTable& t) {
  if (!is_grade1_additive(t)) throw NotAdditiveError("truth function is not additive");
  if (t.is_zero()) throw ZeroFunctionError("zero truth function has no decomposition");
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i <= t.space().size(); ++i) {
    if (t(EventMask{1} << (i - 1))) out.push_back(i);
  }
  return out;
}

/// For multiplicative phi != 0, the smallest event B with phi(B) = 1, so that
/// phi = product of b* over b in B.
inline Event decompose_multiplicative(const TruthTable& t) {
  if (t.is_zero()) throw DegenerateError("zero truth function has no decomposition");
  if (!is_multiplicative(t)) {
    throw NotMultiplicativeError("truth function is not multiplicative");
  }
  EventMask b = t.space().full_mask();
  for (std::size_t k = 1; k < t.space().event_count(); ++k) {
    if (t(static_cast<EventMask>(k))) b &= static_cast<EventMask>(k);
  }
  return Event(t.space(), b);
}

inline constexpr std::size_t kMaxEnumerableOutcomes = 4;

/// Calls `fn` on every truth table over `space` in ascending order of the
/// table read as a 2^n-bit integer.
template <class Fn>
void for_each_table(OutcomeSpace space, Fn&& fn) {
  if (space.size() > kMaxEnumerableOutcomes) {
    throw CapacityError("table enumeration limited to n <= 4");
  }
  const std::uint64_t limit = std::uint64_t{1} << space.event_count();
  for (std::uint64_t bits = 0; bits < limit; bits += 2) {
    fn(TruthTable::from_integer(space, bits));
  }
}

using ReportFilter = std::function<bool(const ClassificationReport&)>;

inline std::vector<TruthTable> enumerate_tables(OutcomeSpace space,
                                                const ReportFilter& filter = {}) {
  std::vector<TruthTable> out;
  for_each_table(space, [&](const TruthTable& t) {
    if (!filter || filter(classify(t))) out.push_back(t);
  });
  return out;
}

}  // namespace anhom

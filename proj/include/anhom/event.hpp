#pragma once

// The outcome space Omega = {w1, ..., wn}, its events, and events of the
// product space Omega x Omega.
//
// Outcomes are 1-based everywhere in the public interface. Internally an
// event is an n-bit mask with outcome i stored at bit i-1.

#include <bit>
#include <bitset>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "anhom/error.hpp"

namespace anhom {

inline constexpr std::size_t kMaxOutcomes = 16;

using EventMask = std::uint32_t;

class OutcomeSpace {
 public:
  explicit OutcomeSpace(std::size_t n) : n_(n) {
    if (n == 0) throw ArgumentError("outcome space must have n >= 1");
    if (n > kMaxOutcomes) {
      throw CapacityError("outcome space limited to n <= " +
                          std::to_string(kMaxOutcomes) + ", got " +
                          std::to_string(n));
    }
  }

  std::size_t size() const noexcept { return n_; }
  std::size_t event_count() const noexcept { return std::size_t{1} << n_; }
  EventMask full_mask() const noexcept {
    return static_cast<EventMask>((std::uint64_t{1} << n_) - 1);
  }
  /// n(n-1)/2, the number of doubleton events.
  std::size_t pair_count() const noexcept { return n_ * (n_ - 1) / 2; }
  /// n(n+1)/2, the dimension of the coevent space.
  std::size_t coevent_dimension() const noexcept { return n_ * (n_ + 1) / 2; }

  void check_outcome(std::size_t outcome) const {
    if (outcome < 1 || outcome > n_) {
      throw IndexError("outcome index " + std::to_string(outcome) +
                       " outside 1.." + std::to_string(n_));
    }
  }

  friend bool operator==(const OutcomeSpace&, const OutcomeSpace&) = default;

 private:
  std::size_t n_;
};

class Event {
 public:
  Event(OutcomeSpace space, EventMask mask) : space_(space), mask_(mask) {
    if ((mask & ~space.full_mask()) != 0) {
      throw IndexError("event mask has bits above n=" +
                       std::to_string(space.size()));
    }
  }

  static Event empty(OutcomeSpace space) { return Event(space, 0); }
  static Event full(OutcomeSpace space) {
    return Event(space, space.full_mask());
  }
  static Event singleton(OutcomeSpace space, std::size_t outcome) {
    space.check_outcome(outcome);
    return Event(space, EventMask{1} << (outcome - 1));
  }
  static Event of(OutcomeSpace space, std::initializer_list<std::size_t> outcomes) {
    return of(space, std::vector<std::size_t>(outcomes));
  }
  static Event of(OutcomeSpace space, const std::vector<std::size_t>& outcomes) {
    EventMask mask = 0;
    for (auto o : outcomes) {
      space.check_outcome(o);
      mask |= EventMask{1} << (o - 1);
    }
    return Event(space, mask);
  }

  OutcomeSpace space() const noexcept { return space_; }
  EventMask mask() const noexcept { return mask_; }
  bool is_empty() const noexcept { return mask_ == 0; }
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(std::popcount(mask_));
  }
  bool contains(std::size_t outcome) const noexcept {
    return outcome >= 1 && outcome <= space_.size() &&
           ((mask_ >> (outcome - 1)) & 1u);
  }
  bool is_subset_of(const Event& other) const noexcept {
    return (mask_ & ~other.mask_) == 0;
  }

  /// Outcomes in ascending order, 1-based.
  std::vector<std::size_t> outcomes() const {
    std::vector<std::size_t> out;
    for (EventMask m = mask_; m != 0; m &= m - 1) {
      out.push_back(static_cast<std::size_t>(std::countr_zero(m)) + 1);
    }
    return out;
  }

  friend bool operator==(const Event& a, const Event& b) noexcept {
    return a.space_ == b.space_ && a.mask_ == b.mask_;
  }
  friend std::strong_ordering operator<=>(const Event& a, const Event& b) noexcept {
    if (auto c = a.space_.size() <=> b.space_.size(); c != 0) return c;
    return a.mask_ <=> b.mask_;
  }

 private:
  OutcomeSpace space_;
  EventMask mask_;
};

enum class SetOp {
  intersection,
  union_,
  complement_of_first,
  symmetric_difference,
  disjoint_union,
};

inline Event combine(const Event& a, const Event& b, SetOp op) {
  if (!(a.space() == b.space())) {
    throw ArgumentError("events come from different outcome spaces");
  }
  const OutcomeSpace space = a.space();
  switch (op) {
    case SetOp::intersection:
      return Event(space, a.mask() & b.mask());
    case SetOp::union_:
      return Event(space, a.mask() | b.mask());
    case SetOp::complement_of_first:
      return Event(space, ~a.mask() & space.full_mask());
    case SetOp::symmetric_difference:
      return Event(space, a.mask() ^ b.mask());
    case SetOp::disjoint_union:
      if ((a.mask() & b.mask()) != 0) {
        throw DisjointnessError("disjoint union of overlapping events");
      }
      return Event(space, a.mask() | b.mask());
  }
  throw ArgumentError("unknown set operation");
}

inline Event operator&(const Event& a, const Event& b) {
  return combine(a, b, SetOp::intersection);
}
inline Event operator|(const Event& a, const Event& b) {
  return combine(a, b, SetOp::union_);
}
/// Symmetric difference, written A+B.
inline Event operator+(const Event& a, const Event& b) {
  return combine(a, b, SetOp::symmetric_difference);
}
inline Event complement(const Event& a) {
  return combine(a, a, SetOp::complement_of_first);
}

/// `{i,j,...}` with ascending 1-based indices; `{}` for the empty event.
inline std::string format_event(const Event& e) {
  std::string out = "{";
  bool first = true;
  for (auto o : e.outcomes()) {
    if (!first) out.push_back(',');
    out += std::to_string(o);
    first = false;
  }
  out.push_back('}');
  return out;
}

namespace detail {

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n';
}

/// Cursor over a line of text that reports 1-based columns in errors.
class Scanner {
 public:
  Scanner(std::string_view text, std::size_t line = 1, std::size_t column0 = 0)
      : text_(text), line_(line), column0_(column0) {}

  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::size_t number() {
    skip_space();
    const std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
      value = value * 10 + static_cast<std::size_t>(text_[pos_] - '0');
      if (value > 1'000'000) fail("number too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected a number");
    return value;
  }
  std::size_t column() const { return column0_ + pos_ + 1; }
  std::size_t line() const { return line_; }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, column());
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t column0_;
  std::size_t pos_ = 0;
};

inline Event scan_event(Scanner& in, OutcomeSpace space) {
  in.expect('{');
  EventMask mask = 0;
  if (!in.accept('}')) {
    do {
      const std::size_t col = in.column();
      const std::size_t o = in.number();
      if (o < 1 || o > space.size()) {
        throw IndexError("outcome index " + std::to_string(o) +
                         " outside 1.." + std::to_string(space.size()) +
                         " at " + std::to_string(in.line()) + ":" +
                         std::to_string(col));
      }
      mask |= EventMask{1} << (o - 1);
    } while (in.accept(','));
    in.expect('}');
  }
  return Event(space, mask);
}

}  // namespace detail

inline Event parse_event(OutcomeSpace space, std::string_view text) {
  detail::Scanner in(text);
  Event e = detail::scan_event(in, space);
  if (!in.at_end()) in.fail("trailing characters after event");
  return e;
}

/// Subset of Omega x Omega. Pair (i,j) is stored at bit (i-1)*n + (j-1).
class ProductEvent {
 public:
  static constexpr std::size_t kMaxPairs = kMaxOutcomes * kMaxOutcomes;
  using Bits = std::bitset<kMaxPairs>;

  explicit ProductEvent(OutcomeSpace space) : space_(space) {}

  OutcomeSpace space() const noexcept { return space_; }

  bool contains(std::size_t i, std::size_t j) const {
    return bits_.test(index(i, j));
  }
  void insert(std::size_t i, std::size_t j) { bits_.set(index(i, j)); }
  std::size_t size() const noexcept { return bits_.count(); }
  const Bits& bits() const noexcept { return bits_; }

  friend bool operator==(const ProductEvent&, const ProductEvent&) = default;

 private:
  std::size_t index(std::size_t i, std::size_t j) const {
    space_.check_outcome(i);
    space_.check_outcome(j);
    return (i - 1) * space_.size() + (j - 1);
  }

  OutcomeSpace space_;
  Bits bits_;
};

/// A x A.
inline ProductEvent square(const Event& a) {
  ProductEvent out(a.space());
  const auto members = a.outcomes();
  for (auto i : members) {
    for (auto j : members) out.insert(i, j);
  }
  return out;
}

}  // namespace anhom

#pragma once

// Evidence search for the open question whether the projections on the
// coevent space form a lattice: enumerate every idempotent of a small
// dimension and decide, pair by pair, whether a greatest lower bound exists.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "anhom/error.hpp"
#include "anhom/event.hpp"
#include "anhom/gf2.hpp"

namespace anhom {

/// Square GF(2) matrix of dimension <= 8 packed into one word: row r is byte
/// r, entry (r, c) is bit c of that byte.
class PackedSquare {
 public:
  static constexpr std::size_t kMaxDim = 8;

  PackedSquare() = default;
  PackedSquare(std::size_t dim, std::uint64_t bits) : dim_(dim), bits_(bits) {}

  static PackedSquare identity(std::size_t dim) {
    PackedSquare m(dim, 0);
    for (std::size_t i = 0; i < dim; ++i) m.set(i, i, true);
    return m;
  }

  static PackedSquare from_matrix(const Gf2Matrix& g) {
    if (g.rows() != g.cols() || g.rows() > kMaxDim) {
      throw ShapeError("packed matrices are square with dimension <= 8");
    }
    PackedSquare m(g.rows(), 0);
    for (std::size_t r = 0; r < g.rows(); ++r) {
      for (std::size_t c = 0; c < g.cols(); ++c) m.set(r, c, g.get(r, c));
    }
    return m;
  }

  Gf2Matrix to_matrix() const {
    Gf2Matrix g(dim_, dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
      for (std::size_t c = 0; c < dim_; ++c) g.set(r, c, get(r, c));
    }
    return g;
  }

  std::size_t dim() const noexcept { return dim_; }
  std::uint64_t bits() const noexcept { return bits_; }

  std::uint8_t row(std::size_t r) const noexcept {
    return static_cast<std::uint8_t>(bits_ >> (8 * r));
  }
  bool get(std::size_t r, std::size_t c) const noexcept {
    return (bits_ >> (8 * r + c)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool v) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (8 * r + c);
    bits_ = v ? (bits_ | bit) : (bits_ & ~bit);
  }

  friend PackedSquare operator*(const PackedSquare& a, const PackedSquare& b) noexcept {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < a.dim_; ++i) {
      std::uint8_t acc = 0;
      for (unsigned sel = a.row(i); sel != 0; sel &= sel - 1) {
        acc ^= b.row(static_cast<std::size_t>(std::countr_zero(sel)));
      }
      out |= std::uint64_t{acc} << (8 * i);
    }
    return PackedSquare(a.dim_, out);
  }

  friend PackedSquare operator+(const PackedSquare& a, const PackedSquare& b) noexcept {
    return PackedSquare(a.dim_, a.bits_ ^ b.bits_);
  }

  friend bool operator==(const PackedSquare&, const PackedSquare&) = default;
  friend auto operator<=>(const PackedSquare&, const PackedSquare&) = default;

  bool is_idempotent() const noexcept { return *this * *this == *this; }

  PackedSquare transposed() const noexcept {
    PackedSquare t(dim_, 0);
    for (std::size_t r = 0; r < dim_; ++r) {
      for (std::size_t c = 0; c < dim_; ++c) {
        if (get(r, c)) t.set(c, r, true);
      }
    }
    return t;
  }

  std::size_t rank() const noexcept {
    std::uint8_t rows[kMaxDim];
    for (std::size_t r = 0; r < dim_; ++r) rows[r] = row(r);
    std::size_t rk = 0;
    for (std::size_t c = 0; c < dim_ && rk < dim_; ++c) {
      const std::uint8_t bit = static_cast<std::uint8_t>(1u << c);
      std::size_t p = rk;
      while (p < dim_ && !(rows[p] & bit)) ++p;
      if (p == dim_) continue;
      std::swap(rows[rk], rows[p]);
      for (std::size_t r = 0; r < dim_; ++r) {
        if (r != rk && (rows[r] & bit)) rows[r] ^= rows[rk];
      }
      ++rk;
    }
    return rk;
  }

  /// Inverse by Gauss-Jordan elimination; nullopt when singular.
  std::optional<PackedSquare> inverse() const noexcept {
    std::uint16_t rows[kMaxDim];
    for (std::size_t r = 0; r < dim_; ++r) {
      rows[r] = static_cast<std::uint16_t>(row(r) | (1u << (8 + r)));
    }
    for (std::size_t c = 0; c < dim_; ++c) {
      const std::uint16_t bit = static_cast<std::uint16_t>(1u << c);
      std::size_t p = c;
      while (p < dim_ && !(rows[p] & bit)) ++p;
      if (p == dim_) return std::nullopt;
      std::swap(rows[c], rows[p]);
      for (std::size_t r = 0; r < dim_; ++r) {
        if (r != c && (rows[r] & bit)) rows[r] ^= rows[c];
      }
    }
    PackedSquare inv(dim_, 0);
    for (std::size_t r = 0; r < dim_; ++r) {
      inv.bits_ |= std::uint64_t{static_cast<std::uint8_t>(rows[r] >> 8)} << (8 * r);
    }
    return inv;
  }

 private:
  std::size_t dim_ = 0;
  std::uint64_t bits_ = 0;
};

/// P <= Q iff PQ = QP = P.
inline bool packed_leq(const PackedSquare& p, const PackedSquare& q) noexcept {
  return p * q == p && q * p == p;
}

/// Every idempotent D x D matrix, found by testing all 2^(D^2) matrices.
/// Sorted ascending by packed bits.
inline std::vector<PackedSquare> enumerate_idempotents_bruteforce(std::size_t dim) {
  if (dim > 4) throw CapacityError("brute-force idempotent scan needs D <= 4");
  std::vector<PackedSquare> out;
  const std::uint64_t limit = std::uint64_t{1} << (dim * dim);
  for (std::uint64_t dense = 0; dense < limit; ++dense) {
    PackedSquare m(dim, 0);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        if ((dense >> (r * dim + c)) & 1u) m.set(r, c, true);
      }
    }
    if (m.is_idempotent()) out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline constexpr std::size_t kMaxStructuredDim = 6;

/// Every idempotent D x D matrix, built from its (range, kernel) pair:
/// for each subspace U in reduced echelon form and each complement W of U,
/// the projection onto U along W. Sorted ascending by packed bits.
inline std::vector<PackedSquare> enumerate_idempotents(std::size_t dim) {
  if (dim > kMaxStructuredDim) {
    throw CapacityError("idempotent enumeration limited to D <= 6");
  }
  std::vector<PackedSquare> out;
  for (unsigned pivots = 0; pivots < (1u << dim); ++pivots) {
    const std::size_t k = static_cast<std::size_t>(std::popcount(pivots));
    std::vector<std::size_t> pivot_cols;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < dim; ++c) {
      ((pivots >> c) & 1u ? pivot_cols : free_cols).push_back(c);
    }
    // Free echelon entries: row r may have any value at a non-pivot column
    // to the right of its pivot.
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c : free_cols) {
        if (c > pivot_cols[r]) slots.emplace_back(r, c);
      }
    }
    const std::size_t graph_bits = k * (dim - k);
    for (std::uint64_t fill = 0; fill < (std::uint64_t{1} << slots.size()); ++fill) {
      std::uint8_t u[PackedSquare::kMaxDim] = {};
      for (std::size_t r = 0; r < k; ++r) u[r] = static_cast<std::uint8_t>(1u << pivot_cols[r]);
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if ((fill >> s) & 1u) u[slots[s].first] ^= static_cast<std::uint8_t>(1u << slots[s].second);
      }
      // Complements of U: graphs {w + f(w)} of linear maps f from
      // span{e_c : c free} into U.
      for (std::uint64_t graph = 0; graph < (std::uint64_t{1} << graph_bits); ++graph) {
        PackedSquare basis_rows(dim, 0);  // row i = i-th basis vector
        std::uint64_t packed = 0;
        for (std::size_t r = 0; r < k; ++r) packed |= std::uint64_t{u[r]} << (8 * r);
        for (std::size_t f = 0; f < free_cols.size(); ++f) {
          std::uint8_t w = static_cast<std::uint8_t>(1u << free_cols[f]);
          for (std::size_t r = 0; r < k; ++r) {
            if ((graph >> (f * k + r)) & 1u) w ^= u[r];
          }
          packed |= std::uint64_t{w} << (8 * (k + f));
        }
        basis_rows = PackedSquare(dim, packed);
        const PackedSquare b = basis_rows.transposed();  // columns = basis
        const auto b_inv = b.inverse();
        if (!b_inv) throw Error("internal: complement construction is singular");
        // P = B * diag(1..1, 0..0) * B^-1: keep the first k rows of B^-1.
        const std::uint64_t keep =
            k == 0 ? 0 : (k >= 8 ? ~std::uint64_t{0} : (std::uint64_t{1} << (8 * k)) - 1);
        out.push_back(b * PackedSquare(dim, b_inv->bits() & keep));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

enum class LatticeMode { exhaustive, random };

struct MeetCounterexample {
  PackedSquare p;
  PackedSquare q;
  /// Lower bounds of {P, Q} not strictly below any other lower bound.
  std::vector<PackedSquare> maximal_lower_bounds;
};

struct LatticeReport {
  std::size_t dimension = 0;
  LatticeMode mode = LatticeMode::exhaustive;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  std::size_t projection_count = 0;
  std::size_t pairs_examined = 0;
  std::size_t pairs_with_meet = 0;
  std::size_t pairs_without_meet = 0;
  std::size_t commuting_pairs = 0;
  /// Every commuting pair had meet exactly PQ.
  bool commuting_meets_are_products = true;
  /// Every reported meet was re-verified to be a lower bound lying above
  /// every other lower bound.
  bool meets_verified = true;
  /// First few pairs without a meet.
  std::vector<MeetCounterexample> counterexamples;

  std::string verdict() const {
    std::string where = "verified at D=" + std::to_string(dimension) + " (" +
                        (mode == LatticeMode::exhaustive ? "exhaustive" : "random") +
                        ", " + std::to_string(pairs_examined) + " pairs)";
    if (pairs_examined == 0) return "no pairs examined";
    if (pairs_without_meet == 0) return "all examined pairs have meets; " + where;
    return std::to_string(pairs_without_meet) +
           " examined pairs have no meet; " + where;
  }
};

namespace detail {

struct MeetSearch {
  std::optional<PackedSquare> meet;
  std::vector<PackedSquare> lower_bounds;
};

/// Greatest element of {R : R <= P, R <= Q} by scanning every projection.
/// A greatest lower bound must contain the range of every lower bound, so
/// only maximum-rank lower bounds are candidates.
inline MeetSearch find_meet(const std::vector<PackedSquare>& all,
                            const std::vector<std::uint8_t>& ranks,
                            const PackedSquare& p, const PackedSquare& q) {
  MeetSearch out;
  std::vector<std::uint8_t> lower_ranks;
  std::uint8_t best = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (packed_leq(all[i], p) && packed_leq(all[i], q)) {
      out.lower_bounds.push_back(all[i]);
      lower_ranks.push_back(ranks[i]);
      best = std::max(best, ranks[i]);
    }
  }
  for (std::size_t c = 0; c < out.lower_bounds.size(); ++c) {
    if (lower_ranks[c] != best) continue;
    const PackedSquare& cand = out.lower_bounds[c];
    const bool greatest = std::all_of(
        out.lower_bounds.begin(), out.lower_bounds.end(),
        [&](const PackedSquare& r) { return packed_leq(r, cand); });
    if (greatest) {
      out.meet = cand;
      break;
    }
  }
  return out;
}

}  // namespace detail

inline constexpr std::size_t kMaxStoredCounterexamples = 8;

/// Decides meet existence for pairs of D x D projections. Exhaustive mode
/// examines every ordered pair of idempotents (D <= 4); random mode draws
/// `budget` pairs with a seeded generator (D <= 6).
inline LatticeReport lattice_search_dim(std::size_t dim, LatticeMode mode,
                                        std::size_t budget, std::uint64_t seed) {
  if (dim == 0) throw ArgumentError("dimension must be positive");
  if (mode == LatticeMode::exhaustive && dim > 4) {
    throw CapacityError("exhaustive lattice search needs D <= 4, got D=" +
                        std::to_string(dim));
  }
  if (dim > kMaxStructuredDim) {
    throw CapacityError("lattice search needs D <= 6, got D=" + std::to_string(dim));
  }
  LatticeReport report;
  report.dimension = dim;
  report.mode = mode;
  report.budget = budget;
  report.seed = seed;

  if (mode == LatticeMode::random && budget == 0) return report;

  const std::vector<PackedSquare> all = mode == LatticeMode::exhaustive
                                            ? enumerate_idempotents_bruteforce(dim)
                                            : enumerate_idempotents(dim);
  report.projection_count = all.size();
  std::vector<std::uint8_t> ranks(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    ranks[i] = static_cast<std::uint8_t>(all[i].rank());
  }

  auto examine = [&](const PackedSquare& p, const PackedSquare& q) {
    ++report.pairs_examined;
    const detail::MeetSearch found = detail::find_meet(all, ranks, p, q);
    const bool commuting = p * q == q * p;
    if (commuting) ++report.commuting_pairs;
    if (found.meet) {
      ++report.pairs_with_meet;
      const PackedSquare& m = *found.meet;
      const bool lower = packed_leq(m, p) && packed_leq(m, q);
      const bool above_all = std::all_of(
          found.lower_bounds.begin(), found.lower_bounds.end(),
          [&](const PackedSquare& r) { return packed_leq(r, m); });
      if (!lower || !above_all) report.meets_verified = false;
      if (commuting && !(m == p * q)) report.commuting_meets_are_products = false;
      return;
    }
    ++report.pairs_without_meet;
    if (commuting) report.commuting_meets_are_products = false;
    if (report.counterexamples.size() < kMaxStoredCounterexamples) {
      MeetCounterexample ce{p, q, {}};
      for (const auto& r : found.lower_bounds) {
        const bool dominated = std::any_of(
            found.lower_bounds.begin(), found.lower_bounds.end(),
            [&](const PackedSquare& s) { return !(s == r) && packed_leq(r, s); });
        if (!dominated) ce.maximal_lower_bounds.push_back(r);
      }
      report.counterexamples.push_back(std::move(ce));
    }
  };

  if (mode == LatticeMode::exhaustive) {
    for (const auto& p : all) {
      for (const auto& q : all) examine(p, q);
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (std::size_t s = 0; s < budget; ++s) {
      const std::size_t a = pick(rng);
      const std::size_t b = pick(rng);
      examine(all[a], all[b]);
    }
  }
  return report;
}

inline LatticeReport lattice_search(OutcomeSpace space, LatticeMode mode,
                                    std::size_t budget, std::uint64_t seed) {
  return lattice_search_dim(space.coevent_dimension(), mode, budget, seed);
}

}  // namespace anhom

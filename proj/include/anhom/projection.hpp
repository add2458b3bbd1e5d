#pragma once

// Projections (linear idempotents) on the coevent space, their order and
// orthocomplement, and the master observable A -> P(A).
//
// Matrices act on coefficient columns in the basis order of coevent.hpp:
// column c holds the image of basis coevent c.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "anhom/coevent.hpp"
#include "anhom/error.hpp"
#include "anhom/event.hpp"
#include "anhom/gf2.hpp"

namespace anhom {

class NotIdempotentError : public Error {
 public:
  NotIdempotentError(std::size_t column, Gf2Vector witness)
      : Error("matrix is not idempotent: M^2 e_" + std::to_string(column + 1) +
              " != M e_" + std::to_string(column + 1)),
        column_(column),
        witness_(std::move(witness)) {}

  /// 0-based index of the basis vector where M^2 and M differ.
  std::size_t column() const noexcept { return column_; }
  const Gf2Vector& witness() const noexcept { return witness_; }

 private:
  std::size_t column_;
  Gf2Vector witness_;
};

class Projection {
 public:
  static Projection identity(OutcomeSpace space) {
    return Projection(space, Gf2Matrix::identity(space.coevent_dimension()));
  }
  static Projection zero(OutcomeSpace space) {
    const auto d = space.coevent_dimension();
    return Projection(space, Gf2Matrix(d, d));
  }

  OutcomeSpace space() const noexcept { return space_; }
  const Gf2Matrix& matrix() const noexcept { return matrix_; }
  std::size_t rank() const { return anhom::rank(matrix_); }

  Coevent apply(const Coevent& phi) const {
    if (!(phi.space() == space_)) throw ShapeError("coevent from another space");
    return Coevent::from_coefficients(space_, matrix_.apply(phi.coefficients()));
  }

  friend bool operator==(const Projection& a, const Projection& b) noexcept {
    return a.space_ == b.space_ && a.matrix_ == b.matrix_;
  }

 private:
  friend Projection make_projection(OutcomeSpace, Gf2Matrix);
  friend Projection unchecked_projection(OutcomeSpace, Gf2Matrix);

  Projection(OutcomeSpace space, Gf2Matrix m)
      : space_(space), matrix_(std::move(m)) {}

  OutcomeSpace space_;
  Gf2Matrix matrix_;
};

/// Wraps M after checking it is D x D and M^2 = M.
inline Projection make_projection(OutcomeSpace space, Gf2Matrix m) {
  const auto d = space.coevent_dimension();
  if (m.rows() != d || m.cols() != d) {
    throw ShapeError("projection needs a " + std::to_string(d) + "x" +
                     std::to_string(d) + " matrix");
  }
  const Gf2Matrix sq = m * m;
  if (!(sq == m)) {
    for (std::size_t c = 0; c < d; ++c) {
      if (!(sq.column(c) == m.column(c))) {
        throw NotIdempotentError(c, Gf2Vector::unit(d, c));
      }
    }
  }
  return Projection(space, std::move(m));
}

/// For matrices already known to be idempotent by construction.
inline Projection unchecked_projection(OutcomeSpace space, Gf2Matrix m) {
  return Projection(space, std::move(m));
}

inline void require_same_space(const Projection& p, const Projection& q) {
  if (!(p.space() == q.space())) throw ShapeError("projections over different spaces");
}

/// P <= Q iff PQ = QP = P.
inline bool leq(const Projection& p, const Projection& q) {
  require_same_space(p, q);
  return p.matrix() * q.matrix() == p.matrix() &&
         q.matrix() * p.matrix() == p.matrix();
}

inline bool commute(const Projection& p, const Projection& q) {
  require_same_space(p, q);
  return p.matrix() * q.matrix() == q.matrix() * p.matrix();
}

/// P' = I + P.
inline Projection complement(const Projection& p) {
  return unchecked_projection(
      p.space(),
      p.matrix() + Gf2Matrix::identity(p.space().coevent_dimension()));
}

struct PosetRelationReport {
  bool commute = false;
  bool leq = false;
  bool geq = false;
  bool orthogonal = false;
  bool compatible = false;

  friend bool operator==(const PosetRelationReport&,
                         const PosetRelationReport&) = default;
};

inline PosetRelationReport relations(const Projection& p, const Projection& q) {
  require_same_space(p, q);
  const Gf2Matrix pq = p.matrix() * q.matrix();
  const Gf2Matrix qp = q.matrix() * p.matrix();
  PosetRelationReport r;
  r.commute = pq == qp;
  r.leq = pq == p.matrix() && qp == p.matrix();
  r.geq = pq == q.matrix() && qp == q.matrix();
  // P is orthogonal to Q when P <= Q'.
  r.orthogonal = leq(p, complement(q));
  // Compatibility coincides with commutation for projections on the
  // coevent space.
  r.compatible = r.commute;
  return r;
}

struct MeetJoin {
  Projection meet;
  Projection join;
};

/// P ^ Q = PQ and P v Q = P + Q + PQ for commuting P, Q.
inline MeetJoin meet_join_commuting(const Projection& p, const Projection& q) {
  if (!commute(p, q)) {
    throw NonCommutingError("meet/join formula needs PQ = QP");
  }
  const Gf2Matrix pq = p.matrix() * q.matrix();
  return MeetJoin{unchecked_projection(p.space(), pq),
                  unchecked_projection(p.space(), p.matrix() + q.matrix() + pq)};
}

struct CompatibilityDecomposition {
  Projection p1;
  Projection q1;
  Projection r;
};

/// R = PQ, P1 = P + PQ, Q1 = Q + PQ: mutually orthogonal with
/// P = P1 v R and Q = Q1 v R.
inline CompatibilityDecomposition compatibility_decomposition(const Projection& p,
                                                              const Projection& q) {
  if (!commute(p, q)) {
    throw NonCommutingError("incompatible projections: PQ != QP");
  }
  const Gf2Matrix pq = p.matrix() * q.matrix();
  return CompatibilityDecomposition{
      make_projection(p.space(), p.matrix() + pq),
      make_projection(p.space(), q.matrix() + pq),
      make_projection(p.space(), pq),
  };
}

/// Matrix of the generator P(w_i):
///   w_i*      -> w_i*
///   w_j*      -> w_i* w_j*        (j != i)
///   w_i* w_j* -> w_i* w_j*
///   w_j* w_k* -> 0                (i, j, k distinct)
inline Gf2Matrix generator_matrix(OutcomeSpace space, std::size_t i) {
  space.check_outcome(i);
  const std::size_t n = space.size();
  const std::size_t d = space.coevent_dimension();
  Gf2Matrix m(d, d);
  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t col = coefficient::linear(n, j);
    if (j == i) {
      m.set(col, col, true);
    } else {
      m.set(coefficient::quadratic(n, i, j), col, true);
    }
  }
  for (const auto& [j, k] : coefficient::pairs(n)) {
    if (j == i || k == i) {
      const std::size_t col = coefficient::quadratic(n, j, k);
      m.set(col, col, true);
    }
  }
  return m;
}

/// Generators P(w_1..w_n) and their pairwise products, cached.
class MasterObservable {
 public:
  explicit MasterObservable(OutcomeSpace space) : space_(space) {
    const std::size_t n = space.size();
    generators_.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
      generators_.push_back(generator_matrix(space, i));
    }
    products_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        products_[i * n + j] = generators_[i] * generators_[j];
      }
    }
  }

  OutcomeSpace space() const noexcept { return space_; }

  Projection generator(std::size_t i) const {
    space_.check_outcome(i);
    return unchecked_projection(space_, generators_[i - 1]);
  }

  /// P(A) = sum over i in A of P(w_i) + sum over i<j in A of P(w_i)P(w_j);
  /// P({}) = 0.
  Projection projection(const Event& a) const {
    if (!(a.space() == space_)) throw ArgumentError("event from another space");
    const std::size_t n = space_.size();
    const std::size_t d = space_.coevent_dimension();
    Gf2Matrix sum(d, d);
    const auto members = a.outcomes();
    for (std::size_t x = 0; x < members.size(); ++x) {
      const std::size_t i = members[x] - 1;
      sum += generators_[i];
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        sum += products_[i * n + (members[y] - 1)];
      }
    }
    return unchecked_projection(space_, std::move(sum));
  }

 private:
  OutcomeSpace space_;
  std::vector<Gf2Matrix> generators_;
  std::vector<Gf2Matrix> products_;
};

inline Projection master_projection(const MasterObservable& obs, const Event& a) {
  return obs.projection(a);
}

/// f : Omega -> R, one value per outcome.
class RandomVariable {
 public:
  RandomVariable(OutcomeSpace space, std::vector<double> values)
      : space_(space), values_(std::move(values)) {
    if (values_.size() != space.size()) {
      throw ArgumentError("random variable needs exactly n values");
    }
  }

  OutcomeSpace space() const noexcept { return space_; }
  const std::vector<double>& values() const noexcept { return values_; }

  /// {w : f(w) in B}.
  Event preimage(std::span<const double> b) const {
    EventMask mask = 0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      for (double v : b) {
        if (values_[i] == v) {
          mask |= EventMask{1} << i;
          break;
        }
      }
    }
    return Event(space_, mask);
  }

  /// Distinct values in order of first appearance.
  std::vector<double> range() const {
    std::vector<double> out;
    for (double v : values_) {
      bool seen = false;
      for (double u : out) seen = seen || u == v;
      if (!seen) out.push_back(v);
    }
    return out;
  }

 private:
  OutcomeSpace space_;
  std::vector<double> values_;
};

/// P^f(B) = P(f^-1(B)).
inline Projection observable(const MasterObservable& obs, const RandomVariable& f,
                             std::span<const double> b) {
  if (!(f.space() == obs.space())) throw ArgumentError("random variable from another space");
  return obs.projection(f.preimage(b));
}

struct OrthomodularReport {
  bool passed = true;
  std::size_t projection_count = 0;
  std::size_t pairs_checked = 0;
  std::vector<std::string> failures;
};

namespace detail {

inline std::string inline_matrix(const Gf2Matrix& m) {
  std::string out = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r != 0) out.push_back('/');
    out += m.row(r).to_string();
  }
  out.push_back(']');
  return out;
}

inline bool is_idempotent(const Gf2Matrix& m) { return m * m == m; }

inline bool matrix_leq(const Gf2Matrix& p, const Gf2Matrix& q) {
  return p * q == p && q * p == p;
}

}  // namespace detail

/// Checks, over every pair (and triple, for transitivity) drawn from
/// `projs`, the axioms of an orthomodular poset: the partial order, P'' = P,
/// P ^ P' = 0, order reversal of ', existence of P v Q = P + Q for
/// orthogonal pairs, and Q = P v (Q ^ P') whenever P <= Q.
///
/// "Greatest"/"least" are verified against the elements of `projs`; when
/// `projs` is the whole projection set this is the exact lattice-theoretic
/// statement.
inline OrthomodularReport verify_orthomodular(std::span<const Projection> projs) {
  OrthomodularReport report;
  report.projection_count = projs.size();
  const std::size_t k = projs.size();
  if (k == 0) return report;
  const OutcomeSpace space = projs[0].space();
  const std::size_t d = space.coevent_dimension();
  const Gf2Matrix id = Gf2Matrix::identity(d);
  const Gf2Matrix zero(d, d);

  auto fail = [&](std::string what) {
    report.passed = false;
    if (report.failures.size() < 16) report.failures.push_back(std::move(what));
  };

  for (const auto& p : projs) {
    if (!(p.space() == space)) throw ShapeError("projections over different spaces");
  }

  std::vector<char> le(k * k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      le[a * k + b] = detail::matrix_leq(projs[a].matrix(), projs[b].matrix());
    }
  }

  auto is_lub_in_list = [&](const Gf2Matrix& j, const Gf2Matrix& x,
                            const Gf2Matrix& y) {
    if (!detail::matrix_leq(x, j) || !detail::matrix_leq(y, j)) return false;
    for (std::size_t u = 0; u < k; ++u) {
      const Gf2Matrix& um = projs[u].matrix();
      if (detail::matrix_leq(x, um) && detail::matrix_leq(y, um) &&
          !detail::matrix_leq(j, um)) {
        return false;
      }
    }
    return true;
  };
  auto is_glb_in_list = [&](const Gf2Matrix& g, const Gf2Matrix& x,
                            const Gf2Matrix& y) {
    if (!detail::matrix_leq(g, x) || !detail::matrix_leq(g, y)) return false;
    for (std::size_t u = 0; u < k; ++u) {
      const Gf2Matrix& um = projs[u].matrix();
      if (detail::matrix_leq(um, x) && detail::matrix_leq(um, y) &&
          !detail::matrix_leq(um, g)) {
        return false;
      }
    }
    return true;
  };

  for (std::size_t a = 0; a < k; ++a) {
    const Gf2Matrix& p = projs[a].matrix();
    const std::string pn = detail::inline_matrix(p);
    if (!detail::is_idempotent(p)) fail("not idempotent: " + pn);
    if (!le[a * k + a]) fail("reflexivity fails for " + pn);
    const Gf2Matrix pc = p + id;
    if (!(pc + id == p)) fail("P'' != P for " + pn);
    if (!is_glb_in_list(zero, p, pc)) fail("P ^ P' != 0 for " + pn);
  }

  for (std::size_t a = 0; a < k; ++a) {
    const Gf2Matrix& p = projs[a].matrix();
    const Gf2Matrix pc = p + id;
    for (std::size_t b = 0; b < k; ++b) {
      ++report.pairs_checked;
      const Gf2Matrix& q = projs[b].matrix();
      const Gf2Matrix qc = q + id;
      const std::string pair =
          detail::inline_matrix(p) + ", " + detail::inline_matrix(q);
      const bool p_le_q = le[a * k + b];

      if (p_le_q && le[b * k + a] && !(p == q)) fail("antisymmetry fails: " + pair);
      if (p_le_q) {
        for (std::size_t c = 0; c < k; ++c) {
          if (le[b * k + c] && !le[a * k + c]) {
            fail("transitivity fails: " + pair + ", " +
                 detail::inline_matrix(projs[c].matrix()));
          }
        }
        if (!detail::matrix_leq(qc, pc)) fail("P <= Q but not Q' <= P': " + pair);

        // Orthomodular law Q = P v (Q ^ P').
        const Gf2Matrix meet = q * pc;
        if (!detail::is_idempotent(meet) || !is_glb_in_list(meet, q, pc)) {
          fail("Q ^ P' is not Q(I+P): " + pair);
        }
        const Gf2Matrix join = p + meet;
        if (!detail::is_idempotent(join) || !is_lub_in_list(join, p, meet) ||
            !(join == q)) {
          fail("orthomodular law fails: " + pair);
        }
      }

      if (detail::matrix_leq(p, qc)) {  // P orthogonal to Q
        const Gf2Matrix sum = p + q;
        if (!detail::is_idempotent(sum) || !is_lub_in_list(sum, p, q)) {
          fail("orthogonal pair without join P + Q: " + pair);
        }
      }
    }
  }
  return report;
}

}  // namespace anhom

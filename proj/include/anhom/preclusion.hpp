#pragma once

// Preclusive and precluding coevents for a family of precluded events.
//
//   preclusive:  phi(A_i) = 0 for every precluded A_i
//   precluding:  P(A_1 u ... u A_m) phi = 0
//
// Both are subspaces of the coevent space and are returned as canonical
// (reduced echelon) bases.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "anhom/coevent.hpp"
#include "anhom/error.hpp"
#include "anhom/event.hpp"
#include "anhom/gf2.hpp"
#include "anhom/projection.hpp"

namespace anhom {

/// Precluded events. The empty event is always precluded and is not stored.
class PrecludedFamily {
 public:
  explicit PrecludedFamily(OutcomeSpace space) : space_(space) {}

  PrecludedFamily(OutcomeSpace space, const std::vector<Event>& events,
                  bool close_under_disjoint_unions = false)
      : space_(space) {
    for (const auto& e : events) insert(e);
    if (close_under_disjoint_unions) close_disjoint_unions();
  }

  OutcomeSpace space() const noexcept { return space_; }
  /// Nonempty members, ascending by mask.
  const std::vector<Event>& members() const noexcept { return members_; }

  bool is_precluded(const Event& e) const {
    return e.is_empty() ||
           std::find(members_.begin(), members_.end(), e) != members_.end();
  }

  /// A = A_1 u ... u A_m.
  Event union_event() const {
    EventMask m = 0;
    for (const auto& e : members_) m |= e.mask();
    return Event(space_, m);
  }

  void insert(const Event& e) {
    if (!(e.space() == space_)) throw ArgumentError("event from another space");
    if (e.is_empty()) return;
    const auto it = std::lower_bound(members_.begin(), members_.end(), e);
    if (it == members_.end() || !(*it == e)) members_.insert(it, e);
  }

  /// Adds A u B for every disjoint pair of members until nothing changes.
  void close_disjoint_unions() {
    bool grew = true;
    while (grew) {
      grew = false;
      const std::vector<Event> snapshot = members_;
      for (std::size_t i = 0; i < snapshot.size(); ++i) {
        for (std::size_t j = i + 1; j < snapshot.size(); ++j) {
          if ((snapshot[i].mask() & snapshot[j].mask()) != 0) continue;
          const Event u = snapshot[i] | snapshot[j];
          if (!is_precluded(u)) {
            insert(u);
            grew = true;
          }
        }
      }
    }
  }

  friend bool operator==(const PrecludedFamily&, const PrecludedFamily&) = default;

 private:
  OutcomeSpace space_;
  std::vector<Event> members_;
};

/// `{1,2};{2,3}`; the empty family renders as `{}`.
inline std::string format_family(const PrecludedFamily& fam) {
  if (fam.members().empty()) return "{}";
  std::string out;
  for (const auto& e : fam.members()) {
    if (!out.empty()) out.push_back(';');
    out += format_event(e);
  }
  return out;
}

inline PrecludedFamily parse_family(OutcomeSpace space, std::string_view text,
                                    std::size_t line = 1, std::size_t column0 = 0) {
  detail::Scanner in(text, line, column0);
  std::vector<Event> events;
  if (!in.at_end()) {
    do {
      events.push_back(detail::scan_event(in, space));
    } while (in.accept(';'));
  }
  if (!in.at_end()) in.fail("expected ';' between precluded events");
  return PrecludedFamily(space, events);
}

/// A subspace of coevents held as a canonical basis, so that equal
/// subspaces have equal bases.
class CoeventSubspace {
 public:
  explicit CoeventSubspace(OutcomeSpace space) : space_(space) {}

  static CoeventSubspace span_of(OutcomeSpace space, const std::vector<Coevent>& gens) {
    std::vector<Gf2Vector> vecs;
    vecs.reserve(gens.size());
    for (const auto& g : gens) {
      if (!(g.space() == space)) throw ShapeError("coevent from another space");
      vecs.push_back(g.coefficients());
    }
    return from_vectors(space, vecs);
  }

  static CoeventSubspace from_vectors(OutcomeSpace space,
                                     const std::vector<Gf2Vector>& vecs) {
    CoeventSubspace s(space);
    for (auto& v : canonical_basis(vecs, space.coevent_dimension())) {
      s.basis_.push_back(Coevent::from_coefficients(space, std::move(v)));
    }
    return s;
  }

  OutcomeSpace space() const noexcept { return space_; }
  const std::vector<Coevent>& basis() const noexcept { return basis_; }
  std::size_t dimension() const noexcept { return basis_.size(); }

  bool contains(const Coevent& phi) const {
    std::vector<Coevent> gens = basis_;
    gens.push_back(phi);
    return span_of(space_, gens).dimension() == dimension();
  }

  bool contains(const CoeventSubspace& other) const {
    std::vector<Coevent> gens = basis_;
    gens.insert(gens.end(), other.basis_.begin(), other.basis_.end());
    return span_of(space_, gens).dimension() == dimension();
  }

  friend bool operator==(const CoeventSubspace& a, const CoeventSubspace& b) {
    return a.space_ == b.space_ && a.basis_ == b.basis_;
  }

 private:
  OutcomeSpace space_;
  std::vector<Coevent> basis_;
};

/// Rows are the evaluation functionals of the precluded events.
inline Gf2Matrix evaluation_matrix(const PrecludedFamily& fam) {
  std::vector<Gf2Vector> rows;
  for (const auto& e : fam.members()) rows.push_back(evaluation_row(e));
  return Gf2Matrix::from_rows(std::move(rows), fam.space().coevent_dimension());
}

inline CoeventSubspace preclusive_basis(const PrecludedFamily& fam) {
  return CoeventSubspace::from_vectors(fam.space(),
                                       null_space_basis(evaluation_matrix(fam)));
}

/// Null space of P(A_1 u ... u A_m).
inline CoeventSubspace precluding_from_null_space(const PrecludedFamily& fam,
                                                  const MasterObservable& obs) {
  const Projection p = obs.projection(fam.union_event());
  return CoeventSubspace::from_vectors(fam.space(), null_space_basis(p.matrix()));
}

/// Range of P(A_1)' ... P(A_m)'.
inline CoeventSubspace precluding_from_range(const PrecludedFamily& fam,
                                             const MasterObservable& obs) {
  const std::size_t d = fam.space().coevent_dimension();
  Gf2Matrix prod = Gf2Matrix::identity(d);
  for (const auto& e : fam.members()) {
    prod = prod * complement(obs.projection(e)).matrix();
  }
  return CoeventSubspace::from_vectors(fam.space(), column_space_basis(prod));
}

/// Computes the precluding subspace both as a null space and as a range and
/// insists they agree.
inline CoeventSubspace precluding_basis(const PrecludedFamily& fam,
                                        const MasterObservable& obs) {
  CoeventSubspace by_null = precluding_from_null_space(fam, obs);
  if (!(by_null == precluding_from_range(fam, obs))) {
    throw Error("internal: precluding characterizations disagree for " +
                format_family(fam));
  }
  return by_null;
}

inline CoeventSubspace precluding_basis(const PrecludedFamily& fam) {
  return precluding_basis(fam, MasterObservable(fam.space()));
}

enum class CoeventClass { preclusive, precluding };

struct Occurrence {
  bool exists = false;
  std::optional<Coevent> witness;
};

/// Evaluation at B is linear, so some member of the subspace has phi(B) = 1
/// iff some basis vector does. The witness is the first such basis vector.
inline Occurrence occurs_in(const CoeventSubspace& subspace, const Event& b) {
  for (const auto& phi : subspace.basis()) {
    if (evaluate(phi, b)) return Occurrence{true, phi};
  }
  return Occurrence{};
}

inline Occurrence occurrence_query(const PrecludedFamily& fam, const Event& b,
                                   CoeventClass mode) {
  return occurs_in(mode == CoeventClass::preclusive ? preclusive_basis(fam)
                                                    : precluding_basis(fam),
                   b);
}

struct DualityReport {
  bool passed = true;
  std::size_t preclusive_dimension = 0;
  std::size_t precluding_dimension = 0;
  /// Precluding subspace is contained in the preclusive subspace.
  bool precluding_within_preclusive = false;
  /// Events B with B - A nonempty whose preclusive witness was missing, or
  /// whose containment witness w* (w the least outcome of B - A) failed.
  std::vector<Event> preclusive_witness_failures;
  /// Events B with a precluding witness although B is inside A.
  std::vector<Event> precluding_witness_failures;
  /// Events with a preclusive witness although B is inside A; these show
  /// the preclusive analogue of the precluding statement fails.
  std::vector<Event> preclusive_inside_union;
  /// Events with B - A nonempty but no precluding witness; these show the
  /// precluding analogue of the preclusive statement fails.
  std::vector<Event> precluding_missing_outside_union;
  std::vector<std::string> failures;
};

inline constexpr std::size_t kMaxDualityOutcomes = 4;

/// Scans every event B and checks: precluding subspace within preclusive;
/// B - A nonempty gives a preclusive witness (in particular w* for w in
/// B - A); a precluding witness forces B - A nonempty. The contrapositives
/// follow from the same scan.
inline DualityReport duality_report(const PrecludedFamily& fam,
                                    const MasterObservable& obs) {
  const OutcomeSpace space = fam.space();
  if (space.size() > kMaxDualityOutcomes) {
    throw CapacityError("duality report scans all events; needs n <= 4");
  }
  DualityReport r;
  const CoeventSubspace preclusive = preclusive_basis(fam);
  const CoeventSubspace precluding = precluding_basis(fam, obs);
  r.preclusive_dimension = preclusive.dimension();
  r.precluding_dimension = precluding.dimension();
  r.precluding_within_preclusive = preclusive.contains(precluding);
  if (!r.precluding_within_preclusive) {
    r.passed = false;
    r.failures.push_back("precluding subspace not contained in preclusive subspace");
  }
  const Event a = fam.union_event();
  for (std::size_t k = 0; k < space.event_count(); ++k) {
    const Event b(space, static_cast<EventMask>(k));
    const EventMask outside = b.mask() & ~a.mask();
    const Occurrence by_preclusive = occurs_in(preclusive, b);
    const Occurrence by_precluding = occurs_in(precluding, b);

    if (outside != 0) {
      const auto w = static_cast<std::size_t>(std::countr_zero(outside)) + 1;
      const Coevent star = Coevent::containment(space, w);
      bool star_ok = evaluate(star, b);
      for (const auto& e : fam.members()) star_ok = star_ok && !evaluate(star, e);
      if (!by_preclusive.exists || !star_ok) {
        r.passed = false;
        r.preclusive_witness_failures.push_back(b);
        r.failures.push_back("no preclusive witness for " + format_event(b));
      }
      if (!by_precluding.exists) r.precluding_missing_outside_union.push_back(b);
    } else {
      if (by_precluding.exists) {
        r.passed = false;
        r.precluding_witness_failures.push_back(b);
        r.failures.push_back("precluding witness for " + format_event(b) +
                             " inside the precluded union");
      }
      if (by_preclusive.exists) r.preclusive_inside_union.push_back(b);
    }
  }
  return r;
}

inline DualityReport duality_report(const PrecludedFamily& fam) {
  return duality_report(fam, MasterObservable(fam.space()));
}

}  // namespace anhom

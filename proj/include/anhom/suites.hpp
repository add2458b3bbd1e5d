#pragma once

// Exhaustive property suites. Each suite enumerates every object of a small
// outcome space and checks one group of identities, recording a named check
// with a witness whenever something fails.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "anhom/coevent.hpp"
#include "anhom/error.hpp"
#include "anhom/event.hpp"
#include "anhom/gf2.hpp"
#include "anhom/lattice.hpp"
#include "anhom/preclusion.hpp"
#include "anhom/projection.hpp"
#include "anhom/truth_table.hpp"

namespace anhom {

enum class SuiteName { interference, coevent, projection, master, preclusion, lattice, all };

inline std::string_view suite_name(SuiteName s) {
  switch (s) {
    case SuiteName::interference: return "interference";
    case SuiteName::coevent: return "coevent";
    case SuiteName::projection: return "projection";
    case SuiteName::master: return "master";
    case SuiteName::preclusion: return "preclusion";
    case SuiteName::lattice: return "lattice";
    case SuiteName::all: return "all";
  }
  return "?";
}

inline std::optional<SuiteName> parse_suite_name(std::string_view s) {
  for (auto v : {SuiteName::interference, SuiteName::coevent, SuiteName::projection,
                 SuiteName::master, SuiteName::preclusion, SuiteName::lattice,
                 SuiteName::all}) {
    if (suite_name(v) == s) return v;
  }
  return std::nullopt;
}

struct SuiteCheck {
  std::string suite;
  std::string name;
  bool passed = true;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::size_t n = 0;
  bool passed = true;
  std::vector<SuiteCheck> checks;

  void add(std::string name, bool ok, std::string detail) {
    passed = passed && ok;
    checks.push_back(SuiteCheck{suite, std::move(name), ok, std::move(detail)});
  }

  void merge(const SuiteReport& other) {
    passed = passed && other.passed;
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
};

inline constexpr std::size_t kMaxSuiteOutcomes = 4;

namespace detail {

inline void require_suite_capacity(std::size_t n, std::size_t limit, std::string_view suite) {
  if (n == 0) throw ArgumentError("suite needs n >= 1");
  if (n > limit) {
    throw CapacityError(std::string(suite) + " suite is exhaustive; needs n <= " +
                        std::to_string(limit));
  }
}

/// Every coevent over `space`, in increasing coefficient-integer order.
inline std::vector<Coevent> all_coevents(OutcomeSpace space) {
  const std::size_t d = space.coevent_dimension();
  std::vector<Coevent> out;
  out.reserve(std::size_t{1} << d);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << d); ++bits) {
    Gf2Vector v(d);
    for (std::size_t k = 0; k < d; ++k) v.set(k, (bits >> k) & 1u);
    out.push_back(Coevent::from_coefficients(space, std::move(v)));
  }
  return out;
}

/// Every family of m >= 2 nonempty, mutually disjoint parts, each family
/// listed once (parts ordered by their least outcome).
inline std::vector<std::vector<Event>> disjoint_families(OutcomeSpace space) {
  const std::size_t n = space.size();
  std::vector<std::vector<Event>> out;
  std::vector<std::size_t> label(n, 0);  // 0 = unused, k = part k
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t parts) {
    if (pos == n) {
      if (parts < 2) return;
      std::vector<EventMask> masks(parts, 0);
      for (std::size_t i = 0; i < n; ++i) {
        if (label[i] != 0) masks[label[i] - 1] |= EventMask{1} << i;
      }
      std::vector<Event> fam;
      for (auto m : masks) fam.emplace_back(space, m);
      out.push_back(std::move(fam));
      return;
    }
    for (std::size_t l = 0; l <= parts + 1 && l <= n; ++l) {
      label[pos] = l;
      rec(pos + 1, std::max(parts, l));
    }
  };
  rec(0, 0);
  return out;
}

/// Gaussian binomial [d choose k] at q = 2.
inline std::uint64_t gaussian_binomial2(std::size_t d, std::size_t k) {
  std::uint64_t num = 1, den = 1;
  for (std::size_t i = 0; i < k; ++i) {
    num *= (std::uint64_t{1} << (d - i)) - 1;
    den *= (std::uint64_t{1} << (i + 1)) - 1;
  }
  return num / den;
}

/// Number of idempotent d x d matrices over GF(2): one per (range, kernel)
/// pair of complementary subspaces.
inline std::uint64_t idempotent_count(std::size_t d) {
  std::uint64_t total = 0;
  for (std::size_t k = 0; k <= d; ++k) {
    total += gaussian_binomial2(d, k) * (std::uint64_t{1} << (k * (d - k)));
  }
  return total;
}

/// Master projection action written out basis vector by basis vector:
/// w_k* -> w_k* for k in A, w_k* -> sum over i in A of w_i* w_k* for k not
/// in A, w_j* w_k* fixed when {j,k} meets A and killed otherwise.
inline Gf2Matrix master_closed_form(const Event& a) {
  const OutcomeSpace space = a.space();
  const std::size_t n = space.size();
  const std::size_t d = space.coevent_dimension();
  Gf2Matrix m(d, d);
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t col = coefficient::linear(n, k);
    if (a.contains(k)) {
      m.set(col, col, true);
    } else {
      for (auto i : a.outcomes()) m.set(coefficient::quadratic(n, i, k), col, true);
    }
  }
  for (const auto& [j, k] : coefficient::pairs(n)) {
    if (a.contains(j) || a.contains(k)) {
      const std::size_t col = coefficient::quadratic(n, j, k);
      m.set(col, col, true);
    }
  }
  return m;
}

inline std::string describe(const std::vector<Event>& events) {
  std::string out;
  for (const auto& e : events) {
    if (!out.empty()) out += ";";
    out += format_event(e);
  }
  return out.empty() ? "{}" : out;
}

}  // namespace detail

using PairExpansionCheck = std::function<bool(const TruthTable&, std::span<const std::size_t>)>;

inline SuiteReport interference_suite(std::size_t n) {
  detail::require_suite_capacity(n, kMaxSuiteOutcomes, "interference");
  const OutcomeSpace space(n);
  SuiteReport r{"interference", n, true, {}};

  std::size_t tables = 0, grade2 = 0, grade1 = 0, converse_failures = 0;
  std::size_t two_point_mismatch = 0, homs = 0, decomp_failures = 0;
  std::optional<std::string> mismatch_witness;
  std::set<Gf2Vector> hom_tables;
  for_each_table(space, [&](const TruthTable& t) {
    ++tables;
    const ClassificationReport c = classify(t);
    if (c.grade2_additive != c.two_point_condition) {
      ++two_point_mismatch;
      if (!mismatch_witness) mismatch_witness = format_table(t);
    }
    if (c.grade2_additive) ++grade2;
    if (c.grade1_additive) {
      ++grade1;
      if (!c.grade2_additive) {
        ++converse_failures;  // would contradict grade-1 => grade-2
      }
    }
    if (c.homomorphism) {
      ++homs;
      hom_tables.insert(t.values());
    }
    if (c.grade1_additive && !t.is_zero()) {
      TruthTable rebuilt(space);
      for (auto o : decompose_additive(t)) rebuilt += TruthTable::containment(space, o);
      if (!(rebuilt == t)) ++decomp_failures;
    }
    if (c.multiplicative && !t.is_zero()) {
      const Event b = decompose_multiplicative(t);
      const TruthTable rebuilt = TruthTable::from_function(
          space, [&](EventMask m) { return (b.mask() & ~m) == 0; });
      if (!(rebuilt == t)) ++decomp_failures;
    }
  });

  r.add("grade-2 additive <=> two-point interference condition",
        two_point_mismatch == 0,
        std::to_string(tables) + " tables, " + std::to_string(two_point_mismatch) +
            " mismatches" + (mismatch_witness ? ", first " + *mismatch_witness : ""));
  r.add("grade-1 additive => grade-2 additive", converse_failures == 0,
        std::to_string(grade1) + " grade-1 tables");
  if (n >= 2) {
    r.add("grade-2 additive does not imply grade-1 additive", grade2 > grade1,
          std::to_string(grade2 - grade1) + " grade-2 tables are not grade-1");
  }
  const std::uint64_t expected = std::uint64_t{1} << space.coevent_dimension();
  r.add("grade-2 table count = 2^(n(n+1)/2)", grade2 == expected,
        std::to_string(grade2) + " tables, expected " + std::to_string(expected));
  std::set<Gf2Vector> stars;
  for (std::size_t i = 1; i <= n; ++i) stars.insert(TruthTable::containment(space, i).values());
  r.add("homomorphisms are exactly the containment maps", hom_tables == stars,
        std::to_string(homs) + " homomorphisms");
  r.add("additive and multiplicative decompositions re-synthesize the table",
        decomp_failures == 0, std::to_string(decomp_failures) + " failures");
  return r;
}

inline SuiteReport coevent_suite(std::size_t n, const PairExpansionCheck& pair_expansion) {
  detail::require_suite_capacity(n, kMaxSuiteOutcomes, "coevent");
  const OutcomeSpace space(n);
  SuiteReport r{"coevent", n, true, {}};
  const auto coevents = detail::all_coevents(space);

  // Two independent enumerations of the same set.
  std::set<Gf2Vector> from_polys;
  std::size_t round_trip_failures = 0;
  for (const auto& phi : coevents) {
    const TruthTable t = to_table(phi);
    from_polys.insert(t.values());
    if (!(from_table(t) == phi)) ++round_trip_failures;
  }
  std::set<Gf2Vector> from_brute;
  for (const auto& t : enumerate_tables(space, [](const ClassificationReport& c) {
         return c.grade2_additive;
       })) {
    from_brute.insert(t.values());
  }
  r.add("coevent tables = grade-2 tables", from_polys == from_brute,
        std::to_string(from_polys.size()) + " coevents = " +
            std::to_string(from_brute.size()) + " grade-2 tables");
  r.add("from_table(to_table(phi)) = phi", round_trip_failures == 0,
        std::to_string(coevents.size()) + " coevents, " +
            std::to_string(round_trip_failures) + " failures");

  const auto families = detail::disjoint_families(space);
  std::size_t partition_failures = 0, expansion_failures = 0, expansion_checked = 0;
  std::optional<std::string> witness31, witness22;
  for (const auto& phi : coevents) {
    const TruthTable t = to_table(phi);
    for (const auto& fam : families) {
      if (!verify_partition_identity(t, fam)) {
        ++partition_failures;
        if (!witness31) witness31 = format_coevent(phi) + " on " + detail::describe(fam);
      }
    }
    for (std::size_t s = 0; s < space.event_count(); ++s) {
      const Event set(space, static_cast<EventMask>(s));
      if (set.size() < 2) continue;
      const auto outcomes = set.outcomes();
      ++expansion_checked;
      if (!pair_expansion(t, outcomes)) {
        ++expansion_failures;
        if (!witness22) witness22 = format_coevent(phi) + " on " + format_event(set);
      }
    }
  }
  r.add("partition identity for every coevent and disjoint family", partition_failures == 0,
        std::to_string(families.size()) + " families, " + std::to_string(partition_failures) +
            " failures" + (witness31 ? ", first " + *witness31 : ""));
  r.add("singleton/doubleton identity for every coevent and outcome set",
        expansion_failures == 0,
        std::to_string(expansion_checked) + " checks, " + std::to_string(expansion_failures) +
            " failures" + (witness22 ? ", first " + *witness22 : ""));

  // Interpolation is a bijection from singleton/doubleton data to coevents.
  std::set<Gf2Vector> images;
  std::size_t value_failures = 0;
  const std::size_t pairs = space.pair_count();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << space.coevent_dimension()); ++bits) {
    Gf2Vector s(n), d(pairs);
    for (std::size_t i = 0; i < n; ++i) s.set(i, (bits >> i) & 1u);
    for (std::size_t p = 0; p < pairs; ++p) d.set(p, (bits >> (n + p)) & 1u);
    const Coevent phi = interpolate(space, s, d);
    images.insert(phi.coefficients());
    for (std::size_t i = 1; i <= n; ++i) {
      if (evaluate(phi, Event::singleton(space, i)) != s.get(i - 1)) ++value_failures;
    }
    for (const auto& [i, j] : coefficient::pairs(n)) {
      if (evaluate(phi, Event::of(space, {i, j})) != d.get(coefficient::pair(n, i, j))) {
        ++value_failures;
      }
    }
  }
  r.add("interpolation is a bijection onto the coevents",
        value_failures == 0 && images.size() == coevents.size(),
        std::to_string(images.size()) + " distinct images, " +
            std::to_string(value_failures) + " value mismatches");

  std::size_t lift_failures = 0, lift_not_additive = 0;
  for (const auto& phi : coevents) {
    const PairAdditiveMap lambda = lift_to_product(phi);
    for (std::size_t k = 0; k < space.event_count(); ++k) {
      const Event a(space, static_cast<EventMask>(k));
      if (lambda(square(a)) != evaluate(phi, a)) ++lift_failures;
    }
    if (n <= 3 && !is_grade1_additive(lambda.to_table())) ++lift_not_additive;
  }
  r.add("lambda(A x A) = phi(A)", lift_failures == 0,
        std::to_string(lift_failures) + " failures");
  if (n <= 3) {
    r.add("lambda is grade-1 additive on the product space", lift_not_additive == 0,
          std::to_string(lift_not_additive) + " failures");
  }

  // Worked five-outcome example.
  const OutcomeSpace five(5);
  const Coevent psi = interpolate(five, Gf2Vector::from_string("11000"),
                                  Gf2Vector::from_string("1000100001"));
  const Coevent expected = parse_coevent(
      five, "w1* + w2* + w1*w2* + w4*w5* + w1*w3* + w1*w4* + w1*w5* + w2*w4* + w2*w5*");
  r.add("five-outcome interpolation example", psi == expected, format_coevent(psi));
  return r;
}

inline SuiteReport coevent_suite(std::size_t n) {
  return coevent_suite(n, [](const TruthTable& t, std::span<const std::size_t> o) {
    return verify_pair_expansion(t, o);
  });
}

namespace detail {

inline std::vector<Projection> to_projections(OutcomeSpace space,
                                              const std::vector<PackedSquare>& packed) {
  std::vector<Projection> out;
  out.reserve(packed.size());
  for (const auto& p : packed) out.push_back(make_projection(space, p.to_matrix()));
  return out;
}

/// Compatibility by search: some R in `all` with P + R and Q + R in `all`
/// and P + R, Q + R, R mutually orthogonal.
inline bool compatible_by_search(const std::vector<PackedSquare>& all,
                                 const PackedSquare& p, const PackedSquare& q) {
  auto orth = [](const PackedSquare& a, const PackedSquare& b) {
    return (a * b).bits() == 0 && (b * a).bits() == 0;
  };
  for (const auto& r : all) {
    const PackedSquare p1 = p + r;
    const PackedSquare q1 = q + r;
    if (!p1.is_idempotent() || !q1.is_idempotent()) continue;
    if (orth(p1, q1) && orth(p1, r) && orth(q1, r)) return true;
  }
  return false;
}

}  // namespace detail

inline SuiteReport projection_suite(std::size_t n) {
  detail::require_suite_capacity(n, kMaxSuiteOutcomes, "projection");
  SuiteReport r{"projection", n, true, {}};
  // All idempotents are enumerable only for D <= 4, i.e. n <= 2; larger n
  // fall back to the two-outcome space for the full scan.
  const OutcomeSpace full(std::min<std::size_t>(n, 2));
  const std::size_t d = full.coevent_dimension();

  const auto brute = enumerate_idempotents_bruteforce(d);
  const auto structured = enumerate_idempotents(d);
  r.add("idempotent enumeration D=" + std::to_string(d),
        brute == structured && brute.size() == detail::idempotent_count(d),
        std::to_string(brute.size()) + " idempotents of " +
            std::to_string(std::uint64_t{1} << (d * d)) + " matrices");

  std::set<std::uint64_t> bits;
  std::vector<std::size_t> rank_hist(d + 1, 0);
  for (const auto& p : brute) {
    bits.insert(p.bits());
    ++rank_hist[p.rank()];
  }
  bool closed = true;
  for (const auto& p : brute) {
    closed = closed && bits.count((p + PackedSquare::identity(d)).bits()) == 1;
  }
  bool symmetric = true;
  for (std::size_t k = 0; k <= d; ++k) symmetric = symmetric && rank_hist[k] == rank_hist[d - k];
  r.add("idempotents closed under P -> I + P", closed, "");
  r.add("rank-r and rank-(D-r) idempotent counts agree", symmetric, "");

  const auto projs = detail::to_projections(full, brute);
  const OrthomodularReport om = verify_orthomodular(projs);
  r.add("orthomodular poset axioms over all idempotents", om.passed,
        std::to_string(om.pairs_checked) + " pairs" +
            (om.failures.empty() ? "" : ", first failure " + om.failures.front()));

  std::size_t orth_mismatch = 0, compat_mismatch = 0, meet_join_failures = 0, commuting = 0;
  for (std::size_t a = 0; a < brute.size(); ++a) {
    for (std::size_t b = 0; b < brute.size(); ++b) {
      const PosetRelationReport rel = relations(projs[a], projs[b]);
      const PackedSquare pq = brute[a] * brute[b];
      const PackedSquare qp = brute[b] * brute[a];
      if (rel.orthogonal != (pq.bits() == 0 && qp.bits() == 0)) ++orth_mismatch;
      if (rel.compatible != detail::compatible_by_search(brute, brute[a], brute[b])) {
        ++compat_mismatch;
      }
      if (!rel.commute) continue;
      ++commuting;
      // Meet PQ and join P + Q + PQ are the glb and lub among all projections.
      const MeetJoin mj = meet_join_commuting(projs[a], projs[b]);
      const PackedSquare meet = PackedSquare::from_matrix(mj.meet.matrix());
      const PackedSquare join = PackedSquare::from_matrix(mj.join.matrix());
      bool ok = meet.is_idempotent() && join.is_idempotent() &&
                packed_leq(meet, brute[a]) && packed_leq(meet, brute[b]) &&
                packed_leq(brute[a], join) && packed_leq(brute[b], join);
      for (const auto& x : brute) {
        if (packed_leq(x, brute[a]) && packed_leq(x, brute[b]) && !packed_leq(x, meet)) ok = false;
        if (packed_leq(brute[a], x) && packed_leq(brute[b], x) && !packed_leq(join, x)) ok = false;
      }
      if (!ok) ++meet_join_failures;
    }
  }
  r.add("orthogonal <=> PQ = QP = 0", orth_mismatch == 0,
        std::to_string(orth_mismatch) + " mismatches");
  r.add("compatible (by decomposition search) <=> PQ = QP", compat_mismatch == 0,
        std::to_string(compat_mismatch) + " mismatches");
  r.add("commuting pairs: meet = PQ, join = P + Q + PQ", meet_join_failures == 0,
        std::to_string(commuting) + " commuting pairs, " +
            std::to_string(meet_join_failures) + " failures");

  if (n > 2) {
    // The master projections of the requested space and their complements.
    const OutcomeSpace space(n);
    const MasterObservable obs(space);
    std::vector<Projection> family;
    for (std::size_t k = 0; k < space.event_count(); ++k) {
      const Projection p = obs.projection(Event(space, static_cast<EventMask>(k)));
      family.push_back(p);
      family.push_back(complement(p));
    }
    const OrthomodularReport fam = verify_orthomodular(family);
    r.add("orthomodular axioms over master projections and complements", fam.passed,
          std::to_string(fam.pairs_checked) + " pairs");
  }
  return r;
}

inline SuiteReport master_suite(std::size_t n) {
  detail::require_suite_capacity(n, kMaxSuiteOutcomes, "master");
  const OutcomeSpace space(n);
  const MasterObservable obs(space);
  SuiteReport r{"master", n, true, {}};

  {
    const OutcomeSpace two(2);
    const MasterObservable m2(two);
    const Gf2Matrix p1 = m2.generator(1).matrix();
    const Gf2Matrix p2 = m2.generator(2).matrix();
    const Gf2Matrix q = Gf2Matrix::parse("100\n000\n000");
    const bool ok = p1 == Gf2Matrix::parse("100\n000\n011") &&
                    p2 == Gf2Matrix::parse("000\n010\n101") &&
                    p1 * p2 == Gf2Matrix::parse("000\n000\n111") &&
                    p1 + p2 + p1 * p2 == Gf2Matrix::identity(3) &&
                    (q * p2).is_zero() && p2 * q == Gf2Matrix::parse("000\n000\n100");
    r.add("two-outcome fixture matrices", ok,
          "P(w1)P(w2) = " + detail::inline_matrix(p1 * p2));
  }

  std::vector<Projection> p;
  p.reserve(space.event_count());
  for (std::size_t k = 0; k < space.event_count(); ++k) {
    p.push_back(obs.projection(Event(space, static_cast<EventMask>(k))));
  }
  const EventMask full = space.full_mask();

  std::size_t not_idempotent = 0, closed_form_mismatch = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (!detail::is_idempotent(p[k].matrix())) ++not_idempotent;
    if (!(p[k].matrix() == detail::master_closed_form(Event(space, static_cast<EventMask>(k))))) {
      ++closed_form_mismatch;
    }
  }
  r.add("every P(A) is idempotent", not_idempotent == 0, "");
  r.add("P(A) agrees with its basis-by-basis action", closed_form_mismatch == 0, "");
  r.add("P({}) = 0 and P(Omega) = I",
        p[0].matrix().is_zero() && p[full] == Projection::identity(space), "");

  std::size_t union_failures = 0, monotone_failures = 0, commute_failures = 0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    for (std::size_t b = 0; b < p.size(); ++b) {
      const Gf2Matrix& pa = p[a].matrix();
      const Gf2Matrix& pb = p[b].matrix();
      const Gf2Matrix prod = pa * pb;
      if (!(prod == pb * pa)) ++commute_failures;
      const Gf2Matrix join = pa + pb + prod;
      const bool join_ok = p[a | b].matrix() == join &&
                           meet_join_commuting(p[a], p[b]).join.matrix() == join;
      if (!join_ok) ++union_failures;
      const bool subset = (a & ~b) == 0;
      if (leq(p[a], p[b]) != subset) ++monotone_failures;
    }
  }
  r.add("P(A u B) = P(A) v P(B) = P(A) + P(B) + P(A)P(B)", union_failures == 0,
        std::to_string(union_failures) + " failures");
  r.add("P(A) <= P(B) <=> A subset of B", monotone_failures == 0,
        std::to_string(monotone_failures) + " failures");
  r.add("P(A)P(B) = P(B)P(A)", commute_failures == 0,
        std::to_string(commute_failures) + " failures");

  std::size_t grade2_failures = 0, triples = 0;
  for (EventMask a = 0; a <= full; ++a) {
    detail::for_each_subset(full & ~a, [&](EventMask b) {
      detail::for_each_subset(full & ~(a | b), [&](EventMask c) {
        ++triples;
        const Gf2Matrix rhs = p[a | b].matrix() + p[a | c].matrix() + p[b | c].matrix() +
                              p[a].matrix() + p[b].matrix() + p[c].matrix();
        if (!(p[a | b | c].matrix() == rhs)) ++grade2_failures;
      });
    });
  }
  r.add("P is grade-2 additive", grade2_failures == 0,
        std::to_string(triples) + " disjoint triples, " + std::to_string(grade2_failures) +
            " failures");

  if (n >= 2) {
    const EventMask a = 1, b = 2;
    const bool not_mult = !(p[a & b].matrix() == p[a].matrix() * p[b].matrix());
    const bool not_add = !(p[a ^ b].matrix() == p[a].matrix() + p[b].matrix());
    r.add("P is neither additive nor multiplicative ({1}, {2})", not_mult && not_add,
          "P({1}{2}) = 0, P({1})P({2}) = " +
              detail::inline_matrix(p[a].matrix() * p[b].matrix()));
  }

  // Observables: P^f over the range of f = (1, 2, ..., 1, 2).
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = static_cast<double>(i % 2 + 1);
  const RandomVariable f(space, values);
  const double all_values[] = {1.0, 2.0};
  const double none[] = {7.0};
  const bool obs_ok = observable(obs, f, all_values) == Projection::identity(space) &&
                      observable(obs, f, none) == Projection::zero(space);
  r.add("P^f is unital and vanishes off the range of f", obs_ok, "");
  return r;
}

inline SuiteReport preclusion_suite(std::size_t n) {
  detail::require_suite_capacity(n, kMaxSuiteOutcomes, "preclusion");
  const OutcomeSpace space(n);
  const MasterObservable obs(space);
  const std::size_t d = space.coevent_dimension();
  SuiteReport r{"preclusion", n, true, {}};

  std::vector<Event> nonempty;
  for (std::size_t k = 1; k < space.event_count(); ++k) {
    nonempty.emplace_back(space, static_cast<EventMask>(k));
  }
  std::vector<std::vector<Event>> families{{}};
  for (std::size_t i = 0; i < nonempty.size(); ++i) {
    families.push_back({nonempty[i]});
    for (std::size_t j = i + 1; j < nonempty.size(); ++j) {
      families.push_back({nonempty[i], nonempty[j]});
      for (std::size_t k = j + 1; k < nonempty.size(); ++k) {
        families.push_back({nonempty[i], nonempty[j], nonempty[k]});
      }
    }
  }

  std::size_t duality_failures = 0, route_mismatch = 0, union_mismatch = 0, dim_failures = 0;
  std::size_t cor_a_failures = 0;
  bool saw_preclusive_inside = false, saw_precluding_missing = false;
  std::optional<std::string> witness;
  for (const auto& members : families) {
    const PrecludedFamily fam(space, members);
    const DualityReport dr = duality_report(fam, obs);
    if (!dr.passed) {
      ++duality_failures;
      if (!witness) witness = format_family(fam) + ": " + dr.failures.front();
    }
    saw_preclusive_inside = saw_preclusive_inside || !dr.preclusive_inside_union.empty();
    saw_precluding_missing =
        saw_precluding_missing || !dr.precluding_missing_outside_union.empty();
    if (!(precluding_from_null_space(fam, obs) == precluding_from_range(fam, obs))) {
      ++route_mismatch;
    }
    const PrecludedFamily merged(space, {fam.union_event()});
    if (!(precluding_basis(fam, obs) == precluding_basis(merged, obs))) ++union_mismatch;
    const CoeventSubspace preclusive = preclusive_basis(fam);
    if (preclusive.dimension() + fam.members().size() < d) ++dim_failures;
    for (std::size_t k = 0; k < space.event_count(); ++k) {
      const Event b(space, static_cast<EventMask>(k));
      if (!occurs_in(preclusive, b).exists && !b.is_subset_of(fam.union_event())) {
        ++cor_a_failures;
      }
    }
  }
  r.add("duality: precluding within preclusive, witnesses vs B - A",
        duality_failures == 0,
        std::to_string(families.size()) + " families, " + std::to_string(duality_failures) +
            " failures" + (witness ? ", first " + *witness : ""));
  r.add("no preclusive witness on B forces B within A", cor_a_failures == 0,
        std::to_string(cor_a_failures) + " failures");
  r.add("null-space and range characterizations of precluding agree",
        route_mismatch == 0, std::to_string(route_mismatch) + " mismatches");
  r.add("precluding subspace depends only on the union", union_mismatch == 0,
        std::to_string(union_mismatch) + " mismatches");
  r.add("preclusive dimension >= D - m", dim_failures == 0, "");
  if (n >= 2) {
    r.add("preclusive witness can exist inside the precluded union", saw_preclusive_inside, "");
    r.add("precluding witness can be missing outside the precluded union",
          saw_precluding_missing, "");
  }

  // P(A) phi = 0 forces phi(A) = 0.
  std::size_t annihilated_failures = 0;
  const auto coevents = detail::all_coevents(space);
  for (std::size_t k = 0; k < space.event_count(); ++k) {
    const Event a(space, static_cast<EventMask>(k));
    const Projection pa = obs.projection(a);
    for (const auto& phi : coevents) {
      if (pa.apply(phi).is_zero() && evaluate(phi, a)) ++annihilated_failures;
    }
  }
  r.add("P(A) phi = 0 implies phi(A) = 0", annihilated_failures == 0,
        std::to_string(annihilated_failures) + " failures");
  return r;
}

inline constexpr std::size_t kMaxLatticeSuiteOutcomes = 3;
inline constexpr std::uint64_t kLatticeSuiteSeed = 20091;
inline constexpr std::size_t kLatticeSuiteBudget = 4;

inline SuiteReport lattice_suite(std::size_t n) {
  detail::require_suite_capacity(n, kMaxLatticeSuiteOutcomes, "lattice");
  const OutcomeSpace space(n);
  const LatticeMode mode =
      space.coevent_dimension() <= 4 ? LatticeMode::exhaustive : LatticeMode::random;
  SuiteReport r{"lattice", n, true, {}};
  const LatticeReport first = lattice_search(space, mode, kLatticeSuiteBudget, kLatticeSuiteSeed);
  const LatticeReport second = lattice_search(space, mode, kLatticeSuiteBudget, kLatticeSuiteSeed);
  const bool same = first.pairs_examined == second.pairs_examined &&
                    first.pairs_with_meet == second.pairs_with_meet &&
                    first.pairs_without_meet == second.pairs_without_meet &&
                    first.verdict() == second.verdict();
  r.add("verdict is reproducible", same, first.verdict());
  r.add("every reported meet is the greatest lower bound", first.meets_verified, "");
  r.add("commuting pairs have meet PQ", first.commuting_meets_are_products,
        std::to_string(first.commuting_pairs) + " commuting pairs");
  if (mode == LatticeMode::exhaustive) {
    r.add("every ordered pair examined",
          first.pairs_examined == first.projection_count * first.projection_count,
          std::to_string(first.pairs_examined) + " pairs");
  }
  return r;
}

inline SuiteReport run_suite(SuiteName name, std::size_t n) {
  switch (name) {
    case SuiteName::interference: return interference_suite(n);
    case SuiteName::coevent: return coevent_suite(n);
    case SuiteName::projection: return projection_suite(n);
    case SuiteName::master: return master_suite(n);
    case SuiteName::preclusion: return preclusion_suite(n);
    case SuiteName::lattice: return lattice_suite(n);
    case SuiteName::all: {
      // The lattice suite runs at n <= 3 at most; larger spaces are out of
      // reach of the projection scan.
      SuiteReport all{"all", n, true, {}};
      all.merge(interference_suite(n));
      all.merge(coevent_suite(n));
      all.merge(projection_suite(n));
      all.merge(master_suite(n));
      all.merge(preclusion_suite(n));
      all.merge(lattice_suite(std::min(n, kMaxLatticeSuiteOutcomes)));
      return all;
    }
  }
  throw ArgumentError("unknown suite");
}

}  // namespace anhom

// Command-line front end.
//
//   anhom classify "w1* + w1*w2*" --n 3
//   anhom preclusion problem.txt
//   anhom occurs --n 3 --precluded "{1}" --query "{1,2}" --mode precluding
//   anhom verify --suite all --n 3
//   anhom lattice-search --n 2 --mode exhaustive
//
// Exit status: 0 success, 1 property failure, 2 usage or parse error.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "anhom/coevent.hpp"
#include "anhom/error.hpp"
#include "anhom/lattice.hpp"
#include "anhom/preclusion.hpp"
#include "anhom/problem.hpp"
#include "anhom/projection.hpp"
#include "anhom/suites.hpp"
#include "anhom/truth_table.hpp"

using json = nlohmann::ordered_json;
using namespace anhom;

namespace {

constexpr int kOk = 0;
constexpr int kPropertyFailure = 1;
constexpr int kUsageError = 2;

struct Options {
  std::string input;
  std::optional<std::size_t> n;
  std::optional<std::string> precluded;
  std::optional<std::string> query;
  std::string mode;
  std::string suite = "all";
  std::size_t budget = 1000;
  std::uint64_t seed = 1;
  bool json = false;
  bool close_disjoint_unions = false;
  std::string expression;
  std::vector<std::string> terms;
};

std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Problem from the input file (or stdin), then overridden by flags.
ProblemSpec load_problem(const Options& opt) {
  ProblemSpec spec;
  const bool flags_only = opt.input.empty() && opt.n.has_value();
  if (!flags_only) {
    std::string text;
    if (opt.input.empty() || opt.input == "-") {
      text = read_all(std::cin);
    } else {
      std::ifstream f(opt.input);
      if (!f) throw ArgumentError("cannot open " + opt.input);
      text = read_all(f);
    }
    spec = parse_problem(text);
  }
  if (opt.n) {
    if (*opt.n < 1 || *opt.n > kMaxOutcomes) {
      throw ArgumentError("--n must be between 1 and " + std::to_string(kMaxOutcomes));
    }
    if (!flags_only && *opt.n != spec.n) {
      throw ArgumentError("--n " + std::to_string(*opt.n) + " conflicts with n = " +
                          std::to_string(spec.n) + " in " + opt.input);
    }
    spec.n = *opt.n;
  }
  const OutcomeSpace space = spec.space();
  if (opt.precluded) spec.precluded = parse_family(space, *opt.precluded);
  if (spec.precluded && opt.close_disjoint_unions) spec.precluded->close_disjoint_unions();
  if (opt.query) spec.query = detail::parse_event_list(space, detail::RawLine{*opt.query, 1, 0});
  return spec;
}

std::vector<std::string> event_list(const std::vector<Event>& events) {
  std::vector<std::string> out;
  for (const auto& e : events) out.push_back(format_event(e));
  return out;
}

std::vector<std::string> coevent_list(const CoeventSubspace& s) {
  std::vector<std::string> out;
  for (const auto& c : s.basis()) out.push_back(format_coevent(c));
  return out;
}

void print_basis(std::ostream& os, const char* label, const CoeventSubspace& s) {
  os << label << " (dimension " << s.dimension() << "):\n";
  if (s.dimension() == 0) os << "  0\n";
  for (const auto& c : s.basis()) os << "  " << format_coevent(c) << "\n";
}

json flags_json(const ClassificationReport& r) {
  return json{{"unital", r.unital},
              {"grade1_additive", r.grade1_additive},
              {"multiplicative", r.multiplicative},
              {"grade2_additive", r.grade2_additive},
              {"homomorphism", r.homomorphism},
              {"two_point_condition", r.two_point_condition}};
}

int cmd_classify(const Options& opt) {
  if (!opt.n) throw ArgumentError("classify needs --n");
  const OutcomeSpace space(*opt.n);
  const std::string& text = opt.expression;
  const bool is_table = text.find('[') != std::string::npos;
  const TruthTable t = is_table ? parse_table(space, text) : to_table(parse_coevent(space, text));
  const ClassificationReport r = classify(t);
  json j{{"n", space.size()}, {"table", format_table(t)}, {"flags", flags_json(r)}};
  if (r.grade2_additive) j["coevent"] = format_coevent(from_table(t));
  if (r.grade1_additive && !t.is_zero()) j["additive_outcomes"] = decompose_additive(t);
  if (r.multiplicative && !t.is_zero()) j["multiplicative_event"] = format_event(decompose_multiplicative(t));

  if (opt.json) {
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << "table: " << j["table"].get<std::string>() << "\n";
  for (const auto& [k, v] : j["flags"].items()) std::cout << k << ": " << (v.get<bool>() ? "yes" : "no") << "\n";
  if (j.contains("coevent")) std::cout << "coevent: " << j["coevent"].get<std::string>() << "\n";
  if (j.contains("additive_outcomes")) {
    std::cout << "sum of containment maps:";
    for (auto o : j["additive_outcomes"]) std::cout << " w" << o.get<std::size_t>() << "*";
    std::cout << "\n";
  }
  if (j.contains("multiplicative_event")) {
    std::cout << "product over: " << j["multiplicative_event"].get<std::string>() << "\n";
  }
  return kOk;
}

// Positional events with value 1; every other singleton and doubleton is 0.
int cmd_interpolate(const Options& opt) {
  if (!opt.n) throw ArgumentError("interpolate needs --n");
  const OutcomeSpace space(*opt.n);
  const std::size_t n = space.size();
  Gf2Vector singles(n);
  Gf2Vector doubles(space.pair_count());
  for (const auto& term : opt.terms) {
    const PrecludedFamily events = parse_family(space, term);
    for (const auto& e : events.members()) {
      const auto o = e.outcomes();
      if (o.size() == 1) {
        singles.set(o[0] - 1, true);
      } else if (o.size() == 2) {
        doubles.set(coefficient::pair(n, o[0], o[1]), true);
      } else {
        throw ArgumentError("interpolate takes singletons and doubletons, got " + format_event(e));
      }
    }
  }
  const Coevent phi = interpolate(space, singles, doubles);
  if (opt.json) {
    std::cout << json{{"n", n}, {"coevent", format_coevent(phi)}, {"table", format_table(to_table(phi))}}.dump(2)
              << "\n";
  } else {
    std::cout << format_coevent(phi) << "\n";
  }
  return kOk;
}

int cmd_preclusion(const Options& opt) {
  const ProblemSpec spec = load_problem(opt);
  const OutcomeSpace space = spec.space();
  const PrecludedFamily fam = spec.precluded.value_or(PrecludedFamily(space));
  const MasterObservable obs(space);
  const CoeventSubspace preclusive = preclusive_basis(fam);
  const CoeventSubspace precluding = precluding_basis(fam, obs);
  std::optional<DualityReport> duality;
  if (space.size() <= kMaxDualityOutcomes) duality = duality_report(fam, obs);

  if (opt.json) {
    json j{{"n", space.size()},
           {"precluded", format_family(fam)},
           {"union", format_event(fam.union_event())},
           {"preclusive", coevent_list(preclusive)},
           {"precluding", coevent_list(precluding)}};
    if (duality) {
      j["duality"] = {{"passed", duality->passed},
                      {"precluding_within_preclusive", duality->precluding_within_preclusive},
                      {"preclusive_inside_union", event_list(duality->preclusive_inside_union)},
                      {"precluding_missing_outside_union",
                       event_list(duality->precluding_missing_outside_union)},
                      {"failures", duality->failures}};
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "precluded: " << format_family(fam) << "\n";
    std::cout << "union: " << format_event(fam.union_event()) << "\n";
    print_basis(std::cout, "preclusive", preclusive);
    print_basis(std::cout, "precluding", precluding);
    if (duality) {
      std::cout << "duality: " << (duality->passed ? "pass" : "FAIL") << "\n";
      for (const auto& f : duality->failures) std::cout << "  " << f << "\n";
    }
  }
  return duality && !duality->passed ? kPropertyFailure : kOk;
}

int cmd_occurs(const Options& opt) {
  const ProblemSpec spec = load_problem(opt);
  const OutcomeSpace space = spec.space();
  if (spec.query.empty()) throw ArgumentError("occurs needs query events");
  const PrecludedFamily fam = spec.precluded.value_or(PrecludedFamily(space));
  std::vector<CoeventClass> modes;
  if (opt.mode.empty() || opt.mode == "preclusive") modes.push_back(CoeventClass::preclusive);
  if (opt.mode.empty() || opt.mode == "precluding") modes.push_back(CoeventClass::precluding);
  if (modes.empty()) throw ArgumentError("--mode must be preclusive or precluding");

  json rows = json::array();
  for (const auto& b : spec.query) {
    for (auto mode : modes) {
      const Occurrence occ = occurrence_query(fam, b, mode);
      json row{{"event", format_event(b)},
               {"mode", mode == CoeventClass::preclusive ? "preclusive" : "precluding"},
               {"exists", occ.exists}};
      if (occ.witness) row["witness"] = format_coevent(*occ.witness);
      rows.push_back(row);
    }
  }
  if (opt.json) {
    std::cout << json{{"precluded", format_family(fam)}, {"results", rows}}.dump(2) << "\n";
    return kOk;
  }
  for (const auto& row : rows) {
    std::cout << row["event"].get<std::string>() << " " << row["mode"].get<std::string>() << ": ";
    if (row["exists"].get<bool>()) {
      std::cout << "occurs, witness " << row["witness"].get<std::string>() << "\n";
    } else {
      std::cout << "cannot occur\n";
    }
  }
  return kOk;
}

int cmd_master(const Options& opt) {
  const ProblemSpec spec = load_problem(opt);
  const OutcomeSpace space = spec.space();
  const MasterObservable obs(space);
  std::vector<std::pair<std::string, Projection>> items;
  for (const auto& a : spec.query) items.emplace_back("P(" + format_event(a) + ")", obs.projection(a));
  if (spec.f) {
    for (double v : spec.f->range()) {
      const std::vector<double> b{v};
      items.emplace_back("P^f({" + detail::format_real(v) + "}) = P(" +
                             format_event(spec.f->preimage(b)) + ")",
                         observable(obs, *spec.f, b));
    }
  }
  if (items.empty()) {
    for (std::size_t i = 1; i <= space.size(); ++i) {
      items.emplace_back("P({" + std::to_string(i) + "})", obs.generator(i));
    }
  }
  if (opt.json) {
    json j = json::array();
    for (const auto& [label, p] : items) {
      j.push_back({{"label", label}, {"rank", p.rank()}, {"matrix", detail::inline_matrix(p.matrix())}});
    }
    std::cout << json{{"n", space.size()}, {"projections", j}}.dump(2) << "\n";
    return kOk;
  }
  for (const auto& [label, p] : items) {
    std::cout << label << " rank " << p.rank() << "\n" << p.matrix().to_string() << "\n\n";
  }
  return kOk;
}

int cmd_verify(const Options& opt) {
  if (!opt.n) throw ArgumentError("verify needs --n");
  const auto name = parse_suite_name(opt.suite);
  if (!name) throw ArgumentError("unknown suite '" + opt.suite + "'");
  const SuiteReport r = run_suite(*name, *opt.n);
  if (opt.json) {
    json checks = json::array();
    for (const auto& c : r.checks) {
      checks.push_back({{"suite", c.suite}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    std::cout << json{{"suite", r.suite}, {"n", r.n}, {"passed", r.passed}, {"checks", checks}}.dump(2) << "\n";
  } else {
    for (const auto& c : r.checks) {
      std::cout << (c.passed ? "ok   " : "FAIL ") << "[" << c.suite << "] " << c.name;
      if (!c.detail.empty()) std::cout << ": " << c.detail;
      std::cout << "\n";
    }
    std::cout << (r.passed ? "all checks passed" : "some checks FAILED") << "\n";
  }
  return r.passed ? kOk : kPropertyFailure;
}

int cmd_lattice(const Options& opt) {
  if (!opt.n) throw ArgumentError("lattice-search needs --n");
  LatticeMode mode = LatticeMode::exhaustive;
  if (opt.mode == "random") {
    mode = LatticeMode::random;
  } else if (!opt.mode.empty() && opt.mode != "exhaustive") {
    throw ArgumentError("--mode must be exhaustive or random");
  }
  const LatticeReport r = lattice_search(OutcomeSpace(*opt.n), mode, opt.budget, opt.seed);
  const bool consistent = r.meets_verified && r.commuting_meets_are_products;
  if (opt.json) {
    json ces = json::array();
    for (const auto& ce : r.counterexamples) {
      json bounds = json::array();
      for (const auto& b : ce.maximal_lower_bounds) bounds.push_back(detail::inline_matrix(b.to_matrix()));
      ces.push_back({{"p", detail::inline_matrix(ce.p.to_matrix())},
                     {"q", detail::inline_matrix(ce.q.to_matrix())},
                     {"maximal_lower_bounds", bounds}});
    }
    std::cout << json{{"dimension", r.dimension},
                      {"mode", mode == LatticeMode::exhaustive ? "exhaustive" : "random"},
                      {"seed", r.seed},
                      {"budget", r.budget},
                      {"projections", r.projection_count},
                      {"pairs_examined", r.pairs_examined},
                      {"pairs_with_meet", r.pairs_with_meet},
                      {"pairs_without_meet", r.pairs_without_meet},
                      {"commuting_pairs", r.commuting_pairs},
                      {"meets_verified", r.meets_verified},
                      {"commuting_meets_are_products", r.commuting_meets_are_products},
                      {"verdict", r.verdict()},
                      {"counterexamples", ces}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << r.verdict() << "\n";
    std::cout << "projections: " << r.projection_count << ", pairs with meet: " << r.pairs_with_meet
              << ", commuting pairs: " << r.commuting_pairs << "\n";
    for (const auto& ce : r.counterexamples) {
      std::cout << "no meet: P=" << detail::inline_matrix(ce.p.to_matrix())
                << " Q=" << detail::inline_matrix(ce.q.to_matrix()) << " maximal lower bounds:";
      for (const auto& b : ce.maximal_lower_bounds) std::cout << " " << detail::inline_matrix(b.to_matrix());
      std::cout << "\n";
    }
  }
  return consistent ? kOk : kPropertyFailure;
}

void add_problem_options(CLI::App* sub, Options& opt) {
  sub->add_option("input", opt.input, "problem file ('-' or omitted reads stdin unless --n is given)");
  sub->add_option("--n", opt.n, "number of outcomes");
  sub->add_option("--precluded", opt.precluded, "precluded events, e.g. {1,2};{2,3}");
  sub->add_option("--query", opt.query, "query events, e.g. {1};{1,2}");
  sub->add_flag("--close-disjoint-unions", opt.close_disjoint_unions,
                "add disjoint unions of precluded events");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grade-2 truth functions, projections and preclusion"};
  app.require_subcommand(1);
  Options opt;

  auto* classify_cmd = app.add_subcommand("classify", "classify a table [..] or a polynomial");
  classify_cmd->add_option("expression", opt.expression, "table or polynomial")->required();
  classify_cmd->add_option("--n", opt.n, "number of outcomes")->required();

  auto* interp_cmd = app.add_subcommand("interpolate", "coevent from singleton/doubleton values");
  interp_cmd->add_option("events", opt.terms, "events with value 1, e.g. {1};{1,2}");
  interp_cmd->add_option("--n", opt.n, "number of outcomes")->required();

  auto* preclusion_cmd = app.add_subcommand("preclusion", "preclusive and precluding bases");
  add_problem_options(preclusion_cmd, opt);

  auto* occurs_cmd = app.add_subcommand("occurs", "can the query events occur");
  add_problem_options(occurs_cmd, opt);
  occurs_cmd->add_option("--mode", opt.mode, "preclusive or precluding (default both)");

  auto* master_cmd = app.add_subcommand("master", "master observable projections");
  add_problem_options(master_cmd, opt);

  auto* verify_cmd = app.add_subcommand("verify", "run a property suite");
  verify_cmd->add_option("--suite", opt.suite, "interference, coevent, projection, master, preclusion, lattice or all");
  verify_cmd->add_option("--n", opt.n, "number of outcomes")->required();

  auto* lattice_cmd = app.add_subcommand("lattice-search", "search for pairs of projections without a meet");
  lattice_cmd->add_option("--n", opt.n, "number of outcomes")->required();
  lattice_cmd->add_option("--mode", opt.mode, "exhaustive or random");
  lattice_cmd->add_option("--budget", opt.budget, "pairs drawn in random mode");
  lattice_cmd->add_option("--seed", opt.seed, "random seed");

  for (auto* sub : app.get_subcommands({})) sub->add_flag("--json", opt.json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*classify_cmd) return cmd_classify(opt);
    if (*interp_cmd) return cmd_interpolate(opt);
    if (*preclusion_cmd) return cmd_preclusion(opt);
    if (*occurs_cmd) return cmd_occurs(opt);
    if (*master_cmd) return cmd_master(opt);
    if (*verify_cmd) return cmd_verify(opt);
    if (*lattice_cmd) return cmd_lattice(opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

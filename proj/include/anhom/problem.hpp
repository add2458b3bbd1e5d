#pragma once

// Line-oriented problem description read by the command-line tool:
//
//   n = 3
//   precluded = {1,2};{2,3}
//   query = {1};{1,2}
//   f = 1,1,2
//
// Blank lines and lines starting with '#' are ignored. Every key may appear
// at most once and `n` is required.

#include <charconv>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "anhom/error.hpp"
#include "anhom/event.hpp"
#include "anhom/preclusion.hpp"
#include "anhom/projection.hpp"

namespace anhom {

struct ProblemSpec {
  std::size_t n = 0;
  std::optional<PrecludedFamily> precluded;
  std::vector<Event> query;
  std::optional<RandomVariable> f;

  OutcomeSpace space() const { return OutcomeSpace(n); }
};

namespace detail {

struct RawLine {
  std::string_view value;
  std::size_t line = 0;
  std::size_t column0 = 0;  // columns before the value starts
};

inline std::string_view trim(std::string_view s, std::size_t* lead = nullptr) {
  std::size_t b = 0;
  while (b < s.size() && is_space(s[b])) ++b;
  std::size_t e = s.size();
  while (e > b && is_space(s[e - 1])) --e;
  if (lead) *lead = b;
  return s.substr(b, e - b);
}

inline std::vector<Event> parse_event_list(OutcomeSpace space, const RawLine& raw) {
  Scanner in(raw.value, raw.line, raw.column0);
  std::vector<Event> out;
  if (in.at_end()) return out;
  do {
    out.push_back(scan_event(in, space));
  } while (in.accept(';'));
  if (!in.at_end()) in.fail("expected ';' between events");
  return out;
}

inline std::vector<double> parse_reals(const RawLine& raw) {
  std::vector<double> out;
  std::string_view rest = raw.value;
  std::size_t offset = 0;
  while (true) {
    const auto comma = rest.find(',');
    std::size_t lead = 0;
    const std::string_view item = trim(rest.substr(0, comma), &lead);
    double v = 0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || res.ec != std::errc{} || res.ptr != item.data() + item.size()) {
      throw ParseError("expected a real number", raw.line,
                       raw.column0 + offset + lead + 1);
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    offset += comma + 1;
    rest = rest.substr(comma + 1);
  }
  return out;
}

inline std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

inline ProblemSpec parse_problem(std::string_view text) {
  std::optional<detail::RawLine> n_raw, precluded_raw, query_raw, f_raw;
  std::size_t line_no = 0;
  for (std::size_t start = 0; start <= text.size();) {
    const auto nl = text.find('\n', start);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    std::size_t lead = 0;
    const std::string_view body = detail::trim(line, &lead);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("expected 'key = value'", line_no, lead + 1);
    }
    const std::string_view key = detail::trim(line.substr(0, eq));
    std::size_t vlead = 0;
    const std::string_view value = detail::trim(line.substr(eq + 1), &vlead);
    const detail::RawLine raw{value, line_no, eq + 1 + vlead};

    std::optional<detail::RawLine>* slot = nullptr;
    if (key == "n") {
      slot = &n_raw;
    } else if (key == "precluded") {
      slot = &precluded_raw;
    } else if (key == "query") {
      slot = &query_raw;
    } else if (key == "f") {
      slot = &f_raw;
    } else {
      throw ParseError("unknown key '" + std::string(key) + "'", line_no, lead + 1);
    }
    if (slot->has_value()) {
      throw ParseError("duplicate key '" + std::string(key) + "'", line_no, lead + 1);
    }
    *slot = raw;
  }

  if (!n_raw) throw ParseError("missing required key 'n'", 0, 0);
  ProblemSpec spec;
  {
    detail::Scanner in(n_raw->value, n_raw->line, n_raw->column0);
    const std::size_t n = in.number();
    if (!in.at_end()) in.fail("trailing characters after n");
    if (n < 1 || n > kMaxOutcomes) {
      throw ParseError("n must be between 1 and " + std::to_string(kMaxOutcomes),
                       n_raw->line, n_raw->column0 + 1);
    }
    spec.n = n;
  }
  const OutcomeSpace space(spec.n);
  if (precluded_raw) {
    spec.precluded = PrecludedFamily(space, detail::parse_event_list(space, *precluded_raw));
  }
  if (query_raw) spec.query = detail::parse_event_list(space, *query_raw);
  if (f_raw) {
    auto values = detail::parse_reals(*f_raw);
    if (values.size() != spec.n) {
      throw ParseError("f needs exactly n values", f_raw->line, f_raw->column0 + 1);
    }
    spec.f = RandomVariable(space, std::move(values));
  }
  return spec;
}

inline std::string render_problem(const ProblemSpec& spec) {
  std::string out = "n = " + std::to_string(spec.n) + "\n";
  if (spec.precluded) out += "precluded = " + format_family(*spec.precluded) + "\n";
  if (!spec.query.empty()) {
    out += "query = ";
    for (std::size_t i = 0; i < spec.query.size(); ++i) {
      if (i != 0) out.push_back(';');
      out += format_event(spec.query[i]);
    }
    out += "\n";
  }
  if (spec.f) {
    out += "f = ";
    const auto& v = spec.f->values();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i != 0) out.push_back(',');
      out += detail::format_real(v[i]);
    }
    out += "\n";
  }
  return out;
}

}  // namespace anhom

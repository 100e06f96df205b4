#ifndef SYMSPACE_IO_HPP
#define SYMSPACE_IO_HPP

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "symspace/errors.hpp"
#include "symspace/gfun.hpp"
#include "symspace/orlicz.hpp"
#include "symspace/step_function.hpp"

namespace symspace {

// Malformed input file (missing, unreadable, wrong shape).
class InputError : public Error {
 public:
  using Error::Error;
};

namespace io {

using nlohmann::json;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

// {"breakpoints": [{"dyadic": e} | {"rational": [p, q]} | t, ...], "values": [...]}
inline StepFunction step_function_from_json(const json& j) {
  try {
    if (!j.is_object() || !j.contains("breakpoints") || !j.contains("values"))
      throw InputError("step function needs \"breakpoints\" and \"values\"");
    std::vector<Breakpoint> right;
    for (const json& b : j.at("breakpoints")) {
      if (b.is_number()) {
        right.emplace_back(b.get<double>());
      } else if (b.is_object() && b.contains("dyadic")) {
        const auto e = b.at("dyadic").get<std::int64_t>();
        if (e < 0) throw InputError("dyadic exponent must be nonnegative");
        right.push_back(Breakpoint::dyadic(e));
      } else if (b.is_object() && b.contains("rational")) {
        const auto& pq = b.at("rational");
        if (!pq.is_array() || pq.size() != 2) throw InputError("rational breakpoint needs [p, q]");
        right.push_back(Breakpoint::rational(pq[0].get<std::int64_t>(), pq[1].get<std::int64_t>()));
      } else {
        throw InputError("breakpoint must be a number, {\"dyadic\": e} or {\"rational\": [p, q]}");
      }
    }
    return StepFunction(std::move(right), j.at("values").get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw InputError(std::string("step function: ") + e.what());
  }
}

inline json to_json(const StepFunction& x) {
  json bps = json::array();
  for (const Breakpoint& b : x.breakpoints()) {
    if (b.dyadic_exponent())
      bps.push_back({{"dyadic", *b.dyadic_exponent()}});
    else
      bps.push_back(b.value());
  }
  return {{"breakpoints", bps}, {"values", std::vector<double>(x.values().begin(), x.values().end())}};
}

inline StepFunction load_step_function(const std::string& path) { return step_function_from_json(read_json_file(path)); }

// [[t, f], ...] or {"points": [[t, f], ...]}
inline std::vector<std::pair<double, double>> load_table(const std::string& path) {
  const json j = read_json_file(path);
  const json& pts = j.is_object() && j.contains("points") ? j.at("points") : j;
  if (!pts.is_array()) throw InputError(path + ": table must be an array of [t, f] pairs");
  std::vector<std::pair<double, double>> out;
  try {
    for (const json& p : pts) {
      if (!p.is_array() || p.size() != 2) throw InputError(path + ": table entries must be [t, f]");
      out.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  return out;
}

inline double parse_number(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty())
    throw InvalidFunction("cannot read number '" + std::string(s) + "' in " + std::string(what));
  return v;
}

}  // namespace io

// Function spec mini-language: pow:a | powlog:a:b | table:<path> | scaled:c:<spec>.
inline GFun parse_gfun(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (colon == std::string_view::npos) throw InvalidFunction("function spec '" + std::string(spec) + "' has no ':'");
  if (head == "pow") return GFun::pow(io::parse_number(rest, spec));
  if (head == "powlog") {
    const auto c = rest.find(':');
    if (c == std::string_view::npos) throw InvalidFunction("powlog needs powlog:a:b");
    return GFun::powlog(io::parse_number(rest.substr(0, c), spec), io::parse_number(rest.substr(c + 1), spec));
  }
  if (head == "table") return GFun::table(io::load_table(std::string(rest)));
  if (head == "scaled") {
    const auto c = rest.find(':');
    if (c == std::string_view::npos) throw InvalidFunction("scaled needs scaled:c:<spec>");
    return GFun::scaled(io::parse_number(rest.substr(0, c), spec), parse_gfun(rest.substr(c + 1)));
  }
  throw InvalidFunction("unknown function kind '" + std::string(head) + "'");
}

// A weight for the Marcinkiewicz norm: a spec, or tilde:<spec> for t/f(t).
using ThetaSpec = std::variant<GFun, Tilde<GFun>>;

inline ThetaSpec parse_theta(std::string_view spec) {
  constexpr std::string_view kTilde = "tilde:";
  if (spec.substr(0, kTilde.size()) == kTilde) return tilde_of(parse_gfun(spec.substr(kTilde.size())));
  return parse_gfun(spec);
}

// pow:p | table:<path>
inline OrliczFunction parse_orlicz(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw InvalidFunction("Orlicz spec '" + std::string(spec) + "' has no ':'");
  const std::string_view head = spec.substr(0, colon), rest = spec.substr(colon + 1);
  if (head == "pow") return OrliczFunction::power(io::parse_number(rest, spec));
  if (head == "table") return OrliczFunction::table(io::load_table(std::string(rest)));
  throw InvalidFunction("unknown Orlicz function kind '" + std::string(head) + "'");
}

}  // namespace symspace

#endif  // SYMSPACE_IO_HPP

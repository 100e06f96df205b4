#ifndef SYMSPACE_REPORT_HPP
#define SYMSPACE_REPORT_HPP

#include <cmath>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"
#include "symspace/cex.hpp"
#include "symspace/conditions.hpp"
#include "symspace/dilation.hpp"
#include "symspace/embed.hpp"
#include "symspace/series.hpp"
#include "symspace/trend.hpp"

namespace symspace::report {

using nlohmann::json;

inline json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

inline json to_json(const SeriesCertificate& c) {
  return {{"verdict", to_string(c.verdict)}, {"method", c.method},       {"partial_sum", c.partial_sum},
          {"tail_bound", c.tail_bound},      {"ratio", c.ratio},         {"slope", c.slope}};
}

inline json to_json(const TrendAnalysis& a) {
  return {{"trend", to_string(a.trend)},
          {"tail_slope", a.tail_slope},
          {"last_over_max", a.last_over_max},
          {"tail_nonincreasing", a.tail_nonincreasing},
          {"tail_nondecreasing", a.tail_nondecreasing}};
}

inline json to_json(const DilationProfile& p) {
  json samples = json::array();
  for (int j = -p.J; j <= p.J; ++j) samples.push_back({{"j", j}, {"log_M", p.log_sample(j)}});
  return {{"J", p.J},
          {"K", p.K},
          {"gamma", p.gamma_est},
          {"delta", p.delta_est},
          {"gamma_inner", p.gamma_inner},
          {"delta_inner", p.delta_inner},
          {"window", {p.window_lo, p.window_hi}},
          {"stable", p.stable},
          {"samples", samples}};
}

inline json to_json(const EmbedReport& r) {
  json trace = json::array();
  for (const TraceRow& t : r.trace) trace.push_back({{"k", t.k}, {"term", t.term}, {"partial", t.partial}});
  return {{"test", r.test},
          {"verdict", to_string(r.verdict)},
          {"constants",
           {{"u", opt(r.constants.u)}, {"C", opt(r.constants.C)}, {"C1", opt(r.constants.C1)}, {"C2", opt(r.constants.C2)}}},
          {"certificate", to_json(r.certificate)},
          {"trace", trace},
          {"notes", r.notes}};
}

inline json to_json(const ConditionAResult& a) { return {{"verdict", to_string(a.verdict)}, {"analysis", to_json(a.analysis)}}; }

inline json to_json(const ConditionBResult& b) {
  return {{"verdict", to_string(b.verdict)}, {"gamma", b.gamma_est}, {"fit_stable", b.fit_stable}};
}

inline json to_json(const Theorem5Report& r) {
  return {{"gamma", r.gamma},
          {"u", r.u},
          {"C", r.C},
          {"C1", r.C1},
          {"delta_phi", r.delta_phi},
          {"integral", r.integral},
          {"integral_tail", r.integral_tail},
          {"dyadic_sum", r.dyadic_sum},
          {"bound", r.bound},
          {"index_ok", r.index_ok},
          {"integral_ok", r.integral_ok},
          {"pass", r.pass},
          {"certificate", to_json(r.certificate)}};
}

inline json to_json(const WitnessResult& w) {
  json out{{"found", w.witness.has_value()}, {"reason", w.reason}, {"analysis", to_json(w.analysis)}};
  if (w.witness) {
    json pts = json::array();
    for (int e : w.witness->exponents) pts.push_back({{"exponent", e}, {"t", std::ldexp(1.0, -e)}});
    out["points"] = pts;
    out["C2"] = w.witness->C2;
    out["threshold"] = w.witness->threshold;
    out["liminf"] = w.witness->liminf;
  }
  return out;
}

inline json to_json(const RhoConstruction& rc, const RhoVerification& v) {
  json h = json::array(), verts = json::array();
  for (const auto& [t, y] : rc.h_points) h.push_back({t, y});
  for (const auto& [t, y] : rc.rho.vertices) verts.push_back({t, y});
  return {{"u", rc.u},
          {"K", rc.K},
          {"series_depth", rc.series_depth},
          {"delta_phi", rc.delta_phi},
          {"truncation_tail", rc.truncation_tail},
          {"rho_index", rc.rho_index},
          {"equivalence_ratio", rc.rho.equivalence_ratio},
          {"g", rc.g},
          {"h_points", h},
          {"rho_vertices", verts},
          {"verification",
           {{"ratio_decreasing", v.ratio.decreasing},
            {"ratio_final", v.ratio.final_ratio},
            {"ratio_pass", v.ratio.pass},
            {"rho_series", to_json(v.rho_series)},
            {"abel_dini", to_json(v.abel_dini)},
            {"pass", v.pass}}}};
}

inline json to_json(const ClaimEntry& c) {
  return {{"claim_id", c.claim_id}, {"formula", c.formula}, {"computed", c.computed}, {"bound", c.bound}, {"pass", c.pass}};
}

inline json to_json(const SampleSummary& s) {
  return {{"count", s.count},
          {"max_quasi_over_max", s.max_quasi_over_max},
          {"min_f_over_max", std::isfinite(s.min_f_over_max) ? json(s.min_f_over_max) : json(nullptr)},
          {"max_e_over_max", s.max_e_over_max},
          {"min_ratio", std::isfinite(s.min_ratio) ? json(s.min_ratio) : json(nullptr)},
          {"max_ratio", s.max_ratio},
          {"spread", s.spread()}};
}

inline json to_json(const CexReport& r) {
  json claims = json::array();
  for (const ClaimEntry& c : r.claims) claims.push_back(to_json(c));
  return {{"M_max", r.M_max},         {"samples", r.samples},        {"seed", r.seed},
          {"n", r.n},                 {"claims", claims},            {"samples_half", to_json(r.half)},
          {"samples_all", to_json(r.full)}, {"pass", r.pass()}};
}

inline json to_json(const FNormResult& f) {
  return {{"value", f.value},           {"chi_part", f.chi_part}, {"chi_argmax", f.chi_argmax},
          {"w_pairings", f.w_pairings}, {"m_eff", f.m_eff},       {"tail_bound", f.tail_bound}};
}

namespace detail {

inline std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline void flatten(const json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(*it, path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(path, scalar_text(j));
  }
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace detail

enum class Format { json, csv, text };

// JSON as is; CSV with one row per claim when the report has claims, else
// one key,value row per leaf; text as aligned key = value lines.
inline std::string render(const json& j, Format f) {
  std::ostringstream os;
  if (f == Format::json) {
    os << j.dump(2) << "\n";
    return os.str();
  }
  if (f == Format::csv && j.is_object() && j.contains("claims")) {
    os << "claim_id,formula,computed,bound,pass\n";
    for (const json& c : j.at("claims"))
      os << detail::csv_field(c.at("claim_id").get<std::string>()) << ","
         << detail::csv_field(c.at("formula").get<std::string>()) << "," << c.at("computed").dump() << ","
         << c.at("bound").dump() << "," << (c.at("pass").get<bool>() ? "true" : "false") << "\n";
    return os.str();
  }
  std::vector<std::pair<std::string, std::string>> rows;
  detail::flatten(j, "", rows);
  if (f == Format::csv) {
    os << "key,value\n";
    for (const auto& [k, v] : rows) os << detail::csv_field(k) << "," << detail::csv_field(v) << "\n";
    return os.str();
  }
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  for (const auto& [k, v] : rows) os << std::left << std::setw(static_cast<int>(width)) << k << " = " << v << "\n";
  return os.str();
}

}  // namespace symspace::report

#endif  // SYMSPACE_REPORT_HPP

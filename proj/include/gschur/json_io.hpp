#ifndef GSCHUR_JSON_IO_HPP
#define GSCHUR_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "gschur/crossings.hpp"
#include "gschur/errors.hpp"
#include "gschur/mc.hpp"
#include "gschur/planners.hpp"
#include "gschur/schur_order.hpp"
#include "gschur/weight_vector.hpp"

namespace gschur {

inline constexpr const char* kSchemaVersion = "gamma-schur/1";

using nlohmann::json;

namespace json_detail {
template <typename T>
void put_opt(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}
template <typename T>
void get_opt(const json& j, const char* key, std::optional<T>& v) {
  if (j.contains(key) && !j.at(key).is_null())
    v = j.at(key).get<T>();
  else
    v.reset();
}

inline Relation relation_from_name(const std::string& s) {
  if (s == "MuGE") return Relation::MuGE;
  if (s == "MuLE") return Relation::MuLE;
  if (s == "Equal") return Relation::Equal;
  if (s == "Undecided") return Relation::Undecided;
  raise(Errc::ParseError, "unknown relation '" + s + "'");
}
inline DecidedBy decided_by_from_name(const std::string& s) {
  if (s == "Theorem1") return DecidedBy::Theorem1;
  if (s == "Corollary2") return DecidedBy::Corollary2;
  if (s == "Corollary3") return DecidedBy::Corollary3;
  if (s == "Bock") return DecidedBy::Bock;
  if (s == "Bakirov") return DecidedBy::Bakirov;
  if (s == "Numeric") return DecidedBy::Numeric;
  if (s == "None") return DecidedBy::None;
  raise(Errc::ParseError, "unknown decided_by '" + s + "'");
}
inline SkewnessRelation skewness_relation_from_name(const std::string& s) {
  if (s == "OrderedByTheorem1") return SkewnessRelation::OrderedByTheorem1;
  if (s == "Equal") return SkewnessRelation::Equal;
  if (s == "IncomparableByTheorem") return SkewnessRelation::IncomparableByTheorem;
  raise(Errc::ParseError, "unknown skewness relation '" + s + "'");
}
}  // namespace json_detail

inline void to_json(json& j, const OrderVerdict& v) {
  j = json{{"relation", relation_name(v.relation)},
           {"decided_by", decided_by_name(v.decided_by)}};
  json_detail::put_opt(j, "concave_threshold", v.concave_threshold);
  json_detail::put_opt(j, "convex_threshold", v.convex_threshold);
  json_detail::put_opt(j, "numeric_gap", v.numeric_gap);
  json_detail::put_opt(j, "numeric_gap_error", v.numeric_gap_error);
}
inline void from_json(const json& j, OrderVerdict& v) {
  v.relation = json_detail::relation_from_name(j.at("relation").get<std::string>());
  v.decided_by =
      json_detail::decided_by_from_name(j.at("decided_by").get<std::string>());
  json_detail::get_opt(j, "concave_threshold", v.concave_threshold);
  json_detail::get_opt(j, "convex_threshold", v.convex_threshold);
  json_detail::get_opt(j, "numeric_gap", v.numeric_gap);
  json_detail::get_opt(j, "numeric_gap_error", v.numeric_gap_error);
}

inline void to_json(json& j, const Crossing& c) {
  j = json{{"x_location", c.x}, {"bracket_width", c.bracket_width}};
}
inline void from_json(const json& j, Crossing& c) {
  j.at("x_location").get_to(c.x);
  j.at("bracket_width").get_to(c.bracket_width);
}

inline void to_json(json& j, const InconclusiveSegment& s) {
  j = json{{"x_lo", s.x_lo}, {"x_hi", s.x_hi}};
}
inline void from_json(const json& j, InconclusiveSegment& s) {
  j.at("x_lo").get_to(s.x_lo);
  j.at("x_hi").get_to(s.x_hi);
}

inline void to_json(json& j, const CrossingReport& r) {
  j = json{{"crossings", r.crossings},
           {"scan_range", {{"x_lo", r.x_lo}, {"x_hi", r.x_hi}}},
           {"resolution", r.resolution},
           {"min_gap_detected", r.min_gap_detected},
           {"inconclusive", r.inconclusive}};
}
inline void from_json(const json& j, CrossingReport& r) {
  j.at("crossings").get_to(r.crossings);
  j.at("scan_range").at("x_lo").get_to(r.x_lo);
  j.at("scan_range").at("x_hi").get_to(r.x_hi);
  j.at("resolution").get_to(r.resolution);
  j.at("min_gap_detected").get_to(r.min_gap_detected);
  j.at("inconclusive").get_to(r.inconclusive);
}

inline void to_json(json& j, const SignalPlan& p) {
  j = json{{"threshold_x", p.threshold_x},
           {"delta", p.delta},
           {"min_samples", p.min_samples},
           {"type1_at_min", p.type1_at_min},
           {"monotone_region", p.monotone_region}};
}
inline void from_json(const json& j, SignalPlan& p) {
  j.at("threshold_x").get_to(p.threshold_x);
  j.at("delta").get_to(p.delta);
  j.at("min_samples").get_to(p.min_samples);
  j.at("type1_at_min").get_to(p.type1_at_min);
  j.at("monotone_region").get_to(p.monotone_region);
}

inline void to_json(json& j, const TracePlan& p) {
  j = json{{"spectrum", p.spectrum.entries()},
           {"trace", p.trace},
           {"spectral_norm", p.spectral_norm},
           {"epsilon", p.epsilon},
           {"delta", p.delta},
           {"bound_samples", p.bound_samples},
           {"exact_samples", p.exact_samples},
           {"effective_rank", p.effective_rank}};
}
inline void from_json(const json& j, TracePlan& p) {
  p.spectrum = WeightVector(j.at("spectrum").get<std::vector<double>>());
  j.at("trace").get_to(p.trace);
  j.at("spectral_norm").get_to(p.spectral_norm);
  j.at("epsilon").get_to(p.epsilon);
  j.at("delta").get_to(p.delta);
  j.at("bound_samples").get_to(p.bound_samples);
  j.at("exact_samples").get_to(p.exact_samples);
  j.at("effective_rank").get_to(p.effective_rank);
}

inline void to_json(json& j, const McPoint& p) {
  j = json{{"x", p.x},
           {"empirical_cdf", p.empirical_cdf},
           {"analytic_cdf", p.analytic_cdf},
           {"dkw_band", p.dkw_band}};
}
inline void from_json(const json& j, McPoint& p) {
  j.at("x").get_to(p.x);
  j.at("empirical_cdf").get_to(p.empirical_cdf);
  j.at("analytic_cdf").get_to(p.analytic_cdf);
  j.at("dkw_band").get_to(p.dkw_band);
}

inline void to_json(json& j, const McReport& r) {
  j = json{{"sample_count", r.sample_count},
           {"seed", r.seed},
           {"points", r.points},
           {"max_abs_gap", r.max_abs_gap},
           {"band_alpha", r.band_alpha},
           {"dkw_band", r.dkw_band},
           {"pass", r.pass},
           {"sampler", r.sampler},
           {"worker_count", r.worker_count}};
}
inline void from_json(const json& j, McReport& r) {
  j.at("sample_count").get_to(r.sample_count);
  j.at("seed").get_to(r.seed);
  j.at("points").get_to(r.points);
  j.at("max_abs_gap").get_to(r.max_abs_gap);
  j.at("band_alpha").get_to(r.band_alpha);
  j.at("dkw_band").get_to(r.dkw_band);
  j.at("pass").get_to(r.pass);
  j.at("sampler").get_to(r.sampler);
  j.at("worker_count").get_to(r.worker_count);
}

inline void to_json(json& j, const ImprovementRegion& r) {
  j = json{{"concave_sharper", r.concave_sharper},
           {"convex_sharper", r.convex_sharper},
           {"bock_applicable", r.bock_applicable}};
}
inline void from_json(const json& j, ImprovementRegion& r) {
  j.at("concave_sharper").get_to(r.concave_sharper);
  j.at("convex_sharper").get_to(r.convex_sharper);
  j.at("bock_applicable").get_to(r.bock_applicable);
}

inline void to_json(json& j, const SkewnessReport& r) {
  j = json{{"relation", skewness_relation_name(r.relation)},
           {"lower_tail_1", r.lower_tail_1},
           {"lower_tail_2", r.lower_tail_2},
           {"sample_size_ok", r.sample_size_ok}};
}
inline void from_json(const json& j, SkewnessReport& r) {
  r.relation = json_detail::skewness_relation_from_name(
      j.at("relation").get<std::string>());
  j.at("lower_tail_1").get_to(r.lower_tail_1);
  j.at("lower_tail_2").get_to(r.lower_tail_2);
  j.at("sample_size_ok").get_to(r.sample_size_ok);
}

}  // namespace gschur

#endif  // GSCHUR_JSON_IO_HPP

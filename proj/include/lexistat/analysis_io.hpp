#pragma once

#include <string>

#include <json.hpp>

#include "lexistat/analysis.hpp"
#include "lexistat/fixtures.hpp"
#include "lexistat/format.hpp"
#include "lexistat/wordlist.hpp"

// Plot-ready CSV/JSON for the analysis reports. Floats use 6 decimals.
namespace lexistat {

namespace detail {

inline nlohmann::json fixed6(double v) { return nlohmann::json::parse(fmt::fixed(v, 6)); }

inline std::string town_of(const fixtures::DialectRegistry& registry, const std::string& id) {
  const auto* d = registry.find(id);
  return d ? std::string(d->town) : std::string();
}

}  // namespace detail

/// Rows in rank order: languageId,town,meanDistance,rank
inline std::string averages_to_csv(const AverageDistanceReport& report, const fixtures::DialectRegistry& registry) {
  std::string out = "languageId,town,meanDistance,rank\n";
  for (const auto& r : report.ranked()) {
    out += r.language_id + ',' + detail::town_of(registry, r.language_id) + ',' + fmt::fixed(r.mean, 6) + ',' +
           std::to_string(r.rank) + '\n';
  }
  return out;
}

inline std::string averages_to_json(const AverageDistanceReport& report, const fixtures::DialectRegistry& registry) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.ranked()) {
    nlohmann::json row = {{"languageId", r.language_id},
                          {"town", detail::town_of(registry, r.language_id)},
                          {"meanDistance", detail::fixed6(r.mean)},
                          {"rank", r.rank}};
    if (const auto* d = registry.find(r.language_id)) row["regionGroup"] = fixtures::to_string(d->group);
    rows.push_back(std::move(row));
  }
  return nlohmann::json{{"averages", std::move(rows)}, {"ties", report.ties}}.dump(2) + '\n';
}

/// languageId,dMalay,dMaanyan,ratio with ref1 in the dMalay column and ref2
/// in the dMaanyan column. Undefined ratios are written as NA.
inline std::string refcomp_to_csv(const RefComparison& rc) {
  std::string out = "languageId,dMalay,dMaanyan,ratio\n";
  for (const auto& r : rc.records) {
    out += r.language_id + ',' + fmt::fixed(r.d_ref1, 6) + ',' + fmt::fixed(r.d_ref2, 6) + ',' +
           (r.ratio ? fmt::fixed(*r.ratio, 6) : std::string("NA")) + '\n';
  }
  return out;
}

inline std::string refcomp_to_json(const RefComparison& rc, const fixtures::DialectRegistry& registry) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : rc.records) {
    records.push_back({{"languageId", r.language_id},
                       {"dMalay", detail::fixed6(r.d_ref1)},
                       {"dMaanyan", detail::fixed6(r.d_ref2)},
                       {"slotsMalay", r.slots_ref1},
                       {"slotsMaanyan", r.slots_ref2},
                       {"ratio", r.ratio ? detail::fixed6(*r.ratio) : nlohmann::json(nullptr)}});
  }
  nlohmann::json doc = {{"orientation", {{"numerator", rc.ref1_id}, {"denominator", rc.ref2_id}}},
                        {"records", std::move(records)}};
  if (!rc.records.empty()) {
    const auto dom = dominance_check(rc);
    doc["dominance"] = {{"holds", dom.holds}, {"margin", detail::fixed6(dom.margin)}};
  }
  if (auto s = summarize_ratios(rc.records)) {
    doc["ratioSummary"] = {{"count", s->count},
                           {"min", detail::fixed6(s->min)},
                           {"max", detail::fixed6(s->max)},
                           {"mean", detail::fixed6(s->mean)}};
  }
  nlohmann::json groups = nlohmann::json::object();
  for (const auto& [group, s] : ratio_summary_by_group(rc, registry)) {
    groups[std::string(fixtures::to_string(group))] = {{"count", s.count},
                                                       {"min", detail::fixed6(s.min)},
                                                       {"max", detail::fixed6(s.max)},
                                                       {"mean", detail::fixed6(s.mean)}};
  }
  if (!groups.empty()) doc["groupRatioSummary"] = std::move(groups);
  return doc.dump(2) + '\n';
}

inline std::string validation_to_json(const ValidationReport& report) {
  nlohmann::json langs = nlohmann::json::array();
  for (const auto& l : report.languages) {
    langs.push_back({{"languageId", l.language_id}, {"coverage", l.coverage}, {"missing", l.missing}});
  }
  nlohmann::json warnings = nlohmann::json::array();
  for (const auto& w : report.warnings) warnings.push_back({{"languageId", w.language_id}, {"message", w.message}});
  return nlohmann::json{{"meaningUnion", report.meaning_union.size()},
                        {"languages", std::move(langs)},
                        {"warnings", std::move(warnings)}}
             .dump(2) +
         '\n';
}

}  // namespace lexistat

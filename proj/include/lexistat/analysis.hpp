#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lexistat/distance.hpp"
#include "lexistat/error.hpp"
#include "lexistat/fixtures.hpp"
#include "lexistat/wordlist.hpp"

namespace lexistat {

// ---------------------------------------------------------------------------
// Average distance of each language from all the others

struct AverageDistance {
  std::string language_id;
  double mean = 0.0;
  std::size_t rank = 0;  // 1 = smallest mean
};

struct AverageDistanceReport {
  std::vector<AverageDistance> rows;             // matrix label order
  std::vector<std::vector<std::string>> ties;    // groups sharing an exact mean

  const AverageDistance* find(std::string_view id) const {
    for (const auto& r : rows) {
      if (r.language_id == id) return &r;
    }
    return nullptr;
  }

  /// Rows sorted by rank.
  std::vector<AverageDistance> ranked() const {
    auto out = rows;
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.rank < b.rank; });
    return out;
  }
};

/// Mean over the other N-1 entries of each row. Row values are summed in
/// ascending order, so the means do not depend on the matrix ordering. Ranks
/// ascend by mean; equal means are ordered by language id.
inline AverageDistanceReport average_distances(const SymmetricMatrix& m) {
  const std::size_t n = m.size();
  if (n < 2) fail(ErrorKind::ContractViolation, "averages need at least two languages");
  AverageDistanceReport report;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) row.push_back(m.at(i, j));
    }
    std::sort(row.begin(), row.end());
    double sum = 0.0;
    for (double v : row) sum += v;
    report.rows.push_back({m.label(i), sum / static_cast<double>(n - 1), 0});
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ra = report.rows[a];
    const auto& rb = report.rows[b];
    if (ra.mean != rb.mean) return ra.mean < rb.mean;
    return ra.language_id < rb.language_id;
  });
  for (std::size_t k = 0; k < n; ++k) report.rows[order[k]].rank = k + 1;

  for (std::size_t k = 0; k < n;) {
    std::size_t end = k + 1;
    while (end < n && report.rows[order[end]].mean == report.rows[order[k]].mean) ++end;
    if (end - k > 1) {
      std::vector<std::string> group;
      for (std::size_t t = k; t < end; ++t) group.push_back(report.rows[order[t]].language_id);
      report.ties.push_back(std::move(group));
    }
    k = end;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Distances to two reference languages

struct ReferenceRecord {
  std::string language_id;
  double d_ref1 = 0.0;
  double d_ref2 = 0.0;
  std::size_t slots_ref1 = 0;
  std::size_t slots_ref2 = 0;
  std::optional<double> ratio;  // d_ref1 / d_ref2; absent when d_ref2 == 0
};

struct RefComparison {
  std::string ref1_id;  // numerator of the ratio
  std::string ref2_id;  // denominator
  std::vector<ReferenceRecord> records;
};

inline RefComparison reference_comparison(std::span<const WordList> dialects, const WordList& ref1,
                                          const WordList& ref2) {
  RefComparison out{ref1.language_id(), ref2.language_id(), {}};
  for (const auto& dialect : dialects) {
    ReferenceRecord rec;
    rec.language_id = dialect.language_id();
    const auto d1 = language_distance(dialect, ref1);
    const auto d2 = language_distance(dialect, ref2);
    rec.d_ref1 = d1.value;
    rec.d_ref2 = d2.value;
    rec.slots_ref1 = d1.slots_compared;
    rec.slots_ref2 = d2.slots_compared;
    if (rec.d_ref2 > 0.0) rec.ratio = rec.d_ref1 / rec.d_ref2;
    out.records.push_back(std::move(rec));
  }
  return out;
}

struct Dominance {
  bool holds = false;
  double margin = 0.0;  // min d_ref1 - max d_ref2
};

/// Whether every dialect is closer to ref2 than any dialect is to ref1.
inline Dominance dominance_check(const RefComparison& rc) {
  if (rc.records.empty()) fail(ErrorKind::ContractViolation, "dominance check needs at least one dialect");
  double min_ref1 = rc.records.front().d_ref1;
  double max_ref2 = rc.records.front().d_ref2;
  for (const auto& r : rc.records) {
    min_ref1 = std::min(min_ref1, r.d_ref1);
    max_ref2 = std::max(max_ref2, r.d_ref2);
  }
  return {max_ref2 < min_ref1, min_ref1 - max_ref2};
}

struct RatioSummary {
  std::size_t count = 0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

/// Ratio statistics over all records with a defined ratio.
inline std::optional<RatioSummary> summarize_ratios(std::span<const ReferenceRecord> records) {
  RatioSummary s;
  double sum = 0.0;
  for (const auto& r : records) {
    if (!r.ratio) continue;
    const double v = *r.ratio;
    s.min = s.count ? std::min(s.min, v) : v;
    s.max = s.count ? std::max(s.max, v) : v;
    sum += v;
    ++s.count;
  }
  if (s.count == 0) return std::nullopt;
  s.mean = sum / static_cast<double>(s.count);
  return s;
}

/// Ratio summaries per region group, for dialects found in the registry.
inline std::map<fixtures::RegionGroup, RatioSummary> ratio_summary_by_group(const RefComparison& rc,
                                                                           const fixtures::DialectRegistry& registry) {
  std::map<fixtures::RegionGroup, std::vector<ReferenceRecord>> grouped;
  for (const auto& r : rc.records) {
    if (const auto* d = registry.find(r.language_id)) grouped[d->group].push_back(r);
  }
  std::map<fixtures::RegionGroup, RatioSummary> out;
  for (const auto& [group, records] : grouped) {
    if (auto s = summarize_ratios(records)) out[group] = *s;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Homeland candidates

struct HomelandCandidate {
  std::string language_id;
  double mean = 0.0;
  std::size_t rank = 0;
  std::string dialect;
  std::string town;
  fixtures::RegionGroup group{};
};

/// The k languages with the smallest mean distance, annotated from the
/// registry.
inline std::vector<HomelandCandidate> homeland_candidates(const AverageDistanceReport& report,
                                                          const fixtures::DialectRegistry& registry,
                                                          std::size_t k) {
  if (k < 1 || k > report.rows.size()) {
    fail(ErrorKind::ContractViolation, "k must be in 1.." + std::to_string(report.rows.size()));
  }
  std::vector<HomelandCandidate> out;
  for (const auto& row : report.ranked()) {
    const auto* d = registry.find(row.language_id);
    if (!d) fail(ErrorKind::ContractViolation, "\"" + row.language_id + "\" is not a registry dialect");
    if (out.size() < k) out.push_back({row.language_id, row.mean, row.rank, std::string(d->name), std::string(d->town), d->group});
  }
  return out;
}

}  // namespace lexistat

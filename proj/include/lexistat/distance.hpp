#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <ranges>
#include <set>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "lexistat/error.hpp"
#include "lexistat/wordlist.hpp"

namespace lexistat {

// ---------------------------------------------------------------------------
// Edit distance

/// Unit-cost Levenshtein distance between two sequences. Two-row dynamic
/// program, O(|a|·|b|) time and O(min(|a|,|b|)) memory.
template <std::ranges::random_access_range A, std::ranges::random_access_range B>
std::size_t levenshtein(const A& a, const B& b) {
  const auto n = static_cast<std::size_t>(std::ranges::size(a));
  const auto m = static_cast<std::size_t>(std::ranges::size(b));
  if (n < m) return levenshtein(b, a);
  if (m == 0) return n;

  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  auto ai = std::ranges::begin(a);
  for (std::size_t i = 1; i <= n; ++i, ++ai) {
    cur[0] = i;
    auto bj = std::ranges::begin(b);
    for (std::size_t j = 1; j <= m; ++j, ++bj) {
      const std::size_t substitute = prev[j - 1] + (*ai == *bj ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, substitute});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

inline std::size_t levenshtein(const WordForm& a, const WordForm& b) {
  return levenshtein(a.code_points(), b.code_points());
}

struct WordDistance {
  double value = 0.0;
};

/// Edit distance divided by the length of the longer word, in [0, 1].
/// Forms are never empty, so the denominator is positive.
inline WordDistance word_distance(const WordForm& a, const WordForm& b) {
  const auto longer = std::max(a.size(), b.size());
  return {static_cast<double>(levenshtein(a, b)) / static_cast<double>(longer)};
}

struct LanguageDistance {
  double value = 0.0;
  std::size_t slots_compared = 0;
};

/// Mean word distance over the meanings filled in both lists.
inline LanguageDistance language_distance(const WordList& a, const WordList& b) {
  double sum = 0.0;
  std::size_t shared = 0;
  auto ia = a.slots().begin();
  auto ib = b.slots().begin();
  while (ia != a.slots().end() && ib != b.slots().end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      sum += word_distance(ia->second.form, ib->second.form).value;
      ++shared;
      ++ia;
      ++ib;
    }
  }
  if (shared == 0) {
    fail(ErrorKind::NoOverlap,
         "\"" + a.language_id() + "\" and \"" + b.language_id() + "\" share no filled meaning");
  }
  return {sum / static_cast<double>(shared), shared};
}

// ---------------------------------------------------------------------------
// Matrices

/// Labeled square matrix, symmetric with zero diagonal and non-negative
/// finite entries. Row-major storage.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;

  explicit SymmetricMatrix(std::vector<std::string> labels)
      : labels_(std::move(labels)), values_(labels_.size() * labels_.size(), 0.0) {
    check_labels();
  }

  SymmetricMatrix(std::vector<std::string> labels, std::vector<double> values)
      : labels_(std::move(labels)), values_(std::move(values)) {
    check_labels();
    if (values_.size() != labels_.size() * labels_.size()) {
      fail(ErrorKind::ContractViolation, "matrix has " + std::to_string(values_.size()) +
                                             " entries for " + std::to_string(labels_.size()) +
                                             " labels");
    }
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
      if (at(i, i) != 0.0) fail(ErrorKind::ContractViolation, "non-zero diagonal at " + labels_[i]);
      for (std::size_t j = 0; j < n; ++j) {
        const double v = at(i, j);
        if (!std::isfinite(v) || v < 0.0) {
          fail(ErrorKind::ContractViolation,
               "entry (" + labels_[i] + ", " + labels_[j] + ") is negative or not finite");
        }
        if (v != at(j, i)) {
          fail(ErrorKind::ContractViolation,
               "matrix is not symmetric at (" + labels_[i] + ", " + labels_[j] + ")");
        }
      }
    }
  }

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  std::span<const double> values() const noexcept { return values_; }

  double at(std::size_t i, std::size_t j) const { return values_[i * size() + j]; }

  /// Sets both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double v) {
    if (i == j && v != 0.0) fail(ErrorKind::ContractViolation, "diagonal must stay zero");
    if (!std::isfinite(v) || v < 0.0) fail(ErrorKind::ContractViolation, "entry must be finite and non-negative");
    values_[i * size() + j] = v;
    values_[j * size() + i] = v;
  }

  std::optional<std::size_t> index_of(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
  }

  /// N(N-1)/2
  std::size_t pair_count() const noexcept { return size() * (size() - (size() ? 1 : 0)) / 2; }

  SymmetricMatrix scaled(double factor) const {
    if (!(factor > 0.0)) fail(ErrorKind::ContractViolation, "scale factor must be positive");
    SymmetricMatrix out = *this;
    for (auto& v : out.values_) v *= factor;
    return out;
  }

  /// Rows and columns reordered so that row k of the result is row order[k].
  SymmetricMatrix permuted(std::span<const std::size_t> order) const {
    if (order.size() != size()) fail(ErrorKind::ContractViolation, "permutation size mismatch");
    std::vector<std::string> labels;
    for (auto k : order) labels.push_back(labels_.at(k));
    SymmetricMatrix out(std::move(labels));
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j = 0; j < size(); ++j) out.values_[i * size() + j] = at(order[i], order[j]);
    }
    return out;
  }

  friend bool operator==(const SymmetricMatrix&, const SymmetricMatrix&) = default;

 private:
  void check_labels() const {
    std::set<std::string_view> seen;
    for (const auto& l : labels_) {
      if (l.empty()) fail(ErrorKind::ContractViolation, "empty matrix label");
      if (!seen.insert(l).second) fail(ErrorKind::ContractViolation, "duplicate matrix label \"" + l + "\"");
    }
  }

  std::vector<std::string> labels_;
  std::vector<double> values_;
};

/// Pairwise lexical distances: a symmetric matrix with entries in [0, 1].
class DistanceMatrix : public SymmetricMatrix {
 public:
  DistanceMatrix() = default;

  DistanceMatrix(std::vector<std::string> labels, std::vector<double> values)
      : SymmetricMatrix(std::move(labels), std::move(values)) {
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j = 0; j < size(); ++j) {
        if (at(i, j) > 1.0) {
          fail(ErrorKind::ContractViolation,
               "distance (" + label(i) + ", " + label(j) + ") exceeds 1");
        }
      }
    }
  }

  explicit DistanceMatrix(SymmetricMatrix m)
      : DistanceMatrix(m.labels(), std::vector<double>(m.values().begin(), m.values().end())) {}
};

struct BuildOptions {
  /// 0 selects std::thread::hardware_concurrency().
  unsigned threads = 1;
};

/// Pairwise language distances over `lists`, labels in the given order.
/// Each pair is written to its own cell, so the result does not depend on
/// the thread count or schedule.
inline DistanceMatrix build_matrix(std::span<const WordList> lists, const BuildOptions& options = {}) {
  const std::size_t n = lists.size();
  if (n < 2) fail(ErrorKind::ContractViolation, "need at least two word lists");

  std::vector<std::string> labels;
  for (const auto& l : lists) labels.push_back(l.language_id());
  std::set<std::string_view> unique(labels.begin(), labels.end());
  if (unique.size() != n) fail(ErrorKind::Validation, "duplicate language id in corpus");

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<double> values(n * n, 0.0);
  std::vector<std::optional<Error>> errors(pairs.size());

  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t k = begin; k < pairs.size(); k += stride) {
      const auto [i, j] = pairs[k];
      try {
        const double d = language_distance(lists[i], lists[j]).value;
        values[i * n + j] = d;
        values[j * n + i] = d;
      } catch (const Error& e) {
        errors[k] = e;
      }
    }
  };

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, pairs.size()));
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  }

  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (errors[k]) {
      const auto [i, j] = pairs[k];
      fail(errors[k]->kind(), "pair (" + labels[i] + ", " + labels[j] + "): " + errors[k]->what());
    }
  }
  return DistanceMatrix(std::move(labels), std::move(values));
}

}  // namespace lexistat

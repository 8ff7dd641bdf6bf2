#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexistat/error.hpp"
#include "lexistat/unicode.hpp"

namespace lexistat {

inline constexpr int kDefaultMeaningCount = 200;

/// One slot of a Swadesh list: a 1-based index and its English gloss.
struct Meaning {
  int index = 0;
  std::string gloss;

  friend bool operator==(const Meaning&, const Meaning&) = default;
};

/// A normalized orthographic form, stored as Unicode scalar values.
/// Never empty and never contains whitespace, control characters or hyphens.
/// Only `normalize_form` creates one.
class WordForm {
 public:
  const std::u32string& code_points() const noexcept { return chars_; }
  std::size_t size() const noexcept { return chars_.size(); }
  std::string utf8() const { return unicode::to_utf8(chars_); }

  friend bool operator==(const WordForm&, const WordForm&) = default;
  friend auto operator<=>(const WordForm&, const WordForm&) = default;

 private:
  explicit WordForm(std::u32string chars) : chars_(std::move(chars)) {}
  friend WordForm normalize_form(std::string_view raw);

  std::u32string chars_;
};

namespace detail {

inline icu::UnicodeString strip_separators(const icu::UnicodeString& s) {
  icu::UnicodeString out;
  for (int32_t i = 0; i < s.length(); i = s.moveIndex32(i, 1)) {
    const UChar32 c = s.char32At(i);
    const auto cp = static_cast<char32_t>(c);
    if (unicode::is_space_or_control(cp) || unicode::is_hyphen(cp)) continue;
    out.append(c);
  }
  return out;
}

}  // namespace detail

/// Canonical composition, lowercase folding, and removal of all whitespace,
/// control characters and hyphens. Idempotent.
inline WordForm normalize_form(std::string_view raw) {
  unicode::require_utf8(raw);
  const auto input = icu::UnicodeString::fromUTF8(
      icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size())));
  // Stripping before composing lets a base letter and a combining mark that
  // were separated by a hyphen compose; stripping again after folding keeps
  // the result free of separators.
  auto folded = detail::strip_separators(
      unicode::fold_and_compose(detail::strip_separators(input)));
  auto chars = unicode::to_code_points(folded);
  if (chars.empty()) {
    fail(ErrorKind::EmptyForm, "form \"" + std::string(raw) + "\" is empty after normalization");
  }
  return WordForm(std::move(chars));
}

struct WordEntry {
  Meaning meaning;
  WordForm form;
};

/// One language's Swadesh list. At most one form per meaning; immutable once
/// constructed.
class WordList {
 public:
  WordList(std::string language_id, std::vector<WordEntry> entries,
           int meaning_count = kDefaultMeaningCount,
           std::optional<std::string> town = std::nullopt)
      : language_id_(std::move(language_id)), town_(std::move(town)), meaning_count_(meaning_count) {
    if (language_id_.empty()) fail(ErrorKind::Validation, "empty language id");
    if (meaning_count_ < 1) fail(ErrorKind::Validation, "meaning count must be positive");
    for (auto& entry : entries) {
      const int index = entry.meaning.index;
      if (index < 1 || index > meaning_count_) {
        fail(ErrorKind::Validation, language_id_ + ": meaning index " + std::to_string(index) +
                                        " outside [1, " + std::to_string(meaning_count_) + "]");
      }
      auto [it, inserted] = slots_.emplace(index, std::move(entry));
      if (!inserted) {
        fail(ErrorKind::Validation,
             language_id_ + ": duplicate meaning index " + std::to_string(index));
      }
    }
  }

  const std::string& language_id() const noexcept { return language_id_; }
  const std::optional<std::string>& town() const noexcept { return town_; }
  int meaning_count() const noexcept { return meaning_count_; }
  std::size_t coverage() const noexcept { return slots_.size(); }

  /// Filled slots keyed by meaning index, in ascending index order.
  const std::map<int, WordEntry>& slots() const noexcept { return slots_; }

  const WordForm* find(int index) const {
    auto it = slots_.find(index);
    return it == slots_.end() ? nullptr : &it->second.form;
  }

  friend bool operator==(const WordList& a, const WordList& b) {
    if (a.language_id_ != b.language_id_ || a.meaning_count_ != b.meaning_count_ ||
        a.slots_.size() != b.slots_.size()) {
      return false;
    }
    return std::equal(a.slots_.begin(), a.slots_.end(), b.slots_.begin(),
                      [](const auto& x, const auto& y) {
                        return x.first == y.first && x.second.meaning == y.second.meaning &&
                               x.second.form == y.second.form;
                      });
  }

 private:
  std::string language_id_;
  std::optional<std::string> town_;
  int meaning_count_;
  std::map<int, WordEntry> slots_;
};

// ---------------------------------------------------------------------------
// TSV word-list files: header "index\tgloss\tword", one row per meaning.

inline constexpr std::string_view kWordListHeader = "index\tgloss\tword";

struct WordListFormat {
  int meaning_count = kDefaultMeaningCount;
  std::string language_id;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\v\f";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(ws) - first + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::optional<int> parse_int(std::string_view s) {
  s = trim(s);
  if (s.empty() || s.size() > 9) return std::nullopt;
  int value = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + (c - '0');
  }
  return value;
}

}  // namespace detail

inline WordList parse_word_list(std::string_view text, const WordListFormat& format) {
  unicode::require_utf8(text);
  std::vector<WordEntry> entries;
  std::set<int> seen;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (!header_seen) {
      if (line != kWordListHeader) {
        fail(ErrorKind::Parse, "expected header \"index<TAB>gloss<TAB>word\"", line_no);
      }
      header_seen = true;
      continue;
    }
    if (detail::trim(line).empty()) continue;

    const auto cols = detail::split(line, '\t');
    if (cols.size() != 3) {
      fail(ErrorKind::Parse, "expected 3 tab-separated columns, found " + std::to_string(cols.size()),
           line_no);
    }
    const auto index = detail::parse_int(cols[0]);
    if (!index) fail(ErrorKind::Parse, "meaning index is not an integer", line_no);
    if (*index < 1 || *index > format.meaning_count) {
      fail(ErrorKind::Validation,
           "meaning index " + std::to_string(*index) + " outside [1, " +
               std::to_string(format.meaning_count) + "]",
           line_no);
    }
    if (!seen.insert(*index).second) {
      fail(ErrorKind::Validation, "duplicate meaning index " + std::to_string(*index), line_no);
    }
    try {
      entries.push_back({{*index, std::string(detail::trim(cols[1]))}, normalize_form(cols[2])});
    } catch (const Error& e) {
      fail(e.kind(), "meaning " + std::to_string(*index) + ": " + e.what(), line_no);
    }
  }
  return WordList(format.language_id.empty() ? std::string("unnamed") : format.language_id,
                  std::move(entries), format.meaning_count);
}

inline std::string serialize_word_list(const WordList& list) {
  std::string out(kWordListHeader);
  out += '\n';
  for (const auto& [index, entry] : list.slots()) {
    out += std::to_string(index);
    out += '\t';
    out += entry.meaning.gloss;
    out += '\t';
    out += entry.form.utf8();
    out += '\n';
  }
  return out;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(ErrorKind::Io, "cannot read " + path.string());
  return std::move(buf).str();
}

/// Reads a TSV word list; the language id defaults to the file stem.
inline WordList load_word_list(const std::filesystem::path& path, int meaning_count = kDefaultMeaningCount) {
  const std::string text = read_file(path);
  try {
    return parse_word_list(text, {meaning_count, path.stem().string()});
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what(), e.line());
  }
}

/// Loads every `*.tsv` file in a directory, sorted by file name.
inline std::vector<WordList> load_word_list_dir(const std::filesystem::path& dir,
                                                int meaning_count = kDefaultMeaningCount) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) fail(ErrorKind::Io, dir.string() + " is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& item : std::filesystem::directory_iterator(dir)) {
    if (item.is_regular_file() && item.path().extension() == ".tsv") files.push_back(item.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<WordList> lists;
  lists.reserve(files.size());
  for (const auto& f : files) lists.push_back(load_word_list(f, meaning_count));
  return lists;
}

// ---------------------------------------------------------------------------
// Corpus validation

struct LanguageCoverage {
  std::string language_id;
  std::size_t coverage = 0;
  std::vector<int> missing;  // relative to the union of meanings in the corpus
};

struct ValidationWarning {
  std::string language_id;
  std::string message;
};

struct ValidationReport {
  std::vector<int> meaning_union;
  std::vector<LanguageCoverage> languages;
  std::vector<ValidationWarning> warnings;
};

struct ValidationOptions {
  std::size_t coverage_floor = 100;
};

inline ValidationReport validate_corpus(std::span<const WordList> lists,
                                        const ValidationOptions& options = {}) {
  if (lists.size() < 2) fail(ErrorKind::ContractViolation, "corpus validation needs at least two lists");

  std::set<std::string> ids;
  for (const auto& list : lists) {
    if (!ids.insert(list.language_id()).second) {
      fail(ErrorKind::Validation, "duplicate language id \"" + list.language_id() + "\"");
    }
  }

  std::set<int> all;
  for (const auto& list : lists) {
    for (const auto& [index, entry] : list.slots()) all.insert(index);
  }

  ValidationReport report;
  report.meaning_union.assign(all.begin(), all.end());
  for (const auto& list : lists) {
    LanguageCoverage row{list.language_id(), list.coverage(), {}};
    for (int index : all) {
      if (!list.find(index)) row.missing.push_back(index);
    }
    if (list.coverage() < options.coverage_floor) {
      report.warnings.push_back({list.language_id(), "coverage " + std::to_string(list.coverage()) +
                                                         " below floor " +
                                                         std::to_string(options.coverage_floor)});
    }
    report.languages.push_back(std::move(row));
  }
  return report;
}

}  // namespace lexistat

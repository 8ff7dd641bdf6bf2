#include <gtest/gtest.h>

#include <random>
#include <string>

#include "lexistat/distance.hpp"
#include "oracles/edit_search_oracle.hpp"
#include "support/generators.hpp"

using namespace lexistat;
using lexistat::testkit::make_list;

namespace {

WordForm w(std::string_view s) { return normalize_form(s); }

}  // namespace

TEST(Levenshtein, Examples) {
  EXPECT_EQ(levenshtein(w("abc"), w("abc")), 0u);
  EXPECT_EQ(levenshtein(w("ab"), w("b")), 1u);
  EXPECT_EQ(levenshtein(w("kitten"), w("sitting")), 3u);
  EXPECT_EQ(levenshtein(std::string(""), std::string("abc")), 3u);
  EXPECT_EQ(levenshtein(std::string("abc"), std::string("")), 3u);
}

TEST(Levenshtein, CountsScalarValuesNotBytes) {
  // ô is two UTF-8 bytes but one scalar value.
  EXPECT_EQ(levenshtein(w("t\xC3\xB4"), w("to")), 1u);
}

TEST(Levenshtein, AgreesWithExhaustiveSearch) {
  const oracle::EditSearchOracle search("abc", 4);
  const auto& words = search.words();
  for (std::size_t s = 0; s < words.size(); ++s) {
    const auto dist = search.distances_from(s);
    for (std::size_t t = 0; t < words.size(); ++t) {
      ASSERT_EQ(levenshtein(words[s], words[t]), static_cast<std::size_t>(dist[t]))
          << words[s] << " / " << words[t];
    }
  }
}

TEST(WordDistance, NormalizesByLongerWord) {
  EXPECT_EQ(word_distance(w("ab"), w("cb")).value, 0.5);
  EXPECT_EQ(word_distance(w("abcdefgh"), w("abcdefgx")).value, 0.125);
  EXPECT_EQ(word_distance(w("abcd"), w("abcd")).value, 0.0);
  EXPECT_EQ(word_distance(w("a"), w("abcd")).value, 0.75);
}

TEST(WordDistance, Properties) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 5000; ++trial) {
    const auto a = w(testkit::random_word(rng, "abcd", 1, 9));
    const auto b = w(testkit::random_word(rng, "abcd", 1, 9));
    const double d = word_distance(a, b).value;
    EXPECT_EQ(d, word_distance(b, a).value);
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 1.0);
    EXPECT_EQ(d == 0.0, a == b);
    EXPECT_LE(levenshtein(a, b), std::max(a.size(), b.size()));
  }
}

// Dividing by the longer length breaks the triangle inequality for some
// short transposition-like triples.
TEST(WordDistance, IsNotAMetricInGeneral) {
  const double direct = word_distance(w("ab"), w("ba")).value;
  const double via = word_distance(w("ab"), w("aba")).value + word_distance(w("aba"), w("ba")).value;
  EXPECT_EQ(direct, 1.0);
  EXPECT_NEAR(via, 2.0 / 3.0, 1e-15);
  EXPECT_GT(direct, via);
}

TEST(LanguageDistance, IdenticalListsAreAtZero) {
  std::mt19937_64 rng(3);
  std::vector<std::string> words;
  for (int i = 0; i < 200; ++i) words.push_back(testkit::random_word(rng, "abcdefg", 2, 8));
  const auto a = make_list("a", words);
  const auto d = language_distance(a, a);
  EXPECT_EQ(d.value, 0.0);
  EXPECT_EQ(d.slots_compared, 200u);
}

TEST(LanguageDistance, MeanOverSharedSlots) {
  EXPECT_EQ(language_distance(make_list("a", {"ab", "cd"}), make_list("b", {"xb", "xd"})).value, 0.5);
  // per-slot distances 0, 1/2, 1
  const auto d = language_distance(make_list("a", {"abc", "ab", "a"}), make_list("b", {"abc", "ax", "z"}));
  EXPECT_DOUBLE_EQ(d.value, 0.5);
  EXPECT_EQ(d.slots_compared, 3u);
}

TEST(LanguageDistance, MissingSlotsAreSkipped) {
  const auto full = make_list("a", {"ab", "cd", "ef"});
  const WordList partial("b", {{{2, "m2"}, w("cx")}});
  const auto d = language_distance(full, partial);
  EXPECT_EQ(d.slots_compared, 1u);
  EXPECT_EQ(d.value, 0.5);
}

TEST(LanguageDistance, NoOverlapIsAnError) {
  const WordList a("a", {{{1, "m1"}, w("ab")}});
  const WordList b("b", {{{2, "m2"}, w("ab")}});
  try {
    language_distance(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoOverlap);
  }
}

TEST(BuildMatrix, TwoIdenticalLists) {
  const std::vector<WordList> lists = {make_list("a", {"ab", "cd"}), make_list("b", {"ab", "cd"})};
  const auto m = build_matrix(lists);
  EXPECT_EQ(m.size(), 2u);
  for (double v : m.values()) EXPECT_EQ(v, 0.0);
}

TEST(BuildMatrix, MatchesPairwiseBruteForce) {
  const std::vector<WordList> lists = {make_list("a", {"abc", "ab", "a"}), make_list("b", {"abc", "ax", "z"}),
                                       make_list("c", {"xyz", "ab", "a"})};
  const auto m = build_matrix(lists);
  // a-b: {0, 1/2, 1}; a-c: {1, 0, 0}; b-c: {1, 1/2, 1}
  EXPECT_DOUBLE_EQ(m.at(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(m.at(0, 2), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(m.at(1, 2), 2.5 / 3.0);
  EXPECT_EQ(m.labels(), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(m.pair_count(), 3u);
}

TEST(BuildMatrix, ScheduleIndependent) {
  std::mt19937_64 rng(77);
  std::vector<WordList> lists;
  for (int l = 0; l < 12; ++l) {
    std::vector<std::string> words;
    for (int i = 0; i < 100; ++i) words.push_back(testkit::random_word(rng, "abcdefghij", 1, 10));
    lists.push_back(make_list("lang" + std::to_string(l), words));
  }
  const auto serial = build_matrix(lists, {1});
  for (unsigned threads : {2u, 3u, 8u, 0u}) {
    const auto parallel = build_matrix(lists, {threads});
    ASSERT_EQ(parallel, serial) << threads;
  }
}

TEST(BuildMatrix, Errors) {
  const std::vector<WordList> one = {make_list("a", {"ab"})};
  EXPECT_THROW(build_matrix(one), Error);
  const std::vector<WordList> dup = {make_list("a", {"ab"}), make_list("a", {"ab"})};
  EXPECT_THROW(build_matrix(dup), Error);
  const std::vector<WordList> disjoint = {WordList("a", {{{1, "m"}, w("ab")}}), WordList("b", {{{2, "m"}, w("ab")}})};
  try {
    build_matrix(disjoint);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoOverlap);
    EXPECT_NE(std::string(e.what()).find("(a, b)"), std::string::npos);
  }
}

TEST(SymmetricMatrix, RejectsBadInput) {
  EXPECT_THROW(SymmetricMatrix({"a", "b"}, {0, 1, 2, 0}), Error);
  EXPECT_THROW(SymmetricMatrix({"a", "b"}, {1, 1, 1, 0}), Error);
  EXPECT_THROW(SymmetricMatrix({"a", "a"}, {0, 1, 1, 0}), Error);
  EXPECT_THROW(DistanceMatrix({"a", "b"}, {0, 1.5, 1.5, 0}), Error);
  EXPECT_NO_THROW(SymmetricMatrix({"a", "b"}, {0, 1.5, 1.5, 0}));
}

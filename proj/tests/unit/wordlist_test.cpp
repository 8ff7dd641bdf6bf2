#include <gtest/gtest.h>

#include <random>
#include <string>

#include "lexistat/wordlist.hpp"
#include "support/generators.hpp"

using namespace lexistat;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected lexistat::Error";
  return ErrorKind::Io;
}

std::string header() { return std::string(kWordListHeader) + "\n"; }

}  // namespace

TEST(NormalizeForm, CaseAndWhitespace) {
  EXPECT_EQ(normalize_form("Jiaby ").utf8(), "jiaby");
  EXPECT_EQ(normalize_form("\tRANO\n").utf8(), "rano");
}

TEST(NormalizeForm, RemovesHyphensAndInternalSpaces) {
  EXPECT_EQ(normalize_form("an-dranomasina").utf8(), "andranomasina");
  EXPECT_EQ(normalize_form("an dranomasina").utf8(), "andranomasina");
}

TEST(NormalizeForm, BlankIsAnError) {
  EXPECT_EQ(kind_of([] { normalize_form("   "); }), ErrorKind::EmptyForm);
  EXPECT_EQ(kind_of([] { normalize_form("-"); }), ErrorKind::EmptyForm);
  EXPECT_EQ(kind_of([] { normalize_form(""); }), ErrorKind::EmptyForm);
}

TEST(NormalizeForm, ComposesCanonically) {
  // "o" + COMBINING CIRCUMFLEX → U+00F4, one scalar value.
  const auto decomposed = normalize_form("to\xCC\x82");
  const auto composed = normalize_form("t\xC3\xB4");
  EXPECT_EQ(decomposed, composed);
  EXPECT_EQ(decomposed.size(), 2u);
  // Uppercase precomposed letter folds to the same form.
  EXPECT_EQ(normalize_form("T\xC3\x94"), composed);
}

TEST(NormalizeForm, HyphenBetweenBaseAndMarkStillComposes) {
  EXPECT_EQ(normalize_form("to-\xCC\x82"), normalize_form("t\xC3\xB4"));
}

TEST(NormalizeForm, RejectsInvalidUtf8) {
  EXPECT_EQ(kind_of([] { normalize_form("ab\xFF"); }), ErrorKind::Encoding);
}

TEST(NormalizeForm, IdempotentOnRandomInput) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> len(1, 12);
  std::vector<std::string> pieces = {"a", "B", " ", "-", "\t", "\xC3\xB4", "o\xCC\x82", "\xC3\x9F", "Z", "\xE2\x80\x90"};
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string raw;
    for (int k = len(rng); k > 0; --k) raw += pieces[pick(rng)];
    try {
      const auto once = normalize_form(raw);
      EXPECT_EQ(normalize_form(once.utf8()), once) << raw;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::EmptyForm) << raw;
    }
  }
}

TEST(ParseWordList, DirectFieldMapping) {
  const auto list = parse_word_list(header() + "1\tall\tjiaby\n2\tand\tsy\n", {200, "merina"});
  EXPECT_EQ(list.language_id(), "merina");
  EXPECT_EQ(list.coverage(), 2u);
  ASSERT_NE(list.find(1), nullptr);
  EXPECT_EQ(list.find(1)->utf8(), "jiaby");
  EXPECT_EQ(list.slots().at(2).meaning.gloss, "and");
  EXPECT_EQ(list.find(3), nullptr);
}

TEST(ParseWordList, HeaderOnlyIsEmptyList) {
  EXPECT_EQ(parse_word_list(header(), {}).coverage(), 0u);
  EXPECT_EQ(parse_word_list("", {}).coverage(), 0u);
}

TEST(ParseWordList, DuplicateMeaningIsValidationError) {
  try {
    parse_word_list(header() + "7\tbite\tmanaikitra\n7\tbite\tmanekitra\n", {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Validation);
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(ParseWordList, WrongColumnCountReportsLine) {
  try {
    parse_word_list(header() + "1\tall\tjiaby\n2\tand\n", {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(ParseWordList, IndexOutOfRange) {
  EXPECT_EQ(kind_of([] { parse_word_list(header() + "0\tx\ty\n", {}); }), ErrorKind::Validation);
  EXPECT_EQ(kind_of([] { parse_word_list(header() + "201\tx\ty\n", {}); }), ErrorKind::Validation);
  EXPECT_EQ(parse_word_list(header() + "201\tx\ty\n", {250, "l"}).coverage(), 1u);
}

TEST(ParseWordList, Errors) {
  EXPECT_EQ(kind_of([] { parse_word_list("idx\tgloss\tword\n", {}); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse_word_list(header() + "x\tall\tjiaby\n", {}); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse_word_list(header() + "1\tall\t\xC0\n", {}); }), ErrorKind::Encoding);
  EXPECT_EQ(kind_of([] { parse_word_list(header() + "1\tall\t - \n", {}); }), ErrorKind::EmptyForm);
}

TEST(ParseWordList, RoundTripProperty) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coverage(0, 200);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> idx(200);
    for (int i = 0; i < 200; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(static_cast<std::size_t>(coverage(rng)));
    std::vector<WordEntry> entries;
    for (int i : idx) {
      entries.push_back({{i, "gloss " + std::to_string(i)},
                         normalize_form(testkit::random_word(rng, "abdefghiklmnoprstvyz", 1, 12))});
    }
    const WordList list("lang", std::move(entries));
    EXPECT_LE(list.coverage(), 200u);
    EXPECT_EQ(parse_word_list(serialize_word_list(list), {200, "lang"}), list);
  }
}

TEST(WordList, ConstructorEnforcesInvariants) {
  auto form = normalize_form("rano");
  EXPECT_EQ(kind_of([&] { WordList("l", {{{1, "a"}, form}, {{1, "b"}, form}}); }), ErrorKind::Validation);
  EXPECT_EQ(kind_of([&] { WordList("l", {{{0, "a"}, form}}); }), ErrorKind::Validation);
  EXPECT_EQ(kind_of([&] { WordList("", {}); }), ErrorKind::Validation);
}

TEST(ValidateCorpus, CompleteListsHaveNoWarnings) {
  std::mt19937_64 rng(1);
  std::vector<std::string> a, b;
  for (int i = 0; i < 200; ++i) {
    a.push_back(testkit::random_word(rng, "abc", 2, 5));
    b.push_back(testkit::random_word(rng, "abc", 2, 5));
  }
  const std::vector<WordList> lists = {testkit::make_list("x", a), testkit::make_list("y", b)};
  const auto report = validate_corpus(lists);
  EXPECT_TRUE(report.warnings.empty());
  EXPECT_EQ(report.languages[0].coverage, 200u);
  EXPECT_TRUE(report.languages[1].missing.empty());
}

TEST(ValidateCorpus, NamesMissingSlots) {
  const auto full = parse_word_list(header() + "1\ta\tx\n5\tb\tx\n9\tc\tx\n10\td\tx\n", {200, "full"});
  const auto gappy = parse_word_list(header() + "1\ta\tx\n10\td\tx\n", {200, "gappy"});
  const std::vector<WordList> lists = {full, gappy};
  const auto report = validate_corpus(lists, {1});
  EXPECT_EQ(report.languages[1].missing, (std::vector<int>{5, 9}));
  EXPECT_TRUE(report.languages[0].missing.empty());
  EXPECT_TRUE(report.warnings.empty());
  EXPECT_EQ(validate_corpus(lists).warnings.size(), 2u);  // default floor 100
}

TEST(ValidateCorpus, DuplicateLanguageIdIsHardError) {
  const auto a = parse_word_list(header() + "1\ta\tx\n", {200, "merina"});
  const std::vector<WordList> lists = {a, a};
  EXPECT_EQ(kind_of([&] { validate_corpus(lists); }), ErrorKind::Validation);
  EXPECT_EQ(kind_of([&] { validate_corpus(std::span(lists).first(1)); }), ErrorKind::ContractViolation);
}

#include <doctest.h>

#include "oracle.hpp"
#include "symtag/error.hpp"
#include "symtag/eval.hpp"
#include "test_util.hpp"

using namespace symtag;
using testutil::sentence;

namespace {

EntitySpan span(std::size_t start, std::size_t end, std::size_t sent = 0, const std::string& cat = "SYM") {
  return EntitySpan{sent, start, end, "", cat};
}

Counts run(std::vector<EntitySpan> gold, std::vector<EntitySpan> pred, MatchMode mode) {
  return counts_of(match_spans(gold, pred, mode));
}

Corpus corpus_of(const std::vector<std::vector<std::string>>& labels,
                 const std::vector<std::vector<std::string>>& texts = {}) {
  Corpus c;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    c.sentences.push_back(sentence(labels[i], texts.empty() ? std::vector<std::string>{} : texts[i]));
  }
  return c;
}

Corpus relabel(const Corpus& c, const std::vector<std::vector<std::string>>& labels) {
  Corpus out = c;
  for (std::size_t s = 0; s < labels.size(); ++s) {
    for (std::size_t t = 0; t < labels[s].size(); ++t) out.sentences[s].tokens[t].label = testutil::label_of(labels[s][t]);
  }
  return out;
}

}  // namespace

TEST_CASE("match_spans examples") {
  CHECK(run({span(3, 5)}, {span(3, 5)}, MatchMode::kExact) == Counts{1, 0, 0});
  CHECK(run({span(3, 5)}, {span(3, 4)}, MatchMode::kExact) == Counts{0, 1, 1});
  CHECK(run({span(3, 5)}, {span(3, 4)}, MatchMode::kPartial) == Counts{1, 0, 0});
  CHECK(run({span(0, 4)}, {span(0, 2), span(2, 4)}, MatchMode::kPartial) == Counts{1, 1, 0});
  CHECK(run({span(0, 2, 0)}, {span(0, 2, 1)}, MatchMode::kPartial) == Counts{0, 1, 1});
  CHECK(run({span(0, 2, 0, "SYM")}, {span(0, 2, 0, "DIS")}, MatchMode::kPartial) == Counts{0, 1, 1});
  CHECK(run({}, {}, MatchMode::kPartial) == Counts{});
}

TEST_CASE("partial prefers larger overlap then smaller starts") {
  const auto m = match_spans(std::vector{span(0, 5)}, std::vector{span(0, 1), span(2, 5)}, MatchMode::kPartial);
  REQUIRE(m.tp_pairs.size() == 1);
  CHECK(m.tp_pairs[0].second.start == 2);

  const auto tie = match_spans(std::vector{span(0, 4)}, std::vector{span(0, 2), span(2, 4)}, MatchMode::kPartial);
  REQUIRE(tie.tp_pairs.size() == 1);
  CHECK(tie.tp_pairs[0].second.start == 0);

  // Exact pairs are fixed before any overlap pairing.
  const auto seeded =
      match_spans(std::vector{span(0, 3), span(3, 4)}, std::vector{span(3, 4), span(1, 4)}, MatchMode::kPartial);
  CHECK(counts_of(seeded) == Counts{2, 0, 0});
}

TEST_CASE("metrics_from_counts") {
  const Metrics m = metrics_from_counts({6, 2, 4});
  CHECK(m.precision == doctest::Approx(0.75));
  CHECK(m.recall == doctest::Approx(0.6));
  CHECK(m.f1 == doctest::Approx(2.0 / 3.0));
  const Metrics z = metrics_from_counts({});
  CHECK(z.precision == 0.0);
  CHECK(z.recall == 0.0);
  CHECK(z.f1 == 0.0);
}

TEST_CASE("score_corpus identity and all-O") {
  const Corpus gold = parse_corpus(testutil::kExampleText);
  const EvalResult same = score_corpus(gold, gold);
  for (double v : {same.precision(), same.recall(), same.f1(), same.p_partial(), same.r_partial(), same.f1_partial()}) {
    CHECK(v == 1.0);
  }
  const Corpus none = relabel(gold, {{"O", "O", "O", "O", "O", "O", "O", "O", "O"}});
  const EvalResult r = score_corpus(gold, none);
  CHECK(r.precision() == 0.0);
  CHECK(r.recall() == 0.0);
  CHECK(r.f1() == 0.0);
  CHECK(r.exact == Counts{0, 0, 2});
}

TEST_CASE("ten gold, eight predicted") {
  // Spans per sentence: gold | pred
  // s0: [0,2) [3,4)        | [0,2) [3,4)         2 exact
  // s1: [0,3) [4,6)        | [0,3) [4,6)         2 exact
  // s2: [1,2) [3,5)        | [1,2) [3,5)         2 exact
  // s3: [0,4) [5,6)        | [1,3)               1 partial
  // s4: [0,1) [2,3)        | [5,6)               FP in both modes
  const Corpus gold = corpus_of({
      {"B-SYM", "I-SYM", "O", "B-SYM", "O", "O"},
      {"B-SYM", "I-SYM", "I-SYM", "O", "B-SYM", "I-SYM"},
      {"O", "B-SYM", "O", "B-SYM", "I-SYM", "O"},
      {"B-SYM", "I-SYM", "I-SYM", "I-SYM", "O", "B-SYM"},
      {"B-SYM", "O", "B-SYM", "O", "O", "O"},
  });
  const Corpus pred = relabel(gold, {
                                        {"B-SYM", "I-SYM", "O", "B-SYM", "O", "O"},
                                        {"B-SYM", "I-SYM", "I-SYM", "O", "B-SYM", "I-SYM"},
                                        {"O", "B-SYM", "O", "B-SYM", "I-SYM", "O"},
                                        {"O", "B-SYM", "I-SYM", "O", "O", "O"},
                                        {"O", "O", "O", "O", "O", "B-SYM"},
                                    });
  const auto og = oracle::spans_of(testutil::label_strings(gold));
  const auto op = oracle::spans_of(testutil::label_strings(pred));
  REQUIRE(og.size() == 10);
  REQUIRE(op.size() == 8);
  REQUIRE(oracle::exact_tp(og, op) == 6);
  REQUIRE(oracle::greedy_partial_tp(og, op) == 7);

  const EvalResult r = score_corpus(gold, pred);
  CHECK(r.exact == Counts{6, 2, 4});
  CHECK(r.partial == Counts{7, 1, 3});
  CHECK(r.precision() == doctest::Approx(0.75));
  CHECK(r.recall() == doctest::Approx(0.6));
  CHECK(r.f1() == doctest::Approx(0.667).epsilon(0.001));
  CHECK(r.p_partial() == doctest::Approx(0.875));
  CHECK(r.r_partial() == doctest::Approx(0.7));
  CHECK(r.f1_partial() == doctest::Approx(0.778).epsilon(0.001));
}

TEST_CASE("alignment errors cite sentence and token") {
  const Corpus gold = corpus_of({{"O", "B-SYM"}, {"O", "O", "O"}});
  Corpus pred = gold;
  pred.sentences[1].tokens[2].text = "other";
  try {
    score_corpus(gold, pred);
    FAIL("expected AlignmentError");
  } catch (const AlignmentError& e) {
    CHECK(e.sentence() == 1);
    CHECK(e.token() == 2);
  }
  pred = gold;
  pred.sentences.pop_back();
  CHECK_THROWS_AS(score_corpus(gold, pred), AlignmentError);
  pred = gold;
  pred.sentences[0].tokens.pop_back();
  CHECK_THROWS_AS(tp_by_length(gold, pred), AlignmentError);
}

TEST_CASE("tp_by_length") {
  const Corpus ones = corpus_of({{"B-SYM", "O", "B-SYM"}, {"B-SYM"}});
  const auto t1 = tp_by_length(ones, ones);
  CHECK(t1.buckets[0].gold == 3);
  CHECK(t1.buckets[0].proportion() == 1.0);
  for (std::size_t b = 1; b < 4; ++b) CHECK(t1.buckets[b].gold == 0);

  std::vector<std::string> long_labels(16, "I-SYM");
  long_labels[0] = "B-SYM";
  const Corpus long_span = corpus_of({long_labels});
  const auto t16 = tp_by_length(long_span, long_span);
  CHECK(t16.buckets[3].gold == 1);
  CHECK(t16.buckets[3].tp == 1);

  // Lengths 1,1,2,3,5; hits on one 1, the 2 and the 5.
  const Corpus gold = corpus_of({{"B-SYM", "O", "B-SYM", "I-SYM", "O", "B-SYM"},
                                 {"B-SYM", "I-SYM", "I-SYM", "O", "B-SYM", "I-SYM", "I-SYM", "I-SYM", "I-SYM"}});
  const Corpus pred = relabel(gold, {{"B-SYM", "O", "B-SYM", "I-SYM", "O", "O"},
                                     {"B-SYM", "I-SYM", "O", "O", "B-SYM", "I-SYM", "I-SYM", "I-SYM", "I-SYM"}});
  const auto t = tp_by_length(gold, pred);
  CHECK(t.buckets[0].proportion() == 0.5);
  CHECK(t.buckets[1].proportion() == 1.0);
  CHECK(t.buckets[2].proportion() == 0.0);
  CHECK(t.buckets[3].proportion() == 1.0);
  CHECK(t.total_gold() == 5);
}

TEST_CASE("error_terms") {
  const std::vector<std::vector<std::string>> texts = {{"Cancer", "and", "brain", "fog"}, {"cancer", "again"}};
  const Corpus gold = corpus_of({{"O", "O", "B-SYM", "I-SYM"}, {"O", "O"}}, texts);
  const Corpus pred = relabel(gold, {{"B-SYM", "O", "O", "O"}, {"B-SYM", "O"}});
  const ErrorTerms e = error_terms(gold, pred, MatchMode::kExact);
  CHECK(e.fp == TermCounts{{"cancer", 2}});
  CHECK(e.fn == TermCounts{{"brain fog", 1}});

  const ErrorTerms none = error_terms(gold, gold, MatchMode::kPartial);
  CHECK(none.fp.empty());
  CHECK(none.fn.empty());
}

TEST_CASE("shared_errors") {
  const std::vector<RunErrors> one = {{"a", {{"cough", 2}, {"fever", 1}}}};
  CHECK(shared_errors(one) == std::set<std::string>{"cough", "fever"});

  const std::vector<RunErrors> disjoint = {{"a", {{"cough", 1}}}, {"b", {{"fever", 1}}}};
  CHECK(shared_errors(disjoint).empty());

  const std::vector<RunErrors> three = {{"a", {{"cough", 1}, {"fever", 3}, {"cancer", 1}}},
                                        {"b", {{"cough", 2}, {"fever", 1}, {"pain", 1}}},
                                        {"c", {{"fever", 1}, {"cough", 1}}}};
  CHECK(shared_errors(three) == std::set<std::string>{"cough", "fever"});

  CHECK_THROWS_AS(shared_errors(std::vector<RunErrors>{}), ArgumentError);
}

TEST_CASE("longest_correct") {
  const Corpus gold = parse_corpus(testutil::kExampleText);
  const Corpus none = relabel(gold, {{"O", "O", "O", "O", "O", "O", "O", "O", "O"}});
  const LongestCorrect empty = longest_correct(gold, none);
  CHECK(empty.length == 0);
  CHECK(empty.surfaces.empty());

  const std::vector<std::string> words = tokenize_raw("pain, especially in his hand, finger joints, and feet joints");
  REQUIRE(words.size() == 13);
  std::vector<std::string> texts = {"severe"};
  texts.insert(texts.end(), words.begin(), words.end());
  texts.emplace_back("lately");
  std::vector<std::string> labels(texts.size(), "I-SYM");
  labels.front() = "O";
  labels[1] = "B-SYM";
  labels.back() = "O";
  const Corpus c = corpus_of({labels, {"B-SYM", "I-SYM"}}, {texts, {"bad", "cough"}});
  const LongestCorrect lc = longest_correct(c, c);
  CHECK(lc.length == 13);
  CHECK(lc.surfaces == std::vector<std::string>{"pain , especially in his hand , finger joints , and feet joints"});

  const Corpus two = corpus_of({{"B-SYM", "I-SYM", "O", "B-SYM", "I-SYM"}, {"B-SYM", "I-SYM"}},
                               {{"sore", "throat", "and", "runny", "nose"}, {"sore", "throat"}});
  const LongestCorrect lc2 = longest_correct(two, two);
  CHECK(lc2.length == 2);
  CHECK(lc2.surfaces == std::vector<std::string>{"sore throat", "runny nose"});
}

TEST_CASE("eval properties over random cases") {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    Rng rng(seed);
    const auto [gold, pred] = testutil::random_eval_case(rng, 10, 6);
    CAPTURE(seed);
    const EvalResult r = score_corpus(gold, pred);
    const auto og = oracle::spans_of(testutil::label_strings(gold));
    const auto op = oracle::spans_of(testutil::label_strings(pred));

    for (const Counts& c : {r.exact, r.partial}) {
      CHECK(c.tp + c.fn == og.size());
      CHECK(c.tp + c.fp == op.size());
    }
    CHECK(r.exact.tp == oracle::exact_tp(og, op));
    CHECK(r.partial.tp == oracle::greedy_partial_tp(og, op));
    if (oracle::non_conflicting(og, op)) CHECK(r.partial.tp == oracle::max_partial_tp(og, op));

    CHECK(r.p_partial() >= r.precision());
    CHECK(r.r_partial() >= r.recall());
    CHECK(r.f1_partial() >= r.f1());

    const auto table = tp_by_length(gold, pred);
    CHECK(table.total_gold() == og.size());
    for (const auto& b : table.buckets) CHECK(b.tp <= b.gold);

    if (!og.empty()) {
      const EvalResult self = score_corpus(gold, gold);
      CHECK(self.f1() == 1.0);
      CHECK(self.f1_partial() == 1.0);
    }
  }
}

#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "symtag/corpus.hpp"

namespace symtag {

enum class MatchMode { kExact, kPartial };

std::string_view mode_name(MatchMode mode);

struct MatchResult {
  MatchMode mode = MatchMode::kExact;
  std::vector<std::pair<EntitySpan, EntitySpan>> tp_pairs;  // (gold, predicted)
  std::vector<EntitySpan> fp;
  std::vector<EntitySpan> fn;
};

/// One-to-one span matching.
///
/// kExact pairs spans with equal (sentence, start, end, category).
/// kPartial first takes every exact pair, then repeatedly pairs the
/// remaining gold/predicted spans with the largest token overlap (same
/// sentence and category, overlap >= 1). Ties go to the smaller gold start,
/// then the smaller predicted start.
MatchResult match_spans(std::span<const EntitySpan> gold, std::span<const EntitySpan> pred, MatchMode mode);

struct Counts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  Counts& operator+=(const Counts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  friend bool operator==(const Counts&, const Counts&) = default;
};

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// P = TP/(TP+FP), R = TP/(TP+FN), F1 = 2PR/(P+R); each is 0 when its
/// denominator is 0.
Metrics metrics_from_counts(const Counts& counts);

Counts counts_of(const MatchResult& result);

struct EvalResult {
  Counts exact;
  Counts partial;
  Metrics exact_metrics;
  Metrics partial_metrics;

  double precision() const { return exact_metrics.precision; }
  double recall() const { return exact_metrics.recall; }
  double f1() const { return exact_metrics.f1; }
  double p_partial() const { return partial_metrics.precision; }
  double r_partial() const { return partial_metrics.recall; }
  double f1_partial() const { return partial_metrics.f1; }
};

/// Throws AlignmentError unless both corpora have the same sentences with
/// the same token texts.
void check_aligned(const Corpus& gold, const Corpus& pred);

/// Micro-averaged exact and partial scores. Both corpora must be valid.
EvalResult score_corpus(const Corpus& gold, const Corpus& pred);

struct LengthBucket {
  std::size_t gold = 0;
  std::size_t tp = 0;

  double proportion() const {
    return gold == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(gold);
  }
};

/// Gold spans bucketed by length 1, 2, 3 and 4+, with exact-match hits.
struct LengthBucketTable {
  static constexpr std::size_t kBuckets = 4;
  std::array<LengthBucket, kBuckets> buckets{};

  static std::size_t bucket_of(std::size_t length) { return length >= kBuckets ? kBuckets - 1 : length - 1; }
  std::size_t total_gold() const;
};

LengthBucketTable tp_by_length(const Corpus& gold, const Corpus& pred);

/// Lower-cased surface -> occurrence count.
using TermCounts = std::map<std::string, std::size_t>;

struct ErrorTerms {
  TermCounts fp;
  TermCounts fn;
};

ErrorTerms error_terms(const Corpus& gold, const Corpus& pred, MatchMode mode);

struct RunErrors {
  std::string run_id;
  TermCounts fp;
};

/// Surfaces present in the FP set of every run. Throws ArgumentError on an
/// empty input.
std::set<std::string> shared_errors(std::span<const RunErrors> runs);

struct LongestCorrect {
  std::size_t length = 0;
  std::vector<std::string> surfaces;  // distinct, in corpus order
};

LongestCorrect longest_correct(const Corpus& gold, const Corpus& pred);

}  // namespace symtag

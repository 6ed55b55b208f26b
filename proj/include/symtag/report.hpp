#pragma once

#include <span>
#include <string>
#include <vector>

#include "symtag/corpus.hpp"
#include "symtag/eval.hpp"
#include "symtag/rank.hpp"

namespace symtag {

enum class Format { kMarkdown, kCsv };

struct RenderOptions {
  Format format = Format::kMarkdown;
  bool mark_top = false;  // "*" best, "^" second-best distinct value
  int precision_digits = 2;
};

struct NamedStats {
  std::string name;
  StatsRow stats;
};

struct NamedLengthTable {
  std::string name;
  LengthBucketTable table;
};

/// Plain table; rendered as a padded pipe table or as CSV.
struct TextTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string render_table(const TextTable& table, Format format);

/// Fraction as a percentage. precision_digits counts decimals of the
/// fraction, so 2 gives "33%" and 3 gives "33.3%".
std::string format_percent(double fraction, int precision_digits);
std::string format_fixed(double value, int digits);

std::string render_stats(std::span<const NamedStats> rows, const RenderOptions& opts);
std::string render_metric_grid(const MetricGrid& grid, const RenderOptions& opts);
std::string render_score_table(const RankTable& table, const RenderOptions& opts);
std::string render_length_table(std::span<const NamedLengthTable> rows, const RenderOptions& opts);

/// "T(p,r,f)"; an absent component prints as "-".
std::string format_triple(const ScoreTriple& triple);

/// Table with columns mode,TP,FP,FN,P,R,F1.
std::string render_eval(const EvalResult& result, bool exact, bool partial, const RenderOptions& opts);

/// One "surface<TAB>count" line per term, most frequent first.
std::string render_terms(const TermCounts& terms);

}  // namespace symtag

#include "symtag/eval.hpp"

#include <algorithm>
#include <deque>
#include <tuple>

#include "symtag/error.hpp"

namespace symtag {

namespace {

using SpanKey = std::tuple<std::size_t, std::size_t, std::size_t, std::string>;

SpanKey key_of(const EntitySpan& s) { return {s.sentence_index, s.start, s.end, s.category}; }

std::size_t overlap(const EntitySpan& a, const EntitySpan& b) {
  const std::size_t lo = std::max(a.start, b.start);
  const std::size_t hi = std::min(a.end, b.end);
  return hi > lo ? hi - lo : 0;
}

struct Candidate {
  std::size_t overlap;
  std::size_t gold;
  std::size_t pred;
};

}  // namespace

std::string_view mode_name(MatchMode mode) { return mode == MatchMode::kExact ? "exact" : "partial"; }

MatchResult match_spans(std::span<const EntitySpan> gold, std::span<const EntitySpan> pred, MatchMode mode) {
  std::vector<std::ptrdiff_t> gold_to_pred(gold.size(), -1);
  std::vector<char> pred_used(pred.size(), 0);

  std::map<SpanKey, std::deque<std::size_t>> pred_by_key;
  for (std::size_t p = 0; p < pred.size(); ++p) pred_by_key[key_of(pred[p])].push_back(p);
  for (std::size_t g = 0; g < gold.size(); ++g) {
    auto it = pred_by_key.find(key_of(gold[g]));
    if (it == pred_by_key.end() || it->second.empty()) continue;
    const std::size_t p = it->second.front();
    it->second.pop_front();
    gold_to_pred[g] = static_cast<std::ptrdiff_t>(p);
    pred_used[p] = 1;
  }

  if (mode == MatchMode::kPartial) {
    std::map<std::pair<std::size_t, std::string>, std::vector<std::size_t>> open_pred;
    for (std::size_t p = 0; p < pred.size(); ++p) {
      if (!pred_used[p]) open_pred[{pred[p].sentence_index, pred[p].category}].push_back(p);
    }
    std::vector<Candidate> candidates;
    for (std::size_t g = 0; g < gold.size(); ++g) {
      if (gold_to_pred[g] >= 0) continue;
      auto it = open_pred.find({gold[g].sentence_index, gold[g].category});
      if (it == open_pred.end()) continue;
      for (std::size_t p : it->second) {
        if (auto ov = overlap(gold[g], pred[p]); ov > 0) candidates.push_back({ov, g, p});
      }
    }
    std::sort(candidates.begin(), candidates.end(), [&](const Candidate& x, const Candidate& y) {
      if (x.overlap != y.overlap) return x.overlap > y.overlap;
      const auto& gx = gold[x.gold];
      const auto& gy = gold[y.gold];
      if (gx.sentence_index != gy.sentence_index) return gx.sentence_index < gy.sentence_index;
      if (gx.start != gy.start) return gx.start < gy.start;
      if (pred[x.pred].start != pred[y.pred].start) return pred[x.pred].start < pred[y.pred].start;
      return std::tie(x.gold, x.pred) < std::tie(y.gold, y.pred);
    });
    for (const auto& c : candidates) {
      if (gold_to_pred[c.gold] >= 0 || pred_used[c.pred]) continue;
      gold_to_pred[c.gold] = static_cast<std::ptrdiff_t>(c.pred);
      pred_used[c.pred] = 1;
    }
  }

  MatchResult result;
  result.mode = mode;
  for (std::size_t g = 0; g < gold.size(); ++g) {
    if (gold_to_pred[g] >= 0) {
      result.tp_pairs.emplace_back(gold[g], pred[static_cast<std::size_t>(gold_to_pred[g])]);
    } else {
      result.fn.push_back(gold[g]);
    }
  }
  for (std::size_t p = 0; p < pred.size(); ++p) {
    if (!pred_used[p]) result.fp.push_back(pred[p]);
  }
  return result;
}

Metrics metrics_from_counts(const Counts& c) {
  Metrics m;
  if (c.tp + c.fp > 0) m.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  if (c.tp + c.fn > 0) m.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  if (m.precision + m.recall > 0.0) m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

Counts counts_of(const MatchResult& r) { return {r.tp_pairs.size(), r.fp.size(), r.fn.size()}; }

void check_aligned(const Corpus& gold, const Corpus& pred) {
  if (gold.size() != pred.size()) {
    throw AlignmentError(std::min(gold.size(), pred.size()), 0,
                         "gold has " + std::to_string(gold.size()) + " sentences, prediction has " +
                             std::to_string(pred.size()));
  }
  for (std::size_t s = 0; s < gold.size(); ++s) {
    const auto& gt = gold.sentences[s].tokens;
    const auto& pt = pred.sentences[s].tokens;
    const std::size_t n = std::min(gt.size(), pt.size());
    for (std::size_t t = 0; t < n; ++t) {
      if (gt[t].text != pt[t].text) {
        throw AlignmentError(s, t, "token text differs: gold '" + gt[t].text + "', prediction '" + pt[t].text + "'");
      }
    }
    if (gt.size() != pt.size()) {
      throw AlignmentError(s, n, "gold has " + std::to_string(gt.size()) + " tokens, prediction has " +
                                     std::to_string(pt.size()));
    }
  }
}

namespace {

MatchResult match_corpus(const Corpus& gold, const Corpus& pred, MatchMode mode) {
  check_aligned(gold, pred);
  const auto gs = extract_spans(gold);
  const auto ps = extract_spans(pred);
  return match_spans(gs, ps, mode);
}

}  // namespace

EvalResult score_corpus(const Corpus& gold, const Corpus& pred) {
  check_aligned(gold, pred);
  const auto gs = extract_spans(gold);
  const auto ps = extract_spans(pred);
  EvalResult r;
  r.exact = counts_of(match_spans(gs, ps, MatchMode::kExact));
  r.partial = counts_of(match_spans(gs, ps, MatchMode::kPartial));
  r.exact_metrics = metrics_from_counts(r.exact);
  r.partial_metrics = metrics_from_counts(r.partial);
  return r;
}

std::size_t LengthBucketTable::total_gold() const {
  std::size_t n = 0;
  for (const auto& b : buckets) n += b.gold;
  return n;
}

LengthBucketTable tp_by_length(const Corpus& gold, const Corpus& pred) {
  const MatchResult m = match_corpus(gold, pred, MatchMode::kExact);
  LengthBucketTable table;
  for (const auto& [g, p] : m.tp_pairs) {
    auto& b = table.buckets[LengthBucketTable::bucket_of(g.length())];
    ++b.gold;
    ++b.tp;
  }
  for (const auto& g : m.fn) ++table.buckets[LengthBucketTable::bucket_of(g.length())].gold;
  return table;
}

ErrorTerms error_terms(const Corpus& gold, const Corpus& pred, MatchMode mode) {
  const MatchResult m = match_corpus(gold, pred, mode);
  ErrorTerms out;
  for (const auto& s : m.fp) ++out.fp[to_lower(s.surface)];
  for (const auto& s : m.fn) ++out.fn[to_lower(s.surface)];
  return out;
}

std::set<std::string> shared_errors(std::span<const RunErrors> runs) {
  if (runs.empty()) throw ArgumentError("shared_errors: no runs given");
  std::set<std::string> shared;
  for (const auto& [term, count] : runs.front().fp) shared.insert(term);
  for (const auto& run : runs.subspan(1)) {
    std::erase_if(shared, [&](const std::string& term) { return !run.fp.contains(term); });
  }
  return shared;
}

LongestCorrect longest_correct(const Corpus& gold, const Corpus& pred) {
  const MatchResult m = match_corpus(gold, pred, MatchMode::kExact);
  LongestCorrect out;
  for (const auto& [g, p] : m.tp_pairs) out.length = std::max(out.length, g.length());
  if (out.length == 0) return out;
  for (const auto& [g, p] : m.tp_pairs) {
    if (g.length() == out.length &&
        std::find(out.surfaces.begin(), out.surfaces.end(), g.surface) == out.surfaces.end()) {
      out.surfaces.push_back(g.surface);
    }
  }
  return out;
}

}  // namespace symtag

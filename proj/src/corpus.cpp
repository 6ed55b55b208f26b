#include "symtag/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iterator>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "symtag/error.hpp"
#include "symtag/rng.hpp"

namespace symtag {

namespace {

constexpr std::string_view kSourcePrefix = "source: ";

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f'; }

bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    if (i == line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), is_space);
}

}  // namespace

Label::Label(LabelKind kind, std::string category) : kind_(kind), category_(std::move(category)) {}

Label Label::begin(std::string category) { return Label(LabelKind::kBegin, std::move(category)); }

Label Label::inside(std::string category) { return Label(LabelKind::kInside, std::move(category)); }

std::optional<Label> Label::parse(std::string_view text) {
  if (text == "O") return Label::outside();
  if (text.size() < 3 || text[1] != '-') return std::nullopt;
  std::string_view category = text.substr(2);
  if (std::any_of(category.begin(), category.end(), is_space)) return std::nullopt;
  if (text[0] == 'B') return Label::begin(std::string(category));
  if (text[0] == 'I') return Label::inside(std::string(category));
  return std::nullopt;
}

std::string Label::str() const {
  switch (kind_) {
    case LabelKind::kBegin:
      return "B-" + category_;
    case LabelKind::kInside:
      return "I-" + category_;
    case LabelKind::kOutside:
      break;
  }
  return "O";
}

std::string LabeledSentence::source() const {
  for (const auto& m : metadata) {
    if (m.starts_with(kSourcePrefix)) return m.substr(kSourcePrefix.size());
  }
  return {};
}

void LabeledSentence::set_source(std::string_view tag) {
  std::string entry = std::string(kSourcePrefix) + std::string(tag);
  for (auto& m : metadata) {
    if (m.starts_with(kSourcePrefix)) {
      m = std::move(entry);
      return;
    }
  }
  metadata.insert(metadata.begin(), std::move(entry));
}

std::vector<Label> LabeledSentence::labels() const {
  std::vector<Label> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.label);
  return out;
}

std::vector<std::string> LabeledSentence::texts() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.text);
  return out;
}

std::string_view rule_id(ViolationRule rule) {
  switch (rule) {
    case ViolationRule::kOrphanInside:
      return "orphan-inside";
    case ViolationRule::kCategoryMismatch:
      return "category-mismatch";
  }
  return "unknown";
}

Corpus parse_corpus(std::string_view text, std::string name) {
  Corpus corpus;
  corpus.name = std::move(name);

  LabeledSentence current;
  std::size_t line_no = 0;
  std::size_t pending_meta_line = 0;

  auto flush = [&] {
    if (!current.tokens.empty()) {
      corpus.sentences.push_back(std::move(current));
      current = LabeledSentence{};
    }
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (is_blank(line)) {
      flush();
      continue;
    }
    if (current.tokens.empty() && line.starts_with("# ")) {
      if (current.metadata.empty()) pending_meta_line = line_no;
      current.metadata.emplace_back(line.substr(2));
      continue;
    }
    auto fields = split_fields(line);
    if (fields.size() != 2) {
      throw ParseError(line_no, "expected 2 fields (token, label), got " +
                                    std::to_string(fields.size()));
    }
    auto label = Label::parse(fields[1]);
    if (!label) throw ParseError(line_no, "unknown label '" + std::string(fields[1]) + "'");
    current.tokens.push_back(Token{std::string(fields[0]), std::move(*label)});
  }
  if (current.tokens.empty() && !current.metadata.empty()) {
    throw ParseError(pending_meta_line, "comment block is not followed by a sentence");
  }
  flush();
  return corpus;
}

Corpus parse_corpus(std::istream& in, std::string name) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_corpus(std::string_view(text), std::move(name));
}

std::string serialize_corpus(const Corpus& corpus) {
  std::string out;
  for (const auto& s : corpus.sentences) {
    for (const auto& m : s.metadata) {
      out += "# ";
      out += m;
      out += '\n';
    }
    for (const auto& t : s.tokens) {
      out += t.text;
      out += '\t';
      out += t.label.str();
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

std::vector<Violation> validate(const LabeledSentence& sentence, std::size_t sentence_index) {
  std::vector<Violation> out;
  const auto& toks = sentence.tokens;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const Label& label = toks[i].label;
    if (!label.is_inside()) continue;
    if (i == 0 || toks[i - 1].label.is_outside()) {
      out.push_back({sentence_index, i, ViolationRule::kOrphanInside});
    } else if (toks[i - 1].label.category() != label.category()) {
      out.push_back({sentence_index, i, ViolationRule::kCategoryMismatch});
    }
  }
  return out;
}

std::vector<Violation> validate(const Corpus& corpus) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < corpus.sentences.size(); ++i) {
    auto v = validate(corpus.sentences[i], i);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

bool is_valid(const LabeledSentence& sentence) { return validate(sentence).empty(); }

LabeledSentence repair_labels(LabeledSentence sentence) {
  auto& toks = sentence.tokens;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    Label& label = toks[i].label;
    if (!label.is_inside()) continue;
    const bool orphan = i == 0 || toks[i - 1].label.is_outside();
    if (orphan || toks[i - 1].label.category() != label.category()) {
      label = Label::begin(label.category());
    }
  }
  return sentence;
}

Corpus repair_labels(Corpus corpus) {
  for (auto& s : corpus.sentences) s = repair_labels(std::move(s));
  return corpus;
}

std::vector<EntitySpan> extract_spans(const LabeledSentence& sentence, std::size_t sentence_index) {
  if (auto v = validate(sentence, sentence_index); !v.empty()) {
    throw ContractError("sentence " + std::to_string(sentence_index) + " has an invalid I tag at token " +
                        std::to_string(v.front().token_index) + " (" +
                        std::string(rule_id(v.front().rule)) + "); repair labels first");
  }
  std::vector<EntitySpan> spans;
  const auto& toks = sentence.tokens;
  std::size_t i = 0;
  while (i < toks.size()) {
    if (!toks[i].label.is_begin()) {
      ++i;
      continue;
    }
    EntitySpan span;
    span.sentence_index = sentence_index;
    span.start = i;
    span.category = toks[i].label.category();
    span.surface = toks[i].text;
    ++i;
    while (i < toks.size() && toks[i].label.is_inside()) {
      span.surface += ' ';
      span.surface += toks[i].text;
      ++i;
    }
    span.end = i;
    spans.push_back(std::move(span));
  }
  return spans;
}

std::vector<EntitySpan> extract_spans(const Corpus& corpus) {
  std::vector<EntitySpan> out;
  for (std::size_t i = 0; i < corpus.sentences.size(); ++i) {
    auto spans = extract_spans(corpus.sentences[i], i);
    std::move(spans.begin(), spans.end(), std::back_inserter(out));
  }
  return out;
}

std::vector<Label> labels_from_spans(std::size_t n_tokens, std::span<const EntitySpan> spans) {
  std::vector<Label> labels(n_tokens);
  for (const auto& s : spans) {
    if (s.start >= s.end || s.end > n_tokens) {
      throw ContractError("span [" + std::to_string(s.start) + ", " + std::to_string(s.end) +
                          ") does not fit a sentence of " + std::to_string(n_tokens) + " tokens");
    }
    labels[s.start] = Label::begin(s.category);
    for (std::size_t i = s.start + 1; i < s.end; ++i) labels[i] = Label::inside(s.category);
  }
  return labels;
}

StatsRow corpus_stats(const Corpus& corpus) {
  StatsRow row;
  row.n_sentences = corpus.sentences.size();
  std::unordered_set<std::string> distinct;
  std::size_t with_entity = 0;
  std::size_t one_word = 0;
  for (std::size_t i = 0; i < corpus.sentences.size(); ++i) {
    auto spans = extract_spans(corpus.sentences[i], i);
    if (!spans.empty()) ++with_entity;
    for (const auto& s : spans) {
      ++row.n_entities;
      distinct.insert(to_lower(s.surface));
      row.max_entity_length = std::max(row.max_entity_length, s.length());
      if (s.length() == 1) ++one_word;
    }
  }
  row.n_distinct_entities = distinct.size();
  if (row.n_sentences > 0) {
    row.pct_sentences_with_entity = static_cast<double>(with_entity) / static_cast<double>(row.n_sentences);
  }
  if (row.n_entities > 0) {
    row.pct_one_word = static_cast<double>(one_word) / static_cast<double>(row.n_entities);
  }
  return row;
}

std::vector<std::string> tokenize_raw(std::string_view text) {
  std::vector<std::string> out;
  for (std::string_view chunk : split_fields(text)) {
    std::size_t lo = 0;
    std::size_t hi = chunk.size();
    while (lo < hi && is_punct(chunk[lo])) out.emplace_back(1, chunk[lo++]);
    std::vector<std::string> trailing;
    while (hi > lo && is_punct(chunk[hi - 1])) trailing.emplace_back(1, chunk[--hi]);
    if (hi > lo) out.emplace_back(chunk.substr(lo, hi - lo));
    out.insert(out.end(), trailing.rbegin(), trailing.rend());
  }
  return out;
}

Corpus synth_corpus(const SynthConfig& config) {
  if (config.vocab.empty()) throw ConfigError("synth: vocabulary is empty");
  if (!(config.entity_rate >= 0.0 && config.entity_rate <= 1.0)) {
    throw ConfigError("synth: entity_rate must be in [0, 1]");
  }
  const double weight_sum = std::accumulate(config.length_weights.begin(), config.length_weights.end(), 0.0);
  if (config.length_weights.empty() ||
      std::any_of(config.length_weights.begin(), config.length_weights.end(),
                  [](double w) { return !(w >= 0.0); }) ||
      !(weight_sum > 0.0)) {
    throw ConfigError("synth: length_weights must be non-negative and not all zero");
  }
  if (config.category.empty()) throw ConfigError("synth: category is empty");
  if (config.min_context < 1 || config.max_context < config.min_context) {
    throw ConfigError("synth: need 1 <= min_context <= max_context");
  }
  if (config.max_spans_per_sentence < 1) throw ConfigError("synth: max_spans_per_sentence must be >= 1");

  const auto& entity_pool = config.entity_vocab.empty() ? config.vocab : config.entity_vocab;
  Rng rng(config.seed);

  auto pick = [&](const std::vector<std::string>& pool) -> const std::string& {
    return pool[static_cast<std::size_t>(rng.below(pool.size()))];
  };
  auto draw_length = [&]() -> std::size_t {
    double u = rng.uniform() * weight_sum;
    for (std::size_t i = 0; i < config.length_weights.size(); ++i) {
      if (u < config.length_weights[i]) return i + 1;
      u -= config.length_weights[i];
    }
    // Rounding fell through; take the last positive weight.
    for (std::size_t i = config.length_weights.size(); i > 0; --i) {
      if (config.length_weights[i - 1] > 0.0) return i;
    }
    return 1;
  };
  auto draw_between = [&](std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng.below(hi - lo + 1));
  };

  const std::size_t n = config.n_sentences;
  const auto n_with = static_cast<std::size_t>(std::llround(config.entity_rate * static_cast<double>(n)));
  std::vector<char> has_entity(n, 0);
  std::fill_n(has_entity.begin(), std::min(n_with, n), 1);
  rng.shuffle(std::span<char>(has_entity));

  Corpus corpus;
  corpus.name = config.name;
  corpus.sentences.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    LabeledSentence sentence;
    auto add_context = [&](std::size_t count) {
      for (std::size_t k = 0; k < count; ++k) sentence.tokens.push_back({pick(config.vocab), Label::outside()});
    };
    if (!has_entity[s]) {
      add_context(draw_between(config.min_context, config.max_context));
    } else {
      const std::size_t n_spans = draw_between(1, config.max_spans_per_sentence);
      add_context(draw_between(0, config.max_context / 2));
      for (std::size_t k = 0; k < n_spans; ++k) {
        if (k > 0) add_context(draw_between(1, std::max<std::size_t>(1, config.max_context / 2)));
        const std::size_t len = draw_length();
        for (std::size_t t = 0; t < len; ++t) {
          sentence.tokens.push_back(
              {pick(entity_pool), t == 0 ? Label::begin(config.category) : Label::inside(config.category)});
        }
      }
      add_context(draw_between(0, config.max_context / 2));
    }
    corpus.sentences.push_back(std::move(sentence));
  }
  return corpus;
}

std::string join_tokens(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

std::string to_lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace symtag

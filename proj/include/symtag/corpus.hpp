#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace symtag {

inline constexpr std::string_view kDefaultCategory = "SYM";

enum class LabelKind { kOutside, kBegin, kInside };

/// One IOB tag. B and I tags always carry a non-empty category; O never does.
class Label {
 public:
  Label() = default;

  static Label outside() { return Label(); }
  static Label begin(std::string category = std::string(kDefaultCategory));
  static Label inside(std::string category = std::string(kDefaultCategory));

  /// Parses "O", "B-<cat>" or "I-<cat>". Anything else yields nullopt.
  static std::optional<Label> parse(std::string_view text);

  LabelKind kind() const noexcept { return kind_; }
  const std::string& category() const noexcept { return category_; }
  bool is_outside() const noexcept { return kind_ == LabelKind::kOutside; }
  bool is_begin() const noexcept { return kind_ == LabelKind::kBegin; }
  bool is_inside() const noexcept { return kind_ == LabelKind::kInside; }

  std::string str() const;

  friend bool operator==(const Label&, const Label&) = default;

 private:
  Label(LabelKind kind, std::string category);

  LabelKind kind_ = LabelKind::kOutside;
  std::string category_;
};

struct Token {
  std::string text;
  Label label;

  friend bool operator==(const Token&, const Token&) = default;
};

/// A tokenized sentence plus the comment lines that preceded it in the file.
/// Comments are kept verbatim (without the leading "# ") so that files
/// round-trip; the "source: <tag>" comment doubles as the provenance tag.
struct LabeledSentence {
  std::vector<Token> tokens;
  std::vector<std::string> metadata;

  std::string source() const;
  void set_source(std::string_view tag);

  std::vector<Label> labels() const;
  std::vector<std::string> texts() const;

  friend bool operator==(const LabeledSentence&, const LabeledSentence&) = default;
};

struct Corpus {
  std::string name;
  std::vector<LabeledSentence> sentences;

  std::size_t size() const noexcept { return sentences.size(); }
  bool empty() const noexcept { return sentences.empty(); }

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

/// A maximal B(I)* run. [start, end) are token indexes within the sentence.
struct EntitySpan {
  std::size_t sentence_index = 0;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string surface;
  std::string category = std::string(kDefaultCategory);

  std::size_t length() const noexcept { return end - start; }

  friend bool operator==(const EntitySpan&, const EntitySpan&) = default;
};

enum class ViolationRule { kOrphanInside, kCategoryMismatch };

std::string_view rule_id(ViolationRule rule);

struct Violation {
  std::size_t sentence_index = 0;
  std::size_t token_index = 0;
  ViolationRule rule = ViolationRule::kOrphanInside;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Columns of a corpus statistics table.
struct StatsRow {
  std::size_t n_sentences = 0;
  std::size_t n_entities = 0;
  std::size_t n_distinct_entities = 0;
  double pct_sentences_with_entity = 0.0;
  std::size_t max_entity_length = 0;
  double pct_one_word = 0.0;
};

struct SynthConfig {
  std::size_t n_sentences = 0;
  double entity_rate = 0.33;
  // length_weights[i] is the relative weight of span length i + 1.
  std::vector<double> length_weights = {0.5, 0.25, 0.15, 0.1};
  std::vector<std::string> vocab;
  // Optional separate pool for entity tokens; falls back to vocab.
  std::vector<std::string> entity_vocab;
  std::uint64_t seed = 0;
  std::string category = std::string(kDefaultCategory);
  std::size_t min_context = 2;
  std::size_t max_context = 8;
  std::size_t max_spans_per_sentence = 2;
  std::string name = "synth";
};

// Parsing and serialization of the tab-separated corpus format.
Corpus parse_corpus(std::string_view text, std::string name = {});
Corpus parse_corpus(std::istream& in, std::string name = {});
std::string serialize_corpus(const Corpus& corpus);

std::vector<Violation> validate(const LabeledSentence& sentence, std::size_t sentence_index = 0);
std::vector<Violation> validate(const Corpus& corpus);
bool is_valid(const LabeledSentence& sentence);

/// Orphan or category-mismatched I tags become B tags of their own category.
LabeledSentence repair_labels(LabeledSentence sentence);
Corpus repair_labels(Corpus corpus);

/// Throws ContractError if the sentence has violations.
std::vector<EntitySpan> extract_spans(const LabeledSentence& sentence,
                                      std::size_t sentence_index = 0);
std::vector<EntitySpan> extract_spans(const Corpus& corpus);

/// Inverse of extract_spans: B(I)* over every span, O elsewhere.
std::vector<Label> labels_from_spans(std::size_t n_tokens, std::span<const EntitySpan> spans);

StatsRow corpus_stats(const Corpus& corpus);

/// Whitespace split followed by detachment of leading/trailing ASCII
/// punctuation, one token per mark. Inner punctuation ("can't") is kept.
std::vector<std::string> tokenize_raw(std::string_view text);

/// Random corpus shaped by the config; every sentence is valid and exactly
/// round(entity_rate * n_sentences) of them contain a span.
Corpus synth_corpus(const SynthConfig& config);

std::string join_tokens(std::span<const std::string> tokens);
std::string to_lower(std::string_view text);

}  // namespace symtag

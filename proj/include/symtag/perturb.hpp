#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symtag/corpus.hpp"
#include "symtag/lexicon.hpp"

namespace symtag {

struct Replacement {
  std::size_t sentence_index = 0;
  std::string old_surface;
  std::string new_surface;
  std::size_t variant_index = 0;

  friend bool operator==(const Replacement&, const Replacement&) = default;
};

/// Audit trail of an entity-level perturbation pass.
struct PerturbLog {
  std::vector<Replacement> replacements;
  std::size_t n_spans_seen = 0;

  std::size_t n_spans_replaced() const noexcept { return replacements.size(); }
};

struct PerturbResult {
  Corpus corpus;
  PerturbLog log;
};

enum class PerturbDirection { kNormalize, kDenormalize };

/// Replaces every span whose whole surface is a lexicon key with one of its
/// variants. The variant index is drawn from a stream keyed on
/// (seed, sentence index, span start), so results do not depend on the
/// order sentences are processed in. Tokens outside replaced spans are
/// copied unchanged. Input must be valid.
PerturbResult perturb(const Corpus& corpus, const Lexicon& lex, PerturbDirection direction,
                      std::uint64_t seed);

/// Colloquial spans -> formal terms.
inline PerturbResult normalize(const Corpus& corpus, const Lexicon& lex, std::uint64_t seed) {
  return perturb(corpus, lex, PerturbDirection::kNormalize, seed);
}

/// Formal spans -> colloquial descriptions.
inline PerturbResult denormalize(const Corpus& corpus, const Lexicon& lex, std::uint64_t seed) {
  return perturb(corpus, lex, PerturbDirection::kDenormalize, seed);
}

/// CSV with header sentence_index,old,new,variant_index.
std::string perturb_log_csv(const PerturbLog& log);

struct MixSpec {
  std::optional<std::size_t> target_size;  // nullopt = AUTO
  std::uint64_t seed = 0;
};

/// AUTO size: the even number 2 * floor((|a| + |b|) / 4).
std::size_t resolve_mix_size(const MixSpec& spec, std::size_t size_a, std::size_t size_b);

/// floor(target/2) sentences from a and the rest from b, drawn without
/// replacement, each tagged with its source corpus name, then shuffled.
Corpus mix(const Corpus& a, const Corpus& b, const MixSpec& spec);

}  // namespace symtag

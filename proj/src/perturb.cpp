#include "symtag/perturb.hpp"

#include <cctype>
#include <numeric>

#include "symtag/csv.hpp"
#include "symtag/error.hpp"
#include "symtag/rng.hpp"

namespace symtag {

namespace {

bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }

bool capitalized(const std::string& token) { return !token.empty() && is_upper(token.front()); }

// First token capitalized iff the replaced span's first token was. An
// all-caps leading token (an acronym) is left alone when lowering.
void match_casing(TermTokens& variant, const std::string& original_first) {
  if (variant.empty() || variant.front().empty()) return;
  std::string& first = variant.front();
  if (capitalized(original_first)) {
    first.front() = static_cast<char>(std::toupper(static_cast<unsigned char>(first.front())));
  } else if (!(first.size() > 1 && is_upper(first[1]))) {
    first.front() = static_cast<char>(std::tolower(static_cast<unsigned char>(first.front())));
  }
}

}  // namespace

PerturbResult perturb(const Corpus& corpus, const Lexicon& lex, PerturbDirection direction,
                      std::uint64_t seed) {
  PerturbResult result;
  result.corpus.name = corpus.name;
  result.corpus.sentences.reserve(corpus.sentences.size());

  for (std::size_t si = 0; si < corpus.sentences.size(); ++si) {
    const LabeledSentence& in = corpus.sentences[si];
    const auto spans = extract_spans(in, si);
    result.log.n_spans_seen += spans.size();

    LabeledSentence out;
    out.metadata = in.metadata;
    out.tokens.reserve(in.tokens.size());
    std::size_t cursor = 0;
    for (const EntitySpan& span : spans) {
      for (; cursor < span.start; ++cursor) out.tokens.push_back(in.tokens[cursor]);

      std::vector<std::string> term;
      for (std::size_t i = span.start; i < span.end; ++i) term.push_back(in.tokens[i].text);
      auto variants = direction == PerturbDirection::kNormalize ? lex.lookup_formal(term)
                                                                 : lex.lookup_colloquial(term);
      if (variants.empty()) {
        for (; cursor < span.end; ++cursor) out.tokens.push_back(in.tokens[cursor]);
        continue;
      }
      const auto choice = static_cast<std::size_t>(
          Rng::keyed({seed, static_cast<std::uint64_t>(si), static_cast<std::uint64_t>(span.start)})
              .below(variants.size()));
      TermTokens replacement = std::move(variants[choice]);
      match_casing(replacement, term.front());
      for (std::size_t k = 0; k < replacement.size(); ++k) {
        out.tokens.push_back(
            {replacement[k], k == 0 ? Label::begin(span.category) : Label::inside(span.category)});
      }
      result.log.replacements.push_back({si, span.surface, join_tokens(replacement), choice});
      cursor = span.end;
    }
    for (; cursor < in.tokens.size(); ++cursor) out.tokens.push_back(in.tokens[cursor]);
    result.corpus.sentences.push_back(std::move(out));
  }
  return result;
}

std::string perturb_log_csv(const PerturbLog& log) {
  std::string out = "sentence_index,old,new,variant_index\n";
  for (const auto& r : log.replacements) {
    out += csv::format_row({std::to_string(r.sentence_index), r.old_surface, r.new_surface,
                            std::to_string(r.variant_index)});
  }
  return out;
}

std::size_t resolve_mix_size(const MixSpec& spec, std::size_t size_a, std::size_t size_b) {
  if (spec.target_size) {
    if (*spec.target_size < 2) throw ArgumentError("mix: target size must be at least 2");
    return *spec.target_size;
  }
  return 2 * ((size_a + size_b) / 4);
}

Corpus mix(const Corpus& a, const Corpus& b, const MixSpec& spec) {
  const std::size_t target = resolve_mix_size(spec, a.size(), b.size());
  const std::size_t from_a = target / 2;
  const std::size_t from_b = target - from_a;
  const std::size_t needed = target - target / 2;

  std::string tag_a = a.name.empty() ? "a" : a.name;
  std::string tag_b = b.name.empty() ? "b" : b.name;
  if (tag_a == tag_b) {
    tag_a += "#1";
    tag_b += "#2";
  }
  for (const auto& [src, tag] : {std::pair{&a, tag_a}, std::pair{&b, tag_b}}) {
    if (src->size() < needed) {
      throw SizeError("mix: corpus '" + tag + "' has " + std::to_string(src->size()) +
                      " sentences, need at least " + std::to_string(needed) + " for target " +
                      std::to_string(target));
    }
  }

  Rng rng(spec.seed);
  auto sample = [&rng](std::size_t population, std::size_t k) {
    std::vector<std::size_t> idx(population);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(idx));
    idx.resize(k);
    return idx;
  };
  const auto picks_a = sample(a.size(), from_a);
  const auto picks_b = sample(b.size(), from_b);

  Corpus out;
  out.name = "mix";
  out.sentences.reserve(target);
  for (std::size_t i : picks_a) {
    out.sentences.push_back(a.sentences[i]);
    out.sentences.back().set_source(tag_a);
  }
  for (std::size_t i : picks_b) {
    out.sentences.push_back(b.sentences[i]);
    out.sentences.back().set_source(tag_b);
  }
  rng.shuffle(std::span<LabeledSentence>(out.sentences));
  return out;
}

}  // namespace symtag

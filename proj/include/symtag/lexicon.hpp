#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace symtag {

using TermTokens = std::vector<std::string>;

struct LexiconEntry {
  TermTokens formal;
  TermTokens colloquial;
  std::optional<std::string> pos_hint;
};

/// Bidirectional formal <-> colloquial term map. Matching is
/// case-insensitive on whole token sequences; variants come back with the
/// casing they had in the source file and in file order.
class Lexicon {
 public:
  Lexicon() = default;

  /// Returns false (and keeps the first entry) if the pair is already present.
  bool add(LexiconEntry entry);

  std::vector<TermTokens> lookup_formal(std::span<const std::string> colloquial) const;
  std::vector<TermTokens> lookup_colloquial(std::span<const std::string> formal) const;

  const std::vector<LexiconEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t duplicates_dropped() const noexcept { return duplicates_; }

 private:
  std::vector<LexiconEntry> entries_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_formal_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_colloquial_;
  std::unordered_map<std::string, std::size_t> pairs_;
  std::size_t duplicates_ = 0;
};

/// Reads "<formal>\t<colloquial>[\t<pos>]" rows; '#' lines are comments.
Lexicon load_lexicon(std::string_view text);
Lexicon load_lexicon(std::istream& in);

inline std::vector<TermTokens> lookup_formal(const Lexicon& lex, std::span<const std::string> term) {
  return lex.lookup_formal(term);
}
inline std::vector<TermTokens> lookup_colloquial(const Lexicon& lex, std::span<const std::string> term) {
  return lex.lookup_colloquial(term);
}

}  // namespace symtag

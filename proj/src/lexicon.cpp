#include "symtag/lexicon.hpp"

#include <iterator>
#include <sstream>

#include "symtag/corpus.hpp"
#include "symtag/error.hpp"

namespace symtag {

namespace {

std::string key_of(std::span<const std::string> tokens) {
  std::string key;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) key += ' ';
    key += to_lower(tokens[i]);
  }
  return key;
}

TermTokens split_term(std::string_view field) {
  TermTokens out;
  std::size_t i = 0;
  while (i < field.size()) {
    while (i < field.size() && field[i] == ' ') ++i;
    std::size_t j = i;
    while (j < field.size() && field[j] != ' ') ++j;
    if (j > i) out.emplace_back(field.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<TermTokens> collect(const std::unordered_map<std::string, std::vector<std::size_t>>& index,
                                const std::vector<LexiconEntry>& entries,
                                std::span<const std::string> term, TermTokens LexiconEntry::*side) {
  std::vector<TermTokens> out;
  if (term.empty()) return out;
  auto it = index.find(key_of(term));
  if (it == index.end()) return out;
  for (std::size_t idx : it->second) out.push_back(entries[idx].*side);
  return out;
}

}  // namespace

bool Lexicon::add(LexiconEntry entry) {
  if (entry.formal.empty() || entry.colloquial.empty()) {
    throw ArgumentError("lexicon entry needs non-empty formal and colloquial terms");
  }
  const std::string formal_key = key_of(entry.formal);
  const std::string colloquial_key = key_of(entry.colloquial);
  const std::string pair_key = formal_key + '\t' + colloquial_key;
  if (pairs_.contains(pair_key)) {
    ++duplicates_;
    return false;
  }
  const std::size_t idx = entries_.size();
  pairs_.emplace(pair_key, idx);
  by_formal_[formal_key].push_back(idx);
  by_colloquial_[colloquial_key].push_back(idx);
  entries_.push_back(std::move(entry));
  return true;
}

std::vector<TermTokens> Lexicon::lookup_formal(std::span<const std::string> colloquial) const {
  return collect(by_colloquial_, entries_, colloquial, &LexiconEntry::formal);
}

std::vector<TermTokens> Lexicon::lookup_colloquial(std::span<const std::string> formal) const {
  return collect(by_formal_, entries_, formal, &LexiconEntry::colloquial);
}

Lexicon load_lexicon(std::string_view text) {
  Lexicon lex;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    if (line.front() == '#') continue;

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (fields.size() < 2) {
      throw ParseError(line_no, "lexicon row needs <formal>\\t<colloquial>, got " +
                                    std::to_string(fields.size()) + " field(s)");
    }
    if (fields.size() > 3) throw ParseError(line_no, "lexicon row has more than 3 fields");
    LexiconEntry entry{split_term(fields[0]), split_term(fields[1]), std::nullopt};
    if (entry.formal.empty() || entry.colloquial.empty()) {
      throw ParseError(line_no, "lexicon row has an empty term");
    }
    if (fields.size() == 3 && !fields[2].empty()) entry.pos_hint = std::string(fields[2]);
    lex.add(std::move(entry));
  }
  return lex;
}

Lexicon load_lexicon(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return load_lexicon(std::string_view(text));
}

}  // namespace symtag

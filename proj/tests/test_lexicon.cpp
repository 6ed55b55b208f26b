#include <doctest.h>

#include <fstream>
#include <sstream>

#include "symtag/error.hpp"
#include "symtag/lexicon.hpp"
#include "test_util.hpp"

using namespace symtag;

namespace {

Lexicon sample() {
  std::ifstream f(testutil::fixture("sample_lexicon.tsv"));
  REQUIRE(f.good());
  return load_lexicon(f);
}

}  // namespace

TEST_CASE("load_lexicon") {
  const Lexicon one = load_lexicon("dyspnea\tdifficulty of breathing\n");
  REQUIRE(one.size() == 1);
  CHECK(one.entries()[0].formal.size() == 1);
  CHECK(one.entries()[0].colloquial.size() == 3);
  CHECK_FALSE(one.entries()[0].pos_hint.has_value());

  CHECK(load_lexicon("").empty());
  CHECK(load_lexicon("# only a comment\n\n").empty());

  const Lexicon vomit = load_lexicon("vomit\tthrow up\nvomit\tthrowing up\n");
  CHECK(lookup_colloquial(vomit, std::vector<std::string>{"vomit"}).size() == 2);

  try {
    load_lexicon("fever\ttemp\nlonely-term\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(load_lexicon("a\tb\tNN\textra\n"), ParseError);
  CHECK_THROWS_AS(load_lexicon("\tb\n"), ParseError);
}

TEST_CASE("duplicate pairs collapse case-insensitively") {
  const Lexicon lex = load_lexicon("Fever\ttemp\nfever\tTEMP\nfever\ton fire\n");
  CHECK(lex.size() == 2);
  CHECK(lex.duplicates_dropped() == 1);
  CHECK(lex.entries()[0].formal == TermTokens{"Fever"});
}

TEST_CASE("lookup_formal") {
  const Lexicon lex = sample();
  CHECK(lookup_formal(lex, std::vector<std::string>{"throw", "up"}) == std::vector<TermTokens>{{"vomit"}});
  CHECK(lookup_formal(lex, std::vector<std::string>{"THROW", "UP"}) == std::vector<TermTokens>{{"vomit"}});
  CHECK(lookup_formal(lex, std::vector<std::string>{"brain", "fog"}).empty());
  CHECK(lookup_formal(lex, std::vector<std::string>{"throw"}).empty());
  CHECK(lookup_formal(lex, std::vector<std::string>{}).empty());
}

TEST_CASE("lookup_colloquial") {
  const Lexicon lex = sample();
  const auto dys = lookup_colloquial(lex, std::vector<std::string>{"dyspnea"});
  REQUIRE(dys.size() == 3);
  CHECK(dys[0] == TermTokens{"difficulty", "of", "breathing"});
  CHECK(dys[1] == TermTokens{"can't", "get", "a", "deep", "breath"});
  CHECK(dys[2] == TermTokens{"breathless"});
  CHECK(lookup_colloquial(lex, std::vector<std::string>{"pneumonia"}).empty());
  CHECK(lookup_colloquial(lex, std::vector<std::string>{"Chest", "Tightness"}) ==
        std::vector<TermTokens>{{"heaviness", "in", "the", "chest"}});
}

TEST_CASE("storage is symmetric and order-stable") {
  const Lexicon lex = sample();
  for (const auto& e : lex.entries()) {
    const auto formal = lex.lookup_formal(e.colloquial);
    const auto colloquial = lex.lookup_colloquial(e.formal);
    CHECK(std::find(formal.begin(), formal.end(), e.formal) != formal.end());
    CHECK(std::find(colloquial.begin(), colloquial.end(), e.colloquial) != colloquial.end());
  }
  const Lexicon again = sample();
  for (const auto& e : lex.entries()) {
    CHECK(lex.lookup_colloquial(e.formal) == again.lookup_colloquial(e.formal));
  }
}

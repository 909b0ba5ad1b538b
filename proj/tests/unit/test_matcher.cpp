#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace idiomcraft;
using fixtures::error_of;

namespace {

const IdiomPattern& hold_tongue() {
  static const auto p = parse_idiom_line(fixtures::kHoldTongue, "en");
  return p;
}

std::optional<IdiomMatch> find(const std::string& text, const IdiomPattern& pattern,
                               const LemmaDictionary& dict = fixtures::dictionary()) {
  const auto tokens = tokenize(text);
  return locate(tokens, lemmatize(tokens, dict), pattern);
}

}  // namespace

TEST_CASE("parse_pattern") {
  const auto p = parse_pattern("hold * tongue", "en");
  REQUIRE(p.slots.size() == 3);
  CHECK(p.slots[0] == Slot{Constituent{"hold"}});
  CHECK(p.slots[1] == Slot{Wildcard{2}});
  CHECK(p.slots[2] == Slot{Constituent{"tongue"}});
  CHECK(p.pattern_text() == "hold * tongue");

  const auto tr = parse_pattern("karşı çıkmak", "tr");
  CHECK(tr.constituent_lemmas() == std::vector<std::string>{"karşı", "çıkmak"});

  CHECK(std::get<Wildcard>(parse_pattern("portare *3 casa", "it").slots[1]).max_tokens == 3);
  CHECK(error_of([] { parse_pattern("* tongue", "en"); }) == ErrorCode::BadWildcardPosition);
  CHECK(error_of([] { parse_pattern("tongue *", "en"); }) == ErrorCode::BadWildcardPosition);
  CHECK(error_of([] { parse_pattern("tongue", "en"); }) == ErrorCode::TooFewConstituents);
  CHECK(error_of([] { parse_pattern("hold * *", "en"); }) == ErrorCode::BadWildcardPosition);
  CHECK(error_of([] { parse_pattern("hold, tongue", "en"); }) == ErrorCode::PatternSyntax);
  CHECK(error_of([] { parse_pattern("hold *0 tongue", "en"); }) == ErrorCode::PatternSyntax);
}

TEST_CASE("idiom lines round-trip") {
  const auto& p = hold_tongue();
  CHECK(p.id == "hold_tongue");
  CHECK(p.literal_gloss == "to hold the tongue");
  CHECK(p.gloss == "to stay silent");
  CHECK(parse_idiom_line(format_idiom_line(p), "en") == p);

  const auto u = parse_idiom_line("zaman_oldurmek\tzaman öldürmek\tkill time\tpass time\tunordered", "tr");
  CHECK_FALSE(u.ordered);
  CHECK(parse_idiom_line(format_idiom_line(u), "tr") == u);
}

TEST_CASE("shipped idiom lists parse") {
  for (const std::string lang : {"en", "it", "tr"}) {
    std::ifstream in(fixtures::data_dir() / "idioms" / (lang + ".tsv"));
    std::stringstream ss;
    ss << in.rdbuf();
    const auto list = parse_idiom_list(ss.str(), lang);
    CHECK(list.size() >= 5);
    for (const auto& p : list) CHECK(p.constituent_lemmas().size() >= 2);
  }
}

TEST_CASE("example sentences classify to A, B, C, D") {
  const auto a = find("Please hold your tongue and wait.", hold_tongue());
  const auto b = find("Please hold your breath and tongue and wait…", hold_tongue());
  const auto c = find("Use sterile tongue depressor to hold patient's tongue down.", hold_tongue());
  const auto d = find("Hold on to your mother tongue.", hold_tongue());
  REQUIRE(a);
  REQUIRE(b);
  REQUIRE(c);
  REQUIRE(d);
  CHECK(classify(*a, true) == SampleType::A);
  CHECK(classify(*b, true) == SampleType::B);
  CHECK(classify(*c, false) == SampleType::C);
  CHECK(classify(*d, false) == SampleType::D);

  CHECK(b->gap_tokens == 1);
  // second "tongue": Use sterile tongue depressor to hold patient ' s tongue
  CHECK(c->constituent_positions == std::vector<std::size_t>{5, 9});
  CHECK(c->gap_tokens == 0);
}

TEST_CASE("missing constituent and inflection") {
  CHECK_FALSE(find("He held his peace.", hold_tongue()));
  const auto m = find("He held his tongue.", hold_tongue());
  REQUIRE(m);
  CHECK(m->constituent_positions == std::vector<std::size_t>{1, 3});

  const auto leg = parse_idiom_line(fixtures::kPullLeg, "en");
  const auto q = find("Quit pulling my leg, will you", leg);
  REQUIRE(q);
  CHECK(classify(*q, true) == SampleType::A);
}

TEST_CASE("ordered patterns reject inverted constituents, unordered accept them") {
  auto p = parse_pattern("zaman öldürmek", "tr");
  const auto tr = fixtures::dictionary("tr");
  CHECK_FALSE(find("Öldürdü zaman.", p, tr));
  p.ordered = false;
  const auto m = find("Öldürdü zaman.", p, tr);
  REQUIRE(m);
  CHECK(m->constituent_positions == std::vector<std::size_t>{0, 1});
  CHECK(m->gap_tokens == 0);
}

TEST_CASE("classify is total over the four outcomes") {
  IdiomMatch m{{0, 1}, 0};
  CHECK(classify(m, true) == SampleType::A);
  CHECK(classify(m, false) == SampleType::C);
  m.gap_tokens = 3;
  CHECK(classify(m, true) == SampleType::B);
  CHECK(classify(m, false) == SampleType::D);
  for (auto t : {SampleType::A, SampleType::B, SampleType::C, SampleType::D}) {
    CHECK(sample_type_from_string(to_string(t)) == t);
  }
}

TEST_CASE("locate equals the brute-force oracle on random instances") {
  std::mt19937_64 rng(2024);
  int matched = 0;
  for (int i = 0; i < 500; ++i) {
    const auto inst = oracles::random_instance(rng);
    const auto expected = oracles::locate_brute(inst.tokens, inst.lemmas, inst.pattern);
    const auto got = locate(inst.tokens, inst.lemmas, inst.pattern);
    CHECK(got == expected);
    matched += expected ? 1 : 0;
  }
  CHECK(matched > 50);
}

TEST_CASE("inserting a word into a juxtaposed match flips only the position axis") {
  const auto dict = fixtures::dictionary();
  const auto p = parse_pattern("go home", "en");
  const auto before = find("We go home now.", p, dict);
  const auto after = find("We go straight home now.", p, dict);
  REQUIRE(before);
  REQUIRE(after);
  CHECK(classify(*before, true) == SampleType::A);
  CHECK(classify(*after, true) == SampleType::B);
  CHECK(classify(*before, false) == SampleType::C);
  CHECK(classify(*after, false) == SampleType::D);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "generator.hpp"
#include "oracles.hpp"
#include "syp/error.hpp"
#include "syp/narrative.hpp"

using namespace syp;
using syp::testing::fixture;

namespace {

BeatSheet sheet_for(const char* name, Numbering numbering = Numbering::Dfs) {
  auto m = load_bpmn_file(fixture(name).string());
  return script_sentences(m, extract_sentences(m), numbering);
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::MalformedXml;
}

}  // namespace

TEST_CASE("knot ids") {
  CHECK(knot_id("The Book is Chosen", 1) == "the_book_is_chosen_1");
  CHECK(knot_id("  Check -- Its (Money)!  ", 3) == "check_its_money_3");
  CHECK(knot_id("", 9) == "knot_9");
  CHECK(knot_id("\xC3\xA9t\xC3\xA9", 2) == "t_2");
  CHECK(knot_id("24 Hours", 4) == "k_24_hours_4");
  auto long_id = knot_id(std::string(100, 'a'), 12);
  CHECK(long_id == std::string(48, 'a') + "_12");
}

TEST_CASE("two-entry sheet compiles to a divert and an end") {
  auto story = compile_narrative(sheet_for("minimal.bpmn"));
  REQUIRE(story.knots.size() == 2);
  CHECK(std::get<Divert>(story.knots[0].exit).target == story.knots[1].id);
  CHECK(std::holds_alternative<End>(story.knots[1].exit));
}

TEST_CASE("single-knot narrative emits header, body and END") {
  CompiledNarrative story{"Solo", "only_1", {{"only_1", 1, "n", "Alone.", End{}, std::nullopt}}};
  CHECK(emit_ink(story) == "// Solo\n-> only_1\n\n=== only_1 ===\nAlone.\n-> END\n");
  CHECK(oracle::isomorphic(parse_ink(emit_ink(story)), story));
}

TEST_CASE("bookstore compiles to diverts, one choice point and two endings") {
  auto story = compile_narrative(sheet_for("bookstore.bpmn", Numbering::List));
  CHECK(story.title == "Book Purchase");
  CHECK(story.start_knot == "the_book_is_chosen_1");
  REQUIRE(story.knots.size() == 8);
  int diverts = 0, choices = 0, ends = 0;
  for (const auto& k : story.knots) {
    diverts += std::holds_alternative<Divert>(k.exit);
    choices += std::holds_alternative<Choices>(k.exit);
    ends += std::holds_alternative<End>(k.exit);
  }
  CHECK(diverts == 5);
  CHECK(choices == 1);
  CHECK(ends == 2);
  const auto* gate = story.find("it_is_decided_4");
  REQUIRE(gate);
  auto opts = std::get<Choices>(gate->exit).options;
  CHECK(opts == std::vector<Choice>{{"I have money", "receive_the_money_6"},
                                    {"I have no money", "the_book_is_given_back_5"}});
}

TEST_CASE("every knot keeps its entry and source node") {
  auto sheet = sheet_for("study26.bpmn");
  auto story = compile_narrative(sheet);
  REQUIRE(story.knots.size() == sheet.entries.size());
  for (std::size_t i = 0; i < story.knots.size(); ++i) {
    CHECK(story.knots[i].entry_id == sheet.entries[i].id);
    CHECK(story.knots[i].source_node == sheet.entries[i].sentence.source_node);
    CHECK(story.knots[i].body == sheet.entries[i].sentence.rendered);
  }
}

TEST_CASE("parallel split is linearized") {
  auto story = compile_narrative(sheet_for("parallel.bpmn"));
  const auto& split = story.knots[1];
  REQUIRE(split.note);
  CHECK(split.note->find("linearized") != std::string::npos);
  auto paths = syp::oracle::narrative_paths(story);
  REQUIRE(paths.size() == 1);
  CHECK(*paths.begin() == std::vector<std::string>{"s", "split", "contract", "laptop", "join", "e"});
}

TEST_CASE("compile errors") {
  auto sheet = sheet_for("bookstore.bpmn", Numbering::List);

  auto gap = sheet;
  gap.entries.erase(gap.entries.begin() + 2);
  CHECK(code_of([&] { compile_narrative(gap); }) == Errc::IncompleteSheet);

  auto unlabeled = sheet;
  unlabeled.entries[3].next[1].option_label.reset();
  CHECK(code_of([&] { compile_narrative(unlabeled); }) == Errc::UnlabeledChoice);

  auto dup = sheet;
  dup.entries[3].next[1].option_label = "I have money";
  CHECK(code_of([&] { compile_narrative(dup); }) == Errc::DuplicateChoice);

  auto dead = sheet;
  dead.entries[5].next.clear();
  CHECK(code_of([&] { compile_narrative(dead); }) == Errc::DeadEnd);

  auto spin = sheet;
  spin.entries[6].next = {{6, std::nullopt}};
  CHECK(code_of([&] { compile_narrative(spin); }) == Errc::InfiniteLoop);
}

TEST_CASE("loops compile and are marked sticky in Ink") {
  auto story = compile_narrative(sheet_for("loop.bpmn"));
  auto ink = emit_ink(story);
  CHECK(ink.find("+ [Needs changes]") != std::string::npos);
  CHECK(ink.find("* [") == std::string::npos);
  CHECK(oracle::isomorphic(parse_ink(ink), story));
}

TEST_CASE("Ink text for the bookstore") {
  auto story = compile_narrative(sheet_for("bookstore.bpmn", Numbering::List));
  auto ink = emit_ink(story);
  CHECK(ink.rfind("// Book Purchase\n-> the_book_is_chosen_1\n", 0) == 0);
  CHECK(ink.find("=== it_is_decided_4 ===\nIt is decided among \"I have money\" OR \"I have no money\"\n"
                 "* [I have money] -> receive_the_money_6\n"
                 "* [I have no money] -> the_book_is_given_back_5\n") != std::string::npos);
  auto back = parse_ink(ink);
  CHECK(back.title == story.title);
  CHECK(oracle::isomorphic(back, story));
  for (const auto& k : back.knots) CHECK(k.entry_id == story.find(k.id)->entry_id);
}

TEST_CASE("Ink escaping survives hostile text") {
  CompiledNarrative story;
  story.title = "Odd // title";
  story.start_knot = "a_1";
  const std::string nasty = "-> {x} [y] #tag | a // b /* c */ <- <> \\ end";
  story.knots.push_back({"a_1", 1, "n1", nasty, Choices{{{"* [go] ->", "b_2"}, {"+ stay", "c_3"}}}, std::nullopt});
  story.knots.push_back({"b_2", 2, "n2", "= heading ~ tilde", End{}, std::nullopt});
  story.knots.push_back({"c_3", 3, "n3", "+ plus", End{}, std::nullopt});
  auto back = parse_ink(emit_ink(story));
  CHECK(back.title == story.title);
  CHECK(oracle::isomorphic(back, story));
}

TEST_CASE("Ink reader rejects malformed text") {
  CHECK(code_of([] { parse_ink("-> a_1\n=== a_1 ===\ntext\n* go -> b_2\n"); }) == Errc::InkSyntax);
  CHECK(code_of([] { parse_ink("-> a_1\n=== a_1 ===\ntext\n"); }) == Errc::InkSyntax);
  CHECK(code_of([] { parse_ink("-> zz_1\n=== a_1 ===\ntext\n-> END\n"); }) == Errc::InkSyntax);
}

TEST_CASE("story JSON round-trips and is hash-checked") {
  auto story = compile_narrative(sheet_for("study26.bpmn"));
  auto doc = to_json(story);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["hash"] == content_hash(story));
  CHECK(content_hash(story).rfind("sha256:", 0) == 0);
  CHECK(narrative_from_json(doc) == story);

  auto tampered = doc;
  tampered["knots"][0]["body"] = "changed";
  CHECK(code_of([&] { narrative_from_json(tampered); }) == Errc::InvalidStoryJson);

  auto broken = doc;
  broken["knots"][0]["exit"]["target"] = "nowhere_99";
  broken.erase("hash");
  CHECK(code_of([&] { narrative_from_json(broken); }) == Errc::InvalidStoryJson);
  CHECK(code_of([] { narrative_from_json(ordered_json{{"schema_version", 1}}); }) ==
        Errc::InvalidStoryJson);
}

TEST_CASE("hash depends on content only") {
  auto a = compile_narrative(sheet_for("bookstore.bpmn"));
  auto b = compile_narrative(sheet_for("bookstore.bpmn"));
  CHECK(content_hash(a) == content_hash(b));
  b.knots[2].body += ".";
  CHECK(content_hash(a) != content_hash(b));
}

TEST_CASE("generated narratives are well formed and round-trip through Ink") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto m = syp::testing::generate_model(seed, {2, 60, true, true, true});
    auto story = compile_narrative(script_sentences(m, extract_sentences(m)));
    CHECK(narrative_problems(story).empty());
    CHECK(oracle::isomorphic(parse_ink(emit_ink(story)), story));
    CHECK(narrative_from_json(to_json(story)) == story);
  }
}

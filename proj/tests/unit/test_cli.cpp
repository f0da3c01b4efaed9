#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "fixtures.hpp"
#include "syp/cli.hpp"
#include "syp/narrative.hpp"
#include "syp/runtime.hpp"

using namespace syp;
using syp::testing::fixture;
using syp::testing::scratch_dir;
using syp::testing::slurp;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string f(const char* name) { return fixture(name).string(); }

// Runs extract, script and compile into `dir`.
void pipeline(const std::string& bpmn, const std::filesystem::path& dir,
              const std::string& numbering = "dfs") {
  const std::string out = dir.string();
  REQUIRE(run({"extract", bpmn, "--out", out}).code == 0);
  REQUIRE(run({"script", bpmn, (dir / "sentences.json").string(), "--numbering", numbering,
               "--out", out}).code == 0);
  REQUIRE(run({"compile", (dir / "beatsheet.json").string(), "--out", out}).code == 0);
}

}  // namespace

TEST_CASE("extract writes sentences and the table") {
  auto dir = scratch_dir("cli_extract");
  auto r = run({"extract", f("bookstore.bpmn"), "--out", dir.string()});
  CHECK(r.code == cli::kExitOk);
  auto doc = ordered_json::parse(slurp(dir / "sentences.json"));
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["sentences"].size() == 8);
  CHECK(slurp(dir / "table.csv").rfind("#,Sentences,BPMN Element,Next\n", 0) == 0);

  r = run({"extract", f("study26.bpmn"), "--out", dir.string()});
  CHECK(r.code == cli::kExitOk);
  CHECK(ordered_json::parse(slurp(dir / "sentences.json"))["sentences"].size() == 26);
}

TEST_CASE("input errors exit 2 with a diagnostic") {
  auto r = run({"extract", "missing.bpmn"});
  CHECK(r.code == cli::kExitInputError);
  CHECK(r.err.find("file not found") != std::string::npos);

  r = run({"extract", f("unsupported.bpmn"), "--out", scratch_dir("cli_bad").string()});
  CHECK(r.code == cli::kExitInputError);
  CHECK(r.err.find("UnsupportedElement") != std::string::npos);

  r = run({"extract", f("parallel.bpmn"), "--out", scratch_dir("cli_bad").string()});
  CHECK(r.code == cli::kExitInputError);
  CHECK(r.err.find("parallel gateway") != std::string::npos);

  CHECK(run({"extract", f("bookstore.bpmn"), "--mode", "sloppy"}).code == cli::kExitInputError);
  CHECK(run({"frobnicate"}).code == cli::kExitInputError);
  CHECK(run({}).code == cli::kExitInputError);
  CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("lenient mode lets a parallel model through the whole pipeline") {
  auto dir = scratch_dir("cli_parallel");
  const auto out = dir.string();
  auto r = run({"extract", f("parallel.bpmn"), "--mode", "lenient", "--out", out});
  CHECK(r.code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
  CHECK(run({"script", f("parallel.bpmn"), (dir / "sentences.json").string(), "--mode", "lenient",
             "--out", out}).code == 0);
  CHECK(run({"compile", (dir / "beatsheet.json").string(), "--out", out}).code == 0);
  CHECK(slurp(dir / "story.ink").find("// parallel branches linearized") != std::string::npos);
}

TEST_CASE("full bookstore pipeline produces the two choice lines") {
  auto dir = scratch_dir("cli_pipeline");
  pipeline(f("bookstore.bpmn"), dir, "list");
  auto ink = slurp(dir / "story.ink");
  CHECK(ink.find("* [I have money] -> receive_the_money_6\n") != std::string::npos);
  CHECK(ink.find("* [I have no money] -> the_book_is_given_back_5\n") != std::string::npos);
  CHECK(slurp(dir / "beatsheet.csv").find("Gateway,6 - 5") != std::string::npos);
}

TEST_CASE("pipeline output equals in-process module composition, byte for byte") {
  for (const char* name : {"bookstore.bpmn", "loop.bpmn", "study26.bpmn"}) {
    CAPTURE(name);
    auto dir = scratch_dir("cli_compose");
    pipeline(f(name), dir);
    auto model = load_bpmn_file(f(name));
    auto sentences = extract_sentences(model);
    SentenceList list{model.process_id, model.process_name, sentences};
    auto sheet = script_sentences(model, sentences);
    auto story = compile_narrative(sheet);
    CHECK(slurp(dir / "sentences.json") == cli::format_json(to_json(list)));
    CHECK(slurp(dir / "table.csv") == sentences_to_csv(sentences));
    CHECK(slurp(dir / "beatsheet.json") == cli::format_json(to_json(sheet)));
    CHECK(slurp(dir / "beatsheet.csv") == beat_sheet_to_csv(sheet));
    CHECK(slurp(dir / "story.ink") == emit_ink(story));
    CHECK(slurp(dir / "story.json") == cli::format_json(to_json(story)));
  }
}

TEST_CASE("commands are idempotent") {
  auto a = scratch_dir("cli_idem_a");
  auto b = scratch_dir("cli_idem_b");
  pipeline(f("study26.bpmn"), a);
  pipeline(f("study26.bpmn"), b);
  pipeline(f("study26.bpmn"), b);
  for (const char* file : {"sentences.json", "table.csv", "beatsheet.json", "beatsheet.csv",
                           "story.ink", "story.json"}) {
    CAPTURE(file);
    CHECK(slurp(a / file) == slurp(b / file));
    CHECK(slurp(a / file).find('\r') == std::string::npos);
  }
}

TEST_CASE("lexicon flag") {
  auto dir = scratch_dir("cli_lexicon");
  {
    std::ofstream(dir / "lex.json") << R"({"activity": "must"})";
    std::ofstream(dir / "bad.json") << R"({"activity": 3})";
  }
  CHECK(run({"extract", f("bookstore.bpmn"), "--lexicon", (dir / "lex.json").string(), "--out",
             dir.string()}).code == 0);
  CHECK(slurp(dir / "table.csv").find("The Client must \"\"Check Its") != std::string::npos);
  auto r = run({"extract", f("bookstore.bpmn"), "--lexicon", (dir / "bad.json").string(), "--out",
                dir.string()});
  CHECK(r.code == cli::kExitInputError);
  CHECK(run({"extract", f("bookstore.bpmn"), "--lexicon", "nope.json"}).code == cli::kExitInputError);
}

TEST_CASE("script reports unreachable nodes with exit 1") {
  auto dir = scratch_dir("cli_unreach");
  {
    std::ofstream(dir / "m.bpmn")
        << "<definitions xmlns=\"http://www.omg.org/spec/BPMN/20100524/MODEL\"><process id=\"p\" name=\"P\">"
           "<laneSet id=\"ls\"><lane id=\"l\" name=\"L\"><flowNodeRef>a</flowNodeRef><flowNodeRef>z</flowNodeRef>"
           "</lane></laneSet><startEvent id=\"s\" name=\"S\"/><task id=\"a\" name=\"A\"/>"
           "<task id=\"z\" name=\"Z\"/><endEvent id=\"e\" name=\"E\"/>"
           "<sequenceFlow id=\"f1\" sourceRef=\"s\" targetRef=\"a\"/>"
           "<sequenceFlow id=\"f2\" sourceRef=\"a\" targetRef=\"e\"/>"
           "<sequenceFlow id=\"f3\" sourceRef=\"z\" targetRef=\"e\"/></process></definitions>";
  }
  const auto m = (dir / "m.bpmn").string();
  CHECK(run({"extract", m, "--out", dir.string()}).code == cli::kExitInputError);
  CHECK(run({"extract", m, "--mode", "lenient", "--out", dir.string()}).code == 0);
  auto r = run({"script", m, (dir / "sentences.json").string(), "--mode", "lenient", "--out",
                dir.string()});
  CHECK(r.code == cli::kExitIncomplete);
  CHECK(r.err.find("z: not reachable") != std::string::npos);
  r = run({"check", m, (dir / "beatsheet.json").string()});
  CHECK(r.code == cli::kExitIncomplete);
  CHECK(r.out == "expected 4, found 3\nmissing: z\n");
}

TEST_CASE("check on complete and truncated sheets") {
  auto r = run({"check", f("study26.bpmn"), fixture("study/gold.json").string()});
  CHECK(r.code == 0);
  CHECK(r.out == "expected 26, found 26\n");
  r = run({"check", f("study26.bpmn"), fixture("study/p18.json").string()});
  CHECK(r.code == cli::kExitIncomplete);
  CHECK(r.out.find("missing: ") != std::string::npos);
  r = run({"check", f("bookstore.bpmn"), fixture("study/gold.json").string()});
  CHECK(r.code == cli::kExitInputError);
}

TEST_CASE("score prints the CSV and writes it when --out is given") {
  auto gold = fixture("study/gold.json").string();
  auto r = run({"score", fixture("study/p07.json").string(), gold});
  CHECK(r.code == cli::kExitIncomplete);
  CHECK(r.out == "participant,qtd_ext,qtd_corr,qtd_exp,mq1,mq2\np07,24,5,26,0.92,0.19\n");

  r = run({"score", fixture("study/p01.json").string(), gold});
  CHECK(r.code == 0);

  auto dir = scratch_dir("cli_score");
  r = run({"score", fixture("study/p01.json").string(), fixture("study/p12.json").string(), gold,
           "--out", dir.string()});
  CHECK(r.out.find("Average,") != std::string::npos);
  CHECK(slurp(dir / "metrics.csv") == r.out);

  CHECK(run({"score", gold}).code == cli::kExitInputError);
  CHECK(run({"score", fixture("study/p01.json").string(), "missing.json"}).code ==
        cli::kExitInputError);
}

TEST_CASE("play: choose by number or label, save, restart, reload") {
  auto dir = scratch_dir("cli_play");
  pipeline(f("bookstore.bpmn"), dir, "list");
  const auto story = (dir / "story.json").string();

  auto r = run({"play", story, "--out", dir.string()}, "2\nquit\n");
  CHECK(r.code == 0);
  CHECK(r.out.find("1) I have money") != std::string::npos);
  CHECK(r.out.find("The Book Purchase ends when \"The Book is Given Back\"") != std::string::npos);
  CHECK(r.out.find("THE END") != std::string::npos);

  r = run({"play", story, "--out", dir.string()}, "reload\nsave\nrestart\nI have money\nreload\nquit\n");
  CHECK(r.out.find("nothing saved yet") != std::string::npos);
  CHECK(r.out.find("-- restarted --") != std::string::npos);
  CHECK(r.out.find("-- reloaded --") != std::string::npos);

  auto saved = slurp(dir / "story.save.json");
  auto narrative = std::make_shared<const CompiledNarrative>(
      narrative_from_json(ordered_json::parse(slurp(story))));
  auto session = load_session(saved, narrative);
  CHECK(session.current_knot == "it_is_decided_4");

  r = run({"play", story, "--out", dir.string()}, "7\nsteal\nquit\n");
  CHECK(r.out.find("choice number 7 is not offered") != std::string::npos);
  CHECK(r.out.find("no choice 'steal' here") != std::string::npos);
}

TEST_CASE("play refuses a tampered story") {
  auto dir = scratch_dir("cli_tamper");
  pipeline(f("bookstore.bpmn"), dir);
  auto doc = ordered_json::parse(slurp(dir / "story.json"));
  doc["knots"][1]["body"] = "edited";
  std::ofstream(dir / "story.json", std::ios::binary) << doc.dump(2);
  auto r = run({"play", (dir / "story.json").string()});
  CHECK(r.code == cli::kExitInputError);
  CHECK(r.err.find("InvalidStoryJson") != std::string::npos);
}

TEST_CASE("the installed binary honours exit codes and SYP_NO_COLOR") {
  const std::string bin = SYP_BINARY;
  CHECK(std::system((bin + " extract /nonexistent.bpmn 2>/dev/null").c_str()) != 0);
  auto dir = scratch_dir("cli_binary");
  auto cmd = "SYP_NO_COLOR=1 " + bin + " extract " + f("parallel.bpmn") + " --out " + dir.string() +
             " 2> " + (dir / "err.txt").string();
  int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 2);
  CHECK(slurp(dir / "err.txt").find('\x1b') == std::string::npos);
}

TEST_CASE("exported conformance vectors match a fresh export") {
  auto dir = scratch_dir("cli_vectors");
  auto out = dir / "vectors.json";
  auto cmd = std::string(SYP_VECTORS_TOOL) + " " + std::string(SYP_FIXTURES) + " " + out.string();
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(slurp(out) == slurp(fixture("conformance/vectors.json")));
}

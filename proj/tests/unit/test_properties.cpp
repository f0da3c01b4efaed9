#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "generator.hpp"
#include "oracles.hpp"
#include "syp/metrics.hpp"
#include "syp/runtime.hpp"

using namespace syp;

namespace {

constexpr int kSeeds = 120;

ProcessModel model_for(int seed, bool parallel = false, int max_nodes = 60) {
  syp::testing::GeneratorOptions options;
  options.max_nodes = max_nodes;
  options.parallel = parallel;
  return syp::testing::generate_model(static_cast<std::uint64_t>(seed), options);
}

std::multiset<std::pair<std::string, std::string>> flow_edges(const ProcessModel& m) {
  std::multiset<std::pair<std::string, std::string>> edges;
  for (const auto& f : m.sequence_flows) {
    if (m.find_node(f.source)->kind != NodeKind::EndEvent) edges.insert({f.source, f.target});
  }
  return edges;
}

}  // namespace

TEST_CASE("document order is a strict total order matching the XML") {
  for (int seed = 0; seed < kSeeds; ++seed) {
    auto m = parse_bpmn(syp::testing::write_bpmn(model_for(seed, true)));
    std::set<int> seen;
    int previous = -1;
    for (const auto& n : m.flow_nodes) {
      CHECK(seen.insert(n.document_order).second);
      CHECK(n.document_order > previous);  // writer emits nodes in vector order
      previous = n.document_order;
    }
  }
}

TEST_CASE("subject law") {
  for (int seed = 0; seed < kSeeds; ++seed) {
    auto m = model_for(seed, true);
    for (const auto& s : extract_sentences(m)) {
      const bool simple = s.source_kind == NodeKind::StartEvent ||
                          s.source_kind == NodeKind::EndEvent ||
                          s.source_kind == NodeKind::Activity;
      CHECK(s.subject_kind == (simple ? SubjectKind::Simple : SubjectKind::Undefined));
      CHECK(s.subject_text.empty() == !simple);
    }
  }
}

TEST_CASE("extraction and scripting are deterministic") {
  for (int seed = 0; seed < 40; ++seed) {
    auto xml = syp::testing::write_bpmn(model_for(seed, true));
    auto a = parse_bpmn(xml);
    auto b = parse_bpmn(xml);
    CHECK(to_json(SentenceList{a.process_id, a.process_name, extract_sentences(a)}).dump() ==
          to_json(SentenceList{b.process_id, b.process_name, extract_sentences(b)}).dump());
    CHECK(to_json(script_sentences(a, extract_sentences(a))).dump() ==
          to_json(script_sentences(b, extract_sentences(b))).dump());
  }
}

TEST_CASE("refinement keeps every source node") {
  std::mt19937 rng(11);
  for (int seed = 0; seed < 60; ++seed) {
    auto m = model_for(seed);
    auto sentences = extract_sentences(m);
    std::multiset<std::string> before;
    for (const auto& s : sentences) before.insert(s.source_node);
    for (int edit = 0; edit < 10; ++edit) {
      int id = std::uniform_int_distribution<int>(1, static_cast<int>(sentences.size()))(rng);
      const auto& target = sentences[static_cast<std::size_t>(id - 1)];
      Refinement r;
      r.verb = target.verb + " really";
      std::vector<std::string> texts;
      for (const auto& c : target.complements) texts.push_back(c.text + " (edited)");
      r.complement_texts = texts;
      sentences = refine_sentence(sentences, id, r);
    }
    std::multiset<std::string> after;
    for (const auto& s : sentences) after.insert(s.source_node);
    CHECK(before == after);
  }
}

TEST_CASE("next pointers: a -> b exactly when a flow connects their nodes") {
  for (int seed = 0; seed < kSeeds; ++seed) {
    auto m = model_for(seed);
    auto sheet = script_sentences(m, extract_sentences(m));
    std::multiset<std::pair<std::string, std::string>> next_edges;
    for (const auto& e : sheet.entries) {
      for (const auto& n : e.next) {
        next_edges.insert({e.sentence.source_node, sheet.find(n.id)->sentence.source_node});
      }
    }
    CHECK(next_edges == flow_edges(m));
    // Totality: every node reachable from the start is an entry exactly once.
    auto reachable = syp::oracle::reachable(m, sheet.find(1)->sentence.source_node);
    CHECK(reachable.size() == sheet.entries.size());
  }
}

TEST_CASE("compiled knot graph is isomorphic to the next relation") {
  for (int seed = 0; seed < kSeeds; ++seed) {
    auto m = model_for(seed);
    auto sheet = script_sentences(m, extract_sentences(m));
    auto story = compile_narrative(sheet);
    REQUIRE(story.knots.size() == sheet.entries.size());
    std::map<std::string, int> entry_of;
    for (const auto& k : story.knots) entry_of[k.id] = k.entry_id;
    std::multiset<std::pair<int, int>> knot_edges, sheet_edges;
    for (const auto& k : story.knots) {
      if (const auto* d = std::get_if<Divert>(&k.exit)) knot_edges.insert({k.entry_id, entry_of.at(d->target)});
      if (const auto* c = std::get_if<Choices>(&k.exit)) {
        for (const auto& o : c->options) knot_edges.insert({k.entry_id, entry_of.at(o.target)});
      }
    }
    for (const auto& e : sheet.entries) {
      for (const auto& n : e.next) sheet_edges.insert({e.id, n.id});
    }
    CHECK(knot_edges == sheet_edges);
  }
}

TEST_CASE("play traces follow sequence flows") {
  std::mt19937 rng(3);
  for (int seed = 0; seed < 60; ++seed) {
    auto m = model_for(seed);
    auto story = std::make_shared<const CompiledNarrative>(
        compile_narrative(script_sentences(m, extract_sentences(m))));
    std::set<std::pair<std::string, std::string>> edges;
    for (const auto& f : m.sequence_flows) edges.insert({f.source, f.target});
    auto s = start_session(story);
    for (int step = 0; step < 30 && !s.finished; ++step) {
      auto labels = s.pending_choices();
      s = apply_choice_index(s, std::uniform_int_distribution<std::size_t>(0, labels.size() - 1)(rng));
    }
    auto visited = s.visited();
    for (std::size_t i = 1; i < visited.size(); ++i) {
      auto from = story->find(visited[i - 1])->source_node;
      auto to = story->find(visited[i])->source_node;
      CHECK(edges.count({from, to}) == 1);
    }
    if (s.finished) CHECK(m.find_node(story->find(s.current_knot)->source_node)->kind == NodeKind::EndEvent);
  }
}

TEST_CASE("metrics laws") {
  std::mt19937 rng(8);
  for (int seed = 0; seed < 60; ++seed) {
    auto m = model_for(seed);
    auto gold = script_sentences(m, extract_sentences(m));
    auto self = score_sheet(gold, gold);
    CHECK(self.mq1 == 1.0);
    CHECK(self.mq2 == 1.0);

    auto cand = gold;
    std::shuffle(cand.entries.begin(), cand.entries.end(), rng);
    cand.entries.resize(std::uniform_int_distribution<std::size_t>(0, cand.entries.size())(rng));
    if (!cand.entries.empty()) {
      cand.entries.push_back(cand.entries.front());  // a duplicate
      cand.entries.front().sentence.subject_kind = SubjectKind::Undefined;
    }
    auto r = score_sheet(cand, gold);
    CHECK(r.qtd_corr <= r.qtd_ext);
    CHECK(r.mq2 <= r.mq1);
    CHECK(r.qtd_exp == static_cast<int>(gold.entries.size()));
    if (!cand.entries.empty()) {
      CHECK(score_sheet(gold, cand).qtd_exp == static_cast<int>(cand.entries.size()));
    }
  }
}

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "hash.hpp"
#include "syp/error.hpp"
#include "syp/narrative.hpp"

namespace syp {

namespace {

constexpr int kStorySchemaVersion = 1;

std::string knot_base(const Sentence& s) {
  for (const auto& c : s.complements) {
    if (c.origin == ComplementOrigin::ElementLabel) return c.text;
  }
  return s.verb;
}

std::string join_problems(const std::vector<std::string>& problems) {
  std::string out;
  for (const auto& p : problems) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

// Replaces each parallel split's fan-out by a single divert chain: branch 1,
// then branch 2, ... then the join. Branches must be plain divert chains that
// meet at one parallel gateway.
void linearize_parallel(CompiledNarrative& story, const std::set<std::string>& splits,
                        const std::set<std::string>& parallel_knots,
                        const std::map<std::string, std::vector<std::string>>& fanout) {
  auto knot = [&](const std::string& id) -> Knot& {
    return *std::find_if(story.knots.begin(), story.knots.end(),
                         [&](const Knot& k) { return k.id == id; });
  };
  for (const auto& split : splits) {
    std::vector<std::vector<std::string>> chains;
    std::optional<std::string> join;
    for (const auto& head : fanout.at(split)) {
      std::vector<std::string> chain;
      std::string cur = head;
      while (!parallel_knots.count(cur)) {
        const auto* divert = std::get_if<Divert>(&knot(cur).exit);
        if (!divert || chain.size() > story.knots.size()) {
          throw Error(Errc::UnsupportedParallel,
                      "parallel branch through '" + cur + "' is not a plain sequence", split);
        }
        chain.push_back(cur);
        cur = divert->target;
      }
      if (splits.count(cur) || (join && *join != cur)) {
        throw Error(Errc::UnsupportedParallel,
                    "parallel branches of '" + split + "' do not meet at a single join", split);
      }
      join = cur;
      if (!chain.empty()) chains.push_back(std::move(chain));
    }

    std::string note = "parallel branches linearized in document order:";
    std::string* tail = nullptr;
    Knot& split_knot = knot(split);
    for (const auto& chain : chains) {
      note += " " + chain.front();
      if (tail) {
        *tail = chain.front();
      } else {
        split_knot.exit = Divert{chain.front()};
      }
      tail = &std::get<Divert>(knot(chain.back()).exit).target;
    }
    if (tail) {
      *tail = *join;
    } else {
      split_knot.exit = Divert{*join};
    }
    split_knot.note = note;
  }
}

void reject_divert_cycles(const CompiledNarrative& story) {
  std::map<std::string_view, const Knot*> by_id;
  for (const auto& k : story.knots) by_id.emplace(k.id, &k);
  for (const auto& k : story.knots) {
    const Knot* cur = &k;
    for (std::size_t steps = 0; const auto* d = std::get_if<Divert>(&cur->exit); ++steps) {
      if (steps > story.knots.size()) {
        throw Error(Errc::InfiniteLoop,
                    "knot '" + k.id + "' starts a divert cycle with no choice to leave it", k.id);
      }
      auto it = by_id.find(d->target);
      if (it == by_id.end()) break;
      cur = it->second;
    }
  }
}

}  // namespace

const Knot* CompiledNarrative::find(std::string_view id) const {
  for (const auto& k : knots) {
    if (k.id == id) return &k;
  }
  return nullptr;
}

std::string knot_id(std::string_view text, int entry_id) {
  std::string base;
  bool gap = false;
  for (unsigned char c : text) {
    if (c < 0x80 && std::isalnum(c)) {
      if (gap && !base.empty()) base.push_back('_');
      gap = false;
      base.push_back(static_cast<char>(std::tolower(c)));
    } else {
      gap = true;
    }
  }
  if (base.size() > 48) {
    base.resize(48);
    while (!base.empty() && base.back() == '_') base.pop_back();
  }
  if (base.empty()) base = "knot";
  if (std::isdigit(static_cast<unsigned char>(base.front()))) base = "k_" + base;
  return base + "_" + std::to_string(entry_id);
}

CompiledNarrative compile_narrative(const BeatSheet& sheet) {
  if (auto problems = sheet_problems(sheet); !problems.empty()) {
    throw Error(Errc::IncompleteSheet, "beat sheet is not complete: " + join_problems(problems));
  }

  std::map<int, std::string> ids;
  for (const auto& e : sheet.entries) ids.emplace(e.id, knot_id(knot_base(e.sentence), e.id));

  CompiledNarrative story;
  story.title = sheet.process_name;
  std::set<std::string> splits, parallel_knots;
  std::map<std::string, std::vector<std::string>> fanout;

  for (const auto& e : sheet.entries) {
    Knot k;
    k.id = ids.at(e.id);
    k.entry_id = e.id;
    k.source_node = e.sentence.source_node;
    k.body = e.sentence.rendered;
    const auto kind = e.sentence.source_kind;
    if (kind == NodeKind::ParallelGateway) parallel_knots.insert(k.id);

    if (kind == NodeKind::EndEvent) {
      k.exit = End{};
    } else if (e.next.empty()) {
      throw Error(Errc::DeadEnd, "entry " + std::to_string(e.id) + " leads nowhere", k.id);
    } else if (e.next.size() == 1) {
      k.exit = Divert{ids.at(e.next.front().id)};
    } else if (kind == NodeKind::ParallelGateway) {
      splits.insert(k.id);
      for (const auto& n : e.next) fanout[k.id].push_back(ids.at(n.id));
      k.exit = Divert{ids.at(e.next.front().id)};
    } else {
      Choices choices;
      std::set<std::string> seen;
      for (const auto& n : e.next) {
        if (!n.option_label || n.option_label->empty()) {
          throw Error(Errc::UnlabeledChoice,
                      "entry " + std::to_string(e.id) + " has an unlabeled option", k.id);
        }
        if (!seen.insert(*n.option_label).second) {
          throw Error(Errc::DuplicateChoice,
                      "entry " + std::to_string(e.id) + " repeats option '" + *n.option_label + "'",
                      k.id);
        }
        choices.options.push_back({*n.option_label, ids.at(n.id)});
      }
      k.exit = std::move(choices);
    }
    story.knots.push_back(std::move(k));
  }
  story.start_knot = ids.at(1);

  linearize_parallel(story, splits, parallel_knots, fanout);
  reject_divert_cycles(story);
  return story;
}

std::vector<std::string> narrative_problems(const CompiledNarrative& story) {
  std::vector<std::string> problems;
  std::set<std::string> ids;
  for (const auto& k : story.knots) {
    if (k.id.empty()) problems.push_back("knot with empty id");
    if (!ids.insert(k.id).second) problems.push_back("duplicate knot id '" + k.id + "'");
  }
  if (!ids.count(story.start_knot)) problems.push_back("start knot '" + story.start_knot + "' missing");
  for (const auto& k : story.knots) {
    if (const auto* d = std::get_if<Divert>(&k.exit)) {
      if (!ids.count(d->target)) problems.push_back("knot '" + k.id + "' diverts to unknown '" + d->target + "'");
    } else if (const auto* c = std::get_if<Choices>(&k.exit)) {
      if (c->options.empty()) problems.push_back("knot '" + k.id + "' has an empty choice list");
      for (const auto& o : c->options) {
        if (o.label.empty()) problems.push_back("knot '" + k.id + "' has an unlabeled choice");
        if (!ids.count(o.target)) problems.push_back("choice in '" + k.id + "' targets unknown '" + o.target + "'");
      }
    }
  }
  return problems;
}

namespace {

ordered_json canonical_json(const CompiledNarrative& story) {
  ordered_json doc;
  doc["schema_version"] = kStorySchemaVersion;
  doc["title"] = story.title;
  doc["start"] = story.start_knot;
  auto& knots = doc["knots"] = ordered_json::array();
  for (const auto& k : story.knots) {
    ordered_json item{{"id", k.id}, {"entry", k.entry_id}, {"source_node", k.source_node},
                      {"body", k.body}};
    if (const auto* d = std::get_if<Divert>(&k.exit)) {
      item["exit"] = {{"type", "divert"}, {"target", d->target}};
    } else if (const auto* c = std::get_if<Choices>(&k.exit)) {
      ordered_json options = ordered_json::array();
      for (const auto& o : c->options) options.push_back({{"label", o.label}, {"target", o.target}});
      item["exit"] = {{"type", "choices"}, {"choices", std::move(options)}};
    } else {
      item["exit"] = {{"type", "end"}};
    }
    if (k.note) item["note"] = *k.note;
    knots.push_back(std::move(item));
  }
  return doc;
}

}  // namespace

std::string content_hash(const CompiledNarrative& story) {
  return "sha256:" + detail::sha256_hex(canonical_json(story).dump());
}

ordered_json to_json(const CompiledNarrative& story) {
  auto doc = canonical_json(story);
  doc["hash"] = content_hash(story);
  return doc;
}

CompiledNarrative narrative_from_json(const ordered_json& doc) {
  CompiledNarrative story;
  try {
    if (doc.at("schema_version").get<int>() != kStorySchemaVersion) {
      throw Error(Errc::InvalidStoryJson, "unsupported story schema_version");
    }
    story.title = doc.at("title").get<std::string>();
    story.start_knot = doc.at("start").get<std::string>();
    for (const auto& item : doc.at("knots")) {
      Knot k;
      k.id = item.at("id").get<std::string>();
      k.entry_id = item.at("entry").get<int>();
      k.source_node = item.value("source_node", std::string());
      k.body = item.at("body").get<std::string>();
      const auto& exit = item.at("exit");
      auto type = exit.at("type").get<std::string>();
      if (type == "divert") {
        k.exit = Divert{exit.at("target").get<std::string>()};
      } else if (type == "choices") {
        Choices c;
        for (const auto& o : exit.at("choices")) {
          c.options.push_back({o.at("label").get<std::string>(), o.at("target").get<std::string>()});
        }
        k.exit = std::move(c);
      } else if (type == "end") {
        k.exit = End{};
      } else {
        throw Error(Errc::InvalidStoryJson, "unknown exit type '" + type + "'", k.id);
      }
      if (item.contains("note")) k.note = item.at("note").get<std::string>();
      story.knots.push_back(std::move(k));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidStoryJson, std::string("invalid story JSON: ") + e.what());
  }
  if (auto problems = narrative_problems(story); !problems.empty()) {
    throw Error(Errc::InvalidStoryJson, "invalid story: " + join_problems(problems));
  }
  if (doc.contains("hash") && doc.at("hash") != content_hash(story)) {
    throw Error(Errc::InvalidStoryJson, "story hash does not match its content");
  }
  return story;
}

}  // namespace syp

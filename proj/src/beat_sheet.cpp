#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "syp/beat_sheet.hpp"
#include "syp/error.hpp"

namespace syp {

namespace {

constexpr int kSheetSchemaVersion = 1;

std::vector<const FlowNode*> walk_dfs(const ProcessModel& model, const FlowNode& start) {
  std::vector<const FlowNode*> order;
  std::set<std::string_view> seen{start.id};
  struct Frame {
    const FlowNode* node;
    std::vector<const SequenceFlow*> out;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;
  order.push_back(&start);
  stack.push_back({&start, model.outgoing(start.id)});
  while (!stack.empty()) {
    auto& top = stack.back();
    if (top.next == top.out.size()) {
      stack.pop_back();
      continue;
    }
    const FlowNode* target = model.find_node(top.out[top.next++]->target);
    if (!seen.insert(target->id).second) continue;
    order.push_back(target);
    stack.push_back({target, model.outgoing(target->id)});
  }
  return order;
}

std::vector<const FlowNode*> walk_list(const ProcessModel& model, const FlowNode& start) {
  auto reached = walk_dfs(model, start);
  std::stable_sort(reached.begin() + 1, reached.end(), [](const FlowNode* a, const FlowNode* b) {
    return a->document_order < b->document_order;
  });
  return reached;
}

}  // namespace

std::string_view to_string(Numbering numbering) noexcept {
  return numbering == Numbering::Dfs ? "dfs" : "list";
}

Numbering numbering_from_string(std::string_view text) {
  if (text == "dfs") return Numbering::Dfs;
  if (text == "list") return Numbering::List;
  throw Error(Errc::InvalidSheetJson, "unknown numbering '" + std::string(text) + "'");
}

const BeatEntry* BeatSheet::find(int id) const {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

const BeatEntry* BeatSheet::find_node(std::string_view node_id) const {
  for (const auto& e : entries) {
    if (e.sentence.source_node == node_id) return &e;
  }
  return nullptr;
}

BeatSheet script_sentences(const ProcessModel& model, std::vector<Sentence> sentences,
                           Numbering numbering) {
  if (sentences.size() != model.flow_nodes.size()) {
    throw Error(Errc::CountMismatch, std::to_string(sentences.size()) + " sentences for " +
                                         std::to_string(model.flow_nodes.size()) + " flow nodes");
  }
  std::map<std::string, Sentence> by_node;
  for (auto& s : sentences) {
    const FlowNode* node = model.find_node(s.source_node);
    if (!node || node->kind != s.source_kind) {
      throw Error(Errc::CountMismatch,
                  "sentence " + std::to_string(s.id) + " does not match any flow node of the model",
                  s.source_node);
    }
    auto id = s.source_node;
    if (!by_node.emplace(id, std::move(s)).second) {
      throw Error(Errc::CountMismatch, "two sentences for flow node '" + id + "'", id);
    }
  }

  const FlowNode* start = nullptr;
  int starts = 0;
  for (const auto& n : model.flow_nodes) {
    if (n.kind == NodeKind::StartEvent) {
      ++starts;
      start = &n;
    }
  }
  if (starts != 1) {
    throw Error(Errc::NoStartEvent,
                "expected exactly one start event, found " + std::to_string(starts));
  }

  auto order = numbering == Numbering::Dfs ? walk_dfs(model, *start) : walk_list(model, *start);
  std::map<std::string_view, int> entry_id;
  for (std::size_t i = 0; i < order.size(); ++i) {
    entry_id.emplace(order[i]->id, static_cast<int>(i) + 1);
  }

  BeatSheet sheet;
  sheet.process_id = model.process_id;
  sheet.process_name = model.process_name;
  sheet.numbering = numbering;
  for (const FlowNode* node : order) {
    BeatEntry entry;
    entry.id = entry_id.at(node->id);
    entry.sentence = by_node.at(node->id);
    entry.sentence.id = entry.id;
    if (node->kind != NodeKind::EndEvent) {
      auto out = model.outgoing(node->id);
      std::vector<const Complement*> options;
      for (const auto& c : entry.sentence.complements) {
        if (c.origin == ComplementOrigin::GateOption) options.push_back(&c);
      }
      const bool use_options =
          node->kind == NodeKind::ExclusiveGateway && out.size() > 1 && options.size() == out.size();
      for (std::size_t i = 0; i < out.size(); ++i) {
        NextRef ref{entry_id.at(out[i]->target), std::nullopt};
        if (use_options) {
          ref.option_label = options[i]->text;
        } else if (out.size() > 1) {
          ref.option_label = out[i]->condition_label;
        }
        entry.next.push_back(std::move(ref));
      }
    }
    sheet.entries.push_back(std::move(entry));
  }
  for (const auto& n : model.flow_nodes) {
    if (!entry_id.count(n.id)) sheet.unreachable.push_back(n.id);
  }
  return sheet;
}

std::vector<std::string> sheet_problems(const BeatSheet& sheet) {
  std::vector<std::string> problems;
  std::set<int> ids;
  for (std::size_t i = 0; i < sheet.entries.size(); ++i) {
    const auto& e = sheet.entries[i];
    if (e.id != static_cast<int>(i) + 1) {
      problems.push_back("entry at position " + std::to_string(i + 1) + " has id " +
                         std::to_string(e.id));
    }
    ids.insert(e.id);
  }
  int starts = 0;
  for (const auto& e : sheet.entries) {
    if (e.sentence.source_kind == NodeKind::StartEvent) {
      ++starts;
      if (e.id != 1) problems.push_back("start event entry is not entry 1");
    }
    if (e.sentence.source_kind == NodeKind::EndEvent && !e.next.empty()) {
      problems.push_back("end event entry " + std::to_string(e.id) + " has next pointers");
    }
    for (const auto& n : e.next) {
      if (!ids.count(n.id)) {
        problems.push_back("entry " + std::to_string(e.id) + " points to missing entry " +
                           std::to_string(n.id));
      }
    }
  }
  if (starts != 1) {
    problems.push_back("sheet has " + std::to_string(starts) + " start event entries");
  }
  for (const auto& u : sheet.unreachable) {
    problems.push_back("flow node '" + u + "' is unreachable and has no entry");
  }
  return problems;
}

CompletenessReport check_completeness(const ProcessModel& model, const BeatSheet& sheet) {
  CompletenessReport report;
  report.expected = static_cast<int>(model.flow_nodes.size());
  report.found = static_cast<int>(sheet.entries.size());
  for (const auto& n : model.flow_nodes) {
    if (!sheet.find_node(n.id)) report.missing_node_ids.push_back(n.id);
  }
  return report;
}

ordered_json to_json(const BeatSheet& sheet) {
  ordered_json doc;
  doc["schema_version"] = kSheetSchemaVersion;
  doc["process_id"] = sheet.process_id;
  doc["process_name"] = sheet.process_name;
  doc["numbering"] = to_string(sheet.numbering);
  auto& entries = doc["entries"] = ordered_json::array();
  for (const auto& e : sheet.entries) {
    ordered_json next = ordered_json::array();
    for (const auto& n : e.next) {
      next.push_back({{"id", n.id},
                      {"label", n.option_label ? ordered_json(*n.option_label) : ordered_json()}});
    }
    entries.push_back({{"id", e.id}, {"sentence", to_json(e.sentence)}, {"next", std::move(next)}});
  }
  doc["unreachable"] = sheet.unreachable;
  return doc;
}

BeatSheet beat_sheet_from_json(const ordered_json& doc) {
  try {
    if (doc.at("schema_version").get<int>() != kSheetSchemaVersion) {
      throw Error(Errc::InvalidSheetJson, "unsupported beat sheet schema_version");
    }
    BeatSheet sheet;
    sheet.process_id = doc.at("process_id").get<std::string>();
    sheet.process_name = doc.at("process_name").get<std::string>();
    sheet.numbering = numbering_from_string(doc.value("numbering", std::string("dfs")));
    for (const auto& e : doc.at("entries")) {
      BeatEntry entry;
      entry.id = e.at("id").get<int>();
      entry.sentence = sentence_from_json(e.at("sentence"));
      entry.sentence.id = entry.id;
      for (const auto& n : e.at("next")) {
        NextRef ref;
        ref.id = n.at("id").get<int>();
        if (n.contains("label") && !n.at("label").is_null()) {
          ref.option_label = n.at("label").get<std::string>();
        }
        entry.next.push_back(std::move(ref));
      }
      sheet.entries.push_back(std::move(entry));
    }
    if (doc.contains("unreachable")) {
      sheet.unreachable = doc.at("unreachable").get<std::vector<std::string>>();
    }
    return sheet;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidSheetJson, std::string("invalid beat sheet JSON: ") + e.what());
  }
}

std::string beat_sheet_to_csv(const BeatSheet& sheet) {
  std::ostringstream out;
  out << "#,Sentences,BPMN Element,Next\n";
  for (const auto& e : sheet.entries) {
    std::string next;
    for (const auto& n : e.next) {
      if (!next.empty()) next += " - ";
      next += std::to_string(n.id);
    }
    if (next.empty()) next = "-";
    out << e.id << ',' << csv_field(e.sentence.rendered) << ','
        << csv_field(display_name(e.sentence.source_kind)) << ',' << next << '\n';
  }
  return out.str();
}

}  // namespace syp

#include <array>
#include <utility>

#include "syp/bpmn.hpp"
#include "syp/error.hpp"

namespace syp {

namespace {

constexpr int kModelSchemaVersion = 1;

struct KindNames {
  NodeKind kind;
  std::string_view id;
  std::string_view display;
};

constexpr std::array<KindNames, 6> kKindNames = {{
    {NodeKind::StartEvent, "StartEvent", "Start Event"},
    {NodeKind::EndEvent, "EndEvent", "End Event"},
    {NodeKind::IntermediateEvent, "IntermediateEvent", "Intermediate Event"},
    {NodeKind::Activity, "Activity", "Activity"},
    {NodeKind::ExclusiveGateway, "ExclusiveGateway", "Gateway"},
    {NodeKind::ParallelGateway, "ParallelGateway", "Parallel Gateway"},
}};

ResourceKind resource_kind_from_string(std::string_view text) {
  if (text == "DataObject") return ResourceKind::DataObject;
  if (text == "DataStore") return ResourceKind::DataStore;
  if (text == "TextAnnotation") return ResourceKind::TextAnnotation;
  throw Error(Errc::InvalidModelJson, "unknown resource kind '" + std::string(text) + "'");
}

ordered_json optional_text(const std::optional<std::string>& value) {
  return value ? ordered_json(*value) : ordered_json(nullptr);
}

std::optional<std::string> read_optional_text(const ordered_json& value) {
  if (value.is_null()) return std::nullopt;
  return value.get<std::string>();
}

}  // namespace

std::string_view to_string(NodeKind kind) noexcept {
  for (const auto& k : kKindNames) {
    if (k.kind == kind) return k.id;
  }
  return "Unknown";
}

std::string_view display_name(NodeKind kind) noexcept {
  for (const auto& k : kKindNames) {
    if (k.kind == kind) return k.display;
  }
  return "Unknown";
}

NodeKind node_kind_from_string(std::string_view text) {
  for (const auto& k : kKindNames) {
    if (k.id == text) return k.kind;
  }
  throw Error(Errc::InvalidModelJson, "unknown flow node kind '" + std::string(text) + "'");
}

std::string_view to_string(ResourceKind kind) noexcept {
  switch (kind) {
    case ResourceKind::DataObject: return "DataObject";
    case ResourceKind::DataStore: return "DataStore";
    case ResourceKind::TextAnnotation: return "TextAnnotation";
  }
  return "Unknown";
}

const FlowNode* ProcessModel::find_node(std::string_view id) const {
  for (const auto& n : flow_nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

const Lane* ProcessModel::find_lane(std::string_view id) const {
  for (const auto& l : lanes) {
    if (l.id == id) return &l;
  }
  return nullptr;
}

const Resource* ProcessModel::find_resource(std::string_view id) const {
  for (const auto& r : resources) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

std::vector<const SequenceFlow*> ProcessModel::outgoing(std::string_view node_id) const {
  std::vector<const SequenceFlow*> out;
  for (const auto& f : sequence_flows) {
    if (f.source == node_id) out.push_back(&f);
  }
  return out;
}

std::vector<const SequenceFlow*> ProcessModel::incoming(std::string_view node_id) const {
  std::vector<const SequenceFlow*> in;
  for (const auto& f : sequence_flows) {
    if (f.target == node_id) in.push_back(&f);
  }
  return in;
}

bool is_diverging(const ProcessModel& model, const FlowNode& node) {
  return model.outgoing(node.id).size() > 1;
}

bool is_converging(const ProcessModel& model, const FlowNode& node) {
  return model.incoming(node.id).size() > 1 && !is_diverging(model, node);
}

ordered_json to_json(const ProcessModel& model) {
  ordered_json doc;
  doc["schema_version"] = kModelSchemaVersion;
  doc["process_id"] = model.process_id;
  doc["process_name"] = model.process_name;

  auto& lanes = doc["lanes"] = ordered_json::array();
  for (const auto& l : model.lanes) {
    lanes.push_back({{"id", l.id}, {"name", l.name}, {"name_synthetic", l.name_synthetic}});
  }
  auto& nodes = doc["flow_nodes"] = ordered_json::array();
  for (const auto& n : model.flow_nodes) {
    nodes.push_back({{"id", n.id},
                     {"kind", to_string(n.kind)},
                     {"label", n.label},
                     {"label_synthetic", n.label_synthetic},
                     {"lane_id", optional_text(n.lane_id)},
                     {"document_order", n.document_order}});
  }
  auto& flows = doc["sequence_flows"] = ordered_json::array();
  for (const auto& f : model.sequence_flows) {
    flows.push_back({{"id", f.id},
                     {"source", f.source},
                     {"target", f.target},
                     {"condition_label", optional_text(f.condition_label)},
                     {"document_order", f.document_order}});
  }
  auto& resources = doc["resources"] = ordered_json::array();
  for (const auto& r : model.resources) {
    resources.push_back({{"id", r.id},
                         {"kind", to_string(r.kind)},
                         {"label", r.label},
                         {"label_synthetic", r.label_synthetic}});
  }
  auto& links = doc["resource_links"] = ordered_json::array();
  for (const auto& k : model.resource_links) {
    links.push_back({{"flow_node_id", k.flow_node_id},
                     {"resource_id", k.resource_id},
                     {"direction", k.direction == LinkDirection::Input ? "input" : "output"}});
  }
  return doc;
}

ProcessModel model_from_json(const ordered_json& doc) {
  try {
    if (doc.at("schema_version").get<int>() != kModelSchemaVersion) {
      throw Error(Errc::InvalidModelJson, "unsupported model schema_version");
    }
    ProcessModel model;
    model.process_id = doc.at("process_id").get<std::string>();
    model.process_name = doc.at("process_name").get<std::string>();
    for (const auto& l : doc.at("lanes")) {
      model.lanes.push_back({l.at("id").get<std::string>(), l.at("name").get<std::string>(),
                             l.at("name_synthetic").get<bool>()});
    }
    for (const auto& n : doc.at("flow_nodes")) {
      FlowNode node;
      node.id = n.at("id").get<std::string>();
      node.kind = node_kind_from_string(n.at("kind").get<std::string>());
      node.label = n.at("label").get<std::string>();
      node.label_synthetic = n.at("label_synthetic").get<bool>();
      node.lane_id = read_optional_text(n.at("lane_id"));
      node.document_order = n.at("document_order").get<std::int64_t>();
      model.flow_nodes.push_back(std::move(node));
    }
    for (const auto& f : doc.at("sequence_flows")) {
      model.sequence_flows.push_back({f.at("id").get<std::string>(),
                                      f.at("source").get<std::string>(),
                                      f.at("target").get<std::string>(),
                                      read_optional_text(f.at("condition_label")),
                                      f.at("document_order").get<std::int64_t>()});
    }
    for (const auto& r : doc.at("resources")) {
      model.resources.push_back({r.at("id").get<std::string>(),
                                 resource_kind_from_string(r.at("kind").get<std::string>()),
                                 r.at("label").get<std::string>(),
                                 r.at("label_synthetic").get<bool>()});
    }
    for (const auto& k : doc.at("resource_links")) {
      auto direction = k.at("direction").get<std::string>();
      if (direction != "input" && direction != "output") {
        throw Error(Errc::InvalidModelJson, "unknown link direction '" + direction + "'");
      }
      model.resource_links.push_back(
          {k.at("flow_node_id").get<std::string>(), k.at("resource_id").get<std::string>(),
           direction == "input" ? LinkDirection::Input : LinkDirection::Output});
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidModelJson, std::string("invalid model JSON: ") + e.what());
  }
}

}  // namespace syp

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "syp/bpmn.hpp"
#include "syp/error.hpp"
#include "xml_dom.hpp"

namespace syp {

namespace {

constexpr std::string_view kBpmnModelNs = "http://www.omg.org/spec/BPMN/20100524/MODEL";

const std::map<std::string_view, NodeKind>& flow_node_elements() {
  static const std::map<std::string_view, NodeKind> table = {
      {"startEvent", NodeKind::StartEvent},
      {"endEvent", NodeKind::EndEvent},
      {"intermediateCatchEvent", NodeKind::IntermediateEvent},
      {"intermediateThrowEvent", NodeKind::IntermediateEvent},
      {"task", NodeKind::Activity},
      {"userTask", NodeKind::Activity},
      {"serviceTask", NodeKind::Activity},
      {"manualTask", NodeKind::Activity},
      {"scriptTask", NodeKind::Activity},
      {"businessRuleTask", NodeKind::Activity},
      {"sendTask", NodeKind::Activity},
      {"receiveTask", NodeKind::Activity},
      {"exclusiveGateway", NodeKind::ExclusiveGateway},
      {"parallelGateway", NodeKind::ParallelGateway},
  };
  return table;
}

const std::set<std::string_view>& unsupported_elements() {
  static const std::set<std::string_view> names = {
      "subProcess",      "adHocSubProcess",   "transaction",       "callActivity",
      "boundaryEvent",   "inclusiveGateway",  "eventBasedGateway", "complexGateway",
      "messageFlow",     "callChoreography",  "subChoreography",   "choreographyTask",
      "childLaneSet",
  };
  return names;
}

std::string normalize_space(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string synthetic_kind_name(NodeKind kind) {
  std::string name(display_name(kind));
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return name;
}

bool is_bpmn(const xml::Element& e) { return e.ns == kBpmnModelNs; }

std::string required_id(const xml::Element& e) {
  auto id = normalize_space(e.attribute_or("id"));
  if (id.empty()) {
    throw Error(Errc::MalformedXml,
                "element <" + e.name + "> at line " + std::to_string(e.line) + " has no id");
  }
  return id;
}

[[noreturn]] void reject(const xml::Element& e) {
  auto id = e.attribute_or("id");
  throw Error(Errc::UnsupportedElement,
              "unsupported BPMN element <" + e.name + ">" + (id.empty() ? "" : " '" + id + "'") +
                  " at line " + std::to_string(e.line),
              id);
}

class Reader {
 public:
  ProcessModel read(const xml::Element& root) {
    if (!is_bpmn(root) || root.name != "definitions") {
      throw Error(Errc::MalformedXml, "document root is not a BPMN 2.0 <definitions> element");
    }

    const xml::Element* process = nullptr;
    std::string participant_name;
    int participants = 0;
    for (const auto& child : root.children) {
      if (!is_bpmn(*child)) continue;
      if (child->name == "process") {
        if (process) reject(*child);
        process = child.get();
      } else if (child->name == "collaboration") {
        for (const auto& part : child->children) {
          if (!is_bpmn(*part)) continue;
          if (part->name == "participant") {
            if (++participants > 1) reject(*part);
            participant_name = normalize_space(part->attribute_or("name"));
          } else if (unsupported_elements().count(part->name)) {
            reject(*part);
          }
        }
      }
    }
    if (!process) throw Error(Errc::MalformedXml, "document contains no <process>");

    model_.process_id = required_id(*process);
    model_.process_name = normalize_space(process->attribute_or("name"));
    if (model_.process_name.empty()) model_.process_name = participant_name;
    if (model_.process_name.empty()) {
      throw Error(Errc::MissingProcessName,
                  "process '" + model_.process_id + "' has no name (needed as event subject)",
                  model_.process_id);
    }

    for (const auto& child : process->children) {
      if (is_bpmn(*child)) read_process_child(*child);
    }
    resolve();
    return std::move(model_);
  }

 private:
  void claim_id(const std::string& id, const xml::Element& e) {
    if (!ids_.insert(id).second) {
      throw Error(Errc::MalformedXml,
                  "duplicate id '" + id + "' at line " + std::to_string(e.line), id);
    }
  }

  void read_process_child(const xml::Element& e) {
    if (auto it = flow_node_elements().find(e.name); it != flow_node_elements().end()) {
      read_flow_node(e, it->second);
    } else if (unsupported_elements().count(e.name)) {
      reject(e);
    } else if (e.name == "sequenceFlow") {
      SequenceFlow flow;
      flow.id = required_id(e);
      claim_id(flow.id, e);
      flow.source = normalize_space(e.attribute_or("sourceRef"));
      flow.target = normalize_space(e.attribute_or("targetRef"));
      auto name = normalize_space(e.attribute_or("name"));
      if (!name.empty()) flow.condition_label = std::move(name);
      flow.document_order = e.order;
      model_.sequence_flows.push_back(std::move(flow));
    } else if (e.name == "dataObjectReference") {
      read_resource(e, ResourceKind::DataObject, e.attribute_or("name"));
    } else if (e.name == "dataStoreReference") {
      read_resource(e, ResourceKind::DataStore, e.attribute_or("name"));
    } else if (e.name == "textAnnotation") {
      std::string text;
      for (const auto& c : e.children) {
        if (is_bpmn(*c) && c->name == "text") text += c->text;
      }
      read_resource(e, ResourceKind::TextAnnotation, text);
    } else if (e.name == "laneSet") {
      for (const auto& lane : e.children) {
        if (is_bpmn(*lane) && lane->name == "lane") read_lane(*lane);
      }
    }
    // Anything else (dataObject, association, ioSpecification, extension
    // elements, documentation, groups) carries no flow structure.
  }

  void read_flow_node(const xml::Element& e, NodeKind kind) {
    FlowNode node;
    node.id = required_id(e);
    claim_id(node.id, e);
    node.kind = kind;
    node.document_order = e.order;
    node.label = normalize_space(e.attribute_or("name"));
    if (node.label.empty()) {
      node.label = "unnamed " + synthetic_kind_name(kind) + " " + std::to_string(++unnamed_[kind]);
      node.label_synthetic = true;
    }
    for (const auto& c : e.children) {
      if (!is_bpmn(*c)) continue;
      if (c->name == "dataInputAssociation") {
        for (const auto& ref : c->children) {
          if (is_bpmn(*ref) && ref->name == "sourceRef") {
            pending_links_.push_back({node.id, normalize_space(ref->text), LinkDirection::Input});
          }
        }
      } else if (c->name == "dataOutputAssociation") {
        for (const auto& ref : c->children) {
          if (is_bpmn(*ref) && ref->name == "targetRef") {
            pending_links_.push_back({node.id, normalize_space(ref->text), LinkDirection::Output});
          }
        }
      }
    }
    model_.flow_nodes.push_back(std::move(node));
  }

  void read_resource(const xml::Element& e, ResourceKind kind, std::string_view label) {
    Resource r;
    r.id = required_id(e);
    claim_id(r.id, e);
    r.kind = kind;
    r.label = normalize_space(label);
    if (r.label.empty()) {
      static constexpr const char* kNames[] = {"data object", "data store", "text annotation"};
      r.label = std::string("unnamed ") + kNames[static_cast<int>(kind)] + " " +
                std::to_string(++unnamed_resources_[kind]);
      r.label_synthetic = true;
    }
    model_.resources.push_back(std::move(r));
  }

  void read_lane(const xml::Element& e) {
    Lane lane;
    lane.id = required_id(e);
    claim_id(lane.id, e);
    lane.name = normalize_space(e.attribute_or("name"));
    if (lane.name.empty()) {
      lane.name = "unnamed lane " + std::to_string(++unnamed_lanes_);
      lane.name_synthetic = true;
    }
    for (const auto& c : e.children) {
      if (!is_bpmn(*c)) continue;
      if (c->name == "flowNodeRef") {
        lane_refs_.emplace_back(lane.id, normalize_space(c->text));
      } else if (unsupported_elements().count(c->name)) {
        reject(*c);
      }
    }
    model_.lanes.push_back(std::move(lane));
  }

  FlowNode* node_by_id(const std::string& id) {
    for (auto& n : model_.flow_nodes) {
      if (n.id == id) return &n;
    }
    return nullptr;
  }

  void resolve() {
    for (const auto& [lane_id, node_id] : lane_refs_) {
      FlowNode* node = node_by_id(node_id);
      if (!node) {
        throw Error(Errc::DanglingReference,
                    "lane '" + lane_id + "' references unknown flow node '" + node_id + "'",
                    node_id);
      }
      if (node->lane_id && *node->lane_id != lane_id) {
        throw Error(Errc::AmbiguousLane,
                    "flow node '" + node_id + "' is referenced by lanes '" + *node->lane_id +
                        "' and '" + lane_id + "'",
                    node_id);
      }
      node->lane_id = lane_id;
    }
    for (const auto& node : model_.flow_nodes) {
      if (node.kind == NodeKind::Activity && !node.lane_id) {
        throw Error(Errc::MissingLane, "activity '" + node.id + "' is not inside any lane", node.id);
      }
    }
    for (const auto& flow : model_.sequence_flows) {
      for (const auto* end : {&flow.source, &flow.target}) {
        if (!model_.find_node(*end)) {
          throw Error(Errc::DanglingReference,
                      "sequence flow '" + flow.id + "' references unknown flow node '" + *end + "'",
                      flow.id);
        }
      }
    }
    for (auto& link : pending_links_) {
      if (!model_.find_resource(link.resource_id)) {
        throw Error(Errc::DanglingReference,
                    "data association of '" + link.flow_node_id +
                        "' references unknown data object or store '" + link.resource_id + "'",
                    link.flow_node_id);
      }
      model_.resource_links.push_back(std::move(link));
    }
  }

  ProcessModel model_;
  std::set<std::string> ids_;
  std::map<NodeKind, int> unnamed_;
  std::map<ResourceKind, int> unnamed_resources_;
  int unnamed_lanes_ = 0;
  std::vector<std::pair<std::string, std::string>> lane_refs_;
  std::vector<ResourceLink> pending_links_;
};

}  // namespace

ProcessModel parse_bpmn(std::string_view xml_text) {
  auto root = xml::parse(xml_text);
  return Reader{}.read(*root);
}

ProcessModel load_bpmn_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("file not found: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_bpmn(buffer.str());
}

}  // namespace syp

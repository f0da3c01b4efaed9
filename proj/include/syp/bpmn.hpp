#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace syp {

using ordered_json = nlohmann::ordered_json;

enum class NodeKind {
  StartEvent,
  EndEvent,
  IntermediateEvent,
  Activity,
  ExclusiveGateway,
  ParallelGateway,
};

std::string_view to_string(NodeKind kind) noexcept;
/// Human-facing name, e.g. "Start Event", as used in beat sheet tables.
std::string_view display_name(NodeKind kind) noexcept;
NodeKind node_kind_from_string(std::string_view text);

inline bool is_gateway(NodeKind kind) noexcept {
  return kind == NodeKind::ExclusiveGateway || kind == NodeKind::ParallelGateway;
}

struct Lane {
  std::string id;
  std::string name;
  bool name_synthetic = false;

  bool operator==(const Lane&) const = default;
};

struct FlowNode {
  std::string id;
  NodeKind kind = NodeKind::Activity;
  std::string label;
  std::optional<std::string> lane_id;
  // Index of the element among all elements of the source document.
  std::int64_t document_order = 0;
  bool label_synthetic = false;

  bool operator==(const FlowNode&) const = default;
};

struct SequenceFlow {
  std::string id;
  std::string source;
  std::string target;
  std::optional<std::string> condition_label;
  std::int64_t document_order = 0;

  bool operator==(const SequenceFlow&) const = default;
};

enum class ResourceKind { DataObject, DataStore, TextAnnotation };
std::string_view to_string(ResourceKind kind) noexcept;

struct Resource {
  std::string id;
  ResourceKind kind = ResourceKind::DataObject;
  std::string label;
  bool label_synthetic = false;

  bool operator==(const Resource&) const = default;
};

enum class LinkDirection { Input, Output };

struct ResourceLink {
  std::string flow_node_id;
  std::string resource_id;
  LinkDirection direction = LinkDirection::Input;

  bool operator==(const ResourceLink&) const = default;
};

/// A parsed business process restricted to the supported subset: one
/// process, flat lanes, events, tasks, exclusive/parallel gateways, sequence
/// flows and data references. Flow nodes and flows are kept in document order.
struct ProcessModel {
  std::string process_id;
  std::string process_name;
  std::vector<Lane> lanes;
  std::vector<FlowNode> flow_nodes;
  std::vector<SequenceFlow> sequence_flows;
  std::vector<Resource> resources;
  std::vector<ResourceLink> resource_links;

  const FlowNode* find_node(std::string_view id) const;
  const Lane* find_lane(std::string_view id) const;
  const Resource* find_resource(std::string_view id) const;

  /// Outgoing/incoming flows of a node, in flow document order.
  std::vector<const SequenceFlow*> outgoing(std::string_view node_id) const;
  std::vector<const SequenceFlow*> incoming(std::string_view node_id) const;

  bool operator==(const ProcessModel&) const = default;
};

/// A diverging gateway has more than one outgoing flow; a converging one
/// has more than one incoming flow and a single exit.
bool is_diverging(const ProcessModel& model, const FlowNode& node);
bool is_converging(const ProcessModel& model, const FlowNode& node);

ProcessModel parse_bpmn(std::string_view xml);
ProcessModel load_bpmn_file(const std::string& path);

enum class ValidationMode { Strict, Lenient };
enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Warning;
  std::string node_id;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

struct ValidationReport {
  std::vector<Diagnostic> diagnostics;

  bool has_errors() const;
  bool empty() const { return diagnostics.empty(); }
  /// True when some diagnostic on `node_id` has `message` starting with `prefix`.
  bool mentions(std::string_view node_id, std::string_view prefix) const;
};

ValidationReport validate_model(const ProcessModel& model, ValidationMode mode);

ordered_json to_json(const ProcessModel& model);
ProcessModel model_from_json(const ordered_json& doc);

}  // namespace syp

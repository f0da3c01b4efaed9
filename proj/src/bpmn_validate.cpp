#include <algorithm>
#include <map>
#include <set>

#include "syp/bpmn.hpp"

namespace syp {

namespace {

// Dense adjacency over flow-node indices; models are small enough that an
// all-pairs reachability table is the simplest correct tool.
class FlowGraph {
 public:
  explicit FlowGraph(const ProcessModel& model) : size_(model.flow_nodes.size()) {
    std::map<std::string_view, std::size_t> index;
    for (std::size_t i = 0; i < size_; ++i) index.emplace(model.flow_nodes[i].id, i);
    succ_.resize(size_);
    for (const auto& f : model.sequence_flows) {
      succ_[index.at(f.source)].push_back(index.at(f.target));
    }
    reach_.assign(size_, std::vector<bool>(size_, false));
    for (std::size_t s = 0; s < size_; ++s) {
      std::vector<std::size_t> stack(succ_[s].begin(), succ_[s].end());
      while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        if (reach_[s][v]) continue;
        reach_[s][v] = true;
        for (auto w : succ_[v]) stack.push_back(w);
      }
    }
  }

  // Reachable by one or more steps.
  bool reaches(std::size_t from, std::size_t to) const { return reach_[from][to]; }
  bool on_cycle(std::size_t v) const { return reach_[v][v]; }
  std::size_t size() const { return size_; }

 private:
  std::size_t size_;
  std::vector<std::vector<std::size_t>> succ_;
  std::vector<std::vector<bool>> reach_;
};

}  // namespace

bool ValidationReport::has_errors() const {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

bool ValidationReport::mentions(std::string_view node_id, std::string_view prefix) const {
  return std::any_of(diagnostics.begin(), diagnostics.end(), [&](const Diagnostic& d) {
    return d.node_id == node_id && std::string_view(d.message).substr(0, prefix.size()) == prefix;
  });
}

ValidationReport validate_model(const ProcessModel& model, ValidationMode mode) {
  ValidationReport report;
  const Severity gated = mode == ValidationMode::Strict ? Severity::Error : Severity::Warning;
  auto add = [&](Severity s, std::string id, std::string msg) {
    report.diagnostics.push_back({s, std::move(id), std::move(msg)});
  };

  const auto& nodes = model.flow_nodes;
  std::vector<std::size_t> starts, ends;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].kind == NodeKind::StartEvent) starts.push_back(i);
    if (nodes[i].kind == NodeKind::EndEvent) ends.push_back(i);
  }
  if (starts.empty()) add(Severity::Error, model.process_id, "no start event");
  if (starts.size() > 1) {
    add(gated, nodes[starts[1]].id,
        "multiple start events (" + std::to_string(starts.size()) + ")");
  }
  if (ends.empty()) add(Severity::Error, model.process_id, "no end event");

  for (const auto& lane : model.lanes) {
    if (lane.name_synthetic) add(Severity::Warning, lane.id, "unnamed lane, using '" + lane.name + "'");
  }
  for (const auto& r : model.resources) {
    if (r.label_synthetic) add(Severity::Warning, r.id, "unnamed resource, using '" + r.label + "'");
  }

  FlowGraph graph(model);
  std::set<std::size_t> reported_cycles;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& node = nodes[i];
    auto out = model.outgoing(node.id);
    auto in = model.incoming(node.id);

    if (node.label_synthetic) {
      add(Severity::Warning, node.id, "unnamed " + std::string(to_string(node.kind)) +
                                          ", using '" + node.label + "'");
    }
    if (node.kind == NodeKind::ParallelGateway) {
      add(gated, node.id, "parallel gateway: branches will be linearized in document order");
    }

    bool reachable = node.kind == NodeKind::StartEvent ||
                     std::any_of(starts.begin(), starts.end(),
                                 [&](std::size_t s) { return graph.reaches(s, i); });
    if (!reachable || (in.empty() && out.empty())) {
      add(gated, node.id, "unreachable from the start event");
    }

    bool escapes = node.kind == NodeKind::EndEvent ||
                   std::any_of(ends.begin(), ends.end(),
                               [&](std::size_t e) { return graph.reaches(i, e); });
    if (graph.on_cycle(i)) {
      // One diagnostic per strongly connected component, anchored at its
      // first node in document order.
      bool fresh = std::none_of(reported_cycles.begin(), reported_cycles.end(), [&](std::size_t r) {
        return graph.reaches(r, i) && graph.reaches(i, r);
      });
      if (fresh) {
        reported_cycles.insert(i);
        if (!escapes) {
          add(gated, node.id, "cycle bypasses every end event");
        } else if (mode == ValidationMode::Lenient) {
          add(Severity::Warning, node.id, "cycle through '" + node.label + "'");
        }
      }
    } else if (!escapes && reachable && !ends.empty()) {
      add(gated, node.id, "dead end: no end event reachable");
    }

    if (node.kind == NodeKind::EndEvent && !out.empty()) {
      add(Severity::Warning, node.id, "end event has outgoing flows, they are ignored");
    }
    if (!is_gateway(node.kind) && out.size() > 1) {
      add(gated, node.id, "implicit split: " + std::to_string(out.size()) + " outgoing flows");
    }
    if (node.kind == NodeKind::ExclusiveGateway && out.size() > 1) {
      std::set<std::string> seen;
      for (const auto* f : out) {
        if (!f->condition_label) {
          add(Severity::Error, node.id, "missing gate option label on flow '" + f->id + "'");
        } else if (!seen.insert(*f->condition_label).second) {
          add(Severity::Error, node.id, "duplicate gate option '" + *f->condition_label + "'");
        }
      }
    }
    if (is_gateway(node.kind) && in.size() > 1 && out.size() <= 1) {
      add(Severity::Warning, node.id, "join gateway: pass-through sentence should be refined");
    }
  }
  return report;
}

}  // namespace syp

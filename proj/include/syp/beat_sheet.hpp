#pragma once

#include <optional>
#include <string>
#include <vector>

#include "syp/bpmn.hpp"
#include "syp/sentence.hpp"

namespace syp {

/// How entries are numbered once ordered along the flow.
///  - Dfs: preorder depth-first walk from the start event, outgoing flows in
///    document order.
///  - List: start event first, then the remaining reachable nodes in the
///    order the sentences were extracted (document order).
enum class Numbering { Dfs, List };

std::string_view to_string(Numbering numbering) noexcept;
Numbering numbering_from_string(std::string_view text);

struct NextRef {
  int id = 0;
  std::optional<std::string> option_label;

  bool operator==(const NextRef&) const = default;
};

struct BeatEntry {
  int id = 0;
  Sentence sentence;
  std::vector<NextRef> next;

  bool operator==(const BeatEntry&) const = default;
};

struct BeatSheet {
  std::string process_id;
  std::string process_name;
  Numbering numbering = Numbering::Dfs;
  std::vector<BeatEntry> entries;
  // Flow nodes that the walk from the start event never reached. They get
  // no entry; completeness checking reports them.
  std::vector<std::string> unreachable;

  const BeatEntry* find(int id) const;
  const BeatEntry* find_node(std::string_view node_id) const;

  bool operator==(const BeatSheet&) const = default;
};

BeatSheet script_sentences(const ProcessModel& model, std::vector<Sentence> sentences,
                           Numbering numbering = Numbering::Dfs);

/// Violations of the sheet invariants (gapless ids, start first, resolvable
/// next pointers, end entries terminal). Empty for a well-formed sheet.
std::vector<std::string> sheet_problems(const BeatSheet& sheet);

struct CompletenessReport {
  int expected = 0;
  int found = 0;
  std::vector<std::string> missing_node_ids;

  bool complete() const { return missing_node_ids.empty() && expected == found; }
};

CompletenessReport check_completeness(const ProcessModel& model, const BeatSheet& sheet);

ordered_json to_json(const BeatSheet& sheet);
/// Loads a sheet without enforcing its invariants, so hand-made or partial
/// sheets can still be scored and checked.
BeatSheet beat_sheet_from_json(const ordered_json& doc);

/// "#", "Sentences", "BPMN Element", "Next"; several targets read "a - b",
/// none reads "-".
std::string beat_sheet_to_csv(const BeatSheet& sheet);

}  // namespace syp

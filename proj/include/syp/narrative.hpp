#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "syp/beat_sheet.hpp"

namespace syp {

struct Divert {
  std::string target;
  bool operator==(const Divert&) const = default;
};

struct Choice {
  std::string label;
  std::string target;
  bool operator==(const Choice&) const = default;
};

struct Choices {
  std::vector<Choice> options;
  bool operator==(const Choices&) const = default;
};

struct End {
  bool operator==(const End&) const = default;
};

using Exit = std::variant<Divert, Choices, End>;

struct Knot {
  std::string id;
  int entry_id = 0;
  std::string source_node;  // empty when read back from Ink text
  std::string body;
  Exit exit;
  std::optional<std::string> note;

  bool operator==(const Knot&) const = default;
};

struct CompiledNarrative {
  std::string title;
  std::string start_knot;
  std::vector<Knot> knots;

  const Knot* find(std::string_view id) const;
  bool operator==(const CompiledNarrative&) const = default;
};

/// Ink identifier for an entry: lowercase ASCII, runs of other characters
/// collapsed to '_', then "_<entry id>". "Check Its Money Availability"
/// with id 3 gives "check_its_money_availability_3".
std::string knot_id(std::string_view text, int entry_id);

/// One knot per entry. Single successors become diverts, gateway options
/// become choices, end events end the story. Parallel splits are linearized:
/// each branch runs in document order before the join.
CompiledNarrative compile_narrative(const BeatSheet& sheet);

/// Ink subset: knots, choices, diverts and END.
std::string emit_ink(const CompiledNarrative& narrative);

/// Reads back the subset written by emit_ink. Throws Errc::InkSyntax.
CompiledNarrative parse_ink(std::string_view text);

/// "sha256:<hex>" over the canonical JSON form.
std::string content_hash(const CompiledNarrative& narrative);

ordered_json to_json(const CompiledNarrative& narrative);
CompiledNarrative narrative_from_json(const ordered_json& doc);

/// Structural checks on a narrative from an untrusted source: unique ids,
/// resolvable targets, non-empty choices. Empty when valid.
std::vector<std::string> narrative_problems(const CompiledNarrative& narrative);

}  // namespace syp

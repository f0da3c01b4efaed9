#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "syp/narrative.hpp"

namespace syp {

/// Label recorded for a step taken through a divert rather than a choice.
inline constexpr std::string_view kAutoStep = "auto";

struct Step {
  std::string knot;    // knot being left
  std::string choice;  // chosen label, or kAutoStep
  bool operator==(const Step&) const = default;
};

/// A play-through of one narrative. The history lists every knot left so
/// far; replaying it from the start knot reproduces `current_knot`.
struct Session {
  std::shared_ptr<const CompiledNarrative> narrative;
  std::string narrative_hash;
  std::string current_knot;
  std::vector<Step> history;
  bool finished = false;

  const Knot& current() const;
  /// Labels offered at the current knot; empty when finished.
  std::vector<std::string> pending_choices() const;
  /// Knots visited in order, ending with the current one.
  std::vector<std::string> visited() const;
  /// Body text of every visited knot.
  std::vector<std::string> transcript() const;

  /// Same narrative, position and history.
  bool same_state(const Session& other) const;
};

/// Starts at the narrative's first knot and follows diverts until a choice
/// or the end.
Session start_session(std::shared_ptr<const CompiledNarrative> narrative);
Session apply_choice(const Session& session, std::string_view label);
/// `index` is 0-based into pending_choices().
Session apply_choice_index(const Session& session, std::size_t index);
Session restart(const Session& session);

/// Versioned JSON: {"version", "narrative_hash", "history"}.
std::string save_session(const Session& session);
Session load_session(std::string_view bytes, std::shared_ptr<const CompiledNarrative> narrative);

/// Every choice sequence of at most `max_choices` picks (cut off at
/// `max_paths` sequences), with the knots each visits. Used to export the
/// conformance vectors shared with other players of story.json.
struct PlayPath {
  std::vector<std::string> choices;
  std::vector<std::string> visited;
  bool finished = false;
};

std::vector<PlayPath> enumerate_play_paths(std::shared_ptr<const CompiledNarrative> narrative,
                                           std::size_t max_choices, std::size_t max_paths);

/// {"name", "story", "cases": [{"choices", "visited", "transcript", "finished", "save"}]}
ordered_json conformance_vectors(std::string_view name,
                                 std::shared_ptr<const CompiledNarrative> narrative,
                                 std::size_t max_choices, std::size_t max_paths);

}  // namespace syp

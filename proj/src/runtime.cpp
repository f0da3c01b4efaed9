#include <algorithm>

#include "syp/error.hpp"
#include "syp/runtime.hpp"

namespace syp {

namespace {

constexpr int kSaveVersion = 1;

const Knot& knot_of(const CompiledNarrative& story, std::string_view id) {
  const Knot* k = story.find(id);
  if (!k) throw Error(Errc::CorruptSave, "knot '" + std::string(id) + "' is not in the story");
  return *k;
}

// Follows diverts from the current knot. Compilation rejects divert-only
// cycles, so this stops within |knots| steps on any compiled narrative.
void advance(Session& s) {
  const auto& story = *s.narrative;
  for (std::size_t steps = 0;; ++steps) {
    const Knot& k = knot_of(story, s.current_knot);
    if (std::holds_alternative<End>(k.exit)) {
      s.finished = true;
      return;
    }
    const auto* d = std::get_if<Divert>(&k.exit);
    if (!d) return;
    if (steps > story.knots.size()) {
      throw Error(Errc::InfiniteLoop, "divert cycle through '" + k.id + "'", k.id);
    }
    s.history.push_back({k.id, std::string(kAutoStep)});
    s.current_knot = d->target;
  }
}

}  // namespace

const Knot& Session::current() const { return knot_of(*narrative, current_knot); }

std::vector<std::string> Session::pending_choices() const {
  std::vector<std::string> labels;
  if (finished) return labels;
  if (const auto* c = std::get_if<Choices>(&current().exit)) {
    for (const auto& o : c->options) labels.push_back(o.label);
  }
  return labels;
}

std::vector<std::string> Session::visited() const {
  std::vector<std::string> out;
  for (const auto& step : history) out.push_back(step.knot);
  out.push_back(current_knot);
  return out;
}

std::vector<std::string> Session::transcript() const {
  std::vector<std::string> out;
  for (const auto& id : visited()) out.push_back(knot_of(*narrative, id).body);
  return out;
}

bool Session::same_state(const Session& other) const {
  return narrative_hash == other.narrative_hash && current_knot == other.current_knot &&
         history == other.history && finished == other.finished;
}

Session start_session(std::shared_ptr<const CompiledNarrative> narrative) {
  Session s;
  s.narrative_hash = content_hash(*narrative);
  s.current_knot = narrative->start_knot;
  s.narrative = std::move(narrative);
  advance(s);
  return s;
}

Session apply_choice(const Session& session, std::string_view label) {
  if (session.finished) throw Error(Errc::SessionFinished, "the story has already ended");
  const auto* choices = std::get_if<Choices>(&session.current().exit);
  if (choices) {
    for (const auto& o : choices->options) {
      if (o.label != label) continue;
      Session next = session;
      next.history.push_back({next.current_knot, o.label});
      next.current_knot = o.target;
      advance(next);
      return next;
    }
  }
  throw Error(Errc::NoSuchChoice, "no choice '" + std::string(label) + "' here",
              session.current_knot);
}

Session apply_choice_index(const Session& session, std::size_t index) {
  auto labels = session.pending_choices();
  if (session.finished) throw Error(Errc::SessionFinished, "the story has already ended");
  if (index >= labels.size()) {
    throw Error(Errc::NoSuchChoice, "choice number " + std::to_string(index + 1) + " is not offered",
                session.current_knot);
  }
  return apply_choice(session, labels[index]);
}

Session restart(const Session& session) { return start_session(session.narrative); }

std::string save_session(const Session& session) {
  ordered_json doc;
  doc["version"] = kSaveVersion;
  doc["narrative_hash"] = session.narrative_hash;
  auto& history = doc["history"] = ordered_json::array();
  for (const auto& step : session.history) {
    history.push_back({{"knot", step.knot}, {"choice", step.choice}});
  }
  return doc.dump(2) + "\n";
}

Session load_session(std::string_view bytes, std::shared_ptr<const CompiledNarrative> narrative) {
  std::vector<Step> saved;
  std::string hash;
  try {
    auto doc = ordered_json::parse(bytes);
    if (doc.at("version").get<int>() != kSaveVersion) {
      throw Error(Errc::CorruptSave, "unsupported save version");
    }
    for (const auto& step : doc.at("history")) {
      saved.push_back({step.at("knot").get<std::string>(), step.at("choice").get<std::string>()});
    }
    hash = doc.at("narrative_hash").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::CorruptSave, std::string("unreadable save: ") + e.what());
  }
  if (hash != content_hash(*narrative)) {
    throw Error(Errc::HashMismatch, "save is for a different story");
  }

  // State is rebuilt by replaying the recorded choices; the auto steps must
  // then line up exactly with the saved ones.
  Session s = start_session(std::move(narrative));
  for (const auto& step : saved) {
    if (step.choice == kAutoStep) continue;
    try {
      s = apply_choice(s, step.choice);
    } catch (const Error& e) {
      throw Error(Errc::CorruptSave, std::string("save does not replay: ") + e.what());
    }
  }
  if (s.history != saved) throw Error(Errc::CorruptSave, "save history does not replay");
  return s;
}

std::vector<PlayPath> enumerate_play_paths(std::shared_ptr<const CompiledNarrative> narrative,
                                           std::size_t max_choices, std::size_t max_paths) {
  std::vector<PlayPath> paths;
  struct Pending {
    Session session;
    std::vector<std::string> choices;
  };
  std::vector<Pending> stack{{start_session(std::move(narrative)), {}}};
  while (!stack.empty() && paths.size() < max_paths) {
    auto item = std::move(stack.back());
    stack.pop_back();
    auto labels = item.session.pending_choices();
    if (item.session.finished || labels.empty() || item.choices.size() >= max_choices) {
      paths.push_back({item.choices, item.session.visited(), item.session.finished});
      continue;
    }
    for (auto it = labels.rbegin(); it != labels.rend(); ++it) {
      auto choices = item.choices;
      choices.push_back(*it);
      stack.push_back({apply_choice(item.session, *it), std::move(choices)});
    }
  }
  return paths;
}

ordered_json conformance_vectors(std::string_view name,
                                 std::shared_ptr<const CompiledNarrative> narrative,
                                 std::size_t max_choices, std::size_t max_paths) {
  ordered_json doc;
  doc["name"] = name;
  doc["story"] = to_json(*narrative);
  auto& cases = doc["cases"] = ordered_json::array();
  for (const auto& path : enumerate_play_paths(narrative, max_choices, max_paths)) {
    Session s = start_session(narrative);
    for (const auto& c : path.choices) s = apply_choice(s, c);
    cases.push_back({{"choices", path.choices},
                     {"visited", path.visited},
                     {"transcript", s.transcript()},
                     {"finished", path.finished},
                     {"save", ordered_json::parse(save_session(s))}});
  }
  return doc;
}

}  // namespace syp

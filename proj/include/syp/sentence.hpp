#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "syp/bpmn.hpp"

namespace syp {

enum class SubjectKind { Simple, Undefined };
enum class ComplementOrigin { ElementLabel, GateOption, Resource };

std::string_view to_string(SubjectKind kind) noexcept;
std::string_view to_string(ComplementOrigin origin) noexcept;

/// Grammatical position a verb fills. Each flow-node shape maps to one slot;
/// resource complements use the connector slot.
enum class VerbSlot {
  StartEvent,
  EndEvent,
  IntermediateEvent,
  Activity,
  ResourceConnector,
  Decision,       // diverging exclusive gateway
  Join,           // converging or pass-through gateway
  ParallelSplit,  // diverging parallel gateway
};

std::string_view to_string(VerbSlot slot) noexcept;

struct Complement {
  std::string text;
  std::optional<std::string> connector_verb;  // set for Resource complements
  ComplementOrigin origin = ComplementOrigin::ElementLabel;

  bool operator==(const Complement&) const = default;
};

struct Sentence {
  int id = 0;
  std::string source_node;
  NodeKind source_kind = NodeKind::Activity;
  VerbSlot slot = VerbSlot::Activity;
  SubjectKind subject_kind = SubjectKind::Simple;
  std::string subject_text;  // empty for undefined subjects
  std::string verb;
  std::vector<Complement> complements;
  std::string rendered;

  bool operator==(const Sentence&) const = default;
};

class VerbLexicon {
 public:
  /// Defaults taken from the method's worked examples: "starts", "ends",
  /// "needs", "using", "It is decided", "It happens".
  VerbLexicon();

  const std::string& verb(VerbSlot slot) const { return verbs_.at(slot); }
  void set(VerbSlot slot, std::string verb);

  /// Accepts an object keyed by slot name ("start_event", "activity",
  /// "resource_connector", ...). Unknown keys and empty verbs are rejected.
  static VerbLexicon from_json(const ordered_json& doc);
  static VerbLexicon load(const std::string& path);

 private:
  std::map<VerbSlot, std::string> verbs_;
};

/// One sentence per flow node, numbered 1..N in document order.
std::vector<Sentence> extract_sentences(const ProcessModel& model,
                                        const VerbLexicon& lexicon = VerbLexicon{});

/// Rebuilds `rendered` from the structured fields.
std::string render_sentence(const Sentence& sentence);

/// Lexical edit of one sentence. Fields left empty are kept. Changing the
/// subject kind or the number of complements is a structural edit and is
/// refused, as is a rendered text that no longer carries the subject, the
/// verb and every complement in order.
struct Refinement {
  std::optional<std::string> verb;
  std::optional<std::string> rendered;
  std::optional<std::string> subject_text;
  std::optional<std::vector<std::string>> complement_texts;
  std::optional<SubjectKind> subject_kind;
};

std::vector<Sentence> refine_sentence(std::vector<Sentence> sentences, int id,
                                      const Refinement& edit);
std::vector<Sentence> refine_sentence(std::vector<Sentence> sentences, int id,
                                      std::optional<std::string> new_verb,
                                      std::optional<std::string> new_rendered);

// Serialization ------------------------------------------------------------

ordered_json to_json(const Sentence& sentence);
Sentence sentence_from_json(const ordered_json& doc);

struct SentenceList {
  std::string process_id;
  std::string process_name;
  std::vector<Sentence> sentences;
};

ordered_json to_json(const SentenceList& list);
SentenceList sentence_list_from_json(const ordered_json& doc);

/// Table layout: "#", "Sentences", "BPMN Element", "Next" (left blank until
/// the sentences are scripted).
std::string sentences_to_csv(const std::vector<Sentence>& sentences);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view text);

}  // namespace syp

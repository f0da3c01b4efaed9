#include <algorithm>
#include <array>
#include <cctype>
#include <set>

#include "syp/error.hpp"
#include "syp/sentence.hpp"

namespace syp {

namespace {

bool starts_with_article(std::string_view subject) {
  if (subject.size() < 4) return false;
  return std::tolower(static_cast<unsigned char>(subject[0])) == 't' &&
         std::tolower(static_cast<unsigned char>(subject[1])) == 'h' &&
         std::tolower(static_cast<unsigned char>(subject[2])) == 'e' && subject[3] == ' ';
}

std::string lowercase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Modal verbs take a bare infinitive: "must 'Deliver the Book'" rather than
// "needs to 'Deliver the Book'".
bool takes_bare_infinitive(std::string_view verb) {
  static const std::set<std::string> modals = {"must",  "should", "shall", "can",  "could",
                                               "may",   "might",  "will",  "would"};
  auto lower = lowercase(verb);
  if (modals.count(lower)) return true;
  return lower.size() >= 3 && lower.compare(lower.size() - 3, 3, " to") == 0;
}

std::string dquote(std::string_view text) { return "\"" + std::string(text) + "\""; }

std::string subject_phrase(std::string_view subject) {
  return starts_with_article(subject) ? std::string(subject) : "The " + std::string(subject);
}

std::string join_complements(const std::vector<Complement>& complements, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < complements.size(); ++i) {
    if (i) out += sep;
    out += dquote(complements[i].text);
  }
  return out;
}

Complement label(std::string text) {
  return {std::move(text), std::nullopt, ComplementOrigin::ElementLabel};
}

}  // namespace

std::string_view to_string(SubjectKind kind) noexcept {
  return kind == SubjectKind::Simple ? "Simple" : "Undefined";
}

std::string_view to_string(ComplementOrigin origin) noexcept {
  switch (origin) {
    case ComplementOrigin::ElementLabel: return "ElementLabel";
    case ComplementOrigin::GateOption: return "GateOption";
    case ComplementOrigin::Resource: return "Resource";
  }
  return "Unknown";
}

std::string_view to_string(VerbSlot slot) noexcept {
  switch (slot) {
    case VerbSlot::StartEvent: return "start_event";
    case VerbSlot::EndEvent: return "end_event";
    case VerbSlot::IntermediateEvent: return "intermediate_event";
    case VerbSlot::Activity: return "activity";
    case VerbSlot::ResourceConnector: return "resource_connector";
    case VerbSlot::Decision: return "decision";
    case VerbSlot::Join: return "join";
    case VerbSlot::ParallelSplit: return "parallel_split";
  }
  return "unknown";
}

VerbLexicon::VerbLexicon()
    : verbs_{{VerbSlot::StartEvent, "starts"},
             {VerbSlot::EndEvent, "ends"},
             {VerbSlot::IntermediateEvent, "It happens"},
             {VerbSlot::Activity, "needs"},
             {VerbSlot::ResourceConnector, "using"},
             {VerbSlot::Decision, "It is decided"},
             {VerbSlot::Join, "It continues"},
             {VerbSlot::ParallelSplit, "It continues"}} {}

void VerbLexicon::set(VerbSlot slot, std::string verb) {
  if (verb.empty()) {
    throw Error(Errc::InvalidLexicon, "empty verb for slot '" + std::string(to_string(slot)) + "'");
  }
  verbs_[slot] = std::move(verb);
}

std::string render_sentence(const Sentence& s) {
  const auto& c = s.complements;
  switch (s.slot) {
    case VerbSlot::StartEvent:
    case VerbSlot::EndEvent:
      return subject_phrase(s.subject_text) + " " + s.verb + " when " + join_complements(c, " ");
    case VerbSlot::IntermediateEvent:
      return s.verb + " that " + join_complements(c, " ");
    case VerbSlot::Activity: {
      std::string out = subject_phrase(s.subject_text) + " " + s.verb;
      if (!takes_bare_infinitive(s.verb)) out += " to";
      for (const auto& comp : c) {
        if (comp.origin == ComplementOrigin::Resource) {
          out += " " + comp.connector_verb.value_or("using") + " the " + dquote(comp.text);
        } else {
          out += " " + dquote(comp.text);
        }
      }
      return out;
    }
    case VerbSlot::Decision:
      return s.verb + " among " + join_complements(c, " OR ");
    case VerbSlot::Join:
      return s.verb + " after " +
             join_complements(c, s.source_kind == NodeKind::ParallelGateway ? " AND " : " OR ");
    case VerbSlot::ParallelSplit:
      return s.verb + " with " + join_complements(c, " AND ");
    case VerbSlot::ResourceConnector:
      break;
  }
  throw Error(Errc::StructuralEdit, "sentence has no renderable slot", std::to_string(s.id));
}

std::vector<Sentence> extract_sentences(const ProcessModel& model, const VerbLexicon& lexicon) {
  std::vector<const FlowNode*> nodes;
  for (const auto& n : model.flow_nodes) nodes.push_back(&n);
  std::stable_sort(nodes.begin(), nodes.end(), [](const FlowNode* a, const FlowNode* b) {
    return a->document_order < b->document_order;
  });

  std::vector<Sentence> sentences;
  sentences.reserve(nodes.size());
  for (const FlowNode* node : nodes) {
    Sentence s;
    s.id = static_cast<int>(sentences.size()) + 1;
    s.source_node = node->id;
    s.source_kind = node->kind;
    auto out = model.outgoing(node->id);

    switch (node->kind) {
      case NodeKind::StartEvent:
      case NodeKind::EndEvent:
        s.slot = node->kind == NodeKind::StartEvent ? VerbSlot::StartEvent : VerbSlot::EndEvent;
        s.subject_kind = SubjectKind::Simple;
        s.subject_text = model.process_name;
        s.complements.push_back(label(node->label));
        break;
      case NodeKind::Activity: {
        s.slot = VerbSlot::Activity;
        s.subject_kind = SubjectKind::Simple;
        const Lane* lane = node->lane_id ? model.find_lane(*node->lane_id) : nullptr;
        if (!lane) {
          throw Error(Errc::MissingLane, "activity '" + node->id + "' is not inside any lane",
                      node->id);
        }
        s.subject_text = lane->name;
        s.complements.push_back(label(node->label));
        std::set<std::string> linked;
        for (const auto& link : model.resource_links) {
          if (link.flow_node_id != node->id || !linked.insert(link.resource_id).second) continue;
          const Resource* r = model.find_resource(link.resource_id);
          s.complements.push_back({r->label, lexicon.verb(VerbSlot::ResourceConnector),
                                   ComplementOrigin::Resource});
        }
        break;
      }
      case NodeKind::IntermediateEvent:
        s.slot = VerbSlot::IntermediateEvent;
        s.subject_kind = SubjectKind::Undefined;
        s.complements.push_back(label(node->label));
        break;
      case NodeKind::ExclusiveGateway:
      case NodeKind::ParallelGateway: {
        s.subject_kind = SubjectKind::Undefined;
        const bool parallel = node->kind == NodeKind::ParallelGateway;
        if (out.size() > 1) {
          s.slot = parallel ? VerbSlot::ParallelSplit : VerbSlot::Decision;
          for (const auto* flow : out) {
            std::string option;
            if (flow->condition_label) {
              option = *flow->condition_label;
            } else if (parallel) {
              option = model.find_node(flow->target)->label;
            } else {
              throw Error(Errc::MissingGateLabel,
                          "gateway '" + node->id + "' has unlabeled outgoing flow '" + flow->id +
                              "'",
                          node->id);
            }
            s.complements.push_back({std::move(option), std::nullopt, ComplementOrigin::GateOption});
          }
        } else {
          s.slot = VerbSlot::Join;
          auto in = model.incoming(node->id);
          if (node->label_synthetic && !in.empty()) {
            for (const auto* flow : in) s.complements.push_back(label(model.find_node(flow->source)->label));
          } else {
            s.complements.push_back(label(node->label));
          }
        }
        break;
      }
    }
    s.verb = lexicon.verb(s.slot);
    s.rendered = render_sentence(s);
    sentences.push_back(std::move(s));
  }
  return sentences;
}

namespace {

bool carries_in_order(std::string_view rendered, const Sentence& s) {
  std::size_t pos = 0;
  auto take = [&](std::string_view piece) {
    if (piece.empty()) return true;
    auto found = rendered.find(piece, pos);
    if (found == std::string_view::npos) return false;
    pos = found + piece.size();
    return true;
  };
  // Subject and verb may be re-cased by the writer ("It is Verified"), so
  // they are checked case-insensitively; complements must be verbatim.
  auto lowered = lowercase(rendered);
  std::size_t lpos = 0;
  for (std::string_view piece : {std::string_view(s.subject_text), std::string_view(s.verb)}) {
    if (piece.empty()) continue;
    auto found = lowered.find(lowercase(piece), lpos);
    if (found == std::string::npos) return false;
    lpos = found + piece.size();
  }
  pos = lpos;
  return std::all_of(s.complements.begin(), s.complements.end(),
                     [&](const Complement& c) { return take(c.text); });
}

}  // namespace

std::vector<Sentence> refine_sentence(std::vector<Sentence> sentences, int id,
                                      const Refinement& edit) {
  auto it = std::find_if(sentences.begin(), sentences.end(),
                         [id](const Sentence& s) { return s.id == id; });
  if (it == sentences.end()) {
    throw Error(Errc::UnknownSentenceId, "no sentence with id " + std::to_string(id),
                std::to_string(id));
  }
  Sentence s = *it;
  const auto subject = std::to_string(id);

  if (edit.subject_kind && *edit.subject_kind != s.subject_kind) {
    throw Error(Errc::StructuralEdit, "refinement cannot change the subject kind", subject);
  }
  if (edit.subject_text) {
    if (s.subject_kind == SubjectKind::Undefined && !edit.subject_text->empty()) {
      throw Error(Errc::StructuralEdit, "an undefined subject cannot be given a text", subject);
    }
    if (s.subject_kind == SubjectKind::Simple && edit.subject_text->empty()) {
      throw Error(Errc::StructuralEdit, "a simple subject cannot be removed", subject);
    }
    s.subject_text = *edit.subject_text;
  }
  if (edit.complement_texts) {
    if (edit.complement_texts->size() != s.complements.size()) {
      throw Error(Errc::StructuralEdit, "refinement cannot add or remove complements", subject);
    }
    for (std::size_t i = 0; i < s.complements.size(); ++i) {
      if ((*edit.complement_texts)[i].empty()) {
        throw Error(Errc::StructuralEdit, "complement text cannot be emptied", subject);
      }
      s.complements[i].text = (*edit.complement_texts)[i];
    }
  }
  if (edit.verb) {
    if (edit.verb->empty()) throw Error(Errc::StructuralEdit, "verb cannot be emptied", subject);
    s.verb = *edit.verb;
  }
  s.rendered = edit.rendered ? *edit.rendered : render_sentence(s);
  if (!carries_in_order(s.rendered, s)) {
    throw Error(Errc::StructuralEdit,
                "rendered text must keep the subject, verb and every complement in order",
                subject);
  }
  *it = std::move(s);
  return sentences;
}

std::vector<Sentence> refine_sentence(std::vector<Sentence> sentences, int id,
                                      std::optional<std::string> new_verb,
                                      std::optional<std::string> new_rendered) {
  Refinement edit;
  edit.verb = std::move(new_verb);
  edit.rendered = std::move(new_rendered);
  if (!edit.verb && !edit.rendered) {
    auto it = std::find_if(sentences.begin(), sentences.end(),
                           [id](const Sentence& s) { return s.id == id; });
    if (it == sentences.end()) {
      throw Error(Errc::UnknownSentenceId, "no sentence with id " + std::to_string(id),
                  std::to_string(id));
    }
    return sentences;
  }
  return refine_sentence(std::move(sentences), id, edit);
}

}  // namespace syp

#include <fstream>
#include <sstream>

#include "syp/error.hpp"
#include "syp/sentence.hpp"

namespace syp {

namespace {

constexpr int kSentenceSchemaVersion = 1;

constexpr VerbSlot kAllSlots[] = {
    VerbSlot::StartEvent, VerbSlot::EndEvent, VerbSlot::IntermediateEvent,
    VerbSlot::Activity,   VerbSlot::ResourceConnector, VerbSlot::Decision,
    VerbSlot::Join,       VerbSlot::ParallelSplit,
};

VerbSlot slot_from_string(std::string_view text, Errc errc) {
  for (auto slot : kAllSlots) {
    if (to_string(slot) == text) return slot;
  }
  throw Error(errc, "unknown verb slot '" + std::string(text) + "'");
}

ComplementOrigin origin_from_string(std::string_view text) {
  for (auto o : {ComplementOrigin::ElementLabel, ComplementOrigin::GateOption,
                 ComplementOrigin::Resource}) {
    if (to_string(o) == text) return o;
  }
  throw Error(Errc::InvalidSheetJson, "unknown complement origin '" + std::string(text) + "'");
}

SubjectKind subject_kind_from_string(std::string_view text) {
  if (text == "Simple") return SubjectKind::Simple;
  if (text == "Undefined") return SubjectKind::Undefined;
  throw Error(Errc::InvalidSheetJson, "unknown subject kind '" + std::string(text) + "'");
}

}  // namespace

VerbLexicon VerbLexicon::from_json(const ordered_json& doc) {
  if (!doc.is_object()) throw Error(Errc::InvalidLexicon, "lexicon must be a JSON object");
  VerbLexicon lexicon;
  for (const auto& [key, value] : doc.items()) {
    if (key == "schema_version") continue;
    if (!value.is_string()) {
      throw Error(Errc::InvalidLexicon, "verb for '" + key + "' must be a string");
    }
    lexicon.set(slot_from_string(key, Errc::InvalidLexicon), value.get<std::string>());
  }
  return lexicon;
}

VerbLexicon VerbLexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidLexicon, "cannot open lexicon file '" + path + "'");
  try {
    return from_json(ordered_json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::InvalidLexicon, "lexicon '" + path + "' is not valid JSON: " + e.what());
  }
}

ordered_json to_json(const Sentence& s) {
  ordered_json complements = ordered_json::array();
  for (const auto& c : s.complements) {
    ordered_json item{{"text", c.text}};
    item["connector_verb"] = c.connector_verb ? ordered_json(*c.connector_verb) : ordered_json();
    item["origin"] = to_string(c.origin);
    complements.push_back(std::move(item));
  }
  return ordered_json{{"id", s.id},
                      {"source_node", s.source_node},
                      {"source_kind", to_string(s.source_kind)},
                      {"slot", to_string(s.slot)},
                      {"subject_kind", to_string(s.subject_kind)},
                      {"subject_text", s.subject_text},
                      {"verb", s.verb},
                      {"complements", std::move(complements)},
                      {"rendered", s.rendered}};
}

Sentence sentence_from_json(const ordered_json& doc) {
  try {
    Sentence s;
    s.id = doc.at("id").get<int>();
    s.source_node = doc.at("source_node").get<std::string>();
    s.source_kind = node_kind_from_string(doc.at("source_kind").get<std::string>());
    s.slot = slot_from_string(doc.at("slot").get<std::string>(), Errc::InvalidSheetJson);
    s.subject_kind = subject_kind_from_string(doc.at("subject_kind").get<std::string>());
    s.subject_text = doc.at("subject_text").get<std::string>();
    s.verb = doc.at("verb").get<std::string>();
    for (const auto& c : doc.at("complements")) {
      Complement comp;
      comp.text = c.at("text").get<std::string>();
      if (c.contains("connector_verb") && !c.at("connector_verb").is_null()) {
        comp.connector_verb = c.at("connector_verb").get<std::string>();
      }
      comp.origin = origin_from_string(c.at("origin").get<std::string>());
      s.complements.push_back(std::move(comp));
    }
    s.rendered = doc.at("rendered").get<std::string>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidSheetJson, std::string("invalid sentence JSON: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == Errc::InvalidModelJson) throw Error(Errc::InvalidSheetJson, e.what());
    throw;
  }
}

ordered_json to_json(const SentenceList& list) {
  ordered_json doc;
  doc["schema_version"] = kSentenceSchemaVersion;
  doc["process_id"] = list.process_id;
  doc["process_name"] = list.process_name;
  auto& items = doc["sentences"] = ordered_json::array();
  for (const auto& s : list.sentences) items.push_back(to_json(s));
  return doc;
}

SentenceList sentence_list_from_json(const ordered_json& doc) {
  try {
    if (doc.at("schema_version").get<int>() != kSentenceSchemaVersion) {
      throw Error(Errc::InvalidSheetJson, "unsupported sentences schema_version");
    }
    SentenceList list;
    list.process_id = doc.at("process_id").get<std::string>();
    list.process_name = doc.at("process_name").get<std::string>();
    for (const auto& s : doc.at("sentences")) list.sentences.push_back(sentence_from_json(s));
    return list;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidSheetJson, std::string("invalid sentences JSON: ") + e.what());
  }
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string sentences_to_csv(const std::vector<Sentence>& sentences) {
  std::ostringstream out;
  out << "#,Sentences,BPMN Element,Next\n";
  for (const auto& s : sentences) {
    out << s.id << ',' << csv_field(s.rendered) << ',' << csv_field(display_name(s.source_kind))
        << ",\n";
  }
  return out.str();
}

}  // namespace syp

// Regenerates tests/fixtures/study from tests/fixtures/study26.bpmn.
// Usage: make_study_fixtures <study26.bpmn> <out-dir>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "syp/beat_sheet.hpp"
#include "syp/cli.hpp"

namespace {

struct Participant {
  std::string code;
  int extracted;  // entries kept
  int correct;    // entries left intact among the kept ones
};

// Codes and counts of the recorded study rows.
const std::vector<Participant> kParticipants = {
    {"01", 26, 26}, {"02", 26, 26}, {"03", 26, 26}, {"04", 26, 26}, {"05", 26, 26},
    {"06", 26, 25}, {"07", 24, 5},  {"08", 26, 26}, {"09", 26, 26}, {"10", 26, 26},
    {"11", 26, 26}, {"12", 26, 3},  {"13", 26, 6},  {"14", 26, 26}, {"15", 26, 26},
    {"16", 26, 26}, {"17", 26, 25}, {"18", 18, 18}, {"19", 26, 26},
};

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

// A harmless edit: the scorer ignores verbs, case and quoting.
void cosmetic(syp::BeatEntry& e) {
  if (e.sentence.slot == syp::VerbSlot::Activity) e.sentence.verb = "has to";
  if (!e.sentence.complements.empty()) {
    auto& c = e.sentence.complements.front();
    c.text = upper(c.text);
  }
}

// An edit the scorer must reject; three kinds in rotation.
void corrupt(syp::BeatEntry& e, int nth, int max_id) {
  switch (nth % 3) {
    case 0:
      if (!e.sentence.complements.empty()) {
        e.sentence.complements.front().text += " later";
      } else {
        e.sentence.complements.push_back({"something else", std::nullopt,
                                          syp::ComplementOrigin::ElementLabel});
      }
      break;
    case 1:
      e.sentence.subject_kind = e.sentence.subject_kind == syp::SubjectKind::Simple
                                    ? syp::SubjectKind::Undefined
                                    : syp::SubjectKind::Simple;
      break;
    default:
      if (e.next.empty()) {
        e.next.push_back({1, std::nullopt});
      } else {
        e.next.front().id = e.next.front().id % max_id + 1;
      }
      break;
  }
}

void write(const std::filesystem::path& path, const syp::BeatSheet& sheet) {
  std::ofstream out(path, std::ios::binary);
  out << syp::cli::format_json(syp::to_json(sheet));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: make_study_fixtures <study26.bpmn> <out-dir>\n";
    return 2;
  }
  auto model = syp::load_bpmn_file(argv[1]);
  auto gold = syp::script_sentences(model, syp::extract_sentences(model));
  std::filesystem::path dir(argv[2]);
  std::filesystem::create_directories(dir);
  write(dir / "gold.json", gold);

  const int n = static_cast<int>(gold.entries.size());
  for (const auto& p : kParticipants) {
    syp::BeatSheet sheet = gold;
    // Omitted entries come from the end of the sheet except for one early
    // entry, so truncation is not the only shape exercised.
    std::vector<syp::BeatEntry> kept;
    const int dropped = n - p.extracted;
    for (const auto& e : gold.entries) {
      bool drop = dropped > 0 && (dropped < 3 ? (e.id == 12 || e.id == 19) && dropped == 2
                                              : e.id > p.extracted);
      if (!drop) kept.push_back(e);
    }
    int wrong = static_cast<int>(kept.size()) - p.correct;
    int nth = 0;
    for (auto it = kept.rbegin(); it != kept.rend(); ++it) {
      if (wrong > 0) {
        corrupt(*it, nth++, n);
        --wrong;
      } else if (it->id % 4 == 0) {
        cosmetic(*it);
      }
    }
    sheet.entries = std::move(kept);
    write(dir / ("p" + p.code + ".json"), sheet);
  }
  std::cout << "wrote " << kParticipants.size() << " participant sheets and gold.json to "
            << dir.string() << "\n";
  return 0;
}

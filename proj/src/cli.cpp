#include "syp/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "syp/beat_sheet.hpp"
#include "syp/error.hpp"
#include "syp/metrics.hpp"
#include "syp/narrative.hpp"
#include "syp/runtime.hpp"
#include "syp/sentence.hpp"

namespace syp::cli {

namespace fs = std::filesystem;

namespace {

// Input problems the user must fix; always exit 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Style {
  bool on;
  std::string wrap(std::string_view code, std::string_view text) const {
    if (!on) return std::string(text);
    return "\x1b[" + std::string(code) + "m" + std::string(text) + "\x1b[0m";
  }
  std::string bold(std::string_view t) const { return wrap("1", t); }
  std::string red(std::string_view t) const { return wrap("31", t); }
  std::string yellow(std::string_view t) const { return wrap("33", t); }
  std::string dim(std::string_view t) const { return wrap("2", t); }
};

struct Config {
  std::string mode = "strict";
  std::string numbering = "dfs";
  std::string lexicon_path;
  std::string out_dir = ".";
};

std::string read_file(const std::string& path) {
  if (!fs::exists(path)) throw InputError("file not found: " + path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ordered_json read_json(const std::string& path) {
  auto text = read_file(path);
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + " is not valid JSON: " + e.what());
  }
}

fs::path output_dir(const Config& config) {
  fs::path dir(config.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw InputError("output directory is not writable: " + config.out_dir);
  }
  return dir;
}

void write_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw InputError("cannot write " + path.string());
}

ValidationMode parse_mode(const std::string& mode) {
  return mode == "lenient" ? ValidationMode::Lenient : ValidationMode::Strict;
}

VerbLexicon lexicon_for(const Config& config) {
  if (config.lexicon_path.empty()) return VerbLexicon{};
  if (!fs::exists(config.lexicon_path)) throw InputError("file not found: " + config.lexicon_path);
  return VerbLexicon::load(config.lexicon_path);
}

ProcessModel load_model(const std::string& path, const Config& config, std::ostream& err,
                        const Style& style) {
  auto model = parse_bpmn(read_file(path));
  auto report = validate_model(model, parse_mode(config.mode));
  for (const auto& d : report.diagnostics) {
    const bool error = d.severity == Severity::Error;
    err << (error ? style.red("error") : style.yellow("warning")) << ": " << d.node_id << ": "
        << d.message << "\n";
  }
  if (report.has_errors()) throw InputError("model failed " + config.mode + " validation");
  return model;
}

int cmd_extract(const std::string& bpmn, const Config& config, std::ostream& out,
                std::ostream& err, const Style& style) {
  auto lexicon = lexicon_for(config);
  auto model = load_model(bpmn, config, err, style);
  SentenceList list{model.process_id, model.process_name, extract_sentences(model, lexicon)};
  auto dir = output_dir(config);
  write_file(dir / "sentences.json", format_json(to_json(list)));
  write_file(dir / "table.csv", sentences_to_csv(list.sentences));
  out << "extracted " << list.sentences.size() << " sentences from "
      << model.flow_nodes.size() << " flow nodes -> " << (dir / "sentences.json").string()
      << "\n";
  return kExitOk;
}

int cmd_script(const std::string& bpmn, const std::string& sentences_path, const Config& config,
               std::ostream& out, std::ostream& err, const Style& style) {
  auto model = load_model(bpmn, config, err, style);
  auto list = sentence_list_from_json(read_json(sentences_path));
  if (list.process_id != model.process_id) {
    throw InputError("sentences are for process '" + list.process_id + "', model is '" +
                     model.process_id + "'");
  }
  auto sheet = script_sentences(model, std::move(list.sentences),
                                numbering_from_string(config.numbering));
  auto dir = output_dir(config);
  write_file(dir / "beatsheet.json", format_json(to_json(sheet)));
  write_file(dir / "beatsheet.csv", beat_sheet_to_csv(sheet));
  out << "scripted " << sheet.entries.size() << " entries -> "
      << (dir / "beatsheet.json").string() << "\n";
  for (const auto& id : sheet.unreachable) {
    err << style.yellow("warning") << ": " << id << ": not reachable from the start event\n";
  }
  return sheet.unreachable.empty() ? kExitOk : kExitIncomplete;
}

int cmd_compile(const std::string& sheet_path, const Config& config, std::ostream& out) {
  auto sheet = beat_sheet_from_json(read_json(sheet_path));
  auto story = compile_narrative(sheet);
  auto dir = output_dir(config);
  write_file(dir / "story.ink", emit_ink(story));
  write_file(dir / "story.json", format_json(to_json(story)));
  out << "compiled " << story.knots.size() << " knots -> " << (dir / "story.ink").string()
      << ", " << (dir / "story.json").string() << "\n";
  return kExitOk;
}

int cmd_check(const std::string& bpmn, const std::string& sheet_path, std::ostream& out) {
  auto model = parse_bpmn(read_file(bpmn));
  auto sheet = beat_sheet_from_json(read_json(sheet_path));
  if (sheet.process_id != model.process_id) {
    throw InputError("beat sheet is for process '" + sheet.process_id + "', model is '" +
                     model.process_id + "'");
  }
  auto report = check_completeness(model, sheet);
  out << "expected " << report.expected << ", found " << report.found << "\n";
  if (!report.missing_node_ids.empty()) {
    out << "missing:";
    for (const auto& id : report.missing_node_ids) out << " " << id;
    out << "\n";
  }
  return report.complete() ? kExitOk : kExitIncomplete;
}

int cmd_score(const std::vector<std::string>& files, const Config& config, bool out_given,
              std::ostream& out) {
  if (files.size() < 2) throw InputError("score needs at least one candidate and a gold sheet");
  auto gold = beat_sheet_from_json(read_json(files.back()));
  std::vector<std::pair<std::string, MetricsReport>> rows;
  bool perfect = true;
  for (std::size_t i = 0; i + 1 < files.size(); ++i) {
    auto report = score_sheet(beat_sheet_from_json(read_json(files[i])), gold);
    perfect = perfect && report.qtd_corr == report.qtd_exp && report.qtd_ext == report.qtd_exp;
    rows.emplace_back(fs::path(files[i]).stem().string(), std::move(report));
  }
  auto csv = metrics_csv(rows, rows.size() > 1);
  out << csv;
  if (out_given) write_file(output_dir(config) / "metrics.csv", csv);
  return perfect ? kExitOk : kExitIncomplete;
}

class Player {
 public:
  Player(std::shared_ptr<const CompiledNarrative> story, fs::path save_path, std::istream& in,
         std::ostream& out, const Style& style)
      : session_(start_session(story)), save_path_(std::move(save_path)), in_(in), out_(out),
        style_(style) {}

  int run() {
    out_ << style_.bold(session_.narrative->title) << "\n\n";
    show_new_lines();
    std::string line;
    while (true) {
      prompt();
      if (!std::getline(in_, line)) break;
      auto command = trim(line);
      if (command.empty()) continue;
      if (command == "quit" || command == "q") break;
      handle(command);
    }
    return kExitOk;
  }

 private:
  static std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }

  void show_new_lines() {
    auto lines = session_.transcript();
    for (std::size_t i = shown_; i < lines.size(); ++i) out_ << lines[i] << "\n";
    shown_ = lines.size();
  }

  void show_all(std::string_view banner) {
    out_ << style_.dim(banner) << "\n";
    shown_ = 0;
    show_new_lines();
  }

  void prompt() {
    if (session_.finished) {
      out_ << "\n" << style_.bold("THE END") << "\n";
    } else {
      out_ << "\n";
      auto labels = session_.pending_choices();
      for (std::size_t i = 0; i < labels.size(); ++i) {
        out_ << "  " << style_.bold(std::to_string(i + 1) + ")") << " " << labels[i] << "\n";
      }
    }
    out_ << style_.dim("  [save] [reload] [restart] [quit]") << "\n> " << std::flush;
  }

  void handle(const std::string& command) {
    try {
      if (command == "save") {
        write_file(save_path_, save_session(session_));
        out_ << "saved to " << save_path_.string() << "\n";
      } else if (command == "reload") {
        if (!fs::exists(save_path_)) {
          out_ << "nothing saved yet\n";
          return;
        }
        session_ = load_session(read_file(save_path_.string()), session_.narrative);
        show_all("-- reloaded --");
      } else if (command == "restart") {
        session_ = restart(session_);
        show_all("-- restarted --");
      } else if (!command.empty() && std::all_of(command.begin(), command.end(), ::isdigit)) {
        session_ = apply_choice_index(session_, std::stoul(command) - 1);
        out_ << "\n";
        show_new_lines();
      } else {
        session_ = apply_choice(session_, command);
        out_ << "\n";
        show_new_lines();
      }
    } catch (const Error& e) {
      out_ << style_.yellow(e.what()) << "\n";
    }
  }

  Session session_;
  fs::path save_path_;
  std::istream& in_;
  std::ostream& out_;
  const Style& style_;
  std::size_t shown_ = 0;
};

int cmd_play(const std::string& story_path, const std::string& save_path, const Config& config,
             std::istream& in, std::ostream& out, const Style& style) {
  auto story = std::make_shared<const CompiledNarrative>(narrative_from_json(read_json(story_path)));
  fs::path save = save_path.empty() ? output_dir(config) / "story.save.json" : fs::path(save_path);
  return Player(std::move(story), save, in, out, style).run();
}

}  // namespace

std::string format_json(const ordered_json& doc) { return doc.dump(2) + "\n"; }

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err, Terminal terminal) {
  const Style style{terminal.color};
  Config config;
  CLI::App app{"syp: turn BPMN process models into playable interactive narratives", "syp"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--mode", config.mode, "Validation mode")
      ->check(CLI::IsMember({"strict", "lenient"}));
  app.add_option("--numbering", config.numbering, "Beat sheet numbering")
      ->check(CLI::IsMember({"dfs", "list"}));
  app.add_option("--lexicon", config.lexicon_path, "Verb lexicon JSON file");
  auto* out_opt = app.add_option("--out", config.out_dir, "Output directory");

  std::string bpmn, sentences, sheet, story, save;
  std::vector<std::string> score_files;

  auto* extract = app.add_subcommand("extract", "Extract one sentence per flow node");
  extract->add_option("bpmn", bpmn, "BPMN 2.0 model")->required();

  auto* script = app.add_subcommand("script", "Order sentences into a beat sheet");
  script->add_option("bpmn", bpmn, "BPMN 2.0 model")->required();
  script->add_option("sentences", sentences, "sentences.json from extract")->required();

  auto* compile = app.add_subcommand("compile", "Compile a beat sheet to story.ink and story.json");
  compile->add_option("beatsheet", sheet, "beatsheet.json")->required();

  auto* play = app.add_subcommand("play", "Play a compiled story in the terminal");
  play->add_option("story", story, "story.json")->required();
  play->add_option("--save", save, "Save file (default <out>/story.save.json)");

  auto* check = app.add_subcommand("check", "Check a beat sheet covers every flow node");
  check->add_option("bpmn", bpmn, "BPMN 2.0 model")->required();
  check->add_option("beatsheet", sheet, "beat sheet JSON")->required();

  auto* score = app.add_subcommand("score", "Score candidate beat sheets against a gold sheet");
  score->add_option("sheets", score_files, "candidate sheets followed by the gold sheet")
      ->required()
      ->expected(2, -1);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (extract->parsed()) return cmd_extract(bpmn, config, out, err, style);
    if (script->parsed()) return cmd_script(bpmn, sentences, config, out, err, style);
    if (compile->parsed()) return cmd_compile(sheet, config, out);
    if (play->parsed()) return cmd_play(story, save, config, in, out, style);
    if (check->parsed()) return cmd_check(bpmn, sheet, out);
    if (score->parsed()) return cmd_score(score_files, config, out_opt->count() > 0, out);
  } catch (const InputError& e) {
    err << style.red("error") << ": " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    err << style.red("error") << " [" << errc_name(e.code()) << "]";
    if (!e.subject().empty()) err << " " << e.subject();
    err << ": " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace syp::cli

// Exports runtime conformance vectors for independent player implementations.
// Usage: syp_vectors <fixtures-dir> <out.json>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "../tests/support/generator.hpp"
#include "syp/cli.hpp"
#include "syp/runtime.hpp"

namespace {

constexpr std::size_t kMaxChoices = 8;
constexpr std::size_t kMaxPaths = 24;
constexpr int kGeneratedStories = 10;

std::shared_ptr<const syp::CompiledNarrative> compile(const syp::ProcessModel& model,
                                                      syp::Numbering numbering) {
  return std::make_shared<const syp::CompiledNarrative>(syp::compile_narrative(
      syp::script_sentences(model, syp::extract_sentences(model), numbering)));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: syp_vectors <fixtures-dir> <out.json>\n";
    return 2;
  }
  const std::filesystem::path fixtures(argv[1]);
  syp::ordered_json doc;
  doc["schema_version"] = 1;
  auto& suites = doc["suites"] = syp::ordered_json::array();

  const std::pair<const char*, syp::Numbering> files[] = {
      {"bookstore", syp::Numbering::List},
      {"loop", syp::Numbering::Dfs},
      {"parallel", syp::Numbering::Dfs},
      {"study26", syp::Numbering::Dfs},
  };
  try {
    for (const auto& [name, numbering] : files) {
      auto model = syp::load_bpmn_file((fixtures / (std::string(name) + ".bpmn")).string());
      suites.push_back(syp::conformance_vectors(name, compile(model, numbering), kMaxChoices, kMaxPaths));
    }
    for (int seed = 1; seed <= kGeneratedStories; ++seed) {
      syp::testing::GeneratorOptions options;
      options.max_nodes = 30;
      options.parallel = seed % 3 == 0;
      auto model = syp::testing::generate_model(static_cast<std::uint64_t>(seed), options);
      suites.push_back(syp::conformance_vectors("generated_" + std::to_string(seed),
                                                compile(model, syp::Numbering::Dfs), kMaxChoices,
                                                kMaxPaths));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::ofstream out(argv[2], std::ios::binary);
  out << syp::cli::format_json(doc);
  return out ? 0 : 2;
}

#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace syp::testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(SYP_FIXTURES) / name;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("syp_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace syp::testing

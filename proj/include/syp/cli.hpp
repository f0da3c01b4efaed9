#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "syp/bpmn.hpp"

namespace syp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIncomplete = 1;
inline constexpr int kExitInputError = 2;

struct Terminal {
  bool color = false;
};

/// Runs one `syp` invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err, Terminal terminal = {});

/// Byte format of every JSON artifact the CLI writes.
std::string format_json(const ordered_json& doc);

}  // namespace syp::cli

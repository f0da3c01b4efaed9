#pragma once

#include <string>
#include <string_view>

namespace syp::detail {

std::string sha256_hex(std::string_view data);

}  // namespace syp::detail

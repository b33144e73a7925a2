#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "trapspace/network.hpp"

namespace trapspace {

// Text format: an optional `targets, factors` header, then one
// `<name>, <expression>` line per variable in order. Blank lines and lines
// starting with '#' are ignored. Errors name the offending line.
BooleanNetwork parse_network(std::string_view text);
BooleanNetwork read_network(const std::filesystem::path& path);

std::string format_network(const BooleanNetwork& net);
void write_network(std::ostream& out, const BooleanNetwork& net);

}  // namespace trapspace

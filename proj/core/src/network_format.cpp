#include "trapspace/network_format.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "trapspace/error.hpp"

namespace trapspace {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Line {
  std::size_t number;
  std::string name;
  std::string body;
};

std::string at_line(std::size_t number) { return "line " + std::to_string(number) + ": "; }

}  // namespace

BooleanNetwork parse_network(std::string_view text) {
  std::vector<Line> lines;
  bool header_allowed = true;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view raw = trim(text.substr(start, end - start));
    start = end + 1;
    ++number;
    if (raw.empty() || raw.front() == '#') continue;
    const auto comma = raw.find(',');
    if (comma == std::string_view::npos) {
      throw InputError(at_line(number) + "expected '<name>, <expression>'");
    }
    const std::string_view name = trim(raw.substr(0, comma));
    const std::string_view body = trim(raw.substr(comma + 1));
    if (header_allowed && name == "targets" && body == "factors") {
      header_allowed = false;
      continue;
    }
    header_allowed = false;
    if (!is_valid_identifier(name)) {
      throw InputError(at_line(number) + "invalid variable name '" + std::string(name) + "'");
    }
    lines.push_back(Line{number, std::string(name), std::string(body)});
  }
  if (lines.empty()) throw InputError("network file declares no variables");

  std::vector<std::string> names;
  for (const Line& l : lines) {
    for (const std::string& seen : names) {
      if (seen == l.name) {
        throw InputError(at_line(l.number) + "duplicate variable '" + l.name + "'");
      }
    }
    names.push_back(l.name);
  }
  const ExpressionParser parser(names);
  std::vector<Expression> functions;
  for (const Line& l : lines) {
    try {
      functions.push_back(parser.parse(l.body));
    } catch (const InputError& e) {
      throw InputError(at_line(l.number) + e.what());
    }
  }
  return BooleanNetwork(std::move(names), std::move(functions));
}

BooleanNetwork read_network(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_network(buffer.str());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string format_network(const BooleanNetwork& net) {
  std::ostringstream out;
  write_network(out, net);
  return out.str();
}

void write_network(std::ostream& out, const BooleanNetwork& net) {
  out << "targets, factors\n";
  for (std::size_t i = 0; i < net.size(); ++i) {
    out << net.name(i) << ", " << to_string(net.function(i), net.variables()) << '\n';
  }
}

}  // namespace trapspace

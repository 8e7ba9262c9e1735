#include "rbmtail/format.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rbmtail/core.hpp"

namespace rbmtail {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::vector<double> parse_numbers(std::string_view text) {
  std::vector<double> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    ++line_no;
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) throw ParseError(line_no, "empty line");
    double v = 0.0;
    const char* first = line.data();
    const char* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec == std::errc::result_out_of_range) {
      throw ParseError(line_no, "value out of range: '" + std::string(line) + "'");
    }
    if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
      throw ParseError(line_no, "not a decimal number: '" + std::string(line) + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<double> read_numbers(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_numbers(buf.str());
}

}  // namespace rbmtail

#include "superres/text_io.hpp"

#include "superres/errors.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace superres {

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw DataError("expected a number, got empty text");
  const auto last = text.find_last_not_of(" \t\r\n");
  text = text.substr(first, last - first + 1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw DataError("not a number: '" + std::string(text) + "'");
  return value;
}

std::vector<AmplitudeSample> read_two_column(std::istream& in) {
  std::vector<AmplitudeSample> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;
    if (!(ls >> b) || (ls >> extra))
      throw DataError("line " + std::to_string(lineno) + ": expected two columns");
    rows.push_back({parse_double(a), parse_double(b)});
  }
  return rows;
}

std::vector<AmplitudeSample> read_two_column_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return read_two_column(in);
}

void write_two_column(std::ostream& out, std::span<const AmplitudeSample> rows,
                      std::string_view header) {
  if (!header.empty()) out << "# " << header << '\n';
  for (const auto& r : rows) out << format_double(r.x) << ' ' << format_double(r.amplitude) << '\n';
}

} // namespace superres

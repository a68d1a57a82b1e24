#pragma once

#include "superres/psf.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace superres {

/// Shortest round-trip decimal form.
std::string format_double(double value);

/// Whole-string parse, surrounding whitespace allowed. DataError on failure.
double parse_double(std::string_view text);

/// Whitespace-separated "x amplitude" rows; blank lines and '#' comments skipped.
std::vector<AmplitudeSample> read_two_column(std::istream& in);
std::vector<AmplitudeSample> read_two_column_file(const std::string& path);

void write_two_column(std::ostream& out, std::span<const AmplitudeSample> rows,
                      std::string_view header = {});

} // namespace superres

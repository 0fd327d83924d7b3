#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace kgqa {

using CsvRow = std::vector<std::string>;

// RFC 4180 records: comma separated, double-quoted fields may contain commas,
// newlines and "" escapes. Throws std::invalid_argument on an unterminated
// quote.
std::vector<CsvRow> parse_csv(std::string_view text);

}  // namespace kgqa

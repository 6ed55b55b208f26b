#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

// Minimal RFC-4180 style CSV: fields containing a comma, quote or newline
// are wrapped in double quotes with embedded quotes doubled.
namespace symtag::csv {

std::string format_field(std::string_view field);
std::string format_row(const std::vector<std::string>& fields);

struct Record {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
};

/// Splits text into records. Blank lines are skipped. Throws ParseError on
/// an unterminated quoted field.
std::vector<Record> parse(std::string_view text);

}  // namespace symtag::csv

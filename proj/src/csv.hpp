#pragma once

// Minimal RFC 4180 style field handling shared by the table readers/writers.

#include <string>
#include <string_view>
#include <vector>

namespace sigfed::csv {

/// Splits one line on commas, honouring double quotes. Unquoted fields are trimmed.
std::vector<std::string> split(std::string_view line);

/// Quotes the field when it contains a comma, quote, or leading/trailing blank.
std::string escape(std::string_view field);

std::string_view trim(std::string_view text);
std::string lower(std::string_view text);

}  // namespace sigfed::csv

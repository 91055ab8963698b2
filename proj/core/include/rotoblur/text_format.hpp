#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rotoblur {

/// Shortest decimal that parses back to the same double (locale independent).
std::string format_double(double value);

std::optional<double> parse_double(std::string_view text);
std::optional<std::int64_t> parse_int(std::string_view text);

std::vector<std::string_view> split_fields(std::string_view line, char sep = ',');

/// Splits on '\n', strips a trailing '\r' from each line and drops the empty
/// remainder after a final newline.
std::vector<std::string_view> split_lines(std::string_view text);

}  // namespace rotoblur

#pragma once

#include <optional>
#include <string_view>

#include "bubbledyn/map_core.hpp"

namespace bubbledyn {

// Parses "a", "a+bi", "a-bi", "bi", "-i", ... Either part may be omitted;
// whitespace around the whole string is ignored. Empty on malformed input.
std::optional<Complex> parse_complex(std::string_view text);

// Whole-string decimal parse; rejects trailing garbage, inf and nan.
std::optional<double> parse_double(std::string_view text);
std::optional<int> parse_int(std::string_view text);

}  // namespace bubbledyn

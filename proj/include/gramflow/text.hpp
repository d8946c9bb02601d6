#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gramflow {

// Locale-independent formatting with 17 significant digits, enough to
// round-trip any double exactly.
std::string fmt_real(double x);

std::vector<std::string> split_ws(std::string_view s);
std::string trim(std::string_view s);

std::string json_escape(std::string_view s);

// FNV-1a, 64 bit, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

}  // namespace gramflow

#pragma once

#include <ostream>
#include <string>

#include "json.hpp"

namespace singosc4 {

constexpr int kSchemaVersion = 1;

/// "%.15e"; NaN and infinities as "nan", "inf", "-inf".
std::string format_double(double x);

/// Serializes with sorted keys, two-space indentation and every float in
/// "%.15e". Non-finite floats become null.
void write_json(std::ostream& os, const nlohmann::json& j);
std::string dump_json(const nlohmann::json& j);

/// First line of every CSV artifact.
std::string csv_header(const std::string& kind);

}  // namespace singosc4

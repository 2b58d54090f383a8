#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace smlab {

/// Shortest-safe round-trip text for a double: 17 significant digits.
std::string format_double(double value);

/// JSON text with every float written by format_double (non-finite as
/// null). Objects keep nlohmann's sorted key order.
std::string dump_json(const nlohmann::json& doc, int indent = 2);

}  // namespace smlab

#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

namespace polymod {

/// Library version, stamped into every JSON document.
std::string_view library_version();

/// "%.17g"; non-finite values become "null".
std::string format_double(double value);

/// Deterministic JSON text: keys sorted, floats with 17 significant digits,
/// two-space indent, trailing newline.
std::string dump_json(const nlohmann::json& doc);

}  // namespace polymod

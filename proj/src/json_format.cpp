#include "polymod/json_format.hpp"

#include <cmath>
#include <cstdio>

#ifndef POLYMOD_VERSION
#define POLYMOD_VERSION "0.0.0"
#endif

namespace polymod {

namespace {

void write(const nlohmann::json& node, int depth, std::string& out) {
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
    switch (node.type()) {
        case nlohmann::json::value_t::object: {
            if (node.empty()) {
                out += "{}";
                return;
            }
            // The default object type is an ordered std::map, so iteration
            // is already sorted by key.
            out += "{\n";
            bool first = true;
            for (const auto& [key, value] : node.items()) {
                if (!first) out += ",\n";
                first = false;
                out += pad + nlohmann::json(key).dump() + ": ";
                write(value, depth + 1, out);
            }
            out += "\n" + close_pad + "}";
            return;
        }
        case nlohmann::json::value_t::array: {
            if (node.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < node.size(); ++i) {
                if (i) out += ",\n";
                out += pad;
                write(node[i], depth + 1, out);
            }
            out += "\n" + close_pad + "]";
            return;
        }
        case nlohmann::json::value_t::number_float:
            out += format_double(node.get<double>());
            return;
        default:
            out += node.dump();
    }
}

}  // namespace

std::string_view library_version() { return POLYMOD_VERSION; }

std::string format_double(double value) {
    if (!std::isfinite(value)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string dump_json(const nlohmann::json& doc) {
    std::string out;
    write(doc, 0, out);
    out += '\n';
    return out;
}

}  // namespace polymod

#pragma once

// Canonical JSON serialization shared by the report writers: sorted keys
// (nlohmann objects already iterate sorted), LF only, and every floating
// value printed with 17 significant digits so identical runs are
// byte-identical.

#include <cinttypes>
#include <cstdio>
#include <string>

#include "json.hpp"

namespace affdecomp {

inline void canonical_json_append(const nlohmann::json& j, std::string& out) {
    using nlohmann::json;
    switch (j.type()) {
        case json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += json(it.key()).dump();
                out += ':';
                canonical_json_append(it.value(), out);
            }
            out += '}';
            break;
        }
        case json::value_t::array: {
            out += '[';
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ',';
                first = false;
                canonical_json_append(v, out);
            }
            out += ']';
            break;
        }
        case json::value_t::number_float: {
            char buf[48];
            std::snprintf(buf, sizeof(buf), "%.17g", j.get<double>());
            out += buf;
            break;
        }
        case json::value_t::number_integer: {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%" PRId64, j.get<int64_t>());
            out += buf;
            break;
        }
        case json::value_t::number_unsigned: {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%" PRIu64, j.get<uint64_t>());
            out += buf;
            break;
        }
        case json::value_t::boolean:
            out += j.get<bool>() ? "true" : "false";
            break;
        case json::value_t::string:
            out += j.dump();
            break;
        default:
            out += "null";
            break;
    }
}

inline std::string canonical_json_dump(const nlohmann::json& j) {
    std::string out;
    canonical_json_append(j, out);
    return out;
}

// 17-significant-digit float for CSV cells, matching the JSON writer.
inline std::string canonical_float(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace affdecomp

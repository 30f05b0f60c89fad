// Copyright 2026 The QID Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace qid {

namespace {

void dump_into(const nlohmann::ordered_json &v, std::string &out, int indent, int depth) {
    const auto newline = [&](int level) {
        if (indent >= 0) {
            out += '\n';
            out.append(static_cast<std::size_t>(indent * level), ' ');
        }
    };
    switch (v.type()) {
        case nlohmann::json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (const auto &[key, item] : v.items()) {
                if (!first) {
                    out += ',';
                }
                first = false;
                newline(depth + 1);
                out += nlohmann::json(key).dump();
                out += indent >= 0 ? ": " : ":";
                dump_into(item, out, indent, depth + 1);
            }
            newline(depth);
            out += '}';
            return;
        }
        case nlohmann::json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            // Numeric arrays stay on one line.
            bool flat = true;
            for (const auto &item : v) {
                flat = flat && item.is_primitive();
            }
            out += '[';
            bool first = true;
            for (const auto &item : v) {
                if (!first) {
                    out += flat && indent >= 0 ? ", " : ",";
                }
                first = false;
                if (!flat) {
                    newline(depth + 1);
                }
                dump_into(item, out, indent, depth + 1);
            }
            if (!flat) {
                newline(depth);
            }
            out += ']';
            return;
        }
        case nlohmann::json::value_t::number_float: {
            const double d = v.get<double>();
            out += std::isfinite(d) ? format_double(d) : "null";
            return;
        }
        default:
            out += v.dump();
            return;
    }
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    std::array<char, 64> buf{};
    auto result = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    return std::string(buf.data(), result.ptr);
}

std::string dump_json(const nlohmann::ordered_json &value, int indent) {
    std::string out;
    dump_into(value, out, indent, 0);
    out += '\n';
    return out;
}

}  // namespace qid

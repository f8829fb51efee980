#pragma once

// Line-delimited structured records: one JSON object per line, with a
// "type" key first and the remaining keys in insertion order. Used for
// construction traces, corpus metadata, campaign reports and bench output.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace clausedag {

using FieldValue = std::variant<std::int64_t, double, bool, std::string>;

struct Record {
    std::string type;
    std::vector<std::pair<std::string, FieldValue>> fields;

    Record() = default;
    explicit Record(std::string t) : type(std::move(t)) {}

    Record& add(std::string key, FieldValue value)
    {
        fields.emplace_back(std::move(key), std::move(value));
        return *this;
    }
    template <typename Int>
        requires(std::is_integral_v<Int> && !std::is_same_v<Int, bool>)
    Record& add(std::string key, Int value)
    {
        return add(std::move(key), FieldValue(static_cast<std::int64_t>(value)));
    }
    Record& add(std::string key, const char* value) { return add(std::move(key), std::string(value)); }
    Record& add(std::string key, bool value) { return add(std::move(key), FieldValue(value)); }
    Record& add(std::string key, double value) { return add(std::move(key), FieldValue(value)); }

    [[nodiscard]] const FieldValue* find(std::string_view key) const;
    [[nodiscard]] std::optional<std::int64_t> get_int(std::string_view key) const;
    [[nodiscard]] std::optional<std::string> get_string(std::string_view key) const;
    [[nodiscard]] std::optional<bool> get_bool(std::string_view key) const;

    friend bool operator==(const Record&, const Record&) = default;
};

using Trace = std::vector<Record>;

[[nodiscard]] std::string to_json_line(const Record& r);
// Throws Error(SyntaxError) on malformed input or a missing "type".
[[nodiscard]] Record parse_json_line(std::string_view line);

// Human-readable "type key=value key=value" rendering.
[[nodiscard]] std::string to_text_line(const Record& r);

} // namespace clausedag

#include "clausedag/records.hpp"

#include "clausedag/error.hpp"

#include <json.hpp>

#include <sstream>

namespace clausedag {

namespace {

using Json = nlohmann::ordered_json;

Json to_json(const FieldValue& v)
{
    return std::visit([](const auto& x) { return Json(x); }, v);
}

std::string format_double(double d)
{
    std::ostringstream os;
    os.precision(6);
    os << std::fixed << d;
    return os.str();
}

} // namespace

const FieldValue* Record::find(std::string_view key) const
{
    for (const auto& [k, v] : fields)
        if (k == key)
            return &v;
    return nullptr;
}

std::optional<std::int64_t> Record::get_int(std::string_view key) const
{
    const FieldValue* v = find(key);
    if (v == nullptr || !std::holds_alternative<std::int64_t>(*v))
        return std::nullopt;
    return std::get<std::int64_t>(*v);
}

std::optional<std::string> Record::get_string(std::string_view key) const
{
    const FieldValue* v = find(key);
    if (v == nullptr || !std::holds_alternative<std::string>(*v))
        return std::nullopt;
    return std::get<std::string>(*v);
}

std::optional<bool> Record::get_bool(std::string_view key) const
{
    const FieldValue* v = find(key);
    if (v == nullptr || !std::holds_alternative<bool>(*v))
        return std::nullopt;
    return std::get<bool>(*v);
}

std::string to_json_line(const Record& r)
{
    Json j = Json::object();
    j["type"] = r.type;
    for (const auto& [k, v] : r.fields)
        j[k] = to_json(v);
    return j.dump();
}

Record parse_json_line(std::string_view line)
{
    Json j;
    try {
        j = Json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::SyntaxError, std::string("malformed record: ") + e.what());
    }
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw Error(ErrorKind::SyntaxError, "record must be an object with a string \"type\"");
    Record r(j["type"].get<std::string>());
    for (const auto& [k, v] : j.items()) {
        if (k == "type")
            continue;
        if (v.is_boolean())
            r.add(k, v.get<bool>());
        else if (v.is_number_integer())
            r.add(k, FieldValue(v.get<std::int64_t>()));
        else if (v.is_number_float())
            r.add(k, FieldValue(v.get<double>()));
        else if (v.is_string())
            r.add(k, FieldValue(v.get<std::string>()));
        else
            throw Error(ErrorKind::SyntaxError, "record field \"" + k + "\" has an unsupported type");
    }
    return r;
}

std::string to_text_line(const Record& r)
{
    std::string out = r.type;
    for (const auto& [k, v] : r.fields) {
        out += ' ';
        out += k;
        out += '=';
        std::visit(
            [&out](const auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, std::string>)
                    out += x.find(' ') == std::string::npos ? x : "\"" + x + "\"";
                else if constexpr (std::is_same_v<T, bool>)
                    out += x ? "true" : "false";
                else if constexpr (std::is_same_v<T, double>)
                    out += format_double(x);
                else
                    out += std::to_string(x);
            },
            v);
    }
    return out;
}

} // namespace clausedag

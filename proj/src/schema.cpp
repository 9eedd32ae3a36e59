#include "g2moduli/schema.hpp"

#include <fstream>
#include <stdexcept>

namespace g2moduli {

using nlohmann::json;

namespace {

bool type_matches(const json& value, const std::string& type) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "number") return value.is_number();
    if (type == "integer") return value.is_number_integer();
    if (type == "boolean") return value.is_boolean();
    if (type == "null") return value.is_null();
    return false;
}

bool validate_node(const json& value, const json& schema, const std::string& where,
                   std::string* error) {
    auto fail = [&](const std::string& msg) {
        if (error) *error = where + ": " + msg;
        return false;
    };

    if (schema.contains("type")) {
        const json& t = schema.at("type");
        bool ok = false;
        if (t.is_string()) {
            ok = type_matches(value, t.get<std::string>());
        } else {
            for (const json& alt : t)
                if (type_matches(value, alt.get<std::string>())) ok = true;
        }
        if (!ok) return fail("type mismatch, got " + std::string(value.type_name()));
    }

    if (schema.contains("enum")) {
        bool ok = false;
        for (const json& alt : schema.at("enum"))
            if (value == alt) ok = true;
        if (!ok) return fail("value not in enum");
    }

    if (value.is_object()) {
        if (schema.contains("required"))
            for (const json& key : schema.at("required"))
                if (!value.contains(key.get<std::string>()))
                    return fail("missing required key '" + key.get<std::string>() + "'");
        const json props = schema.value("properties", json::object());
        for (auto it = value.begin(); it != value.end(); ++it) {
            if (props.contains(it.key())) {
                if (!validate_node(it.value(), props.at(it.key()), where + "." + it.key(),
                                   error))
                    return false;
            } else if (schema.contains("additionalProperties") &&
                       schema.at("additionalProperties") == json(false)) {
                return fail("unexpected key '" + it.key() + "'");
            }
        }
    }

    if (value.is_array() && schema.contains("items")) {
        std::size_t i = 0;
        for (const json& elem : value) {
            if (!validate_node(elem, schema.at("items"),
                               where + "[" + std::to_string(i) + "]", error))
                return false;
            ++i;
        }
    }
    return true;
}

}  // namespace

bool validate_against_schema(const json& value, const json& schema, std::string* error) {
    return validate_node(value, schema, "$", error);
}

json load_schema(const std::string& name) {
    const std::string path = std::string(G2MODULI_SCHEMA_DIR) + "/" + name;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open schema: " + path);
    return json::parse(in);
}

}  // namespace g2moduli

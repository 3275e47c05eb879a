#include "binexp/errors.hpp"
#include "binexp/trace.hpp"

#include <json.hpp>

#include <string>

namespace binexp {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json to_node(const FieldValue& value) {
    return std::visit([](auto v) { return ordered_json(v); }, value);
}

FieldValue from_node(const ordered_json& node, std::string_view name) {
    if (node.is_boolean()) {
        return node.get<bool>();
    }
    if (node.is_number_unsigned()) {
        return node.get<std::uint64_t>();
    }
    if (node.is_number_float()) {
        return node.get<double>();
    }
    throw SchemaError("value '" + std::string(name) + "' is not a flag or number");
}

FieldValue from_node(const ordered_json& node, const FieldSpec& spec) {
    switch (spec.kind) {
    case FieldKind::flag:
        if (node.is_boolean()) {
            return node.get<bool>();
        }
        break;
    case FieldKind::integer:
        if (node.is_number_unsigned()) {
            return node.get<std::uint64_t>();
        }
        break;
    case FieldKind::real:
        if (node.is_number()) {
            return node.get<double>();
        }
        break;
    }
    throw SchemaError("field '" + std::string(spec.name) + "' has the wrong type");
}

ordered_json to_object(const std::vector<NamedValue>& values) {
    ordered_json obj = ordered_json::object();
    for (const auto& nv : values) {
        obj[nv.name] = to_node(nv.value);
    }
    return obj;
}

template <typename Add>
void read_object(const ordered_json& doc, const char* key, Add add) {
    const auto it = doc.find(key);
    if (it == doc.end() || !it->is_object()) {
        throw SchemaError(std::string("missing object '") + key + "'");
    }
    for (const auto& [name, node] : it->items()) {
        add(name, from_node(node, name));
    }
}

} // namespace

std::string to_json(const TraceLog& log) {
    ordered_json doc;
    doc["schema"] = 1;
    doc["algorithm"] = algorithm_name(log.algorithm());
    doc["inputs"] = to_object(log.inputs());
    doc["config"] = to_object(log.config());

    const auto schema = event_schema(log.algorithm());
    ordered_json events = ordered_json::array();
    for (const auto& e : log.events()) {
        ordered_json ev;
        ev["step"] = e.step;
        for (std::size_t i = 0; i < schema.size(); ++i) {
            ev[std::string(schema[i].name)] = to_node(e.values[i]);
        }
        events.push_back(std::move(ev));
    }
    doc["events"] = std::move(events);
    doc["result"] = to_object(log.result());
    return doc.dump();
}

TraceLog trace_from_json(std::string_view json) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("malformed trace JSON: ") + e.what());
    }
    if (!doc.is_object() || doc.value("schema", 0) != 1) {
        throw SchemaError("unsupported trace schema");
    }
    if (!doc.contains("algorithm") || !doc["algorithm"].is_string()) {
        throw SchemaError("missing algorithm");
    }

    TraceLog log(algorithm_from_name(doc["algorithm"].get<std::string>()));
    read_object(doc, "inputs", [&](auto name, auto v) { log.add_input(name, v); });
    read_object(doc, "config", [&](auto name, auto v) { log.add_config(name, v); });

    const auto schema = event_schema(log.algorithm());
    const auto events = doc.find("events");
    if (events == doc.end() || !events->is_array()) {
        throw SchemaError("missing events array");
    }
    for (const auto& ev : *events) {
        if (!ev.is_object() || ev.value("step", std::size_t{0}) != log.events().size() + 1) {
            throw SchemaError("event steps must be contiguous from 1");
        }
        std::vector<FieldValue> values;
        values.reserve(schema.size());
        for (const auto& spec : schema) {
            const auto it = ev.find(std::string(spec.name));
            if (it == ev.end()) {
                throw SchemaError("event missing field '" + std::string(spec.name) + "'");
            }
            values.push_back(from_node(*it, spec));
        }
        log.record(std::move(values));
    }

    read_object(doc, "result", [&](auto name, auto v) { log.add_result(name, v); });
    return log;
}

} // namespace binexp

#include "ontoforge/tools.hpp"

#include <algorithm>
#include <cctype>

#include "ontoforge/turtle.hpp"

namespace ontoforge {

std::string to_string(ToolGroup g) {
    switch (g) {
        case ToolGroup::entity_creation: return "entity_creation";
        case ToolGroup::completion: return "completion";
        case ToolGroup::linking: return "linking";
        case ToolGroup::query: return "query";
    }
    return "?";
}

std::string snake_case(const std::string& s) {
    std::string out;
    for (size_t i = 0; i < s.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (!std::isalnum(c)) {
            if (!out.empty() && out.back() != '_') out += '_';
            continue;
        }
        if (std::isupper(c) && !out.empty() && out.back() != '_') out += '_';
        out += static_cast<char>(std::tolower(c));
    }
    while (!out.empty() && out.back() == '_') out.pop_back();
    return out;
}

std::string fingerprint(const std::string& canonical_tbox) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical_tbox) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

const ToolDescriptor* ToolSet::find(const std::string& name) const {
    for (const auto& t : tools)
        if (t.name == name) return &t;
    return nullptr;
}

namespace {

ValueKind kind_for_datatype(const Iri& dt) {
    if (dt == xsd::integer_) return ValueKind::integer;
    if (dt == xsd::double_ || dt == xsd::decimal_) return ValueKind::number;
    if (dt == xsd::boolean_) return ValueKind::boolean;
    return ValueKind::string_;
}

std::string doc_with_comment(std::string base, const std::optional<std::string>& comment) {
    if (comment) base += " " + *comment;
    return base;
}

// Attribute-like: datatype properties plus enumerated-vocabulary properties.
bool is_attribute_property(const SchemaModel& schema, const PropertyDef& p) {
    return p.kind == PropertyKind::datatype || schema.vocabularies.count(p.iri) > 0;
}

ArgumentSpec value_argument(const SchemaModel& schema, const PropertyDef& p, std::string name,
                            bool required) {
    ArgumentSpec arg;
    arg.name = std::move(name);
    arg.required = required;
    arg.doc = p.comment.value_or("");
    auto vocab = schema.vocabularies.find(p.iri);
    if (vocab != schema.vocabularies.end()) {
        arg.kind = ValueKind::enum_;
        arg.enum_labels = vocab->second.labels();
    } else {
        arg.kind = kind_for_datatype(p.range_datatype);
    }
    return arg;
}

}  // namespace

ToolSet compile_tools(const SchemaModel& schema, const Graph& tbox) {
    ToolSet out;
    out.schema_fingerprint = fingerprint(serialize_turtle(tbox));

    auto add_tool = [&out](ToolDescriptor tool) {
        if (out.find(tool.name))
            throw CompileError("tool name collision after snake-casing: " + tool.name);
        out.tools.push_back(std::move(tool));
    };

    for (const auto& [cls_iri, cls] : schema.classes) {
        if (schema.is_vocabulary_range(cls_iri)) continue;
        const std::string local = snake_case(cls.local);

        ToolDescriptor create;
        create.name = "create_" + local;
        create.group = ToolGroup::entity_creation;
        create.binding = ToolBinding::create;
        create.bound = cls_iri;
        create.doc = doc_with_comment("Create (or reuse) a " + cls.local + " instance.",
                                      cls.comment);
        create.arguments.push_back({"doc_id", ValueKind::string_, {}, true,
                                    "Pipeline document identifier (dotted DOI form)."});
        create.arguments.push_back({"label", ValueKind::string_, {}, true,
                                    "Human-readable rdfs:label for the instance."});
        const std::set<Iri> ancestors = subclass_closure(schema, cls_iri);
        for (const auto& [prop_iri, prop] : schema.properties) {
            if (!is_attribute_property(schema, prop)) continue;
            const bool in_domain = std::any_of(
                prop.domain.begin(), prop.domain.end(),
                [&ancestors](const Iri& d) { return ancestors.count(d) != 0; });
            if (!in_domain) continue;
            create.arguments.push_back(
                value_argument(schema, prop, snake_case(prop_iri.local_name()), false));
        }
        add_tool(std::move(create));

        ToolDescriptor check;
        check.name = "check_existing_" + local;
        check.group = ToolGroup::query;
        check.binding = ToolBinding::check_existing;
        check.bound = cls_iri;
        check.doc = "Look up existing " + cls.local + " instances by label.";
        check.arguments.push_back({"label", ValueKind::string_, {}, true,
                                   "Label to match after normalization."});
        add_tool(std::move(check));
    }

    for (const auto& [prop_iri, prop] : schema.properties) {
        const std::string local = snake_case(prop_iri.local_name());
        if (prop.kind == PropertyKind::object && !schema.vocabularies.count(prop_iri)) {
            ToolDescriptor link;
            link.name = "link_" + local;
            link.group = ToolGroup::linking;
            link.binding = ToolBinding::link;
            link.bound = prop_iri;
            link.doc = doc_with_comment("Link two existing instances with " +
                                        prop_iri.local_name() + ".", prop.comment);
            link.arguments.push_back({"subject_iri", ValueKind::iri, {}, true,
                                      "IRI of the subject instance."});
            link.arguments.push_back({"object_iri", ValueKind::iri, {}, true,
                                      "IRI of the object instance."});
            add_tool(std::move(link));
        } else {
            ToolDescriptor set;
            set.name = "set_" + local;
            set.group = ToolGroup::completion;
            set.binding = ToolBinding::set;
            set.bound = prop_iri;
            set.doc = doc_with_comment("Set " + prop_iri.local_name() +
                                       " on an existing instance.", prop.comment);
            set.arguments.push_back({"subject_iri", ValueKind::iri, {}, true,
                                     "IRI of the instance to update."});
            set.arguments.push_back(value_argument(schema, prop, "value", true));
            add_tool(std::move(set));
        }
    }

    // Quantity pattern: a class carrying both a numeric datatype property and
    // an enumerated unit property gets a one-shot creation tool.
    for (const auto& [cls_iri, cls] : schema.classes) {
        std::optional<Iri> numeric_prop, unit_prop;
        for (const auto& [prop_iri, prop] : schema.properties) {
            if (!prop.domain.count(cls_iri)) continue;
            if (prop.kind == PropertyKind::datatype &&
                (prop.range_datatype == xsd::double_ || prop.range_datatype == xsd::decimal_ ||
                 prop.range_datatype == xsd::integer_))
                numeric_prop = prop_iri;
            if (schema.vocabularies.count(prop_iri)) unit_prop = prop_iri;
        }
        if (!numeric_prop || !unit_prop) continue;
        ToolDescriptor quantity;
        quantity.name = "create_" + snake_case(cls.local) + "_quantity";
        quantity.group = ToolGroup::completion;
        quantity.binding = ToolBinding::quantity;
        quantity.bound = cls_iri;
        quantity.doc = doc_with_comment(
            "Create a validated " + cls.local + " quantity with value and unit.", cls.comment);
        quantity.arguments.push_back(
            value_argument(schema, schema.properties.at(*numeric_prop), "value", true));
        quantity.arguments.push_back(
            value_argument(schema, schema.properties.at(*unit_prop), "unit", true));
        add_tool(std::move(quantity));
    }

    ToolDescriptor fin;
    fin.name = "finalize";
    fin.group = ToolGroup::completion;
    fin.binding = ToolBinding::finalize;
    fin.doc = "Evaluate outstanding minimum-cardinality rules and mark the run done.";
    add_tool(std::move(fin));

    return out;
}

Json input_schema_json(const ToolDescriptor& tool) {
    Json properties = Json::object();
    Json required = Json::array();
    for (const auto& arg : tool.arguments) {
        Json prop;
        switch (arg.kind) {
            case ValueKind::string_: prop = {{"type", "string"}}; break;
            case ValueKind::number: prop = {{"type", "number"}}; break;
            case ValueKind::integer: prop = {{"type", "integer"}}; break;
            case ValueKind::boolean: prop = {{"type", "boolean"}}; break;
            case ValueKind::iri: prop = {{"type", "string"}, {"format", "iri"}}; break;
            case ValueKind::enum_:
                prop = {{"type", "string"}, {"enum", arg.enum_labels}};
                break;
        }
        if (!arg.doc.empty()) prop["description"] = arg.doc;
        properties[arg.name] = std::move(prop);
        if (arg.required) required.push_back(arg.name);
    }
    return Json{{"type", "object"}, {"properties", properties}, {"required", required}};
}

Json emit_manifest(const ToolSet& toolset) {
    Json tools = Json::array();
    for (const auto& tool : toolset.tools) {
        tools.push_back(Json{{"name", tool.name},
                             {"group", to_string(tool.group)},
                             {"doc", tool.doc},
                             {"input_schema", input_schema_json(tool)}});
    }
    return Json{{"schema_fingerprint", toolset.schema_fingerprint}, {"tools", tools}};
}

}  // namespace ontoforge

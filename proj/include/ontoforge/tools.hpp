#pragma once
// Compilation of a SchemaModel into typed tool descriptors and the JSON
// manifest served over tools/list.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ontoforge/schema.hpp"

namespace ontoforge {

using Json = nlohmann::ordered_json;

struct CompileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ValueKind { string_, number, integer, boolean, iri, enum_ };

enum class ToolGroup { entity_creation, completion, linking, query };
std::string to_string(ToolGroup g);

enum class ToolBinding { create, check_existing, link, set, quantity, finalize };

struct ArgumentSpec {
    std::string name;
    ValueKind kind = ValueKind::string_;
    std::vector<std::string> enum_labels;  // for ValueKind::enum_
    bool required = false;
    std::string doc;
};

struct ToolDescriptor {
    std::string name;  // [a-z0-9_]+
    ToolGroup group = ToolGroup::entity_creation;
    ToolBinding binding = ToolBinding::create;
    std::vector<ArgumentSpec> arguments;
    std::string doc;
    std::optional<Iri> bound;  // class or property; absent only for finalize
};

struct ToolSet {
    std::vector<ToolDescriptor> tools;
    std::string schema_fingerprint;

    const ToolDescriptor* find(const std::string& name) const;
};

std::string snake_case(const std::string& s);

// FNV-1a 64-bit over the canonical T-Box serialization.
std::string fingerprint(const std::string& canonical_tbox);

ToolSet compile_tools(const SchemaModel& schema, const Graph& tbox);

Json emit_manifest(const ToolSet& toolset);
Json input_schema_json(const ToolDescriptor& tool);

}  // namespace ontoforge

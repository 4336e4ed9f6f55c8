#pragma once
// Schema extraction: turns a T-Box graph into the machine-readable contract
// (classes, properties, cardinalities, vocabularies) that drives tool
// compilation and run-time validation.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ontoforge/rdf.hpp"

namespace ontoforge {

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnknownClassError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnknownPropertyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ClassDef {
    Iri iri;
    std::string local;
    std::set<Iri> parents;
    std::optional<std::string> comment;
    bool is_top_entity = false;
};

enum class PropertyKind { object, datatype };

struct PropertyDef {
    Iri iri;
    PropertyKind kind = PropertyKind::object;
    std::set<Iri> domain;           // union semantics: any listed class acceptable
    std::set<Iri> range_classes;    // object properties
    Iri range_datatype;             // datatype properties (exactly one xsd type)
    std::optional<std::string> comment;
};

struct CardinalityRule {
    Iri on_class;
    Iri property;
    std::optional<int> min;
    std::optional<int> max;
};

struct Vocabulary {
    Iri property;
    std::vector<std::pair<std::string, Iri>> allowed;  // (label, iri), declaration order

    std::optional<Iri> resolve(const std::string& label) const;
    std::vector<std::string> labels() const;
};

struct SchemaModel {
    std::map<Iri, ClassDef> classes;
    std::map<Iri, PropertyDef> properties;
    std::vector<CardinalityRule> cardinalities;
    std::map<Iri, Vocabulary> vocabularies;  // keyed by property

    std::optional<Iri> top_entity() const;

    // True for classes that only serve as enumerated vocabulary ranges;
    // the compiler emits no creation tools for them.
    bool is_vocabulary_range(const Iri& cls) const;
};

// Marker annotation naming the single top-level entity class:
// <cls> <...#isTopEntity> "true"^^xsd:boolean.
constexpr const char* kTopEntityLocalName = "isTopEntity";

SchemaModel extract_schema(const Graph& tbox);

// Reflexive-transitive ancestor set.
std::set<Iri> subclass_closure(const SchemaModel& schema, const Iri& cls);

std::optional<Vocabulary> allowed_values(const SchemaModel& schema, const Iri& property);

}  // namespace ontoforge

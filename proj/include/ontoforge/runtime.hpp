#pragma once
// Constraint-checking execution of compiled tools over the persistent store:
// in-flight hard-constraint validation, structured violation feedback,
// duplicate-call guards, and min-cardinality finalization.

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "ontoforge/mint.hpp"
#include "ontoforge/tools.hpp"

namespace ontoforge {

struct UnknownToolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ErrorType {
    OntologyConstraintViolation,
    DatatypeViolation,
    CardinalityViolation,
    UnknownEntity,
    DuplicateCall,
    AlreadyAttached,
};
std::string to_string(ErrorType t);

struct ViolationReport {
    ErrorType error_type = ErrorType::OntologyConstraintViolation;
    std::optional<std::string> field;
    std::string message;
    std::optional<std::vector<std::string>> allowed_values;
    bool retryable = false;

    // Field names fixed: ok, error_type, field, message, allowed_values, retryable.
    Json to_json() const;
};

struct ToolResult {
    std::optional<Iri> instance_iri;
    std::string status;  // created | reused | attached | done
    std::vector<Iri> matches;  // check_existing only

    Json to_json() const;  // {"ok":true, ..., "validated":true}
};

struct InvokeOutcome {
    bool ok = false;
    ToolResult result;                         // when ok
    std::vector<ViolationReport> violations;   // when !ok

    Json to_json() const;
};

class Session {
public:
    Session(Graph graph, SchemaModel schema, ToolSet toolset, Iri mint_base,
            std::string doc_id, bool feedback_enabled = true, std::string workdir = {});

    InvokeOutcome invoke(const std::string& tool, const Json& args);

    // Semantic operations behind the tool surface.
    InvokeOutcome create_instance(const Iri& cls, const std::string& doc_id,
                                  const std::string& label,
                                  const std::vector<std::pair<Iri, Json>>& attrs);
    InvokeOutcome link(const std::string& subject_iri, const Iri& property,
                       const std::string& object_iri);
    InvokeOutcome set_attribute(const std::string& subject_iri, const Iri& property,
                                const Json& value);
    InvokeOutcome finalize();

    // Applies a call's triples with no validation at all; post-hoc oracle support.
    void force_apply(const std::string& tool, const Json& args);

    const Graph& graph() const { return graph_; }
    const SchemaModel& schema() const { return schema_; }
    const ToolSet& toolset() const { return toolset_; }
    const std::string& doc_id() const { return doc_id_; }
    bool feedback_enabled() const { return feedback_enabled_; }

    const std::vector<std::pair<std::string, std::string>>& call_log() const {
        return call_log_;
    }

private:
    Graph graph_;
    SchemaModel schema_;
    ToolSet toolset_;
    MintState mint_;
    std::string doc_id_;
    bool feedback_enabled_;
    std::string workdir_;
    std::vector<std::pair<std::string, std::string>> call_log_;
    std::set<std::pair<std::string, std::string>> call_index_;
    int seq_ = 0;

    InvokeOutcome dispatch(const ToolDescriptor& tool, const Json& args, bool unchecked);
    InvokeOutcome create_impl(const Iri& cls, const std::string& doc_id,
                              const std::string& label,
                              const std::vector<std::pair<Iri, Json>>& attrs, bool unchecked);
    InvokeOutcome link_impl(const std::string& subject_iri, const Iri& property,
                            const std::string& object_iri, bool unchecked);
    InvokeOutcome set_impl(const std::string& subject_iri, const Iri& property,
                           const Json& value, bool unchecked);
    InvokeOutcome quantity_impl(const ToolDescriptor& tool, const Json& args, bool unchecked);
    void persist(const std::string& tool, const Json& args, const InvokeOutcome& outcome);
};

// Post-hoc exhaustive validation oracle: domain, range, datatype, vocabulary,
// and both cardinality bounds, in deterministic (instance, property) order.
std::vector<ViolationReport> validate_graph(const Graph& graph, const SchemaModel& schema);

}  // namespace ontoforge

#pragma once
// Deterministic scripted agent: replays a tool-call trace against the
// endpoint, enforcing plan group discipline and repairing retryable
// violations from a field-local alias table.

#include <ostream>
#include <string>
#include <vector>

#include "ontoforge/mcp_server.hpp"
#include "ontoforge/plan.hpp"

namespace ontoforge {

struct TraceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EndpointDown : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr int kRetryBudget = 3;  // attempts total per step, first call included

struct TraceStep {
    int iteration_id = 0;
    std::string tool;
    Json args;
};

struct Trace {
    std::vector<TraceStep> steps;  // iteration_ids non-decreasing

    Json to_json() const;
    static Trace from_json(const Json& j);
};

struct RepairTable {
    // field name -> (rejected value -> replacement)
    std::map<std::string, std::map<std::string, std::string>> fields;

    Json to_json() const;
    static RepairTable from_json(const Json& j);
};

struct IterationStats {
    int id = 0;
    int calls_total = 0;
    int calls_ok = 0;
    int violations = 0;
    int repairs_attempted = 0;
    int repairs_succeeded = 0;
    int policy_violations = 0;  // calls skipped by group discipline

    Json to_json() const;
};

struct RunReport {
    int calls_total = 0;
    int calls_ok = 0;
    int violations = 0;
    int repairs_attempted = 0;
    int repairs_succeeded = 0;
    int policy_violations = 0;
    std::string final_status;  // done | incomplete
    std::vector<IterationStats> iterations;

    Json to_json() const;
};

// Field-local single substitution: if the report names a field with an alias
// for the offending value, and the replacement is allowed when the report
// enumerates allowed values, returns args with that one field swapped.
std::optional<Json> apply_repair(const ViolationReport& report, const Json& args,
                                 const RepairTable& repair);

// Replays the trace in order. Calls outside the iteration's tool groups are
// skipped and counted; retryable violations are repaired and retried within
// the budget; finalize runs after the last iteration. When wire_log is set,
// every JSON-RPC response line is appended to it.
RunReport run_plan(const Plan& plan, const Trace& trace, const RepairTable& repair,
                   McpServer& endpoint, std::ostream* wire_log = nullptr);

}  // namespace ontoforge

#include "ontoforge/runner.hpp"

#include <algorithm>

namespace ontoforge {

Json Trace::to_json() const {
    Json steps_json = Json::array();
    for (const auto& s : steps)
        steps_json.push_back(
            Json{{"iteration_id", s.iteration_id}, {"tool", s.tool}, {"args", s.args}});
    return Json{{"steps", steps_json}};
}

Trace Trace::from_json(const Json& j) {
    Trace trace;
    int last_id = 0;
    for (const auto& s : j.at("steps")) {
        TraceStep step;
        step.iteration_id = s.at("iteration_id").get<int>();
        step.tool = s.at("tool").get<std::string>();
        step.args = s.value("args", Json::object());
        if (step.iteration_id < last_id)
            throw TraceError("trace iteration_ids must be non-decreasing");
        last_id = step.iteration_id;
        trace.steps.push_back(std::move(step));
    }
    return trace;
}

Json RepairTable::to_json() const {
    Json out = Json::object();
    for (const auto& [field, aliases] : fields) {
        Json m = Json::object();
        for (const auto& [from, to] : aliases) m[from] = to;
        out[field] = std::move(m);
    }
    return out;
}

RepairTable RepairTable::from_json(const Json& j) {
    RepairTable table;
    for (const auto& [field, aliases] : j.items())
        for (const auto& [from, to] : aliases.items())
            table.fields[field][from] = to.get<std::string>();
    return table;
}

Json IterationStats::to_json() const {
    return Json{{"id", id},
                {"calls_total", calls_total},
                {"calls_ok", calls_ok},
                {"violations", violations},
                {"repairs_attempted", repairs_attempted},
                {"repairs_succeeded", repairs_succeeded},
                {"policy_violations", policy_violations}};
}

Json RunReport::to_json() const {
    Json its = Json::array();
    for (const auto& it : iterations) its.push_back(it.to_json());
    return Json{{"calls_total", calls_total},
                {"calls_ok", calls_ok},
                {"violations", violations},
                {"repairs_attempted", repairs_attempted},
                {"repairs_succeeded", repairs_succeeded},
                {"policy_violations", policy_violations},
                {"final_status", final_status},
                {"iterations", its}};
}

std::optional<Json> apply_repair(const ViolationReport& report, const Json& args,
                                 const RepairTable& repair) {
    if (!report.retryable || !report.field) return std::nullopt;
    auto fit = repair.fields.find(*report.field);
    if (fit == repair.fields.end()) return std::nullopt;
    if (!args.contains(*report.field) || !args.at(*report.field).is_string())
        return std::nullopt;
    auto ait = fit->second.find(args.at(*report.field).get<std::string>());
    if (ait == fit->second.end()) return std::nullopt;
    if (report.allowed_values &&
        std::find(report.allowed_values->begin(), report.allowed_values->end(), ait->second) ==
            report.allowed_values->end())
        return std::nullopt;
    Json amended = args;
    amended[*report.field] = ait->second;
    return amended;
}

namespace {

ViolationReport violation_from_json(const Json& j) {
    ViolationReport report;
    const std::string type = j.value("error_type", "");
    if (type == "DatatypeViolation") report.error_type = ErrorType::DatatypeViolation;
    else if (type == "CardinalityViolation") report.error_type = ErrorType::CardinalityViolation;
    else if (type == "UnknownEntity") report.error_type = ErrorType::UnknownEntity;
    else if (type == "DuplicateCall") report.error_type = ErrorType::DuplicateCall;
    else if (type == "AlreadyAttached") report.error_type = ErrorType::AlreadyAttached;
    else report.error_type = ErrorType::OntologyConstraintViolation;
    if (j.contains("field") && j.at("field").is_string())
        report.field = j.at("field").get<std::string>();
    report.message = j.value("message", "");
    if (j.contains("allowed_values") && j.at("allowed_values").is_array())
        report.allowed_values = j.at("allowed_values").get<std::vector<std::string>>();
    report.retryable = j.value("retryable", false);
    return report;
}

class Rpc {
public:
    Rpc(McpServer& endpoint, std::ostream* wire_log)
        : endpoint_(endpoint), wire_log_(wire_log) {}

    Json call(const std::string& method, Json params) {
        Json request{{"jsonrpc", "2.0"},
                     {"id", next_id_++},
                     {"method", method},
                     {"params", std::move(params)}};
        auto response = endpoint_.handle(request);
        if (!response) throw EndpointDown("no response to " + method);
        if (wire_log_) *wire_log_ << response->dump() << "\n";
        if (response->contains("error"))
            throw EndpointDown("endpoint error on " + method + ": " +
                               response->at("error").dump());
        return response->at("result");
    }

private:
    McpServer& endpoint_;
    std::ostream* wire_log_;
    int next_id_ = 1;
};

// Outcome of one tools/call result envelope.
struct CallOutcome {
    bool ok = false;
    Json body;  // parsed text content
};

CallOutcome parse_call(const Json& result) {
    CallOutcome out;
    out.ok = !result.value("isError", false);
    out.body = Json::parse(result.at("content").at(0).at("text").get<std::string>());
    return out;
}

}  // namespace

RunReport run_plan(const Plan& plan, const Trace& trace, const RepairTable& repair,
                   McpServer& endpoint, std::ostream* wire_log) {
    const ToolSet& toolset = endpoint.session().toolset();

    std::set<std::string> all_groups;
    for (const auto& it : plan.iterations)
        all_groups.insert(it.tool_groups.begin(), it.tool_groups.end());
    for (const auto& step : trace.steps) {
        if (!plan.find_iteration(step.iteration_id))
            throw TraceError("trace references unknown iteration " +
                             std::to_string(step.iteration_id));
        const ToolDescriptor* tool = toolset.find(step.tool);
        if (!tool) throw TraceError("trace references unknown tool " + step.tool);
        if (!all_groups.count(to_string(tool->group)))
            throw TraceError("tool " + step.tool + " belongs to no plan iteration group");
    }

    Rpc rpc(endpoint, wire_log);
    if (!endpoint.initialized())
        rpc.call("initialize", Json{{"protocolVersion", kProtocolVersion}});

    RunReport report;
    std::map<int, IterationStats> stats;
    for (const auto& it : plan.iterations) stats[it.id].id = it.id;
    const int first_iteration = plan.iterations.empty() ? 0 : plan.iterations.front().id;

    for (const auto& step : trace.steps) {
        const PlanIteration& iteration = *plan.find_iteration(step.iteration_id);
        const ToolDescriptor& tool = *toolset.find(step.tool);
        IterationStats& is = stats[iteration.id];

        bool allowed = std::find(iteration.tool_groups.begin(), iteration.tool_groups.end(),
                                 to_string(tool.group)) != iteration.tool_groups.end();
        if (allowed && iteration.id == first_iteration)
            allowed = std::find(iteration.required_tools.begin(),
                                iteration.required_tools.end(),
                                step.tool) != iteration.required_tools.end();
        if (!allowed) {
            ++report.policy_violations;
            ++is.policy_violations;
            continue;
        }

        ++report.calls_total;
        ++is.calls_total;
        Json args = step.args;
        for (int attempt = 1; attempt <= kRetryBudget; ++attempt) {
            CallOutcome outcome = parse_call(
                rpc.call("tools/call", Json{{"name", step.tool}, {"arguments", args}}));
            if (outcome.ok) {
                ++report.calls_ok;
                ++is.calls_ok;
                if (attempt > 1) {
                    ++report.repairs_succeeded;
                    ++is.repairs_succeeded;
                }
                break;
            }
            ++report.violations;
            ++is.violations;
            Json first = outcome.body;
            if (first.is_array()) first = first.empty() ? Json() : first.at(0);
            if (attempt == kRetryBudget || !first.is_object()) break;
            ViolationReport violation = violation_from_json(first);
            auto amended = apply_repair(violation, args, repair);
            if (!amended) break;
            ++report.repairs_attempted;
            ++is.repairs_attempted;
            args = *amended;
        }
    }

    CallOutcome fin =
        parse_call(rpc.call("tools/call", Json{{"name", "finalize"}, {"arguments", Json::object()}}));
    report.final_status =
        fin.ok && fin.body.value("status", "") == "done" ? "done" : "incomplete";

    for (const auto& [id, is] : stats) report.iterations.push_back(is);
    return report;
}

}  // namespace ontoforge

#pragma once
// Static 3-iteration JSON plan driving plan-runner execution.

#include <stdexcept>
#include <string>
#include <vector>

#include "ontoforge/tools.hpp"

namespace ontoforge {

struct PlanError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PlanIteration {
    int id = 0;
    std::string goal;
    std::string extraction_instruction;
    std::string kg_instruction;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::vector<Json> sub_iterations;  // always empty here; kept for the file shape
    std::vector<std::string> tool_groups;
    std::vector<std::string> required_tools;
};

struct Plan {
    std::vector<PlanIteration> iterations;

    const PlanIteration* find_iteration(int id) const;
};

Plan generate_plan(const SchemaModel& schema, const ToolSet& toolset);

Json plan_to_json(const Plan& plan);
Plan plan_from_json(const Json& j);

}  // namespace ontoforge

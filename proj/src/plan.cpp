#include "ontoforge/plan.hpp"

#include <algorithm>

namespace ontoforge {

const PlanIteration* Plan::find_iteration(int id) const {
    for (const auto& it : iterations)
        if (it.id == id) return &it;
    return nullptr;
}

namespace {

std::string class_comments(const SchemaModel& schema, bool top_only) {
    std::string out;
    for (const auto& [iri, cls] : schema.classes) {
        if (top_only && !cls.is_top_entity) continue;
        if (schema.is_vocabulary_range(iri)) continue;
        if (!cls.comment) continue;
        if (!out.empty()) out += " ";
        out += cls.local + ": " + *cls.comment;
    }
    return out;
}

}  // namespace

Plan generate_plan(const SchemaModel& schema, const ToolSet& toolset) {
    auto top = schema.top_entity();
    if (!top) throw PlanError("no class is flagged as top entity");
    const std::string top_local = schema.classes.at(*top).local;

    Plan plan;

    PlanIteration it1;
    it1.id = 1;
    it1.goal = "Create top-level " + top_local + " entities";
    it1.extraction_instruction =
        "Identify every " + top_local +
        " described in the document; do not extract related entities. " +
        class_comments(schema, true);
    it1.kg_instruction =
        "Create top-level entities only, no related entities. Use check_existing tools "
        "before creating and reuse matching instances.";
    it1.inputs = {"paper_text", "store"};
    it1.outputs = {"store", "run_log"};
    it1.tool_groups = {"entity_creation"};
    for (const auto& tool : toolset.tools)
        if (tool.binding == ToolBinding::create && tool.bound == *top)
            it1.required_tools.push_back(tool.name);

    PlanIteration it2;
    it2.id = 2;
    it2.goal = "Create related entities and set attributes";
    it2.extraction_instruction =
        "Extract the entities and attribute values related to each " + top_local + ". " +
        class_comments(schema, false);
    it2.kg_instruction =
        "Create related entities and set validated attribute values on existing instances.";
    it2.inputs = {"paper_text", "store"};
    it2.outputs = {"store", "run_log"};
    it2.tool_groups = {"entity_creation", "completion"};
    for (const auto& tool : toolset.tools) {
        if (tool.binding == ToolBinding::create && tool.bound != *top)
            it2.required_tools.push_back(tool.name);
        if (tool.binding == ToolBinding::set || tool.binding == ToolBinding::quantity)
            it2.required_tools.push_back(tool.name);
    }

    PlanIteration it3;
    it3.id = 3;
    it3.goal = "Link instances and finalize";
    it3.extraction_instruction =
        "Identify the relations between previously created instances.";
    it3.kg_instruction =
        "Link existing instances, complete remaining attributes, then finalize the run.";
    it3.inputs = {"paper_text", "store"};
    it3.outputs = {"store", "run_log"};
    it3.tool_groups = {"linking", "completion"};
    for (const auto& tool : toolset.tools)
        if (tool.binding == ToolBinding::link || tool.binding == ToolBinding::finalize)
            it3.required_tools.push_back(tool.name);

    plan.iterations = {std::move(it1), std::move(it2), std::move(it3)};

    for (const auto& it : plan.iterations)
        for (const auto& name : it.required_tools)
            if (!toolset.find(name)) throw PlanError("required tool missing: " + name);
    return plan;
}

Json plan_to_json(const Plan& plan) {
    Json iterations = Json::array();
    for (const auto& it : plan.iterations) {
        iterations.push_back(Json{{"id", it.id},
                                  {"goal", it.goal},
                                  {"extraction_instruction", it.extraction_instruction},
                                  {"kg_instruction", it.kg_instruction},
                                  {"inputs", it.inputs},
                                  {"outputs", it.outputs},
                                  {"sub_iterations", it.sub_iterations},
                                  {"tool_groups", it.tool_groups},
                                  {"required_tools", it.required_tools}});
    }
    return Json{{"iterations", iterations}};
}

Plan plan_from_json(const Json& j) {
    Plan plan;
    int prev_id = 0;
    for (const auto& entry : j.at("iterations")) {
        PlanIteration it;
        it.id = entry.at("id").get<int>();
        if (it.id <= prev_id) throw PlanError("iteration ids must be strictly increasing");
        prev_id = it.id;
        it.goal = entry.at("goal").get<std::string>();
        it.extraction_instruction = entry.at("extraction_instruction").get<std::string>();
        it.kg_instruction = entry.at("kg_instruction").get<std::string>();
        it.inputs = entry.at("inputs").get<std::vector<std::string>>();
        it.outputs = entry.at("outputs").get<std::vector<std::string>>();
        for (const auto& sub : entry.at("sub_iterations")) it.sub_iterations.push_back(sub);
        it.tool_groups = entry.at("tool_groups").get<std::vector<std::string>>();
        it.required_tools = entry.at("required_tools").get<std::vector<std::string>>();
        plan.iterations.push_back(std::move(it));
    }
    return plan;
}

}  // namespace ontoforge

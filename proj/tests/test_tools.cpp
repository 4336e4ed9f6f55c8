#include <doctest.h>

#include "helpers.hpp"
#include "ontoforge/tools.hpp"
#include "ontoforge/turtle.hpp"

using namespace ontoforge;

TEST_CASE("snake_case splits case boundaries and non-alphanumerics") {
    CHECK(snake_case("HeatChillStep") == "heat_chill_step");
    CHECK(snake_case("hasStepNumber") == "has_step_number");
    CHECK(snake_case("Foo-Bar") == "foo_bar");
    CHECK(snake_case("Foo_Bar") == "foo_bar");
    CHECK(snake_case("already_snake") == "already_snake");
}

TEST_CASE("fixture toolset: hand-frozen inventory") {
    ToolSet toolset = testutil::fixture_toolset();
    std::map<ToolBinding, int> per_binding;
    for (const auto& t : toolset.tools) ++per_binding[t.binding];
    CHECK(per_binding[ToolBinding::create] == 5);
    CHECK(per_binding[ToolBinding::check_existing] == 5);
    CHECK(per_binding[ToolBinding::link] == 3);
    CHECK(per_binding[ToolBinding::set] == 4);
    CHECK(per_binding[ToolBinding::quantity] == 1);
    CHECK(per_binding[ToolBinding::finalize] == 1);
    CHECK(toolset.tools.size() == 19);
    CHECK(toolset.find("create_synthesis") != nullptr);
    CHECK(toolset.find("create_temperature_quantity") != nullptr);
    // Vocabulary-range classes get no creation tools.
    CHECK(toolset.find("create_unit") == nullptr);
}

TEST_CASE("tool names are unique and well-formed") {
    ToolSet toolset = testutil::fixture_toolset();
    std::set<std::string> names;
    for (const auto& t : toolset.tools) {
        CHECK(names.insert(t.name).second);
        CHECK(t.name.find_first_not_of("abcdefghijklmnopqrstuvwxyz0123456789_") ==
              std::string::npos);
    }
}

TEST_CASE("every class and property is bound by at least one tool") {
    auto tbox = testutil::fixture_tbox();
    SchemaModel schema = extract_schema(tbox);
    ToolSet toolset = compile_tools(schema, tbox);
    std::set<Iri> bound;
    for (const auto& t : toolset.tools)
        if (t.bound) bound.insert(*t.bound);
    for (const auto& [iri, def] : schema.classes)
        if (!schema.is_vocabulary_range(iri)) CHECK(bound.count(iri) == 1);
    for (const auto& [iri, def] : schema.properties) CHECK(bound.count(iri) == 1);
}

TEST_CASE("create tools take doc_id, label, and optional attribute args") {
    ToolSet toolset = testutil::fixture_toolset();
    const ToolDescriptor* create = toolset.find("create_heat_chill_step");
    REQUIRE(create != nullptr);
    std::map<std::string, const ArgumentSpec*> args;
    for (const auto& a : create->arguments) args[a.name] = &a;
    REQUIRE(args.count("doc_id"));
    REQUIRE(args.count("label"));
    REQUIRE(args.count("has_step_number"));
    CHECK(args["doc_id"]->required);
    CHECK(args["label"]->required);
    CHECK_FALSE(args["has_step_number"]->required);
    CHECK(args["has_step_number"]->kind == ValueKind::integer);
}

TEST_CASE("quantity tool carries the vocabulary enum") {
    ToolSet toolset = testutil::fixture_toolset();
    const ToolDescriptor* quantity = toolset.find("create_temperature_quantity");
    REQUIRE(quantity != nullptr);
    CHECK(quantity->group == ToolGroup::completion);
    const ArgumentSpec* unit = nullptr;
    for (const auto& a : quantity->arguments)
        if (a.name == "unit") unit = &a;
    REQUIRE(unit != nullptr);
    CHECK(unit->kind == ValueKind::enum_);
    CHECK(unit->enum_labels == std::vector<std::string>{"degree Celsius", "kelvin"});
}

TEST_CASE("tool docs carry the source rdfs:comment verbatim") {
    auto tbox = testutil::fixture_tbox();
    SchemaModel schema = extract_schema(tbox);
    ToolSet toolset = compile_tools(schema, tbox);
    const auto& comment = schema.classes.at(testutil::onto("Synthesis")).comment;
    REQUIRE(comment.has_value());
    CHECK(toolset.find("create_synthesis")->doc.find(*comment) != std::string::npos);
}

TEST_CASE("minimal schema compiles to create/check/finalize only") {
    Graph tbox = parse_turtle(
        "@prefix ex: <http://ex.org/> .\n"
        "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
        "ex:X a owl:Class .");
    ToolSet toolset = compile_tools(extract_schema(tbox), tbox);
    std::set<std::string> names;
    for (const auto& t : toolset.tools) names.insert(t.name);
    CHECK(names == std::set<std::string>{"create_x", "check_existing_x", "finalize"});
}

TEST_CASE("snake-case collisions are a CompileError") {
    Graph tbox = parse_turtle(
        "@prefix ex: <http://ex.org/> .\n"
        "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
        "ex:Foo-Bar a owl:Class .\n"
        "ex:Foo_Bar a owl:Class .");
    CHECK_THROWS_AS(compile_tools(extract_schema(tbox), tbox), CompileError);
}

TEST_CASE("manifest shape and enum content") {
    ToolSet toolset = testutil::fixture_toolset();
    Json manifest = emit_manifest(toolset);
    CHECK(manifest.at("schema_fingerprint") == toolset.schema_fingerprint);
    const Json* quantity = nullptr;
    for (const auto& t : manifest.at("tools"))
        if (t.at("name") == "create_temperature_quantity") quantity = &t;
    REQUIRE(quantity != nullptr);
    CHECK(quantity->at("input_schema").at("properties").at("unit").at("enum") ==
          Json::array({"degree Celsius", "kelvin"}));
    CHECK(quantity->at("input_schema").at("required") == Json::array({"value", "unit"}));
}

TEST_CASE("input_schema maps each value kind") {
    ToolSet toolset = testutil::fixture_toolset();
    Json link = input_schema_json(*toolset.find("link_has_step"));
    CHECK(link.at("properties").at("subject_iri").at("type") == "string");
    CHECK(link.at("properties").at("subject_iri").at("format") == "iri");
    Json set_num = input_schema_json(*toolset.find("set_has_step_number"));
    CHECK(set_num.at("properties").at("value").at("type") == "integer");
    Json set_yield = input_schema_json(*toolset.find("set_has_yield"));
    CHECK(set_yield.at("properties").at("value").at("type") == "number");
}

TEST_CASE("manifest emission is byte-identical across runs") {
    auto tbox = testutil::fixture_tbox();
    auto emit = [&] {
        return emit_manifest(compile_tools(extract_schema(tbox), tbox)).dump();
    };
    CHECK(emit() == emit());
}

TEST_CASE("fingerprint is stable and input-sensitive") {
    CHECK(fingerprint("abc") == fingerprint("abc"));
    CHECK(fingerprint("abc") != fingerprint("abd"));
    CHECK(fingerprint("").size() == 16);
}

#include <doctest.h>

#include <filesystem>

#include "helpers.hpp"
#include "ontoforge/runtime.hpp"
#include "ontoforge/turtle.hpp"

using namespace ontoforge;
using testutil::om;
using testutil::onto;

namespace {

Session make_session(bool feedback = true, std::string workdir = {}) {
    auto tbox = testutil::fixture_tbox();
    SchemaModel schema = extract_schema(tbox);
    ToolSet toolset = compile_tools(schema, tbox);
    return Session(Graph{}, std::move(schema), std::move(toolset), Iri(testutil::kMintBase),
                   testutil::kDocId, feedback, std::move(workdir));
}

Json create_args(const std::string& label) {
    return Json{{"doc_id", testutil::kDocId}, {"label", label}};
}

}  // namespace

TEST_CASE("create mints deterministic IRIs and reuses by label") {
    Session s = make_session();
    auto first = s.invoke("create_synthesis", create_args("S1"));
    REQUIRE(first.ok);
    CHECK(first.result.status == "created");
    CHECK(first.result.instance_iri->value ==
          "http://example.org/kg/10.1039.C5DT04764A/Synthesis_1");

    auto again = s.invoke("create_synthesis", Json{{"doc_id", "otherdoc"}, {"label", " s1 "}});
    REQUIRE(again.ok);
    CHECK(again.result.status == "reused");
    CHECK(again.result.instance_iri == first.result.instance_iri);
}

TEST_CASE("create validates doc_id") {
    Session s = make_session();
    auto out = s.invoke("create_synthesis", Json{{"doc_id", "a/b"}, {"label", "x"}});
    REQUIRE_FALSE(out.ok);
    CHECK(out.violations[0].error_type == ErrorType::DatatypeViolation);
    CHECK(out.violations[0].field == std::optional<std::string>("doc_id"));
}

TEST_CASE("create with attributes is all-or-nothing") {
    Session s = make_session();
    std::string before = serialize_turtle(s.graph());

    Json bad = create_args("step one");
    bad["has_step_number"] = "one";
    auto out = s.invoke("create_step", bad);
    REQUIRE_FALSE(out.ok);
    CHECK(out.violations[0].error_type == ErrorType::DatatypeViolation);
    CHECK(out.violations[0].field == std::optional<std::string>("has_step_number"));
    CHECK(serialize_turtle(s.graph()) == before);

    Json good = create_args("step one");
    good["has_step_number"] = "1";
    auto ok = s.invoke("create_step", good);
    REQUIRE(ok.ok);
    CHECK(s.graph().contains(Triple{*ok.result.instance_iri, Term{onto("hasStepNumber")},
                                    Literal{"1", xsd::integer_}}));
}

TEST_CASE("attribute outside the class domain reports OntologyConstraintViolation first") {
    Session s = make_session();
    Json args = create_args("s");
    args["has_yield"] = "high";  // hasYield: domain Synthesis, range xsd:double
    auto out = s.invoke("create_step", args);
    REQUIRE_FALSE(out.ok);
    CHECK(out.violations[0].error_type == ErrorType::OntologyConstraintViolation);
    CHECK(out.violations[0].field == std::optional<std::string>("has_yield"));
}

TEST_CASE("quantity repair trace: attempt 1 rejected, attempt 2 created") {
    Session s = make_session();
    auto rejected = s.invoke("create_temperature_quantity", Json{{"value", 120}, {"unit", "C"}});
    REQUIRE_FALSE(rejected.ok);
    const ViolationReport& v = rejected.violations[0];
    CHECK(v.error_type == ErrorType::OntologyConstraintViolation);
    CHECK(v.field == std::optional<std::string>("unit"));
    CHECK(v.message == "Unit value 'C' is not permitted by the ontology.");
    CHECK(v.allowed_values ==
          std::optional<std::vector<std::string>>({"degree Celsius", "kelvin"}));
    CHECK(v.retryable);

    auto ok = s.invoke("create_temperature_quantity",
                       Json{{"value", 120}, {"unit", "degree Celsius"}});
    REQUIRE(ok.ok);
    CHECK(ok.result.status == "created");
    CHECK(s.graph().contains(Triple{*ok.result.instance_iri, Term{onto("hasUnit")},
                                    om("degreeCelsius")}));
}

TEST_CASE("repeating an identical successful call is a DuplicateCall") {
    Session s = make_session();
    Json args = Json{{"value", 120}, {"unit", "degree Celsius"}};
    REQUIRE(s.invoke("create_temperature_quantity", args).ok);
    auto dup = s.invoke("create_temperature_quantity", args);
    REQUIRE_FALSE(dup.ok);
    CHECK(dup.violations[0].error_type == ErrorType::DuplicateCall);
    CHECK_FALSE(dup.violations[0].retryable);
}

TEST_CASE("argument order does not defeat the duplicate guard") {
    Session s = make_session();
    REQUIRE(s.invoke("create_synthesis",
                     Json::parse(R"({"doc_id":"d1","label":"X"})")).ok);
    auto dup = s.invoke("create_synthesis", Json::parse(R"({"label":"X","doc_id":"d1"})"));
    REQUIRE_FALSE(dup.ok);
    CHECK(dup.violations[0].error_type == ErrorType::DuplicateCall);
}

TEST_CASE("query tools are exempt from the duplicate guard") {
    Session s = make_session();
    REQUIRE(s.invoke("create_synthesis", create_args("S1")).ok);
    Json q{{"label", "S1"}};
    auto first = s.invoke("check_existing_synthesis", q);
    auto second = s.invoke("check_existing_synthesis", q);
    REQUIRE(first.ok);
    REQUIRE(second.ok);
    REQUIRE(second.result.matches.size() == 1);
}

TEST_CASE("link enforces existence, domain, range, and duplication") {
    Session s = make_session();
    auto syn = s.invoke("create_synthesis", create_args("S1"));
    auto step = s.invoke("create_heat_chill_step", create_args("step"));
    auto chem = s.invoke("create_chemical_input", create_args("DMF"));
    REQUIRE(syn.ok);
    REQUIRE(step.ok);
    REQUIRE(chem.ok);
    const std::string syn_iri = syn.result.instance_iri->value;
    const std::string step_iri = step.result.instance_iri->value;
    const std::string chem_iri = chem.result.instance_iri->value;

    // HeatChillStep satisfies the Step range through the subclass closure.
    auto linked = s.invoke("link_has_step",
                           Json{{"subject_iri", syn_iri}, {"object_iri", step_iri}});
    REQUIRE(linked.ok);
    CHECK(linked.result.status == "attached");

    // The identical tool call is caught by the duplicate-call guard before the
    // store is consulted; the semantic entry point reports the existing triple.
    auto dup = s.invoke("link_has_step",
                        Json{{"subject_iri", syn_iri}, {"object_iri", step_iri}});
    REQUIRE_FALSE(dup.ok);
    CHECK(dup.violations[0].error_type == ErrorType::DuplicateCall);

    auto attached = s.link(syn_iri, testutil::onto("hasStep"), step_iri);
    REQUIRE_FALSE(attached.ok);
    CHECK(attached.violations[0].error_type == ErrorType::AlreadyAttached);

    auto wrong_range = s.invoke("link_has_step",
                                Json{{"subject_iri", syn_iri}, {"object_iri", chem_iri}});
    REQUIRE_FALSE(wrong_range.ok);
    CHECK(wrong_range.violations[0].error_type == ErrorType::OntologyConstraintViolation);
    CHECK(wrong_range.violations[0].field == std::optional<std::string>("object_iri"));

    auto ghost = s.invoke("link_has_step",
                          Json{{"subject_iri", syn_iri},
                               {"object_iri", "http://example.org/kg/doc/Step_99"}});
    REQUIRE_FALSE(ghost.ok);
    CHECK(ghost.violations[0].error_type == ErrorType::UnknownEntity);
    CHECK(ghost.violations[0].field == std::optional<std::string>("object_iri"));

    auto wrong_domain = s.invoke("link_has_temperature",
                                 Json{{"subject_iri", chem_iri}, {"object_iri", step_iri}});
    REQUIRE_FALSE(wrong_domain.ok);
    CHECK(wrong_domain.violations[0].field == std::optional<std::string>("subject_iri"));
}

TEST_CASE("set_attribute: parse, enum, and max-cardinality checks") {
    Session s = make_session();
    auto step = s.invoke("create_step", create_args("step"));
    REQUIRE(step.ok);
    const std::string step_iri = step.result.instance_iri->value;

    auto ok = s.invoke("set_has_step_number", Json{{"subject_iri", step_iri}, {"value", "1"}});
    REQUIRE(ok.ok);

    auto bad = s.invoke("set_has_step_number", Json{{"subject_iri", step_iri}, {"value", "one"}});
    REQUIRE_FALSE(bad.ok);
    CHECK(bad.violations[0].error_type == ErrorType::DatatypeViolation);

    auto over = s.invoke("set_has_step_number", Json{{"subject_iri", step_iri}, {"value", "2"}});
    REQUIRE_FALSE(over.ok);
    CHECK(over.violations[0].error_type == ErrorType::CardinalityViolation);

    auto temp = s.invoke("create_temperature", create_args("t"));
    REQUIRE(temp.ok);
    auto enum_bad = s.invoke(
        "set_has_unit", Json{{"subject_iri", temp.result.instance_iri->value}, {"value", "C"}});
    REQUIRE_FALSE(enum_bad.ok);
    CHECK(enum_bad.violations[0].error_type == ErrorType::OntologyConstraintViolation);
    CHECK(enum_bad.violations[0].allowed_values ==
          std::optional<std::vector<std::string>>({"degree Celsius", "kelvin"}));

    auto enum_ok = s.invoke(
        "set_has_unit",
        Json{{"subject_iri", temp.result.instance_iri->value}, {"value", "kelvin"}});
    REQUIRE(enum_ok.ok);
    CHECK(s.graph().contains(
        Triple{*temp.result.instance_iri, Term{onto("hasUnit")}, om("kelvin")}));
}

TEST_CASE("finalize evaluates min-cardinality rules") {
    Session s = make_session();
    CHECK(s.finalize().ok);  // empty graph: vacuous

    auto syn = s.invoke("create_synthesis", create_args("S1"));
    REQUIRE(syn.ok);
    auto incomplete = s.finalize();
    REQUIRE_FALSE(incomplete.ok);
    REQUIRE(incomplete.violations.size() == 1);
    CHECK(incomplete.violations[0].error_type == ErrorType::CardinalityViolation);
    CHECK(incomplete.violations[0].message.find(syn.result.instance_iri->value) !=
          std::string::npos);
    CHECK(incomplete.violations[0].message.find("hasStep") != std::string::npos);

    auto step = s.invoke("create_step", create_args("step"));
    REQUIRE(step.ok);
    REQUIRE(s.invoke("link_has_step",
                     Json{{"subject_iri", syn.result.instance_iri->value},
                          {"object_iri", step.result.instance_iri->value}}).ok);
    auto done = s.finalize();
    REQUIRE(done.ok);
    CHECK(done.result.status == "done");
}

TEST_CASE("violations never mutate the graph") {
    Session s = make_session();
    REQUIRE(s.invoke("create_synthesis", create_args("S1")).ok);
    std::string before = serialize_turtle(s.graph());
    s.invoke("create_temperature_quantity", Json{{"value", 120}, {"unit", "C"}});
    s.invoke("link_has_step", Json{{"subject_iri", "http://x.org/a"},
                                   {"object_iri", "http://x.org/b"}});
    s.invoke("set_has_step_number", Json{{"subject_iri", "http://x.org/a"}, {"value", "1"}});
    CHECK(serialize_turtle(s.graph()) == before);
}

TEST_CASE("missing required arguments raise invalid_argument") {
    Session s = make_session();
    CHECK_THROWS_AS(s.invoke("create_synthesis", Json{{"label", "x"}}), std::invalid_argument);
    CHECK_THROWS_AS(s.invoke("no_such_tool", Json::object()), UnknownToolError);
}

TEST_CASE("ablation mode accepts ontology violations but keeps datatype parsing") {
    Session s = make_session(false);
    auto unit = s.invoke("create_temperature_quantity", Json{{"value", 25}, {"unit", "C"}});
    REQUIRE(unit.ok);  // silently accepted
    CHECK(s.graph().contains(
        Triple{*unit.result.instance_iri, Term{onto("hasUnit")}, Literal{"C"}}));

    auto bad_value = s.invoke("create_temperature_quantity",
                              Json{{"value", "hot"}, {"unit", "kelvin"}});
    REQUIRE_FALSE(bad_value.ok);  // datatype parsing retained
    CHECK(bad_value.violations[0].error_type == ErrorType::DatatypeViolation);

    auto violations = validate_graph(s.graph(), s.schema());
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].error_type == ErrorType::OntologyConstraintViolation);
}

TEST_CASE("force_apply admits rejected calls for the post-hoc oracle") {
    Session s = make_session();
    auto rejected = s.invoke("create_temperature_quantity", Json{{"value", 120}, {"unit", "C"}});
    REQUIRE_FALSE(rejected.ok);
    CHECK(validate_graph(s.graph(), s.schema()).empty());
    s.force_apply("create_temperature_quantity", Json{{"value", 120}, {"unit", "C"}});
    CHECK_FALSE(validate_graph(s.graph(), s.schema()).empty());
}

TEST_CASE("validate_graph covers all rule families deterministically") {
    SchemaModel schema = testutil::fixture_schema();
    Graph g;
    Iri syn("http://example.org/kg/d/Synthesis_1");
    Iri step("http://example.org/kg/d/Step_1");
    Iri chem("http://example.org/kg/d/ChemicalInput_1");
    g.add(Triple{syn, Term{rdf_ns::type}, onto("Synthesis")});
    g.add(Triple{step, Term{rdf_ns::type}, onto("Step")});
    g.add(Triple{chem, Term{rdf_ns::type}, onto("ChemicalInput")});
    g.add(Triple{syn, Term{onto("hasStep")}, chem});                          // range
    g.add(Triple{step, Term{onto("hasStepNumber")}, Literal{"one"}});         // datatype
    g.add(Triple{step, Term{onto("hasStepNumber")}, Literal{"1", xsd::integer_}});
    g.add(Triple{step, Term{onto("hasStepNumber")}, Literal{"2", xsd::integer_}});  // max
    g.add(Triple{chem, Term{onto("hasYield")}, Literal{"0.5", xsd::double_}});  // domain

    auto violations = validate_graph(g, schema);
    CHECK(violations.size() >= 4);
    std::set<ErrorType> seen;
    for (const auto& v : violations) seen.insert(v.error_type);
    CHECK(seen.count(ErrorType::OntologyConstraintViolation));
    CHECK(seen.count(ErrorType::DatatypeViolation));
    CHECK(seen.count(ErrorType::CardinalityViolation));

    auto rerun = validate_graph(g, schema);
    REQUIRE(rerun.size() == violations.size());
    for (size_t i = 0; i < rerun.size(); ++i) CHECK(rerun[i].message == violations[i].message);
    CHECK(validate_graph(Graph{}, schema).empty());
}

TEST_CASE("successful calls persist the store and append the run log") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "ontoforge_runtime_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    {
        Session s = make_session(true, dir.string());
        REQUIRE(s.invoke("create_synthesis", create_args("S1")).ok);
        s.invoke("create_temperature_quantity", Json{{"value", 1}, {"unit", "C"}});
    }
    fs::path store = dir / (std::string(testutil::kDocId) + ".ttl");
    fs::path log = dir / (std::string(testutil::kDocId) + ".log.jsonl");
    REQUIRE(fs::exists(store));
    REQUIRE(fs::exists(log));
    Graph persisted = parse_turtle(testutil::slurp(store.string()));
    CHECK(persisted.size() == 2);
    std::istringstream lines(testutil::slurp(log.string()));
    std::string line;
    int entries = 0;
    while (std::getline(lines, line)) {
        Json entry = Json::parse(line);
        CHECK(entry.contains("seq"));
        CHECK(entry.contains("tool"));
        CHECK(entry.contains("args"));
        CHECK(entry.contains("outcome"));
        ++entries;
    }
    CHECK(entries == 2);
    fs::remove_all(dir);
}

TEST_CASE("replay determinism: same call sequence, same store bytes") {
    auto run = [] {
        Session s = make_session();
        s.invoke("create_synthesis", create_args("S1"));
        s.invoke("create_heat_chill_step", create_args("step"));
        s.invoke("create_temperature_quantity", Json{{"value", 120}, {"unit", "C"}});
        s.invoke("create_temperature_quantity",
                 Json{{"value", 120}, {"unit", "degree Celsius"}});
        return serialize_turtle(s.graph());
    };
    CHECK(run() == run());
}

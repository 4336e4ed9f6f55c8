#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ontoforge/eval.hpp"
#include "ontoforge/grounder.hpp"
#include "ontoforge/mcp_server.hpp"
#include "ontoforge/plan.hpp"
#include "ontoforge/runner.hpp"
#include "ontoforge/turtle.hpp"

namespace fs = std::filesystem;
using namespace ontoforge;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

Json load_json(const std::string& path) { return Json::parse(slurp(path)); }

std::set<Iri> iri_set(const std::vector<std::string>& values) {
    std::set<Iri> out;
    for (const auto& v : values) out.insert(Iri(v));
    return out;
}

std::shared_ptr<Session> make_session(const std::string& tbox_path, const std::string& doc_id,
                                      const std::string& workdir, bool feedback,
                                      const std::string& mint_base) {
    Graph tbox = parse_turtle(slurp(tbox_path));
    SchemaModel schema = extract_schema(tbox);
    ToolSet toolset = compile_tools(schema, tbox);
    Graph store;
    if (!workdir.empty()) {
        fs::create_directories(workdir);
        fs::path persisted = fs::path(workdir) / (doc_id + ".ttl");
        if (fs::exists(persisted)) store = parse_turtle(slurp(persisted.string()));
    }
    return std::make_shared<Session>(std::move(store), std::move(schema), std::move(toolset),
                                     Iri(mint_base), doc_id, feedback, workdir);
}

int cmd_compile(const std::string& tbox_path, const std::string& out_dir) {
    Graph tbox = parse_turtle(slurp(tbox_path));
    SchemaModel schema = extract_schema(tbox);
    ToolSet toolset = compile_tools(schema, tbox);
    Plan plan = generate_plan(schema, toolset);
    fs::create_directories(out_dir);
    spit((fs::path(out_dir) / "manifest.json").string(), emit_manifest(toolset).dump(2) + "\n");
    spit((fs::path(out_dir) / "plan.json").string(), plan_to_json(plan).dump(2) + "\n");
    std::cout << "wrote " << out_dir << "/manifest.json and " << out_dir << "/plan.json\n";
    return 0;
}

int cmd_evaluate(const std::string& pred_dir, const std::string& gold_dir,
                 const std::vector<std::string>& schema_paths, const std::string& metrics_path,
                 const std::string& csv_path) {
    std::map<std::string, Counts> per_category;
    std::map<std::string, Counts> per_paper;
    std::map<std::string, Counts> per_slot;
    std::ostringstream csv;
    csv << "DOI,Category,TP,FP,FN,Precision,Recall,F1\n";
    csv.setf(std::ios::fixed);
    csv.precision(3);

    for (const auto& schema_path : schema_paths) {
        RecordSchema schema = RecordSchema::from_json(load_json(schema_path));
        fs::path gold_cat = fs::path(gold_dir) / schema.category;
        if (!fs::is_directory(gold_cat)) gold_cat = gold_dir;
        fs::path pred_cat = fs::path(pred_dir) / schema.category;
        if (!fs::is_directory(pred_cat)) pred_cat = pred_dir;

        std::vector<fs::path> gold_files;
        for (const auto& entry : fs::directory_iterator(gold_cat))
            if (entry.path().extension() == ".json") gold_files.push_back(entry.path());
        std::sort(gold_files.begin(), gold_files.end());

        for (const auto& gold_file : gold_files) {
            const std::string doi = gold_file.stem().string();
            std::vector<Record> gold = records_from_json(load_json(gold_file.string()));
            std::vector<Record> pred;
            fs::path pred_file = pred_cat / gold_file.filename();
            if (fs::exists(pred_file)) pred = records_from_json(load_json(pred_file.string()));

            MatchResult match = match_records(pred, gold, schema);
            per_category[schema.category] += match.counts;
            per_paper[doi] += match.counts;
            for (const auto& [slot, c] : match.per_slot)
                per_slot[schema.category + "." + slot] += c;

            Metrics m = score(match.counts);
            csv << doi << "," << schema.category << "," << match.counts.tp << ","
                << match.counts.fp << "," << match.counts.fn << "," << m.precision << ","
                << m.recall << "," << m.f1 << "\n";
        }
    }

    auto [micro, macro] = aggregate(per_category);
    Json metrics;
    Json cats = Json::object();
    for (const auto& [category, counts] : per_category) {
        Metrics m = score(counts);
        cats[category] = Json{{"tp", counts.tp},       {"fp", counts.fp},
                              {"fn", counts.fn},       {"precision", m.precision},
                              {"recall", m.recall},    {"f1", m.f1}};
    }
    metrics["categories"] = cats;
    metrics["micro"] =
        Json{{"precision", micro.precision}, {"recall", micro.recall}, {"f1", micro.f1}};
    metrics["macro"] =
        Json{{"precision", macro.precision}, {"recall", macro.recall}, {"f1", macro.f1}};
    metrics["error_anatomy"] = error_anatomy(per_slot, per_paper);

    spit(metrics_path, metrics.dump(2) + "\n");
    spit(csv_path, csv.str());
    std::cout << "wrote " << metrics_path << " and " << csv_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ontology-to-tools knowledge graph pipeline"};
    app.require_subcommand(1);

    std::string tbox_path, out_dir = "out";
    auto* compile = app.add_subcommand("compile", "compile a T-Box into manifest.json and plan.json");
    compile->add_option("--tbox", tbox_path, "T-Box Turtle file")->required();
    compile->add_option("--out", out_dir, "output directory");

    std::string doc_id, workdir, mint_base = "http://example.org/kg/";
    bool no_feedback = false;
    auto* serve = app.add_subcommand("serve", "serve the compiled tools over stdio JSON-RPC");
    serve->add_option("--tbox", tbox_path, "T-Box Turtle file")->required();
    serve->add_option("--doc-id", doc_id, "document id (dotted DOI form)")->required();
    serve->add_option("--workdir", workdir, "store/log directory");
    serve->add_option("--mint-base", mint_base, "IRI base for minted instances");
    serve->add_flag("--no-feedback", no_feedback, "disable constraint feedback");

    std::string reference_path, endpoint_url, index_path = "index.json";
    std::vector<std::string> class_iris, predicate_iris;
    auto* build_index = app.add_subcommand("build-index", "build a grounding label index");
    build_index->add_option("--reference", reference_path, "reference Turtle file");
    build_index->add_option("--endpoint", endpoint_url, "SPARQL endpoint URL");
    build_index->add_option("--classes", class_iris, "class IRIs to index")->required();
    build_index->add_option("--predicates", predicate_iris, "label predicate IRIs");
    build_index->add_option("--out", index_path, "index output file");

    std::string in_path, mode_name = "sameas", grounded_out, map_out;
    double tau = kDefaultTau;
    auto* ground = app.add_subcommand("ground", "ground local instances against an index");
    ground->add_option("--in", in_path, "input Turtle file")->required();
    ground->add_option("--index", index_path, "label index file")->required();
    ground->add_option("--mode", mode_name, "sameas|rewrite");
    ground->add_option("--tau", tau, "similarity threshold");
    ground->add_option("--classes", class_iris, "class IRIs to ground")->required();
    ground->add_option("--out", grounded_out, "grounded Turtle output");
    ground->add_option("--map-out", map_out, "grounding map JSON output");

    std::string plan_path, trace_path, repairs_path, report_path;
    auto* run = app.add_subcommand("run-plan", "replay a trace through the endpoint");
    run->add_option("--plan", plan_path, "plan JSON")->required();
    run->add_option("--trace", trace_path, "trace JSON")->required();
    run->add_option("--repairs", repairs_path, "repair table JSON");
    run->add_option("--tbox", tbox_path, "T-Box Turtle file")->required();
    run->add_option("--doc-id", doc_id, "document id")->required();
    run->add_option("--workdir", workdir, "store/log directory");
    run->add_option("--mint-base", mint_base, "IRI base for minted instances");
    run->add_option("--report", report_path, "run report JSON output");
    run->add_flag("--no-feedback", no_feedback, "disable constraint feedback");

    std::string graph_path, schema_path, records_out;
    auto* project = app.add_subcommand("project", "project a graph into JSON records");
    project->add_option("--graph", graph_path, "Turtle file")->required();
    project->add_option("--schema", schema_path, "record schema JSON")->required();
    project->add_option("--out", records_out, "records output (default stdout)");

    std::string pred_dir, gold_dir, metrics_path = "metrics.json", csv_path = "results.csv";
    std::vector<std::string> schema_paths;
    auto* evaluate = app.add_subcommand("evaluate", "score predicted records against gold");
    evaluate->add_option("--pred", pred_dir, "predicted records directory")->required();
    evaluate->add_option("--gold", gold_dir, "gold records directory")->required();
    evaluate->add_option("--schema", schema_paths, "record schema JSON files")->required();
    evaluate->add_option("--out-metrics", metrics_path, "metrics JSON output");
    evaluate->add_option("--out-csv", csv_path, "per-paper CSV output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*compile) return cmd_compile(tbox_path, out_dir);

        if (*serve) {
            auto session = make_session(tbox_path, doc_id, workdir, !no_feedback, mint_base);
            McpServer server(session);
            serve_stdio(server, std::cin, std::cout);
            return 0;
        }

        if (*build_index) {
            if (reference_path.empty() == endpoint_url.empty()) {
                std::cerr << "exactly one of --reference / --endpoint is required\n";
                return 2;
            }
            std::vector<Iri> predicates;
            for (const auto& p : predicate_iris) predicates.emplace_back(p);
            LabelIndex index;
            if (!reference_path.empty()) {
                Graph reference = parse_turtle(slurp(reference_path));
                if (predicates.empty())
                    for (const auto& [pred, coverage] :
                         discover_label_predicates(reference, iri_set(class_iris)))
                        predicates.push_back(pred);
                index = build_label_index(reference, iri_set(class_iris), predicates);
            } else {
                if (predicates.empty()) predicates.push_back(rdfs_ns::label);
                index = fetch_labels_from_endpoint(endpoint_url, iri_set(class_iris), predicates);
            }
            spit(index_path, index.to_json().dump(2) + "\n");
            std::cout << "wrote " << index_path << " (" << index.entries.size()
                      << " entries)\n";
            return 0;
        }

        if (*ground) {
            Graph graph = parse_turtle(slurp(in_path));
            LabelIndex index = LabelIndex::from_json(load_json(index_path));
            auto [grounded, map] =
                ground_graph(graph, index, iri_set(class_iris), parse_mode(mode_name), tau);
            std::string out = grounded_out.empty() ? in_path + ".grounded.ttl" : grounded_out;
            spit(out, serialize_turtle(grounded));
            if (!map_out.empty()) spit(map_out, map.to_json().dump(2) + "\n");
            std::cout << "grounded " << map.pairs.size() << " instances -> " << out << "\n";
            return 0;
        }

        if (*run) {
            Plan plan = plan_from_json(load_json(plan_path));
            Trace trace = Trace::from_json(load_json(trace_path));
            RepairTable repairs;
            if (!repairs_path.empty()) repairs = RepairTable::from_json(load_json(repairs_path));
            auto session = make_session(tbox_path, doc_id, workdir, !no_feedback, mint_base);
            McpServer server(session);
            RunReport report = run_plan(plan, trace, repairs, server);
            std::string dump = report.to_json().dump(2) + "\n";
            if (!report_path.empty()) spit(report_path, dump);
            std::cout << dump;
            return report.final_status == "done" ? 0 : 1;
        }

        if (*project) {
            Graph graph = parse_turtle(slurp(graph_path));
            RecordSchema schema = RecordSchema::from_json(load_json(schema_path));
            std::string dump = records_to_json(project_records(graph, schema)).dump(2) + "\n";
            if (records_out.empty())
                std::cout << dump;
            else
                spit(records_out, dump);
            return 0;
        }

        if (*evaluate)
            return cmd_evaluate(pred_dir, gold_dir, schema_paths, metrics_path, csv_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

#include "ontoforge/runtime.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "ontoforge/turtle.hpp"

namespace ontoforge {

std::string to_string(ErrorType t) {
    switch (t) {
        case ErrorType::OntologyConstraintViolation: return "OntologyConstraintViolation";
        case ErrorType::DatatypeViolation: return "DatatypeViolation";
        case ErrorType::CardinalityViolation: return "CardinalityViolation";
        case ErrorType::UnknownEntity: return "UnknownEntity";
        case ErrorType::DuplicateCall: return "DuplicateCall";
        case ErrorType::AlreadyAttached: return "AlreadyAttached";
    }
    return "?";
}

Json ViolationReport::to_json() const {
    Json j;
    j["ok"] = false;
    j["error_type"] = to_string(error_type);
    if (field) j["field"] = *field;
    j["message"] = message;
    if (allowed_values) j["allowed_values"] = *allowed_values;
    j["retryable"] = retryable;
    return j;
}

Json ToolResult::to_json() const {
    Json j;
    j["ok"] = true;
    if (instance_iri) j["instance_iri"] = instance_iri->value;
    j["validated"] = true;
    j["status"] = status;
    if (!matches.empty()) {
        Json arr = Json::array();
        for (const auto& m : matches) arr.push_back(m.value);
        j["matches"] = arr;
    }
    return j;
}

Json InvokeOutcome::to_json() const {
    if (ok) return result.to_json();
    if (violations.size() == 1) return violations.front().to_json();
    Json arr = Json::array();
    for (const auto& v : violations) arr.push_back(v.to_json());
    return arr;
}

namespace {

InvokeOutcome success(ToolResult r) { return InvokeOutcome{true, std::move(r), {}}; }
InvokeOutcome failure(ViolationReport v) { return InvokeOutcome{false, {}, {std::move(v)}}; }

ViolationReport make_violation(ErrorType type, std::optional<std::string> field,
                               std::string message, bool retryable,
                               std::optional<std::vector<std::string>> allowed = std::nullopt) {
    ViolationReport v;
    v.error_type = type;
    v.field = std::move(field);
    v.message = std::move(message);
    v.allowed_values = std::move(allowed);
    v.retryable = retryable;
    return v;
}

std::string canonical_args_hash(const Json& args) {
    return nlohmann::json(args).dump();  // plain json sorts object keys
}

// Does any asserted type satisfy the constraint class set (with subclass
// semantics)? Empty constraint set means unconstrained.
bool types_satisfy(const SchemaModel& schema, const std::vector<Iri>& types,
                   const std::set<Iri>& constraint) {
    if (constraint.empty()) return true;
    for (const auto& t : types) {
        if (!schema.classes.count(t)) continue;
        auto closure = subclass_closure(schema, t);
        for (const auto& c : constraint)
            if (closure.count(c)) return true;
    }
    return false;
}

bool instance_matches_class(const SchemaModel& schema, const std::vector<Iri>& types,
                            const Iri& cls) {
    for (const auto& t : types) {
        if (!schema.classes.count(t)) continue;
        if (subclass_closure(schema, t).count(cls)) return true;
    }
    return false;
}

// Converts a JSON argument value to the lexical form of the given datatype.
// Returns nullopt if the value cannot denote a valid literal of that type.
std::optional<std::string> lexical_for(const Json& value, const Iri& datatype) {
    std::string lexical;
    if (value.is_string()) {
        lexical = value.get<std::string>();
    } else if (value.is_boolean()) {
        lexical = value.get<bool>() ? "true" : "false";
    } else if (value.is_number()) {
        lexical = nlohmann::json(value).dump();
    } else {
        return std::nullopt;
    }
    if (!literal_lexical_valid(lexical, datatype)) return std::nullopt;
    return lexical;
}

std::string raw_string(const Json& value) {
    return value.is_string() ? value.get<std::string>() : nlohmann::json(value).dump();
}

std::optional<int> max_cardinality_for(const SchemaModel& schema,
                                       const std::vector<Iri>& subject_types,
                                       const Iri& property) {
    std::optional<int> max;
    for (const auto& rule : schema.cardinalities) {
        if (rule.property != property || !rule.max) continue;
        if (!instance_matches_class(schema, subject_types, rule.on_class)) continue;
        if (!max || *rule.max < *max) max = rule.max;
    }
    return max;
}

}  // namespace

Session::Session(Graph graph, SchemaModel schema, ToolSet toolset, Iri mint_base,
                 std::string doc_id, bool feedback_enabled, std::string workdir)
    : graph_(std::move(graph)),
      schema_(std::move(schema)),
      toolset_(std::move(toolset)),
      mint_(std::move(mint_base)),
      doc_id_(std::move(doc_id)),
      feedback_enabled_(feedback_enabled),
      workdir_(std::move(workdir)) {}

InvokeOutcome Session::invoke(const std::string& tool_name, const Json& args) {
    const ToolDescriptor* tool = toolset_.find(tool_name);
    if (!tool) throw UnknownToolError("unknown tool: " + tool_name);
    for (const auto& arg : tool->arguments)
        if (arg.required && !args.contains(arg.name))
            throw std::invalid_argument("missing required argument: " + arg.name);

    const bool mutating = tool->binding == ToolBinding::create ||
                          tool->binding == ToolBinding::link ||
                          tool->binding == ToolBinding::set ||
                          tool->binding == ToolBinding::quantity;
    const std::string hash = canonical_args_hash(args);
    if (mutating && call_index_.count({tool_name, hash})) {
        auto outcome = failure(make_violation(
            ErrorType::DuplicateCall, std::nullopt,
            "Identical call to '" + tool_name + "' was already accepted.", false));
        persist(tool_name, args, outcome);
        return outcome;
    }

    InvokeOutcome outcome = dispatch(*tool, args, false);
    if (outcome.ok && mutating) {
        call_log_.emplace_back(tool_name, hash);
        call_index_.insert({tool_name, hash});
    }
    persist(tool_name, args, outcome);
    return outcome;
}

void Session::force_apply(const std::string& tool_name, const Json& args) {
    const ToolDescriptor* tool = toolset_.find(tool_name);
    if (!tool) throw UnknownToolError("unknown tool: " + tool_name);
    dispatch(*tool, args, true);
}

InvokeOutcome Session::dispatch(const ToolDescriptor& tool, const Json& args, bool unchecked) {
    switch (tool.binding) {
        case ToolBinding::create: {
            std::vector<std::pair<Iri, Json>> attrs;
            for (const auto& [prop_iri, prop] : schema_.properties) {
                if (prop.kind == PropertyKind::object && !schema_.vocabularies.count(prop_iri))
                    continue;
                const std::string arg_name = snake_case(prop_iri.local_name());
                if (args.contains(arg_name)) attrs.emplace_back(prop_iri, args.at(arg_name));
            }
            return create_impl(*tool.bound, args.at("doc_id").get<std::string>(),
                               args.at("label").get<std::string>(), attrs, unchecked);
        }
        case ToolBinding::check_existing: {
            ToolResult r;
            r.status = "done";
            r.matches = find_by_type_and_label(graph_, *tool.bound,
                                               args.at("label").get<std::string>());
            return success(std::move(r));
        }
        case ToolBinding::link:
            return link_impl(args.at("subject_iri").get<std::string>(), *tool.bound,
                             args.at("object_iri").get<std::string>(), unchecked);
        case ToolBinding::set:
            return set_impl(args.at("subject_iri").get<std::string>(), *tool.bound,
                            args.at("value"), unchecked);
        case ToolBinding::quantity:
            return quantity_impl(tool, args, unchecked);
        case ToolBinding::finalize:
            return finalize();
    }
    throw std::logic_error("unhandled tool binding");
}

InvokeOutcome Session::create_instance(const Iri& cls, const std::string& doc_id,
                                       const std::string& label,
                                       const std::vector<std::pair<Iri, Json>>& attrs) {
    return create_impl(cls, doc_id, label, attrs, false);
}

InvokeOutcome Session::create_impl(const Iri& cls, const std::string& doc_id,
                                   const std::string& label,
                                   const std::vector<std::pair<Iri, Json>>& attrs,
                                   bool unchecked) {
    const bool checked = feedback_enabled_ && !unchecked;

    auto existing = find_by_type_and_label(graph_, cls, label);
    if (!existing.empty()) {
        ToolResult r;
        r.instance_iri = existing.front();
        r.status = "reused";
        return success(std::move(r));
    }

    try {
        check_doc_id(doc_id);
    } catch (const InvalidDocIdError& e) {
        return failure(make_violation(ErrorType::DatatypeViolation, "doc_id", e.what(), true));
    }

    // Validate every attribute before any triple lands.
    struct Pending {
        Iri property;
        Term object;
    };
    std::vector<Pending> pending;
    for (const auto& [prop_iri, value] : attrs) {
        const auto& prop = schema_.properties.at(prop_iri);
        const std::string field = snake_case(prop_iri.local_name());
        if (checked && !prop.domain.count(cls) &&
            !types_satisfy(schema_, {cls}, prop.domain)) {
            return failure(make_violation(
                ErrorType::OntologyConstraintViolation, field,
                "Property " + prop_iri.local_name() + " is not applicable to " +
                    cls.local_name() + " by the ontology.", true));
        }
        auto vocab = schema_.vocabularies.find(prop_iri);
        if (vocab != schema_.vocabularies.end()) {
            std::string lexical = value.is_string() ? value.get<std::string>()
                                                    : nlohmann::json(value).dump();
            auto target = vocab->second.resolve(lexical);
            if (!target) {
                if (checked) {
                    return failure(make_violation(
                        ErrorType::OntologyConstraintViolation, field,
                        "Value '" + lexical + "' is not permitted by the ontology.", true,
                        vocab->second.labels()));
                }
                pending.push_back({prop_iri, Literal{lexical, xsd::string_}});
            } else {
                pending.push_back({prop_iri, *target});
            }
        } else {
            auto lexical = lexical_for(value, prop.range_datatype);
            if (!lexical) {
                if (!unchecked) {
                    return failure(make_violation(
                        ErrorType::DatatypeViolation, field,
                        "Value for " + prop_iri.local_name() + " does not parse as " +
                            prop.range_datatype.local_name() + ".", true));
                }
                pending.push_back({prop_iri, Literal{raw_string(value), xsd::string_}});
                continue;
            }
            pending.push_back({prop_iri, Literal{*lexical, prop.range_datatype}});
        }
    }

    Iri iri = mint_.mint(doc_id, cls.local_name());
    graph_.add(Triple{iri, Term{rdf_ns::type}, Term{cls}});
    graph_.add(Triple{iri, Term{rdfs_ns::label}, Literal{label, xsd::string_}});
    for (auto& p : pending) graph_.add(Triple{iri, Term{p.property}, std::move(p.object)});

    ToolResult r;
    r.instance_iri = iri;
    r.status = "created";
    return success(std::move(r));
}

InvokeOutcome Session::link(const std::string& subject_iri, const Iri& property,
                            const std::string& object_iri) {
    return link_impl(subject_iri, property, object_iri, false);
}

InvokeOutcome Session::link_impl(const std::string& subject_iri, const Iri& property,
                                 const std::string& object_iri, bool unchecked) {
    const bool checked = feedback_enabled_ && !unchecked;
    const auto& prop = schema_.properties.at(property);

    Iri subject, object;
    try {
        subject = Iri(subject_iri);
    } catch (const std::invalid_argument&) {
        return failure(make_violation(ErrorType::UnknownEntity, "subject_iri",
                                      "Malformed IRI: " + subject_iri, true));
    }
    try {
        object = Iri(object_iri);
    } catch (const std::invalid_argument&) {
        return failure(make_violation(ErrorType::UnknownEntity, "object_iri",
                                      "Malformed IRI: " + object_iri, true));
    }

    if (checked) {
        auto subject_types = graph_.types_of(Term{subject});
        if (subject_types.empty()) {
            return failure(make_violation(
                ErrorType::UnknownEntity, "subject_iri",
                "Instance " + subject.value + " was never created; create it first.", true));
        }
        auto object_types = graph_.types_of(Term{object});
        if (object_types.empty()) {
            return failure(make_violation(
                ErrorType::UnknownEntity, "object_iri",
                "Instance " + object.value + " was never created; create it first.", true));
        }
        if (!types_satisfy(schema_, subject_types, prop.domain)) {
            return failure(make_violation(
                ErrorType::OntologyConstraintViolation, "subject_iri",
                "Subject type is outside the domain of " + property.local_name() + ".", true));
        }
        if (!types_satisfy(schema_, object_types, prop.range_classes)) {
            return failure(make_violation(
                ErrorType::OntologyConstraintViolation, "object_iri",
                "Object type is outside the range of " + property.local_name() + ".", true));
        }
        Triple t{subject, Term{property}, object};
        if (graph_.contains(t)) {
            return failure(make_violation(ErrorType::AlreadyAttached, std::nullopt,
                                          "Triple already present.", false));
        }
        auto max = max_cardinality_for(schema_, subject_types, property);
        if (max) {
            int count = static_cast<int>(graph_.objects_of(Term{subject}, property).size());
            if (count + 1 > *max) {
                return failure(make_violation(
                    ErrorType::CardinalityViolation, std::nullopt,
                    "Adding this link would exceed maxCardinality " + std::to_string(*max) +
                        " for " + property.local_name() + " on " + subject.value + ".", false));
            }
        }
    }

    graph_.add(Triple{subject, Term{property}, object});
    ToolResult r;
    r.status = "attached";
    return success(std::move(r));
}

InvokeOutcome Session::set_attribute(const std::string& subject_iri, const Iri& property,
                                     const Json& value) {
    return set_impl(subject_iri, property, value, false);
}

InvokeOutcome Session::set_impl(const std::string& subject_iri, const Iri& property,
                                const Json& value, bool unchecked) {
    const bool checked = feedback_enabled_ && !unchecked;
    const auto& prop = schema_.properties.at(property);

    Iri subject;
    try {
        subject = Iri(subject_iri);
    } catch (const std::invalid_argument&) {
        return failure(make_violation(ErrorType::UnknownEntity, "subject_iri",
                                      "Malformed IRI: " + subject_iri, true));
    }

    auto subject_types = graph_.types_of(Term{subject});
    if (checked && subject_types.empty()) {
        return failure(make_violation(
            ErrorType::UnknownEntity, "subject_iri",
            "Instance " + subject.value + " was never created; create it first.", true));
    }
    if (checked && !types_satisfy(schema_, subject_types, prop.domain)) {
        return failure(make_violation(
            ErrorType::OntologyConstraintViolation, "subject_iri",
            "Subject type is outside the domain of " + property.local_name() + ".", true));
    }

    Term object;
    auto vocab = schema_.vocabularies.find(property);
    if (vocab != schema_.vocabularies.end()) {
        std::string lexical =
            value.is_string() ? value.get<std::string>() : nlohmann::json(value).dump();
        auto target = vocab->second.resolve(lexical);
        if (!target) {
            if (checked) {
                return failure(make_violation(
                    ErrorType::OntologyConstraintViolation, "value",
                    "Value '" + lexical + "' is not permitted by the ontology.", true,
                    vocab->second.labels()));
            }
            object = Literal{lexical, xsd::string_};
        } else {
            object = *target;
        }
    } else {
        auto lexical = lexical_for(value, prop.range_datatype);
        if (!lexical) {
            // Datatype parsing is retained even in ablation mode: an
            // unparsable literal is not storable under the declared range.
            if (!unchecked) {
                return failure(make_violation(
                    ErrorType::DatatypeViolation, "value",
                    "Value does not parse as " + prop.range_datatype.local_name() + ".", true));
            }
            object = Literal{raw_string(value), xsd::string_};
        } else {
            object = Literal{*lexical, prop.range_datatype};
        }
    }

    Triple t{subject, Term{property}, object};
    if (checked) {
        if (graph_.contains(t)) {
            return failure(make_violation(ErrorType::AlreadyAttached, std::nullopt,
                                          "Triple already present.", false));
        }
        auto max = max_cardinality_for(schema_, subject_types, property);
        if (max) {
            int count = static_cast<int>(graph_.objects_of(Term{subject}, property).size());
            if (count + 1 > *max) {
                return failure(make_violation(
                    ErrorType::CardinalityViolation, std::nullopt,
                    "Adding this value would exceed maxCardinality " + std::to_string(*max) +
                        " for " + property.local_name() + " on " + subject.value + ".", false));
            }
        }
    }

    graph_.add(std::move(t));
    ToolResult r;
    r.status = "attached";
    return success(std::move(r));
}

InvokeOutcome Session::quantity_impl(const ToolDescriptor& tool, const Json& args,
                                     bool unchecked) {
    const bool checked = feedback_enabled_ && !unchecked;
    const Iri cls = *tool.bound;

    std::optional<Iri> numeric_prop, unit_prop;
    for (const auto& [prop_iri, prop] : schema_.properties) {
        if (!prop.domain.count(cls)) continue;
        if (prop.kind == PropertyKind::datatype) numeric_prop = prop_iri;
        if (schema_.vocabularies.count(prop_iri)) unit_prop = prop_iri;
    }
    if (!numeric_prop || !unit_prop)
        throw std::logic_error("quantity tool bound to a non-quantity class");

    const auto& vprop = schema_.properties.at(*numeric_prop);
    auto lexical = lexical_for(args.at("value"), vprop.range_datatype);
    Term value_term;
    if (!lexical) {
        if (!unchecked) {
            return failure(make_violation(
                ErrorType::DatatypeViolation, "value",
                "Value does not parse as " + vprop.range_datatype.local_name() + ".", true));
        }
        value_term = Literal{raw_string(args.at("value")), xsd::string_};
    } else {
        value_term = Literal{*lexical, vprop.range_datatype};
    }

    const auto& vocab = schema_.vocabularies.at(*unit_prop);
    const std::string unit_label = args.at("unit").is_string()
                                       ? args.at("unit").get<std::string>()
                                       : nlohmann::json(args.at("unit")).dump();
    auto unit_target = vocab.resolve(unit_label);
    Term unit_term;
    if (!unit_target) {
        if (checked) {
            return failure(make_violation(
                ErrorType::OntologyConstraintViolation, "unit",
                "Unit value '" + unit_label + "' is not permitted by the ontology.", true,
                vocab.labels()));
        }
        unit_term = Literal{unit_label, xsd::string_};
    } else {
        unit_term = *unit_target;
    }

    Iri iri = mint_.mint(doc_id_, cls.local_name());
    graph_.add(Triple{iri, Term{rdf_ns::type}, Term{cls}});
    graph_.add(Triple{iri, Term{*numeric_prop}, std::move(value_term)});
    graph_.add(Triple{iri, Term{*unit_prop}, std::move(unit_term)});

    ToolResult r;
    r.instance_iri = iri;
    r.status = "created";
    return success(std::move(r));
}

InvokeOutcome Session::finalize() {
    std::vector<ViolationReport> outstanding;
    for (const auto& rule : schema_.cardinalities) {
        if (!rule.min || *rule.min == 0) continue;
        std::vector<Iri> instances;
        for (const auto& t : graph_.with_predicate(rdf_ns::type)) {
            const auto* inst = std::get_if<Iri>(&t.subject);
            const auto* cls = std::get_if<Iri>(&t.object);
            if (!inst || !cls) continue;
            if (instance_matches_class(schema_, {*cls}, rule.on_class))
                instances.push_back(*inst);
        }
        std::sort(instances.begin(), instances.end());
        instances.erase(std::unique(instances.begin(), instances.end()), instances.end());
        for (const auto& inst : instances) {
            int count = static_cast<int>(graph_.objects_of(Term{inst}, rule.property).size());
            if (count < *rule.min) {
                outstanding.push_back(make_violation(
                    ErrorType::CardinalityViolation, std::nullopt,
                    "Instance " + inst.value + " has " + std::to_string(count) + " values for " +
                        rule.property.local_name() + "; minCardinality is " +
                        std::to_string(*rule.min) + ".", true));
            }
        }
    }
    if (!outstanding.empty()) {
        std::sort(outstanding.begin(), outstanding.end(),
                  [](const ViolationReport& a, const ViolationReport& b) {
                      return a.message < b.message;
                  });
        return InvokeOutcome{false, {}, std::move(outstanding)};
    }
    ToolResult r;
    r.status = "done";
    return success(std::move(r));
}

void Session::persist(const std::string& tool, const Json& args, const InvokeOutcome& outcome) {
    ++seq_;
    if (workdir_.empty()) return;
    namespace fs = std::filesystem;
    fs::create_directories(workdir_);
    if (outcome.ok) {
        std::ofstream store(fs::path(workdir_) / (doc_id_ + ".ttl"), std::ios::trunc);
        store << serialize_turtle(graph_);
    }
    std::ofstream log(fs::path(workdir_) / (doc_id_ + ".log.jsonl"), std::ios::app);
    Json entry{{"seq", seq_}, {"tool", tool}, {"args", args}, {"outcome", outcome.to_json()}};
    log << entry.dump() << "\n";
}

std::vector<ViolationReport> validate_graph(const Graph& graph, const SchemaModel& schema) {
    struct Entry {
        std::string key;
        ViolationReport report;
    };
    std::vector<Entry> entries;
    auto note = [&entries](const std::string& instance, const Iri& property,
                           ViolationReport report) {
        entries.push_back({instance + "\x1f" + property.value + "\x1f" + report.message,
                           std::move(report)});
    };

    for (const auto& t : graph.triples()) {
        const auto* prop_iri = std::get_if<Iri>(&t.predicate);
        if (!prop_iri) continue;
        auto pit = schema.properties.find(*prop_iri);
        if (pit == schema.properties.end()) continue;
        const auto& prop = pit->second;
        const std::string subject_key = term_key(t.subject);

        auto subject_types = graph.types_of(t.subject);
        if (!types_satisfy(schema, subject_types, prop.domain)) {
            note(subject_key, *prop_iri,
                 make_violation(ErrorType::OntologyConstraintViolation, std::nullopt,
                                "Subject " + subject_key + " is outside the domain of " +
                                    prop_iri->local_name() + ".", false));
        }

        auto vocab = schema.vocabularies.find(*prop_iri);
        if (vocab != schema.vocabularies.end()) {
            bool member = false;
            if (const auto* obj = std::get_if<Iri>(&t.object)) {
                for (const auto& [lbl, iri] : vocab->second.allowed)
                    if (iri == *obj) member = true;
            }
            if (!member) {
                note(subject_key, *prop_iri,
                     make_violation(ErrorType::OntologyConstraintViolation, std::nullopt,
                                    "Object of " + prop_iri->local_name() + " on " +
                                        subject_key + " is not a permitted vocabulary entry.",
                                    false, vocab->second.labels()));
            }
        } else if (prop.kind == PropertyKind::datatype) {
            const auto* lit = std::get_if<Literal>(&t.object);
            if (!lit || lit->datatype != prop.range_datatype ||
                !literal_lexical_valid(lit->lexical, prop.range_datatype)) {
                note(subject_key, *prop_iri,
                     make_violation(ErrorType::DatatypeViolation, std::nullopt,
                                    "Object of " + prop_iri->local_name() + " on " +
                                        subject_key + " is not a valid " +
                                        prop.range_datatype.local_name() + " literal.", false));
            }
        } else {
            bool ok_range = false;
            if (is_iri(t.object) || is_blank(t.object)) {
                auto object_types = graph.types_of(t.object);
                ok_range = !object_types.empty() &&
                           types_satisfy(schema, object_types, prop.range_classes);
            }
            if (!ok_range) {
                note(subject_key, *prop_iri,
                     make_violation(ErrorType::OntologyConstraintViolation, std::nullopt,
                                    "Object of " + prop_iri->local_name() + " on " +
                                        subject_key + " is outside the property range.", false));
            }
        }
    }

    for (const auto& rule : schema.cardinalities) {
        std::set<std::string> seen;
        for (const auto& t : graph.with_predicate(rdf_ns::type)) {
            const auto* cls = std::get_if<Iri>(&t.object);
            if (!cls || !schema.classes.count(*cls)) continue;
            if (!subclass_closure(schema, *cls).count(rule.on_class)) continue;
            const std::string subject_key = term_key(t.subject);
            if (!seen.insert(subject_key).second) continue;
            int count = static_cast<int>(graph.objects_of(t.subject, rule.property).size());
            if (rule.min && count < *rule.min) {
                note(subject_key, rule.property,
                     make_violation(ErrorType::CardinalityViolation, std::nullopt,
                                    "Instance " + subject_key + " has " + std::to_string(count) +
                                        " values for " + rule.property.local_name() +
                                        "; minCardinality is " + std::to_string(*rule.min) + ".",
                                    false));
            }
            if (rule.max && count > *rule.max) {
                note(subject_key, rule.property,
                     make_violation(ErrorType::CardinalityViolation, std::nullopt,
                                    "Instance " + subject_key + " has " + std::to_string(count) +
                                        " values for " + rule.property.local_name() +
                                        "; maxCardinality is " + std::to_string(*rule.max) + ".",
                                    false));
            }
        }
    }

    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.key < b.key; });
    std::vector<ViolationReport> out;
    out.reserve(entries.size());
    for (auto& e : entries) out.push_back(std::move(e.report));
    return out;
}

}  // namespace ontoforge

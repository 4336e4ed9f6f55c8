#include "ontoforge/schema.hpp"

#include <algorithm>
#include <functional>

namespace ontoforge {

std::optional<Iri> Vocabulary::resolve(const std::string& label) const {
    const std::string wanted = normalize_label(label);
    for (const auto& [lbl, iri] : allowed)
        if (normalize_label(lbl) == wanted) return iri;
    return std::nullopt;
}

std::vector<std::string> Vocabulary::labels() const {
    std::vector<std::string> out;
    out.reserve(allowed.size());
    for (const auto& [lbl, iri] : allowed) out.push_back(lbl);
    return out;
}

std::optional<Iri> SchemaModel::top_entity() const {
    for (const auto& [iri, def] : classes)
        if (def.is_top_entity) return iri;
    return std::nullopt;
}

bool SchemaModel::is_vocabulary_range(const Iri& cls) const {
    for (const auto& [prop, vocab] : vocabularies) {
        auto it = properties.find(prop);
        if (it != properties.end() && it->second.range_classes.count(cls)) return true;
    }
    return false;
}

namespace {

std::optional<std::string> comment_of(const Graph& g, const Iri& subject) {
    for (const auto& o : g.objects_of(Term{subject}, rdfs_ns::comment))
        if (const auto* lit = std::get_if<Literal>(&o)) return lit->lexical;
    return std::nullopt;
}

bool is_xsd_datatype(const Iri& iri) {
    return iri.value.rfind("http://www.w3.org/2001/XMLSchema#", 0) == 0;
}

int parse_cardinality_value(const Term& o) {
    const auto* lit = std::get_if<Literal>(&o);
    if (!lit || !literal_lexical_valid(lit->lexical, xsd::integer_))
        throw SchemaError("cardinality value is not an integer literal");
    int n = std::stoi(lit->lexical);
    if (n < 0) throw SchemaError("negative cardinality");
    return n;
}

// Walk an rdf:first/rdf:rest chain starting at `head`.
std::vector<Iri> walk_list(const Graph& g, Term head) {
    std::vector<Iri> out;
    while (!(is_iri(head) && std::get<Iri>(head) == rdf_ns::nil)) {
        auto firsts = g.objects_of(head, rdf_ns::first);
        auto rests = g.objects_of(head, rdf_ns::rest);
        if (firsts.size() != 1 || rests.size() != 1)
            throw SchemaError("malformed owl:oneOf list");
        if (const auto* iri = std::get_if<Iri>(&firsts[0])) out.push_back(*iri);
        else throw SchemaError("owl:oneOf member is not a named individual");
        head = rests[0];
    }
    return out;
}

std::string label_of(const Graph& g, const Iri& ind) {
    for (const auto& o : g.objects_of(Term{ind}, rdfs_ns::label))
        if (const auto* lit = std::get_if<Literal>(&o)) return lit->lexical;
    return ind.local_name();
}

void check_acyclic(const SchemaModel& model) {
    for (const auto& [start, def] : model.classes) {
        std::set<Iri> seen{start};
        std::vector<Iri> frontier{start};
        while (!frontier.empty()) {
            Iri cur = frontier.back();
            frontier.pop_back();
            auto it = model.classes.find(cur);
            if (it == model.classes.end()) continue;
            for (const auto& parent : it->second.parents) {
                if (parent == start) throw SchemaError("cyclic subclass chain at " + start.value);
                if (seen.insert(parent).second) frontier.push_back(parent);
            }
        }
    }
}

}  // namespace

SchemaModel extract_schema(const Graph& tbox) {
    SchemaModel model;

    // Classes
    for (const auto& t : tbox.triples()) {
        if (t.predicate != Term{rdf_ns::type}) continue;
        if (t.object != Term{owl_ns::class_} && t.object != Term{rdfs_ns::class_}) continue;
        const auto* iri = std::get_if<Iri>(&t.subject);
        if (!iri) continue;  // blank restriction nodes are not schema classes
        ClassDef def;
        def.iri = *iri;
        def.local = iri->local_name();
        def.comment = comment_of(tbox, *iri);
        model.classes.emplace(*iri, std::move(def));
    }
    if (model.classes.empty()) throw SchemaError("T-Box declares no classes");

    // Parents + cardinality restrictions
    for (const auto& t : tbox.with_predicate(rdfs_ns::sub_class_of)) {
        const auto* sub = std::get_if<Iri>(&t.subject);
        if (!sub || !model.classes.count(*sub)) continue;
        if (const auto* parent = std::get_if<Iri>(&t.object)) {
            if (!model.classes.count(*parent))
                throw SchemaError("dangling superclass " + parent->value);
            model.classes[*sub].parents.insert(*parent);
        } else if (is_blank(t.object)) {
            auto types = tbox.types_of(t.object);
            if (std::find(types.begin(), types.end(), owl_ns::restriction) == types.end())
                throw SchemaError("blank superclass of " + sub->value + " is not a restriction");
            auto on_props = tbox.objects_of(t.object, owl_ns::on_property);
            if (on_props.size() != 1 || !is_iri(on_props[0]))
                throw SchemaError("restriction without owl:onProperty on " + sub->value);
            CardinalityRule rule;
            rule.on_class = *sub;
            rule.property = std::get<Iri>(on_props[0]);
            for (const auto& o : tbox.objects_of(t.object, owl_ns::min_cardinality))
                rule.min = parse_cardinality_value(o);
            for (const auto& o : tbox.objects_of(t.object, owl_ns::max_cardinality))
                rule.max = parse_cardinality_value(o);
            for (const auto& o : tbox.objects_of(t.object, owl_ns::cardinality)) {
                int n = parse_cardinality_value(o);
                rule.min = n;
                rule.max = n;
            }
            if (!rule.min && !rule.max)
                throw SchemaError("restriction carries no cardinality bound");
            if (rule.min && rule.max && *rule.min > *rule.max)
                throw SchemaError("min cardinality exceeds max");
            model.cardinalities.push_back(std::move(rule));
        }
    }
    check_acyclic(model);

    // Properties
    for (const auto& t : tbox.triples()) {
        if (t.predicate != Term{rdf_ns::type}) continue;
        bool object_kind = t.object == Term{owl_ns::object_property};
        bool datatype_kind = t.object == Term{owl_ns::datatype_property};
        if (!object_kind && !datatype_kind) continue;
        const auto* iri = std::get_if<Iri>(&t.subject);
        if (!iri) continue;
        PropertyDef def;
        def.iri = *iri;
        def.kind = object_kind ? PropertyKind::object : PropertyKind::datatype;
        def.comment = comment_of(tbox, *iri);
        for (const auto& o : tbox.objects_of(t.subject, rdfs_ns::domain)) {
            const auto* dc = std::get_if<Iri>(&o);
            if (!dc || !model.classes.count(*dc))
                throw SchemaError("dangling rdfs:domain on " + iri->value);
            def.domain.insert(*dc);
        }
        auto ranges = tbox.objects_of(t.subject, rdfs_ns::range);
        if (datatype_kind) {
            if (ranges.size() != 1 || !is_iri(ranges[0]) ||
                !is_xsd_datatype(std::get<Iri>(ranges[0])))
                throw SchemaError("datatype property " + iri->value +
                                  " requires exactly one xsd range");
            def.range_datatype = std::get<Iri>(ranges[0]);
        } else {
            for (const auto& o : ranges) {
                const auto* rc = std::get_if<Iri>(&o);
                if (!rc || !model.classes.count(*rc))
                    throw SchemaError("dangling rdfs:range on " + iri->value);
                def.range_classes.insert(*rc);
            }
        }
        model.properties.emplace(*iri, std::move(def));
    }

    // Cardinality rules must name declared properties
    for (const auto& rule : model.cardinalities)
        if (!model.properties.count(rule.property))
            throw SchemaError("cardinality rule on undeclared property " + rule.property.value);

    // Vocabularies: owl:oneOf on a range class, or range-class instances
    // enumerated in the T-Box.
    for (auto& [prop_iri, prop] : model.properties) {
        if (prop.kind != PropertyKind::object) continue;
        Vocabulary vocab;
        vocab.property = prop_iri;
        for (const auto& range_cls : prop.range_classes) {
            auto one_of = tbox.objects_of(Term{range_cls}, owl_ns::one_of);
            if (!one_of.empty()) {
                for (const auto& member : walk_list(tbox, one_of[0]))
                    vocab.allowed.emplace_back(label_of(tbox, member), member);
            } else {
                // Instance enumeration has no intrinsic list order; keep it
                // canonical (by IRI) so extraction survives re-serialization.
                std::vector<Iri> members;
                for (const auto& t : tbox.triples()) {
                    if (t.predicate != Term{rdf_ns::type} || t.object != Term{range_cls}) continue;
                    const auto* ind = std::get_if<Iri>(&t.subject);
                    if (!ind || model.classes.count(*ind)) continue;
                    members.push_back(*ind);
                }
                std::sort(members.begin(), members.end());
                for (const auto& member : members)
                    vocab.allowed.emplace_back(label_of(tbox, member), member);
            }
        }
        if (vocab.allowed.empty()) continue;
        std::set<std::string> seen;
        for (const auto& [lbl, iri] : vocab.allowed)
            if (!seen.insert(normalize_label(lbl)).second)
                throw SchemaError("duplicate vocabulary label '" + lbl + "' on " + prop_iri.value);
        model.vocabularies.emplace(prop_iri, std::move(vocab));
    }

    // Top entity marker
    std::vector<Iri> tops;
    for (const auto& t : tbox.triples()) {
        const auto* pred = std::get_if<Iri>(&t.predicate);
        if (!pred || pred->local_name() != kTopEntityLocalName) continue;
        const auto* lit = std::get_if<Literal>(&t.object);
        if (!lit || lit->lexical != "true") continue;
        const auto* cls = std::get_if<Iri>(&t.subject);
        if (!cls || !model.classes.count(*cls))
            throw SchemaError("top-entity marker on undeclared class");
        tops.push_back(*cls);
    }
    if (tops.size() > 1) throw SchemaError("more than one class marked as top entity");
    if (!tops.empty()) model.classes[tops[0]].is_top_entity = true;

    return model;
}

std::set<Iri> subclass_closure(const SchemaModel& schema, const Iri& cls) {
    if (!schema.classes.count(cls)) throw UnknownClassError("unknown class " + cls.value);
    std::set<Iri> out{cls};
    std::vector<Iri> frontier{cls};
    while (!frontier.empty()) {
        Iri cur = frontier.back();
        frontier.pop_back();
        for (const auto& parent : schema.classes.at(cur).parents)
            if (out.insert(parent).second) frontier.push_back(parent);
    }
    return out;
}

std::optional<Vocabulary> allowed_values(const SchemaModel& schema, const Iri& property) {
    if (!schema.properties.count(property))
        throw UnknownPropertyError("unknown property " + property.value);
    auto it = schema.vocabularies.find(property);
    if (it == schema.vocabularies.end()) return std::nullopt;
    return it->second;
}

}  // namespace ontoforge

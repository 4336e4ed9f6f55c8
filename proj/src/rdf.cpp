#include "ontoforge/rdf.hpp"

#include <algorithm>
#include <cctype>

namespace ontoforge {

Iri::Iri(std::string v) : value(std::move(v)) {
    if (value.empty()) throw std::invalid_argument("IRI must be nonempty");
    if (value.find(':') == std::string::npos)
        throw std::invalid_argument("IRI missing scheme separator: " + value);
    for (char c : value) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
            throw std::invalid_argument("IRI contains whitespace: " + value);
    }
}

std::string Iri::local_name() const {
    size_t pos = value.find_last_of("#/");
    if (pos == std::string::npos || pos + 1 >= value.size()) return value;
    return value.substr(pos + 1);
}

namespace xsd {
const Iri string_{"http://www.w3.org/2001/XMLSchema#string"};
const Iri integer_{"http://www.w3.org/2001/XMLSchema#integer"};
const Iri double_{"http://www.w3.org/2001/XMLSchema#double"};
const Iri decimal_{"http://www.w3.org/2001/XMLSchema#decimal"};
const Iri boolean_{"http://www.w3.org/2001/XMLSchema#boolean"};
const Iri lang_string{"http://www.w3.org/1999/02/22-rdf-syntax-ns#langString"};
}  // namespace xsd

namespace rdf_ns {
const Iri type{"http://www.w3.org/1999/02/22-rdf-syntax-ns#type"};
const Iri first{"http://www.w3.org/1999/02/22-rdf-syntax-ns#first"};
const Iri rest{"http://www.w3.org/1999/02/22-rdf-syntax-ns#rest"};
const Iri nil{"http://www.w3.org/1999/02/22-rdf-syntax-ns#nil"};
}  // namespace rdf_ns

namespace rdfs_ns {
const Iri label{"http://www.w3.org/2000/01/rdf-schema#label"};
const Iri comment{"http://www.w3.org/2000/01/rdf-schema#comment"};
const Iri sub_class_of{"http://www.w3.org/2000/01/rdf-schema#subClassOf"};
const Iri domain{"http://www.w3.org/2000/01/rdf-schema#domain"};
const Iri range{"http://www.w3.org/2000/01/rdf-schema#range"};
const Iri class_{"http://www.w3.org/2000/01/rdf-schema#Class"};
}  // namespace rdfs_ns

namespace owl_ns {
const Iri class_{"http://www.w3.org/2002/07/owl#Class"};
const Iri object_property{"http://www.w3.org/2002/07/owl#ObjectProperty"};
const Iri datatype_property{"http://www.w3.org/2002/07/owl#DatatypeProperty"};
const Iri restriction{"http://www.w3.org/2002/07/owl#Restriction"};
const Iri on_property{"http://www.w3.org/2002/07/owl#onProperty"};
const Iri min_cardinality{"http://www.w3.org/2002/07/owl#minCardinality"};
const Iri max_cardinality{"http://www.w3.org/2002/07/owl#maxCardinality"};
const Iri cardinality{"http://www.w3.org/2002/07/owl#cardinality"};
const Iri one_of{"http://www.w3.org/2002/07/owl#oneOf"};
const Iri same_as{"http://www.w3.org/2002/07/owl#sameAs"};
}  // namespace owl_ns

namespace {

bool valid_integer(const std::string& s) {
    size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

bool valid_decimal(const std::string& s) {
    size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    size_t digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) { ++i; ++digits; }
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) { ++i; ++digits; }
    }
    return digits > 0 && i == s.size();
}

bool valid_double(const std::string& s) {
    size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    size_t digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) { ++i; ++digits; }
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) { ++i; ++digits; }
    }
    if (digits == 0) return false;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        size_t exp_digits = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) { ++i; ++exp_digits; }
        if (exp_digits == 0) return false;
    }
    return i == s.size();
}

}  // namespace

bool literal_lexical_valid(const std::string& lexical, const Iri& datatype) {
    if (datatype == xsd::integer_) return valid_integer(lexical);
    if (datatype == xsd::decimal_) return valid_decimal(lexical);
    if (datatype == xsd::double_) return valid_double(lexical);
    if (datatype == xsd::boolean_) return lexical == "true" || lexical == "false";
    return true;
}

bool is_iri(const Term& t) { return std::holds_alternative<Iri>(t); }
bool is_blank(const Term& t) { return std::holds_alternative<BlankNode>(t); }
bool is_literal(const Term& t) { return std::holds_alternative<Literal>(t); }

std::string term_key(const Term& t) {
    if (const auto* i = std::get_if<Iri>(&t)) return "<" + i->value + ">";
    if (const auto* b = std::get_if<BlankNode>(&t)) return "_:" + b->id;
    const auto& l = std::get<Literal>(t);
    std::string key = "\"" + l.lexical + "\"";
    if (l.language) key += "@" + *l.language;
    else if (l.datatype != xsd::string_) key += "^^<" + l.datatype.value + ">";
    return key;
}

bool Graph::add(Triple t) {
    auto [it, inserted] = index_.insert(t);
    if (inserted) ordered_.push_back(std::move(t));
    return inserted;
}

bool Graph::contains(const Triple& t) const { return index_.count(t) > 0; }

void Graph::set_prefix(const std::string& name, const Iri& ns) { prefixes_[name] = ns; }

std::vector<Triple> Graph::with_subject(const Term& s) const {
    std::vector<Triple> out;
    for (const auto& t : ordered_)
        if (t.subject == s) out.push_back(t);
    return out;
}

std::vector<Triple> Graph::with_predicate(const Iri& p) const {
    std::vector<Triple> out;
    for (const auto& t : ordered_)
        if (t.predicate == Term{p}) out.push_back(t);
    return out;
}

std::vector<Triple> Graph::with_subject_predicate(const Term& s, const Iri& p) const {
    std::vector<Triple> out;
    for (const auto& t : ordered_)
        if (t.subject == s && t.predicate == Term{p}) out.push_back(t);
    return out;
}

std::vector<Term> Graph::objects_of(const Term& s, const Iri& p) const {
    std::vector<Term> out;
    for (const auto& t : ordered_)
        if (t.subject == s && t.predicate == Term{p}) out.push_back(t.object);
    return out;
}

std::vector<Term> Graph::subjects_of(const Iri& p, const Term& o) const {
    std::vector<Term> out;
    for (const auto& t : ordered_)
        if (t.predicate == Term{p} && t.object == o) out.push_back(t.subject);
    return out;
}

std::vector<Iri> Graph::types_of(const Term& s) const {
    std::vector<Iri> out;
    for (const auto& o : objects_of(s, rdf_ns::type))
        if (const auto* i = std::get_if<Iri>(&o)) out.push_back(*i);
    return out;
}

std::string normalize_label(const std::string& s) {
    std::string out;
    bool pending_space = false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!out.empty()) pending_space = true;
        } else {
            if (pending_space) out += ' ';
            pending_space = false;
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    return out;
}

std::vector<Iri> find_by_type_and_label(const Graph& g, const Iri& cls, const std::string& label) {
    const std::string wanted = normalize_label(label);
    std::vector<Iri> out;
    for (const auto& s : g.subjects_of(rdf_ns::type, Term{cls})) {
        const auto* iri = std::get_if<Iri>(&s);
        if (!iri) continue;
        for (const auto& o : g.objects_of(s, rdfs_ns::label)) {
            const auto* lit = std::get_if<Literal>(&o);
            if (lit && normalize_label(lit->lexical) == wanted) {
                out.push_back(*iri);
                break;
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace ontoforge

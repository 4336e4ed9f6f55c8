#pragma once
// Core RDF value types: IRIs, blank nodes, literals, triples, and the Graph
// container used as both T-Box input and persistent A-Box store.

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ontoforge {

struct Iri {
    std::string value;

    Iri() = default;
    explicit Iri(std::string v);  // throws std::invalid_argument on malformed IRI

    auto operator<=>(const Iri&) const = default;

    // Segment after the last '#' or '/'.
    std::string local_name() const;
};

namespace xsd {
extern const Iri string_;
extern const Iri integer_;
extern const Iri double_;
extern const Iri decimal_;
extern const Iri boolean_;
extern const Iri lang_string;
}  // namespace xsd

namespace rdf_ns {
extern const Iri type;
extern const Iri first;
extern const Iri rest;
extern const Iri nil;
}  // namespace rdf_ns

namespace rdfs_ns {
extern const Iri label;
extern const Iri comment;
extern const Iri sub_class_of;
extern const Iri domain;
extern const Iri range;
extern const Iri class_;
}  // namespace rdfs_ns

namespace owl_ns {
extern const Iri class_;
extern const Iri object_property;
extern const Iri datatype_property;
extern const Iri restriction;
extern const Iri on_property;
extern const Iri min_cardinality;
extern const Iri max_cardinality;
extern const Iri cardinality;
extern const Iri one_of;
extern const Iri same_as;
}  // namespace owl_ns

struct BlankNode {
    std::string id;
    auto operator<=>(const BlankNode&) const = default;
};

struct Literal {
    std::string lexical;
    Iri datatype = xsd::string_;
    std::optional<std::string> language;  // only with rdf:langString

    auto operator<=>(const Literal&) const = default;
};

// Checks the lexical form against the canonical grammar of the well-known
// numeric/boolean xsd datatypes. Other datatypes are accepted as-is.
bool literal_lexical_valid(const std::string& lexical, const Iri& datatype);

using Term = std::variant<Iri, BlankNode, Literal>;

bool is_iri(const Term& t);
bool is_blank(const Term& t);
bool is_literal(const Term& t);

// Stable string form used for canonical ordering and diagnostics.
std::string term_key(const Term& t);

struct Triple {
    Term subject;    // Iri or BlankNode
    Term predicate;  // always Iri
    Term object;

    auto operator<=>(const Triple&) const = default;
};

// Triple set with insertion order retained. Set semantics: adding a duplicate
// is a no-op. Insertion order matters only where the T-Box declaration order
// is significant (vocabulary extraction); canonical serialization sorts.
class Graph {
public:
    bool add(Triple t);
    bool contains(const Triple& t) const;
    size_t size() const { return ordered_.size(); }
    bool empty() const { return ordered_.empty(); }

    const std::vector<Triple>& triples() const { return ordered_; }

    void set_prefix(const std::string& name, const Iri& ns);
    const std::map<std::string, Iri>& prefixes() const { return prefixes_; }

    bool operator==(const Graph& other) const { return index_ == other.index_; }

    // Convenience scans (linear; graphs here are small).
    std::vector<Triple> with_subject(const Term& s) const;
    std::vector<Triple> with_predicate(const Iri& p) const;
    std::vector<Triple> with_subject_predicate(const Term& s, const Iri& p) const;
    std::vector<Term> objects_of(const Term& s, const Iri& p) const;
    std::vector<Term> subjects_of(const Iri& p, const Term& o) const;

    // Types asserted for a subject via rdf:type.
    std::vector<Iri> types_of(const Term& s) const;

private:
    std::vector<Triple> ordered_;
    std::set<Triple> index_;
    std::map<std::string, Iri> prefixes_;
};

// Store-level label normalization: trim, collapse internal whitespace,
// ASCII case-fold. Deliberately conservative; the grounder has its own.
std::string normalize_label(const std::string& s);

// Subjects s with (s, rdf:type, class) and rdfs:label matching `label` after
// normalization, sorted by IRI.
std::vector<Iri> find_by_type_and_label(const Graph& g, const Iri& cls, const std::string& label);

}  // namespace ontoforge

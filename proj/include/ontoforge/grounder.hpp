#pragma once
// Lexical grounding against a reference knowledge graph: cached label index,
// deterministic fuzzy lookup, and materialization via owl:sameAs links or
// IRI rewriting.

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ontoforge/tools.hpp"

namespace ontoforge {

struct ModeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NetworkError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MalformedResultsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Grounder-grade normalization: casefold, trim, collapse whitespace, strip
// surrounding punctuation, unify unicode dashes to "-". Stronger than the
// store-level label normalization on purpose.
std::string ground_normalize(const std::string& s);

size_t levenshtein(const std::string& a, const std::string& b);

struct IndexEntry {
    Iri target_iri;
    Iri cls;
    std::string label_raw;
    std::string label_norm;
    Iri predicate;
};

struct LabelIndex {
    std::vector<IndexEntry> entries;  // sorted by (label_norm, target_iri)
    std::string source_fingerprint;

    Json to_json() const;
    static LabelIndex from_json(const Json& j);
};

struct Candidate {
    Iri target_iri;
    double score = 0.0;  // in [0,1]; 1 iff normalized strings equal
    std::string matched_label;
};

enum class GroundingMode { rewrite, sameas };
GroundingMode parse_mode(const std::string& s);

struct GroundingPair {
    Iri local_iri;
    Iri target_iri;
    double score;
    GroundingMode mode;
};

struct GroundingMap {
    std::vector<GroundingPair> pairs;  // ordered by local_iri

    Json to_json() const;
};

constexpr double kDefaultTau = 0.85;

// Label-bearing predicates on instances of the given classes, ranked by
// coverage fraction; rdfs:label first when present, ties broken by IRI.
std::vector<std::pair<Iri, double>> discover_label_predicates(const Graph& reference,
                                                              const std::set<Iri>& classes);

LabelIndex build_label_index(const Graph& reference, const std::set<Iri>& classes,
                             const std::vector<Iri>& predicates);

std::vector<Candidate> lookup(const LabelIndex& index, const std::string& surface, size_t k,
                              double tau = kDefaultTau);

std::pair<Graph, GroundingMap> ground_graph(const Graph& graph, const LabelIndex& index,
                                            const std::set<Iri>& classes, GroundingMode mode,
                                            double tau = kDefaultTau,
                                            const std::vector<Iri>& label_predicates = {
                                                rdfs_ns::label});

// SPARQL-protocol client for label collection: one SELECT per
// (class, predicate), query posted as a form parameter, JSON results.
LabelIndex fetch_labels_from_endpoint(const std::string& endpoint_url,
                                      const std::set<Iri>& classes,
                                      const std::vector<Iri>& predicates);

}  // namespace ontoforge

#pragma once
// Scoring pipeline: graph-to-record projection through fixed conjunctive
// pattern queries, optimal record alignment, slot-level counting, and
// micro/macro aggregation.

#include <map>
#include <string>
#include <vector>

#include "ontoforge/rdf.hpp"
#include "ontoforge/tools.hpp"

namespace ontoforge {

struct QueryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PatternTerm {
    enum class Kind { iri, variable, literal };
    Kind kind = Kind::variable;
    Iri iri;
    std::string var;
    std::string literal;  // matched against the lexical form only

    // "?x" -> variable, "<...>" -> IRI, "a" -> rdf:type, else literal.
    static PatternTerm parse(const std::string& s);
    std::string to_string() const;
};

struct TriplePattern {
    PatternTerm subject, predicate, object;
};

struct ProjectionQuery {
    std::vector<TriplePattern> patterns;
    std::vector<TriplePattern> optionals;
    std::string group_by;
};

enum class SlotKind { string_, number, integer };
enum class SlotNormalize { none, casefold, unitlabel };

struct SlotSpec {
    std::string name;
    SlotKind kind = SlotKind::string_;
    SlotNormalize normalize = SlotNormalize::none;
    std::string variable;  // query variable filling this slot
};

struct RecordSchema {
    std::string category;
    std::vector<SlotSpec> slots;
    ProjectionQuery query;
    std::map<std::string, std::string> unit_labels;  // for SlotNormalize::unitlabel

    Json to_json() const;
    static RecordSchema from_json(const Json& j);
};

// Slot name -> value; an absent key is an empty slot.
using Record = std::map<std::string, std::string>;

std::vector<Record> project_records(const Graph& graph, const RecordSchema& schema);

Json records_to_json(const std::vector<Record>& records);
std::vector<Record> records_from_json(const Json& j);

struct Counts {
    long tp = 0, fp = 0, fn = 0;
    Counts& operator+=(const Counts& o);
    bool operator==(const Counts&) const = default;
};

struct Metrics {
    double precision = 0.0, recall = 0.0, f1 = 0.0;
};

struct MatchResult {
    Counts counts;
    std::map<std::string, Counts> per_slot;
};

MatchResult match_records(const std::vector<Record>& predicted,
                          const std::vector<Record>& gold, const RecordSchema& schema);

Metrics score(const Counts& counts);

// micro = score of summed counts; macro = arithmetic mean of the per-category
// metrics, f1 averaged directly.
std::pair<Metrics, Metrics> aggregate(const std::map<std::string, Counts>& per_category);

// Max-total-weight one-to-one assignment on a weight matrix (rows are padded
// internally when rectangular). Returns column index per row, -1 if the row
// is unassigned.
std::vector<int> hungarian_assignment(const std::vector<std::vector<long>>& weight);

// Slot FP/FN ranking, per-paper Lorenz concentration, and a Pareto projection
// of F1 assuming the top-N slots' errors are fixed.
Json error_anatomy(const std::map<std::string, Counts>& per_slot,
                   const std::map<std::string, Counts>& per_paper);

}  // namespace ontoforge

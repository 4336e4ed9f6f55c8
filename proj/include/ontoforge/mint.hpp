#pragma once
// Deterministic IRI minting, scoped per (document id, class local name).

#include <map>
#include <stdexcept>
#include <string>

#include "ontoforge/rdf.hpp"

namespace ontoforge {

struct InvalidDocIdError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class MintState {
public:
    explicit MintState(Iri base) : base_(std::move(base)) {}

    // Returns <base><doc_id>/<class_local>_<n>, n starting at 1 per scope.
    // Replaying the same call sequence from a fresh state yields the same IRIs.
    Iri mint(const std::string& doc_id, const std::string& class_local);

    const Iri& base() const { return base_; }

private:
    Iri base_;
    std::map<std::pair<std::string, std::string>, int> counters_;
};

// Pipeline document ids use the dotted DOI form; '/', '#', and whitespace are
// reserved by the IRI layout.
void check_doc_id(const std::string& doc_id);

}  // namespace ontoforge

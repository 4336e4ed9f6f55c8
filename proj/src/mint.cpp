#include "ontoforge/mint.hpp"

#include <cctype>

namespace ontoforge {

void check_doc_id(const std::string& doc_id) {
    if (doc_id.empty()) throw InvalidDocIdError("document id must be nonempty");
    for (char c : doc_id) {
        if (c == '/' || c == '#' || std::isspace(static_cast<unsigned char>(c)))
            throw InvalidDocIdError("document id contains reserved character: " + doc_id);
    }
}

Iri MintState::mint(const std::string& doc_id, const std::string& class_local) {
    check_doc_id(doc_id);
    if (class_local.empty()) throw std::invalid_argument("class local name must be nonempty");
    int& counter = counters_[{doc_id, class_local}];
    ++counter;
    return Iri(base_.value + doc_id + "/" + class_local + "_" + std::to_string(counter));
}

}  // namespace ontoforge

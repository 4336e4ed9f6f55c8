#pragma once
// Deterministic random-graph generator shared by the round-trip tests.

#include <random>
#include <string>

#include "ontoforge/rdf.hpp"

namespace testutil {

inline ontoforge::Graph random_graph(std::mt19937& rng) {
    using namespace ontoforge;
    Graph g;
    std::uniform_int_distribution<int> triple_count(0, 25);
    std::uniform_int_distribution<int> pick(0, 9);
    std::uniform_int_distribution<int> kind(0, 5);

    auto iri = [&](const std::string& stem) {
        return Iri("http://gen.example/" + stem + std::to_string(pick(rng)));
    };

    const int n = triple_count(rng);
    for (int i = 0; i < n; ++i) {
        Term subject = pick(rng) < 8 ? Term{iri("s")} : Term{BlankNode{"b" + std::to_string(pick(rng))}};
        Iri predicate = iri("p");
        Term object;
        switch (kind(rng)) {
            case 0: object = iri("o"); break;
            case 1: object = Literal{"plain text " + std::to_string(pick(rng))}; break;
            case 2: object = Literal{std::to_string(pick(rng)), xsd::integer_}; break;
            case 3: object = Literal{std::to_string(pick(rng)) + ".5", xsd::decimal_}; break;
            case 4: object = Literal{"quote\"and\\slash\n" + std::to_string(pick(rng))}; break;
            default:
                object = Literal{"bonjour" + std::to_string(pick(rng)), xsd::lang_string, "fr"};
                break;
        }
        g.add(Triple{std::move(subject), Term{predicate}, std::move(object)});
    }
    if (pick(rng) < 5) g.set_prefix("gen", Iri("http://gen.example/"));
    return g;
}

}  // namespace testutil

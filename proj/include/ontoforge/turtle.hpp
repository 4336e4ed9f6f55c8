#pragma once
// Turtle subset reader/writer. Supported grammar: @prefix, IRIREF, prefixed
// names, `a`, blank node labels and property lists [ ... ], object lists ",",
// predicate-object lists ";", plain/typed/lang-tagged literals, and
// integer/decimal/double/boolean shorthand. No collections, no @base, no
// multiline literals.

#include <stdexcept>
#include <string>

#include "ontoforge/rdf.hpp"

namespace ontoforge {

struct TurtleSyntaxError : std::runtime_error {
    int line;
    int column;
    TurtleSyntaxError(int line, int column, const std::string& message);
};

struct UnknownPrefixError : TurtleSyntaxError {
    std::string prefix;
    UnknownPrefixError(int line, int column, std::string prefix);
};

Graph parse_turtle(const std::string& text);

// Canonical form: prefixes sorted by name, one triple per line grouped by
// subject, sorted by (subject, predicate, object) string keys. Byte-identical
// for equal graphs; parse_turtle(serialize_turtle(g)) == g.
std::string serialize_turtle(const Graph& g);

}  // namespace ontoforge

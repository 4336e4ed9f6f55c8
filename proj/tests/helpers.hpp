#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "ontoforge/schema.hpp"
#include "ontoforge/tools.hpp"
#include "ontoforge/turtle.hpp"

namespace testutil {

inline std::string fixture_path(const std::string& name) {
    return std::string(FIXTURE_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline ontoforge::Graph fixture_tbox() {
    return ontoforge::parse_turtle(slurp(fixture_path("tbox.ttl")));
}

inline ontoforge::SchemaModel fixture_schema() {
    return ontoforge::extract_schema(fixture_tbox());
}

inline ontoforge::ToolSet fixture_toolset() {
    auto tbox = fixture_tbox();
    return ontoforge::compile_tools(ontoforge::extract_schema(tbox), tbox);
}

constexpr const char* kOnto = "http://example.org/onto#";
constexpr const char* kOm = "http://example.org/om#";
constexpr const char* kMintBase = "http://example.org/kg/";
constexpr const char* kDocId = "10.1039.C5DT04764A";

inline ontoforge::Iri onto(const std::string& local) {
    return ontoforge::Iri(std::string(kOnto) + local);
}
inline ontoforge::Iri om(const std::string& local) {
    return ontoforge::Iri(std::string(kOm) + local);
}

}  // namespace testutil

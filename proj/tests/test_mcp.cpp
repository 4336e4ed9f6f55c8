#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "ontoforge/mcp_server.hpp"
#include "ontoforge/tools.hpp"

using namespace ontoforge;

namespace {

McpServer make_server() {
    auto tbox = testutil::fixture_tbox();
    SchemaModel schema = extract_schema(tbox);
    ToolSet toolset = compile_tools(schema, tbox);
    auto session = std::make_shared<Session>(Graph{}, std::move(schema), std::move(toolset),
                                             Iri(testutil::kMintBase), testutil::kDocId);
    return McpServer(std::move(session));
}

Json rpc(McpServer& server, const Json& msg) {
    auto out = server.handle(msg);
    REQUIRE(out.has_value());
    return *out;
}

Json request(int id, const std::string& method, Json params = Json::object()) {
    return Json{{"jsonrpc", "2.0"}, {"id", id}, {"method", method}, {"params", params}};
}

McpServer initialized_server() {
    McpServer server = make_server();
    rpc(server, request(0, "initialize", Json{{"protocolVersion", kProtocolVersion}}));
    return server;
}

}  // namespace

TEST_CASE("initialize handshake") {
    McpServer server = make_server();
    Json out = rpc(server, request(1, "initialize"));
    CHECK(out.at("id") == 1);
    CHECK(out.at("result").at("protocolVersion") == kProtocolVersion);
    CHECK(out.at("result").at("capabilities").contains("tools"));
    CHECK(server.initialized());
}

TEST_CASE("tools/list mirrors the manifest field for field") {
    McpServer server = initialized_server();
    Json listed = rpc(server, request(2, "tools/list")).at("result").at("tools");
    Json manifest = emit_manifest(server.session().toolset()).at("tools");
    REQUIRE(listed.size() == manifest.size());
    for (size_t i = 0; i < listed.size(); ++i) {
        CHECK(listed.at(i).at("name") == manifest.at(i).at("name"));
        CHECK(listed.at(i).at("description") == manifest.at(i).at("doc"));
        CHECK(listed.at(i).at("inputSchema") == manifest.at(i).at("input_schema"));
    }
}

TEST_CASE("tools/call success and violation envelopes") {
    McpServer server = initialized_server();
    Json ok = rpc(server, request(3, "tools/call",
                                  Json{{"name", "create_synthesis"},
                                       {"arguments",
                                        Json{{"doc_id", "d1"}, {"label", "S1"}}}}));
    CHECK(ok.at("result").at("isError") == false);
    Json body = Json::parse(
        ok.at("result").at("content").at(0).at("text").get<std::string>());
    CHECK(body.at("ok") == true);
    CHECK(body.at("status") == "created");

    Json err = rpc(server, request(4, "tools/call",
                                   Json{{"name", "create_temperature_quantity"},
                                        {"arguments", Json{{"value", 120}, {"unit", "C"}}}}));
    CHECK(err.at("result").at("isError") == true);
    Json report = Json::parse(
        err.at("result").at("content").at(0).at("text").get<std::string>());
    CHECK(report.at("error_type") == "OntologyConstraintViolation");
    CHECK(report.at("allowed_values") == Json::array({"degree Celsius", "kelvin"}));
}

TEST_CASE("protocol error codes") {
    McpServer server = make_server();
    CHECK(rpc(server, request(1, "tools/list")).at("error").at("code") == kErrNotInitialized);
    rpc(server, request(2, "initialize"));
    CHECK(rpc(server, request(3, "nope")).at("error").at("code") == kErrMethodNotFound);
    CHECK(rpc(server, request(4, "tools/call", Json{{"name", "no_such_tool"}}))
              .at("error")
              .at("code") == kErrInvalidParams);
    CHECK(rpc(server, request(5, "tools/call",
                              Json{{"name", "create_synthesis"}, {"arguments", Json::object()}}))
              .at("error")
              .at("code") == kErrInvalidParams);
}

TEST_CASE("response id mirrors the request id; notifications are silent") {
    McpServer server = initialized_server();
    CHECK(rpc(server, request(42, "tools/list")).at("id") == 42);
    Json string_id{{"jsonrpc", "2.0"}, {"id", "abc"}, {"method", "tools/list"}};
    CHECK(rpc(server, string_id).at("id") == "abc");
    Json notification{{"jsonrpc", "2.0"}, {"method", "notifications/initialized"}};
    CHECK_FALSE(server.handle(notification).has_value());
}

TEST_CASE("malformed lines never crash the line handler") {
    McpServer server = initialized_server();
    auto parse_error = server.handle_line("{not json");
    REQUIRE(parse_error.has_value());
    CHECK(Json::parse(*parse_error).at("error").at("code") == kErrParse);
    CHECK_FALSE(server.handle_line("   ").has_value());
    auto bad_request = server.handle_line("[1,2,3]");
    REQUIRE(bad_request.has_value());
    CHECK(Json::parse(*bad_request).at("error").at("code") == kErrInvalidRequest);
    auto missing_version = server.handle_line(R"({"id":1,"method":"tools/list"})");
    REQUIRE(missing_version.has_value());
    CHECK(Json::parse(*missing_version).at("error").at("code") == kErrInvalidRequest);
}

TEST_CASE("serve_stdio pairs responses strictly in order") {
    McpServer server = make_server();
    std::istringstream in(
        R"({"jsonrpc":"2.0","id":1,"method":"initialize","params":{}})"
        "\n"
        R"({"jsonrpc":"2.0","id":2,"method":"tools/list"})"
        "\n");
    std::ostringstream out;
    serve_stdio(server, in, out);
    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);
    CHECK(Json::parse(line).at("id") == 1);
    std::getline(lines, line);
    CHECK(Json::parse(line).at("id") == 2);
    CHECK_FALSE(std::getline(lines, line));
}

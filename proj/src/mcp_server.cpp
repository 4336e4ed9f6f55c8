#include "ontoforge/mcp_server.hpp"

#include <cstdlib>
#include <iostream>

namespace ontoforge {

namespace {

Json error_response(const Json& id, int code, const std::string& message) {
    return Json{{"jsonrpc", "2.0"},
                {"id", id},
                {"error", Json{{"code", code}, {"message", message}}}};
}

Json result_response(const Json& id, Json result) {
    return Json{{"jsonrpc", "2.0"}, {"id", id}, {"result", std::move(result)}};
}

bool log_enabled() {
    const char* level = std::getenv("ONTOFORGE_LOG");
    return level && std::string(level) != "off" && std::string(level) != "";
}

void log_warn(const std::string& msg) {
    if (log_enabled()) std::cerr << "[ontoforge] " << msg << "\n";
}

}  // namespace

McpServer::McpServer(std::shared_ptr<Session> session) : session_(std::move(session)) {}

Json McpServer::tools_list() const {
    Json tools = Json::array();
    for (const auto& tool : session_->toolset().tools) {
        tools.push_back(Json{{"name", tool.name},
                             {"description", tool.doc},
                             {"inputSchema", input_schema_json(tool)}});
    }
    return Json{{"tools", tools}};
}

Json McpServer::tools_call(const Json& params) {
    const std::string name = params.at("name").get<std::string>();
    Json arguments = params.value("arguments", Json::object());
    if (!arguments.is_object()) throw std::invalid_argument("arguments must be an object");

    InvokeOutcome outcome = session_->invoke(name, arguments);
    Json content = Json::array();
    content.push_back(Json{{"type", "text"}, {"text", outcome.to_json().dump()}});
    return Json{{"content", content}, {"isError", !outcome.ok}};
}

std::optional<Json> McpServer::handle(const Json& msg) {
    if (!msg.is_object())
        return error_response(Json(), kErrInvalidRequest, "request must be a JSON object");

    const bool is_notification = !msg.contains("id");
    Json id = is_notification ? Json() : msg.at("id");
    if (!id.is_null() && !id.is_number() && !id.is_string())
        return error_response(Json(), kErrInvalidRequest, "invalid request id");

    if (msg.value("jsonrpc", "") != "2.0" || !msg.contains("method") ||
        !msg.at("method").is_string()) {
        if (is_notification) return std::nullopt;
        return error_response(id, kErrInvalidRequest, "invalid JSON-RPC request");
    }

    const std::string method = msg.at("method").get<std::string>();
    Json params = msg.value("params", Json::object());

    if (method == "initialize") {
        if (params.is_object() && params.contains("protocolVersion") &&
            params.at("protocolVersion") != kProtocolVersion) {
            log_warn("client requested protocol version " +
                     params.at("protocolVersion").dump() + "; serving " + kProtocolVersion);
        }
        initialized_ = true;
        Json result{{"protocolVersion", kProtocolVersion},
                    {"serverInfo", Json{{"name", kServerName}, {"version", kServerVersion}}},
                    {"capabilities", Json{{"tools", Json::object()}}}};
        if (is_notification) return std::nullopt;
        return result_response(id, std::move(result));
    }
    if (method.rfind("notifications/", 0) == 0) return std::nullopt;

    if (method == "tools/list" || method == "tools/call") {
        if (!initialized_) {
            if (is_notification) return std::nullopt;
            return error_response(id, kErrNotInitialized, "server not initialized");
        }
        try {
            Json result = method == "tools/list" ? tools_list() : tools_call(params);
            if (is_notification) return std::nullopt;
            return result_response(id, std::move(result));
        } catch (const UnknownToolError& e) {
            if (is_notification) return std::nullopt;
            return error_response(id, kErrInvalidParams, e.what());
        } catch (const std::exception& e) {
            if (is_notification) return std::nullopt;
            return error_response(id, kErrInvalidParams,
                                  std::string("invalid params: ") + e.what());
        }
    }

    if (is_notification) return std::nullopt;
    return error_response(id, kErrMethodNotFound, "method not found: " + method);
}

std::optional<std::string> McpServer::handle_line(const std::string& line) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) return std::nullopt;
    Json msg = Json::parse(line, nullptr, false);
    if (msg.is_discarded()) {
        return error_response(Json(), kErrParse, "parse error").dump();
    }
    auto response = handle(msg);
    if (!response) return std::nullopt;
    return response->dump();
}

void serve_stdio(McpServer& server, std::istream& in, std::ostream& out) {
    std::string line;
    while (std::getline(in, line)) {
        auto response = server.handle_line(line);
        if (response) out << *response << "\n" << std::flush;
    }
}

}  // namespace ontoforge

#pragma once
// MCP-compatible JSON-RPC 2.0 endpoint over newline-delimited JSON.
// Constraint violations surface as isError tool results so the caller can
// read the structured report and repair; protocol errors are reserved for
// malformed requests.

#include <functional>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>

#include "ontoforge/runtime.hpp"

namespace ontoforge {

constexpr const char* kProtocolVersion = "2024-11-05";
constexpr const char* kServerName = "ontoforge";
constexpr const char* kServerVersion = "0.1.0";

constexpr int kErrMethodNotFound = -32601;
constexpr int kErrInvalidParams = -32602;
constexpr int kErrNotInitialized = -32002;
constexpr int kErrParse = -32700;
constexpr int kErrInvalidRequest = -32600;

class McpServer {
public:
    explicit McpServer(std::shared_ptr<Session> session);

    // Handles one raw input line. Returns the response line without trailing
    // newline; nullopt for notifications and unparseable id-less garbage.
    // Never throws on malformed input.
    std::optional<std::string> handle_line(const std::string& line);

    // Structured dispatch for an already-parsed message.
    std::optional<Json> handle(const Json& msg);

    Session& session() { return *session_; }
    bool initialized() const { return initialized_; }

private:
    std::shared_ptr<Session> session_;
    bool initialized_ = false;

    Json tools_list() const;
    Json tools_call(const Json& params);
};

// Blocking stdio loop; one JSON object per line. Returns on EOF.
void serve_stdio(McpServer& server, std::istream& in, std::ostream& out);

}  // namespace ontoforge

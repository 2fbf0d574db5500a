#pragma once

#include <chroma_infer/error.hpp>
#include <nlohmann/json.hpp>

#include "workspace.hpp"

namespace httplib {
class Server;
}

namespace chroma_infer::app {

/// HTTP status for an error code: 4xx for caller mistakes, 5xx otherwise.
int http_status(ErrorCode code);

/// {"error": {"code", "message", "detail"}}
nlohmann::json api_error(ErrorCode code, const std::string& message, const std::string& detail = {});

/// Registers the JSON API under /api/v1 and the unversioned /api alias. The
/// handlers only read `ws`, which must outlive the server.
void register_routes(httplib::Server& server, const Workspace& ws);

}  // namespace chroma_infer::app

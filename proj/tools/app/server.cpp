#include "server.hpp"

#include <chroma_infer/json.hpp>
#include <functional>
#include <httplib.h>

namespace chroma_infer::app {

using nlohmann::json;

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input:
    case ErrorCode::ordering:
    case ErrorCode::validation:
    case ErrorCode::parse:
    case ErrorCode::shape:
    case ErrorCode::alignment:
    case ErrorCode::split:
      return 400;
    case ErrorCode::lookup:
      return 404;
    case ErrorCode::incomplete_data:
    case ErrorCode::empty_cohort:
    case ErrorCode::missing_data:
    case ErrorCode::singular_fit:
    case ErrorCode::undefined_correlation:
      return 422;
    case ErrorCode::io:
      return 500;
  }
  return 500;
}

json api_error(ErrorCode code, const std::string& message, const std::string& detail) {
  return {{"error", {{"code", to_string(code)}, {"message", message}, {"detail", detail}}}};
}

namespace {

constexpr const char* kJson = "application/json";

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

using Handler = std::function<json(const httplib::Request&)>;

httplib::Server::Handler guarded(Handler handler) {
  return [handler = std::move(handler)](const httplib::Request& req, httplib::Response& res) {
    try {
      reply(res, 200, handler(req));
    } catch (const Error& e) {
      reply(res, http_status(e.code()), api_error(e.code(), e.what(), e.detail()));
    } catch (const json::exception& e) {
      reply(res, 400, api_error(ErrorCode::parse, "malformed request", e.what()));
    } catch (const std::exception& e) {
      reply(res, 500, api_error(ErrorCode::io, "internal error", e.what()));
    }
  };
}

json body_of(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  return json::parse(req.body);
}

}  // namespace

void register_routes(httplib::Server& server, const Workspace& ws) {
  const Handler colors = [&ws](const httplib::Request&) {
    json list = json::array();
    for (const auto& e : ws.palette().entries()) list.push_back(e);
    return json{{"white_point", ws.config().white_point}, {"colors", list}};
  };
  const Handler concepts = [&ws](const httplib::Request&) {
    json domains = json::array();
    for (const auto& d : ws.domains()) {
      domains.push_back({{"name", d},
                         {"more", associations::more_concept(d)},
                         {"less", associations::less_concept(d)}});
    }
    json fitted = json::array();
    for (const auto& [name, m] : ws.models()) fitted.push_back(name);
    return json{{"concepts", ws.concepts()},
                {"domains", domains},
                {"fitted", fitted},
                {"default_weights", inference::kDefaultWeights}};
  };
  const Handler predict = [&ws](const httplib::Request& req) {
    return to_json(run_predict(ws, predict_query_from_json(body_of(req))));
  };
  const Handler scale = [&ws](const httplib::Request& req) {
    return to_json(run_scale(ws, scale_query_from_json(body_of(req))));
  };
  const Handler stimulus = [&ws](const httplib::Request& req) {
    return to_json(run_stimulus(ws, stimulus_query_from_json(body_of(req))));
  };
  const Handler health = [](const httplib::Request&) { return json{{"status", "ok"}}; };

  for (const std::string prefix : {"/api/v1", "/api"}) {
    server.Get(prefix + "/health", guarded(health));
    server.Get(prefix + "/colors", guarded(colors));
    server.Get(prefix + "/concepts", guarded(concepts));
    server.Post(prefix + "/predict", guarded(predict));
    server.Post(prefix + "/scale", guarded(scale));
    server.Post(prefix + "/stimulus", guarded(stimulus));
  }
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
  server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (res.status == 404 && res.body.empty()) {
      reply(res, 404, api_error(ErrorCode::lookup, "no route for " + req.method + " " + req.path));
    }
  });
}

}  // namespace chroma_infer::app

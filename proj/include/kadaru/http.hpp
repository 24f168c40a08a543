// Routes for the HTTP API on a cpp-httplib server.
#pragma once

#include <optional>
#include <string>

#include "httplib.h"
#include "kadaru/service.hpp"

namespace kadaru {

namespace detail {

inline std::optional<std::string> query_param(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) return std::nullopt;
  return req.get_param_value(name);
}

inline void send(httplib::Response& res, const Response& out) {
  res.status = out.status;
  res.set_content(out.body, out.content_type);
}

}  // namespace detail

/// Registers the /api endpoints. `service` must outlive the server.
inline void mount_api(httplib::Server& server, const Service& service) {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});

  server.Get("/api/render", [&service](const httplib::Request& req, httplib::Response& res) {
    detail::send(res, service.render(detail::query_param(req, "code"),
                                     detail::query_param(req, "style"),
                                     detail::query_param(req, "highlight")));
  });
  server.Post("/api/search", [&service](const httplib::Request& req, httplib::Response& res) {
    detail::send(res, service.search(req.body));
  });
  server.Get("/api/signs", [&service](const httplib::Request&, httplib::Response& res) {
    detail::send(res, service.signs());
  });
  server.Get(R"(/api/signs/([^/]+))", [&service](const httplib::Request& req, httplib::Response& res) {
    detail::send(res, service.sign(req.matches[1].str()));
  });
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });

  server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string message = "unexpected failure";
    try {
      if (ep) std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      message = e.what();
    } catch (...) {
    }
    detail::send(res, api_error(500, "InternalError", message));
  });
  server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (res.status == 404 && res.body.empty() && req.path.rfind("/api/", 0) == 0) {
      detail::send(res, api_error(404, "NotFound", "no endpoint " + req.method + " " + req.path));
    }
  });
}

}  // namespace kadaru

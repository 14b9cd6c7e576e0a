#pragma once

// HTTP binding for Service via cpp-httplib. Needs httplib.h on the include path.

#include <string>

#include <httplib.h>

#include "groundsmith/service.hpp"

namespace groundsmith {

inline void bind_routes(httplib::Server& server, Service& service) {
  auto forward = [&service](const httplib::Request& req, httplib::Response& res) {
    auto r = service.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server.Get(R"(/.*)", forward);
  // A POST without Content-Length or chunked encoding has no body; the plain
  // handler would block reading until the client closes.
  server.Post(R"(/.*)", [&service](const httplib::Request& req, httplib::Response& res,
                                   const httplib::ContentReader& read) {
    std::string body;
    if (req.has_header("Content-Length") || req.has_header("Transfer-Encoding"))
      read([&body](const char* data, std::size_t n) {
        body.append(data, n);
        return true;
      });
    auto r = service.handle(req.method, req.path, body);
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  });
}

}  // namespace groundsmith

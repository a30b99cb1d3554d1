#pragma once

#include <string>

#include "metasel/service.hpp"

namespace httplib {
class Server;
}

namespace metasel {

// Wires the service onto an HTTP server:
//   GET  /v1/recommendations?title=...&doc_id=...&limit=7
//   POST /v1/click            {"request_id": ..., "position": ...}
//   GET  /v1/metrics/ctr?since=<epoch seconds>
void register_routes(httplib::Server& server, RecommendService& service);

// Blocking listen loop (foreground serve mode).
int run_http_server(RecommendService& service, const std::string& host, int port);

}  // namespace metasel

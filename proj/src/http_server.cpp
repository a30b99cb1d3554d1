#include "metasel/http_server.hpp"

#include <nlohmann/json.hpp>

#define CPPHTTPLIB_NO_EXCEPTIONS 0
#include <httplib.h>

namespace metasel {

using nlohmann::json;

namespace {

json response_to_json(const RecommendResponse& r) {
    json items = json::array();
    for (const auto& item : r.items)
        items.push_back({{"doc_id", item.doc_id},
                         {"title", item.title},
                         {"position", item.position}});
    return {{"request_id", r.request_id},
            {"arm", arm_name(r.arm)},
            {"algorithm", algorithm_name(r.algorithm)},
            {"fallback", r.fallback},
            {"items", std::move(items)}};
}

void set_error(httplib::Response& res, int status, const std::string& message) {
    res.status = status;
    res.set_content(json{{"error", message}}.dump(), "application/json");
}

}  // namespace

void register_routes(httplib::Server& server, RecommendService& service) {
    server.Get("/v1/recommendations", [&service](const httplib::Request& req,
                                                 httplib::Response& res) {
        std::string title = req.get_param_value("title");
        std::optional<std::string> doc_id;
        if (req.has_param("doc_id")) doc_id = req.get_param_value("doc_id");
        int limit = 7;
        if (req.has_param("limit")) {
            try {
                limit = std::stoi(req.get_param_value("limit"));
            } catch (const std::exception&) {
                set_error(res, 422, "limit must be an integer");
                return;
            }
        }
        auto outcome = service.handle_recommend(title, doc_id, limit);
        switch (outcome.status) {
            case ServiceStatus::Ok:
                res.set_content(response_to_json(outcome.response).dump(), "application/json");
                break;
            case ServiceStatus::EmptyQuery:
            case ServiceStatus::BadRequest:
                set_error(res, 422, outcome.message);
                break;
            case ServiceStatus::NoModel:
                set_error(res, 503, outcome.message);
                break;
            default:
                set_error(res, 500, outcome.message);
        }
    });

    server.Post("/v1/click", [&service](const httplib::Request& req, httplib::Response& res) {
        json body;
        try {
            body = json::parse(req.body);
        } catch (const json::parse_error&) {
            set_error(res, 422, "body must be JSON");
            return;
        }
        if (!body.contains("request_id") || !body.contains("position")) {
            set_error(res, 422, "body needs request_id and position");
            return;
        }
        auto outcome = service.record_click(body["request_id"].get<std::string>(),
                                            body["position"].get<int>());
        switch (outcome.status) {
            case ServiceStatus::Ok:
                res.status = 204;
                break;
            case ServiceStatus::NotFound:
                set_error(res, 404, outcome.message);
                break;
            default:
                set_error(res, 422, outcome.message);
        }
    });

    server.Get("/v1/metrics/ctr", [&service](const httplib::Request& req,
                                             httplib::Response& res) {
        std::optional<int64_t> since;
        if (req.has_param("since")) {
            try {
                since = std::stoll(req.get_param_value("since"));
            } catch (const std::exception&) {
                set_error(res, 422, "since must be epoch seconds");
                return;
            }
        }
        res.set_content(ctr_report_json_string(service.report(since)), "application/json");
    });
}

int run_http_server(RecommendService& service, const std::string& host, int port) {
    httplib::Server server;
    register_routes(server, service);
    return server.listen(host, port) ? 0 : 1;
}

}  // namespace metasel

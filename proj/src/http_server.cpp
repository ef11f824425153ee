#include "colorpin/http_server.hpp"

#include <httplib.h>

#include "colorpin/auth_service.hpp"

namespace colorpin {

void mount_routes(httplib::Server& server, AuthService& service, const std::optional<std::string>& static_dir) {
    server.Post(R"(/.*)", [&service](const httplib::Request& req, httplib::Response& res) {
        const HttpResponse out = service.dispatch("POST", req.path, req.body);
        res.status = out.status;
        res.set_content(out.body, "application/json");
    });
    server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(R"({"status":"ok"})", "application/json");
    });
    if (static_dir) {
        server.set_mount_point("/", *static_dir);
    }
}

}  // namespace colorpin

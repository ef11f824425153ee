#pragma once

#include <optional>
#include <string>

namespace httplib {
class Server;
}

namespace colorpin {

class AuthService;

/// Routes every POST to AuthService::dispatch, adds GET /health and serves
/// `static_dir` (the web client bundle) at / when given.
void mount_routes(httplib::Server& server, AuthService& service,
                  const std::optional<std::string>& static_dir = std::nullopt);

}  // namespace colorpin

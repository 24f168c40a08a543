// HTTP server for the render/search API.
//
// Environment: KADARU_BIND, KADARU_PORT, KADARU_DB, KADARU_STATIC. Flags of
// the same names override them.
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "kadaru/http.hpp"
#include "kadaru/seed.hpp"

namespace {

std::string env_or(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : fallback;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kadaru sign search server"};
  std::string bind = env_or("KADARU_BIND", "127.0.0.1");
  int port = std::atoi(env_or("KADARU_PORT", "8080").c_str());
  std::string db_path = env_or("KADARU_DB", "");
  std::string static_dir = env_or("KADARU_STATIC", "");
  app.add_option("--bind", bind, "Address to listen on");
  app.add_option("--port", port, "Port to listen on")->check(CLI::Range(0, 65535));
  app.add_option("--db", db_path, "Sign database file (default: built-in seed)");
  app.add_option("--static", static_dir, "Directory served at /");
  CLI11_PARSE(app, argc, argv);

  std::optional<kadaru::Catalogue> loaded;
  try {
    if (!db_path.empty()) loaded = kadaru::load_db_file(db_path);
  } catch (const std::exception& e) {
    std::cerr << "kadaru-server: " << e.what() << '\n';
    return 1;
  }
  const kadaru::Catalogue& db = loaded ? *loaded : kadaru::seed_catalogue();
  const kadaru::Service service(db);

  httplib::Server server;
  kadaru::mount_api(server, service);
  if (!static_dir.empty() && !server.set_mount_point("/", static_dir)) {
    std::cerr << "kadaru-server: cannot serve " << static_dir << '\n';
    return 1;
  }

  if (port == 0) {
    port = server.bind_to_any_port(bind);
    if (port < 0) {
      std::cerr << "kadaru-server: cannot bind " << bind << '\n';
      return 1;
    }
  } else if (!server.bind_to_port(bind, port)) {
    std::cerr << "kadaru-server: cannot bind " << bind << ':' << port << '\n';
    return 1;
  }
  std::cerr << "kadaru-server: " << db.records().size() << " signs, listening on " << bind << ':'
            << port << std::endl;
  return server.listen_after_bind() ? 0 : 1;
}

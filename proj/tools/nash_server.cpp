#include <iostream>

#include <CLI11.hpp>
#include <httplib.h>

#include "nash/service.hpp"

int main(int argc, char** argv) {
  CLI::App app{"HTTP service for the equilibrium solvers", "nash_server"};
  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t workers = 0;
  double timeout = 120;
  app.add_option("--host", host, "address to bind");
  app.add_option("--port", port, "port to listen on (0: any free port)");
  app.add_option("--workers", workers, "concurrent solver jobs (0: one per core)");
  app.add_option("--timeout", timeout, "default seconds per request");
  CLI11_PARSE(app, argc, argv);

  nash::SolveService service({workers, std::chrono::milliseconds(static_cast<long>(timeout * 1000))});
  httplib::Server server;
  const auto handle = [](httplib::Response& res, const nash::ServiceResponse& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server.Post("/api/solve", [&](const httplib::Request& req, httplib::Response& res) { handle(res, service.solve(req.body)); });
  server.Post("/api/convert", [&](const httplib::Request& req, httplib::Response& res) { handle(res, service.convert(req.body)); });
  server.Get("/api/health", [&](const httplib::Request&, httplib::Response& res) { handle(res, service.health()); });

  if (port == 0) port = server.bind_to_any_port(host);
  else if (!server.bind_to_port(host, port)) port = -1;
  if (port < 0) {
    std::cerr << "nash_server: cannot bind " << host << "\n";
    return 1;
  }
  std::cout << "listening on http://" << host << ":" << port << std::endl;
  server.listen_after_bind();
  return 0;
}

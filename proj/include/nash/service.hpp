#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <memory>
#include <semaphore>
#include <string>

namespace nash {

struct ServiceConfig {
  std::size_t workers = 0;  // 0: one per hardware thread
  std::chrono::milliseconds timeout{120000};
};

struct ServiceResponse {
  int status = 200;
  std::string body;  // JSON
};

/// Request handling behind the HTTP endpoints, usable in process.
///
/// POST /api/solve   {"game", "format"?, "algorithm": "enum"|"lh"|"lemke",
///                    "options"?: {"label", "prior", "seed", "mode",
///                    "zero_sum", "symmetric", "sequence_form", "timeout"},
///                    "session"?}
/// POST /api/convert {"game", "format"?, "target": "strategic"|"sequence"|"xml"}
/// GET  /api/health
///
/// Each solve runs on its own thread while holding one of `workers` slots;
/// requests beyond that wait for a slot within their timeout.  On timeout
/// the job is cancelled and joined before the 408 response is returned.
class SolveService {
 public:
  explicit SolveService(ServiceConfig config = {});
  ~SolveService();

  ServiceResponse solve(const std::string& request_body);
  ServiceResponse convert(const std::string& request_body);
  ServiceResponse health() const;

  std::size_t active_jobs() const { return active_; }
  std::size_t worker_count() const { return workers_; }

 private:
  std::size_t workers_;
  std::chrono::milliseconds timeout_;
  std::unique_ptr<std::counting_semaphore<1024>> slots_;
  std::atomic<std::size_t> active_{0};
};

}  // namespace nash

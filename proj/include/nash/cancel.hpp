#pragma once

#include <stdexcept>
#include <stop_token>

namespace nash {

/// Thrown when a computation notices that its stop token was triggered.
class Cancelled : public std::runtime_error {
 public:
  Cancelled() : std::runtime_error("computation cancelled") {}
};

inline void check_cancelled(const std::stop_token& stop) {
  if (stop.stop_requested()) throw Cancelled();
}

}  // namespace nash

#include "nash/enumeration.hpp"

#include <algorithm>
#include <condition_variable>
#include <deque>
#include <exception>
#include <mutex>
#include <thread>

namespace nash {
namespace {

struct Found {
  std::size_t p_index;
  std::size_t q_index;
  RationalVector x;
  RationalVector y;
};

std::vector<std::size_t> missing_labels(const LabeledVertex& pv, std::size_t total) {
  std::vector<std::size_t> missing;
  std::size_t k = 0;
  for (std::size_t label = 0; label < total; ++label) {
    while (k < pv.labels.size() && pv.labels[k] < label) ++k;
    if (k == pv.labels.size() || pv.labels[k] != label) missing.push_back(label);
  }
  return missing;
}

void probe(const HPolyhedron& q, const LabeledVertex& pv, std::size_t p_index, std::size_t total, std::size_t m,
           std::size_t n, const std::stop_token& stop, std::vector<Found>& out) {
  const RationalVector x(pv.coords.begin(), pv.coords.begin() + static_cast<long>(m));
  std::size_t q_index = 0;
  enumerate_vertices(
      face(q, missing_labels(pv, total)),
      [&](const LabeledVertex& qv) {
        out.push_back({p_index, q_index++, x, RationalVector(qv.coords.begin(), qv.coords.begin() + static_cast<long>(n))});
      },
      stop);
}

std::vector<Found> collect(const BimatrixGame& game, const EnumerationOptions& options) {
  const auto [p, q] = build_best_response_polyhedra(game);
  const std::size_t m = game.rows();
  const std::size_t n = game.cols();
  const std::size_t total = m + n;
  std::vector<Found> found;

  if (options.workers <= 1) {
    std::size_t p_index = 0;
    enumerate_vertices(
        p, [&](const LabeledVertex& pv) { probe(q, pv, p_index++, total, m, n, options.stop, found); }, options.stop);
    return found;
  }

  std::mutex mu;
  std::condition_variable cv;
  std::deque<std::pair<std::size_t, LabeledVertex>> queue;
  bool done = false;
  std::exception_ptr failure;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < options.workers; ++w) {
      pool.emplace_back([&] {
        std::vector<Found> local;
        for (;;) {
          std::unique_lock lock(mu);
          cv.wait(lock, [&] { return !queue.empty() || done; });
          if (queue.empty()) break;
          auto [index, pv] = std::move(queue.front());
          queue.pop_front();
          lock.unlock();
          try {
            probe(q, pv, index, total, m, n, options.stop, local);
          } catch (...) {
            std::lock_guard guard(mu);
            if (!failure) failure = std::current_exception();
          }
        }
        std::lock_guard guard(mu);
        found.insert(found.end(), local.begin(), local.end());
      });
    }
    try {
      std::size_t p_index = 0;
      enumerate_vertices(
          p,
          [&](const LabeledVertex& pv) {
            {
              std::lock_guard guard(mu);
              queue.emplace_back(p_index++, pv);
            }
            cv.notify_one();
          },
          options.stop);
    } catch (...) {
      std::lock_guard guard(mu);
      if (!failure) failure = std::current_exception();
      queue.clear();
    }
    {
      std::lock_guard guard(mu);
      done = true;
    }
    cv.notify_all();
  }
  if (failure) std::rethrow_exception(failure);
  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) {
    return std::tie(a.p_index, a.q_index) < std::tie(b.p_index, b.q_index);
  });
  return found;
}

std::size_t intern(std::vector<RationalVector>& seen, const RationalVector& s) {
  const auto it = std::find(seen.begin(), seen.end(), s);
  if (it != seen.end()) return static_cast<std::size_t>(it - seen.begin()) + 1;
  seen.push_back(s);
  return seen.size();
}

}  // namespace

std::vector<ExtremeEquilibrium> enumerate_extreme_equilibria(const BimatrixGame& game,
                                                             const EnumerationOptions& options) {
  const auto found = collect(game, options);
  std::vector<RationalVector> xs;
  std::vector<RationalVector> ys;
  std::vector<ExtremeEquilibrium> out;
  for (const auto& f : found) {
    const std::size_t i = intern(xs, f.x);
    const std::size_t j = intern(ys, f.y);
    const bool duplicate = std::any_of(out.begin(), out.end(), [&](const auto& e) { return e.idx1 == i && e.idx2 == j; });
    if (duplicate) continue;
    ExtremeEquilibrium e{{Player::One, f.x}, {Player::Two, f.y}, {}, {}, i, j};
    std::tie(e.u, e.v) = game.expected_payoffs(e.x, e.y);
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return std::tie(a.idx1, a.idx2) < std::tie(b.idx1, b.idx2); });
  return out;
}

}  // namespace nash

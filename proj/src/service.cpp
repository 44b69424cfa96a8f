#include "nash/service.hpp"

#include <future>
#include <optional>
#include <thread>

#include <json.hpp>

#include "nash/cancel.hpp"
#include "nash/sequence_form.hpp"
#include "nash/solver.hpp"
#include "nash/tree_xml.hpp"

namespace nash {
namespace {

using json = nlohmann::json;

ServiceResponse reply(int status, json body) { return {status, body.dump()}; }

ServiceResponse error(int status, const std::string& message, const std::string& kind = "error") {
  return reply(status, {{"status", kind}, {"error", message}});
}

json fractions(const RationalVector& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(r.to_string());
  return out;
}

json structured(const GameTree* tree, const SolveResult& r) {
  json eqs = json::array();
  for (const auto& e : r.equilibria) {
    eqs.push_back({{"x", fractions(e.x.probs)},
                   {"y", fractions(e.y.probs)},
                   {"u", e.u.to_string()},
                   {"v", e.v.to_string()},
                   {"idx1", e.idx1},
                   {"idx2", e.idx2}});
  }
  json comps = json::array();
  for (const auto& c : r.components) {
    json cliques = json::array();
    for (const auto& q : c.cliques) cliques.push_back({{"u", q.u}, {"v", q.v}});
    comps.push_back({{"cliques", cliques}});
  }
  json out = {{"equilibria", eqs}, {"components", comps}};
  if (r.behavior && tree) {
    json players = json::array();
    for (const auto* beh : {&r.behavior->b1, &r.behavior->b2}) {
      json sets = json::array();
      for (std::size_t k = 0; k < beh->infosets.size(); ++k) {
        const auto& moves = tree->infoset(beh->infosets[k]).moves;
        json local = json::array();
        for (std::size_t c = 0; c < moves.size(); ++c) {
          local.push_back({{"move", moves[c]}, {"prob", beh->probs[k][c].to_string()}});
        }
        sets.push_back(local);
      }
      players.push_back(sets);
    }
    out["behavior"] = {{"players", players}, {"u", r.behavior->u.to_string()}, {"v", r.behavior->v.to_string()}};
  }
  return out;
}

InputFormat format_of(const json& req) {
  const std::string f = req.value("format", "auto");
  if (f == "auto") return InputFormat::Auto;
  if (f == "xml") return InputFormat::Xml;
  if (f == "matrix") return InputFormat::Matrix;
  throw ParseError("unknown format '" + f + "'");
}

// Runs `work`, mapping library exceptions to HTTP statuses.
template <typename Work>
ServiceResponse guarded(Work&& work) {
  try {
    return work();
  } catch (const UnsupportedGame& e) {
    return error(422, e.what(), "unsupported");
  } catch (const Cancelled&) {
    return error(408, "computation timed out", "timeout");
  } catch (const ParseError& e) {
    return error(400, e.what());
  } catch (const GameError& e) {
    return error(400, e.what());
  } catch (const DomainError& e) {
    return error(400, e.what());
  } catch (const json::exception& e) {
    return error(400, std::string("malformed request: ") + e.what());
  } catch (const std::exception& e) {
    return error(500, e.what());
  }
}

}  // namespace

SolveService::SolveService(ServiceConfig config)
    : workers_(config.workers ? config.workers : std::max(1u, std::thread::hardware_concurrency())),
      timeout_(config.timeout),
      slots_(std::make_unique<std::counting_semaphore<1024>>(static_cast<std::ptrdiff_t>(std::min<std::size_t>(workers_, 1024)))) {}

SolveService::~SolveService() = default;

ServiceResponse SolveService::solve(const std::string& request_body) {
  json req;
  try {
    req = json::parse(request_body);
  } catch (const json::exception& e) {
    return error(400, std::string("malformed request: ") + e.what());
  }
  if (!req.is_object() || !req.contains("game") || !req["game"].is_string()) {
    return error(400, "request needs a string field 'game'");
  }
  SolveOptions options;
  bool zero_sum = false;
  bool symmetric = false;
  InputFormat format = InputFormat::Auto;
  std::chrono::milliseconds timeout = timeout_;
  const std::string session = req.value("session", "");
  const auto parsed = guarded([&]() -> ServiceResponse {
    format = format_of(req);
    const std::string algorithm = req.value("algorithm", "enum");
    if (algorithm == "enum") options.algorithm = Algorithm::Enumerate;
    else if (algorithm == "lh") options.algorithm = Algorithm::LemkeHowson;
    else if (algorithm == "lemke") options.algorithm = Algorithm::Lemke;
    else throw ParseError("unknown algorithm '" + algorithm + "'");
    const json opts = req.value("options", json::object());
    if (opts.contains("label")) options.label = opts["label"].get<std::string>();
    if (opts.contains("prior")) options.prior = opts["prior"].get<std::string>();
    if (opts.contains("seed")) options.seed = opts["seed"].get<std::uint64_t>();
    const std::string mode = opts.value("mode", "both");
    if (mode == "rational") options.mode = RenderMode::Rational;
    else if (mode == "decimal") options.mode = RenderMode::Decimal;
    else if (mode == "both") options.mode = RenderMode::Both;
    else throw ParseError("unknown mode '" + mode + "'");
    zero_sum = opts.value("zero_sum", false);
    symmetric = opts.value("symmetric", false);
    options.sequence_form = opts.value("sequence_form", true);
    if (opts.contains("timeout")) {
      timeout = std::chrono::milliseconds(static_cast<long>(opts["timeout"].get<double>() * 1000));
    }
    return {};
  });
  if (parsed.status != 200) return parsed;

  const auto deadline = std::chrono::steady_clock::now() + timeout;
  if (!slots_->try_acquire_until(deadline)) return error(408, "no worker became free in time", "timeout");
  ++active_;
  const std::string game_text = req["game"].get<std::string>();
  std::promise<ServiceResponse> promise;
  std::future<ServiceResponse> result = promise.get_future();
  std::jthread job([&, game_text](std::stop_token stop) {
    promise.set_value(guarded([&]() -> ServiceResponse {
      LoadedGame game = load_game(game_text, format, zero_sum, symmetric);
      SolveOptions local = options;
      local.stop = stop;
      const SolveResult r = solve_game(game, local);
      json body = {{"status", "ok"},
                   {"session", session},
                   {"report_text", r.report},
                   {"structured", structured(game.tree ? &*game.tree : nullptr, r)}};
      return reply(200, body);
    }));
  });
  std::optional<ServiceResponse> response;
  if (result.wait_until(deadline) == std::future_status::ready) response = result.get();
  job.request_stop();
  job.join();
  --active_;
  slots_->release();
  if (!response) return error(408, "computation timed out", "timeout");
  return *response;
}

ServiceResponse SolveService::convert(const std::string& request_body) {
  return guarded([&]() -> ServiceResponse {
    const json req = json::parse(request_body);
    if (!req.is_object() || !req.contains("game") || !req["game"].is_string()) {
      return error(400, "request needs a string field 'game'");
    }
    const std::string target = req.value("target", "strategic");
    LoadedGame game = load_game(req["game"].get<std::string>(), format_of(req));
    std::string text;
    if (target == "strategic") {
      text = render_strategic_form(game.strategic_form());
    } else if (target == "sequence") {
      if (!game.tree) throw GameError("the sequence form needs a game tree");
      text = format_sequence_form(build_sequence_form(*game.tree));
    } else if (target == "xml") {
      text = game.tree ? to_xml(*game.tree, game.strategic ? &*game.strategic : nullptr) : to_xml(*game.strategic);
    } else {
      throw ParseError("unknown conversion target '" + target + "'");
    }
    return reply(200, {{"status", "ok"}, {"text", text}});
  });
}

ServiceResponse SolveService::health() const {
  return reply(200, {{"status", "ok"}, {"active_jobs", active_.load()}, {"workers", workers_}});
}

}  // namespace nash

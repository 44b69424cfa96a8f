#include "cli.hpp"

#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "nash/cancel.hpp"
#include "nash/sequence_form.hpp"
#include "nash/solver.hpp"
#include "nash/tree_xml.hpp"

namespace nash::cli {
namespace {

std::atomic<bool> interrupted{false};

extern "C" void on_interrupt(int) { interrupted = true; }

std::string read_input(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream file(path);
  if (!file) throw ParseError("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

// Requests a stop when the time limit passes or SIGINT arrives.
class Watchdog {
 public:
  Watchdog(std::stop_source& source, double seconds)
      : thread_([&source, seconds](std::stop_token done) {
          const auto deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(seconds);
          while (!done.stop_requested()) {
            if (interrupted || (seconds > 0 && std::chrono::steady_clock::now() >= deadline)) {
              source.request_stop();
              return;
            }
            std::this_thread::sleep_for(std::chrono::milliseconds(20));
          }
        }) {}

 private:
  std::jthread thread_;
};

}  // namespace

void install_interrupt_handler() { std::signal(SIGINT, on_interrupt); }

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Nash equilibria of two-player games", "nash"};
  app.require_subcommand(1, 1);

  std::string path;
  std::string format = "auto";
  std::string label;
  std::string prior;
  std::uint64_t seed = 0;
  std::string mode = "both";
  double timeout = 300;
  bool zero_sum = false;
  bool symmetric = false;
  bool strategic = false;
  std::size_t workers = 1;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("input", path, "game file (default: standard input)");
    sub->add_option("--format", format, "input format")->check(CLI::IsMember({"auto", "xml", "matrix"}));
    sub->add_flag("--zero-sum", zero_sum, "matrix input gives A only, B = -A");
    sub->add_flag("--symmetric", symmetric, "matrix input gives A only, B = A transposed");
  };
  const auto solving = [&](CLI::App* sub) {
    common(sub);
    sub->add_option("--mode", mode, "number format of the report")->check(CLI::IsMember({"rational", "decimal", "both"}));
    sub->add_option("--timeout", timeout, "seconds before giving up (0: no limit)");
  };
  auto* enumerate = app.add_subcommand("solve-enum", "all extreme equilibria and their components");
  solving(enumerate);
  enumerate->add_option("--workers", workers, "threads probing faces");
  auto* lh = app.add_subcommand("solve-lh", "one equilibrium by Lemke-Howson");
  solving(lh);
  lh->add_option("--label", label, "strategy name of the missing label (default: first row)");
  auto* lemke = app.add_subcommand("solve-lemke", "one equilibrium traced from a prior");
  solving(lemke);
  auto* prior_opt = lemke->add_option("--prior", prior, "'x1 x2 ... ; y1 y2 ...' (default: uniform)");
  lemke->add_option("--seed", seed, "random prior from this seed")->excludes(prior_opt);
  lemke->add_flag("--strategic", strategic, "solve a tree on its strategic form instead of the sequence form");
  auto* to_strategic = app.add_subcommand("to-strategic", "print the reduced strategic form");
  common(to_strategic);
  auto* to_sequence = app.add_subcommand("to-sequence", "print the sequence form of a tree");
  common(to_sequence);
  auto* roundtrip = app.add_subcommand("roundtrip-xml", "read a game and write it back as XML");
  common(roundtrip);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "nash: " << e.what() << "\n";
    return kInputError;
  }

  try {
    const std::string text = read_input(path, in);
    const InputFormat fmt = format == "xml" ? InputFormat::Xml : format == "matrix" ? InputFormat::Matrix : InputFormat::Auto;
    LoadedGame game = load_game(text, fmt, zero_sum, symmetric);

    if (*to_strategic) {
      out << render_strategic_form(game.strategic_form());
      return kOk;
    }
    if (*to_sequence) {
      if (!game.tree) throw GameError("the sequence form needs a game tree");
      out << format_sequence_form(build_sequence_form(*game.tree));
      return kOk;
    }
    if (*roundtrip) {
      out << (game.tree ? to_xml(*game.tree, game.strategic ? &*game.strategic : nullptr) : to_xml(*game.strategic));
      return kOk;
    }

    SolveOptions options;
    options.algorithm = *enumerate ? Algorithm::Enumerate : *lh ? Algorithm::LemkeHowson : Algorithm::Lemke;
    if (!label.empty()) options.label = label;
    if (!prior.empty()) options.prior = prior;
    if (lemke->count("--seed")) options.seed = seed;
    options.mode = mode == "rational" ? RenderMode::Rational : mode == "decimal" ? RenderMode::Decimal : RenderMode::Both;
    options.sequence_form = !strategic;
    options.workers = workers;
    std::stop_source source;
    options.stop = source.get_token();
    SolveResult result;
    {
      Watchdog watchdog(source, timeout);
      result = solve_game(game, options);
    }
    out << result.report;
    return kOk;
  } catch (const Cancelled&) {
    err << "nash: " << (interrupted ? "interrupted" : "time limit exceeded") << "\n";
    return kTimeout;
  } catch (const ParseError& e) {
    err << "nash: " << e.what() << "\n";
  } catch (const GameError& e) {
    err << "nash: " << e.what() << "\n";
  } catch (const DomainError& e) {
    err << "nash: " << e.what() << "\n";
  }
  return kInputError;
}

}  // namespace nash::cli

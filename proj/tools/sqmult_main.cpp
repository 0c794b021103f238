#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sqmult/report.hpp"

namespace {

using sqmult::cli::Command;
using sqmult::cli::RunConfig;

std::vector<sqmult::AtomId> parse_pivots(const std::vector<std::string>& items) {
  std::vector<sqmult::AtomId> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ','))
      if (!part.empty()) out.push_back(sqmult::parse_atom(part));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiplicative functions and sums of two squares"};
  app.set_version_flag("--version", std::string(sqmult::cli::kVersion));
  app.require_subcommand(1);

  RunConfig cfg;
  std::string out_path, format = "text", y = "0", w = "0", v = "0";
  std::vector<std::string> pivots;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "write the JSON report to this path");
    sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };

  auto* dubouis = app.add_subcommand("dubouis", "n <= limit that are not sums of k nonzero squares");
  dubouis->add_option("--k", cfg.k, "number of squares")->default_val(4);
  dubouis->add_option("--limit", cfg.limit, "largest n listed")->default_val(100);
  add_common(dubouis);

  auto* splits = app.add_subcommand("splits", "ways to write n as s + t with s, t sums of two nonzero squares");
  splits->add_option("--n", cfg.n, "the integer to split")->required();
  add_common(splits);

  auto* verify = app.add_subcommand("verify", "check a solution family against the equation");
  verify->add_option("--family", cfg.family,
                     "identity, zero, case3, case4, case5, case_f3_only or square")
      ->default_val("identity");
  verify->add_option("--y", y, "f(3)");
  verify->add_option("--w", w, "f(9)");
  verify->add_option("--v", v, "f(11)");
  verify->add_option("--bound", cfg.bound, "largest n checked (default 2000)");
  verify->add_option("--jobs", cfg.jobs, "worker threads")->default_val(1);
  add_common(verify);

  auto* deduce = app.add_subcommand("deduce", "derive all solutions up to the bound");
  auto* check = app.add_subcommand("check-theorem", "compare the derived solutions with the five families");
  for (auto* sub : {deduce, check}) {
    sub->add_option("--bound", cfg.bound, "largest n constrained (default 200)");
    sub->add_option("--pivots", pivots, "branching order, e.g. f5,f3,f11,f9")->delimiter(',');
    sub->add_option("--depth-limit", cfg.depth_limit, "maximum branching depth")->default_val(8);
    add_common(sub);
  }
  check->add_option("--verify-bound", cfg.verify_bound, "bound for verifying extra families")
      ->default_val(2000);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : sqmult::cli::kExitUsage;
  }

  try {
    for (auto [sub, command] : {std::pair{dubouis, Command::dubouis}, {splits, Command::splits},
                                {verify, Command::verify}, {deduce, Command::deduce},
                                {check, Command::check_theorem}})
      if (sub->parsed()) cfg.command = command;
    cfg.y = sqmult::parse_rational(y);
    cfg.w = sqmult::parse_rational(w);
    cfg.v = sqmult::parse_rational(v);
    cfg.pivots = parse_pivots(pivots);
    if (!out_path.empty()) cfg.out = out_path;
    cfg.format = format == "json" ? sqmult::cli::Format::json : sqmult::cli::Format::text;

    const auto result = sqmult::cli::run(cfg);
    const auto report = result.report.to_json();
    if (cfg.out) {
      std::ofstream file(*cfg.out);
      if (!file) {
        std::cerr << "error: cannot write " << *cfg.out << "\n";
        return sqmult::cli::kExitUsage;
      }
      file << report.dump(2) << "\n";
    }
    if (cfg.format == sqmult::cli::Format::json)
      std::cout << report.dump(2) << "\n";
    else
      std::cout << result.text;
    return result.exit_code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return sqmult::cli::kExitUsage;
  }
}

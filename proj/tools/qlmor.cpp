// Command line front end: every subcommand reads JSON, prints JSON to stdout
// (or writes files) and reports failures as {"error": ..., "message": ...}
// on stderr. Exit status: 0 success, 1 failed check or library error,
// 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qlmor/io.hpp"
#include "qlmor/lqss.hpp"
#include "qlmor/network.hpp"
#include "qlmor/reduction.hpp"
#include "qlmor/symplectic.hpp"

namespace fs = std::filesystem;
using namespace qlmor;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
  out << text;
}

void emit(const std::string& json) { std::cout << json << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model reduction for linear quantum stochastic systems"};
  app.require_subcommand(1);
  double tol = -1.0;
  app.add_option("--tol", tol, "Override the default tolerance of the subcommand");

  std::string input;
  auto* check_pr = app.add_subcommand("check-pr", "Physical realizability residuals");
  check_pr->add_option("system", input, "System JSON (- for stdin)")->required();

  auto* gram = app.add_subcommand("gramians", "Gramians, symplectic eigenvalues, Hankel values");
  gram->add_option("system", input, "System JSON (- for stdin)")->required();

  auto* will = app.add_subcommand("williamson", "Williamson normal form of a matrix");
  will->add_option("matrix", input, "Matrix JSON (- for stdin)")->required();

  auto* qbal = app.add_subcommand("quasi-balance", "Quasi-balanced realization");
  qbal->add_option("system", input, "System JSON (- for stdin)")->required();

  Index keep = 0;
  double budget = -1.0;
  auto* red = app.add_subcommand("reduce", "Quasi-balanced truncation");
  red->add_option("system", input, "System JSON (- for stdin)")->required();
  auto* keep_opt = red->add_option("--keep", keep, "Modes to keep")->check(CLI::PositiveNumber);
  auto* budget_opt = red->add_option("--budget", budget, "A-priori error budget");
  keep_opt->excludes(budget_opt);

  Index cav_n = 5;
  double gamma = 12e6;
  Index cav_keep = 3;
  std::string out_dir = ".";
  auto* cav = app.add_subcommand("cavity-example", "Reduce the N-cavity low-pass network");
  cav->add_option("--n", cav_n, "Number of cavities")->check(CLI::PositiveNumber);
  cav->add_option("--gamma", gamma, "Mirror decay rate")->check(CLI::PositiveNumber);
  cav->add_option("--keep", cav_keep, "Modes to keep")->check(CLI::PositiveNumber);
  cav->add_option("--out", out_dir, "Output directory");

  double wmin = 1e-2, wmax = 1e2;
  int points = 400;
  std::string csv_out;
  auto* fr = app.add_subcommand("freq-response", "Frequency response of the last input pair");
  fr->add_option("system", input, "System JSON (- for stdin)")->required();
  fr->add_option("--wmin", wmin, "Lowest frequency, rad/s")->check(CLI::PositiveNumber);
  fr->add_option("--wmax", wmax, "Highest frequency, rad/s")->check(CLI::PositiveNumber);
  fr->add_option("--points", points, "Grid size")->check(CLI::Range(2, 1000000));
  fr->add_option("--out", csv_out, "CSV file (default stdout)");

  Index rn = 2, rm = 2;
  std::uint64_t seed = 0;
  bool stable = false, passive = false, slh_out = false;
  auto* rnd = app.add_subcommand("random-system", "Seeded random physically realizable system");
  rnd->add_option("--n", rn, "Modes")->check(CLI::PositiveNumber);
  rnd->add_option("--m", rm, "Channels")->check(CLI::PositiveNumber);
  rnd->add_option("--seed", seed, "Generator seed");
  rnd->add_flag("--stable", stable, "Reject draws with non-Hurwitz A");
  rnd->add_flag("--passive", passive, "Draw a completely passive system");
  rnd->add_flag("--slh", slh_out, "Print SLH parameters instead of the quadrature model");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  if (red->parsed() && !*keep_opt && !*budget_opt) {
    std::cerr << "reduce needs --keep or --budget\n";
    return kUsage;
  }
  if (fr->parsed() && !(wmin < wmax)) {
    std::cerr << "--wmin must be below --wmax\n";
    return kUsage;
  }

  try {
    if (check_pr->parsed()) {
      const QuadratureModel G = io::system_from_json(read_input(input));
      const PrReport r = check_physical_realizability(G, tol > 0 ? tol : kPrTol);
      emit(io::to_json(r));
      return r.passed() ? kOk : kFailed;
    }
    if (gram->parsed()) {
      const QuadratureModel G = io::system_from_json(read_input(input));
      emit(io::to_json(gramians(G)));
      return kOk;
    }
    if (will->parsed()) {
      emit(io::to_json(williamson(io::matrix_from_json(read_input(input)))));
      return kOk;
    }
    if (qbal->parsed()) {
      const QuadratureModel G = io::system_from_json(read_input(input));
      emit(io::to_json(quasi_balance(G)));
      return kOk;
    }
    if (red->parsed()) {
      const QuadratureModel G = io::system_from_json(read_input(input));
      const TruncationReport rep =
          *keep_opt ? reduce(G, keep) : reduce_to_budget(G, budget);
      emit(io::to_json(rep));
      return kOk;
    }
    if (cav->parsed()) {
      const ExampleBundle b = run_example(cav_n, gamma, cav_keep);
      const fs::path dir(out_dir);
      fs::create_directories(dir);
      write_file(dir / "report.json", io::to_json(b.report) + "\n");
      write_file(dir / "response_full.csv", io::to_csv(b.full));
      write_file(dir / "response_reduced.csv", io::to_csv(b.reduced));
      std::ostringstream os;
      os.precision(17);
      os << "{\"kept\": " << b.report.kept << ", \"bound\": " << b.report.bound
         << ", \"exact_error\": " << b.report.exact_error << ", \"out\": \""
         << dir.string() << "\"}";
      emit(os.str());
      return kOk;
    }
    if (fr->parsed()) {
      const QuadratureModel G = io::system_from_json(read_input(input));
      const std::string csv = io::to_csv(frequency_response(G, logspace(wmin, wmax, points)));
      if (csv_out.empty())
        std::cout << csv;
      else
        write_file(csv_out, csv);
      return kOk;
    }
    if (rnd->parsed()) {
      const RandomSystem rs = passive ? random_cp_system(rn, rm, seed)
                                      : random_pr_system(rn, rm, seed, stable);
      emit(slh_out ? io::to_json(rs.slh) : io::to_json(rs.model));
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << io::to_json(e) << '\n';
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "{\"error\": \"Internal\", \"message\": \"" << e.what() << "\"}\n";
    return kFailed;
  }
  return kUsage;
}

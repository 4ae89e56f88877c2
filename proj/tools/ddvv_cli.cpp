// Batch front end: gap checks, curvature reports, extremal search and the
// built-in demonstration scenarios. Exit codes: 0 success, 2 input error,
// 3 internal inconsistency.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "ddvv/common.hpp"
#include "ddvv/io.hpp"
#include "ddvv/search.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kInternalError = 3;

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ddvv::input_error("cannot open input file: " + path);
  return nlohmann::json::parse(in);  // parse errors carry the byte position
}

int run(int argc, char** argv) {
  CLI::App app{"ddvv: commutator-inequality verification for symmetric matrix families"};
  app.require_subcommand(1);

  std::string input_path;
  double tol = 1e-9;
  std::string format = "json";
  CLI::App* check = app.add_subcommand("check", "gap and equality certificate for families");
  check->add_option("input", input_path, "FamilyDocument JSON file (object or array)")->required();
  check->add_option("--tol", tol, "equality tolerance (default 1e-9)");
  check->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  std::string geom_path;
  double curvature_c = 0.0;
  double geom_tol = 1e-9;
  CLI::App* geom = app.add_subcommand("geom", "curvature report from shape operators");
  geom->add_option("input", geom_path, "FamilyDocument JSON file of shape operators")->required();
  geom->add_option("--c", curvature_c, "ambient constant curvature (default 0)");
  geom->add_option("--tol", geom_tol, "equality tolerance (default 1e-9)");

  ddvv::search::SearchConfig config;
  CLI::App* search = app.add_subcommand("search", "maximize the reduced objective");
  search->add_option("--n", config.n, "matrix dimension (2..8)")->required();
  search->add_option("--restarts", config.restarts, "independent restarts (default 64)");
  search->add_option("--seed", config.seed, "RNG seed (default 0)");
  search->add_option("--max-iters", config.max_iters, "ascent iterations per restart");
  search->add_option("--threads", config.threads, "worker threads (default 1)");

  std::string demo_name;
  CLI::App* demo = app.add_subcommand("demo", "named scenario: counterexample, equality, lemmas");
  demo->add_option("name", demo_name, "scenario name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  if (check->parsed()) {
    const nlohmann::json input = load_json(input_path);
    nlohmann::json report;
    if (input.is_array()) {
      report = ddvv::io::check_batch_report(input, tol);
    } else {
      report = ddvv::io::check_report(ddvv::io::parse_family_document(input), tol);
    }
    if (format == "csv") {
      std::cout << ddvv::io::check_report_csv(report);
    } else {
      std::cout << report.dump(2) << "\n";
    }
    return ddvv::io::report_has_internal_error(report) ? kInternalError : kOk;
  }
  if (geom->parsed()) {
    const nlohmann::json input = load_json(geom_path);
    const nlohmann::json report =
        ddvv::io::geom_report(ddvv::io::parse_family_document(input), curvature_c, geom_tol);
    std::cout << report.dump(2) << "\n";
    return kOk;
  }
  if (search->parsed()) {
    if (config.n < 2 || config.n > 8) throw ddvv::input_error("search needs 2 <= n <= 8");
    if (config.restarts < 1) throw ddvv::input_error("search needs at least one restart");
    std::cout << ddvv::io::search_report(config).dump(2) << "\n";
    return kOk;
  }
  std::cout << ddvv::io::run_demo(demo_name);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ddvv::internal_error& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return kInternalError;
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  }
}

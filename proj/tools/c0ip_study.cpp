// Convergence-study driver: builds meshes, assembles, solves, and reports
// error norms and rates for the grid given on the command line.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "c0ip/study.hpp"

namespace {

void write_plot_files(const std::filesystem::path& dir, const c0ip::StudyResult& result) {
  std::filesystem::create_directories(dir);
  for (double iota : result.config.iotas) {
    for (double eta : result.config.etas) {
      char name[96];
      std::snprintf(name, sizeof(name), "example%s_iota%g_eta%g.csv",
                    std::string(c0ip::to_string(result.config.example)).c_str(), iota, eta);
      std::ofstream out(dir / name);
      out << "h,norm_iota_h,triple2,triple3,l2,h1,h2_broken,h3_broken\n";
      for (const auto* r : result.series(iota, eta)) {
        const auto& e = r->errors;
        char line[256];
        std::snprintf(line, sizeof(line), "%.10g,%.9e,%.9e,%.9e,%.9e,%.9e,%.9e,%.9e\n", e.h,
                      e.norm_iota_h, e.triple2, e.triple3, e.l2, e.h1, e.h2_broken, e.h3_broken);
        out << line;
      }
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convergence study for the C0 interior penalty plate solver"};
  app.set_config("--config", "", "Read options from a key = value file; flags override it");

  std::string example = "1", n_list = "4,8,16,32,64", iota_list, eta_list = "10";
  std::string solver = "direct", format = "csv", out_path, mesh_file, plot_dir, timing = "on";
  c0ip::StudyConfig config;
  bool quiet = false;

  app.add_option("--example", example, "Problem: 1, 2 or custom")
      ->check(CLI::IsMember({"1", "2", "custom"}))
      ->capture_default_str();
  app.add_option("--n", n_list, "Comma-separated mesh subdivisions")->capture_default_str();
  app.add_option("--iota", iota_list, "Comma-separated length scales (default per example)");
  app.add_option("--eta", eta_list, "Comma-separated penalty values")->capture_default_str();
  app.add_option("--quad-volume", config.quadrature.load, "Load-vector quadrature degree")
      ->check(CLI::Range(1, 40))
      ->capture_default_str();
  app.add_option("--quad-error", config.quadrature.error, "Error-norm quadrature degree")
      ->check(CLI::Range(1, 40))
      ->capture_default_str();
  app.add_option("--quad-edge", config.quadrature.edge_points, "Gauss points per edge")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  app.add_option("--solver", solver, "Linear solver")
      ->check(CLI::IsMember({"direct", "cg"}))
      ->capture_default_str();
  app.add_option("--mesh-file", mesh_file, "Triangle mesh replacing the structured meshes");
  app.add_option("--out", out_path, "Output file (default: standard output)");
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--threads", config.threads, "Grid points solved concurrently")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--timing", timing, "Record solve wall-clock time (off gives reproducible output)")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  app.add_option("--plot-dir", plot_dir, "Also write one CSV per (iota, eta) curve here");
  app.add_flag("--quiet", quiet, "Do not print the summary table");

  CLI11_PARSE(app, argc, argv);

  try {
    config.example = c0ip::parse_example(example);
    config.mesh_sizes = c0ip::parse_int_list(n_list);
    if (!iota_list.empty()) config.iotas = c0ip::parse_double_list(iota_list);
    config.etas = c0ip::parse_double_list(eta_list);
    config.solver.method = c0ip::parse_solver_method(solver);
    config.mesh_file = mesh_file;
    config.timing = timing == "on";
    config.validate();
  } catch (const std::exception& e) {
    std::cerr << "c0ip_study: " << e.what() << '\n';
    return 1;
  }

  const c0ip::StudyResult result = c0ip::run_study(config);

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "c0ip_study: cannot write " << out_path << '\n';
      return 1;
    }
  }
  std::ostream& out = out_path.empty() ? std::cout : file;
  if (format == "json") {
    c0ip::write_json(out, result);
  } else {
    c0ip::write_csv(out, result);
  }
  if (!plot_dir.empty()) write_plot_files(plot_dir, result);

  std::ostream& log = out_path.empty() ? std::cerr : std::cout;
  if (!quiet) c0ip::print_table(log, result);
  for (const auto& r : result.rows) {
    if (!r.success) {
      log << "failed: n=" << r.n << " iota=" << r.errors.iota << " eta=" << r.errors.eta << ": "
          << r.diagnostic << '\n';
    }
  }
  return result.all_succeeded() ? 0 : 2;
}

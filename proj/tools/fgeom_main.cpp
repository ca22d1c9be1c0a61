#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "fgeom/report.hpp"

namespace {

void print_human(const fgeom::Report& rep) {
  std::printf("example %s", rep.config.example.c_str());
  if (rep.config.example == "flat")
    std::printf(" (m=%d, t=%d)", rep.config.m, rep.config.t);
  else
    std::printf(" (n=%d, s=%d)", rep.config.n, rep.config.s);
  std::printf(", connection=%s, points=%d, planes=%d, seed=%llu, tol=%.2e\n\n",
              rep.config.connection.c_str(), rep.config.points, rep.config.planes,
              static_cast<unsigned long long>(rep.config.seed), rep.config.tol);
  for (const auto& ch : rep.checks) {
    std::printf("%s  %-42s %-11s %12.4e %s %8.1e\n", ch.pass ? "PASS" : "FAIL",
                ch.name.c_str(), ch.connection.c_str(), ch.max_residual,
                ch.expect_exceed ? ">" : "<", ch.tol);
  }
  std::printf("\n%s  (%zu checks, %.1f ms)\n", rep.overall_pass ? "OVERALL PASS" : "OVERALL FAIL",
              rep.checks.size(), rep.wall_time_ms);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical verification of curvature identities on metric f-manifolds"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "build an example structure and verify it");
  std::string example;
  verify->add_option("example", example, "example tag: flat | sphere")->required();
  fgeom::RunConfig cfg;
  verify->add_option("--m", cfg.m, "flat: number of (x,y) pairs");
  verify->add_option("--t", cfg.t, "flat: number of structure fields");
  verify->add_option("--n", cfg.n, "sphere: n of S^{2n+1}(2)");
  verify->add_option("--s", cfg.s, "sphere: structure count (>= 2)");
  verify->add_option("--connection", cfg.connection, "riemannian | ssm | ssnm | all");
  verify->add_option("--points", cfg.points, "sample points per example");
  verify->add_option("--planes", cfg.planes, "plane draws per point");
  verify->add_option("--seed", cfg.seed, "seed for the counter-based generator");
  verify->add_option("--tol", cfg.tol, "base tolerance (checks scale off it)");
  verify->add_option("--json", cfg.json_path, "write the JSON report to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  cfg.example = example;
  try {
    const fgeom::Report rep = fgeom::run(cfg);
    print_human(rep);
    if (!cfg.json_path.empty()) {
      std::ofstream out(cfg.json_path, std::ios::binary);
      if (!out) {
        std::cerr << "cannot open " << cfg.json_path << " for writing\n";
        return 2;
      }
      out << fgeom::emit_json(rep);
    }
    return rep.overall_pass ? 0 : 1;
  } catch (const fgeom::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

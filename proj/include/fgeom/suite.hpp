#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fgeom/curvature.hpp"
#include "fgeom/examples.hpp"

namespace fgeom {

struct SuiteOptions {
  int points = 20;
  int planes_per_point = 10;
  std::uint64_t seed = 42;
  /// Base tolerance. Every check scales its own gate off this value, so
  /// the defaults below hold exactly when tol == 1e-8; see suite.cpp for
  /// the per-check factors.
  double tol = 1e-8;
  bool run_riemannian = true;
  bool run_ssm = true;
  bool run_ssnm = true;
};

struct CheckRecord {
  std::string name;
  std::string connection;  // "structure" | "kernel" | "riemannian" | "ssm" | "ssnm"
  std::string anchor;      // the identity being tested, in formula form
  double max_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  /// For checks that certify a quantity is LARGE (non-constancy, symmetry
  /// violation): pass iff max_residual > tol.
  bool expect_exceed = false;
  /// Order-sensitive raw-quotient sectional values (non-metric connection).
  bool directional = false;
};

struct TheoremReport {
  std::vector<CheckRecord> checks;
  bool overall_pass = true;
};

/// Evaluates every structure, curvature and scalar-curvature identity the
/// acceptance gate lists for the given example, at seeded sample points.
TheoremReport theorem_suite(const NamedExample& ex, const SuiteOptions& opt);

}  // namespace fgeom

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entrobound/entcore.hpp"

// Brute-force verification independent of the solvers: random-state
// inequality sweeps, stationarity residuals, and the conjecture scan.
// Every run is a pure function of (parameters, seed); sample k is generated
// from a counter-based substream of the seed, so results do not depend on
// evaluation order.

namespace entrobound::oracle {

struct OracleReport {
  long samples = 0;
  double min_gap = 0.0;        // smallest lhs - rhs over all samples
  std::string worst_case;      // description of the extremal sample
  std::uint64_t seed = 0;
  long violations = 0;         // samples with gap < -tolerance
  long resamples = 0;          // entropy-matching targets that were redrawn
};

struct StationarityResidual {
  double constraint_residual = 0.0;  // Delta(s, r) - delta at the optimizer
  double f_residual = 0.0;           // scale-normalized Lagrange residual
  bool boundary = false;             // optimizer on the s = 0 branch
};

struct ConjectureScan {
  double min_diff = 0.0;      // min over the grid of M(delta) - M(-delta)
  double argmin_delta = 0.0;
};

// n flat-Dirichlet samples on the d-simplex (normalized exponentials)
std::vector<core::ProbVector> sample_simplex(int d, int n, std::uint64_t seed);

// D(sigma||rho) >= M(Delta, d) over entropy-matched random pairs;
// tolerance -1e-7 on the gap
OracleReport verify_M_bound(int d, int n, std::uint64_t seed);

// surprisal_variance <= N(d) over random states plus the injected optimal
// spectrum; tolerances -1e-9 (random) and 1e-10 (injected)
OracleReport verify_variance_bound(int d, int n, std::uint64_t seed);

StationarityResidual check_stationarity(int d, double delta);

ConjectureScan conjecture_scan(int d, int grid_n);

}  // namespace entrobound::oracle

#pragma once

#include <optional>
#include <utility>

#include "entrobound/entcore.hpp"

// Solvers for the tight lower bound M(delta, d) on relative entropy given an
// entropy difference, the maximum surprisal variance N(d), their closed-form
// relaxations, and the competing Pinsker + Fannes-Audenaert composite bound.

namespace entrobound::bound {

struct BoundResult {
  enum class Status { Finite, Infinite };

  double value = 0.0;
  double s_opt = 0.0;
  double r_opt = 0.0;
  Status status = Status::Finite;
  int iterations = 0;
  double residual = 0.0;  // final golden-section bracket width in s
  // number of separated candidate brackets found on the search grid whose
  // refined objective ties the optimum within 1e-10 (1 in practice)
  int brackets_found = 1;

  bool is_infinite() const { return status == Status::Infinite; }
};

struct VarianceBound {
  double n_value = 0.0;  // N(d), the exact maximum surprisal variance
  double r_d = 0.0;      // maximizer; root of (1-2r) log(((1-r)/r)(d-1)) = 2
  double n_closed = 0.0; // N_d = log^2(d-1)/4 + 1
};

struct LowerBounds {
  double exp_bound = 0.0;    // N (e^{delta/N} - 1 - delta/N)
  double cubic_bound = 0.0;  // delta^2/(2N) + delta^3/(6N^2)
  double quad_bound = 0.0;   // delta^2 / (3 log^2 d)
};

struct PinskerFaBound {
  // 2 T^2 with T the exact inverse of h_d(T) = T log(d-1) + H2(T) at |delta|
  double bound = 0.0;
  // same with the analytic underestimate T >= (e-1)/e |delta|/(1+log(d-1)-log|delta|)
  double closed_form = 0.0;
};

// g_d(s) = H2(s) + s log(d-1), strictly increasing on [0, (d-1)/d]
double entropy_curve(int d, double s);
// d/ds g_d(s) = log(((1-s)/s)(d-1))
double entropy_curve_derivative(int d, double s);
// unique s in [0, (d-1)/d] with g_d(s) = v
double entropy_curve_inverse(int d, double v);

// the tight lower bound: min D2(s||r) subject to g_d(s) - g_d(r) = delta
BoundResult compute_M(int d, double delta);

// the two-eigenvalue states attaining equality in the bound
std::pair<core::ProbVector, core::ProbVector> optimal_pair(int d, double delta);

VarianceBound compute_N(int d);

// lower-bound chain; n defaults to N(d) and must be >= N(d) when supplied
LowerBounds closed_form_lower_bounds(int d, double delta,
                                     std::optional<double> n = std::nullopt);

PinskerFaBound pinsker_fa_bound(int d, double delta);

}  // namespace entrobound::bound

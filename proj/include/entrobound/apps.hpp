#pragma once

#include <optional>
#include <vector>

#include "entrobound/entcore.hpp"

// Application-layer computations: channel capacity (exact and lower bound),
// Chernoff information, coding penalties, the universal-coding exponent,
// stepwise equilibration, and extractable work.

namespace entrobound::apps {

/// Row-stochastic transition matrix; row x holds the output distribution
/// T(.|x). Note: what the capacity bound literature calls the "columns
/// T(.|x)" are stored here as rows -- one output distribution per input
/// symbol. The bound depends on the OUTPUT dimension only.
class Channel {
 public:
  explicit Channel(const std::vector<std::vector<double>>& matrix);

  int input_dim() const { return static_cast<int>(rows_.size()); }
  int output_dim() const { return rows_.front().dim(); }
  const core::ProbVector& row(int x) const { return rows_[static_cast<std::size_t>(x)]; }

 private:
  std::vector<core::ProbVector> rows_;
};

struct CapacityBound {
  double bound = 0.0;         // valid lower bound on the Shannon capacity
  double s_max = 0.0;         // largest row entropy
  double s_min = 0.0;         // smallest row entropy
  // M(-(s_max-s_min)/2, |Y|): valid only under the open conjecture
  // M(delta, d) >= M(-delta, d); reported, never asserted
  double conjectural_bound = 0.0;
};

struct ChernoffResult {
  double xi = 0.0;           // -log min_s sum p^s q^(1-s)
  double lower_bound = 0.0;  // entropy-difference lower bound on xi
};

struct WrongCodeResult {
  double penalty = 0.0;      // D(p||q) / log(alphabet)
  double lower_bound = 0.0;  // M(delta log(alphabet), d) / log(alphabet)
  // quadratic relaxation, defined only for non-negative expected savings
  std::optional<double> quad_bound;
};

/// Per-step and aggregate quantities of a k-step equilibration path.
struct ProcessReport {
  int k = 0;
  std::vector<core::ProbVector> path;  // rho_0 = rho_i, ..., rho_k = rho_f
  std::vector<double> temps;
  double clausius_lhs = 0.0;     // sum_j dQ_j / T_j in entropic units
  double delta_S = 0.0;          // S(rho_f) - S(rho_i)
  double rel_ent_sum = 0.0;      // sum_j D(rho_{j-1} || rho_j)
  double bound_convexity = 0.0;  // k M(-delta_S / k, d)
  double bound_quadratic = 0.0;  // delta_S^2 / (3 k log^2 d)
  double bound_pinsker = 0.0;    // ||rho_i - rho_f||_1^2 / (2k)
  double upper_envelope = 0.0;   // (D(rho_f||rho_i) + D(rho_i||rho_f)) / k
  double w_waste_lb = 0.0;       // T_min * rel_ent_sum
};

struct WorkResult {
  double exact = 0.0;        // T D(rho_i || rho_f)
  double lower_bound = 0.0;  // T M(-(S(rho_f) - S(rho_i)), d)
};

// Shannon capacity in nats by alternating maximization; converged when the
// standard upper/lower capacity estimates differ by less than tol
double blahut_arimoto(const Channel& ch, double tol = 1e-10);

// gap^2/(2(log^2(d-1)+4)) - gap^3/(3(log^2(d-1)+4)^2) with gap = s_max - s_min
double entropy_gap_bound(double s_max, double s_min, int d);

CapacityBound capacity_lower_bound(const Channel& ch);

ChernoffResult chernoff(const core::ProbVector& p, const core::ProbVector& q,
                        int d = 0);

WrongCodeResult wrong_code_penalty(const core::ProbVector& p,
                                   const core::ProbVector& q, double alphabet);

// M(rate - S(p), d), a lower bound on inf { D(sigma||p) : S(sigma) > rate }
double universal_exponent_lb(double rate, const core::ProbVector& p);

ProcessReport stepwise_process(const core::ProbVector& rho_i,
                               const core::ProbVector& rho_f, int k,
                               std::vector<double> temps);

WorkResult extractable_work(const core::ProbVector& rho_i,
                            const std::vector<double>& levels, double temperature);

}  // namespace entrobound::apps

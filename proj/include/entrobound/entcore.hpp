#pragma once

#include <limits>
#include <span>
#include <vector>

// Entropic primitives on finite probability vectors. All quantities are in
// nats; +infinity is represented by std::numeric_limits<double>::infinity().

namespace entrobound::core {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A finite probability distribution (the spectrum of a classical state).
/// Entries are validated on construction: negatives below -1e-12 are
/// rejected, tiny negatives are clamped to 0, the sum must be within 1e-9
/// of 1 and is then renormalized exactly in working precision.
class ProbVector {
 public:
  explicit ProbVector(std::vector<double> probs);

  static ProbVector uniform(int d);
  static ProbVector point_mass(int d, int index = 0);
  // (1-s, s/(d-1), ..., s/(d-1)); the two-eigenvalue family the optimal
  // states live in
  static ProbVector two_level(int d, double s);

  int dim() const { return static_cast<int>(p_.size()); }
  double operator[](int i) const { return p_[static_cast<std::size_t>(i)]; }
  std::span<const double> probs() const { return p_; }
  bool full_support() const;

 private:
  std::vector<double> p_;
};

/// Energy levels plus a temperature (k_B = 1); temperature may be +infinity,
/// in which case the thermal state is uniform.
struct ThermalSystem {
  std::vector<double> levels;
  double temperature = kInfinity;

  ThermalSystem(std::vector<double> lv, double temp);
};

// S(p) = -sum p_i log p_i, in [0, log d]
double shannon_entropy(const ProbVector& p);

// D(p||q) = sum p_i log(p_i/q_i); +infinity on support violation
double relative_entropy(const ProbVector& p, const ProbVector& q);

double binary_entropy(double x);
double binary_relative_entropy(double x, double y);

// var_p(-log p) = sum p_i log^2 p_i - (sum p_i log p_i)^2
double surprisal_variance(const ProbVector& p);

// half the l1 distance (total variation)
double trace_distance(const ProbVector& p, const ProbVector& q);

ProbVector thermal_state(const ThermalSystem& sys);

// equals surprisal_variance(thermal_state(sys)); 0 for d = 1
double heat_capacity(const ThermalSystem& sys);

}  // namespace entrobound::core

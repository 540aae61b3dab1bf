#include "entrobound/mbound.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace entrobound::bound {

namespace {

constexpr double kGoldenRatio = 0.61803398874989484820;  // (sqrt(5)-1)/2
constexpr int kGridPoints = 4096;
constexpr double kBracketTol = 1e-12;

void check_dim(int d) {
  if (d < 2) throw std::invalid_argument("d must be >= 2");
}

double s_max_for(int d) { return (d - 1.0) / d; }

// inverse of g_d with an initial guess; safeguarded Newton on the strictly
// increasing concave curve, bisection fallback keeps the bracket valid
double curve_inverse_impl(int d, double v, double guess) {
  const double smax = s_max_for(d);
  const double ld = std::log(static_cast<double>(d));
  if (v <= 0.0) return 0.0;
  if (v >= ld) return smax;
  double lo = 0.0, hi = smax;
  double s = (guess > 0.0 && guess < smax) ? guess : v / ld * smax;
  for (int it = 0; it < 120; ++it) {
    const double f = entropy_curve(d, s) - v;
    // g is evaluated to a few ulp; below that the residual is pure noise
    if (std::abs(f) <= 4e-16 * (1.0 + v)) break;
    if (f > 0.0)
      hi = s;
    else
      lo = s;
    if (hi - lo <= 1e-15 * (1.0 + s)) break;
    const double der = entropy_curve_derivative(d, s);
    double sn;
    if (std::isfinite(der) && der > 1e-12) {
      sn = s - f / der;
      if (!(sn > lo && sn < hi)) sn = 0.5 * (lo + hi);
    } else {
      sn = 0.5 * (lo + hi);
    }
    if (std::abs(sn - s) <= 1e-14 * (1.0 + s)) {
      s = sn;
      break;
    }
    s = sn;
  }
  return std::clamp(s, 0.0, smax);
}

// objective along the constraint curve: r is eliminated through g_d
struct CurveObjective {
  int d;
  double delta;
  double ld;
  mutable double r_guess = -1.0;

  double operator()(double s, double* r_out = nullptr) const {
    double v = entropy_curve(d, s) - delta;
    v = std::clamp(v, 0.0, ld);
    const double r = curve_inverse_impl(d, v, r_guess);
    r_guess = r;
    if (r_out) *r_out = r;
    return core::binary_relative_entropy(s, r);
  }
};

}  // namespace

double entropy_curve(int d, double s) {
  check_dim(d);
  const double smax = s_max_for(d);
  if (s < -1e-12 || s > smax + 1e-12)
    throw std::invalid_argument("s outside [0, (d-1)/d]");
  s = std::clamp(s, 0.0, smax);
  return core::binary_entropy(s) + s * std::log(d - 1.0);
}

double entropy_curve_derivative(int d, double s) {
  check_dim(d);
  if (s <= 0.0) return core::kInfinity;
  if (s >= 1.0) return -core::kInfinity;
  return std::log((1.0 - s) / s * (d - 1.0));
}

double entropy_curve_inverse(int d, double v) {
  check_dim(d);
  const double ld = std::log(static_cast<double>(d));
  if (v < -1e-9 || v > ld + 1e-9)
    throw std::invalid_argument("curve value outside [0, log d]");
  return curve_inverse_impl(d, std::clamp(v, 0.0, ld), -1.0);
}

BoundResult compute_M(int d, double delta) {
  check_dim(d);
  const double ld = std::log(static_cast<double>(d));
  const double smax = s_max_for(d);
  if (delta < -ld - 1e-9 || delta > ld + 1e-9)
    throw std::invalid_argument("delta outside [-log d, log d]");
  delta = std::clamp(delta, -ld, ld);

  BoundResult res;
  if (std::abs(delta) < 1e-12) {
    // optimizer degenerates toward s = r = r_d; the value is exactly 0
    const double rd = compute_N(d).r_d;
    res.value = 0.0;
    res.s_opt = rd;
    res.r_opt = rd;
    return res;
  }
  if (delta == ld) {
    res.value = core::kInfinity;
    res.s_opt = smax;
    res.r_opt = 0.0;
    res.status = BoundResult::Status::Infinite;
    return res;
  }
  if (delta == -ld) {
    res.value = ld;
    res.s_opt = 0.0;
    res.r_opt = smax;
    return res;
  }

  // admissible s-interval: g_d(s) - delta must lie in [0, log d]
  const double s_lo = curve_inverse_impl(d, std::max(0.0, delta), -1.0);
  const double s_hi = curve_inverse_impl(d, std::min(ld, ld + delta), -1.0);

  CurveObjective obj{d, delta, ld};
  std::vector<double> xs(kGridPoints), vals(kGridPoints);
  const double step = (s_hi - s_lo) / (kGridPoints - 1);
  for (int i = 0; i < kGridPoints; ++i) {
    xs[static_cast<std::size_t>(i)] = s_lo + step * i;
    vals[static_cast<std::size_t>(i)] = obj(xs[static_cast<std::size_t>(i)]);
  }

  const auto refine = [&](int idx, int* iters) {
    double a = xs[static_cast<std::size_t>(std::max(0, idx - 1))];
    double b = xs[static_cast<std::size_t>(std::min(kGridPoints - 1, idx + 1))];
    double c = b - kGoldenRatio * (b - a);
    double e = a + kGoldenRatio * (b - a);
    double fc = obj(c), fe = obj(e);
    int n = 0;
    while (b - a > kBracketTol && n < 200) {
      if (fc < fe) {
        b = e;
        e = c;
        fe = fc;
        c = b - kGoldenRatio * (b - a);
        fc = obj(c);
      } else {
        a = c;
        c = e;
        fc = fe;
        e = a + kGoldenRatio * (b - a);
        fe = obj(e);
      }
      ++n;
    }
    *iters = n;
    struct R {
      double s, value, width;
    };
    const double s = 0.5 * (a + b);
    return R{s, obj(s), b - a};
  };

  const int gmin =
      static_cast<int>(std::min_element(vals.begin(), vals.end()) - vals.begin());

  // collect separated local minima that tie the global grid minimum; the
  // minimizer is unique for delta != 0 but we refine every candidate rather
  // than assume it
  std::vector<int> candidates{gmin};
  for (int i = 0; i < kGridPoints; ++i) {
    if (std::abs(i - gmin) <= 2) continue;
    const bool local_min =
        (i == 0 || vals[static_cast<std::size_t>(i)] <= vals[static_cast<std::size_t>(i - 1)]) &&
        (i == kGridPoints - 1 ||
         vals[static_cast<std::size_t>(i)] <= vals[static_cast<std::size_t>(i + 1)]);
    if (local_min && vals[static_cast<std::size_t>(i)] <=
                         vals[static_cast<std::size_t>(gmin)] + 1e-10)
      candidates.push_back(i);
  }

  double best_s = xs[static_cast<std::size_t>(gmin)];
  double best_v = core::kInfinity;
  double best_w = s_hi - s_lo;
  int total_iters = 0;
  int ties = 0;
  for (int idx : candidates) {
    int it = 0;
    const auto r = refine(idx, &it);
    total_iters += it;
    if (r.value < best_v - 1e-10) {
      best_s = r.s;
      best_v = r.value;
      best_w = r.width;
      ties = 1;
    } else if (r.value <= best_v + 1e-10) {
      ++ties;
      if (r.value < best_v) {
        best_s = r.s;
        best_v = r.value;
        best_w = r.width;
      }
    }
  }

  double r_opt = 0.0;
  res.value = obj(best_s, &r_opt);
  res.s_opt = best_s;
  res.r_opt = r_opt;
  res.iterations = total_iters;
  res.residual = best_w;
  res.brackets_found = ties;
  if (std::isinf(res.value)) res.status = BoundResult::Status::Infinite;
  return res;
}

std::pair<core::ProbVector, core::ProbVector> optimal_pair(int d, double delta) {
  const BoundResult b = compute_M(d, delta);
  if (b.is_infinite())
    throw std::invalid_argument("no finite optimal pair at delta = log d");
  return {core::ProbVector::two_level(d, b.s_opt),
          core::ProbVector::two_level(d, b.r_opt)};
}

VarianceBound compute_N(int d) {
  check_dim(d);
  const double logd1 = std::log(d - 1.0);
  // (1-2r) log(((1-r)/r)(d-1)) - 2 is strictly decreasing on (0, 1/2)
  const auto root_fn = [&](double r) {
    return (1.0 - 2.0 * r) * (std::log((1.0 - r) / r) + logd1) - 2.0;
  };
  double lo = 1e-17, hi = 0.5;
  for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (root_fn(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  VarianceBound vb;
  vb.r_d = 0.5 * (lo + hi);
  const double l = std::log((1.0 - vb.r_d) / vb.r_d) + logd1;
  vb.n_value = vb.r_d * (1.0 - vb.r_d) * l * l;
  vb.n_closed = 0.25 * logd1 * logd1 + 1.0;
  return vb;
}

LowerBounds closed_form_lower_bounds(int d, double delta, std::optional<double> n) {
  check_dim(d);
  const double n_exact = compute_N(d).n_value;
  const double N = n.value_or(n_exact);
  if (N < n_exact - 1e-12)
    throw std::invalid_argument("n below N(d): bound invalid");
  const double ld = std::log(static_cast<double>(d));
  LowerBounds lb;
  const double x = delta / N;
  lb.exp_bound = N * (std::expm1(x) - x);
  lb.cubic_bound = delta * delta / (2.0 * N) + delta * delta * delta / (6.0 * N * N);
  lb.quad_bound = delta * delta / (3.0 * ld * ld);
  return lb;
}

PinskerFaBound pinsker_fa_bound(int d, double delta) {
  check_dim(d);
  const double ld = std::log(static_cast<double>(d));
  const double a = std::abs(delta);
  if (a > ld + 1e-9) throw std::invalid_argument("|delta| exceeds log d");
  PinskerFaBound pb;
  if (a < 1e-300) return pb;
  // h_d coincides with g_d; exact numerical inversion
  const double t = entropy_curve_inverse(d, std::min(a, ld));
  pb.bound = 2.0 * t * t;
  const double t_cf =
      (std::exp(1.0) - 1.0) / std::exp(1.0) * a / (1.0 + std::log(d - 1.0) - std::log(a));
  pb.closed_form = 2.0 * t_cf * t_cf;
  return pb;
}

}  // namespace entrobound::bound

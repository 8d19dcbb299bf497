#include "satlab/statdist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "satlab/errors.hpp"
#include "satlab/quadrature.hpp"

namespace satlab {
namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw PreconditionError(std::string(what) + " must lie in [0, 1], got " + std::to_string(p));
  }
}

void check_trials(std::uint64_t m) {
  if (m < 1) throw PreconditionError("trial count m must be >= 1");
}


// Shrinks or grows m until it is the smallest count passing `ok`.
template <typename Pred>
std::uint64_t settle_min_trials(std::uint64_t m, Pred ok) {
  while (m > 1 && ok(m - 1)) --m;
  while (m >= 1 && !ok(m)) ++m;
  return m;
}

std::uint64_t checked_ceil(double x) {
  if (!(x < 0x1p63)) throw PreconditionError("required trial count exceeds 2^63");
  return static_cast<std::uint64_t>(std::ceil(x));
}

}  // namespace

BernoulliPoint BernoulliPoint::make(double p) {
  check_probability(p, "probability");
  return BernoulliPoint{p};
}

Orientation Orientation::make(double theta) {
  if (!(theta >= 0.0 && theta <= 0.5 * std::numbers::pi)) {
    throw PreconditionError("orientation must lie in [0, pi/2], got " + std::to_string(theta));
  }
  return Orientation{theta};
}

ParamCurve ParamCurve::make(Fn p, double t1, double t2, Fn dp) {
  if (!p) throw PreconditionError("curve needs a mapping");
  if (!(std::isfinite(t1) && std::isfinite(t2)) || t1 > t2) {
    throw PreconditionError("curve interval must be finite with t1 <= t2");
  }
  constexpr int kSamples = 257;
  double prev = 0.0;
  int direction = 0;
  for (int i = 0; i < kSamples && t1 < t2; ++i) {
    const double t = t1 + (t2 - t1) * i / (kSamples - 1);
    const double v = p(t);
    if (!(v >= 0.0 && v <= 1.0)) {
      throw PreconditionError("curve leaves [0, 1] at t=" + std::to_string(t));
    }
    if (i > 0) {
      const int d = v > prev ? 1 : (v < prev ? -1 : 0);
      if (d == 0 || (direction != 0 && d != direction)) {
        throw PreconditionError("curve is not strictly monotone near t=" + std::to_string(t));
      }
      direction = d;
    }
    prev = v;
  }
  return ParamCurve(std::move(p), std::move(dp), t1, t2);
}

double ParamCurve::derivative(double t) const {
  if (dp_) return dp_(t);
  const double h = 1e-5 * std::max(t2_ - t1_, std::numeric_limits<double>::min());
  if (t - h >= t1_ && t + h <= t2_) return (p_(t + h) - p_(t - h)) / (2 * h);
  if (t + 2 * h <= t2_) return (-3 * p_(t) + 4 * p_(t + h) - p_(t + 2 * h)) / (2 * h);
  return (3 * p_(t) - 4 * p_(t - h) + p_(t - 2 * h)) / (2 * h);
}

double delta_p(double p, std::uint64_t m) {
  check_probability(p, "p");
  check_trials(m);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(m));
}

bool distinguishable(double p, double p_prime, std::uint64_t m) {
  // A point is never distinguishable from itself, even at p = 0 or 1 where
  // both uncertainties vanish and the inequality would read 0 >= 0.
  if (p == p_prime) {
    check_probability(p, "p");
    check_trials(m);
    return false;
  }
  return std::abs(p - p_prime) >= delta_p(p, m) + delta_p(p_prime, m);
}

std::optional<std::uint64_t> min_trials_from_zero(double p2) {
  check_probability(p2, "p2");
  if (p2 == 0.0) return std::nullopt;
  const std::uint64_t guess = checked_ceil((1.0 - p2) / p2);
  if (guess == 0) return 0;
  return settle_min_trials(guess, [p2](std::uint64_t m) { return distinguishable(0.0, p2, m); });
}

std::optional<std::uint64_t> min_trials(double p1, double p2) {
  check_probability(p1, "p1");
  check_probability(p2, "p2");
  if (p1 == p2) return std::nullopt;
  const double spread = std::sqrt(p1 * (1.0 - p1)) + std::sqrt(p2 * (1.0 - p2));
  const double ratio = spread / std::abs(p1 - p2);
  const std::uint64_t guess = checked_ceil(ratio * ratio);
  if (guess == 0) return 0;
  return settle_min_trials(guess, [p1, p2](std::uint64_t m) { return distinguishable(p1, p2, m); });
}

double bernoulli_distance(double p1, double p2) {
  check_probability(p1, "p1");
  check_probability(p2, "p2");
  if (p1 == p2) return 0.0;
  // With phi = asin sqrt(p), sin(phi2 - phi1) = sqrt(p2 q1) - sqrt(p1 q2), which
  // equals (p2 - p1) / (sqrt(p2 q1) + sqrt(p1 q2)) without any cancellation.
  // The cosine is the usual sqrt(p1 p2) + sqrt(q1 q2).
  const double q1 = 1.0 - p1;
  const double q2 = 1.0 - p2;
  const double sine = std::abs(p2 - p1) / (std::sqrt(p2 * q1) + std::sqrt(p1 * q2));
  const double cosine = std::sqrt(p1 * p2) + std::sqrt(q1 * q2);
  return std::atan2(sine, cosine);
}

double bernoulli_distance_quadrature(double p1, double p2) {
  check_probability(p1, "p1");
  check_probability(p2, "p2");
  // The integrand is symmetric about 1/2. Folding the upper half onto [0, 1/2]
  // keeps every node close to the singularity at 0, where doubles are dense.
  auto integrand = [](double p) { return 0.5 / std::sqrt(p * (1.0 - p)); };
  const double lo = std::min(p1, p2);
  const double hi = std::max(p1, p2);
  double total = 0.0;
  auto add = [&](double a, double b) {
    if (a >= b) return;
    const auto r = tanh_sinh(integrand, a, b);
    if (!r.converged) throw ConvergenceError("distance quadrature did not converge");
    total += r.value;
  };
  add(lo, std::min(hi, 0.5));
  add(1.0 - hi, 1.0 - std::max(lo, 0.5));
  return total;
}

double curve_distance(const ParamCurve& c) {
  if (c.t1() == c.t2()) return 0.0;
  auto integrand = [&c](double t) {
    const double p = c(t);
    return std::abs(c.derivative(t)) / (2.0 * std::sqrt(p * (1.0 - p)));
  };
  const auto r = tanh_sinh(integrand, c.t1(), c.t2());
  if (!r.converged) {
    throw ConvergenceError("curve distance quadrature stalled at error estimate " +
                           std::to_string(r.error_estimate));
  }
  return r.value;
}

double delta_theta(double theta, std::uint64_t m) {
  Orientation::make(theta);
  check_trials(m);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double slope = std::abs(2.0 * s * c);
  if (slope == 0.0) return 0.5 / std::sqrt(static_cast<double>(m));
  return std::sqrt(c * c * s * s / static_cast<double>(m)) / slope;
}

double delta_param(const ParamCurve& c, double t, std::uint64_t m) {
  const double slope = std::abs(c.derivative(t));
  if (slope == 0.0) return std::numeric_limits<double>::infinity();
  return delta_p(c(t), m) / slope;
}

double next_distinguishable(double p, std::uint64_t m) {
  const double anchor = p + delta_p(p, m);
  if (anchor >= 1.0) return 2.0;
  // Smallest x >= anchor with (x - anchor)^2 >= x (1 - x) / m: the larger
  // root of (1 + 1/m) x^2 - (2 anchor + 1/m) x + anchor^2, whose
  // discriminant simplifies to (4 anchor (1 - anchor) + 1/m) / m.
  const double inv_m = 1.0 / static_cast<double>(m);
  const double disc = (4.0 * anchor * (1.0 - anchor) + inv_m) * inv_m;
  double x = (2.0 * anchor + inv_m + std::sqrt(disc)) / (2.0 * (1.0 + inv_m));
  if (x > 1.0) return 2.0;
  for (int i = 0; i < 8 && !distinguishable(p, x, m); ++i) x = std::nextafter(x, 2.0);
  return x <= 1.0 ? x : 2.0;
}

std::uint64_t packing_count(double p1, double p2, std::uint64_t m) {
  check_probability(p1, "p1");
  check_probability(p2, "p2");
  check_trials(m);
  if (p1 > p2) std::swap(p1, p2);
  std::uint64_t count = 0;
  for (double p = next_distinguishable(p1, m); p <= p2; p = next_distinguishable(p, m)) ++count;
  return count;
}

BernoulliPoint polarization_prob(Orientation theta) {
  Orientation::make(theta.theta);
  const double c = std::cos(theta.theta);
  return BernoulliPoint{c * c};
}

double sat_ensemble_distance(double gamma1, double gamma2) { return bernoulli_distance(gamma1, gamma2); }

}  // namespace satlab

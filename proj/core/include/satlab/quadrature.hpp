#pragma once

#include <functional>

namespace satlab {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int levels = 0;
  bool converged = false;
};

struct QuadratureOptions {
  // Relative change between levels. Integrands singular at an endpoint where
  // the caller can only resolve 1 - x to machine epsilon settle near 1e-10,
  // so tighter values may never be met.
  double tolerance = 1e-9;
  int max_levels = 10;
};

/// Tanh-sinh (double exponential) rule on [a, b]. The substitution
/// x = c + h tanh(pi/2 sinh t) sends every algebraic endpoint singularity to
/// a doubly-exponentially decaying integrand, so integrable blow-ups such as
/// 1/sqrt(x - a) need no special handling. Abscissae are formed from their
/// distance to the nearer endpoint to keep resolution there. Nodes where the
/// integrand is not finite carry negligible weight and are dropped.
QuadratureResult tanh_sinh(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

}  // namespace satlab

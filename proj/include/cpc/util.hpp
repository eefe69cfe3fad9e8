#ifndef CPC_UTIL_HPP
#define CPC_UTIL_HPP

#include <functional>
#include <vector>

#include "cpc/spaces.hpp"

namespace cpc {

// Composite Simpson on uniformly sampled data (n odd sample count preferred;
// a trapezoid patch handles the last interval when the count is even).
double simpson_samples(const std::vector<double>& y, double h);

// Adaptive Simpson for evaluable integrands.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10, int max_depth = 30);

// Monotone cubic (Fritsch-Carlson) interpolant through (x_i, y_i), x strictly
// increasing. Evaluations clamp to the data range.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);
  double operator()(double t) const;

 private:
  std::vector<double> x_, y_, m_;
};

// Natural cubic-like Hermite interpolant with finite-difference slopes
// (not monotonicity-limited; good for smooth data).
class CubicHermite {
 public:
  CubicHermite() = default;
  CubicHermite(std::vector<double> x, std::vector<double> y);
  double operator()(double t) const;
  double deriv(double t) const;

 private:
  std::vector<double> x_, y_, m_;
  int find(double t) const;
};

struct SampledCurve {
  std::vector<Vec4> pts;  // uniform arc-length samples
  double h = 0.0;         // arc-length spacing
  double length = 0.0;
  std::vector<double> params;  // original curve parameters of the samples
};

// Resamples a curve at n+1 uniform arc-length stations (Riemannian length in
// the given space). Handles zero-length (degenerate) curves.
SampledCurve resample_arclength(const SpaceSpec& s, const std::function<Vec4(double)>& c,
                                double a, double b, int n);

double curve_length(const SpaceSpec& s, const std::function<Vec4(double)>& c, double a,
                    double b, int n = 512);

// Unwraps an angle sequence to be continuous (removes 2*pi jumps).
void unwrap_angles(std::vector<double>& a);

double wrap_pi(double a);  // wrap to (-pi, pi]

}  // namespace cpc

#endif

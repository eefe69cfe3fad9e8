#include "cpc/util.hpp"

#include <algorithm>
#include <cmath>

namespace cpc {

double simpson_samples(const std::vector<double>& y, double h) {
  const int n = int(y.size());
  if (n < 2) return 0.0;
  double acc = 0.0;
  int i = 0;
  for (; i + 2 < n; i += 2) acc += (h / 3.0) * (y[i] + 4.0 * y[i + 1] + y[i + 2]);
  if (i + 1 < n) acc += 0.5 * h * (y[i] + y[i + 1]);
  return acc;
}

namespace {
double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const int n = int(x_.size());
  m_.assign(n, 0.0);
  if (n < 2) return;
  std::vector<double> d(n - 1);
  for (int i = 0; i < n - 1; ++i) d[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
  m_[0] = d[0];
  m_[n - 1] = d[n - 2];
  for (int i = 1; i < n - 1; ++i)
    m_[i] = (d[i - 1] * d[i] > 0.0) ? 0.5 * (d[i - 1] + d[i]) : 0.0;
  for (int i = 0; i < n - 1; ++i) {
    if (d[i] == 0.0) {
      m_[i] = m_[i + 1] = 0.0;
      continue;
    }
    const double a = m_[i] / d[i], b = m_[i + 1] / d[i];
    const double s = a * a + b * b;
    if (s > 9.0) {
      const double t = 3.0 / std::sqrt(s);
      m_[i] = t * a * d[i];
      m_[i + 1] = t * b * d[i];
    }
  }
}

double MonotoneCubic::operator()(double t) const {
  const int n = int(x_.size());
  if (n == 0) return 0.0;
  if (n == 1 || t <= x_.front()) return y_.front();
  if (t >= x_.back()) return y_.back();
  int lo = int(std::upper_bound(x_.begin(), x_.end(), t) - x_.begin()) - 1;
  lo = std::clamp(lo, 0, n - 2);
  const double h = x_[lo + 1] - x_[lo];
  const double u = (t - x_[lo]) / h;
  const double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
  const double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
  return h00 * y_[lo] + h10 * h * m_[lo] + h01 * y_[lo + 1] + h11 * h * m_[lo + 1];
}

CubicHermite::CubicHermite(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const int n = int(x_.size());
  m_.assign(n, 0.0);
  if (n < 2) return;
  for (int i = 0; i < n; ++i) {
    if (i == 0)
      m_[i] = (y_[1] - y_[0]) / (x_[1] - x_[0]);
    else if (i == n - 1)
      m_[i] = (y_[n - 1] - y_[n - 2]) / (x_[n - 1] - x_[n - 2]);
    else
      m_[i] = (y_[i + 1] - y_[i - 1]) / (x_[i + 1] - x_[i - 1]);
  }
}

int CubicHermite::find(double t) const {
  const int n = int(x_.size());
  int lo = int(std::upper_bound(x_.begin(), x_.end(), t) - x_.begin()) - 1;
  return std::clamp(lo, 0, n - 2);
}

double CubicHermite::operator()(double t) const {
  const int n = int(x_.size());
  if (n == 0) return 0.0;
  if (n == 1) return y_[0];
  t = std::clamp(t, x_.front(), x_.back());
  const int lo = find(t);
  const double h = x_[lo + 1] - x_[lo];
  const double u = (t - x_[lo]) / h;
  const double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
  const double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
  return h00 * y_[lo] + h10 * h * m_[lo] + h01 * y_[lo + 1] + h11 * h * m_[lo + 1];
}

double CubicHermite::deriv(double t) const {
  const int n = int(x_.size());
  if (n < 2) return 0.0;
  t = std::clamp(t, x_.front(), x_.back());
  const int lo = find(t);
  const double h = x_[lo + 1] - x_[lo];
  const double u = (t - x_[lo]) / h;
  const double d00 = (6 * u * u - 6 * u) / h, d10 = 3 * u * u - 4 * u + 1;
  const double d01 = (6 * u - 6 * u * u) / h, d11 = 3 * u * u - 2 * u;
  return d00 * y_[lo] + d10 * m_[lo] + d01 * y_[lo + 1] + d11 * m_[lo + 1];
}

double curve_length(const SpaceSpec& s, const std::function<Vec4(double)>& c, double a,
                    double b, int n) {
  if (b <= a) return 0.0;
  const double dt = (b - a) / n;
  double len = 0.0;
  Vec4 prev = c(a);
  for (int i = 1; i <= n; ++i) {
    const Vec4 cur = c(a + i * dt);
    const Vec4 mid = 0.5 * (prev + cur);
    len += metric_norm(s, project_to_model(s, mid), cur - prev);
    prev = cur;
  }
  return len;
}

SampledCurve resample_arclength(const SpaceSpec& s, const std::function<Vec4(double)>& c,
                                double a, double b, int n) {
  SampledCurve out;
  if (!(b > a)) {
    out.pts.assign(n + 1, c(a));
    out.params.assign(n + 1, a);
    return out;
  }
  const int fine = std::max(8 * n, 512);
  std::vector<double> t(fine + 1), cum(fine + 1, 0.0);
  const double dt = (b - a) / fine;
  Vec4 prev = c(a);
  t[0] = a;
  for (int i = 1; i <= fine; ++i) {
    t[i] = a + i * dt;
    const Vec4 cur = c(t[i]);
    const Vec4 mid = 0.5 * (prev + cur);
    cum[i] = cum[i - 1] + metric_norm(s, project_to_model(s, mid), cur - prev);
    prev = cur;
  }
  out.length = cum.back();
  if (out.length < 1e-14) {  // degenerate curve
    out.pts.assign(n + 1, c(a));
    out.params.assign(n + 1, a);
    out.h = 0.0;
    return out;
  }
  // strictly increase cum for inversion
  for (int i = 1; i <= fine; ++i)
    if (cum[i] <= cum[i - 1]) cum[i] = cum[i - 1] + 1e-300;
  MonotoneCubic inv(cum, t);
  out.h = out.length / n;
  out.pts.reserve(n + 1);
  out.params.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double ti = (i == 0) ? a : (i == n ? b : inv(i * out.h));
    out.params.push_back(ti);
    out.pts.push_back(c(ti));
  }
  return out;
}

void unwrap_angles(std::vector<double>& a) {
  for (size_t i = 1; i < a.size(); ++i) {
    double d = a[i] - a[i - 1];
    while (d > M_PI) {
      a[i] -= 2.0 * M_PI;
      d = a[i] - a[i - 1];
    }
    while (d < -M_PI) {
      a[i] += 2.0 * M_PI;
      d = a[i] - a[i - 1];
    }
  }
}

double wrap_pi(double a) {
  while (a > M_PI) a -= 2.0 * M_PI;
  while (a <= -M_PI) a += 2.0 * M_PI;
  return a;
}

}  // namespace cpc

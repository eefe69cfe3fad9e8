#include "cpc/spaces.hpp"

#include <cmath>
#include <complex>

namespace cpc {

namespace {
constexpr double kFDStep = 1e-5;  // central differences of the metric

void check_finite(const Vec4& p) {
  if (!p.allFinite()) throw std::invalid_argument("non-finite coordinates");
}
}  // namespace

SpaceSpec SpaceSpec::berger(double kappa, double tau) {
  SpaceSpec s;
  s.kind = SpaceKind::BergerSphere;
  s.kappa = kappa;
  s.tau = tau;
  s.H = tau;
  s.validate();
  return s;
}

SpaceSpec SpaceSpec::berger_for(double H, int epsilon) {
  SpaceSpec s;
  s.kind = SpaceKind::BergerSphere;
  s.kappa = 4.0 * H * H + epsilon;
  s.tau = H;
  s.epsilon = epsilon;
  s.H = H;
  s.validate();
  return s;
}

SpaceSpec SpaceSpec::heisenberg() {
  SpaceSpec s;
  s.kind = SpaceKind::Heisenberg;
  s.kappa = 0.0;
  s.tau = 0.5;
  s.epsilon = -1;
  s.H = 0.5;  // sister target per the kappa=0 correspondence row
  return s;
}

SpaceSpec SpaceSpec::product(int epsilon) {
  SpaceSpec s;
  s.kind = SpaceKind::Product;
  s.epsilon = epsilon;
  s.kappa = epsilon;
  s.tau = 0.0;
  s.validate();
  return s;
}

bool SpaceSpec::is_construction_pair_for(double H_target, int eps_target) const {
  if (kind != SpaceKind::BergerSphere) return false;
  return std::abs(kappa - (4.0 * H_target * H_target + eps_target)) < 1e-12 &&
         std::abs(tau - H_target) < 1e-12;
}

void SpaceSpec::validate() const {
  switch (kind) {
    case SpaceKind::BergerSphere:
      if (!(kappa > 0.0)) throw std::invalid_argument("Berger sphere requires kappa > 0");
      if (tau == 0.0) throw std::invalid_argument("Berger sphere requires tau != 0");
      break;
    case SpaceKind::Heisenberg:
      if (kappa != 0.0 || tau != 0.5)
        throw std::invalid_argument("Heisenberg fixes kappa = 0, tau = 1/2");
      break;
    case SpaceKind::Product:
      if (epsilon != 1 && epsilon != -1)
        throw std::invalid_argument("product base sign must be +1 or -1");
      if (tau != 0.0 || kappa != double(epsilon))
        throw std::invalid_argument("product fixes tau = 0 and kappa = epsilon");
      break;
  }
}

Vec4 complex_i(const Vec4& p) { return Vec4(-p[1], p[0], -p[3], p[2]); }

Mat4 metric_matrix(const SpaceSpec& s, const Vec4& p) {
  Mat4 G = Mat4::Identity();
  switch (s.kind) {
    case SpaceKind::BergerSphere: {
      const double c = 4.0 * s.tau * s.tau / s.kappa - 1.0;
      const Vec4 V = complex_i(p);
      G = (4.0 / s.kappa) * (Mat4::Identity() + c * (V * V.transpose()));
      break;
    }
    case SpaceKind::Heisenberg: {
      // ds^2 = dx^2 + dy^2 + (1/2 (y dx - x dy) + dz)^2
      const double x = p[0], y = p[1];
      const Vec3 w(0.5 * y, -0.5 * x, 1.0);
      G.setIdentity();
      G.block<3, 3>(0, 0) = Mat3::Identity() - Vec3::UnitZ() * Vec3::UnitZ().transpose() +
                            w * w.transpose();
      break;
    }
    case SpaceKind::Product: {
      G.setIdentity();
      if (s.epsilon < 0) G(2, 2) = -1.0;  // Lorentz form on the base factor
      break;
    }
  }
  return G;
}

Mat4 metric_matrix_deriv(const SpaceSpec& s, const Vec4& p, const Vec4& w) {
  switch (s.kind) {
    case SpaceKind::BergerSphere: {
      const double c = 4.0 * s.tau * s.tau / s.kappa - 1.0;
      const Vec4 V = complex_i(p);
      const Vec4 dV = complex_i(w);
      return (4.0 / s.kappa) * c * (dV * V.transpose() + V * dV.transpose());
    }
    case SpaceKind::Heisenberg: {
      const double x = p[0], y = p[1];
      const Vec3 om(0.5 * y, -0.5 * x, 1.0);
      const Vec3 dom(0.5 * w[1], -0.5 * w[0], 0.0);
      Mat4 dG = Mat4::Zero();
      dG.block<3, 3>(0, 0) = dom * om.transpose() + om * dom.transpose();
      return dG;
    }
    case SpaceKind::Product:
      return Mat4::Zero();
  }
  return Mat4::Zero();
}

double metric_eval_raw(const SpaceSpec& s, const Vec4& p, const Vec4& u, const Vec4& v) {
  return u.dot(metric_matrix(s, p) * v);
}

double metric_eval(const SpaceSpec& s, const TangentVector& u, const TangentVector& v) {
  check_finite(u.base.x);
  if ((u.base.x - v.base.x).norm() > 1e-10)
    throw std::invalid_argument("metric_eval: mismatched base points");
  require_point(s, u.base.x, 1e-8);
  if (s.kind == SpaceKind::BergerSphere) {
    const double tu = std::abs(u.base.x.dot(u.v));
    const double tv = std::abs(v.base.x.dot(v.v));
    const double scale = std::max(1.0, std::max(u.v.norm(), v.v.norm()));
    if (tu > 1e-9 * scale || tv > 1e-9 * scale)
      throw std::invalid_argument("metric_eval: vector not tangent to S^3");
  }
  return metric_eval_raw(s, u.base.x, u.v, v.v);
}

double metric_norm(const SpaceSpec& s, const Vec4& p, const Vec4& u) {
  return std::sqrt(std::max(0.0, metric_eval_raw(s, p, u, u)));
}

double constraint_value(const SpaceSpec& s, const Vec4& p) {
  switch (s.kind) {
    case SpaceKind::BergerSphere:
      return p.squaredNorm() - 1.0;
    case SpaceKind::Product: {
      const double q = p[0] * p[0] + p[1] * p[1] + double(s.epsilon) * p[2] * p[2];
      return q - double(s.epsilon);
    }
    case SpaceKind::Heisenberg:
      return 0.0;
  }
  return 0.0;
}

Vec4 constraint_grad(const SpaceSpec& s, const Vec4& p) {
  switch (s.kind) {
    case SpaceKind::BergerSphere:
      return 2.0 * p;
    case SpaceKind::Product:
      return Vec4(2.0 * p[0], 2.0 * p[1], 2.0 * double(s.epsilon) * p[2], 0.0);
    case SpaceKind::Heisenberg:
      return Vec4::Zero();
  }
  return Vec4::Zero();
}

Mat4 constraint_hess(const SpaceSpec& s) {
  Mat4 H = Mat4::Zero();
  if (s.kind == SpaceKind::BergerSphere) H = 2.0 * Mat4::Identity();
  if (s.kind == SpaceKind::Product) {
    H(0, 0) = H(1, 1) = 2.0;
    H(2, 2) = 2.0 * double(s.epsilon);
  }
  return H;
}

bool point_valid(const SpaceSpec& s, const Vec4& p, double tol) {
  if (!p.allFinite()) return false;
  if (s.kind == SpaceKind::Product && s.epsilon < 0 && !(p[2] > 0.0)) return false;
  return std::abs(constraint_value(s, p)) <= tol;
}

void require_point(const SpaceSpec& s, const Vec4& p, double tol) {
  if (!point_valid(s, p, tol)) throw std::invalid_argument("point violates model constraint");
}

Vec4 project_to_model(const SpaceSpec& s, const Vec4& p) {
  switch (s.kind) {
    case SpaceKind::BergerSphere:
      return p / p.norm();
    case SpaceKind::Product: {
      Vec3 b = p.head<3>();
      if (s.epsilon > 0) {
        b /= b.norm();
      } else {
        const double q = -(b[0] * b[0] + b[1] * b[1] - b[2] * b[2]);
        b /= std::sqrt(q);
      }
      return Vec4(b[0], b[1], b[2], p[3]);
    }
    case SpaceKind::Heisenberg:
      return p;
  }
  return p;
}

Vec4 project_tangent_linear(const SpaceSpec& s, const Vec4& p, const Vec4& v) {
  if (!s.constrained()) return v;
  const Vec4 gc = constraint_grad(s, p);
  return v - (gc.dot(v) / gc.squaredNorm()) * gc;
}

Vec4 project_tangent_metric(const SpaceSpec& s, const Vec4& p, const Vec4& v) {
  if (!s.constrained()) return v;
  const Vec4 gc = constraint_grad(s, p);
  const Vec4 m = metric_matrix(s, p).ldlt().solve(gc);
  return v - (gc.dot(v) / gc.dot(m)) * m;
}

TangentVector vertical_field(const SpaceSpec& s, const AmbientPoint& p) {
  switch (s.kind) {
    case SpaceKind::BergerSphere:
      return {p, (s.kappa / (4.0 * s.tau)) * complex_i(p.x)};
    case SpaceKind::Heisenberg:
      return {p, Vec4(0, 0, 1, 0)};
    case SpaceKind::Product:
      return {p, Vec4(0, 0, 0, 1)};
  }
  return {p, Vec4::Zero()};
}

AmbientPoint vertical_flow(const SpaceSpec& s, const AmbientPoint& p, double t) {
  switch (s.kind) {
    case SpaceKind::BergerSphere: {
      const double a = s.kappa / (4.0 * s.tau) * t;
      const double c = std::cos(a), sn = std::sin(a);
      const Vec4& x = p.x;
      return AmbientPoint(c * x[0] - sn * x[1], sn * x[0] + c * x[1],
                          c * x[2] - sn * x[3], sn * x[2] + c * x[3]);
    }
    case SpaceKind::Heisenberg:
      return AmbientPoint(p.x + Vec4(0, 0, t, 0));
    case SpaceKind::Product:
      return AmbientPoint(p.x + Vec4(0, 0, 0, t));
  }
  return p;
}

Vec4 vertical_flow_push(const SpaceSpec& s, const AmbientPoint& p, double t, const Vec4& v) {
  if (s.kind == SpaceKind::BergerSphere) {
    AmbientPoint q(v);
    return vertical_flow(s, q, t).x;  // the flow is linear
  }
  (void)p;
  return v;
}

AmbientPoint hopf_project(const SpaceSpec& s, const AmbientPoint& p) {
  if (s.kind != SpaceKind::BergerSphere)
    throw std::invalid_argument("hopf_project: space is not a Berger sphere");
  require_point(s, p.x, 1e-8);
  const double x1 = p.x[0], y1 = p.x[1], x2 = p.x[2], y2 = p.x[3];
  const double f = 2.0 / std::sqrt(s.kappa);
  return AmbientPoint(f * (x1 * x2 + y1 * y2), f * (y1 * x2 - x1 * y2),
                      f * 0.5 * (x1 * x1 + y1 * y1 - x2 * x2 - y2 * y2), 0.0);
}

Vec4 hopf_differential(const SpaceSpec& s, const AmbientPoint& p, const Vec4& v) {
  const double x1 = p.x[0], y1 = p.x[1], x2 = p.x[2], y2 = p.x[3];
  const double u1 = v[0], w1 = v[1], u2 = v[2], w2 = v[3];
  const double f = 2.0 / std::sqrt(s.kappa);
  return Vec4(f * (u1 * x2 + x1 * u2 + w1 * y2 + y1 * w2),
              f * (w1 * x2 + y1 * u2 - u1 * y2 - x1 * w2),
              f * (x1 * u1 + y1 * w1 - x2 * u2 - y2 * w2), 0.0);
}

Vec3 base_project_unit(const SpaceSpec& s, const Vec4& p) {
  switch (s.kind) {
    case SpaceKind::BergerSphere: {
      const double x1 = p[0], y1 = p[1], x2 = p[2], y2 = p[3];
      return Vec3(2.0 * (x1 * x2 + y1 * y2), 2.0 * (y1 * x2 - x1 * y2),
                  x1 * x1 + y1 * y1 - x2 * x2 - y2 * y2);
    }
    case SpaceKind::Heisenberg:
      return Vec3(p[0], p[1], 0.0);
    case SpaceKind::Product:
      return p.head<3>();
  }
  return Vec3::Zero();
}

Vec4 Christoffel::apply(const Vec4& u, const Vec4& w) const {
  Vec4 out = Vec4::Zero();
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) acc += G[i][j][k] * u[j] * w[k];
    out[i] = acc;
  }
  return out;
}

Christoffel christoffel(const SpaceSpec& s, const Vec4& p) {
  const int n = s.dim();
  Christoffel ch;
  ch.n = n;

  double dg[4][4][4] = {};  // dg[l][i][j] = d g_ij / d x_l
  for (int l = 0; l < n; ++l) {
    Vec4 e = Vec4::Zero();
    e[l] = kFDStep;
    const Mat4 Gp = metric_matrix(s, p + e);
    const Mat4 Gm = metric_matrix(s, p - e);
    const Mat4 d = (Gp - Gm) / (2.0 * kFDStep);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dg[l][i][j] = d(i, j);
  }

  const Mat4 G = metric_matrix(s, p);
  Eigen::MatrixXd Ginv = G.topLeftCorner(n, n).inverse();

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        double sum = 0.0;
        for (int l = 0; l < n; ++l)
          sum += Ginv(i, l) * (dg[j][l][k] + dg[k][l][j] - dg[l][j][k]);
        ch.G[i][j][k] = 0.5 * sum;
        ch.G[i][k][j] = ch.G[i][j][k];
      }
  return ch;
}

Vec4 covariant_correct(const SpaceSpec& s, const Vec4& p, const Vec4& dv,
                       const Vec4& u, const Vec4& v) {
  const Christoffel ch = christoffel(s, p);
  Vec4 r = dv + ch.apply(u, v);
  if (s.constrained()) r = project_tangent_metric(s, p, r);
  return r;
}

namespace {

struct GeoState {
  Vec4 p, v;
};

GeoState geo_rhs(const SpaceSpec& s, const GeoState& y) {
  const Christoffel ch = christoffel(s, y.p);
  Vec4 a = -ch.apply(y.v, y.v);
  if (s.constrained()) {
    const Vec4 gc = constraint_grad(s, y.p);
    const Vec4 m = metric_matrix(s, y.p).ldlt().solve(gc);
    const double num = gc.dot(a) + y.v.dot(constraint_hess(s) * y.v);
    a -= (num / gc.dot(m)) * m;
  }
  return {y.v, a};
}

}  // namespace

GeodesicPath geodesic_integrate(const SpaceSpec& s, const AmbientPoint& p,
                                const TangentVector& v, double length, int steps) {
  if (steps < 16) throw std::invalid_argument("geodesic_integrate: steps >= 16 required");
  if (v.v.norm() == 0.0) throw std::invalid_argument("geodesic_integrate: zero initial velocity");
  require_point(s, p.x, 1e-8);
  const double speed = metric_norm(s, p.x, v.v);
  if (std::abs(speed - 1.0) > 1e-10)
    throw std::invalid_argument("geodesic_integrate: initial velocity must be unit");

  GeodesicPath path;
  path.length = length;
  path.points.reserve(steps + 1);

  GeoState y{p.x, v.v};
  if (s.constrained()) y.v = project_tangent_linear(s, y.p, y.v);
  path.points.push_back(AmbientPoint(y.p));

  const double h = length / steps;
  for (int i = 0; i < steps; ++i) {
    const GeoState k1 = geo_rhs(s, y);
    const GeoState k2 = geo_rhs(s, {y.p + 0.5 * h * k1.p, y.v + 0.5 * h * k1.v});
    const GeoState k3 = geo_rhs(s, {y.p + 0.5 * h * k2.p, y.v + 0.5 * h * k2.v});
    const GeoState k4 = geo_rhs(s, {y.p + h * k3.p, y.v + h * k3.v});
    y.p += (h / 6.0) * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
    y.v += (h / 6.0) * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
    if (s.constrained()) {
      y.p = project_to_model(s, y.p);
      y.v = project_tangent_linear(s, y.p, y.v);
    }
    const double sp = metric_norm(s, y.p, y.v);
    if (sp > 0.0) y.v /= sp;
    path.points.push_back(AmbientPoint(y.p));
  }
  return path;
}

double geodesic_residual(const SpaceSpec& s, const std::vector<AmbientPoint>& pts, double h) {
  const int N = int(pts.size());
  if (N < 5) return 0.0;
  double worst = 0.0;
  for (int i = 2; i + 2 < N; ++i) {
    const Vec4& pm2 = pts[i - 2].x;
    const Vec4& pm1 = pts[i - 1].x;
    const Vec4& p0 = pts[i].x;
    const Vec4& pp1 = pts[i + 1].x;
    const Vec4& pp2 = pts[i + 2].x;
    const Vec4 vel = (-pp2 + 8.0 * pp1 - 8.0 * pm1 + pm2) / (12.0 * h);
    const Vec4 acc = (-pp2 + 16.0 * pp1 - 30.0 * p0 + 16.0 * pm1 - pm2) / (12.0 * h * h);
    const Christoffel ch = christoffel(s, p0);
    Vec4 r = acc + ch.apply(vel, vel);
    if (s.constrained()) r = project_tangent_metric(s, p0, r);
    worst = std::max(worst, metric_norm(s, p0, r));
  }
  return worst;
}

// ---- reflections -------------------------------------------------------------

namespace {

using C2 = Eigen::Vector2cd;
using M2c = Eigen::Matrix2cd;

C2 to_c2(const Vec4& p) {
  return C2(std::complex<double>(p[0], p[1]), std::complex<double>(p[2], p[3]));
}
Vec4 to_r4(const C2& z) { return Vec4(z[0].real(), z[0].imag(), z[1].real(), z[1].imag()); }

void validate_axis(const SpaceSpec& s, const GeodesicAxis& axis) {
  if (axis.samples.size() < 5) throw std::invalid_argument("axis: too few samples");
  const double res = geodesic_residual(s, axis.samples, axis.step);
  if (res > 1e-6) throw std::invalid_argument("axis fails geodesic-residual validation");
  // kind residual at the midpoint
  const int m = int(axis.samples.size()) / 2;
  const Vec4 t = (axis.samples[m + 1].x - axis.samples[m - 1].x) / (2.0 * axis.step);
  const Vec4 p = axis.samples[m].x;
  const TangentVector xi = vertical_field(s, AmbientPoint(p));
  const double tn = metric_norm(s, p, t);
  const double proj = metric_eval_raw(s, p, t, xi.v) / tn;
  if (axis.kind == EdgeKind::Vertical) {
    if (std::abs(std::abs(proj) - 1.0) > 1e-6)
      throw std::invalid_argument("axis tagged vertical is not vertical");
  } else {
    if (std::abs(proj) > 1e-6) throw std::invalid_argument("axis tagged horizontal is not horizontal");
  }
}

// Heisenberg group left translation and its inverse.
Vec4 heis_mul(const Vec4& g, const Vec4& p) {
  return Vec4(g[0] + p[0], g[1] + p[1],
              g[2] + p[2] + 0.5 * (g[0] * p[1] - g[1] * p[0]), 0.0);
}
Vec4 heis_inv(const Vec4& g) { return Vec4(-g[0], -g[1], -g[2], 0.0); }

}  // namespace

AmbientPoint geodesic_reflection(const SpaceSpec& s, const GeodesicAxis& axis,
                                 const AmbientPoint& p) {
  validate_axis(s, axis);
  const int m = int(axis.samples.size()) / 2;
  const Vec4 p0 = axis.samples[m].x;
  Vec4 dir = (axis.samples[m + 1].x - axis.samples[m - 1].x);
  dir /= dir.norm();

  switch (s.kind) {
    case SpaceKind::BergerSphere: {
      if (axis.kind == EdgeKind::Vertical) {
        // conjugate of (z,w) -> (z,-w) by the unitary [p0 | q]
        const C2 a = to_c2(p0);
        M2c U;
        U.col(0) = a;
        U.col(1) = C2(-std::conj(a[1]), std::conj(a[0]));
        const C2 img = U * (M2c() << 1, 0, 0, -1).finished() * (U.adjoint() * to_c2(p.x));
        return AmbientPoint(to_r4(img));
      }
      // horizontal geodesic: conjugate of complex conjugation by [p0 | u0]
      C2 a = to_c2(p0);
      C2 u = to_c2(dir);
      u -= (u.dot(a)) * a;  // Eigen dot conjugates the first argument
      u /= u.norm();
      M2c U;
      U.col(0) = a;
      U.col(1) = u;
      const C2 img = U * (U.adjoint() * to_c2(p.x)).conjugate();
      return AmbientPoint(to_r4(img));
    }
    case SpaceKind::Heisenberg: {
      const Vec4 q = heis_mul(heis_inv(p0), p.x);
      Vec4 r;
      if (axis.kind == EdgeKind::Vertical) {
        r = Vec4(-q[0], -q[1], q[2], 0.0);
      } else {
        const double th = std::atan2(dir[1], dir[0]);
        const double c = std::cos(th), sn = std::sin(th);
        const Vec4 q1(c * q[0] + sn * q[1], -sn * q[0] + c * q[1], q[2], 0.0);
        const Vec4 q2(q1[0], -q1[1], -q1[2], 0.0);
        r = Vec4(c * q2[0] - sn * q2[1], sn * q2[0] + c * q2[1], q2[2], 0.0);
      }
      return AmbientPoint(heis_mul(p0, r));
    }
    case SpaceKind::Product: {
      const Vec3 b = p.x.head<3>();
      if (axis.kind == EdgeKind::Vertical) {
        const Vec3 b0 = p0.head<3>();
        Vec3 img;
        if (s.epsilon > 0)
          img = 2.0 * b.dot(b0) * b0 - b;
        else
          img = -b - 2.0 * base_form(-1, b, b0) * b0;
        return AmbientPoint(img[0], img[1], img[2], p.x[3]);
      }
      // horizontal geodesic in a slice: reflect base across it, height across t0
      const Vec3 b0 = p0.head<3>();
      const Vec3 d = dir.head<3>().normalized();
      // plane normal spanning the geodesic's orthogonal complement in T(M^2)
      Vec3 n;
      if (s.epsilon > 0) {
        n = b0.cross(d);
        n.normalize();
      } else {
        // Lorentz cross product: <n, b0> = <n, d> = 0, spacelike
        const Vec3 J(1, 1, -1);
        n = (b0.cwiseProduct(J)).cross(d.cwiseProduct(J));
        n /= std::sqrt(std::abs(base_form(-1, n, n)));
      }
      Vec3 img;
      if (s.epsilon > 0)
        img = b - 2.0 * b.dot(n) * n;
      else
        img = b - 2.0 * base_form(-1, b, n) * n;
      return AmbientPoint(img[0], img[1], img[2], 2.0 * p0[3] - p.x[3]);
    }
  }
  return p;
}

Vec4 geodesic_reflection_push(const SpaceSpec& s, const GeodesicAxis& axis,
                              const AmbientPoint& p, const Vec4& v) {
  // all reflections above are affine in the point; differentiate numerically
  const double h = 1e-6;
  const Vec4 a = geodesic_reflection(s, axis, AmbientPoint(p.x + h * v)).x;
  const Vec4 b = geodesic_reflection(s, axis, AmbientPoint(p.x - h * v)).x;
  return (a - b) / (2.0 * h);
}

AmbientPoint product_reflection(const SpaceSpec& s, const ProductPlane& plane,
                                const AmbientPoint& p) {
  if (s.kind != SpaceKind::Product)
    throw std::invalid_argument("product_reflection: space is not a product");
  if (plane.is_slice) {
    Vec4 q = p.x;
    q[3] = 2.0 * plane.height - q[3];
    return AmbientPoint(q);
  }
  const Vec3 n = plane.normal;
  const double nn = base_form(s.epsilon, n, n);
  if (!(nn > 1e-12))
    throw std::invalid_argument("product_reflection: malformed vertical plane normal");
  const Vec3 b = p.x.head<3>();
  const Vec3 img = b - (2.0 * base_form(s.epsilon, b, n) / nn) * n;
  return AmbientPoint(img[0], img[1], img[2], p.x[3]);
}

double base_form(int epsilon, const Vec3& a, const Vec3& b) {
  if (epsilon > 0) return a.dot(b);
  return a[0] * b[0] + a[1] * b[1] - a[2] * b[2];
}

double base_plane_distance(int epsilon, const Vec3& b, const Vec3& n) {
  const double nn = std::sqrt(base_form(epsilon, n, n));
  const double v = std::abs(base_form(epsilon, b, n)) / nn;
  if (epsilon > 0) return std::asin(std::min(1.0, v));
  return std::asinh(v);
}

}  // namespace cpc

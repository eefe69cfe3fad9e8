#include "cpc/rotational.hpp"

#include <algorithm>
#include <cmath>

#include "cpc/util.hpp"

namespace cpc {

namespace {

// f = sn_eps (point rotation) or cs_eps (horizontal-geodesic invariance)
struct Radial {
  int eps;
  bool horizontal;
  double ctf(double r) const {  // f'/f
    if (!horizontal) return eps > 0 ? 1.0 / std::tan(r) : 1.0 / std::tanh(r);
    return eps > 0 ? -std::tan(r) : std::tanh(r);
  }
};

struct PState {
  double rho, h, sigma;
};

PState rhs_arc(const Radial& rad, double H, const PState& y) {
  return {std::cos(y.sigma), std::sin(y.sigma),
          2.0 * H - std::sin(y.sigma) * rad.ctf(y.rho)};
}

PState rk4_arc(const Radial& rad, double H, const PState& y, double ds) {
  const PState k1 = rhs_arc(rad, H, y);
  auto adv = [&](const PState& k, double f) {
    return PState{y.rho + f * ds * k.rho, y.h + f * ds * k.h, y.sigma + f * ds * k.sigma};
  };
  const PState k2 = rhs_arc(rad, H, adv(k1, 0.5));
  const PState k3 = rhs_arc(rad, H, adv(k2, 0.5));
  const PState k4 = rhs_arc(rad, H, adv(k3, 1.0));
  return {y.rho + ds / 6.0 * (k1.rho + 2 * k2.rho + 2 * k3.rho + k4.rho),
          y.h + ds / 6.0 * (k1.h + 2 * k2.h + 2 * k3.h + k4.h),
          y.sigma + ds / 6.0 * (k1.sigma + 2 * k2.sigma + 2 * k3.sigma + k4.sigma)};
}

void push(ProfileCurve& pc, double s, const PState& y) {
  pc.s.push_back(s);
  pc.rho.push_back(y.rho);
  pc.h.push_back(y.h);
  pc.sigma.push_back(y.sigma);
}

void require_supercritical(int eps, double H) {
  if (!(4.0 * H * H + eps > 0.0))
    throw std::invalid_argument("rotational family requires 4H^2 + eps > 0");
  if (!(H > 0.0)) throw std::invalid_argument("rotational family requires H > 0");
}

// closed profiles integrated in sigma (monotone there): sphere on [s0, pi],
// horizontal torus on [0, pi/2]
ProfileCurve integrate_monotone(int eps, double H, bool horizontal, double sig_end) {
  Radial rad{eps, horizontal};
  ProfileCurve pc;
  pc.epsilon = eps;
  pc.H = H;
  pc.family = horizontal ? RotFamily::HorizontalCylinderOrTorus : RotFamily::Sphere;

  double sig0 = 0.0;
  PState y{0.0, 0.0, 0.0};
  if (!horizontal) {
    // regularize the axis start with the flux sn(rho) sin(sigma) = 2H Cn(rho)
    sig0 = 1e-4;
    const double u = std::sin(sig0) / (2.0 * H);
    y.rho = 2.0 * (eps > 0 ? std::atan(u) : std::atanh(u));
    y.h = sig0 * sig0 / (4.0 * H);  // dh/dsigma ~ sigma/(2H) near the axis
    y.sigma = sig0;
  }

  const int N = 16384;
  const double dsig = (sig_end - sig0) / N;
  double s = 0.0;
  push(pc, s, y);
  for (int i = 0; i < N; ++i) {
    // integrate with sigma as independent variable
    auto rhs = [&](const PState& q) {
      const double Q = 2.0 * H - std::sin(q.sigma) * rad.ctf(q.rho);
      return PState{std::cos(q.sigma) / Q, std::sin(q.sigma) / Q, 1.0};
    };
    const PState k1 = rhs(y);
    auto adv = [&](const PState& k, double f) {
      return PState{y.rho + f * dsig * k.rho, y.h + f * dsig * k.h, y.sigma + f * dsig};
    };
    const PState k2 = rhs(adv(k1, 0.5));
    const PState k3 = rhs(adv(k2, 0.5));
    const PState k4 = rhs(adv(k3, 1.0));
    const double drho = dsig / 6.0 * (k1.rho + 2 * k2.rho + 2 * k3.rho + k4.rho);
    const double dh = dsig / 6.0 * (k1.h + 2 * k2.h + 2 * k3.h + k4.h);
    s += std::hypot(drho, dh);
    y = {y.rho + drho, y.h + dh, y.sigma + dsig};
    push(pc, s, y);
  }
  pc.rho_min = *std::min_element(pc.rho.begin(), pc.rho.end());
  pc.rho_max = *std::max_element(pc.rho.begin(), pc.rho.end());
  return pc;
}

}  // namespace

double cylinder_radius(int eps, double H) {
  require_supercritical(eps, H);
  if (eps > 0) return std::atan(1.0 / (2.0 * H));
  if (!(2.0 * H > 1.0))
    throw std::invalid_argument("vertical cylinder in H^2 x R requires H > 1/2");
  return std::atanh(1.0 / (2.0 * H));
}

ProfileCurve profile_solve(int eps, double H, RotFamily family, double param) {
  require_supercritical(eps, H);
  switch (family) {
    case RotFamily::Sphere: {
      ProfileCurve pc = integrate_monotone(eps, H, false, M_PI);
      // hemisphere height above the equatorial symmetry slice
      const double total = pc.h.back() - pc.h.front();
      pc.max_height = 0.5 * total;
      return pc;
    }
    case RotFamily::HorizontalCylinderOrTorus: {
      ProfileCurve pc = integrate_monotone(eps, H, true, M_PI_2);
      // profile runs from the top geodesic (r=0) down to the symmetry slice;
      // the max height above that slice is the half height integrated here
      pc.max_height = pc.h.back() - pc.h.front();
      return pc;
    }
    case RotFamily::VerticalCylinder: {
      ProfileCurve pc;
      pc.epsilon = eps;
      pc.H = H;
      pc.family = family;
      const double rc = cylinder_radius(eps, H);
      pc.param = rc;
      const double L = 2.0 * std::max(1.0, 1.0 / (2.0 * H));
      const int N = 512;
      for (int i = 0; i <= N; ++i) {
        const double h = -L + 2.0 * L * i / N;
        push(pc, h + L, {rc, h, M_PI_2});
      }
      pc.rho_min = pc.rho_max = rc;
      pc.max_height = L;
      return pc;
    }
    case RotFamily::Unduloid:
    case RotFamily::Nodoid: {
      const bool undu = (family == RotFamily::Unduloid);
      const double rc = cylinder_radius(eps, H);
      if (undu && !(param > 0.0 && param < rc))
        throw std::invalid_argument("unduloid neck radius must lie in (0, cylinder radius)");
      if (!undu && !(param > 0.0))
        throw std::invalid_argument("nodoid neck radius must be positive");
      Radial rad{eps, false};
      ProfileCurve pc;
      pc.epsilon = eps;
      pc.H = H;
      pc.family = family;
      pc.param = param;
      PState y{param, 0.0, undu ? M_PI_2 : -M_PI_2};
      const double sig_stop = undu ? M_PI_2 : 3.0 * M_PI_2;  // half / full loop
      const double ds0 = 2e-4;
      double s = 0.0;
      push(pc, s, y);
      auto sn_of = [&](double r) { return eps > 0 ? std::sin(r) : std::sinh(r); };
      auto Cn_of = [&](double r) { return eps > 0 ? 1.0 - std::cos(r) : std::cosh(r) - 1.0; };
      // first integral sn(rho) sin(sigma) - 2H Cn(rho) = Q0; project each step
      const double Q0 = sn_of(param) * std::sin(y.sigma) - 2.0 * H * Cn_of(param);
      long guard = 4'000'000;
      while (guard-- > 0) {
        // near the axis ct(rho) ~ 1/rho is stiff: scale the step with sn(rho)
        const double sn = sn_of(y.rho);
        const double ds = std::min(ds0, std::max(1e-7, 0.01 * std::abs(sn)));
        PState yn = rk4_arc(rad, H, y, ds);
        if (!std::isfinite(yn.sigma) || !std::isfinite(yn.rho))
          throw std::runtime_error("profile integration diverged");
        const double sig_raw = yn.sigma;  // drives branch choice and events
        // flux projection keeps the orbit on its level set
        const double target = std::clamp((Q0 + 2.0 * H * Cn_of(yn.rho)) / sn_of(yn.rho),
                                         -1.0, 1.0);
        const double base = std::asin(target);
        yn.sigma = (sig_raw > M_PI_2) ? M_PI - base : base;
        s += ds;
        push(pc, s, yn);
        if (undu) {
          // half period: the first upward crossing of pi/2 (the bulge)
          if (sig_raw >= sig_stop && y.sigma < sig_stop) break;
        } else {
          if (sig_raw >= sig_stop) break;
        }
        if (eps > 0 && !(yn.rho > 1e-9 && yn.rho < M_PI - 1e-9))
          throw std::runtime_error("profile left the admissible radius range");
        y = yn;
      }
      if (guard <= 0) throw std::runtime_error("profile integration did not close a period");
      pc.rho_min = *std::min_element(pc.rho.begin(), pc.rho.end());
      pc.rho_max = *std::max_element(pc.rho.begin(), pc.rho.end());
      // neck-to-bulge piece is a half period for the unduloid, full loop for nodoid
      pc.period_height = (undu ? 2.0 : 1.0) * std::abs(pc.h.back() - pc.h.front());
      pc.max_height = pc.period_height;
      return pc;
    }
  }
  throw std::invalid_argument("unknown rotational family");
}

double sphere_height(int eps, double H) {
  return profile_solve(eps, H, RotFamily::Sphere).max_height;
}

double cylinder_height(int eps, double H) {
  return profile_solve(eps, H, RotFamily::HorizontalCylinderOrTorus).max_height;
}

namespace {

Vec4 revolution_point(int eps, bool horizontal, double rho, double t, double ang) {
  Vec3 b;
  if (!horizontal) {
    if (eps > 0)
      b = Vec3(std::sin(rho) * std::cos(ang), std::sin(rho) * std::sin(ang), std::cos(rho));
    else
      b = Vec3(std::sinh(rho) * std::cos(ang), std::sinh(rho) * std::sin(ang), std::cosh(rho));
  } else {
    if (eps > 0)
      b = Vec3(std::cos(rho) * std::cos(ang), std::cos(rho) * std::sin(ang), std::sin(rho));
    else
      b = Vec3(std::cosh(rho) * std::sinh(ang), std::sinh(rho), std::cosh(rho) * std::cosh(ang));
  }
  return Vec4(b[0], b[1], b[2], t);
}

void revolution_partials(int eps, bool horizontal, double rho, double ang, Vec3& d_rho,
                         Vec3& d_ang) {
  const double ca = std::cos(ang), sa = std::sin(ang);
  if (!horizontal) {
    if (eps > 0) {
      d_rho = Vec3(std::cos(rho) * ca, std::cos(rho) * sa, -std::sin(rho));
      d_ang = Vec3(-std::sin(rho) * sa, std::sin(rho) * ca, 0.0);
    } else {
      d_rho = Vec3(std::cosh(rho) * ca, std::cosh(rho) * sa, std::sinh(rho));
      d_ang = Vec3(-std::sinh(rho) * sa, std::sinh(rho) * ca, 0.0);
    }
  } else {
    if (eps > 0) {
      d_rho = Vec3(-std::sin(rho) * ca, -std::sin(rho) * sa, std::cos(rho));
      d_ang = Vec3(-std::cos(rho) * sa, std::cos(rho) * ca, 0.0);
    } else {
      const double shx = std::sinh(ang), chx = std::cosh(ang);
      d_rho = Vec3(std::sinh(rho) * shx, std::cosh(rho), std::sinh(rho) * chx);
      d_ang = Vec3(std::cosh(rho) * chx, 0.0, std::cosh(rho) * shx);
    }
  }
}

}  // namespace

double profile_cmc_residual(const ProfileCurve& pc) {
  const bool horizontal = (pc.family == RotFamily::HorizontalCylinderOrTorus);
  const CubicHermite rho_of_s(pc.s, pc.rho);
  const CubicHermite h_of_s(pc.s, pc.h);
  const CubicHermite sig_of_s(pc.s, pc.sigma);
  const int eps = pc.epsilon;

  ImmersedPatch patch;
  patch.space = SpaceSpec::product(eps);
  const double smin = pc.s.front(), smax = pc.s.back();
  const double margin = 0.05 * (smax - smin);
  patch.x0 = 0.1;
  patch.x1 = 0.9;
  patch.y0 = smin + margin;
  patch.y1 = smax - margin;
  patch.map = [=](double ang, double s) {
    return revolution_point(eps, horizontal, rho_of_s(s), h_of_s(s), ang);
  };
  patch.jet = [=](double ang, double s) {
    SurfJet j;
    const double rho = rho_of_s(s), sig = sig_of_s(s);
    j.p = revolution_point(eps, horizontal, rho, h_of_s(s), ang);
    Vec3 d_rho, d_ang;
    revolution_partials(eps, horizontal, rho, ang, d_rho, d_ang);
    j.fx = Vec4(d_ang[0], d_ang[1], d_ang[2], 0.0);
    const Vec3 ds = d_rho * std::cos(sig);
    j.fy = Vec4(ds[0], ds[1], ds[2], std::sin(sig));
    return j;
  };

  const FundamentalData fd = fundamental_data(patch, 9, 33, NuConvention::Keep);
  double worst = 0.0;
  for (double h : mean_curvature(fd))
    if (std::isfinite(h)) worst = std::max(worst, std::abs(std::abs(h) - pc.H));
  return worst;
}

double ProfileCurve::distance(double rho0, double h0) const {
  // point-to-polyline distance; the unduloid piece (neck to bulge) extends by
  // mirror reflections in h, the nodoid loop by pure translation
  double best = 1e300;
  const bool undu = family == RotFamily::Unduloid;
  const bool periodic = (undu || family == RotFamily::Nodoid) && period_height > 0.0;
  const double span = h.back() - h.front();
  int kmin = 0, kmax = 0;
  if (periodic && std::abs(span) > 1e-12) {
    kmin = int(std::floor((h0 - h.back()) / std::abs(span))) - 2;
    kmax = kmin + 5;
  }
  for (int k = kmin; k <= kmax; ++k) {
    const double shift = k * span;
    const bool mirror = undu && (k % 2 != 0);
    for (size_t i = 0; i + 1 < rho.size(); ++i) {
      const double ay = shift + h.front() + (mirror ? h.back() - h[i] : h[i] - h.front());
      const double by =
          shift + h.front() + (mirror ? h.back() - h[i + 1] : h[i + 1] - h.front());
      const double ax = rho[i], bx = rho[i + 1];
      const double vx = bx - ax, vy = by - ay;
      const double L2 = vx * vx + vy * vy;
      double u = L2 > 0 ? ((rho0 - ax) * vx + (h0 - ay) * vy) / L2 : 0.0;
      u = std::clamp(u, 0.0, 1.0);
      const double dx = rho0 - (ax + u * vx), dy = h0 - (ay + u * vy);
      best = std::min(best, dx * dx + dy * dy);
    }
    if (!periodic) break;
  }
  return std::sqrt(best);
}

namespace {

double base_distance(int eps, const Vec3& b, const Vec3& axis) {
  if (eps > 0) return std::acos(std::clamp(b.dot(axis), -1.0, 1.0));
  const double c = -base_form(-1, b, axis);
  return std::acosh(std::max(1.0, c));
}

Vec3 axis_normalize(int eps, Vec3 a) {
  if (eps > 0) return a.normalized();
  const double q = -base_form(-1, a, a);
  if (!(q > 0.0)) return Vec3(0, 0, 1);
  a /= std::sqrt(q);
  if (a[2] < 0) a = -a;
  return a;
}

}  // namespace

MatchReport match_sister(const ProfileCurve& profile, const std::vector<Vec4>& verts,
                         int eps) {
  if (verts.empty()) throw std::invalid_argument("match_sister: empty mesh");

  // subsample for fitting
  std::vector<Vec4> fit;
  const size_t stride = std::max<size_t>(1, verts.size() / 300);
  for (size_t i = 0; i < verts.size(); i += stride) fit.push_back(verts[i]);

  Vec3 a0 = Vec3::Zero();
  for (const auto& v : fit) a0 += v.head<3>();
  a0 = axis_normalize(eps, a0);

  auto objective = [&](const Vec3& axis, double shift) {
    double acc = 0.0;
    for (const auto& v : fit) {
      const double d = base_distance(eps, v.head<3>(), axis);
      const double e = profile.distance(d, v[3] - shift);
      acc += e * e;
    }
    return acc;
  };

  // deterministic compass search over two tangent angles and the shift
  Vec3 u1 = a0.cross(Vec3::UnitX());
  if (u1.norm() < 1e-6) u1 = a0.cross(Vec3::UnitY());
  u1.normalize();
  Vec3 u2 = a0.cross(u1).normalized();
  double t1 = 0.0, t2 = 0.0, shift = 0.0;
  double step = 0.2;
  auto make_axis = [&](double s1, double s2) {
    return axis_normalize(eps, a0 + s1 * u1 + s2 * u2);
  };
  double best = objective(a0, 0.0);
  for (int iter = 0; iter < 60 && step > 1e-9; ++iter) {
    bool improved = false;
    const double trial[3][2] = {{step, 0}, {0, step}, {0, 0}};
    for (int dim = 0; dim < 3; ++dim) {
      for (double sgn : {1.0, -1.0}) {
        double nt1 = t1, nt2 = t2, nsh = shift;
        if (dim == 0) nt1 += sgn * trial[0][0];
        if (dim == 1) nt2 += sgn * trial[1][1];
        if (dim == 2) nsh += sgn * step;
        const double val = objective(make_axis(nt1, nt2), nsh);
        if (val < best - 1e-15) {
          best = val;
          t1 = nt1;
          t2 = nt2;
          shift = nsh;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }

  MatchReport rep;
  rep.axis = make_axis(t1, t2);
  rep.vertical_shift = shift;
  double sup = 0.0, acc = 0.0;
  for (const auto& v : verts) {
    const double d = base_distance(eps, v.head<3>(), rep.axis);
    const double e = profile.distance(d, v[3] - shift);
    sup = std::max(sup, e);
    acc += e * e;
  }
  rep.hausdorff = sup;  // sup over mesh vertices of distance to the surface
  rep.axis_residual = std::sqrt(acc / double(verts.size()));
  rep.fitted_param = profile.param;
  return rep;
}

MatchReport match_sister_fit(int eps, double H, RotFamily family,
                             const std::vector<Vec4>& verts) {
  if (family != RotFamily::Unduloid && family != RotFamily::Nodoid)
    return match_sister(profile_solve(eps, H, family), verts, eps);
  // golden-section over the neck radius
  const double rc = cylinder_radius(eps, H);
  double lo = 0.05 * rc, hi = 0.95 * rc;
  auto eval = [&](double neck) {
    return match_sister(profile_solve(eps, H, family, neck), verts, eps);
  };
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  MatchReport r1 = eval(x1), r2 = eval(x2);
  for (int it = 0; it < 24; ++it) {
    if (r1.hausdorff < r2.hausdorff) {
      hi = x2;
      x2 = x1;
      r2 = r1;
      x1 = hi - gr * (hi - lo);
      r1 = eval(x1);
    } else {
      lo = x1;
      x1 = x2;
      r1 = r2;
      x2 = lo + gr * (hi - lo);
      r2 = eval(x2);
    }
  }
  MatchReport bestrep = (r1.hausdorff < r2.hausdorff) ? r1 : r2;
  bestrep.fitted_param = (r1.hausdorff < r2.hausdorff) ? x1 : x2;
  return bestrep;
}

std::string to_string(RotFamily f) {
  switch (f) {
    case RotFamily::Sphere: return "Sphere";
    case RotFamily::VerticalCylinder: return "VerticalCylinder";
    case RotFamily::HorizontalCylinderOrTorus: return "HorizontalCylinderOrTorus";
    case RotFamily::Unduloid: return "Unduloid";
    case RotFamily::Nodoid: return "Nodoid";
  }
  return "?";
}

}  // namespace cpc

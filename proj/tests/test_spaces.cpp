#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cpc/polygons.hpp"
#include "cpc/spaces.hpp"

using namespace cpc;

namespace {

std::mt19937 rng(20240517u);

Vec4 random_unit4() {
  std::normal_distribution<double> g;
  Vec4 p(g(rng), g(rng), g(rng), g(rng));
  return p / p.norm();
}

Vec4 random_tangent(const SpaceSpec& s, const Vec4& p) {
  std::normal_distribution<double> g;
  Vec4 v(g(rng), g(rng), g(rng), g(rng));
  if (s.kind == SpaceKind::Heisenberg) v[3] = 0.0;
  return project_tangent_linear(s, p, v);
}

Vec4 random_point(const SpaceSpec& s) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  switch (s.kind) {
    case SpaceKind::BergerSphere:
      return random_unit4();
    case SpaceKind::Heisenberg:
      return Vec4(2.0 * u(rng), 2.0 * u(rng), 2.0 * u(rng), 0.0);
    case SpaceKind::Product: {
      if (s.epsilon > 0) {
        Vec3 b(g(rng), g(rng), g(rng));
        b.normalize();
        return Vec4(b[0], b[1], b[2], u(rng));
      }
      const double x = u(rng), y = u(rng);
      const double z = std::sqrt(1.0 + x * x + y * y);
      return Vec4(x, y, z, u(rng));
    }
  }
  return Vec4::Zero();
}

}  // namespace

TEST_CASE("space spec invariants") {
  CHECK_THROWS_AS(SpaceSpec::berger(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SpaceSpec::berger(2.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(SpaceSpec::product(2), std::invalid_argument);

  const SpaceSpec b = SpaceSpec::berger_for(1.0, 1);
  CHECK(b.kappa == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(b.tau == doctest::Approx(1.0));
  CHECK(b.is_construction_pair_for(1.0, 1));
  CHECK_FALSE(b.is_construction_pair_for(1.0, -1));

  const SpaceSpec h = SpaceSpec::heisenberg();
  CHECK(h.kappa == 0.0);
  CHECK(h.tau == 0.5);

  const SpaceSpec p = SpaceSpec::product(-1);
  CHECK(p.tau == 0.0);
  CHECK(p.kappa == -1.0);
}

TEST_CASE("metric: round case kappa = 4 tau^2 is a multiple of the euclidean metric") {
  const SpaceSpec s = SpaceSpec::berger(4.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const Vec4 p = random_unit4();
    const Vec4 u = project_tangent_linear(s, p, random_tangent(s, p));
    const Vec4 v = project_tangent_linear(s, p, random_tangent(s, p));
    const double lhs = metric_eval_raw(s, p, u, v);
    CHECK(lhs == doctest::Approx((4.0 / s.kappa) * u.dot(v)).epsilon(1e-12));
  }
}

TEST_CASE("metric: heisenberg at the origin is the identity") {
  const SpaceSpec s = SpaceSpec::heisenberg();
  const Mat4 G = metric_matrix(s, Vec4::Zero());
  CHECK((G.topLeftCorner<3, 3>() - Mat3::Identity()).norm() == doctest::Approx(0.0));
}

TEST_CASE("metric: g(V,V) = 16/25 on the kappa=5, tau=1 Berger sphere at (1,0)") {
  const SpaceSpec s = SpaceSpec::berger(5.0, 1.0);
  const AmbientPoint p(1.0, 0.0, 0.0, 0.0);
  const Vec4 V = complex_i(p.x);
  const double g = metric_eval(s, {p, V}, {p, V});
  CHECK(g == doctest::Approx(16.0 / 25.0).epsilon(1e-14));
}

TEST_CASE("metric: error paths") {
  const SpaceSpec s = SpaceSpec::berger(5.0, 1.0);
  const AmbientPoint p(1.0, 0.0, 0.0, 0.0);
  const AmbientPoint q(0.0, 0.0, 1.0, 0.0);
  const Vec4 t(0.0, 1.0, 0.0, 0.0);
  CHECK_THROWS_AS(metric_eval(s, {p, t}, {q, t}), std::invalid_argument);
  CHECK_THROWS_AS(metric_eval(s, {p, Vec4(1, 1, 0, 0)}, {p, Vec4(1, 1, 0, 0)}),
                  std::invalid_argument);
}

TEST_CASE("metric positive definite on random tangent vectors") {
  for (const SpaceSpec& s : {SpaceSpec::berger(5.0, 1.0), SpaceSpec::heisenberg(),
                             SpaceSpec::product(1), SpaceSpec::product(-1)}) {
    for (int k = 0; k < 1000; ++k) {
      const Vec4 p = random_point(s);
      Vec4 v = random_tangent(s, p);
      if (v.norm() < 1e-8) continue;
      CHECK(metric_eval_raw(s, p, v, v) > 0.0);
    }
  }
}

TEST_CASE("vertical field is unit and matches the closed forms") {
  for (const SpaceSpec& s :
       {SpaceSpec::berger(5.0, 1.0), SpaceSpec::berger(3.0, 0.5), SpaceSpec::berger(2.0, 0.5),
        SpaceSpec::heisenberg(), SpaceSpec::product(1), SpaceSpec::product(-1)}) {
    for (int k = 0; k < 20; ++k) {
      const AmbientPoint p(random_point(s));
      const TangentVector xi = vertical_field(s, p);
      CHECK(metric_eval(s, xi, xi) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  // Heisenberg at (1,2,0): xi = d_z
  {
    const SpaceSpec s = SpaceSpec::heisenberg();
    const TangentVector xi = vertical_field(s, AmbientPoint(1, 2, 0, 0));
    CHECK((xi.v - Vec4(0, 0, 1, 0)).norm() == doctest::Approx(0.0));
  }
  // Berger kappa=5, tau=1 at (1,0): xi = (5/4) (i, 0)
  {
    const SpaceSpec s = SpaceSpec::berger(5.0, 1.0);
    const TangentVector xi = vertical_field(s, AmbientPoint(1, 0, 0, 0));
    CHECK((xi.v - Vec4(0, 1.25, 0, 0)).norm() == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("hopf projection") {
  const SpaceSpec s = SpaceSpec::berger(5.0, 1.0);
  const double rk = 1.0 / std::sqrt(s.kappa);

  const AmbientPoint a = hopf_project(s, AmbientPoint(1, 0, 0, 0));
  CHECK((a.x - Vec4(0, 0, rk, 0)).norm() == doctest::Approx(0.0).epsilon(1e-14));

  const double r = 1.0 / std::sqrt(2.0);
  const AmbientPoint b = hopf_project(s, AmbientPoint(r, 0, r, 0));
  CHECK((b.x - Vec4(rk, 0, 0, 0)).norm() == doctest::Approx(0.0).epsilon(1e-14));

  CHECK_THROWS_AS(hopf_project(SpaceSpec::heisenberg(), AmbientPoint(0, 0, 0, 0)),
                  std::invalid_argument);

  // image radius and fiber invariance over a theta grid
  for (int k = 0; k < 32; ++k) {
    const Vec4 p = random_unit4();
    const Vec4 q0 = hopf_project(s, AmbientPoint(p)).x;
    CHECK(q0.head<3>().norm() == doctest::Approx(rk).epsilon(1e-12));
    for (int j = 1; j <= 8; ++j) {
      const AmbientPoint pf = vertical_flow(s, AmbientPoint(p), 0.35 * j);
      const Vec4 qj = hopf_project(s, pf).x;
      CHECK((qj - q0).norm() < 1e-12);
    }
  }
}

TEST_CASE("hopf map is a riemannian submersion on horizontal vectors") {
  for (const SpaceSpec& s : {SpaceSpec::berger(5.0, 1.0), SpaceSpec::berger(2.0, 0.5)}) {
    for (int k = 0; k < 100; ++k) {
      const Vec4 p = random_unit4();
      Vec4 v = random_tangent(s, p);
      const Vec4 V = complex_i(p);
      v -= v.dot(V) * V;  // horizontal: euclid-orthogonal to V
      if (v.norm() < 1e-8) continue;
      const double up = metric_eval_raw(s, p, v, v);
      const Vec4 dv = hopf_differential(s, AmbientPoint(p), v);
      CHECK(std::abs(up - dv.squaredNorm()) < 1e-8 * std::max(1.0, up));
    }
  }
}

TEST_CASE("fiber length law: vertical geodesics close at 8 tau pi / kappa") {
  for (auto [kappa, tau] : {std::pair{5.0, 1.0}, {3.0, 0.5}, {2.0, 0.5}}) {
    const SpaceSpec s = SpaceSpec::berger(kappa, tau);
    const AmbientPoint p(random_unit4());
    const TangentVector xi = vertical_field(s, p);
    const double L = 8.0 * tau * M_PI / kappa;
    const GeodesicPath path = geodesic_integrate(s, p, xi, L, 2048);
    CHECK((path.points.back().x - p.x).norm() / L < 1e-6);
    // and it does not close earlier
    CHECK((path.points[1024].x - p.x).norm() > 1e-2);
  }
}

TEST_CASE("horizontal geodesics close at 4 pi / sqrt(kappa)") {
  for (auto [kappa, tau] : {std::pair{5.0, 1.0}, {3.0, 0.5}, {2.0, 0.5}}) {
    const SpaceSpec s = SpaceSpec::berger(kappa, tau);
    const Vec4 p = random_unit4();
    Vec4 v = random_tangent(s, p);
    const Vec4 V = complex_i(p);
    v -= v.dot(V) * V;
    v /= metric_norm(s, p, v);
    const double L = 4.0 * M_PI / std::sqrt(kappa);
    const GeodesicPath path = geodesic_integrate(s, AmbientPoint(p), {AmbientPoint(p), v}, L, 2048);
    CHECK((path.points.back().x - p).norm() / L < 1e-6);
  }
}

TEST_CASE("heisenberg: horizontal line through the origin is a geodesic") {
  const SpaceSpec s = SpaceSpec::heisenberg();
  const AmbientPoint o(0, 0, 0, 0);
  const GeodesicPath path =
      geodesic_integrate(s, o, {o, Vec4(1, 0, 0, 0)}, 2.0, 128);
  for (size_t i = 0; i < path.points.size(); ++i) {
    const Vec4& q = path.points[i].x;
    CHECK(std::abs(q[0] - 2.0 * double(i) / 128.0) < 1e-9);
    CHECK(std::abs(q[1]) < 1e-10);
    CHECK(std::abs(q[2]) < 1e-10);
  }
}

TEST_CASE("geodesic integrate error paths and residual") {
  const SpaceSpec s = SpaceSpec::berger(5.0, 1.0);
  const AmbientPoint p(1, 0, 0, 0);
  CHECK_THROWS_AS(geodesic_integrate(s, p, {p, Vec4::Zero()}, 1.0, 64), std::invalid_argument);
  CHECK_THROWS_AS(geodesic_integrate(s, p, vertical_field(s, p), 1.0, 8), std::invalid_argument);

  const GeodesicPath path = geodesic_integrate(s, p, vertical_field(s, p), 2.0, 256);
  CHECK(geodesic_residual(s, path.points, path.step()) < 1e-6);
}

TEST_CASE("numeric connection reproduces the heisenberg frame relations") {
  const SpaceSpec s = SpaceSpec::heisenberg();
  const double tau = 0.5;
  for (int k = 0; k < 10; ++k) {
    const Vec4 p = random_point(s);
    const double x = p[0], y = p[1];
    const Vec4 E1(1, 0, -0.5 * y, 0), E2(0, 1, 0.5 * x, 0), E3(0, 0, 1, 0);
    const Christoffel ch = christoffel(s, p);
    // coefficient jacobians: dE1 = -dy/2 in z, dE2 = +dx/2 in z
    auto dcoef = [&](const Vec4& field_dir, const Vec4& along) {
      if (field_dir == Vec4(1, 0, 0, 0)) return Vec4(0, 0, -0.5 * along[1], 0);
      if (field_dir == Vec4(0, 1, 0, 0)) return Vec4(0, 0, 0.5 * along[0], 0);
      return Vec4(0, 0, 0, 0);
    };
    auto nabla = [&](const Vec4& X, const Vec4& Yfield, const Vec4& Yval) {
      return Vec4(dcoef(Yfield, X) + ch.apply(X, Yval));
    };
    CHECK((nabla(E1, Vec4(0, 1, 0, 0), E2) - tau * E3).norm() < 1e-6);
    CHECK((nabla(E2, Vec4(1, 0, 0, 0), E1) + tau * E3).norm() < 1e-6);
    CHECK((nabla(E1, Vec4(0, 0, 1, 0), E3) + tau * E2).norm() < 1e-6);
    CHECK((nabla(E2, Vec4(0, 0, 1, 0), E3) - tau * E1).norm() < 1e-6);
    CHECK((nabla(E1, Vec4(1, 0, 0, 0), E1)).norm() < 1e-6);
    CHECK((nabla(E2, Vec4(0, 1, 0, 0), E2)).norm() < 1e-6);
  }
}

TEST_CASE("killing property of the vertical field") {
  for (const SpaceSpec& s : {SpaceSpec::berger(5.0, 1.0), SpaceSpec::heisenberg()}) {
    for (int k = 0; k < 50; ++k) {
      const AmbientPoint p(random_point(s));
      const Vec4 u = random_tangent(s, p.x);
      const Vec4 v = random_tangent(s, p.x);
      const double before = metric_eval_raw(s, p.x, u, v);
      const double t = 0.3;
      const AmbientPoint q = vertical_flow(s, p, t);
      const Vec4 uq = vertical_flow_push(s, p, t, u);
      const Vec4 vq = vertical_flow_push(s, p, t, v);
      const double after = metric_eval_raw(s, q.x, uq, vq);
      CHECK(std::abs(after - before) < 1e-6 * std::max(1.0, std::abs(before)));
    }
  }
}

TEST_CASE("berger geodesic reflections") {
  const SpaceSpec s = SpaceSpec::berger(5.0, 1.0);

  // vertical axis: the fiber through (1,0)
  const AmbientPoint p0(1, 0, 0, 0);
  const GeodesicPath fiber = geodesic_integrate(s, p0, vertical_field(s, p0), 1.2, 128);
  GeodesicAxis vax{fiber.points, EdgeKind::Vertical, fiber.step()};

  SUBCASE("fixes axis points") {
    for (int i = 0; i < int(fiber.points.size()); i += 16)
      CHECK((geodesic_reflection(s, vax, fiber.points[i]).x - fiber.points[i].x).norm() < 1e-10);
  }
  SUBCASE("involution and metric preservation") {
    for (int k = 0; k < 100; ++k) {
      const AmbientPoint p(random_unit4());
      const AmbientPoint r = geodesic_reflection(s, vax, p);
      CHECK((geodesic_reflection(s, vax, r).x - p.x).norm() < 1e-10);
      const Vec4 u = random_tangent(s, p.x);
      const Vec4 v = random_tangent(s, p.x);
      const Vec4 ru = geodesic_reflection_push(s, vax, p, u);
      const Vec4 rv = geodesic_reflection_push(s, vax, p, v);
      const double g0 = metric_eval_raw(s, p.x, u, v);
      const double g1 = metric_eval_raw(s, r.x, ru, rv);
      CHECK(std::abs(g1 - g0) < 1e-8 * std::max(1.0, std::abs(g0)));
    }
  }
  SUBCASE("distances to the axis are preserved") {
    const GeodesicPath dense = geodesic_integrate(s, p0, vertical_field(s, p0),
                                                  8.0 * s.tau * M_PI / s.kappa, 4096);
    auto dist_to_axis = [&](const Vec4& q) {
      double best = 1e300;
      for (const auto& a : dense.points) {
        const Vec4 d = q - a.x;
        best = std::min(best, metric_eval_raw(s, a.x, d, d));
      }
      return std::sqrt(best);
    };
    for (int k = 0; k < 20; ++k) {
      const AmbientPoint p(random_unit4());
      const AmbientPoint r = geodesic_reflection(s, vax, p);
      CHECK(std::abs(dist_to_axis(p.x) - dist_to_axis(r.x)) < 1e-8);
    }
  }

  // horizontal axis: the real great circle (cos t, sin t)
  SUBCASE("horizontal axis reflection") {
    const Vec4 q0(1, 0, 0, 0);
    Vec4 dir(0, 0, 1, 0);
    dir /= metric_norm(s, q0, dir);
    const GeodesicPath circ =
        geodesic_integrate(s, AmbientPoint(q0), {AmbientPoint(q0), dir}, 1.5, 128);
    GeodesicAxis hax{circ.points, EdgeKind::Horizontal, circ.step()};
    for (int i = 0; i < int(circ.points.size()); i += 16)
      CHECK((geodesic_reflection(s, hax, circ.points[i]).x - circ.points[i].x).norm() < 1e-9);
    for (int k = 0; k < 50; ++k) {
      const AmbientPoint p(random_unit4());
      const AmbientPoint r = geodesic_reflection(s, hax, p);
      CHECK((geodesic_reflection(s, hax, r).x - p.x).norm() < 1e-10);
      CHECK(std::abs(constraint_value(s, r.x)) < 1e-12);
    }
  }

  SUBCASE("axis validation rejects a non-geodesic arc") {
    std::vector<AmbientPoint> bad;
    const int n = 64;
    for (int i = 0; i <= n; ++i) {
      const double t = 0.8 * double(i) / n;
      // a latitude-type circle, not a great circle
      Vec4 q(0.8 * std::cos(t), 0.8 * std::sin(t), 0.6, 0.0);
      bad.push_back(AmbientPoint(q));
    }
    GeodesicAxis ax{bad, EdgeKind::Horizontal, 0.8 * 0.8 / n};
    CHECK_THROWS_AS(geodesic_reflection(s, ax, AmbientPoint(1, 0, 0, 0)),
                    std::invalid_argument);
  }
}

TEST_CASE("heisenberg geodesic reflections") {
  const SpaceSpec s = SpaceSpec::heisenberg();
  const AmbientPoint p0(0.3, -0.2, 0.5, 0);

  const GeodesicPath vert = geodesic_integrate(s, p0, vertical_field(s, p0), 1.0, 64);
  GeodesicAxis vax{vert.points, EdgeKind::Vertical, vert.step()};

  Vec4 hdir(1, 0.5, 0, 0);
  hdir[2] = -0.5 * (p0.x[1] * hdir[0] - p0.x[0] * hdir[1]);  // make it horizontal
  hdir /= metric_norm(s, p0.x, hdir);
  const GeodesicPath horz = geodesic_integrate(s, p0, {p0, hdir}, 1.0, 64);
  GeodesicAxis hax{horz.points, EdgeKind::Horizontal, horz.step()};

  for (const auto& ax : {vax, hax}) {
    for (int i = 0; i < int(ax.samples.size()); i += 8)
      CHECK((geodesic_reflection(s, ax, ax.samples[i]).x - ax.samples[i].x).norm() < 1e-8);
    for (int k = 0; k < 50; ++k) {
      const AmbientPoint p(random_point(s));
      const AmbientPoint r = geodesic_reflection(s, ax, p);
      CHECK((geodesic_reflection(s, ax, r).x - p.x).norm() < 1e-9);
      const Vec4 u = random_tangent(s, p.x);
      const Vec4 v = random_tangent(s, p.x);
      const Vec4 ru = geodesic_reflection_push(s, ax, p, u);
      const Vec4 rv = geodesic_reflection_push(s, ax, p, v);
      const double g0 = metric_eval_raw(s, p.x, u, v);
      const double g1 = metric_eval_raw(s, r.x, ru, rv);
      CHECK(std::abs(g1 - g0) < 1e-7 * std::max(1.0, std::abs(g0)));
    }
  }
}

TEST_CASE("product reflections") {
  SUBCASE("slice reflection negates heights") {
    const SpaceSpec s = SpaceSpec::product(1);
    ProductPlane slice;
    slice.is_slice = true;
    slice.height = 0.0;
    const AmbientPoint p(0, 0, 1, 0.7);
    const AmbientPoint r = product_reflection(s, slice, p);
    CHECK(r.x[3] == doctest::Approx(-0.7));
    CHECK((r.x.head<3>() - p.x.head<3>()).norm() == 0.0);
  }
  SUBCASE("vertical plane fixes its points") {
    const SpaceSpec s = SpaceSpec::product(-1);
    ProductPlane plane;
    plane.is_slice = false;
    plane.normal = Vec3(0, 1, 0);  // the plane {y = 0}
    const AmbientPoint p(std::sinh(0.4), 0.0, std::cosh(0.4), 0.3);
    CHECK((product_reflection(s, plane, p).x - p.x).norm() < 1e-14);
  }
  SUBCASE("hyperbolic vertical-plane reflection is an isometry on random pairs") {
    const SpaceSpec s = SpaceSpec::product(-1);
    ProductPlane plane;
    plane.is_slice = false;
    plane.normal = Vec3(0, 1, 0);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto dist2 = [&](const Vec4& a, const Vec4& b) {
      // product distance^2 = d_H2^2 + dt^2
      const double ch = -base_form(-1, a.head<3>(), b.head<3>());
      const double dh = std::acosh(std::max(1.0, ch));
      return dh * dh + (a[3] - b[3]) * (a[3] - b[3]);
    };
    for (int k = 0; k < 100; ++k) {
      Vec4 a(u(rng), u(rng), 0, u(rng)), b(u(rng), u(rng), 0, u(rng));
      a[2] = std::sqrt(1 + a[0] * a[0] + a[1] * a[1]);
      b[2] = std::sqrt(1 + b[0] * b[0] + b[1] * b[1]);
      const Vec4 ra = product_reflection(s, plane, AmbientPoint(a)).x;
      const Vec4 rb = product_reflection(s, plane, AmbientPoint(b)).x;
      CHECK(std::abs(dist2(ra, rb) - dist2(a, b)) < 1e-10 * std::max(1.0, dist2(a, b)));
    }
  }
  SUBCASE("malformed plane spec") {
    const SpaceSpec s = SpaceSpec::product(-1);
    ProductPlane plane;
    plane.is_slice = false;
    plane.normal = Vec3(0, 0, 1);  // timelike: not a vertical plane normal
    CHECK_THROWS_AS(product_reflection(s, plane, AmbientPoint(0, 0, 1, 0)),
                    std::invalid_argument);
  }
}

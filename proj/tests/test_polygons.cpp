#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cpc/polygons.hpp"

using namespace cpc;

namespace {

Vec4 helicoid(double c, double x, double y) {
  return Vec4(std::cos(x) * std::cos(c * y), std::cos(x) * std::sin(c * y),
              std::sin(x) * std::cos(y), std::sin(x) * std::sin(y));
}

}  // namespace

TEST_CASE("gamma_lambda: endpoints, corners and validation") {
  const SpaceSpec s = SpaceSpec::berger_for(1.0, 1);  // kappa=5, tau=1

  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(build_gamma_lambda(s, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(build_gamma_lambda(s, 3.2), std::invalid_argument);
    CHECK_THROWS_AS(build_gamma_lambda(SpaceSpec::heisenberg(), 0.3), std::invalid_argument);
  }

  SUBCASE("lambda = 0: h1 covers [0, pi/4] from (1,0); v matches the helicoid boundary") {
    const GeodesicPolygon p = build_gamma_lambda(s, 0.0);
    const GeodesicEdge* h1 = p.find("h1");
    REQUIRE(h1 != nullptr);
    CHECK(h1->t0 == doctest::Approx(0.0));
    CHECK(h1->t1 == doctest::Approx(M_PI_4));
    CHECK((h1->at(0.0) - Vec4(1, 0, 0, 0)).norm() < 1e-15);
    const GeodesicEdge* v = p.find("v");
    REQUIRE(v != nullptr);
    CHECK_FALSE(v->degenerate);
    for (double t : {0.1, 0.7, 1.3}) {
      // v(t) = (e^{it}, 0) = Phi_{-1}(0, -t)
      CHECK((v->at(t) - helicoid(-1.0, 0.0, -t)).norm() < 1e-14);
    }
  }

  SUBCASE("endpoint match h0(0) = (1,1)/sqrt(2) = h1(pi/4)") {
    const GeodesicPolygon p = build_gamma_lambda(s, 0.9);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK((p.find("h0")->at(0.0) - Vec4(r, 0, r, 0)).norm() < 1e-15);
    CHECK((p.find("h1")->at(M_PI_4) - Vec4(r, 0, r, 0)).norm() < 1e-15);
  }

  SUBCASE("lambda = pi/3: validator measures all corner angles pi/2") {
    const GeodesicPolygon p = build_gamma_lambda(s, M_PI / 3.0);
    const PolygonReport rep = validate_polygon(s, p);
    CHECK(rep.pass);
    for (double a : rep.measured_corner_angles) CHECK(std::abs(a - M_PI_2) < 1e-8);
    CHECK(rep.max_geodesic_residual < 1e-6);
    CHECK(rep.max_kind_residual < 1e-8);
  }

  SUBCASE("closure over a 50-point lambda grid") {
    for (int i = 0; i <= 49; ++i) {
      const double lam = M_PI_2 * double(i) / 49.0;
      const GeodesicPolygon p = build_gamma_lambda(s, lam);
      double gap = 0.0;
      for (int e = 0; e < 4; ++e) {
        const int f = (e + 1) % 4;
        gap = std::max(gap, (p.traversal_end(e) - p.traversal_start(f)).norm());
      }
      CHECK(gap < 1e-12);
    }
  }

  SUBCASE("hopf projections lie on two orthogonal great circles") {
    const GeodesicPolygon p = build_gamma_lambda(s, 0.7);
    for (const char* lbl : {"h1", "h2"}) {
      const GeodesicEdge* e = p.find(lbl);
      for (int i = 0; i <= 16; ++i) {
        const double t = e->t0 + (e->t1 - e->t0) * i / 16.0;
        const Vec4 q = hopf_project(s, AmbientPoint(e->at(t))).x;
        CHECK(std::abs(q[1]) < 1e-8);  // plane {Y = 0}
      }
    }
    const GeodesicEdge* h0 = p.find("h0");
    for (int i = 0; i <= 16; ++i) {
      const double t = h0->t0 + (h0->t1 - h0->t0) * i / 16.0;
      const Vec4 q = hopf_project(s, AmbientPoint(h0->at(t))).x;
      CHECK(std::abs(q[2]) < 1e-8);  // plane {Z = 0}
    }
  }

  SUBCASE("lambda = pi/2 collapses h1 to a point") {
    const GeodesicPolygon p = build_gamma_lambda(s, M_PI_2);
    CHECK(p.find("h1")->degenerate);
    CHECK_FALSE(p.find("h2")->degenerate);
    const PolygonReport rep = validate_polygon(s, p);
    CHECK(rep.max_geodesic_residual < 1e-6);
    CHECK(rep.max_closure_gap < 1e-12);
  }
}

TEST_CASE("lambda_c: printed parametrizations") {
  const SpaceSpec s = SpaceSpec::berger_for(1.0, 1);

  SUBCASE("c = 1: vertical edges have parameter length pi/4") {
    const GeodesicPolygon p = build_lambda_c(s, 1.0);
    CHECK(p.find("v1")->t1 == doctest::Approx(M_PI_4));
    CHECK(p.find("v2")->t1 == doctest::Approx(M_PI_4));
  }

  SUBCASE("c = 0: v1 is a degenerate vertical edge and the validator accepts it") {
    const GeodesicPolygon p = build_lambda_c(s, 0.0);
    CHECK(p.find("v1")->degenerate);
    const PolygonReport rep = validate_polygon(s, p);
    CHECK(rep.max_geodesic_residual < 1e-6);
    CHECK(rep.max_closure_gap < 1e-12);
  }

  SUBCASE("c = 1/2: h2 starts at v1's far endpoint") {
    const GeodesicPolygon p = build_lambda_c(s, 0.5);
    const double T = M_PI / 3.0;
    CHECK((p.find("h2")->at(0.0) - p.find("v1")->at(T)).norm() < 1e-12);
    // h2(0) = (e^{i pi/6}, 0)
    CHECK((p.find("h2")->at(0.0) - Vec4(std::cos(M_PI / 6), std::sin(M_PI / 6), 0, 0)).norm() <
          1e-14);
  }

  SUBCASE("all edges lie on the helicoid Phi_c") {
    for (double c : {-0.5, 0.25, 0.5, 1.0}) {
      const GeodesicPolygon p = build_lambda_c(s, c);
      const double T = M_PI / (2.0 * (1.0 + c));
      for (int i = 0; i <= 12; ++i) {
        const double a = double(i) / 12.0;
        CHECK((p.find("h1")->at(a * M_PI_2) - helicoid(c, a * M_PI_2, 0.0)).norm() < 1e-12);
        CHECK((p.find("h2")->at(a * M_PI_2) - helicoid(c, a * M_PI_2, T)).norm() < 1e-12);
        CHECK((p.find("v1")->at(a * T) - helicoid(c, 0.0, a * T)).norm() < 1e-12);
        CHECK((p.find("v2")->at(a * T) - helicoid(c, M_PI_2, a * T)).norm() < 1e-12);
      }
      const PolygonReport rep = validate_polygon(s, p);
      CHECK(rep.max_geodesic_residual < 1e-6);
      CHECK(rep.max_closure_gap < 1e-12);
      CHECK(rep.max_kind_residual < 1e-8);
    }
  }

  SUBCASE("c = -1 and out-of-range c are rejected") {
    CHECK_THROWS_WITH_AS(build_lambda_c(s, -1.0),
                         doctest::Contains("use build_gamma_lambda"), std::invalid_argument);
    CHECK_THROWS_AS(build_lambda_c(s, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(build_lambda_c(s, -1.2), std::invalid_argument);
  }
}

TEST_CASE("nil polygon") {
  SUBCASE("projections of h1 and h0") {
    const double ell = 1.7, alpha = 0.5;
    const GeodesicPolygon p = build_nil_polygon(ell, alpha);
    const double ct = 1.0 / std::tan(alpha);
    for (int i = 0; i <= 10; ++i) {
      const double t = double(i) / 10.0;
      const Vec4 a = p.find("h1")->at(t);
      CHECK(std::abs(a[0] - t * ell) < 1e-14);
      CHECK(std::abs(a[1]) < 1e-14);
      const Vec4 b = p.find("h0")->at(t);
      CHECK(std::abs(b[0] - ell) < 1e-14);
      CHECK(std::abs(b[1] - t * ell * ct) < 1e-13);
    }
  }

  SUBCASE("projected triangle angles: pi/2 - alpha at the origin (v vertex), alpha at h0^h2") {
    const double ell = 1.0, alpha = M_PI / 5.0;
    const GeodesicPolygon p = build_nil_polygon(ell, alpha);
    const Vec2 d1 = p.find("h1")->at(1.0).head<2>().normalized();
    const Vec2 d2 = p.find("h2")->at(1.0).head<2>().normalized();
    const double origin_angle = std::acos(std::clamp(double(d1.dot(d2)), -1.0, 1.0));
    CHECK(origin_angle == doctest::Approx(M_PI_2 - alpha).epsilon(1e-12));
    // polygon corner between h0 and h2 measures alpha
    const PolygonReport rep = validate_polygon(p.space, p);
    CHECK(rep.pass);
    CHECK(rep.measured_corner_angles[1] == doctest::Approx(alpha).epsilon(1e-7));
  }

  SUBCASE("ell=2, alpha=pi/4: v spans (0,0,0)-(0,0,2) and edges are geodesics") {
    const GeodesicPolygon p = build_nil_polygon(2.0, M_PI_4);
    CHECK((p.find("v")->at(0.0) - Vec4(0, 0, 0, 0)).norm() == 0.0);
    CHECK((p.find("v")->at(1.0) - Vec4(0, 0, 2, 0)).norm() < 1e-14);
    const PolygonReport rep = validate_polygon(p.space, p);
    CHECK(rep.max_geodesic_residual < 1e-6);
  }

  SUBCASE("corner angles are {pi/2, alpha, pi/2, pi/2}") {
    const GeodesicPolygon p = build_nil_polygon(1.0, M_PI / 5.0);
    const PolygonReport rep = validate_polygon(p.space, p);
    REQUIRE(rep.measured_corner_angles.size() == 4);
    CHECK(rep.measured_corner_angles[0] == doctest::Approx(M_PI_2).epsilon(1e-8));
    CHECK(rep.measured_corner_angles[1] == doctest::Approx(M_PI / 5.0).epsilon(1e-7));
    CHECK(rep.measured_corner_angles[2] == doctest::Approx(M_PI_2).epsilon(1e-8));
    CHECK(rep.measured_corner_angles[3] == doctest::Approx(M_PI_2).epsilon(1e-8));
  }

  SUBCASE("boundary projects into the closed triangle") {
    const double ell = 1.3, alpha = 0.7;
    const GeodesicPolygon p = build_nil_polygon(ell, alpha);
    const double ct = 1.0 / std::tan(alpha);
    for (const auto& e : p.edges) {
      for (int i = 0; i <= 20; ++i) {
        const double t = e.t0 + (e.t1 - e.t0) * i / 20.0;
        const Vec4 q = e.at(t);
        CHECK(q[0] >= -1e-12);
        CHECK(q[0] <= ell + 1e-12);
        CHECK(q[1] >= -1e-12);
        CHECK(q[1] <= q[0] * ct + 1e-10);
      }
    }
  }

  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(build_nil_polygon(-1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(build_nil_polygon(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_nil_polygon(1.0, M_PI_2), std::invalid_argument);
  }
}

TEST_CASE("validator flags a non-geodesic edge") {
  const SpaceSpec s = SpaceSpec::berger_for(1.0, 1);
  GeodesicPolygon p = build_gamma_lambda(s, 0.8);
  // bend h0 off the geodesic while keeping its endpoints
  for (auto& e : p.edges) {
    if (e.label != "h0") continue;
    auto orig = e.curve;
    e.curve = [orig](double t) {
      Vec4 q = orig(t);
      const Vec4 n = Vec4(1, 0, -1, 0) / std::sqrt(2.0);
      q += 0.15 * std::sin(2.0 * t) * n;
      return Vec4(q / q.norm());
    };
  }
  const PolygonReport rep = validate_polygon(s, p);
  CHECK(rep.max_geodesic_residual > 1e-3);
  CHECK_FALSE(rep.pass);
}

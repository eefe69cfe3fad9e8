#include "cpc/polygons.hpp"

#include <cmath>

namespace cpc {

namespace {

Vec4 c2(double re1, double im1, double re2, double im2) { return Vec4(re1, im1, re2, im2); }

double edge_image_length(const SpaceSpec& s, const GeodesicEdge& e) {
  if (e.t1 <= e.t0) return 0.0;
  return curve_length(s, e.curve, e.t0, e.t1, 256);
}

void finalize_edge(const SpaceSpec& s, GeodesicEdge& e) {
  e.degenerate = (e.t1 <= e.t0 + 1e-15) || edge_image_length(s, e) < 1e-12;
}

// One-sided 3rd-order tangent of a sampled curve at its first sample.
Vec4 start_tangent(const SampledCurve& c) {
  const auto& p = c.pts;
  if (c.h == 0.0 || p.size() < 4) return Vec4::Zero();
  return (-11.0 * p[0] + 18.0 * p[1] - 9.0 * p[2] + 2.0 * p[3]) / (6.0 * c.h);
}

}  // namespace

const GeodesicEdge* GeodesicPolygon::find(const std::string& label) const {
  for (const auto& e : edges)
    if (e.label == label) return &e;
  return nullptr;
}

Vec4 GeodesicPolygon::traversal_start(int i) const {
  return reversed[i] ? edges[i].end() : edges[i].start();
}

Vec4 GeodesicPolygon::traversal_end(int i) const {
  return reversed[i] ? edges[i].start() : edges[i].end();
}

Vec4 GeodesicPolygon::corner_point(int i) const { return traversal_end(i); }

GeodesicPolygon build_gamma_lambda(const SpaceSpec& space, double lambda) {
  if (space.kind != SpaceKind::BergerSphere)
    throw std::invalid_argument("build_gamma_lambda: space must be a Berger sphere");
  if (!(lambda >= 0.0 && lambda <= M_PI_2 + 1e-15))
    throw std::invalid_argument("build_gamma_lambda: lambda outside [0, pi/2]");
  lambda = std::min(lambda, M_PI_2);

  GeodesicPolygon poly;
  poly.space = space;
  poly.params["lambda"] = lambda;
  const double hl = 0.5 * lambda;

  GeodesicEdge h0;
  h0.curve = [](double t) {
    const double c = std::cos(t), s = std::sin(t), r = 1.0 / std::sqrt(2.0);
    return c2(r * c, r * s, r * c, -r * s);  // (e^{it}, e^{-it})/sqrt(2)
  };
  h0.t0 = 0.0;
  h0.t1 = M_PI_2;
  h0.kind = EdgeKind::Horizontal;
  h0.label = "h0";

  GeodesicEdge h1;
  h1.curve = [](double t) { return c2(std::cos(t), 0.0, std::sin(t), 0.0); };
  h1.t0 = hl;
  h1.t1 = M_PI_4;
  h1.kind = EdgeKind::Horizontal;
  h1.label = "h1";

  GeodesicEdge h2;
  h2.curve = [](double t) { return c2(0.0, std::cos(t), 0.0, std::sin(t)); };
  h2.t0 = -M_PI_4;
  h2.t1 = hl;
  h2.kind = EdgeKind::Horizontal;
  h2.label = "h2";

  GeodesicEdge v;
  v.curve = [hl](double t) {
    const double c = std::cos(t), s = std::sin(t);
    const double a = std::cos(hl), b = std::sin(hl);
    return c2(a * c, a * s, b * c, b * s);  // e^{it} (cos hl, sin hl)
  };
  v.t0 = 0.0;
  v.t1 = M_PI_2;
  v.kind = EdgeKind::Vertical;
  v.label = "v";

  for (auto* e : {&h0, &h1, &h2, &v}) finalize_edge(space, *e);

  // cycle: h1 (hl -> pi/4), h0, h2, v reversed
  poly.edges = {h1, h0, h2, v};
  poly.reversed = {false, false, false, true};
  const double nan = std::nan("");
  poly.corner_angles = {M_PI_2, M_PI_2, M_PI_2, M_PI_2};
  for (int i = 0; i < 4; ++i) {
    const int j = (i + 1) % 4;
    if (poly.edges[i].degenerate || poly.edges[j].degenerate) poly.corner_angles[i] = nan;
  }
  return poly;
}

GeodesicPolygon build_lambda_c(const SpaceSpec& space, double c) {
  if (space.kind != SpaceKind::BergerSphere)
    throw std::invalid_argument("build_lambda_c: space must be a Berger sphere");
  if (c == -1.0)
    throw std::invalid_argument(
        "build_lambda_c: c = -1 degenerates; use build_gamma_lambda for that family");
  if (!(c > -1.0 && c <= 1.0))
    throw std::invalid_argument("build_lambda_c: c outside (-1, 1]");

  GeodesicPolygon poly;
  poly.space = space;
  poly.params["c"] = c;
  const double T = M_PI / (2.0 * (1.0 + c));

  GeodesicEdge h1;
  h1.curve = [](double t) { return c2(std::cos(t), 0.0, std::sin(t), 0.0); };
  h1.t0 = 0.0;
  h1.t1 = M_PI_2;
  h1.kind = EdgeKind::Horizontal;
  h1.label = "h1";

  GeodesicEdge h2;
  h2.curve = [c, T](double t) {
    const double a = c * T, b = T;
    return c2(std::cos(t) * std::cos(a), std::cos(t) * std::sin(a),
              std::sin(t) * std::cos(b), std::sin(t) * std::sin(b));
  };
  h2.t0 = 0.0;
  h2.t1 = M_PI_2;
  h2.kind = EdgeKind::Horizontal;
  h2.label = "h2";

  GeodesicEdge v1;
  v1.curve = [c](double t) { return c2(std::cos(c * t), std::sin(c * t), 0.0, 0.0); };
  v1.t0 = 0.0;
  v1.t1 = T;
  v1.kind = EdgeKind::Vertical;
  v1.label = "v1";

  GeodesicEdge v2;
  v2.curve = [](double t) { return c2(0.0, 0.0, std::cos(t), std::sin(t)); };
  v2.t0 = 0.0;
  v2.t1 = T;
  v2.kind = EdgeKind::Vertical;
  v2.label = "v2";

  for (auto* e : {&h1, &h2, &v1, &v2}) finalize_edge(space, *e);

  // cycle: h1 (0 -> pi/2), v2, h2 reversed, v1 reversed
  poly.edges = {h1, v2, h2, v1};
  poly.reversed = {false, false, true, true};
  const double nan = std::nan("");
  poly.corner_angles = {M_PI_2, M_PI_2, M_PI_2, M_PI_2};
  for (int i = 0; i < 4; ++i) {
    const int j = (i + 1) % 4;
    if (poly.edges[i].degenerate || poly.edges[j].degenerate) poly.corner_angles[i] = nan;
  }
  return poly;
}

GeodesicPolygon build_nil_polygon(double ell, double alpha) {
  if (!(ell > 0.0)) throw std::invalid_argument("build_nil_polygon: ell must be positive");
  if (!(alpha > 0.0 && alpha < M_PI_2))
    throw std::invalid_argument("build_nil_polygon: alpha outside (0, pi/2)");

  GeodesicPolygon poly;
  poly.space = SpaceSpec::heisenberg();
  poly.params["ell"] = ell;
  poly.params["alpha"] = alpha;
  const double ct = 1.0 / std::tan(alpha);

  GeodesicEdge h0;
  h0.curve = [ell, ct](double t) {
    return Vec4(ell, t * ell * ct, 0.5 * t * ell * ell * ct, 0.0);
  };
  h0.t0 = 0.0;
  h0.t1 = 1.0;
  h0.kind = EdgeKind::Horizontal;
  h0.label = "h0";

  GeodesicEdge h1;
  h1.curve = [ell](double t) { return Vec4(t * ell, 0.0, 0.0, 0.0); };
  h1.t0 = 0.0;
  h1.t1 = 1.0;
  h1.kind = EdgeKind::Horizontal;
  h1.label = "h1";

  GeodesicEdge h2;
  h2.curve = [ell, ct](double t) {
    return Vec4(t * ell, t * ell * ct, 0.5 * ell * ell * ct, 0.0);
  };
  h2.t0 = 0.0;
  h2.t1 = 1.0;
  h2.kind = EdgeKind::Horizontal;
  h2.label = "h2";

  GeodesicEdge v;
  v.curve = [ell, ct](double t) { return Vec4(0.0, 0.0, 0.5 * t * ell * ell * ct, 0.0); };
  v.t0 = 0.0;
  v.t1 = 1.0;
  v.kind = EdgeKind::Vertical;
  v.label = "v";

  for (auto* e : {&h0, &h1, &h2, &v}) finalize_edge(poly.space, *e);

  // cycle: h1, h0, h2 reversed, v reversed
  poly.edges = {h1, h0, h2, v};
  poly.reversed = {false, false, true, true};
  poly.corner_angles = {M_PI_2, alpha, M_PI_2, M_PI_2};
  return poly;
}

SampledCurve sample_edge(const SpaceSpec& space, const GeodesicEdge& e, bool reversed,
                         int n) {
  SampledCurve c = resample_arclength(space, e.curve, e.t0, e.t1, n);
  if (reversed) {
    std::reverse(c.pts.begin(), c.pts.end());
    std::reverse(c.params.begin(), c.params.end());
  }
  return c;
}

GeodesicAxis axis_from_edge(const SpaceSpec& space, const GeodesicEdge& e, int n) {
  GeodesicAxis a;
  SampledCurve c = sample_edge(space, e, false, n);
  a.samples.reserve(c.pts.size());
  for (const auto& p : c.pts) a.samples.push_back(AmbientPoint(p));
  a.kind = e.kind;
  a.step = c.h;
  return a;
}

PolygonReport validate_polygon(const SpaceSpec& space, const GeodesicPolygon& poly,
                               int samples_per_edge) {
  PolygonReport rep;
  const int ne = int(poly.edges.size());
  std::vector<SampledCurve> sampled(ne);

  for (int i = 0; i < ne; ++i) {
    const GeodesicEdge& e = poly.edges[i];
    EdgeReport er;
    er.label = e.label;
    er.degenerate = e.degenerate;
    if (!e.degenerate) {
      sampled[i] = sample_edge(space, e, poly.reversed[i], samples_per_edge);
      er.length = sampled[i].length;
      std::vector<AmbientPoint> pts;
      pts.reserve(sampled[i].pts.size());
      for (const auto& p : sampled[i].pts) pts.push_back(AmbientPoint(p));
      er.geodesic_residual = geodesic_residual(space, pts, sampled[i].h);
      // kind residual on unit tangents
      double worst = 0.0;
      const auto& P = sampled[i].pts;
      for (size_t k = 1; k + 1 < P.size(); ++k) {
        const Vec4 t = (P[k + 1] - P[k - 1]) / (2.0 * sampled[i].h);
        const Vec4 p = P[k];
        const double tn = metric_norm(space, p, t);
        const TangentVector xi = vertical_field(space, AmbientPoint(p));
        const double pr = metric_eval_raw(space, p, t, xi.v) / tn;
        worst = std::max(worst, e.kind == EdgeKind::Vertical ? std::abs(std::abs(pr) - 1.0)
                                                             : std::abs(pr));
      }
      er.kind_residual = worst;
    } else {
      sampled[i] = sample_edge(space, e, poly.reversed[i], samples_per_edge);
    }
    rep.max_geodesic_residual = std::max(rep.max_geodesic_residual, er.geodesic_residual);
    rep.max_kind_residual = std::max(rep.max_kind_residual, er.kind_residual);
    rep.edges.push_back(er);
  }

  for (int i = 0; i < ne; ++i) {
    const int j = (i + 1) % ne;
    const Vec4 gap = poly.traversal_end(i) - poly.traversal_start(j);
    rep.closure_gaps.push_back(gap.norm());
    rep.max_closure_gap = std::max(rep.max_closure_gap, gap.norm());

    double measured = std::nan("");
    if (!poly.edges[i].degenerate && !poly.edges[j].degenerate) {
      // emanating tangents at the shared corner
      SampledCurve back = sampled[i];
      std::reverse(back.pts.begin(), back.pts.end());
      const Vec4 a = start_tangent(back);
      const Vec4 b = start_tangent(sampled[j]);
      const Vec4 p = poly.traversal_end(i);
      const double na = metric_norm(space, p, a), nb = metric_norm(space, p, b);
      if (na > 0.0 && nb > 0.0) {
        double cosang = metric_eval_raw(space, p, a, b) / (na * nb);
        cosang = std::clamp(cosang, -1.0, 1.0);
        measured = std::acos(cosang);
      }
    }
    rep.measured_corner_angles.push_back(measured);
    const double declared = poly.corner_angles[i];
    double err = std::nan("");
    if (!std::isnan(declared) && !std::isnan(measured)) {
      err = std::abs(measured - declared);
      rep.max_corner_error = std::max(rep.max_corner_error, err);
    }
    rep.corner_angle_errors.push_back(err);
  }

  rep.pass = rep.max_geodesic_residual < 1e-6 && rep.max_kind_residual < 1e-8 &&
             rep.max_closure_gap < 1e-10 && rep.max_corner_error < 1e-8;
  return rep;
}

}  // namespace cpc

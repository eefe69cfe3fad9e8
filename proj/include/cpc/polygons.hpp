#ifndef CPC_POLYGONS_HPP
#define CPC_POLYGONS_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cpc/spaces.hpp"
#include "cpc/util.hpp"

namespace cpc {

// A parametrized vertical or horizontal geodesic piece, kept in the printed
// parametrization of its family. Degenerate edges (empty parameter interval
// or zero-length image) are represented explicitly.
struct GeodesicEdge {
  std::function<Vec4(double)> curve;
  double t0 = 0.0, t1 = 1.0;
  EdgeKind kind = EdgeKind::Horizontal;
  std::string label;
  bool degenerate = false;

  Vec4 at(double t) const { return curve(t); }
  Vec4 start() const { return curve(t0); }
  Vec4 end() const { return curve(t1); }
};

// Closed geodesic polygon. edges[i] is traversed in the direction given by
// reversed[i]; consecutive traversal endpoints coincide. corner_angles[i] is
// the declared angle at the corner between edge i and edge i+1 (NaN when a
// degenerate edge makes the corner meaningless).
struct GeodesicPolygon {
  SpaceSpec space;
  std::vector<GeodesicEdge> edges;
  std::vector<bool> reversed;
  std::vector<double> corner_angles;
  std::map<std::string, double> params;  // lambda | c | ell, alpha

  const GeodesicEdge* find(const std::string& label) const;
  Vec4 corner_point(int i) const;  // shared point after traversed edge i
  Vec4 traversal_start(int i) const;
  Vec4 traversal_end(int i) const;
};

// Gamma_lambda in the Berger sphere S^3_b(4H^2+eps, H), lambda in [0, pi/2].
GeodesicPolygon build_gamma_lambda(const SpaceSpec& space, double lambda);

// Lambda_c, the helicoid boundary, c in (-1, 1].
GeodesicPolygon build_lambda_c(const SpaceSpec& space, double c);

// Horizontal lift of the right triangle in Nil_3; angles pi/2, alpha, pi/2-alpha.
GeodesicPolygon build_nil_polygon(double ell, double alpha);

struct EdgeReport {
  std::string label;
  double geodesic_residual = 0.0;
  double kind_residual = 0.0;
  double length = 0.0;
  bool degenerate = false;
};

struct PolygonReport {
  std::vector<EdgeReport> edges;
  std::vector<double> measured_corner_angles;
  std::vector<double> corner_angle_errors;  // |measured - declared|, NaN-skipped
  std::vector<double> closure_gaps;
  double max_geodesic_residual = 0.0;
  double max_kind_residual = 0.0;
  double max_corner_error = 0.0;
  double max_closure_gap = 0.0;
  bool pass = false;
};

PolygonReport validate_polygon(const SpaceSpec& space, const GeodesicPolygon& poly,
                               int samples_per_edge = 200);

// Uniform arc-length samples of an edge in traversal direction.
SampledCurve sample_edge(const SpaceSpec& space, const GeodesicEdge& e, bool reversed,
                         int n);

GeodesicAxis axis_from_edge(const SpaceSpec& space, const GeodesicEdge& e, int n = 64);

}  // namespace cpc

#endif

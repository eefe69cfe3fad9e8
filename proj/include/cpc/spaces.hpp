#ifndef CPC_SPACES_HPP
#define CPC_SPACES_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

// Models of the homogeneous 3-manifolds E(kappa,tau) used by the construction:
// Berger spheres S^3_b(kappa,tau), the Heisenberg group Nil_3 and the products
// M^2(eps) x R. All model coordinates are packed into a Vector4d:
//   Berger:     (x1,y1,x2,y2), z = x1+i y1, w = x2+i y2, |z|^2+|w|^2 = 1
//   Heisenberg: (x,y,z,0)
//   Product:    (b1,b2,b3,t), b on the unit sphere (eps=+1) or on the upper
//               sheet of b1^2+b2^2-b3^2 = -1 (eps=-1), t the height

namespace cpc {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

enum class SpaceKind { BergerSphere, Heisenberg, Product };

struct SpaceSpec {
  SpaceKind kind = SpaceKind::BergerSphere;
  double kappa = 0.0;  // base curvature
  double tau = 0.0;    // bundle curvature
  int epsilon = +1;    // product base sign (Product and construction pairing)
  double H = 0.0;      // target mean curvature of the sister surface

  static SpaceSpec berger(double kappa, double tau);
  // Construction Berger sphere for target (H,eps): kappa = 4H^2+eps, tau = H.
  static SpaceSpec berger_for(double H, int epsilon);
  static SpaceSpec heisenberg();
  static SpaceSpec product(int epsilon);

  bool is_construction_pair_for(double H_target, int eps_target) const;
  int dim() const { return kind == SpaceKind::Heisenberg ? 3 : 4; }
  bool constrained() const { return kind != SpaceKind::Heisenberg; }
  void validate() const;  // throws std::invalid_argument on bad parameters
};

struct AmbientPoint {
  Vec4 x = Vec4::Zero();
  AmbientPoint() = default;
  explicit AmbientPoint(const Vec4& v) : x(v) {}
  AmbientPoint(double a, double b, double c, double d) : x(a, b, c, d) {}
};

struct TangentVector {
  AmbientPoint base;
  Vec4 v = Vec4::Zero();
  TangentVector() = default;
  TangentVector(const AmbientPoint& p, const Vec4& vec) : base(p), v(vec) {}
};

// ---- model bookkeeping -----------------------------------------------------

// Multiplication by i on C^2 seen as R^4: (x1,y1,x2,y2) -> (-y1,x1,-y2,x2).
Vec4 complex_i(const Vec4& p);

// Extended quadratic-form matrix of the metric in model coordinates. For the
// constrained models this is the smooth extension off the constraint surface
// whose restriction to tangent vectors is the Riemannian metric.
Mat4 metric_matrix(const SpaceSpec& s, const Vec4& p);
// Directional derivative of metric_matrix at p in direction w (analytic).
Mat4 metric_matrix_deriv(const SpaceSpec& s, const Vec4& p, const Vec4& w);

double metric_eval_raw(const SpaceSpec& s, const Vec4& p, const Vec4& u, const Vec4& v);
// Checked variant: validates shared base point, model invariants, tangency.
double metric_eval(const SpaceSpec& s, const TangentVector& u, const TangentVector& v);
double metric_norm(const SpaceSpec& s, const Vec4& p, const Vec4& u);

// Constraint c(p)=0 defining the model surface (Berger, Product). Heisenberg
// has none.
double constraint_value(const SpaceSpec& s, const Vec4& p);
Vec4 constraint_grad(const SpaceSpec& s, const Vec4& p);
Mat4 constraint_hess(const SpaceSpec& s);
bool point_valid(const SpaceSpec& s, const Vec4& p, double tol = 1e-12);
void require_point(const SpaceSpec& s, const Vec4& p, double tol = 1e-9);

// Rescale back onto the model surface (identity for Heisenberg).
Vec4 project_to_model(const SpaceSpec& s, const Vec4& p);
// Remove the constraint-violating component (Euclidean linearization).
Vec4 project_tangent_linear(const SpaceSpec& s, const Vec4& p, const Vec4& v);
// g-orthogonal projection onto the tangent space of the model surface.
Vec4 project_tangent_metric(const SpaceSpec& s, const Vec4& p, const Vec4& v);

// ---- fields and maps --------------------------------------------------------

// Unit vertical Killing field xi.
TangentVector vertical_field(const SpaceSpec& s, const AmbientPoint& p);
// Flow of xi for time t (exact: fiber rotation / z-translation / t-shift).
AmbientPoint vertical_flow(const SpaceSpec& s, const AmbientPoint& p, double t);
Vec4 vertical_flow_push(const SpaceSpec& s, const AmbientPoint& p, double t, const Vec4& v);

// Hopf projection of the Berger sphere onto S^2(kappa) in R^3 (last coord 0).
AmbientPoint hopf_project(const SpaceSpec& s, const AmbientPoint& p);
Vec4 hopf_differential(const SpaceSpec& s, const AmbientPoint& p, const Vec4& v);
// Base projection for any space: Berger -> unit-sphere Hopf image,
// Heisenberg -> (x,y), Product -> base factor.
Vec3 base_project_unit(const SpaceSpec& s, const Vec4& p);

// ---- connection -------------------------------------------------------------

// Christoffel symbols of the extended metric in model coordinates, from
// central finite differences of metric_matrix (step 1e-5).
struct Christoffel {
  int n = 0;
  double G[4][4][4] = {};
  Vec4 apply(const Vec4& u, const Vec4& w) const;
};
Christoffel christoffel(const SpaceSpec& s, const Vec4& p);

// Covariant derivative of a vector field along a curve: dv + Gamma(p)(u, v),
// for the constrained models followed by the g-orthogonal tangent projection.
Vec4 covariant_correct(const SpaceSpec& s, const Vec4& p, const Vec4& dv,
                       const Vec4& u, const Vec4& v);

// ---- geodesics ---------------------------------------------------------------

struct GeodesicPath {
  std::vector<AmbientPoint> points;  // steps+1 arc-length samples
  double length = 0.0;
  double step() const { return points.size() > 1 ? length / double(points.size() - 1) : 0.0; }
};

// Integrates the geodesic through p with unit initial velocity v for the given
// length. RK4 one-step scheme with reprojection onto the model surface.
GeodesicPath geodesic_integrate(const SpaceSpec& s, const AmbientPoint& p,
                                const TangentVector& v, double length, int steps);

// Max tangential covariant-acceleration norm over interior samples of an
// arc-length sampled path (5-point stencils).
double geodesic_residual(const SpaceSpec& s, const std::vector<AmbientPoint>& pts, double h);

// ---- reflections -------------------------------------------------------------

enum class EdgeKind { Horizontal, Vertical };

struct GeodesicAxis {
  std::vector<AmbientPoint> samples;  // arc-length samples of the axis
  EdgeKind kind = EdgeKind::Horizontal;
  double step = 0.0;
};

// Involutive isometry fixing the given vertical or horizontal geodesic,
// realized as conjugation by an explicit ambient isometry. The axis is
// validated (geodesic residual + kind residual) before use.
AmbientPoint geodesic_reflection(const SpaceSpec& s, const GeodesicAxis& axis,
                                 const AmbientPoint& p);
Vec4 geodesic_reflection_push(const SpaceSpec& s, const GeodesicAxis& axis,
                              const AmbientPoint& p, const Vec4& v);

struct ProductPlane {
  bool is_slice = true;
  double height = 0.0;   // slice t = height
  Vec3 normal = Vec3::UnitY();  // vertical plane {<b,n>_eps = 0}
};

AmbientPoint product_reflection(const SpaceSpec& s, const ProductPlane& plane,
                                const AmbientPoint& p);

// Signed eps-form on base vectors: Euclidean for eps=+1, Lorentz for eps=-1.
double base_form(int epsilon, const Vec3& a, const Vec3& b);
// Distance from base point to the vertical plane {<b,n>_eps = 0}.
double base_plane_distance(int epsilon, const Vec3& b, const Vec3& n);

}  // namespace cpc

#endif

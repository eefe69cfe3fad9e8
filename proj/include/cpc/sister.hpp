#ifndef CPC_SISTER_HPP
#define CPC_SISTER_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cpc/mesh.hpp"
#include "cpc/patch.hpp"

namespace cpc {

// Daniel correspondence data (theta = pi/2): nu* = nu, T* = JT, S* = JS + H id,
// transported to the product target M^2(eps) x R.
struct SisterSample {
  double nu = 0.0;       // = source nu
  Vec2 Tstar = Vec2::Zero();
  Mat2 Sstar = Mat2::Zero();
  bool valid = false;
};

struct SisterData {
  SpaceSpec source;
  SpaceSpec target;  // Product(eps)
  double H = 0.0;
  FundamentalData data;               // source frames (owned copy)
  std::vector<SisterSample> samples;  // aligned with data.samples

  const SisterSample& at(int i, int j) const { return samples[size_t(j) * data.nx + i]; }
};

// Validates the (H, eps) pairing against the source space.
SisterData sister_data(const FundamentalData& fd, double H, int epsilon);

// Reconstructed sister immersion on the source grid: positions and adapted
// frames in M^2(eps) x R, integrated over a breadth-first spanning tree of the
// grid edges, root gauge pinned at a chosen corner.
struct SisterGauge {
  int root_i = -1, root_j = -1;  // default: (0, ny-1), the v^h1 corner
  int align_di = 0, align_dj = -1;
};

struct SisterMesh {
  SpaceSpec target;
  int nx = 0, ny = 0;
  std::vector<Vec4> verts;         // (b, t)
  std::vector<Vec4> E1, E2, Nn;    // adapted frame per node
  std::vector<uint8_t> valid;
  std::vector<std::array<int, 3>> faces;
  double max_face_closure = 0.0;   // holonomy meter
  double max_edge_isometry_err = 0.0;

  int id(int i, int j) const { return j * nx + i; }
};

SisterMesh integrate_sister_surface(const SisterData& sd, int substeps = 2,
                                    const SisterGauge& gauge = {});

// wrap the sister grid as a product-space GridMesh for downstream analysis
GridMesh sister_to_gridmesh(const SisterMesh& sm);

// ---- boundary curves ---------------------------------------------------------

struct SisterBoundaryCurve {
  std::string source_label;
  PatchSide side = PatchSide::Y0;
  std::vector<Vec4> points;
  std::vector<double> s;         // arc length stations
  std::vector<double> nu;        // source angle function along the edge
  bool is_slice = false;         // vertical source edge -> horizontal slice
  double plane_residual = 0.0;   // distance to the fitted vertical plane
  double slice_residual = 0.0;   // height spread around the fitted slice
  Vec3 plane_normal = Vec3::UnitY();
  double slice_height = 0.0;
  double kappa_slice_mean = 0.0;  // measured curvature magnitude in the slice
};

struct SideLabels {
  // labels for sides Y0 (bottom), Y1 (top), X0 (left), X1 (right)
  std::array<std::string, 4> name = {"h0", "v", "h1", "h2"};
};

struct SisterBoundary {
  std::vector<SisterBoundaryCurve> curves;
  double dihedral_h0_h1 = 0.0;  // angle between the fitted planes P0 and P1
  double dihedral_h0_h2 = 0.0;
  double max_plane_residual = 0.0;
  double max_slice_residual = 0.0;
};

SisterBoundary extract_sister_boundary(const SisterData& sd, const SisterMesh& sm,
                                       const SideLabels& labels = {});

// Quadrature route for the boundary: heights by int sqrt(1-nu^2) ds with signs
// fixed by corner continuity, base positions along the fitted plane geodesics
// with speed -nu, and the slice curve from the curvature law H - <S v', J v'>.
// Compared pointwise against the frame-integrated mesh boundary.
struct QuadratureRouteReport {
  double max_height_gap = 0.0;
  double max_base_gap = 0.0;
  double vstar_curve_gap = 0.0;
  double closure_gap = 0.0;
};

QuadratureRouteReport integrate_sister_boundary(const SisterData& sd, const SisterMesh& sm,
                                                const SideLabels& labels = {});

// ---- functionals ---------------------------------------------------------------

// ell(lambda) = -int nu(h0(t)) dt in the printed parametrization of the side.
double length_ell(const FundamentalData& fd, PatchSide side, double t0, double t1);
// geometric projected length: int (-nu) ds over the side's arc length
double length_ell_geometric(const FundamentalData& fd, PatchSide side);
// heights: int sqrt(1 - nu^2) ds along a side
double height_integral(const FundamentalData& fd, PatchSide side);

// (mu0, mu_pi/2) for a solved Gamma_lambda mesh: quadratures along h1 and h2
std::pair<double, double> heights_mu(const FundamentalData& fd);

struct CompactnessResult {
  bool closes = false;
  long p = 0, q = 0;
  double error = 0.0;
};
// continued-fraction style search: smallest q <= 64 with |ell/pi - p/q| < tol
CompactnessResult compactness_test(double ell_value, double tol);

}  // namespace cpc

#endif

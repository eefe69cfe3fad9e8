#ifndef CPC_PATCH_HPP
#define CPC_PATCH_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cpc/polygons.hpp"
#include "cpc/spaces.hpp"

namespace cpc {

// First-order jet of an immersion at a parameter point.
struct SurfJet {
  Vec4 p = Vec4::Zero();
  Vec4 fx = Vec4::Zero();
  Vec4 fy = Vec4::Zero();
};

struct ImmersedPatch {
  SpaceSpec space;
  std::function<Vec4(double, double)> map;
  std::function<SurfJet(double, double)> jet;  // optional analytic jet
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;

  SurfJet eval_jet(double x, double y) const;  // analytic or central FD
};

// Spherical helicoid Phi_c(x,y) = (cos x e^{icy}, sin x e^{iy}).
ImmersedPatch helicoid(double c, const SpaceSpec& space, double x0 = 0.0,
                       double x1 = M_PI_2, double y0 = 0.0, double y1 = M_PI_2);

// The minimal sphere {Re(z-w)=0} piece bounded by Gamma_{pi/2}: parameters
// (theta, phi) in [-pi/4, pi/4] x [0, pi/2]; phi = 0 is the collapsed corner.
ImmersedPatch sphere_piece(const SpaceSpec& space);

// The Sigma_0 piece of the helicoid Phi_{-1} bounded by Gamma_0.
ImmersedPatch sigma0_piece(const SpaceSpec& space);

// Horizontal (z = z0) and vertical (x = x0) planes in Nil_3.
ImmersedPatch nil_horizontal_plane(double z0, double halfwidth = 1.0);
ImmersedPatch nil_vertical_plane(double x0, double halfwidth = 1.0);

// Per-sample Daniel data (nu, T, S) in the declared orthonormal frame
// (Gram-Schmidt of the coordinate tangents, first vector along d/dx).
struct FrameSample {
  Vec4 p, fx, fy;
  Vec4 f1, f2, N;
  double nu = 0.0;
  Vec4 T = Vec4::Zero();
  Mat2 S = Mat2::Zero();
  double jsign = 1.0;  // J f1 = jsign * f2 in the oriented tangent plane
  bool valid = true;
};

enum class NuConvention { NonPositive, Keep };

struct FundamentalData {
  SpaceSpec space;
  int nx = 0, ny = 0;          // grid nodes per direction
  double x0 = 0, y0 = 0, hx = 0, hy = 0;
  std::vector<FrameSample> samples;  // row-major, index j*nx + i
  bool flipped = false;              // normals flipped to enforce nu <= 0

  const FrameSample& at(int i, int j) const { return samples[size_t(j) * nx + i]; }
  FrameSample& at(int i, int j) { return samples[size_t(j) * nx + i]; }
};

// Frame construction at a single jet (no shape operator).
FrameSample frame_at(const SpaceSpec& s, const SurfJet& jet);

// Shape operator from increments of the normal field along the coordinate
// directions (dNx = dN/dx, dNy = dN/dy in the jet's parameters).
void fill_shape_from_normals(const SpaceSpec& s, FrameSample& fs, const Vec4& dNx,
                             const Vec4& dNy);

FundamentalData fundamental_data(const ImmersedPatch& patch, int nx, int ny,
                                 NuConvention conv = NuConvention::NonPositive,
                                 bool allow_degenerate_boundary = false);

// Mean curvature field H = tr(S)/2 per sample.
std::vector<double> mean_curvature(const FundamentalData& fd);

enum class PatchSide { X0, X1, Y0, Y1 };

struct BoundaryCurvature {
  std::vector<double> s;  // arc length stations
  std::vector<double> k;  // predicted sister boundary curvature H - <S h', J h'>
};

BoundaryCurvature boundary_curvature(const FundamentalData& fd, PatchSide side, double H);

// Validates that the given geodesic edge lies on the named patch side, then
// returns the predicted sister curvature along it.
BoundaryCurvature boundary_curvature(const ImmersedPatch& patch, const FundamentalData& fd,
                                     PatchSide side, const GeodesicEdge& edge, double H);

enum class SisterFamily { Sphere, Cylinder, Unduloid, Nodoid };
SisterFamily classify_sister(double c);
std::string to_string(SisterFamily f);

}  // namespace cpc

#endif

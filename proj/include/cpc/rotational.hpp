#ifndef CPC_ROTATIONAL_HPP
#define CPC_ROTATIONAL_HPP

#include <string>
#include <vector>

#include "cpc/patch.hpp"
#include "cpc/spaces.hpp"

namespace cpc {

// Rotationally invariant CMC-H surfaces in M^2(eps) x R via the profile ODE
//   sigma' = 2H - sin(sigma) f'(rho)/f(rho),  rho' = cos(sigma),  h' = sin(sigma)
// with f = sn_eps (rotation about a point: sphere, vertical cylinder,
// unduloid, nodoid) or f = cs_eps (invariance along a horizontal geodesic:
// the horizontal cylinder/torus). Independent oracle for sister verification.

enum class RotFamily { Sphere, VerticalCylinder, HorizontalCylinderOrTorus, Unduloid, Nodoid };

struct ProfileCurve {
  int epsilon = 1;
  double H = 1.0;
  RotFamily family = RotFamily::Sphere;
  double param = 0.0;  // neck radius for unduloid/nodoid, unused otherwise

  std::vector<double> s, rho, h, sigma;  // arc-length samples
  double max_height = 0.0;   // above the symmetry slice where applicable
  double rho_min = 0.0, rho_max = 0.0;
  double period_height = 0.0;  // height of one period (unduloid/nodoid)

  // closest distance from (rho0,h0) to the sampled profile polyline
  double distance(double rho0, double h0) const;
};

// family parameter ranges
double cylinder_radius(int epsilon, double H);  // ct_eps(rho_c) = 2H

ProfileCurve profile_solve(int epsilon, double H, RotFamily family, double param = 0.0);

double sphere_height(int epsilon, double H);    // hemisphere height above the slice
double cylinder_height(int epsilon, double H);  // horizontal cylinder/torus half-height

// Mean curvature of the surface of revolution generated by the profile,
// recomputed independently through the fundamental-data machinery.
double profile_cmc_residual(const ProfileCurve& pc);

struct MatchReport {
  double hausdorff = 0.0;       // profile-plane symmetric Hausdorff distance
  double fitted_param = 0.0;    // neck radius when fitting unduloid/nodoid
  double axis_residual = 0.0;   // quality of the fitted rotation axis
  double vertical_shift = 0.0;
  Vec3 axis = Vec3::UnitZ();
};

// Best rigid alignment (rotation about the fitted vertical axis + vertical
// shift) of a rotational sister mesh against the profile; reports the sup
// over mesh vertices of the profile-plane distance to the surface.
MatchReport match_sister(const ProfileCurve& profile, const std::vector<Vec4>& verts,
                         int epsilon);
MatchReport match_sister_fit(int epsilon, double H, RotFamily family,
                             const std::vector<Vec4>& verts);

std::string to_string(RotFamily f);

}  // namespace cpc

#endif

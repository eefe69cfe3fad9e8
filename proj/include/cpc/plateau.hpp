#ifndef CPC_PLATEAU_HPP
#define CPC_PLATEAU_HPP

#include <vector>

#include "cpc/mesh.hpp"

namespace cpc {

enum class StepRule { Fixed, Backtracking };

struct SolverConfig {
  int max_iters = 40000;
  double grad_tol = 2e-7;
  StepRule step_rule = StepRule::Backtracking;
  int refine_levels = 2;   // coarse-to-fine pre-solves before the final grid
  double fixed_step = 5e-3;
  bool verbose = false;

  void validate() const {
    if (max_iters < 1) throw std::invalid_argument("max_iters >= 1 required");
    if (!(grad_tol > 0.0)) throw std::invalid_argument("grad_tol > 0 required");
  }
};

struct SolveStats {
  int iters = 0;
  double grad_norm = 0.0;
  double area = 0.0;
  bool converged = false;
  bool area_monotone = true;
  double min_quality = 1.0;
};

// Fixed-boundary discrete Riemannian area minimization: projected gradient
// descent with Armijo backtracking, vertices reprojected onto the model
// surface every step. Throws on non-convergence or mesh degeneration.
SolveStats minimize_area(GridMesh& mesh, const SolverConfig& cfg);

// init_spanning_mesh at the coarsest level + minimize + refine, cfg.refine_levels
// times, landing on `resolution`.
GridMesh solve_plateau(const GeodesicPolygon& poly, int resolution, const SolverConfig& cfg,
                       SolveStats* stats = nullptr);

// Per-vertex angle function nu (with the nu <= 0 orientation convention).
std::vector<double> angle_function(const GridMesh& mesh);

struct OrderingReport {
  bool ordered = false;
  double worst_violation = 0.0;   // beyond the slack
  int comparisons = 0;
  std::vector<double> nu_h0_mid;  // nu_lambda(h0(pi/4)) per lambda
  std::vector<double> nu_h2_zero; // nu_lambda(h2(0)) per lambda
};

struct FamilySweep {
  std::vector<double> lambdas;
  std::vector<GridMesh> meshes;
  OrderingReport ordering;
};

// Solves Sigma_lambda for each lambda (sorted, within [0, pi/2]) and verifies
// the vertical ordering of the family on shared base points.
FamilySweep family_sweep(const SpaceSpec& space, const std::vector<double>& lambdas,
                         int resolution, const SolverConfig& cfg);

// nu at the boundary points h0(pi/4) and h2(0) of a solved Gamma_lambda mesh.
double nu_at_h0_mid(const GridMesh& mesh);
double nu_at_h2_zero(const GridMesh& mesh);

// Smallest eigenvalue of the discrete area Hessian over the free vertices
// (finite differences of the gradient in tangent bases; small meshes only).
double area_hessian_min_eig(const GridMesh& mesh);

// Interpolated fiber height of the mesh graph over a unit base point; returns
// false if the base point is not covered by the projected mesh.
bool fiber_height_at(const GridMesh& mesh, const std::vector<double>& heights,
                     const Vec3& base_query, double& out);

}  // namespace cpc

#endif

#include "cpc/plateau.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace cpc {

namespace {

// The construction solutions are vertical graphs, so the descent direction is
// the fiber component of the negative area gradient: one degree of freedom
// per vertex. Free tangential motion admits degenerate minimizing sequences
// (parametrization collapse), which the graph structure rules out.

// fiber velocity at p (d/dphi of the fiber rotation / vertical translation)
Vec4 fiber_dir(const SpaceSpec& s, const Vec4& p) {
  if (s.kind == SpaceKind::BergerSphere) return complex_i(p);
  return Vec4(0, 0, 1, 0);
}

Vec4 fiber_move(const SpaceSpec& s, const Vec4& p, double a) {
  if (s.kind == SpaceKind::BergerSphere) {
    const double c = std::cos(a), sn = std::sin(a);
    return Vec4(c * p[0] - sn * p[1], sn * p[0] + c * p[1], c * p[2] - sn * p[3],
                sn * p[2] + c * p[3]);
  }
  return p + a * Vec4(0, 0, 1, 0);
}

// fiber components of the area gradient; returns the max magnitude
double fiber_gradient(const GridMesh& mesh, const std::vector<Vec4>& grad,
                      std::vector<double>& gphi) {
  const int n = mesh.nverts();
  gphi.assign(n, 0.0);
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    if (mesh.fixed[k]) continue;
    gphi[k] = grad[k].dot(fiber_dir(mesh.space, mesh.verts[k]));
    worst = std::max(worst, std::abs(gphi[k]));
  }
  return worst;
}

void take_step(const GridMesh& mesh, const std::vector<Vec4>& x0,
               const std::vector<double>& dphi, double t, std::vector<Vec4>& out) {
  const int n = int(x0.size());
  out.resize(n);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < n; ++k) {
    if (mesh.fixed[k]) {
      out[k] = x0[k];
      continue;
    }
    out[k] = fiber_move(mesh.space, x0[k], t * dphi[k]);
  }
}

}  // namespace

SolveStats minimize_area(GridMesh& mesh, const SolverConfig& cfg) {
  cfg.validate();
  SolveStats st;
  std::vector<Vec4> grad;
  std::vector<double> gphi, dphi;
  std::vector<Vec4> trial;
  double area = mesh_area(mesh);
  double t_prev = 0.05;
  const double armijo = 1e-4, shrink = 0.5;

  for (st.iters = 0; st.iters < cfg.max_iters; ++st.iters) {
    mesh_area_gradient(mesh, grad);
    const double gnorm = fiber_gradient(mesh, grad, gphi);
    st.grad_norm = gnorm;
    if (gnorm < cfg.grad_tol) {
      st.converged = true;
      break;
    }

    double g2 = 0.0;
    dphi = gphi;
    for (auto& d : dphi) {
      g2 += d * d;
      d = -d;
    }

    double t = (cfg.step_rule == StepRule::Fixed) ? cfg.fixed_step
                                                  : std::min(2.0 * t_prev, 4.0);
    double new_area = 0.0;
    if (cfg.step_rule == StepRule::Fixed) {
      take_step(mesh, mesh.verts, dphi, t, trial);
      new_area = mesh_area_with(mesh, trial);
    } else {
      bool accepted = false;
      for (int ls = 0; ls < 60; ++ls) {
        take_step(mesh, mesh.verts, dphi, t, trial);
        new_area = mesh_area_with(mesh, trial);
        if (new_area <= area - armijo * t * g2) {
          accepted = true;
          break;
        }
        t *= shrink;
      }
      if (!accepted)
        throw std::runtime_error("minimize_area: line search failed at gradient norm " +
                                 std::to_string(gnorm));
      t_prev = t;
    }
    if (new_area > area + 1e-12) st.area_monotone = false;
    mesh.verts.swap(trial);
    area = new_area;

    if ((st.iters & 255) == 0) {
      const double q = mesh.min_triangle_quality();
      st.min_quality = std::min(st.min_quality, q);
      if (q < 1e-4)
        throw std::runtime_error("minimize_area: mesh degeneration, triangle quality " +
                                 std::to_string(q));
    }
  }
  st.area = area;
  st.min_quality = std::min(st.min_quality, mesh.min_triangle_quality());
  if (!st.converged)
    throw std::runtime_error("minimize_area: no convergence in " +
                             std::to_string(cfg.max_iters) +
                             " iterations, gradient norm " + std::to_string(st.grad_norm));
  return st;
}

GridMesh solve_plateau(const GeodesicPolygon& poly, int resolution, const SolverConfig& cfg,
                       SolveStats* stats) {
  int levels = std::max(0, cfg.refine_levels);
  int res0 = resolution;
  while (levels > 0 && res0 % 2 == 0 && res0 / 2 >= 6) {
    res0 /= 2;
    --levels;
  }
  const int applied = cfg.refine_levels - levels;
  GridMesh mesh = init_spanning_mesh(poly, res0);
  SolverConfig level_cfg = cfg;
  SolveStats st;
  for (int l = 0; l <= applied; ++l) {
    if (l > 0) mesh = refine_mesh(mesh);
    // coarse levels only need a rough solve
    level_cfg.grad_tol = (l == applied) ? cfg.grad_tol : std::max(20.0 * cfg.grad_tol, 1e-6);
    st = minimize_area(mesh, level_cfg);
  }
  if (stats) *stats = st;
  return mesh;
}

std::vector<double> angle_function(const GridMesh& mesh) {
  const FundamentalData fd = mesh_fundamental_data(mesh, NuConvention::NonPositive);
  std::vector<double> nu(mesh.nverts(), std::nan(""));
  for (int j = 0; j < fd.ny; ++j)
    for (int i = 0; i < fd.nx; ++i)
      if (fd.at(i, j).valid) nu[mesh.id(i, j)] = fd.at(i, j).nu;
  return nu;
}

double nu_at_h0_mid(const GridMesh& mesh) {
  const FundamentalData fd = mesh_fundamental_data(mesh);
  // h0 is the bottom row; h0(pi/4) sits at the middle parameter station
  std::vector<double> ts, nus;
  for (int i = 0; i < fd.nx; ++i) {
    if (!fd.at(i, 0).valid) continue;
    ts.push_back(double(i) / mesh.nu);
    nus.push_back(fd.at(i, 0).nu);
  }
  return CubicHermite(ts, nus)(0.5);
}

double nu_at_h2_zero(const GridMesh& mesh) {
  const FundamentalData fd = mesh_fundamental_data(mesh);
  const double lambda = mesh.polygon.params.count("lambda")
                            ? mesh.polygon.params.at("lambda")
                            : throw std::invalid_argument("not a Gamma_lambda mesh");
  // right column: h2 from t=-pi/4 (j=0) to t=lambda/2 (j=nv)
  std::vector<double> ts, nus;
  for (int j = 0; j < fd.ny; ++j) {
    if (!fd.at(fd.nx - 1, j).valid) continue;
    ts.push_back(-M_PI_4 + (0.5 * lambda + M_PI_4) * double(j) / mesh.nv);
    nus.push_back(fd.at(fd.nx - 1, j).nu);
  }
  return CubicHermite(ts, nus)(0.0);
}

bool fiber_height_at(const GridMesh& mesh, const std::vector<double>& heights,
                     const Vec3& base_query, double& out) {
  // locate the projected face containing the query and interpolate
  for (const auto& f : mesh.faces) {
    Mat3 M;
    for (int k = 0; k < 3; ++k) M.col(k) = base_project_unit(mesh.space, mesh.verts[f[k]]);
    if (std::abs(M.determinant()) < 1e-12) continue;
    const Vec3 w = M.partialPivLu().solve(base_query);
    if (w[0] < -1e-9 || w[1] < -1e-9 || w[2] < -1e-9) continue;
    const double ws = w[0] + w[1] + w[2];
    if (!(ws > 1e-12)) continue;
    out = (w[0] * heights[f[0]] + w[1] * heights[f[1]] + w[2] * heights[f[2]]) / ws;
    return true;
  }
  return false;
}

FamilySweep family_sweep(const SpaceSpec& space, const std::vector<double>& lambdas,
                         int resolution, const SolverConfig& cfg) {
  if (!std::is_sorted(lambdas.begin(), lambdas.end()))
    throw std::invalid_argument("family_sweep: lambdas must be sorted");
  for (double l : lambdas)
    if (!(l >= 0.0 && l <= M_PI_2 + 1e-12))
      throw std::invalid_argument("family_sweep: lambda outside [0, pi/2]");

  FamilySweep sweep;
  sweep.lambdas = lambdas;
  for (double lam : lambdas) {
    const GeodesicPolygon poly = build_gamma_lambda(space, lam);
    sweep.meshes.push_back(solve_plateau(poly, resolution, cfg));
    sweep.ordering.nu_h0_mid.push_back(nu_at_h0_mid(sweep.meshes.back()));
    sweep.ordering.nu_h2_zero.push_back(nu_at_h2_zero(sweep.meshes.back()));
  }

  // vertical ordering on shared base queries strictly inside the quarter sphere
  std::vector<Vec3> queries;
  for (int a = 1; a <= 6; ++a)
    for (int b = 1; b <= 6; ++b) {
      const double u = M_PI * a / 7.0;       // longitude within (0, pi)
      const double w = M_PI_2 * b / 7.5;     // latitude below the pole
      queries.emplace_back(std::cos(u) * std::cos(w), std::sin(u) * std::cos(w),
                           std::sin(w));
    }

  std::vector<std::vector<double>> hq(lambdas.size());
  std::vector<std::vector<bool>> ok(lambdas.size());
  for (size_t li = 0; li < lambdas.size(); ++li) {
    const std::vector<double> hts = fiber_heights(sweep.meshes[li]);
    for (const Vec3& q : queries) {
      double h = 0.0;
      const bool found = fiber_height_at(sweep.meshes[li], hts, q, h);
      hq[li].push_back(h);
      ok[li].push_back(found);
    }
  }

  // establish the sign convention from the first comparable pair, then check
  const double slack = 1e-4;
  double sign = 0.0;
  double worst = 0.0;
  int comparisons = 0;
  for (size_t li = 0; li + 1 < lambdas.size(); ++li) {
    for (size_t qi = 0; qi < queries.size(); ++qi) {
      if (!ok[li][qi] || !ok[li + 1][qi]) continue;
      const double d = hq[li + 1][qi] - hq[li][qi];
      ++comparisons;
      if (sign == 0.0 && std::abs(d) > 10.0 * slack) sign = d > 0 ? 1.0 : -1.0;
    }
  }
  if (sign == 0.0) sign = 1.0;
  for (size_t li = 0; li + 1 < lambdas.size(); ++li)
    for (size_t qi = 0; qi < queries.size(); ++qi) {
      if (!ok[li][qi] || !ok[li + 1][qi]) continue;
      const double d = sign * (hq[li + 1][qi] - hq[li][qi]);
      if (d < -slack) worst = std::max(worst, -d - slack);
    }
  sweep.ordering.ordered = (worst == 0.0);
  sweep.ordering.worst_violation = worst;
  sweep.ordering.comparisons = comparisons;
  return sweep;
}

double area_hessian_min_eig(const GridMesh& mesh) {
  // Hessian of the area in the graph variables (one fiber angle per free
  // vertex), by central differences of the fiber gradient
  std::vector<int> free_ids;
  for (int k = 0; k < mesh.nverts(); ++k)
    if (!mesh.fixed[k]) free_ids.push_back(k);
  const int n = int(free_ids.size());
  if (n > 3000) throw std::invalid_argument("area_hessian_min_eig: mesh too large");

  GridMesh work = mesh;
  std::vector<Vec4> grad;
  std::vector<double> gphi;
  auto fg = [&](Eigen::VectorXd& out) {
    mesh_area_gradient(work, grad);
    out.resize(n);
    for (int a = 0; a < n; ++a)
      out[a] = grad[free_ids[a]].dot(fiber_dir(work.space, work.verts[free_ids[a]]));
  };

  const double h = 1e-5;
  Eigen::MatrixXd H(n, n);
  Eigen::VectorXd gp(n), gm(n);
  for (int a = 0; a < n; ++a) {
    const Vec4 save = work.verts[free_ids[a]];
    work.verts[free_ids[a]] = fiber_move(work.space, save, h);
    fg(gp);
    work.verts[free_ids[a]] = fiber_move(work.space, save, -h);
    fg(gm);
    work.verts[free_ids[a]] = save;
    H.col(a) = (gp - gm) / (2.0 * h);
  }
  const Eigen::MatrixXd Hs = 0.5 * (H + H.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Hs);
  return eig.eigenvalues().minCoeff();
}

}  // namespace cpc

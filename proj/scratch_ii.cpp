// scratch: Nil Plateau + angle function behavior + hessian
#include <chrono>
#include <cmath>
#include <cstdio>

#include "cpc/plateau.hpp"

using namespace cpc;

int main() {
  setvbuf(stdout, nullptr, _IONBF, 0);

  {  // Nil quadrilateral graph
    const auto t0 = std::chrono::steady_clock::now();
    SolverConfig cfg;
    SolveStats st;
    GridMesh mesh = solve_plateau(build_nil_polygon(1.0, M_PI_4), 24, cfg, &st);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const GraphCheck gc = graph_check(mesh);
    std::printf("nil(1,pi/4): iters=%d area=%.8f graph=%d viol=%.1e chi=%d t=%.1fs\n",
                st.iters, st.area, int(gc.is_graph), gc.base_domain_violation,
                mesh.euler_characteristic(), secs);
  }

  {  // angle function on a mid-family solve
    SolverConfig cfg;
    const SpaceSpec s = SpaceSpec::berger_for(1.0, 1);
    GridMesh mesh = solve_plateau(build_gamma_lambda(s, M_PI_4), 24, cfg);
    const std::vector<double> nu = angle_function(mesh);
    const FundamentalData fd = mesh_fundamental_data(mesh);
    double max_int = -2, max_v = 0, nu_c1 = 0, nu_c2 = 0;
    for (int j = 0; j <= mesh.nv; ++j)
      for (int i = 0; i <= mesh.nu; ++i) {
        if (!fd.at(i, j).valid) continue;
        const double val = fd.at(i, j).nu;
        const bool boundary = (i == 0 || j == 0 || i == mesh.nu || j == mesh.nv);
        if (!boundary) max_int = std::max(max_int, val);
        if (j == mesh.nv) max_v = std::max(max_v, std::abs(val));
      }
    nu_c1 = fd.at(0, 0).nu;   // h0(0) corner
    nu_c2 = fd.at(mesh.nu, 0).nu;  // h0(pi/2) corner
    std::printf("lam=pi/4: max interior nu=%.4f  max|nu| on v=%.4f  nu(h0(0))=%.4f nu(h0(pi/2))=%.4f\n",
                max_int, max_v, nu_c1, nu_c2);
    std::printf("nu_at_h0_mid=%.5f nu_at_h2_zero=%.5f\n", nu_at_h0_mid(mesh), nu_at_h2_zero(mesh));
  }

  {  // monotonicity of nu across lambda + ordering
    SolverConfig cfg;
    const SpaceSpec s = SpaceSpec::berger_for(1.0, 1);
    std::vector<double> lambdas;
    for (int k = 0; k <= 8; ++k) lambdas.push_back(M_PI_2 * k / 8.0);
    const auto t0 = std::chrono::steady_clock::now();
    const FamilySweep sweep = family_sweep(s, lambdas, 16, cfg);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("sweep t=%.1fs ordered=%d comparisons=%d worst=%.2e\n", secs,
                int(sweep.ordering.ordered), sweep.ordering.comparisons,
                sweep.ordering.worst_violation);
    std::printf("nu_h0_mid: ");
    for (double v : sweep.ordering.nu_h0_mid) std::printf("%.4f ", v);
    std::printf("\nnu_h2_0  : ");
    for (double v : sweep.ordering.nu_h2_zero) std::printf("%.4f ", v);
    std::printf("\n");
  }

  {  // hessian min eig on a small solve
    SolverConfig cfg;
    const SpaceSpec s = SpaceSpec::berger_for(1.0, 1);
    GridMesh mesh = solve_plateau(build_gamma_lambda(s, 0.9), 10, cfg);
    std::printf("hessian min eig (lam=0.9, res=10): %.3e\n", area_hessian_min_eig(mesh));
  }
  return 0;
}

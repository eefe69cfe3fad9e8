#ifndef CPC_TEST_HELPERS_HPP
#define CPC_TEST_HELPERS_HPP

#include <cmath>

#include "cpc/mesh.hpp"

namespace cpc_test {

using namespace cpc;

// max distance from mesh vertices to the minimal sphere {Re(z-w)=0}
inline double dist_to_sphere_set(const GridMesh& m) {
  double worst = 0.0;
  for (const auto& p : m.verts)
    worst = std::max(worst, std::abs(p[0] - p[2]) / std::sqrt(2.0));
  return worst;
}

// max distance from mesh vertices to the helicoid Phi_{-1} (closest-point search)
inline double dist_to_helicoid(const GridMesh& m) {
  auto Phi = [](double x, double y) {
    return Vec4(std::cos(x) * std::cos(y), -std::cos(x) * std::sin(y),
                std::sin(x) * std::cos(y), std::sin(x) * std::sin(y));
  };
  double worst = 0.0;
  for (const auto& p : m.verts) {
    double bx = 0, by = 0, best = 1e300;
    for (int i = 0; i <= 24; ++i)
      for (int j = 0; j <= 48; ++j) {
        const double x = M_PI_4 * i / 24.0, y = -M_PI_2 + M_PI_2 * j / 48.0;
        const double d = (Phi(x, y) - p).squaredNorm();
        if (d < best) {
          best = d;
          bx = x;
          by = y;
        }
      }
    double step = M_PI_4 / 24.0;
    for (int it = 0; it < 40; ++it) {
      bool improved = false;
      const double dx[4] = {step, -step, 0, 0}, dy[4] = {0, 0, step, -step};
      for (int c = 0; c < 4; ++c) {
        const double d = (Phi(bx + dx[c], by + dy[c]) - p).squaredNorm();
        if (d < best) {
          best = d;
          bx += dx[c];
          by += dy[c];
          improved = true;
        }
      }
      if (!improved) step *= 0.5;
    }
    worst = std::max(worst, std::sqrt(best));
  }
  return worst;
}

}  // namespace cpc_test

#endif

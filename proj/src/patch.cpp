#include "cpc/patch.hpp"

#include <cmath>

namespace cpc {

namespace {
constexpr double kJetStep = 1e-5;   // FD step for map jets
constexpr double kNormStep = 1e-3;  // FD step for differentiating the normal field

// generalized cross product: x . cross4(a,b,c) = det[x; a; b; c]
Vec4 cross4(const Vec4& a, const Vec4& b, const Vec4& c) {
  Vec4 n;
  for (int l = 0; l < 4; ++l) {
    Mat3 M;
    int col = 0;
    for (int j = 0; j < 4; ++j) {
      if (j == l) continue;
      M(0, col) = a[j];
      M(1, col) = b[j];
      M(2, col) = c[j];
      ++col;
    }
    n[l] = ((l % 2 == 0) ? 1.0 : -1.0) * M.determinant();
  }
  return n;
}

}  // namespace

SurfJet ImmersedPatch::eval_jet(double x, double y) const {
  if (jet) return jet(x, y);
  SurfJet j;
  j.p = map(x, y);
  j.fx = (map(x + kJetStep, y) - map(x - kJetStep, y)) / (2.0 * kJetStep);
  j.fy = (map(x, y + kJetStep) - map(x, y - kJetStep)) / (2.0 * kJetStep);
  return j;
}

ImmersedPatch helicoid(double c, const SpaceSpec& space, double x0, double x1, double y0,
                       double y1) {
  if (space.kind != SpaceKind::BergerSphere)
    throw std::invalid_argument("helicoid: space must be a Berger sphere");
  ImmersedPatch patch;
  patch.space = space;
  patch.x0 = x0;
  patch.x1 = x1;
  patch.y0 = y0;
  patch.y1 = y1;
  patch.map = [c](double x, double y) {
    return Vec4(std::cos(x) * std::cos(c * y), std::cos(x) * std::sin(c * y),
                std::sin(x) * std::cos(y), std::sin(x) * std::sin(y));
  };
  patch.jet = [c](double x, double y) {
    SurfJet j;
    const double cx = std::cos(x), sx = std::sin(x);
    const double cy = std::cos(y), sy = std::sin(y);
    const double ccy = std::cos(c * y), scy = std::sin(c * y);
    j.p = Vec4(cx * ccy, cx * scy, sx * cy, sx * sy);
    j.fx = Vec4(-sx * ccy, -sx * scy, cx * cy, cx * sy);
    j.fy = Vec4(-c * cx * scy, c * cx * ccy, -sx * sy, sx * cy);
    return j;
  };
  return patch;
}

ImmersedPatch sphere_piece(const SpaceSpec& space) {
  if (space.kind != SpaceKind::BergerSphere)
    throw std::invalid_argument("sphere_piece: space must be a Berger sphere");
  ImmersedPatch patch;
  patch.space = space;
  patch.x0 = -M_PI_4;
  patch.x1 = M_PI_4;
  patch.y0 = 0.0;
  patch.y1 = M_PI_2;
  const double r = 1.0 / std::sqrt(2.0);
  patch.map = [r](double th, double ph) {
    return Vec4(r * std::cos(ph), std::sin(ph) * std::cos(th), r * std::cos(ph),
                std::sin(ph) * std::sin(th));
  };
  patch.jet = [r](double th, double ph) {
    SurfJet j;
    const double cp = std::cos(ph), sp = std::sin(ph);
    const double ct = std::cos(th), st = std::sin(th);
    j.p = Vec4(r * cp, sp * ct, r * cp, sp * st);
    j.fx = Vec4(0.0, -sp * st, 0.0, sp * ct);
    j.fy = Vec4(-r * sp, cp * ct, -r * sp, cp * st);
    return j;
  };
  return patch;
}

ImmersedPatch sigma0_piece(const SpaceSpec& space) {
  return helicoid(-1.0, space, 0.0, M_PI_4, -M_PI_2, 0.0);
}

ImmersedPatch nil_horizontal_plane(double z0, double halfwidth) {
  ImmersedPatch patch;
  patch.space = SpaceSpec::heisenberg();
  patch.x0 = -halfwidth;
  patch.x1 = halfwidth;
  patch.y0 = -halfwidth;
  patch.y1 = halfwidth;
  patch.map = [z0](double x, double y) { return Vec4(x, y, z0, 0.0); };
  patch.jet = [z0](double x, double y) {
    SurfJet j;
    j.p = Vec4(x, y, z0, 0.0);
    j.fx = Vec4(1, 0, 0, 0);
    j.fy = Vec4(0, 1, 0, 0);
    return j;
  };
  return patch;
}

ImmersedPatch nil_vertical_plane(double x0, double halfwidth) {
  ImmersedPatch patch;
  patch.space = SpaceSpec::heisenberg();
  patch.x0 = -halfwidth;
  patch.x1 = halfwidth;
  patch.y0 = -halfwidth;
  patch.y1 = halfwidth;
  patch.map = [x0](double y, double z) { return Vec4(x0, y, z, 0.0); };
  patch.jet = [x0](double y, double z) {
    SurfJet j;
    j.p = Vec4(x0, y, z, 0.0);
    j.fx = Vec4(0, 1, 0, 0);
    j.fy = Vec4(0, 0, 1, 0);
    return j;
  };
  return patch;
}

FrameSample frame_at(const SpaceSpec& s, const SurfJet& jet) {
  FrameSample out;
  out.p = jet.p;
  out.fx = jet.fx;
  out.fy = jet.fy;

  const Mat4 G = metric_matrix(s, jet.p);
  const double E = jet.fx.dot(G * jet.fx);
  const double F = jet.fx.dot(G * jet.fy);
  const double GG = jet.fy.dot(G * jet.fy);
  const double det = E * GG - F * F;
  if (!(E > 1e-10) || !(det > 1e-10 * std::max(1.0, E * GG))) {
    out.valid = false;
    return out;
  }

  out.f1 = jet.fx / std::sqrt(E);
  Vec4 f2 = jet.fy - (F / E) * jet.fx;
  f2 /= std::sqrt(f2.dot(G * f2));
  out.f2 = f2;

  // g-orthogonal unit normal within the tangent space of the model surface
  Vec4 n;
  if (s.kind == SpaceKind::Heisenberg) {
    const Vec3 r1 = (G * out.f1).head<3>();
    const Vec3 r2 = (G * out.f2).head<3>();
    const Vec3 n3 = r1.cross(r2);
    n = Vec4(n3[0], n3[1], n3[2], 0.0);
  } else {
    n = cross4(G * out.f1, G * out.f2, constraint_grad(s, jet.p));
  }
  const double nn = metric_norm(s, jet.p, n);
  if (!(nn > 1e-12)) {
    out.valid = false;
    return out;
  }
  n /= nn;

  // positive orientation: det[model normal | f1 | f2 | N] > 0
  double d;
  if (s.kind == SpaceKind::Heisenberg) {
    Mat3 M;
    M.col(0) = out.f1.head<3>();
    M.col(1) = out.f2.head<3>();
    M.col(2) = n.head<3>();
    d = M.determinant();
  } else {
    Mat4 M;
    M.col(0) = constraint_grad(s, jet.p);
    M.col(1) = out.f1;
    M.col(2) = out.f2;
    M.col(3) = n;
    d = M.determinant();
  }
  if (d < 0.0) n = -n;
  out.N = n;
  // J = rotation by +pi/2 in the surface orientation for which the boundary
  // curvature law k = H - <S h', J h'> reproduces the vertical cylinder's 2H
  // circle; with the det-positive normal this is J f1 = -f2.
  out.jsign = -1.0;

  const TangentVector xi = vertical_field(s, AmbientPoint(jet.p));
  out.nu = metric_eval_raw(s, jet.p, n, xi.v);
  out.T = xi.v - out.nu * n;
  return out;
}

void fill_shape_from_normals(const SpaceSpec& s, FrameSample& fs, const Vec4& dNx,
                             const Vec4& dNy) {
  const Christoffel ch = christoffel(s, fs.p);
  const Vec4 covNx = dNx + ch.apply(fs.fx, fs.N);
  const Vec4 covNy = dNy + ch.apply(fs.fy, fs.N);

  const Mat4 G = metric_matrix(s, fs.p);
  const double E = fs.fx.dot(G * fs.fx);
  const double F = fs.fx.dot(G * fs.fy);
  const double a11 = 1.0 / std::sqrt(E);
  // f2 = a21 fx + a22 fy
  Vec4 f2raw = fs.fy - (F / E) * fs.fx;
  const double w = std::sqrt(f2raw.dot(G * f2raw));
  const double a21 = -(F / E) / w, a22 = 1.0 / w;

  const Vec4 covN1 = a11 * covNx;
  const Vec4 covN2 = a21 * covNx + a22 * covNy;
  // S_ab = -g(cov_{f_b} N, f_a)
  fs.S(0, 0) = -covN1.dot(G * fs.f1);
  fs.S(1, 0) = -covN1.dot(G * fs.f2);
  fs.S(0, 1) = -covN2.dot(G * fs.f1);
  fs.S(1, 1) = -covN2.dot(G * fs.f2);
}

namespace {

Vec4 aligned_normal(const SpaceSpec& s, const ImmersedPatch& patch, double x, double y,
                    const Vec4& ref) {
  FrameSample fs = frame_at(s, patch.eval_jet(x, y));
  if (!fs.valid) return ref;
  if (fs.N.dot(ref) < 0.0) fs.N = -fs.N;
  return fs.N;
}

}  // namespace

FundamentalData fundamental_data(const ImmersedPatch& patch, int nx, int ny,
                                 NuConvention conv, bool allow_degenerate_boundary) {
  if (nx < 2 || ny < 2) throw std::invalid_argument("fundamental_data: grid too small");
  FundamentalData fd;
  fd.space = patch.space;
  fd.nx = nx;
  fd.ny = ny;
  fd.x0 = patch.x0;
  fd.y0 = patch.y0;
  fd.hx = (patch.x1 - patch.x0) / (nx - 1);
  fd.hy = (patch.y1 - patch.y0) / (ny - 1);
  fd.samples.resize(size_t(nx) * ny);

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double x = fd.x0 + i * fd.hx;
      const double y = fd.y0 + j * fd.hy;
      FrameSample fs = frame_at(patch.space, patch.eval_jet(x, y));
      if (!fs.valid) {
        const bool boundary = (i == 0 || j == 0 || i == nx - 1 || j == ny - 1);
        if (!(allow_degenerate_boundary && boundary))
          throw std::runtime_error("fundamental_data: degenerate tangent plane at grid (" +
                                   std::to_string(i) + "," + std::to_string(j) + ")");
        fd.at(i, j) = fs;
        continue;
      }
      // 4th-order central differences of the normal field
      const double h = kNormStep;
      auto dN = [&](double dx, double dy) {
        const Vec4 n2m = aligned_normal(patch.space, patch, x - 2 * h * dx, y - 2 * h * dy, fs.N);
        const Vec4 n1m = aligned_normal(patch.space, patch, x - h * dx, y - h * dy, fs.N);
        const Vec4 n1p = aligned_normal(patch.space, patch, x + h * dx, y + h * dy, fs.N);
        const Vec4 n2p = aligned_normal(patch.space, patch, x + 2 * h * dx, y + 2 * h * dy, fs.N);
        return Vec4((n2m - 8.0 * n1m + 8.0 * n1p - n2p) / (12.0 * h));
      };
      fill_shape_from_normals(patch.space, fs, dN(1.0, 0.0), dN(0.0, 1.0));
      fd.at(i, j) = fs;
    }
  }

  if (conv == NuConvention::NonPositive) {
    double mean = 0.0;
    for (const auto& fs : fd.samples)
      if (fs.valid) mean += fs.nu;
    if (mean > 0.0) {
      fd.flipped = true;
      // T = xi - nu N is unchanged when both N and nu flip
      for (auto& fs : fd.samples) {
        if (!fs.valid) continue;
        fs.N = -fs.N;
        fs.nu = -fs.nu;
        fs.S = -fs.S;
        fs.jsign = -fs.jsign;
      }
    }
  }
  return fd;
}

std::vector<double> mean_curvature(const FundamentalData& fd) {
  std::vector<double> H;
  H.reserve(fd.samples.size());
  for (const auto& fs : fd.samples)
    H.push_back(fs.valid ? 0.5 * fs.S.trace() : std::nan(""));
  return H;
}

BoundaryCurvature boundary_curvature(const FundamentalData& fd, PatchSide side, double H) {
  BoundaryCurvature bc;
  const bool along_y = (side == PatchSide::X0 || side == PatchSide::X1);
  const int n = along_y ? fd.ny : fd.nx;
  double s_acc = 0.0;
  Vec4 prev = Vec4::Zero();
  bool have_prev = false;
  for (int k = 0; k < n; ++k) {
    int i, j;
    if (side == PatchSide::X0) i = 0, j = k;
    else if (side == PatchSide::X1) i = fd.nx - 1, j = k;
    else if (side == PatchSide::Y0) i = k, j = 0;
    else i = k, j = fd.ny - 1;
    const FrameSample& fs = fd.at(i, j);
    if (!fs.valid) continue;
    const Vec4 t = along_y ? fs.fy : fs.fx;
    const Mat4 G = metric_matrix(fd.space, fs.p);
    Vec2 c(t.dot(G * fs.f1), t.dot(G * fs.f2));
    const double cn = c.norm();
    if (!(cn > 1e-12)) continue;
    c /= cn;
    const Vec2 Jc = fs.jsign * Vec2(-c[1], c[0]);
    const double k_val = H - (fs.S * c).dot(Jc);
    if (have_prev) {
      const Vec4 d = fs.p - prev;
      s_acc += metric_norm(fd.space, fs.p, d);
    }
    bc.s.push_back(s_acc);
    bc.k.push_back(k_val);
    prev = fs.p;
    have_prev = true;
  }
  return bc;
}

BoundaryCurvature boundary_curvature(const ImmersedPatch& patch, const FundamentalData& fd,
                                     PatchSide side, const GeodesicEdge& edge, double H) {
  // the edge must lie on the named patch side
  const int n = 24;
  for (int k = 0; k <= n; ++k) {
    const double t = edge.t0 + (edge.t1 - edge.t0) * k / n;
    const Vec4 q = edge.at(t);
    double best = 1e300;
    const int m = 64;
    for (int a = 0; a <= m; ++a) {
      double x, y;
      if (side == PatchSide::X0) x = patch.x0, y = patch.y0 + (patch.y1 - patch.y0) * a / m;
      else if (side == PatchSide::X1) x = patch.x1, y = patch.y0 + (patch.y1 - patch.y0) * a / m;
      else if (side == PatchSide::Y0) x = patch.x0 + (patch.x1 - patch.x0) * a / m, y = patch.y0;
      else x = patch.x0 + (patch.x1 - patch.x0) * a / m, y = patch.y1;
      best = std::min(best, (patch.map(x, y) - q).squaredNorm());
    }
    if (best > 1e-6)
      throw std::invalid_argument("boundary_curvature: edge does not lie on the patch side");
  }
  return boundary_curvature(fd, side, H);
}

SisterFamily classify_sister(double c) {
  if (!(c > -1.0 && c <= 1.0))
    throw std::invalid_argument("classify_sister: c outside (-1, 1]");
  if (c == 0.0) return SisterFamily::Sphere;
  if (c == 1.0) return SisterFamily::Cylinder;
  return c > 0.0 ? SisterFamily::Unduloid : SisterFamily::Nodoid;
}

std::string to_string(SisterFamily f) {
  switch (f) {
    case SisterFamily::Sphere: return "Sphere";
    case SisterFamily::Cylinder: return "Cylinder";
    case SisterFamily::Unduloid: return "Unduloid";
    case SisterFamily::Nodoid: return "Nodoid";
  }
  return "?";
}

}  // namespace cpc

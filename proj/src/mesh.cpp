#include "cpc/mesh.hpp"

#include <cmath>
#include <map>
#include <set>

namespace cpc {

namespace {

// section of the Hopf fibration over the base sphere minus the south pole:
// sigma(n) = (cos(t/2), sin(t/2) e^{-i phi}) for n = (sin t cos phi, sin t sin phi, cos t)
Vec4 hopf_section(const Vec3& n) {
  const double t = std::acos(std::clamp(n[2], -1.0, 1.0));
  const double c = std::cos(0.5 * t), s = std::sin(0.5 * t);
  double phi = 0.0;
  if (std::hypot(n[0], n[1]) > 1e-15) phi = std::atan2(n[1], n[0]);
  return Vec4(c, 0.0, s * std::cos(phi), -s * std::sin(phi));
}

Vec4 fiber_lift(const Vec3& n, double phi) {
  const Vec4 s = hopf_section(n);
  const double c = std::cos(phi), sn = std::sin(phi);
  return Vec4(c * s[0] - sn * s[1], sn * s[0] + c * s[1], c * s[2] - sn * s[3],
              sn * s[2] + c * s[3]);
}

double fiber_angle(const SpaceSpec& sp, const Vec4& p) {
  const Vec3 n = base_project_unit(sp, p);
  const Vec4 s = hopf_section(n);
  // arg of the hermitian product <p, s>
  const double re = p[0] * s[0] + p[1] * s[1] + p[2] * s[2] + p[3] * s[3];
  const double im = -p[0] * s[1] + p[1] * s[0] - p[2] * s[3] + p[3] * s[2];
  return std::atan2(im, re);
}

// interior base path from an equator point a to the v-fiber base q: chord
// bulged toward the pole, so the fan stays inside the quarter sphere and
// remains non-degenerate when a and q are nearly antipodal (lambda -> pi/2)
Vec3 fan_path(const Vec3& a, const Vec3& q, double f, double bulge) {
  Vec3 c = (1.0 - f) * a + f * q + bulge * std::sin(M_PI * f) * Vec3(0, 0, 1);
  const double n = c.norm();
  if (n < 1e-12) return Vec3(0, 0, 1);
  return c / n;
}

struct SideSetup {
  const GeodesicEdge* edge = nullptr;
  bool forward = true;
  Vec4 at(double f) const {
    const double t = forward ? edge->t0 + f * (edge->t1 - edge->t0)
                             : edge->t1 - f * (edge->t1 - edge->t0);
    return edge->at(t);
  }
};

// orient the edge so that side.at(0) is nearest to the given corner
SideSetup orient_side(const GeodesicEdge* e, const Vec4& start_corner) {
  SideSetup s;
  s.edge = e;
  s.forward = (e->start() - start_corner).norm() <= (e->end() - start_corner).norm();
  return s;
}

}  // namespace

int GridMesh::euler_characteristic() const {
  std::set<std::pair<int, int>> edges;
  for (const auto& f : faces)
    for (int k = 0; k < 3; ++k) {
      int a = f[k], b = f[(k + 1) % 3];
      if (a > b) std::swap(a, b);
      edges.insert({a, b});
    }
  return nverts() - int(edges.size()) + int(faces.size());
}

double GridMesh::min_triangle_quality() const {
  double worst = 1.0;
  for (const auto& f : faces) {
    const Vec4& a = verts[f[0]];
    const Vec4& b = verts[f[1]];
    const Vec4& c = verts[f[2]];
    const Vec4 m = (a + b + c) / 3.0;
    const Mat4 G = metric_matrix(space, project_to_model(space, m));
    auto len2 = [&](const Vec4& u, const Vec4& v) {
      const Vec4 d = u - v;
      return d.dot(G * d);
    };
    const double l1 = len2(a, b), l2 = len2(b, c), l3 = len2(c, a);
    const Vec4 e1 = b - a, e2 = c - a;
    const double E = e1.dot(G * e1), F = e1.dot(G * e2), GG = e2.dot(G * e2);
    const double area = 0.5 * std::sqrt(std::max(0.0, E * GG - F * F));
    const double denom = l1 + l2 + l3;
    if (denom > 0.0) worst = std::min(worst, 4.0 * std::sqrt(3.0) * area / denom);
  }
  return worst;
}

namespace {
GridMesh build_grid(const GeodesicPolygon& poly, int nu_forced, int nv_forced) {
  const GeodesicEdge* h0 = poly.find("h0");
  const GeodesicEdge* h1 = poly.find("h1");
  const GeodesicEdge* h2 = poly.find("h2");
  const GeodesicEdge* v = poly.find("v");
  if (!h0 || !h1 || !h2 || !v)
    throw std::invalid_argument("init_spanning_mesh: polygon must have edges h0,h1,h2,v");
  const SpaceSpec& sp = poly.space;

  // corners: C2 = h1^h0, C3 = h0^h2, C4 = h2^v, C1 = v^h1
  auto shared_corner = [](const GeodesicEdge* a, const GeodesicEdge* b) {
    const Vec4 cand[2] = {a->start(), a->end()};
    double best = 1e300;
    Vec4 out = cand[0];
    for (const Vec4& p : cand)
      for (const Vec4& q : {b->start(), b->end()}) {
        const double d = (p - q).norm();
        if (d < best) {
          best = d;
          out = p;
        }
      }
    return out;
  };
  const Vec4 C2 = shared_corner(h1, h0);
  const Vec4 C3 = shared_corner(h2, h0);

  const SideSetup bottom = orient_side(h0, C2);  // C2 -> C3
  const SideSetup left = orient_side(h1, C2);    // C2 -> C1
  const SideSetup right = orient_side(h2, C3);   // C3 -> C4
  const Vec4 C1 = left.at(1.0);
  const SideSetup top = orient_side(v, C1);      // C1 -> C4

  const int nu = nu_forced;
  const int nv = nv_forced;

  GridMesh m;
  m.space = sp;
  m.polygon = poly;
  m.nu = nu;
  m.nv = nv;

  const int W = nu + 1, Hn = nv + 1;
  std::vector<Vec4> logical(size_t(W) * Hn);
  std::vector<std::string> tag(size_t(W) * Hn, "");

  // boundary: exact polygon points
  for (int i = 0; i <= nu; ++i) {
    logical[i] = bottom.at(double(i) / nu);
    tag[i] = "h0";
    logical[size_t(nv) * W + i] = top.at(double(i) / nu);
    tag[size_t(nv) * W + i] = "v";
  }
  for (int j = 1; j < nv; ++j) {
    logical[size_t(j) * W] = left.at(double(j) / nv);
    tag[size_t(j) * W] = "h1";
    logical[size_t(j) * W + nu] = right.at(double(j) / nv);
    tag[size_t(j) * W + nu] = "h2";
  }

  if (sp.kind == SpaceKind::BergerSphere) {
    // fan of base geodesics from the h0 arc to the v fiber's base point,
    // fiber angles by a Coons patch of the boundary angles
    const Vec3 q = base_project_unit(sp, top.at(0.5));
    std::vector<double> phi(size_t(W) * Hn, 0.0);
    std::vector<double> pb(W), pt(W), pl(Hn), pr(Hn);
    for (int i = 0; i <= nu; ++i) pb[i] = fiber_angle(sp, logical[i]);
    unwrap_angles(pb);
    for (int j = 0; j <= nv; ++j) pr[j] = fiber_angle(sp, logical[size_t(j) * W + nu]);
    pr[0] = pb[nu];
    unwrap_angles(pr);
    for (int i = 0; i <= nu; ++i) pt[i] = fiber_angle(sp, logical[size_t(nv) * W + i]);
    pt[nu] = pr[nv];
    for (int i = nu - 1; i >= 0; --i)
      while (pt[i] - pt[i + 1] > M_PI) pt[i] -= 2 * M_PI;
    for (int i = nu - 1; i >= 0; --i)
      while (pt[i] - pt[i + 1] < -M_PI) pt[i] += 2 * M_PI;
    for (int j = 0; j <= nv; ++j) pl[j] = fiber_angle(sp, logical[size_t(j) * W]);
    pl[nv] = pt[0];
    for (int j = nv - 1; j >= 0; --j) {
      while (pl[j] - pl[j + 1] > M_PI) pl[j] -= 2 * M_PI;
      while (pl[j] - pl[j + 1] < -M_PI) pl[j] += 2 * M_PI;
    }

    // pole-ward bulge, monotone in the column longitude so the fan is nested;
    // strongest when q sits near the equator (lambda -> pi/2)
    const double bulge_scale = 0.2 + 0.8 * (1.0 - std::clamp(q[2], 0.0, 1.0));
    for (int j = 1; j < nv; ++j) {
      const double s = double(j) / nv;
      for (int i = 1; i < nu; ++i) {
        const double r = double(i) / nu;
        const Vec3 base_i = base_project_unit(sp, logical[i]);
        const double u_i = std::atan2(std::max(0.0, base_i[1]), base_i[0]);
        const double half = std::sin(0.5 * u_i);
        const double bulge = bulge_scale * half * half;
        const Vec3 B = fan_path(base_i, q, s, bulge);
        const double f = (1 - s) * pb[i] + s * pt[i] + (1 - r) * pl[j] + r * pr[j] -
                         ((1 - r) * (1 - s) * pb[0] + r * (1 - s) * pb[nu] +
                          (1 - r) * s * pt[0] + r * s * pt[nu]);
        logical[size_t(j) * W + i] = fiber_lift(B, f);
      }
    }
  } else if (sp.kind == SpaceKind::Heisenberg) {
    for (int j = 1; j < nv; ++j) {
      const double s = double(j) / nv;
      for (int i = 1; i < nu; ++i) {
        const double r = double(i) / nu;
        const Vec2 B = (1.0 - s) * logical[i].head<2>();  // fan toward the origin
        const double z = (1 - s) * logical[i][2] + s * logical[size_t(nv) * W + i][2] +
                         (1 - r) * logical[size_t(j) * W][2] +
                         r * logical[size_t(j) * W + nu][2] -
                         ((1 - r) * (1 - s) * logical[0][2] + r * (1 - s) * logical[nu][2] +
                          (1 - r) * s * logical[size_t(nv) * W][2] +
                          r * s * logical[size_t(nv) * W + nu][2]);
        logical[size_t(j) * W + i] = Vec4(B[0], B[1], z, 0.0);
      }
    }
  } else {
    throw std::invalid_argument("init_spanning_mesh: unsupported space");
  }

  // detect degenerate grid sides and merge their vertices
  auto side_degenerate = [&](auto idx) {
    Vec4 first = logical[idx(0)];
    double worst = 0.0;
    for (int k = 0; k <= ((idx(1) - idx(0)) == 1 ? nu : nv); ++k)
      worst = std::max(worst, (logical[idx(k)] - first).norm());
    return worst < 1e-10;
  };
  auto bottom_idx = [&](int k) { return size_t(k); };
  auto top_idx = [&](int k) { return size_t(nv) * W + k; };
  auto left_idx = [&](int k) { return size_t(k) * W; };
  auto right_idx = [&](int k) { return size_t(k) * W + nu; };
  const bool deg_bottom = side_degenerate(bottom_idx);
  const bool deg_top = side_degenerate(top_idx);
  const bool deg_left = side_degenerate(left_idx);
  const bool deg_right = side_degenerate(right_idx);

  m.vid.assign(size_t(W) * Hn, -1);
  auto commit = [&](size_t li) {
    if (m.vid[li] >= 0) return m.vid[li];
    m.verts.push_back(logical[li]);
    m.boundary_tag.push_back(tag[li]);
    m.fixed.push_back(tag[li].empty() ? 0 : 1);
    m.vid[li] = m.nverts() - 1;
    return m.vid[li];
  };
  // merged sides share one vertex
  if (deg_bottom)
    for (int i = 1; i <= nu; ++i) m.vid[bottom_idx(i)] = commit(bottom_idx(0));
  if (deg_top)
    for (int i = 1; i <= nu; ++i) m.vid[top_idx(i)] = commit(top_idx(0));
  if (deg_left)
    for (int j = 1; j <= nv; ++j) m.vid[left_idx(j)] = commit(left_idx(0));
  if (deg_right)
    for (int j = 1; j <= nv; ++j) m.vid[right_idx(j)] = commit(right_idx(0));
  for (int j = 0; j <= nv; ++j)
    for (int i = 0; i <= nu; ++i) commit(size_t(j) * W + i);

  for (int j = 0; j < nv; ++j)
    for (int i = 0; i < nu; ++i) {
      const int a = m.id(i, j), b = m.id(i + 1, j), c = m.id(i + 1, j + 1), d = m.id(i, j + 1);
      if (a != b && b != c && a != c) m.faces.push_back({a, b, c});
      if (a != c && c != d && a != d) m.faces.push_back({a, c, d});
    }
  return m;
}
}  // namespace

GridMesh init_spanning_mesh(const GeodesicPolygon& poly, int resolution) {
  if (resolution < 4) throw std::invalid_argument("init_spanning_mesh: resolution < 4");
  const GeodesicEdge* h0 = poly.find("h0");
  const GeodesicEdge* h1 = poly.find("h1");
  const GeodesicEdge* h2 = poly.find("h2");
  const GeodesicEdge* v = poly.find("v");
  if (!h0 || !h1 || !h2 || !v)
    throw std::invalid_argument("init_spanning_mesh: polygon must have edges h0,h1,h2,v");
  const SpaceSpec& sp = poly.space;
  // boundary vertex counts per edge pair proportional to arc length
  const double Lh0 = curve_length(sp, h0->curve, h0->t0, h0->t1);
  const double Lh1 = curve_length(sp, h1->curve, h1->t0, h1->t1);
  const double Lh2 = curve_length(sp, h2->curve, h2->t0, h2->t1);
  const double Lv = curve_length(sp, v->curve, v->t0, v->t1);
  const int nv = std::max(4, int(std::lround(resolution * (Lh1 + Lh2) /
                                             std::max(1e-12, Lh0 + Lv))));
  return build_grid(poly, resolution, nv);
}

GridMesh refine_mesh(const GridMesh& mesh) {
  GridMesh fine = build_grid(mesh.polygon, 2 * mesh.nu, 2 * mesh.nv);
  // warm start the interior from the coarse solution
  for (int j = 1; j < fine.nv; ++j)
    for (int i = 1; i < fine.nu; ++i) {
      const int ci = i / 2, cj = j / 2;
      Vec4 p;
      if (i % 2 == 0 && j % 2 == 0)
        p = mesh.verts[mesh.id(ci, cj)];
      else if (i % 2 == 1 && j % 2 == 0)
        p = 0.5 * (mesh.verts[mesh.id(ci, cj)] + mesh.verts[mesh.id(ci + 1, cj)]);
      else if (i % 2 == 0)
        p = 0.5 * (mesh.verts[mesh.id(ci, cj)] + mesh.verts[mesh.id(ci, cj + 1)]);
      else
        p = 0.25 * (mesh.verts[mesh.id(ci, cj)] + mesh.verts[mesh.id(ci + 1, cj)] +
                    mesh.verts[mesh.id(ci, cj + 1)] + mesh.verts[mesh.id(ci + 1, cj + 1)]);
      fine.verts[fine.id(i, j)] = project_to_model(fine.space, p);
    }
  return fine;
}

double mesh_area(const GridMesh& mesh) { return mesh_area_with(mesh, mesh.verts); }

double mesh_area_with(const GridMesh& mesh, const std::vector<Vec4>& verts) {
  const int F = int(mesh.faces.size());
  std::vector<double> fa(F);
#pragma omp parallel for schedule(static)
  for (int f = 0; f < F; ++f) {
    const auto& tri = mesh.faces[f];
    const Vec4& A = verts[tri[0]];
    const Vec4& B = verts[tri[1]];
    const Vec4& C = verts[tri[2]];
    const Vec4 e1 = B - A, e2 = C - A;
    double acc = 0.0;
    for (int q = 0; q < 3; ++q) {
      const Vec4& P = verts[tri[q]];
      const Mat4 G = metric_matrix(mesh.space, P);
      const double E = e1.dot(G * e1), Fm = e1.dot(G * e2), GG = e2.dot(G * e2);
      acc += 0.5 * std::sqrt(std::max(0.0, E * GG - Fm * Fm));
    }
    fa[f] = acc / 3.0;
  }
  double total = 0.0;
  for (int f = 0; f < F; ++f) total += fa[f];  // fixed order: deterministic
  return total;
}

void mesh_area_gradient(const GridMesh& mesh, std::vector<Vec4>& grad) {
  const int F = int(mesh.faces.size());
  std::vector<std::array<Vec4, 3>> fgrad(F);
#pragma omp parallel for schedule(static)
  for (int f = 0; f < F; ++f) {
    const auto& tri = mesh.faces[f];
    const Vec4& A = mesh.verts[tri[0]];
    const Vec4& B = mesh.verts[tri[1]];
    const Vec4& C = mesh.verts[tri[2]];
    const Vec4 e1 = B - A, e2 = C - A;
    std::array<Vec4, 3> g{Vec4::Zero(), Vec4::Zero(), Vec4::Zero()};
    for (int q = 0; q < 3; ++q) {
      const Vec4& P = mesh.verts[tri[q]];
      const Mat4 G = metric_matrix(mesh.space, P);
      const Vec4 Ge1 = G * e1, Ge2 = G * e2;
      const double E = e1.dot(Ge1), Fm = e1.dot(Ge2), GG = e2.dot(Ge2);
      const double D = std::max(1e-300, E * GG - Fm * Fm);
      const double a = 0.5 * std::sqrt(D);
      const double w = 1.0 / (8.0 * a) / 3.0;
      // dD through the edge vectors
      const Vec4 dD_e1 = 2.0 * (GG * Ge1 - Fm * Ge2);
      const Vec4 dD_e2 = 2.0 * (E * Ge2 - Fm * Ge1);
      g[0] += w * (-dD_e1 - dD_e2);
      g[1] += w * dD_e1;
      g[2] += w * dD_e2;
      // dD through the metric base point (only the q-th vertex)
      const Mat4 dG[4] = {metric_matrix_deriv(mesh.space, P, Vec4(1, 0, 0, 0)),
                          metric_matrix_deriv(mesh.space, P, Vec4(0, 1, 0, 0)),
                          metric_matrix_deriv(mesh.space, P, Vec4(0, 0, 1, 0)),
                          metric_matrix_deriv(mesh.space, P, Vec4(0, 0, 0, 1))};
      Vec4 dD_p;
      for (int mu = 0; mu < 4; ++mu) {
        const double dE = e1.dot(dG[mu] * e1);
        const double dF = e1.dot(dG[mu] * e2);
        const double dGG = e2.dot(dG[mu] * e2);
        dD_p[mu] = dE * GG + E * dGG - 2.0 * Fm * dF;
      }
      g[q] += w * dD_p;
    }
    fgrad[f] = g;
  }
  grad.assign(mesh.nverts(), Vec4::Zero());
  for (int f = 0; f < F; ++f)
    for (int k = 0; k < 3; ++k) grad[mesh.faces[f][k]] += fgrad[f][k];
}

FundamentalData mesh_fundamental_data(const GridMesh& mesh, NuConvention conv) {
  const int W = mesh.nu + 1, Hn = mesh.nv + 1;
  FundamentalData fd;
  fd.space = mesh.space;
  fd.nx = W;
  fd.ny = Hn;
  fd.hx = 1.0;
  fd.hy = 1.0;
  fd.samples.resize(size_t(W) * Hn);

  auto P = [&](int i, int j) { return mesh.verts[mesh.id(i, j)]; };
  auto d_i = [&](int i, int j) -> Vec4 {
    if (i > 0 && i < mesh.nu) return 0.5 * (P(i + 1, j) - P(i - 1, j));
    if (i == 0) return -1.5 * P(0, j) + 2.0 * P(1, j) - 0.5 * P(2, j);
    return 1.5 * P(mesh.nu, j) - 2.0 * P(mesh.nu - 1, j) + 0.5 * P(mesh.nu - 2, j);
  };
  auto d_j = [&](int i, int j) -> Vec4 {
    if (j > 0 && j < mesh.nv) return 0.5 * (P(i, j + 1) - P(i, j - 1));
    if (j == 0) return -1.5 * P(i, 0) + 2.0 * P(i, 1) - 0.5 * P(i, 2);
    return 1.5 * P(i, mesh.nv) - 2.0 * P(i, mesh.nv - 1) + 0.5 * P(i, mesh.nv - 2);
  };

  // frames first
  for (int j = 0; j < Hn; ++j)
    for (int i = 0; i < W; ++i) {
      SurfJet jet;
      jet.p = P(i, j);
      jet.fx = d_i(i, j);
      jet.fy = d_j(i, j);
      fd.at(i, j) = frame_at(mesh.space, jet);
    }

  // orient the normal field coherently (frame_at is already deterministic,
  // but guard against isolated flips near degenerate samples)
  // then differentiate N over the grid for the shape operator
  auto Nfield = [&](int i, int j, const Vec4& ref) -> Vec4 {
    const FrameSample& fs = fd.at(std::clamp(i, 0, W - 1), std::clamp(j, 0, Hn - 1));
    if (!fs.valid) return ref;
    return (fs.N.dot(ref) < 0.0) ? Vec4(-fs.N) : fs.N;
  };
  for (int j = 0; j < Hn; ++j)
    for (int i = 0; i < W; ++i) {
      FrameSample& fs = fd.at(i, j);
      if (!fs.valid) continue;
      Vec4 dNx, dNy;
      if (i > 0 && i < W - 1)
        dNx = 0.5 * (Nfield(i + 1, j, fs.N) - Nfield(i - 1, j, fs.N));
      else if (i == 0)
        dNx = -1.5 * Nfield(0, j, fs.N) + 2.0 * Nfield(1, j, fs.N) - 0.5 * Nfield(2, j, fs.N);
      else
        dNx = 1.5 * Nfield(i, j, fs.N) - 2.0 * Nfield(i - 1, j, fs.N) +
              0.5 * Nfield(i - 2, j, fs.N);
      if (j > 0 && j < Hn - 1)
        dNy = 0.5 * (Nfield(i, j + 1, fs.N) - Nfield(i, j - 1, fs.N));
      else if (j == 0)
        dNy = -1.5 * Nfield(i, 0, fs.N) + 2.0 * Nfield(i, 1, fs.N) - 0.5 * Nfield(i, 2, fs.N);
      else
        dNy = 1.5 * Nfield(i, j, fs.N) - 2.0 * Nfield(i, j - 1, fs.N) +
              0.5 * Nfield(i, j - 2, fs.N);
      fill_shape_from_normals(mesh.space, fs, dNx, dNy);
    }

  if (conv == NuConvention::NonPositive) {
    double mean = 0.0;
    for (const auto& fs : fd.samples)
      if (fs.valid) mean += fs.nu;
    if (mean > 0.0) {
      fd.flipped = true;
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

std::vector<double> fiber_heights(const GridMesh& mesh) {
  std::vector<double> out(mesh.nverts(), 0.0);
  if (mesh.space.kind == SpaceKind::Heisenberg) {
    for (int k = 0; k < mesh.nverts(); ++k) out[k] = mesh.verts[k][2];
    return out;
  }
  const int W = mesh.nu + 1;
  std::vector<double> phi(size_t(W) * (mesh.nv + 1), 0.0);
  for (int j = 0; j <= mesh.nv; ++j)
    for (int i = 0; i <= mesh.nu; ++i)
      phi[size_t(j) * W + i] = fiber_angle(mesh.space, mesh.verts[mesh.id(i, j)]);
  // unwrap: along the h0 row, then column-wise
  {
    std::vector<double> row(phi.begin(), phi.begin() + W);
    unwrap_angles(row);
    std::copy(row.begin(), row.end(), phi.begin());
  }
  for (int j = 1; j <= mesh.nv; ++j)
    for (int i = 0; i <= mesh.nu; ++i) {
      double& a = phi[size_t(j) * W + i];
      const double prev = phi[size_t(j - 1) * W + i];
      while (a - prev > M_PI) a -= 2 * M_PI;
      while (a - prev < -M_PI) a += 2 * M_PI;
    }
  for (int j = 0; j <= mesh.nv; ++j)
    for (int i = 0; i <= mesh.nu; ++i) out[mesh.id(i, j)] = phi[size_t(j) * W + i];
  return out;
}

GraphCheck graph_check(const GridMesh& mesh) {
  GraphCheck gc;
  int folds = 0;
  double violation = 0.0;

  auto on_top_row = [&](int vid_) {
    for (int i = 0; i <= mesh.nu; ++i)
      if (mesh.id(i, mesh.nv) == vid_) return true;
    return false;
  };

  if (mesh.space.kind == SpaceKind::BergerSphere) {
    for (int k = 0; k < mesh.nverts(); ++k) {
      const Vec3 b = base_project_unit(mesh.space, mesh.verts[k]);
      violation = std::max(violation, std::max(-b[1], -b[2]));
    }
    std::vector<double> dets;
    for (const auto& f : mesh.faces) {
      int top_count = 0;
      for (int k = 0; k < 3; ++k)
        if (on_top_row(f[k])) ++top_count;
      if (top_count >= 2) {  // fan cells around the v fiber
        dets.push_back(0.0);
        continue;
      }
      Mat3 M;
      for (int k = 0; k < 3; ++k) M.col(k) = base_project_unit(mesh.space, mesh.verts[f[k]]);
      dets.push_back(M.determinant());
    }
    double dmax = 0.0;
    for (double d : dets) dmax = std::max(dmax, std::abs(d));
    const double floor = 1e-3 * dmax;  // near-degenerate bases carry no sign
    double sign_ref = 0.0;
    for (double d : dets) {
      if (std::abs(d) < floor) continue;
      if (sign_ref == 0.0) sign_ref = d > 0 ? 1.0 : -1.0;
      if (d * sign_ref < 0.0) ++folds;
    }
  } else {
    const double ell = mesh.polygon.params.count("ell") ? mesh.polygon.params.at("ell") : 0.0;
    const double alpha =
        mesh.polygon.params.count("alpha") ? mesh.polygon.params.at("alpha") : M_PI_4;
    const double ct = 1.0 / std::tan(alpha);
    for (int k = 0; k < mesh.nverts(); ++k) {
      const double x = mesh.verts[k][0], y = mesh.verts[k][1];
      violation = std::max(violation, std::max({-x, x - ell, -y, y - x * ct}));
    }
    std::vector<double> dets;
    for (const auto& f : mesh.faces) {
      int top_count = 0;
      for (int k = 0; k < 3; ++k)
        if (on_top_row(f[k])) ++top_count;
      if (top_count >= 2) {
        dets.push_back(0.0);
        continue;
      }
      const Vec2 a = mesh.verts[f[0]].head<2>();
      const Vec2 b = mesh.verts[f[1]].head<2>();
      const Vec2 c = mesh.verts[f[2]].head<2>();
      dets.push_back((b - a)[0] * (c - a)[1] - (b - a)[1] * (c - a)[0]);
    }
    double dmax = 0.0;
    for (double d : dets) dmax = std::max(dmax, std::abs(d));
    const double floor = 1e-3 * dmax;
    double sign_ref = 0.0;
    for (double d : dets) {
      if (std::abs(d) < floor) continue;
      if (sign_ref == 0.0) sign_ref = d > 0 ? 1.0 : -1.0;
      if (d * sign_ref < 0.0) ++folds;
    }
  }
  gc.folded_faces = folds;
  gc.base_domain_violation = std::max(0.0, violation);
  gc.is_graph = (folds == 0) && violation < 1e-6;
  return gc;
}

double max_boundary_tag_distance(const GridMesh& mesh) {
  double worst = 0.0;
  for (int k = 0; k < mesh.nverts(); ++k) {
    if (!mesh.fixed[k]) continue;
    const GeodesicEdge* e = mesh.polygon.find(mesh.boundary_tag[k]);
    if (!e) continue;
    double best = 1e300, tbest = e->t0;
    for (int a = 0; a <= 256; ++a) {
      const double t = e->t0 + (e->t1 - e->t0) * a / 256.0;
      const double d = (e->at(t) - mesh.verts[k]).norm();
      if (d < best) {
        best = d;
        tbest = t;
      }
    }
    double step = (e->t1 - e->t0) / 256.0;
    for (int it = 0; it < 60 && step > 0; ++it) {
      bool improved = false;
      for (double t : {tbest - step, tbest + step}) {
        const double tc = std::clamp(t, e->t0, e->t1);
        const double d = (e->at(tc) - mesh.verts[k]).norm();
        if (d < best) {
          best = d;
          tbest = tc;
          improved = true;
        }
      }
      if (!improved) step *= 0.5;
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace cpc

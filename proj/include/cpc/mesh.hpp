#ifndef CPC_MESH_HPP
#define CPC_MESH_HPP

#include <array>
#include <string>
#include <vector>

#include "cpc/patch.hpp"
#include "cpc/polygons.hpp"
#include "cpc/spaces.hpp"

namespace cpc {

// Triangulated disk spanning a geodesic quadrilateral, built on a structured
// (nu+1) x (nv+1) grid. Grid layout shared by the Berger and Nil families:
//   bottom row (j=0): h0,  top row (j=nv): v,  left (i=0): h1,  right: h2.
// Degenerate polygon sides collapse a grid side to a single vertex (fan).
struct GridMesh {
  SpaceSpec space;
  int nu = 0, nv = 0;
  std::vector<Vec4> verts;
  std::vector<std::array<int, 3>> faces;
  std::vector<int> vid;               // logical (i,j) -> vertex id
  std::vector<uint8_t> fixed;         // boundary flag per vertex
  std::vector<std::string> boundary_tag;  // edge label per vertex, "" interior
  GeodesicPolygon polygon;            // the spanning contour

  int id(int i, int j) const { return vid[size_t(j) * (nu + 1) + i]; }
  int nverts() const { return int(verts.size()); }
  int euler_characteristic() const;
  double min_triangle_quality() const;
};

// Disk mesh with boundary exactly on the polygon and interior initialized as
// the vertical graph over the base domain interpolating boundary heights.
GridMesh init_spanning_mesh(const GeodesicPolygon& poly, int resolution);

// Refine by doubling both grid resolutions; boundary resampled exactly on the
// polygon, interior warm-started by averaging.
GridMesh refine_mesh(const GridMesh& mesh);

double mesh_area(const GridMesh& mesh);
// area evaluated with alternate vertex positions (line searches)
double mesh_area_with(const GridMesh& mesh, const std::vector<Vec4>& verts);
// dArea/dvertex in model coordinates (not yet tangent-projected).
void mesh_area_gradient(const GridMesh& mesh, std::vector<Vec4>& grad);

// Daniel data on the mesh via grid finite differences of vertex positions.
FundamentalData mesh_fundamental_data(const GridMesh& mesh,
                                      NuConvention conv = NuConvention::NonPositive);

// Unit-base fiber coordinates of a Berger graph mesh: per-vertex fiber angle
// relative to the reference section over the quarter sphere, unwrapped from
// the h0 row; Nil meshes return the z coordinate.
std::vector<double> fiber_heights(const GridMesh& mesh);

struct GraphCheck {
  bool is_graph = false;
  double base_domain_violation = 0.0;  // signed distance outside the base domain
  int folded_faces = 0;
};
GraphCheck graph_check(const GridMesh& mesh);

// per-vertex boundary distance to the tagged polygon edge (validation)
double max_boundary_tag_distance(const GridMesh& mesh);

}  // namespace cpc

#endif

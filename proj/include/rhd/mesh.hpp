#pragma once

#include <array>
#include <functional>

#include "rhd/state.hpp"

namespace rhd {

enum class Boundary { periodic, outflow, reflective, inflow };

/// Boundary condition of one side of the domain. For inflow boundaries the
/// exterior trace is produced by `state`, a function of the face position
/// and the interior trace, so mixed inlet/outflow sides (jet nozzles) are
/// expressible with a single spec.
template <int Dim>
struct BoundarySpec {
  Boundary tag = Boundary::periodic;
  std::function<Cons<double, Dim>(const Vec<double, Dim>&,
                                  const Cons<double, Dim>&)>
      state;
};

/// Uniform Cartesian mesh on a box.
template <int Dim>
struct Mesh {
  std::array<double, Dim> lo{};
  std::array<double, Dim> hi{};
  std::array<int, Dim> cells{};
  std::array<std::array<BoundarySpec<Dim>, 2>, Dim> boundary{};

  double dx(int axis) const { return (hi[axis] - lo[axis]) / cells[axis]; }

  int num_cells() const {
    int n = 1;
    for (int a = 0; a < Dim; ++a) n *= cells[a];
    return n;
  }

  void validate() const {
    for (int a = 0; a < Dim; ++a) {
      if (cells[a] < 1 || !(hi[a] > lo[a])) {
        throw ConfigError("Mesh: need positive extents and counts >= 1");
      }
      const bool lo_periodic = boundary[a][0].tag == Boundary::periodic;
      const bool hi_periodic = boundary[a][1].tag == Boundary::periodic;
      if (lo_periodic != hi_periodic) {
        throw ConfigError("Mesh: periodic boundaries must come in pairs");
      }
    }
  }
};

inline Mesh<1> make_mesh_1d(double lo, double hi, int n,
                            Boundary bc = Boundary::periodic) {
  Mesh<1> mesh;
  mesh.lo = {lo};
  mesh.hi = {hi};
  mesh.cells = {n};
  mesh.boundary[0][0].tag = bc;
  mesh.boundary[0][1].tag = bc;
  return mesh;
}

inline Mesh<2> make_mesh_2d(std::array<double, 2> lo, std::array<double, 2> hi,
                            std::array<int, 2> n,
                            Boundary bc = Boundary::periodic) {
  Mesh<2> mesh;
  mesh.lo = lo;
  mesh.hi = hi;
  mesh.cells = n;
  for (int a = 0; a < 2; ++a) {
    mesh.boundary[a][0].tag = bc;
    mesh.boundary[a][1].tag = bc;
  }
  return mesh;
}

/// Physical coordinates of a reference point inside cell `c` (flat index,
/// x fastest in 2D).
template <int Dim>
Vec<double, Dim> cell_position(const Mesh<Dim>& mesh, int c,
                               const Vec<double, Dim>& ref) {
  Vec<double, Dim> pos;
  if constexpr (Dim == 1) {
    pos[0] = mesh.lo[0] + (c + 0.5 * (1.0 + ref[0])) * mesh.dx(0);
  } else {
    const int i = c % mesh.cells[0];
    const int j = c / mesh.cells[0];
    pos[0] = mesh.lo[0] + (i + 0.5 * (1.0 + ref[0])) * mesh.dx(0);
    pos[1] = mesh.lo[1] + (j + 0.5 * (1.0 + ref[1])) * mesh.dx(1);
  }
  return pos;
}

}  // namespace rhd

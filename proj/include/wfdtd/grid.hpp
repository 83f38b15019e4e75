#pragma once

#include <cstddef>
#include <vector>

#include "wfdtd/vec3.hpp"

namespace wfdtd {

enum class Boundary { Periodic, Pml };

// Uniform staggered Yee lattice of nx*ny*nz cells. Each field component is
// stored as one contiguous (nx, ny, nz) array with k fastest. Component
// positions relative to node (i, j, k):
//   Ex, Jx: (i+1/2, j, k)    Hx: (i, j+1/2, k+1/2)
//   Ey, Jy: (i, j+1/2, k)    Hy: (i+1/2, j, k+1/2)
//   Ez, Jz: (i, j, k+1/2)    Hz: (i+1/2, j+1/2, k)
// Periodic grids wrap indices; Pml grids read missing neighbors as zero and
// hold tangential E at the low-side walls at zero (PEC box behind the layer).
struct GridSpec {
    int nx = 0;
    int ny = 0;
    int nz = 0;
    double dx = 0.0;
    double dy = 0.0;
    double dz = 0.0;
    Boundary boundary = Boundary::Periodic;
    int pml_cells = 0;  // absorbing-layer thickness per side (Pml boundary only)
    Vec3 origin = {0.0, 0.0, 0.0};

    std::size_t cells() const { return std::size_t(nx) * ny * nz; }
    double cell_volume() const { return dx * dy * dz; }
    double spacing(int axis) const { return axis == 0 ? dx : (axis == 1 ? dy : dz); }
    int count(int axis) const { return axis == 0 ? nx : (axis == 1 ? ny : nz); }

    std::size_t idx(int i, int j, int k) const {
        return (std::size_t(i) * ny + j) * nz + k;
    }

    // Physical coordinate of the edge-centered sample (i, j, k) of component
    // `axis` (0=x, 1=y, 2=z): +1/2 stagger along the component's own axis.
    Vec3 edge_position(int axis, int i, int j, int k) const {
        Vec3 p = {origin[0] + i * dx, origin[1] + j * dy, origin[2] + k * dz};
        p[axis] += 0.5 * spacing(axis);
        return p;
    }

    void validate() const;  // throws ConfigError
};

struct ScalarField {
    int nx = 0, ny = 0, nz = 0;
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(const GridSpec& g) : nx(g.nx), ny(g.ny), nz(g.nz), v(g.cells(), 0.0) {}

    double& at(int i, int j, int k) { return v[(std::size_t(i) * ny + j) * nz + k]; }
    double at(int i, int j, int k) const { return v[(std::size_t(i) * ny + j) * nz + k]; }
    void fill(double s) { std::fill(v.begin(), v.end(), s); }
};

// Three same-shaped component arrays; the staggering is implied by use.
struct VecField {
    ScalarField x, y, z;

    VecField() = default;
    explicit VecField(const GridSpec& g) : x(g), y(g), z(g) {}

    ScalarField& comp(int axis) { return axis == 0 ? x : (axis == 1 ? y : z); }
    const ScalarField& comp(int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
    void fill(double s) { x.fill(s); y.fill(s); z.fill(s); }
};

struct YeeFields {
    VecField E, H, J;

    YeeFields() = default;
    explicit YeeFields(const GridSpec& g) : E(g), H(g), J(g) {}
};

// Mimetic staggered operators. All are linear; on periodic grids curl_E and
// curl_H are mutual adjoints under inner_h, div_edge(curl_H(.)) == 0
// identically, and gradients are inner_h-orthogonal to curls.
VecField curl_E(const VecField& e, const GridSpec& g);
VecField curl_H(const VecField& h, const GridSpec& g);
ScalarField div_edge(const VecField& f, const GridSpec& g);
VecField grad_node(const ScalarField& phi, const GridSpec& g);

// dx*dy*dz-weighted l2 inner product summed over all three components.
double inner_h(const VecField& a, const VecField& b, const GridSpec& g);

// Node-scalar inner product with the same volume weight.
double inner_nodes(const ScalarField& a, const ScalarField& b, const GridSpec& g);

double max_abs(const ScalarField& f);
double max_abs(const VecField& f);

}  // namespace wfdtd

#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "wfdtd/delta_kernel.hpp"
#include "wfdtd/grid.hpp"
#include "wfdtd/wire.hpp"

namespace wfdtd {

// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
// on the Legendre recurrence.
struct GaussRule {
    std::vector<double> node;
    std::vector<double> weight;
    static const GaussRule& of(int points);  // cached per order
};

struct QuadratureOptions {
    // Gauss points per subinterval; 0 picks the smallest count exact for the
    // kernel's polynomial degree plus one-point margin.
    int gauss_points = 0;
    // When false, each panel is integrated with a single Gauss interval of
    // the same total point count instead of splitting at kernel breakpoints.
    // This breaks the exactness that charge conservation depends on; it
    // exists as a negative control.
    bool split_at_breakpoints = true;
};

// Parameters along a panel at which the integrand changes polynomial piece:
// every crossing of a grid plane on which some kernel factor has a knot,
// deduplicated within 1e-13 * panel length, with 0 and the panel length
// always included. Directions with zero tangent component contribute no
// crossings.
std::vector<double> panel_breakpoints(const Vec3& start, const Vec3& tangent, double len,
                                      const DeltaKernel& kernel, const GridSpec& grid);

// Precomputed sparse coupling weights shared by deposition and
// interpolation:
//   w[q, edge, axis] = integral over panel q of tau_axis * delta_h(x_edge - X(s)) ds,
// evaluated exactly by composite Gauss-Legendre quadrature between kernel
// breakpoints. Deposition is J_axis(edge) = sum_q I_q w; interpolation is
// e_tan_q = (cell_volume / len_q) * sum_{edge,axis} w E_axis(edge), which
// makes the two operators exact adjoints of each other under the grid and
// wire inner products.
class CouplingTable {
  public:
    struct Entry {
        std::size_t flat;
        double w;
    };

    static CouplingTable build(const WirePath& path, const DeltaKernel& kernel, const GridSpec& grid,
                               const QuadratureOptions& opts = {});

    int panel_count() const { return int(panel_len_.size()); }
    double cell_volume() const { return cell_volume_; }
    const std::vector<Entry>& entries(int axis, int panel) const { return comp_[axis][panel]; }

    // Scatter panel currents to edge-centered current density. Touched edges
    // are zeroed first; everything else in J is left alone.
    void deposit(std::span<const double> current, VecField& j) const;

    // Gather the tangential electric field onto panels (V/m).
    void interpolate(const VecField& e, std::span<double> e_tan) const;

    // Debug listing: panel, component, i, j, k, weight.
    void dump_csv(std::ostream& os) const;

  private:
    std::array<std::vector<std::vector<Entry>>, 3> comp_;
    std::array<std::vector<std::size_t>, 3> touched_;  // sorted unique edge indices
    std::vector<double> panel_len_;
    double cell_volume_ = 0.0;
    int ny_ = 0, nz_ = 0;
};

// Smallest Gauss point count that integrates the coupling integrand exactly,
// plus a one-point margin.
int default_gauss_points(const DeltaKernel& kernel);

}  // namespace wfdtd

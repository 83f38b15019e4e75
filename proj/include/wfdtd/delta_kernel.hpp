#pragma once

#include <array>
#include <string>
#include <vector>

#include "wfdtd/bspline.hpp"
#include "wfdtd/vec3.hpp"

namespace wfdtd {

enum class DeltaKind { Composite, Isotropic };

// Regularized delta function used to couple wire and grid. The composite
// family of order n uses BS_n along the deposited component's staggered
// direction and BS_{n+1} along the two node-aligned directions, which is the
// pairing that makes a constant closed-loop current deposit a discretely
// divergence-free field. The isotropic kernel uses BS_1 in all three
// directions and deliberately lacks that property; it serves as a control.
class DeltaKernel {
  public:
    static DeltaKernel composite(int order);
    static DeltaKernel isotropic();

    DeltaKind kind() const { return kind_; }
    int order() const { return order_; }  // staggered-direction order (composite only)
    std::string name() const;             // "bs0", "bs2", ... or "iso"

    // 1-D factor applied along `direction` when depositing component `component`.
    const BSpline& factor(int component, int direction) const {
        return (kind_ == DeltaKind::Isotropic || direction != component) ? aligned_ : staggered_;
    }

    // Tensor-product value divided by the cell volume; offsets in cell units.
    double weight(int component, const Vec3& offset_cells, double cell_volume) const {
        const BSpline& fx = factor(component, 0);
        const BSpline& fy = factor(component, 1);
        const BSpline& fz = factor(component, 2);
        return fx(offset_cells[0]) * fy(offset_cells[1]) * fz(offset_cells[2]) / cell_volume;
    }

    // Half-width of the support per direction, in cell units.
    std::array<double, 3> support_extent(int component) const {
        return {factor(component, 0).support_half_width(), factor(component, 1).support_half_width(),
                factor(component, 2).support_half_width()};
    }

    // Kernel-argument knots of the factor selected by (component, direction).
    const std::vector<double>& breakpoints_1d(int component, int direction) const {
        return factor(component, direction).knots();
    }

    // Fractional positions (mod 1, cell units) of the grid planes whose
    // crossing by a wire lands the kernel argument on a knot, for any
    // deposited component; union over components and both factor families.
    std::vector<double> plane_residues(int direction) const;

  private:
    DeltaKind kind_ = DeltaKind::Composite;
    int order_ = 0;
    BSpline staggered_;  // along the component's own axis
    BSpline aligned_;    // along the other two axes
};

}  // namespace wfdtd

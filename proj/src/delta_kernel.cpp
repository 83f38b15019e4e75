#include "wfdtd/delta_kernel.hpp"

#include <algorithm>
#include <cmath>

namespace wfdtd {

DeltaKernel DeltaKernel::composite(int order) {
    DeltaKernel k;
    k.kind_ = DeltaKind::Composite;
    k.order_ = order;
    k.staggered_ = BSpline::make(order);
    k.aligned_ = BSpline::make(order + 1);
    return k;
}

DeltaKernel DeltaKernel::isotropic() {
    DeltaKernel k;
    k.kind_ = DeltaKind::Isotropic;
    k.order_ = 1;
    k.staggered_ = BSpline::make(1);
    k.aligned_ = BSpline::make(1);
    return k;
}

std::string DeltaKernel::name() const {
    if (kind_ == DeltaKind::Isotropic) return "iso";
    return "bs" + std::to_string(order_);
}

std::vector<double> DeltaKernel::plane_residues(int direction) const {
    // A component's sample coordinate along `direction` is staggered by 1/2
    // when direction == component and node-aligned otherwise. The kernel
    // argument hits a knot when the wire coordinate is congruent (mod 1) to
    // stagger - first_knot of the factor in play.
    std::vector<double> res;
    for (int component = 0; component < 3; ++component) {
        const double stagger = (component == direction) ? 0.5 : 0.0;
        const BSpline& f = factor(component, direction);
        double r = std::fmod(stagger + f.support_half_width(), 1.0);
        if (r < 0.0) r += 1.0;
        res.push_back(r);
    }
    std::sort(res.begin(), res.end());
    res.erase(std::unique(res.begin(), res.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-12; }),
              res.end());
    return res;
}

}  // namespace wfdtd

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wfdtd/delta_kernel.hpp"

using namespace wfdtd;

TEST_CASE("composite(0) axial weight is the plain indicator stencil") {
    const DeltaKernel k = DeltaKernel::composite(0);
    CHECK(k.weight(0, {0.2, 0.0, 0.0}, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(k.weight(0, {0.6, 0.0, 0.0}, 1.0) == 0.0);  // outside BS_0 support
}

TEST_CASE("weights vanish outside the joint support") {
    for (const DeltaKernel& k : {DeltaKernel::composite(2), DeltaKernel::isotropic()}) {
        CHECK(k.weight(1, {9.0, 0.1, 0.2}, 1.0) == 0.0);
        CHECK(k.weight(1, {0.1, 0.1, -9.0}, 1.0) == 0.0);
    }
}

TEST_CASE("composite(2) tensor value matches the convolution oracle") {
    const DeltaKernel k = DeltaKernel::composite(2);
    const double got = k.weight(1, {0.25, -0.1, 0.4}, 1.0);
    const double want = oracle::bspline_value_by_convolution(3, 0.25) *
                        oracle::bspline_value_by_convolution(2, -0.1) *
                        oracle::bspline_value_by_convolution(3, 0.4);
    CHECK(std::abs(got - want) <= 1e-14);
}

TEST_CASE("support extents") {
    const auto e0 = DeltaKernel::composite(0).support_extent(0);
    CHECK(e0[0] == 0.5);
    CHECK(e0[1] == 1.0);
    CHECK(e0[2] == 1.0);
    const auto e4 = DeltaKernel::composite(4).support_extent(0);
    CHECK(e4[0] == 2.5);
    CHECK(e4[1] == 3.0);
    CHECK(e4[2] == 3.0);
    const auto ei = DeltaKernel::isotropic().support_extent(2);
    CHECK(ei[0] == 1.0);
    CHECK(ei[1] == 1.0);
    CHECK(ei[2] == 1.0);
}

TEST_CASE("1-D breakpoint sets") {
    const DeltaKernel k0 = DeltaKernel::composite(0);
    CHECK(k0.breakpoints_1d(0, 0) == std::vector<double>{-0.5, 0.5});
    CHECK(k0.breakpoints_1d(0, 1) == std::vector<double>{-1.0, 0.0, 1.0});
    const DeltaKernel iso = DeltaKernel::isotropic();
    for (int d = 0; d < 3; ++d) CHECK(iso.breakpoints_1d(0, d) == std::vector<double>{-1.0, 0.0, 1.0});
}

TEST_CASE("grid-plane residues: even orders integer planes, odd half-integer") {
    for (int d = 0; d < 3; ++d) {
        CHECK(DeltaKernel::composite(0).plane_residues(d) == std::vector<double>{0.0});
        CHECK(DeltaKernel::composite(2).plane_residues(d) == std::vector<double>{0.0});
        CHECK(DeltaKernel::composite(4).plane_residues(d) == std::vector<double>{0.0});
        CHECK(DeltaKernel::composite(1).plane_residues(d) == std::vector<double>{0.5});
        CHECK(DeltaKernel::isotropic().plane_residues(d) == std::vector<double>{0.0, 0.5});
    }
}

TEST_CASE("staggered difference of the axial factor is the aligned factor's derivative") {
    // The compatibility identity that makes the composite family
    // charge-conserving; the isotropic pair deliberately violates it.
    for (int n : {0, 1, 2, 3, 4}) {
        const DeltaKernel k = DeltaKernel::composite(n);
        const BSpline& phi = k.factor(0, 0);
        const BSpline& psi = k.factor(0, 1);
        for (int t = 0; t <= 100; ++t) {
            const double r = -3.3 + 6.6 * t / 100.0 + 0.0005;  // avoid knots
            CHECK(std::abs(phi(r + 0.5) - phi(r - 0.5) - psi.derivative(r)) <= 1e-14);
        }
    }
    const DeltaKernel iso = DeltaKernel::isotropic();
    const BSpline& phi = iso.factor(0, 0);
    const BSpline& psi = iso.factor(0, 1);
    double worst = 0.0;
    for (int t = 0; t <= 100; ++t) {
        const double r = -2.0 + 4.0 * t / 100.0 + 0.0005;
        worst = std::max(worst, std::abs(phi(r + 0.5) - phi(r - 0.5) - psi.derivative(r)));
    }
    CHECK(worst > 0.4);
}

TEST_CASE("kernel names for output files") {
    CHECK(DeltaKernel::composite(0).name() == "bs0");
    CHECK(DeltaKernel::composite(4).name() == "bs4");
    CHECK(DeltaKernel::isotropic().name() == "iso");
}

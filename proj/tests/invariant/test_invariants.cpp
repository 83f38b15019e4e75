// Heavier randomized invariant suites: the full-count versions of the
// machine-precision checks plus the quadrature oracle sweep and the PML
// reflection measurement.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "../unit/oracles.hpp"
#include "wfdtd/checks.hpp"
#include "wfdtd/constants.hpp"
#include "wfdtd/coupling.hpp"
#include "wfdtd/diagnostics.hpp"
#include "wfdtd/solver.hpp"

using namespace wfdtd;

namespace {

void require_all(const std::vector<CheckResult>& rs) {
    for (const CheckResult& r : rs) {
        INFO(r.name, ": measured ", r.measured, (r.at_most ? " <= " : " >= "), r.bound);
        CHECK(r.pass);
    }
}

GridSpec periodic_grid(int n, double h) {
    GridSpec g;
    g.nx = g.ny = g.nz = n;
    g.dx = g.dy = g.dz = h;
    g.boundary = Boundary::Periodic;
    g.origin = {-0.5 * n * h, -0.5 * n * h, -0.5 * n * h};
    return g;
}

}  // namespace

TEST_CASE("charge conservation across 50 randomized closed polylines") {
    require_all(check_charge_conservation(50, 0xC0FFEE));
}

TEST_CASE("adjoint power identity over 200 random pairs per kernel") {
    require_all(check_adjointness(200, 0xBEEF, 1.0));
}

TEST_CASE("tampered interpolation weights break the adjoint check") {
    const auto rs = check_adjointness(20, 0xBEEF, 1.0 + 1e-3);
    bool any_fail = false;
    for (const CheckResult& r : rs) any_fail = any_fail || !r.pass;
    CHECK(any_fail);
}

TEST_CASE("zero loop EMF for 50 random potentials per kernel and orientation") {
    require_all(check_loop_emf(50, 0xFEED));
}

TEST_CASE("coupling weights match the adaptive quadrature oracle on 50 random panels per kernel") {
    const GridSpec g = periodic_grid(16, 1.0 / 16);
    std::mt19937_64 rng(0xABCD);
    std::uniform_real_distribution<double> pos(-0.2, 0.2);
    std::uniform_real_distribution<double> dir(-1.0, 1.0);
    for (const DeltaKernel& k : {DeltaKernel::composite(0), DeltaKernel::composite(2),
                                 DeltaKernel::composite(4), DeltaKernel::isotropic()}) {
        double worst = 0.0;
        const double scale = 1.0 / (g.dx * g.dx);
        for (int t = 0; t < 50; ++t) {
            Vec3 a = {pos(rng), pos(rng), pos(rng)};
            Vec3 d = {dir(rng), dir(rng), dir(rng)};
            while (norm(d) < 1e-2) d = {dir(rng), dir(rng), dir(rng)};
            d = normalized(d);
            WirePath w;
            w.closed = false;
            w.radius = 1e-3;
            w.vertices = {a, a + (1.4 * g.dx) * d};
            w.finalize();
            const CouplingTable table = CouplingTable::build(w, k, g);
            for (int axis = 0; axis < 3; ++axis) {
                const auto& es = table.entries(axis, 0);
                for (std::size_t e = 0; e < es.size(); e += std::max<std::size_t>(1, es.size() / 5)) {
                    const std::size_t flat = es[e].flat;
                    const int i = int(flat / (std::size_t(g.ny) * g.nz));
                    const int j = int((flat / g.nz) % g.ny);
                    const int kk = int(flat % g.nz);
                    worst = std::max(
                        worst, std::abs(es[e].w - oracle::coupling_weight(w, 0, k, g, axis, i, j, kk)));
                }
            }
        }
        INFO("kernel ", k.name());
        CHECK(worst <= 1e-13 * scale);
    }
}

TEST_CASE("removing quadrature breakpoints destroys charge conservation") {
    require_all(check_quadrature_breakpoint_control(0x5151));
}

TEST_CASE("gauss-law ledger: identity to roundoff, cumulative divergence only for iso") {
    require_all(check_gauss_ledger(300, 0x60D));
}

TEST_CASE("energy conservation over 2000 coupled periodic steps with control") {
    require_all(check_energy_conservation(2000, 0xE4E56));
}

TEST_CASE("operator norms match closed forms and the interp norm scales like 1/h") {
    require_all(check_operator_norms());
}

TEST_CASE("PML reflection stays below -60 dB against a doubled-domain reference") {
    require_all(check_pml_reflection());
}

TEST_CASE("wire-coupled CFL bounds bracket the paper time step") {
    const GridSpec g = periodic_grid(32, 1.0 / 32);
    SolverOptions opts;
    Simulation sim(g, paper_time_step(g), opts);
    sim.attach_wire(WirePath::circle(0.35, {1, 1, 1}, {0, 0, 0}, g.dx, g.dx / 10),
                    DeltaKernel::composite(2), -1);
    const auto lim = sim.cfl_limits();
    CHECK(paper_time_step(g) < lim.dt_em);
    CHECK(paper_time_step(g) < lim.dt_wire);
    // The interp term tightens dt_em relative to the wire-free bound.
    const double wire_free = std::sqrt(2.0 * kMu0 * kEps0) / lim.curl_norm;
    CHECK(lim.dt_em < wire_free);
    CHECK(lim.interp_norm > 0.0);
}

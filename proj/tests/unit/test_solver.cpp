#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "wfdtd/constants.hpp"
#include "wfdtd/errors.hpp"
#include "wfdtd/solver.hpp"

using namespace wfdtd;

namespace {

GridSpec periodic_grid(int n, double h) {
    GridSpec g;
    g.nx = g.ny = g.nz = n;
    g.dx = g.dy = g.dz = h;
    g.boundary = Boundary::Periodic;
    g.origin = {-0.5 * n * h, -0.5 * n * h, -0.5 * n * h};
    return g;
}

void randomize(VecField& f, std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    for (ScalarField* s : {&f.x, &f.y, &f.z})
        for (double& v : s->v) v = u(rng);
}

}  // namespace

TEST_CASE("paper time step is h over 2 sqrt(3) c0 and within the CFL bounds") {
    const GridSpec g = periodic_grid(8, 1.0 / 32);
    const double dt = paper_time_step(g);
    CHECK(dt == doctest::Approx(g.dx / (2.0 * std::sqrt(3.0) * speed_of_light())).epsilon(1e-15));
    Simulation sim(g, dt);
    const auto lim = sim.cfl_limits();
    // sqrt(2 mu0 eps0) / ||curl|| = h / (sqrt(6) c0) for the uniform grid.
    CHECK(lim.dt_em ==
          doctest::Approx(g.dx / (std::sqrt(6.0) * speed_of_light())).epsilon(1e-12));
    CHECK(dt < lim.dt_em);
}

TEST_CASE("time steps beyond the bound are refused") {
    const GridSpec g = periodic_grid(8, 1.0 / 32);
    const double over = g.dx / (std::sqrt(6.0) * speed_of_light()) * 1.01;
    CHECK_THROWS_AS(Simulation(g, over), ConfigError);
}

TEST_CASE("zero fields with no source stay zero") {
    const GridSpec g = periodic_grid(8, 0.1);
    Simulation sim(g, paper_time_step(g));
    for (int s = 0; s < 10; ++s) sim.step();
    CHECK(max_abs(sim.fields().E) == 0.0);
    CHECK(max_abs(sim.fields().H) == 0.0);
}

TEST_CASE("one solver step equals the composition of the pure operators") {
    const GridSpec g = periodic_grid(10, 0.07);
    Simulation sim(g, paper_time_step(g));
    std::mt19937_64 rng(5);
    randomize(sim.fields().E, rng, 1.0);
    randomize(sim.fields().H, rng, 1.0);
    const VecField e0 = sim.fields().E;
    const VecField h0 = sim.fields().H;
    sim.step();

    const double dt = sim.dt();
    VecField h_want = h0;
    const VecField ce = curl_E(e0, g);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < h_want.comp(c).v.size(); ++i)
            h_want.comp(c).v[i] -= dt / kMu0 * ce.comp(c).v[i];
    VecField e_want = e0;
    const VecField ch = curl_H(h_want, g);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < e_want.comp(c).v.size(); ++i)
            e_want.comp(c).v[i] += dt / kEps0 * ch.comp(c).v[i];

    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < e_want.comp(c).v.size(); ++i) {
            CHECK(sim.fields().H.comp(c).v[i] ==
                  doctest::Approx(h_want.comp(c).v[i]).epsilon(1e-12));
            CHECK(sim.fields().E.comp(c).v[i] ==
                  doctest::Approx(e_want.comp(c).v[i]).epsilon(1e-12));
        }
}

TEST_CASE("single-mode frequency matches the Yee dispersion relation") {
    const int n = 16;
    const double h = 1.0 / n;
    const GridSpec g = periodic_grid(n, h);
    const double dt = paper_time_step(g);
    Simulation sim(g, dt, {});
    const int mode = 3;
    const double kappa = 2.0 * M_PI * mode;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                sim.fields().E.z.at(i, j, k) = std::sin(kappa * (g.origin[0] + i * g.dx));

    // Projection amplitude obeys a three-term recurrence with
    // cos(w dt) = 1 - (c dt K)^2 / 2, K the staggered symbol.
    std::vector<double> amp;
    for (int s = 0; s < 100; ++s) {
        double a = 0.0;
        for (int i = 0; i < n; ++i)
            a += sim.fields().E.z.at(i, 3, 5) * std::sin(kappa * (g.origin[0] + i * g.dx));
        amp.push_back(a);
        sim.step();
    }
    const double K = 2.0 * std::sin(0.5 * kappa * h) / h;
    const double want = 1.0 - 0.5 * std::pow(speed_of_light() * dt * K, 2);
    int best = 40;
    for (int s = 35; s < 65; ++s)
        if (std::abs(amp[s]) > std::abs(amp[best])) best = s;
    const double got = (amp[best + 1] + amp[best - 1]) / (2.0 * amp[best]);
    CHECK(got == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("coupled periodic run conserves the two-level energy") {
    const int n = 16;
    const double h = 1.0 / 16;
    const GridSpec g = periodic_grid(n, h);
    SolverOptions opts;
    opts.track_energy = true;
    Simulation sim(g, paper_time_step(g), opts);
    sim.attach_wire(WirePath::circle(0.3, {1, 1, 1}, {0, 0, 0}, h, h / 10),
                    DeltaKernel::composite(2), -1);
    std::mt19937_64 rng(9);
    randomize(sim.fields().E, rng, 240.0);
    randomize(sim.fields().H, rng, 0.65);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double& v : sim.wire().V) v = 85.0 * u(rng);
    for (double& v : sim.wire().I) v = u(rng);

    double e0 = 0.0, drift = 0.0;
    for (int s = 0; s < 600; ++s) {
        sim.step();
        if (s == 0)
            e0 = sim.last_energy().total;
        else
            drift = std::max(drift, std::abs(sim.last_energy().total - e0) / std::abs(e0));
    }
    CHECK(e0 > 0.0);
    CHECK(drift <= 1e-12);
}

TEST_CASE("degenerate PML coefficients reproduce the plain terminated update") {
    GridSpec g = periodic_grid(20, 0.05);
    g.boundary = Boundary::Pml;
    g.pml_cells = 8;
    SolverOptions degenerate;
    degenerate.pml.thickness = 8;
    degenerate.pml.sigma_scale = 0.0;
    degenerate.pml.kappa_max = 1.0;
    degenerate.pml.alpha_max = 0.0;
    Simulation a(g, paper_time_step(g), degenerate);

    std::mt19937_64 rng(31);
    randomize(a.fields().E, rng, 1.0);
    randomize(a.fields().H, rng, 1.0);

    // Reference: pure operators with zero-extension reads and the PEC clamp.
    VecField e0 = a.fields().E;
    VecField h0 = a.fields().H;
    a.step();

    const double dt = a.dt();
    const VecField ce = curl_E(e0, g);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < h0.comp(c).v.size(); ++i)
            h0.comp(c).v[i] -= dt / kMu0 * ce.comp(c).v[i];
    const VecField ch = curl_H(h0, g);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < e0.comp(c).v.size(); ++i)
            e0.comp(c).v[i] += dt / kEps0 * ch.comp(c).v[i];
    for (int i = 0; i < g.nx; ++i)
        for (int k = 0; k < g.nz; ++k) e0.x.at(i, 0, k) = 0.0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) e0.x.at(i, j, 0) = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int k = 0; k < g.nz; ++k) e0.y.at(0, j, k) = 0.0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) e0.y.at(i, j, 0) = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int k = 0; k < g.nz; ++k) e0.z.at(0, j, k) = 0.0;
    for (int i = 0; i < g.nx; ++i)
        for (int k = 0; k < g.nz; ++k) e0.z.at(i, 0, k) = 0.0;

    double worst = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < e0.comp(c).v.size(); ++i) {
            worst = std::max(worst, std::abs(a.fields().E.comp(c).v[i] - e0.comp(c).v[i]));
            worst = std::max(worst, std::abs(a.fields().H.comp(c).v[i] - h0.comp(c).v[i]));
        }
    CHECK(worst <= 1e-12);
    // And zero auxiliary memory stays zero through the degenerate update.
    double psi_max = 0.0;
    Simulation b(g, paper_time_step(g), degenerate);
    b.step();
    (void)psi_max;
    CHECK(max_abs(b.fields().E) == 0.0);
}

TEST_CASE("non-finite fields abort with the field name and step") {
    const GridSpec g = periodic_grid(8, 0.1);
    SolverOptions opts;
    opts.nan_check_interval = 1;
    Simulation sim(g, paper_time_step(g), opts);
    sim.fields().E.y.at(2, 3, 4) = std::numeric_limits<double>::quiet_NaN();
    try {
        sim.step();
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        const std::string what = e.what();
        CHECK(what.find("Ey") != std::string::npos);
        CHECK(what.find("step 0") != std::string::npos);
    }
}

TEST_CASE("checkpoints round-trip bitwise and resume identically") {
    const GridSpec g = periodic_grid(10, 1.0 / 10);
    SolverOptions opts;
    auto build = [&] {
        Simulation sim(g, paper_time_step(g), opts);
        sim.attach_wire(WirePath::circle(0.25, {1, 0, 1}, {0, 0, 0}, g.dx, g.dx / 10),
                        DeltaKernel::composite(2), 0);
        sim.set_gap_source([](double t) { return t < 1e-9 ? 1.0 : 0.0; });
        return sim;
    };
    Simulation a = build();
    for (int s = 0; s < 7; ++s) a.step();
    const std::string file = "/tmp/wfdtd_ckpt_test.bin";
    a.save_checkpoint(file);

    Simulation b = build();
    b.load_checkpoint(file);
    CHECK(b.step_index() == 7);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < g.cells(); ++i)
            CHECK(b.fields().E.comp(c).v[i] == a.fields().E.comp(c).v[i]);

    // Continue both; they must remain bitwise identical.
    for (int s = 0; s < 5; ++s) {
        a.step();
        b.step();
    }
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < g.cells(); ++i) {
            CHECK(b.fields().E.comp(c).v[i] == a.fields().E.comp(c).v[i]);
            CHECK(b.fields().H.comp(c).v[i] == a.fields().H.comp(c).v[i]);
        }
    for (std::size_t q = 0; q < a.wire().I.size(); ++q) CHECK(a.wire().I[q] == b.wire().I[q]);
    std::remove(file.c_str());
}

TEST_CASE("identical configurations step identically (determinism)") {
    const GridSpec g = periodic_grid(12, 1.0 / 12);
    auto run = [&] {
        Simulation sim(g, paper_time_step(g), {});
        sim.attach_wire(WirePath::circle(0.3, {1, 1, 1}, {0, 0, 0}, g.dx, g.dx / 10),
                        DeltaKernel::composite(2), 1);
        sim.set_gap_source([](double t) { return std::sin(t * 3e9); });
        for (int s = 0; s < 25; ++s) sim.step();
        return sim.fields().E.z.v;
    };
    const std::vector<double> a = run();
    const std::vector<double> b = run();
    CHECK(a == b);
}

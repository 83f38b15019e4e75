#include <doctest.h>

#include <cmath>

#include "wfdtd/constants.hpp"
#include "wfdtd/errors.hpp"
#include "wfdtd/impedance.hpp"
#include "wfdtd/waveform.hpp"

using namespace wfdtd;

namespace {

// Synthetic gap series for a pure resistor: the recorded current samples sit
// half a step before the voltage samples, exactly like the solver's wire
// current level.
GapSeries resistor_series(double r0, double dt, long n) {
    const Waveform w = make_waveform(Waveform::Kind::Gaussian, 1.0 / (40.0 * dt));
    GapSeries s;
    s.dt = dt;
    for (long k = 0; k < n; ++k) {
        const double t = k * dt;
        s.t.push_back(t);
        s.v.push_back(w.value(t));
        s.i.push_back(w.value(t - 0.5 * dt) / r0);
    }
    return s;
}

}  // namespace

TEST_CASE("resistor oracle: extraction recovers R0 flat across the band") {
    const double r0 = 73.0;
    const double dt = 25e-12;
    const GapSeries s = resistor_series(r0, dt, 4000);
    const Waveform w = make_waveform(Waveform::Kind::Gaussian, 1.0 / (40.0 * dt));
    double lo = 0.0, hi = 0.0;
    w.band(1e-3, lo, hi);
    const ImpedanceCurve c = extract_impedance(s, 1.0, lo, hi);
    REQUIRE(!c.pts.empty());
    for (const ImpedancePoint& p : c.pts) {
        if (p.masked) continue;
        CHECK(std::abs(p.r - r0) <= 1e-6 * r0);
        CHECK(std::abs(p.x) <= 1e-6 * r0);
    }
}

TEST_CASE("inductor series shows positive reactance (sign convention)") {
    // i(t) = (1/L) integral of v: for v = dg/dt, i = g / L with g a Gaussian.
    const double dt = 25e-12;
    const double l0 = 50e-9;
    const Waveform g = make_waveform(Waveform::Kind::Gaussian, 1.0 / (40.0 * dt));
    GapSeries s;
    s.dt = dt;
    const long n = 4000;
    for (long k = 0; k < n; ++k) {
        const double t = k * dt;
        s.t.push_back(t);
        // v = d/dt g(t) sampled at integer steps (centered difference of g
        // around t), i = g(t - dt/2) / L at the staggered level.
        s.v.push_back((g.value(t + 0.5 * dt) - g.value(t - 0.5 * dt)) / dt);
        s.i.push_back(g.value(t - 0.5 * dt) / l0);
    }
    double lo = 0.0, hi = 0.0;
    g.band(1e-2, lo, hi);
    const ImpedanceCurve c = extract_impedance(s, 1.0, std::max(lo, 1e7), hi);
    int checked = 0;
    for (const ImpedancePoint& p : c.pts) {
        if (p.masked) continue;
        // Centered difference of g: V(f) = i (2/dt) sin(pi f dt) G(f).
        const double want = 2.0 / dt * std::sin(M_PI * p.f * dt) * l0;
        CHECK(p.x == doctest::Approx(want).epsilon(1e-3));
        CHECK(std::abs(p.r) <= 0.02 * std::abs(want) + 1e-3);
        ++checked;
    }
    CHECK(checked > 10);
}

TEST_CASE("reactance crossings are classified by resistance level") {
    ImpedanceCurve c;
    auto add = [&](double elen, double r, double x) {
        ImpedancePoint p;
        p.f = elen * 1e9;
        p.elen = elen;
        p.r = r;
        p.x = x;
        c.pts.push_back(p);
    };
    add(0.40, 60.0, -10.0);
    add(0.50, 80.0, +10.0);   // resonance near 0.45
    add(0.90, 2000.0, +5.0);
    add(1.00, 2500.0, -5.0);  // antiresonance near 0.95
    const auto rc = find_reactance_crossings(c);
    REQUIRE(rc.size() == 2);
    CHECK(rc[0].elen == doctest::Approx(0.45).epsilon(1e-12));
    CHECK(!rc[0].antiresonance);
    CHECK(rc[1].antiresonance);
}

TEST_CASE("orientation spread: identical curves give zero, mismatched grids throw") {
    ImpedanceCurve a;
    for (int k = 1; k <= 10; ++k) {
        ImpedancePoint p;
        p.f = 1e8 * k;
        p.elen = 0.1 * k;
        p.r = 50.0 + k;
        p.x =
            -20.0 + 3.0 * k;
        a.pts.push_back(p);
    }
    ImpedanceCurve b = a;
    ImpedanceCurve c = a;
    CHECK(orientation_spread({&a, &b, &c}) == 0.0);

    b.pts[4].r += 30.0;
    const double s = orientation_spread({&a, &b, &c});
    const double za = std::hypot(a.pts[4].r, a.pts[4].x);
    const double zb = std::hypot(b.pts[4].r, b.pts[4].x);
    CHECK(s == doctest::Approx(30.0 / (0.5 * (za + zb) + 10.0)).epsilon(1e-12));

    ImpedanceCurve d = a;
    d.pts.pop_back();
    CHECK_THROWS_AS(orientation_spread({&a, &d}), ConfigError);
}

TEST_CASE("masked points are flagged where the current spectrum dies") {
    GapSeries s = resistor_series(50.0, 25e-12, 2000);
    for (double& iv : s.i) iv = 0.0;  // no current at all: everything masks
    const ImpedanceCurve c = extract_impedance(s, 1.0, 1e8, 1e9);
    for (const ImpedancePoint& p : c.pts) CHECK(p.masked);
}

#include <doctest.h>

#include <cmath>

#include "wfdtd/constants.hpp"
#include "wfdtd/errors.hpp"
#include "wfdtd/waveform.hpp"

using namespace wfdtd;

TEST_CASE("gaussian pulse: smooth turn-on and 10% spectrum at the band edge") {
    const double f_edge = 2.0 * speed_of_light() / 0.5;  // dipole band: L/lambda = 2
    CHECK(f_edge == doctest::Approx(1.199e9).epsilon(1e-3));
    const Waveform w = make_waveform(Waveform::Kind::Gaussian, f_edge, 1.0);
    CHECK(std::abs(w.value(0.0)) <= 1.6e-8);  // exp(-18) at the 6 tau delay
    CHECK(w.value(w.delay) == 1.0);
    CHECK(w.spectrum_mag(f_edge) == doctest::Approx(0.1 * w.spectrum_peak()).epsilon(1e-12));
}

TEST_CASE("differentiated gaussian: odd symmetry gives zero time integral") {
    const Waveform w = make_waveform(Waveform::Kind::DifferentiatedGaussian, 2e8, 1.0);
    const double dt = w.tau / 40.0;
    // Sample grid symmetric about the delay so the odd tails cancel.
    const long n = long(std::llround(2.0 * w.delay / dt)) + 1;
    double sum = 0.0;
    for (long k = 0; k < n; ++k) sum += w.value(k * dt) * dt;
    const double total_T = n * dt;
    CHECK(std::abs(sum) <= 1e-10 * 1.0 * total_T);
    CHECK(w.spectrum_mag(2e8) == doctest::Approx(0.1 * w.spectrum_peak()).epsilon(1e-10));
    // Spectrum vanishes toward DC.
    CHECK(w.spectrum_mag(1e3) < 1e-4 * w.spectrum_peak());
}

TEST_CASE("band endpoints bracket the spectral floor") {
    for (const Waveform& w : {make_waveform(Waveform::Kind::Gaussian, 1e9),
                              make_waveform(Waveform::Kind::DifferentiatedGaussian, 1e9)}) {
        double lo = 0.0, hi = 0.0;
        w.band(1e-3, lo, hi);
        CHECK(hi > lo);
        CHECK(w.spectrum_mag(hi) == doctest::Approx(1e-3 * w.spectrum_peak()).epsilon(1e-6));
        if (w.kind == Waveform::Kind::DifferentiatedGaussian) {
            CHECK(w.spectrum_mag(lo) == doctest::Approx(1e-3 * w.spectrum_peak()).epsilon(1e-6));
            CHECK(lo > 0.0);
        } else {
            CHECK(lo == 0.0);
        }
    }
}

TEST_CASE("bad band edge is rejected") {
    CHECK_THROWS_AS(make_waveform(Waveform::Kind::Gaussian, 0.0), ConfigError);
}

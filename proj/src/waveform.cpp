#include "wfdtd/waveform.hpp"

#include <cmath>

#include "wfdtd/errors.hpp"

namespace wfdtd {

namespace {

// Upper/lower solutions of u exp(-u^2/2) = target (peak at u = 1).
double solve_diff_gaussian(double target, bool upper) {
    double lo = upper ? 1.0 : 0.0;
    double hi = upper ? 40.0 : 1.0;
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (lo + hi);
        const double v = m * std::exp(-0.5 * m * m);
        const bool above = v > target;
        if (upper ? above : !above)
            lo = m;
        else
            hi = m;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double Waveform::value(double t) const {
    const double s = (t - delay) / tau;
    const double g = std::exp(-0.5 * s * s);
    return kind == Kind::Gaussian ? amplitude * g : -amplitude * s * g;
}

double Waveform::spectrum_mag(double f) const {
    const double u = 2.0 * M_PI * f * tau;
    const double g = std::exp(-0.5 * u * u);
    return kind == Kind::Gaussian ? g : u * g;
}

double Waveform::spectrum_peak() const {
    return kind == Kind::Gaussian ? 1.0 : std::exp(-0.5);
}

void Waveform::band(double floor_rel, double& f_lo, double& f_hi) const {
    if (kind == Kind::Gaussian) {
        f_lo = 0.0;
        f_hi = std::sqrt(-2.0 * std::log(floor_rel)) / (2.0 * M_PI * tau);
    } else {
        const double target = floor_rel * std::exp(-0.5);
        f_lo = solve_diff_gaussian(target, false) / (2.0 * M_PI * tau);
        f_hi = solve_diff_gaussian(target, true) / (2.0 * M_PI * tau);
    }
}

Waveform make_waveform(Waveform::Kind kind, double band_edge_hz, double amplitude) {
    if (!(band_edge_hz > 0.0)) throw ConfigError("waveform: band edge must be positive");
    Waveform w;
    w.kind = kind;
    w.amplitude = amplitude;
    const double omega_edge = 2.0 * M_PI * band_edge_hz;
    if (kind == Waveform::Kind::Gaussian) {
        // exp(-(w tau)^2 / 2) = 0.1 at the edge.
        w.tau = std::sqrt(2.0 * std::log(10.0)) / omega_edge;
    } else {
        // u exp(-u^2/2) = 0.1 * exp(-1/2) at the edge (upper branch).
        w.tau = solve_diff_gaussian(0.1 * std::exp(-0.5), true) / omega_edge;
    }
    w.delay = 6.0 * w.tau;
    return w;
}

}  // namespace wfdtd

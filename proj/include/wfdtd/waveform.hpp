#pragma once

namespace wfdtd {

// Delta-gap source pulses. The width is set from a band-edge requirement:
// the spectral magnitude at the requested edge frequency is 10% of the
// spectral peak. The delay is 6 tau so the turn-on is smooth to better than
// 1e-8 of the peak.
struct Waveform {
    enum class Kind { Gaussian, DifferentiatedGaussian };

    Kind kind = Kind::Gaussian;
    double amplitude = 1.0;  // volts
    double tau = 0.0;        // seconds
    double delay = 0.0;      // seconds

    double value(double t) const;

    // |V(f)| up to a constant factor (enough for band masks and peaks).
    double spectrum_mag(double f) const;
    double spectrum_peak() const;

    // Band where spectrum_mag >= floor_rel * peak; lo is 0 for the Gaussian.
    void band(double floor_rel, double& f_lo, double& f_hi) const;
};

Waveform make_waveform(Waveform::Kind kind, double band_edge_hz, double amplitude = 1.0);

}  // namespace wfdtd

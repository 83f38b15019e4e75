#include "wfdtd/impedance.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>

#include "wfdtd/constants.hpp"
#include "wfdtd/errors.hpp"

namespace wfdtd {

namespace {

std::mutex fftw_plan_mutex;  // FFTW plan creation is not thread-safe

std::vector<std::complex<double>> spectrum(const std::vector<double>& x, std::size_t n_pad) {
    std::vector<double> in(n_pad, 0.0);
    std::copy(x.begin(), x.end(), in.begin());
    std::vector<std::complex<double>> out(n_pad / 2 + 1);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        plan = fftw_plan_dft_r2c_1d(int(n_pad), in.data(),
                                    reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        fftw_destroy_plan(plan);
    }
    return out;
}

}  // namespace

ImpedanceCurve extract_impedance(const GapSeries& s, double reference_length_m, double f_lo,
                                 double f_hi, int pad_factor) {
    if (s.v.size() != s.i.size() || s.v.empty()) throw ConfigError("impedance: empty or ragged series");
    if (!(s.dt > 0.0)) throw ConfigError("impedance: bad dt");
    const std::size_t n = s.v.size();

    ImpedanceCurve curve;
    double peak = 0.0, tail = 0.0;
    for (std::size_t k = 0; k < n; ++k) peak = std::max(peak, std::abs(s.i[k]));
    for (std::size_t k = 3 * n / 4; k < n; ++k) tail = std::max(tail, std::abs(s.i[k]));
    curve.tail_ratio = peak > 0.0 ? tail / peak : 0.0;
    curve.windowed = curve.tail_ratio > 1e-4;

    std::size_t n_pad = 1;
    while (n_pad < n * std::size_t(pad_factor)) n_pad *= 2;
    const std::vector<std::complex<double>> vf = spectrum(s.v, n_pad);
    const std::vector<std::complex<double>> iff = spectrum(s.i, n_pad);

    const double df = 1.0 / (double(n_pad) * s.dt);
    // In-band current magnitude scale for the mask.
    double imax = 0.0;
    for (std::size_t k = 1; k < iff.size(); ++k) {
        const double f = k * df;
        if (f < f_lo || f > f_hi) continue;
        imax = std::max(imax, std::abs(iff[k]));
    }

    for (std::size_t k = 1; k < iff.size(); ++k) {
        const double f = k * df;
        if (f < f_lo || f > f_hi) continue;
        ImpedancePoint p;
        p.f = f;
        p.elen = reference_length_m * f / speed_of_light();
        const double w_dt = 2.0 * M_PI * f * s.dt;
        const std::complex<double> stagger(std::cos(0.5 * w_dt), std::sin(0.5 * w_dt));
        const std::complex<double> denom = iff[k] * stagger;
        if (std::abs(iff[k]) <= 1e-9 * imax || denom == std::complex<double>(0.0, 0.0)) {
            p.masked = true;
        } else {
            const std::complex<double> z = vf[k] / denom;
            p.r = z.real();
            p.x = z.imag();
        }
        curve.pts.push_back(p);
    }
    return curve;
}

std::vector<ReactanceCrossing> find_reactance_crossings(const ImpedanceCurve& c,
                                                        double r_threshold_ohm) {
    std::vector<ReactanceCrossing> out;
    const ImpedancePoint* prev = nullptr;
    for (const ImpedancePoint& p : c.pts) {
        if (p.masked) continue;
        if (prev && (prev->x < 0.0) != (p.x < 0.0)) {
            const double t = prev->x / (prev->x - p.x);
            ReactanceCrossing rc;
            rc.elen = prev->elen + t * (p.elen - prev->elen);
            rc.resistance = prev->r + t * (p.r - prev->r);
            rc.antiresonance = rc.resistance > r_threshold_ohm;
            out.push_back(rc);
        }
        prev = &p;
    }
    return out;
}

double orientation_spread(const std::vector<const ImpedanceCurve*>& curves, double z_floor_ohm) {
    if (curves.size() < 2) return 0.0;
    const std::size_t n = curves[0]->pts.size();
    for (const ImpedanceCurve* c : curves)
        if (c->pts.size() != n) throw ConfigError("orientation_spread: frequency grids differ");
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t a = 0; a < curves.size(); ++a) {
            const ImpedancePoint& pa = curves[a]->pts[k];
            for (std::size_t b = a + 1; b < curves.size(); ++b) {
                const ImpedancePoint& pb = curves[b]->pts[k];
                if (pa.masked || pb.masked) continue;
                if (pa.f != pb.f) throw ConfigError("orientation_spread: frequency grids differ");
                const double za = std::hypot(pa.r, pa.x);
                const double zb = std::hypot(pb.r, pb.x);
                const double dz = std::hypot(pa.r - pb.r, pa.x - pb.x);
                worst = std::max(worst, dz / (0.5 * (za + zb) + z_floor_ohm));
            }
        }
    }
    return worst;
}

}  // namespace wfdtd

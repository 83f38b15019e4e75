#pragma once

#include <string>
#include <vector>

namespace wfdtd {

// Gap voltage/current record. Row k holds the source voltage at t = k dt and
// the feed current sampled half a step earlier (the leapfrog stagger).
struct GapSeries {
    double dt = 0.0;
    std::vector<double> t, v, i;
};

struct ImpedancePoint {
    double f = 0.0;     // Hz
    double elen = 0.0;  // electrical length: reference_length / lambda
    double r = 0.0;     // ohms
    double x = 0.0;     // ohms
    bool masked = false;
};

struct ImpedanceCurve {
    std::vector<ImpedancePoint> pts;
    double tail_ratio = 0.0;  // max |i| in the last quarter over global max
    bool windowed = false;    // true when the series had not rung down to 1e-4
    std::string scenario, orientation, kernel;
};

// Z(f) = V(f) / (I(f) e^{+i w dt/2}): the phase factor refers the
// half-step-early current samples back to the voltage time grid. Transforms
// are zero-padded to at least pad_factor times the series length. Points
// where |I| falls below 1e-9 of its in-band peak are flagged masked.
ImpedanceCurve extract_impedance(const GapSeries& s, double reference_length_m, double f_lo,
                                 double f_hi, int pad_factor = 8);

// Reactance zero crossings classified by the local resistance level.
struct ReactanceCrossing {
    double elen = 0.0;
    double resistance = 0.0;
    bool antiresonance = false;  // resistance above the threshold
};

std::vector<ReactanceCrossing> find_reactance_crossings(const ImpedanceCurve& c,
                                                        double r_threshold_ohm = 500.0);

// Max over shared frequencies of pairwise |Z_a - Z_b| / (mean |Z| + floor).
double orientation_spread(const std::vector<const ImpedanceCurve*>& curves,
                          double z_floor_ohm = 10.0);

}  // namespace wfdtd

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wfdtd/config.hpp"
#include "wfdtd/impedance.hpp"
#include "wfdtd/solver.hpp"
#include "wfdtd/wire.hpp"

namespace wfdtd {

// Grid sized from the wire bounding box: clearance plus kernel support plus
// two cells on every side, then the absorbing layers.
GridSpec make_scenario_grid(const SimConfig& cfg, const WirePath& path, const DeltaKernel& kernel);

WirePath make_scenario_wire(const SimConfig& cfg);
int scenario_feed_panel(const SimConfig& cfg, const WirePath& path);

struct RunResult {
    GapSeries series;
    ImpedanceCurve impedance;
    std::string run_dir;  // empty when no outputs were written
    double peak_current = 0.0;
};

// Executes one scenario and, when out_root is non-empty, writes
// <out_root>/<run_id>/{timeseries.csv, impedance.csv, diagnostics.csv,
// config.snapshot}.
RunResult run_scenario(const SimConfig& cfg, const std::string& out_root = "");

struct RingdownMetrics {
    double peak_abs = 0.0;
    double abs_after = 0.0;       // max |i| at or after the probe time
    double ratio_after = 0.0;     // abs_after / peak_abs
    double late_rms = 0.0;        // RMS over the last quarter
    double peak_window_rms = 0.0; // RMS over an equal window centered at the peak
    double late_ratio = 0.0;      // late_rms / peak_window_rms
};

RingdownMetrics ringdown_metrics(const GapSeries& s, double probe_time_s);

struct SweepCell {
    SimConfig cfg;
    bool ok = false;
    std::string error;
    RingdownMetrics ringdown;
    std::vector<ReactanceCrossing> crossings;
    ImpedanceCurve impedance;
};

struct SweepSummary {
    std::vector<SweepCell> cells;
    // orientation spread per (scenario, kernel), indexed by the cell order
    // of the first orientation.
    std::vector<std::string> spread_rows;  // "scenario,kernel,spread"
};

// The full reproduction matrix: 3 scenarios x 3 orientations x 4 kernels.
// profile "paper" uses 32 cells/m with 32-cell layers, "smoke" 16 and 16.
SweepSummary run_sweep(const std::string& profile, const std::string& out_root, int jobs = 1);

SimConfig sweep_config(const std::string& profile, Scenario sc, OrientationKind o,
                       const std::string& kernel);

}  // namespace wfdtd

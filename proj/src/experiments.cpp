#include "wfdtd/experiments.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "wfdtd/constants.hpp"
#include "wfdtd/diagnostics.hpp"
#include "wfdtd/errors.hpp"

namespace wfdtd {

namespace fs = std::filesystem;

WirePath make_scenario_wire(const SimConfig& cfg) {
    const double h = cfg.h();
    const double a = cfg.radius_over_h * h;
    const double target = cfg.panel_target_over_h * h;
    const Vec3 center = {cfg.center_offset_cells[0] * h, cfg.center_offset_cells[1] * h,
                         cfg.center_offset_cells[2] * h};
    const Vec3 axis = cfg.orientation_vector();
    switch (cfg.scenario) {
        case Scenario::Dipole: return WirePath::line(cfg.dipole_length_m, axis, center, target, a);
        case Scenario::CircleLoop: return WirePath::circle(cfg.loop_radius_m, axis, center, target, a);
        case Scenario::SquareLoop: return WirePath::square(cfg.square_side_m, axis, center, target, a);
    }
    throw ConfigError("wire: bad scenario");
}

int scenario_feed_panel(const SimConfig& cfg, const WirePath& path) {
    if (cfg.scenario == Scenario::SquareLoop) {
        // Feed panel starts at the midpoint of the first side.
        return path.panel_count() / 8;
    }
    return path.panel_count() / 2;
}

GridSpec make_scenario_grid(const SimConfig& cfg, const WirePath& path, const DeltaKernel& kernel) {
    const double h = cfg.h();
    double support = 0.0;
    for (int c = 0; c < 3; ++c)
        for (double e : kernel.support_extent(c)) support = std::max(support, e);
    const double margin = cfg.clearance_m + (support + 2.0) * h;

    GridSpec g;
    g.dx = g.dy = g.dz = h;
    g.boundary = cfg.boundary;
    g.pml_cells = cfg.boundary == Boundary::Pml ? cfg.pml_cells : 0;
    for (int d = 0; d < 3; ++d) {
        double lo = path.vertices[0][d], hi = lo;
        for (const Vec3& v : path.vertices) {
            lo = std::min(lo, v[d]);
            hi = std::max(hi, v[d]);
        }
        const double half = std::max(std::abs(lo), std::abs(hi)) + margin;
        int interior = 2 * int(std::ceil(half / h));
        const int n = interior + 2 * g.pml_cells;
        if (d == 0) g.nx = n;
        if (d == 1) g.ny = n;
        if (d == 2) g.nz = n;
    }
    // Wire center (origin of the path coordinates) sits at the box center.
    g.origin = {-0.5 * g.nx * h, -0.5 * g.ny * h, -0.5 * g.nz * h};
    g.validate();
    return g;
}

namespace {

void write_timeseries_csv(const std::string& file, const GapSeries& s) {
    std::FILE* f = std::fopen(file.c_str(), "w");
    if (!f) throw ConfigError("experiments: cannot write " + file);
    std::fprintf(f, "t_s,v_gap_V,i_gap_A\n");
    for (std::size_t k = 0; k < s.t.size(); ++k)
        std::fprintf(f, "%.17g,%.17g,%.17g\n", s.t[k], s.v[k], s.i[k]);
    std::fclose(f);
}

void write_impedance_csv(const std::string& file, const ImpedanceCurve& c) {
    std::FILE* f = std::fopen(file.c_str(), "w");
    if (!f) throw ConfigError("experiments: cannot write " + file);
    std::fprintf(f, "f_Hz,electrical_length,r_in_ohm,x_in_ohm,masked\n");
    for (const ImpedancePoint& p : c.pts)
        std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%d\n", p.f, p.elen, p.r, p.x, p.masked ? 1 : 0);
    std::fclose(f);
}

}  // namespace

RunResult run_scenario(const SimConfig& cfg, const std::string& out_root) {
    cfg.validate();
    const DeltaKernel kernel = cfg.make_kernel();
    const WirePath path = make_scenario_wire(cfg);
    const GridSpec grid = make_scenario_grid(cfg, path, kernel);
    const Waveform wf = make_waveform(cfg.waveform_kind(), cfg.band_edge_hz(), cfg.amplitude_v);
    const double dt = cfg.time_step_s();

    SolverOptions opts;
    Simulation sim(grid, dt, opts);
    const int feed = scenario_feed_panel(cfg, path);
    sim.attach_wire(path, kernel, feed);
    sim.set_gap_source([wf](double t) { return wf.value(t); });

    const long n_steps = long(std::ceil(cfg.duration_s() / dt));

    RunResult res;
    res.series.dt = dt;
    res.series.t.reserve(n_steps);
    res.series.v.reserve(n_steps);
    res.series.i.reserve(n_steps);

    std::string run_dir;
    std::unique_ptr<DiagnosticsWriter> diag;
    if (!out_root.empty()) {
        run_dir = (fs::path(out_root) / cfg.run_id()).string();
        fs::create_directories(run_dir);
        std::ofstream snap(fs::path(run_dir) / "config.snapshot");
        cfg.write_snapshot(snap);
        std::remove((fs::path(run_dir) / "diagnostics.csv").string().c_str());
        if (cfg.diagnostics_every > 0)
            diag = std::make_unique<DiagnosticsWriter>((fs::path(run_dir) / "diagnostics.csv").string());
    }

    for (long n = 0; n < n_steps; ++n) {
        const double t = sim.time();
        res.series.t.push_back(t);
        res.series.v.push_back(wf.value(t));
        res.series.i.push_back(sim.wire().I[feed]);  // still the half-step-earlier level
        sim.step();
        if (diag && cfg.diagnostics_every > 0 && n % cfg.diagnostics_every == 0) {
            double imax = 0.0;
            for (double iq : sim.wire().I) imax = std::max(imax, std::abs(iq));
            diag->write(n, t, "max_abs_I", imax);
            diag->write(n, t, "i_gap", sim.wire().I[feed]);
        }
    }
    for (double iv : res.series.i) res.peak_current = std::max(res.peak_current, std::abs(iv));

    double f_lo = 0.0, f_hi = 0.0;
    wf.band(1e-3, f_lo, f_hi);
    res.impedance = extract_impedance(res.series, cfg.reference_length_m(), f_lo, f_hi);
    res.impedance.scenario = to_string(cfg.scenario);
    res.impedance.orientation = to_string(cfg.orientation);
    res.impedance.kernel = cfg.kernel;

    if (!run_dir.empty()) {
        write_timeseries_csv((fs::path(run_dir) / "timeseries.csv").string(), res.series);
        write_impedance_csv((fs::path(run_dir) / "impedance.csv").string(), res.impedance);
        res.run_dir = run_dir;
    }
    return res;
}

RingdownMetrics ringdown_metrics(const GapSeries& s, double probe_time_s) {
    RingdownMetrics m;
    const std::size_t n = s.i.size();
    if (n == 0) return m;
    std::size_t peak_at = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double a = std::abs(s.i[k]);
        if (a > m.peak_abs) {
            m.peak_abs = a;
            peak_at = k;
        }
        if (s.t[k] >= probe_time_s) m.abs_after = std::max(m.abs_after, a);
    }
    m.ratio_after = m.peak_abs > 0.0 ? m.abs_after / m.peak_abs : 0.0;

    const std::size_t win = n / 4;
    double late2 = 0.0;
    for (std::size_t k = n - win; k < n; ++k) late2 += s.i[k] * s.i[k];
    m.late_rms = std::sqrt(late2 / win);
    std::size_t p0 = peak_at > win / 2 ? peak_at - win / 2 : 0;
    if (p0 + win > n) p0 = n - win;
    double peak2 = 0.0;
    for (std::size_t k = p0; k < p0 + win; ++k) peak2 += s.i[k] * s.i[k];
    m.peak_window_rms = std::sqrt(peak2 / win);
    m.late_ratio = m.peak_window_rms > 0.0 ? m.late_rms / m.peak_window_rms : 0.0;
    return m;
}

SimConfig sweep_config(const std::string& profile, Scenario sc, OrientationKind o,
                       const std::string& kernel) {
    SimConfig c;
    if (profile == "paper") {
        c.cells_per_meter = 32;
        c.pml_cells = 32;
    } else if (profile == "smoke") {
        c.cells_per_meter = 16;
        c.pml_cells = 16;
        // The paper band L/lambda = 2 needs 32 cells/m on the dipole; at
        // 16 cells/m stop at the first antiresonance instead.
        if (sc == Scenario::Dipole) c.band_elen = 1.0;
    } else {
        throw ConfigError("sweep: unknown profile '" + profile + "' (paper or smoke)");
    }
    c.scenario = sc;
    c.orientation = o;
    c.kernel = kernel;
    return c;
}

SweepSummary run_sweep(const std::string& profile, const std::string& out_root, int jobs) {
    const Scenario scenarios[3] = {Scenario::Dipole, Scenario::CircleLoop, Scenario::SquareLoop};
    const OrientationKind orientations[3] = {OrientationKind::Axis, OrientationKind::FaceDiagonal,
                                             OrientationKind::BodyDiagonal};
    const char* kernels[4] = {"bs0", "bs2", "bs4", "iso"};

    SweepSummary summary;
    for (Scenario sc : scenarios)
        for (const char* k : kernels)
            for (OrientationKind o : orientations) {
                SweepCell cell;
                cell.cfg = sweep_config(profile, sc, o, k);
                summary.cells.push_back(std::move(cell));
            }

    std::atomic<std::size_t> next{0};
    const int n_threads = std::max(1, jobs);
    const int omp_per_job = std::max(1u, std::thread::hardware_concurrency() / n_threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) {
        pool.emplace_back([&, omp_per_job] {
            omp_set_num_threads(omp_per_job);
            for (;;) {
                const std::size_t at = next.fetch_add(1);
                if (at >= summary.cells.size()) return;
                SweepCell& cell = summary.cells[at];
                try {
                    const RunResult r = run_scenario(cell.cfg, out_root);
                    cell.ringdown = ringdown_metrics(r.series, 150e-9);
                    cell.crossings = find_reactance_crossings(r.impedance);
                    cell.impedance = r.impedance;
                    cell.ok = true;
                } catch (const std::exception& e) {
                    cell.ok = false;
                    cell.error = e.what();  // partial failures recorded, sweep continues
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();

    // Orientation spread per (scenario, kernel): cells are grouped in runs
    // of three orientations.
    for (std::size_t base = 0; base + 2 < summary.cells.size(); base += 3) {
        const SweepCell& a = summary.cells[base];
        if (!(a.ok && summary.cells[base + 1].ok && summary.cells[base + 2].ok)) continue;
        std::vector<const ImpedanceCurve*> trio = {&summary.cells[base].impedance,
                                                   &summary.cells[base + 1].impedance,
                                                   &summary.cells[base + 2].impedance};
        char row[256];
        std::snprintf(row, sizeof row, "%s,%s,%.6g", to_string(a.cfg.scenario), a.cfg.kernel.c_str(),
                      orientation_spread(trio));
        summary.spread_rows.push_back(row);
    }

    if (!out_root.empty()) {
        fs::create_directories(out_root);
        std::FILE* f = std::fopen((fs::path(out_root) / "summary.csv").string().c_str(), "w");
        if (f) {
            std::fprintf(f,
                         "scenario,orientation,kernel,status,peak_i_A,ringdown_ratio_150ns,"
                         "late_rms_ratio,res1_elen,res2_elen,flags\n");
            for (const SweepCell& c : summary.cells) {
                double res1 = 0.0, res2 = 0.0;
                int found = 0;
                for (const ReactanceCrossing& rc : c.crossings) {
                    if (rc.antiresonance) continue;
                    if (found == 0) res1 = rc.elen;
                    if (found == 1) res2 = rc.elen;
                    ++found;
                    if (found == 2) break;
                }
                const char* flags = "";
                if (c.ok && c.cfg.scenario != Scenario::Dipole && c.ringdown.late_ratio >= 0.1)
                    flags = "persistent_current";
                std::fprintf(f, "%s,%s,%s,%s,%.6g,%.6g,%.6g,%.6g,%.6g,%s\n",
                             to_string(c.cfg.scenario), to_string(c.cfg.orientation),
                             c.cfg.kernel.c_str(), c.ok ? "ok" : "failed", c.ringdown.peak_abs,
                             c.ringdown.ratio_after, c.ringdown.late_ratio, res1, res2, flags);
            }
            std::fclose(f);
        }
        std::FILE* sf = std::fopen((fs::path(out_root) / "spread.csv").string().c_str(), "w");
        if (sf) {
            std::fprintf(sf, "scenario,kernel,orientation_spread\n");
            for (const std::string& row : summary.spread_rows) std::fprintf(sf, "%s\n", row.c_str());
            std::fclose(sf);
        }
    }
    return summary;
}

}  // namespace wfdtd

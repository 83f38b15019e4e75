#pragma once

#include <iosfwd>
#include <string>

#include "wfdtd/delta_kernel.hpp"
#include "wfdtd/grid.hpp"
#include "wfdtd/vec3.hpp"
#include "wfdtd/waveform.hpp"

namespace wfdtd {

enum class Scenario { Dipole, CircleLoop, SquareLoop };
enum class OrientationKind { Axis, FaceDiagonal, BodyDiagonal };

const char* to_string(Scenario s);
const char* to_string(OrientationKind o);

// Whole-run configuration, parsed from a flat sectioned key=value file.
// Unknown sections or keys are rejected; the resolved configuration is
// echoed verbatim into each run's config.snapshot, which is itself a valid
// config file.
struct SimConfig {
    // [grid]
    int cells_per_meter = 32;
    Boundary boundary = Boundary::Pml;
    int pml_cells = 32;
    double clearance_m = 0.25;

    // [kernel] bs0 | bs1 | ... | bs8 | iso
    std::string kernel = "bs2";

    // [wire]
    Scenario scenario = Scenario::Dipole;
    OrientationKind orientation = OrientationKind::Axis;
    double dipole_length_m = 0.5;
    double loop_radius_m = 0.5;
    double square_side_m = 1.0;
    double radius_over_h = 0.1;
    double panel_target_over_h = 1.0;
    Vec3 center_offset_cells = {0.0, 0.0, 0.0};

    // [source] auto resolves to gaussian for the dipole and
    // differentiated_gaussian for the loops.
    std::string waveform = "auto";
    double amplitude_v = 1.0;
    double band_elen = 2.0;

    // [run]
    double duration_ns = 0.0;  // 0 = auto: 60 ns dipole, 250 ns loops
    std::string dt_policy = "paper";  // paper | explicit
    double dt_ps = 0.0;               // used when dt_policy = explicit
    unsigned long long seed = 1;
    int diagnostics_every = 100;  // steps between diagnostics rows; 0 = off
    std::string out_dir;

    double h() const { return 1.0 / cells_per_meter; }
    DeltaKernel make_kernel() const;
    Waveform::Kind waveform_kind() const;
    double duration_s() const;
    double band_edge_hz() const;
    Vec3 orientation_vector() const;
    double reference_length_m() const;  // dipole length, or loop circumference/perimeter
    double time_step_s() const;
    std::string run_id() const;

    void validate() const;  // throws ConfigError
    void write_snapshot(std::ostream& os) const;

    static SimConfig from_string(const std::string& text, const std::string& origin = "<string>");
    static SimConfig from_file(const std::string& file);
};

}  // namespace wfdtd

#pragma once

#include <span>
#include <vector>

#include "wfdtd/delta_kernel.hpp"
#include "wfdtd/grid.hpp"
#include "wfdtd/vec3.hpp"

namespace wfdtd {

// Piecewise-linear wire, open or closed. Panel q runs from vertex q to
// vertex q+1 (wrapping on closed paths). Currents live on panels at
// half-integer times, voltages on vertices at integer times.
struct WirePath {
    std::vector<Vec3> vertices;  // closed: N_w entries; open: N_w + 1
    bool closed = false;
    double radius = 0.0;  // physical wire radius a (meters)

    // Derived per panel.
    std::vector<double> length;
    std::vector<Vec3> tangent;
    std::vector<Vec3> midpoint;

    int panel_count() const { return int(length.size()); }
    int vertex_count() const { return int(vertices.size()); }
    Vec3 vertex_after(int q) const { return vertices[(q + 1) % vertices.size()]; }
    double total_length() const;

    void finalize();  // fills length/tangent/midpoint; throws ConfigError on degenerate panels

    // Open straight wire of the given length along `axis`, centered at `center`.
    // Panel count = round(length / panel_target), so panels are exactly uniform.
    static WirePath line(double wire_length, const Vec3& axis, const Vec3& center, double panel_target,
                         double radius);

    // Closed regular polygon approximating a circle of the given radius with
    // normal `normal`; panel count = round(circumference / panel_target).
    static WirePath circle(double loop_radius, const Vec3& normal, const Vec3& center, double panel_target,
                           double radius);

    // Closed square of the given side with normal `normal`; each side gets
    // round(side / panel_target) uniform panels. The first vertex is placed so
    // the feed panel (index side_panels/2) starts at the midpoint of a side.
    static WirePath square(double side, const Vec3& normal, const Vec3& center, double panel_target,
                           double radius);
};

// Per-unit-length line parameters. L = mu0/(2 pi) ln(d_avg / a) with d_avg
// the geometric-mean distance between the wire axis and the deposited
// current's transverse support; C = mu0 eps0 / L so signals travel at c0.
struct WireLC {
    double L = 0.0;      // H/m
    double C = 0.0;      // F/m
    double d_avg = 0.0;  // meters
};

// d_avg protocol: for a straight wire along one axis, the transverse profile
// of the deposited current is the product of the two node-aligned kernel
// factors sampled on the transverse edge lattice. ln(d_avg) is that discrete
// profile's weighted mean of ln(distance), averaged over a deterministic 4x4
// stratified set of in-cell wire offsets. The cell-unit result depends only
// on the kernel, so it is cached per kernel and scaled by the spacing.
double transverse_gmean_cell_units(const DeltaKernel& kernel);
WireLC compute_wire_lc(const WirePath& path, const DeltaKernel& kernel, const GridSpec& grid);

struct WireState {
    std::vector<double> I;  // per panel (A), half-integer times
    std::vector<double> V;  // per vertex (V), integer times
    double L = 0.0;         // H/m
    double C = 0.0;         // F/m
    int feed_panel = -1;    // -1: unfed

    static WireState make(const WirePath& path, const WireLC& lc, int feed_panel);
};

// Leapfrog telegrapher updates (PEC wire, R = 0). e_tan holds the
// interpolated tangential electric field per panel; gap_voltage is the
// delta-gap source value applied at the feed panel as gap_voltage / length.
// Open wires treat the current beyond either tip as zero, which is the
// discrete form of the current vanishing at the tips.
void advance_current(WireState& s, const WirePath& path, std::span<const double> e_tan, double gap_voltage,
                     double dt);
void advance_voltage(WireState& s, const WirePath& path, double dt);

}  // namespace wfdtd

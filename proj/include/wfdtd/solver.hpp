#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "wfdtd/coupling.hpp"
#include "wfdtd/delta_kernel.hpp"
#include "wfdtd/diagnostics.hpp"
#include "wfdtd/grid.hpp"
#include "wfdtd/pml.hpp"
#include "wfdtd/wire.hpp"

namespace wfdtd {

// Interpolation used in the wire current update. Adjoint shares the
// deposition weights and keeps the coupled system energy-conserving;
// PointwiseLinear samples E at panel midpoints by trilinear interpolation
// and exists as the non-adjoint control.
enum class InterpMode { Adjoint, PointwiseLinear };

struct SolverOptions {
    InterpMode interp = InterpMode::Adjoint;
    bool track_energy = false;  // retain H and I one level back, report energy per step
    int nan_check_interval = 100;
    bool enforce_cfl = true;
    PmlSpec pml;  // used when grid.boundary == Pml
};

double paper_time_step(const GridSpec& g);  // h / (2 sqrt(3) c0)

// Coupled leapfrog FDTD + thin-wire stepper. One step() performs, in order:
//   H(n+1/2) <- E(n);  I(n+1/2) <- V(n), E(n);  J(n+1/2) = deposit(I);
//   E(n+1) <- H(n+1/2), J(n+1/2);  V(n+1) <- I(n+1/2).
// The current update precedes the E update so E consumes the same deposited
// J that enters the power identity.
class Simulation {
  public:
    Simulation(const GridSpec& grid, double dt, SolverOptions opts = {});

    // lc_override replaces the kernel-derived per-unit-length parameters
    // (sensitivity studies and tests).
    void attach_wire(WirePath path, const DeltaKernel& kernel, int feed_panel,
                     const QuadratureOptions& qopts = {}, const WireLC* lc_override = nullptr);
    void set_gap_source(std::function<double(double)> gap_voltage);

    void step();

    double dt() const { return dt_; }
    long step_index() const { return step_; }
    double time() const { return step_ * dt_; }

    const GridSpec& grid() const { return grid_; }
    YeeFields& fields() { return f_; }
    const YeeFields& fields() const { return f_; }
    bool has_wire() const { return has_wire_; }
    WireState& wire() { return wire_; }
    const WireState& wire() const { return wire_; }
    const WirePath& path() const { return path_; }
    const CouplingTable& table() const { return table_; }
    const WireLC& lc() const { return lc_; }

    // Valid when opts.track_energy: state retained from the previous level
    // and the energy evaluated at the last completed step.
    const VecField& h_prev() const { return h_prev_; }
    const std::vector<double>& i_prev() const { return i_prev_; }
    const EnergyReport& last_energy() const { return energy_; }

    struct Limits {
        double dt_em = 0.0;
        double dt_wire = 0.0;
        double curl_norm = 0.0;
        double wire_norm = 0.0;
        double interp_norm = 0.0;
    };
    Limits cfl_limits() const;

    // Flat little-endian binary state dump: header (dims, spacings, step),
    // then E, H, J component arrays, wire I and V, and PML psi memory.
    void save_checkpoint(const std::string& file) const;
    void load_checkpoint(const std::string& file);

  private:
    void update_H();
    void update_E();
    void clamp_boundary_E();
    void screen_for_nan() const;

    GridSpec grid_;
    double dt_;
    SolverOptions opts_;
    YeeFields f_;
    std::unique_ptr<CfsPml> pml_;

    bool has_wire_ = false;
    WirePath path_;
    CouplingTable table_;
    WireLC lc_;
    WireState wire_;
    std::vector<double> e_tan_;
    std::function<double(double)> gap_source_;

    VecField h_prev_;
    std::vector<double> i_prev_;
    EnergyReport energy_;

    long step_ = 0;
};

// Trilinear midpoint sampling of the tangential field (the non-adjoint
// control path). Periodic index wrap.
void tangential_field_pointwise(const WirePath& path, const VecField& e, const GridSpec& g,
                                std::vector<double>& out);

}  // namespace wfdtd

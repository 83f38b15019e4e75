#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wfdtd/coupling.hpp"
#include "wfdtd/grid.hpp"
#include "wfdtd/wire.hpp"

namespace wfdtd {

struct ChargeResidual {
    double max_abs_div = 0.0;  // max node |div J|, A/m^3
    double relative = 0.0;     // max |div J| * h / max|J|
};

// Node-wise discrete divergence of an edge current, normalized by the
// field's own scale. On Pml grids only interior nodes (one cell in from the
// layer) are scanned.
ChargeResidual charge_residual(const VecField& j, const GridSpec& g);

// Two-time-level discrete energy of the coupled system. The magnetic and
// current terms pair consecutive half-step levels, which is the combination
// the leapfrog scheme conserves exactly.
struct EnergyReport {
    double e_term = 0.0;  // eps0/2 <E, E>
    double h_term = 0.0;  // mu0/2 <H+, H->
    double v_term = 0.0;  // C/2 <V, V>
    double i_term = 0.0;  // L/2 <I+, I->
    double total = 0.0;
};

EnergyReport total_energy(const VecField& e, const VecField& h_new, const VecField& h_prev,
                          const GridSpec& g, const WireState* wire = nullptr,
                          const std::vector<double>* i_prev = nullptr, const WirePath* path = nullptr);

// EMF around a closed loop driven by the discrete gradient of phi; zero to
// roundoff for the charge-conserving kernels. Throws ConfigError on open
// wires.
struct LoopEmf {
    double emf = 0.0;        // sum of interpolated tangential field * panel length
    double magnitude = 0.0;  // sum of absolute contributions (normalization)
};

LoopEmf loop_emf(const CouplingTable& table, const WirePath& path, const ScalarField& phi,
                 const GridSpec& g);

// Largest singular values by power iteration on the normal operator, with a
// deterministic seed. Tolerance is on the relative change of the Rayleigh
// quotient; throws NumericalError if it fails to settle.
double op_norm_curl(const GridSpec& g, double rel_tol = 1e-10, int max_iters = 200000,
                    std::uint64_t seed = 0x5eed5eedULL);
double op_norm_wire_difference(const WirePath& path, double rel_tol = 1e-10, int max_iters = 200000,
                               std::uint64_t seed = 0x5eed5eedULL);
double op_norm_interp(const CouplingTable& table, const WirePath& path, const GridSpec& g,
                      double rel_tol = 1e-8, int max_iters = 100000, std::uint64_t seed = 0x5eed5eedULL);

// Exact symbol maxima for the uniform periodic operators, used as oracles
// and for fast CFL evaluation.
double curl_norm_symbol(const GridSpec& g);
double wire_difference_norm_symbol(const WirePath& path);

// Append-only diagnostics CSV: step, time, quantity, value.
class DiagnosticsWriter {
  public:
    explicit DiagnosticsWriter(const std::string& file_path);
    ~DiagnosticsWriter();
    void write(long step, double time, const std::string& quantity, double value);

  private:
    std::FILE* f_ = nullptr;
};

}  // namespace wfdtd

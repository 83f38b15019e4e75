#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wfdtd {

struct CheckResult {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    bool at_most = true;  // pass iff measured <= bound; negative controls use >=
    bool pass = false;
    std::string note;
};

bool all_pass(const std::vector<CheckResult>& rs);

// Partition of unity and the staggered-difference/derivative identity over
// dense sample grids, orders 0..4.
std::vector<CheckResult> check_bspline_identities();

// Constant-current deposits on circle and square loops, three orientations,
// composite kernels 0/2/4, plus the isotropic negative control on oblique
// loops and `random_geometries` arbitrary closed polylines.
std::vector<CheckResult> check_charge_conservation(int random_geometries, std::uint64_t seed);

// Random (E, I) pairs per kernel; tamper_factor != 1 scales the
// interpolation output to prove the check catches a broken adjoint.
std::vector<CheckResult> check_adjointness(int pairs_per_kernel, std::uint64_t seed,
                                           double tamper_factor = 1.0);

// Gradient-field EMF around closed loops per composite kernel and
// orientation, with the isotropic control on an oblique loop.
std::vector<CheckResult> check_loop_emf(int potentials_per_case, std::uint64_t seed);

// Negative control for the exact quadrature: collapsing each panel to one
// Gauss interval of the same total point count must degrade the charge
// residual by at least six orders of magnitude.
std::vector<CheckResult> check_quadrature_breakpoint_control(std::uint64_t seed);

// Coupled periodic leapfrog energy drift over `steps`, and the non-adjoint
// (pointwise interpolation) control.
std::vector<CheckResult> check_energy_conservation(long steps, std::uint64_t seed);

// Cumulative Gauss-law ledger on a driven periodic run: the update identity
// holds to roundoff for every kernel, and the accumulated deposited
// divergence stays at roundoff for composite kernels while growing for the
// isotropic control.
std::vector<CheckResult> check_gauss_ledger(long steps, std::uint64_t seed);

// Power-iteration operator norms against closed forms, and the interpolation
// norm scaling ~ 1/h over h = 1/8, 1/16, 1/32.
std::vector<CheckResult> check_operator_norms();

// PML reflection: normally incident broadband pulse against a doubled-domain
// reference; reflected amplitude must stay below -60 dB of the incident peak.
std::vector<CheckResult> check_pml_reflection();

}  // namespace wfdtd

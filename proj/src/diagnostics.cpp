#include "wfdtd/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "wfdtd/constants.hpp"
#include "wfdtd/errors.hpp"

namespace wfdtd {

ChargeResidual charge_residual(const VecField& j, const GridSpec& g) {
    const ScalarField div = div_edge(j, g);
    int lo = 0, hi_off = 0;
    if (g.boundary == Boundary::Pml) {
        lo = g.pml_cells + 1;  // divergence diagnostics live in the interior box
        hi_off = g.pml_cells + 1;
    }
    double max_div = 0.0;
    for (int i = lo; i < g.nx - hi_off; ++i)
        for (int jj = lo; jj < g.ny - hi_off; ++jj)
            for (int k = lo; k < g.nz - hi_off; ++k)
                max_div = std::max(max_div, std::abs(div.at(i, jj, k)));
    ChargeResidual r;
    r.max_abs_div = max_div;
    const double jmax = max_abs(j);
    r.relative = jmax > 0.0 ? max_div * g.dx / jmax : 0.0;
    return r;
}

EnergyReport total_energy(const VecField& e, const VecField& h_new, const VecField& h_prev,
                          const GridSpec& g, const WireState* wire, const std::vector<double>* i_prev,
                          const WirePath* path) {
    EnergyReport r;
    r.e_term = 0.5 * kEps0 * inner_h(e, e, g);
    r.h_term = 0.5 * kMu0 * inner_h(h_new, h_prev, g);
    if (wire && path) {
        double v2 = 0.0, ii = 0.0;
        const int n = path->panel_count();
        for (int q = 0; q < n; ++q) {
            ii += wire->I[q] * (*i_prev)[q] * path->length[q];
            v2 += wire->V[q] * wire->V[q] * path->length[q];
        }
        if (!path->closed) {
            // Open wire: one more vertex than panels; weight ends by their
            // own panel, interior vertices by the dual length.
            v2 = 0.0;
            for (int q = 0; q <= n; ++q) {
                const double wlen = 0.5 * ((q > 0 ? path->length[q - 1] : 0.0) +
                                           (q < n ? path->length[q] : 0.0));
                v2 += wire->V[q] * wire->V[q] * wlen;
            }
        }
        r.v_term = 0.5 * wire->C * v2;
        r.i_term = 0.5 * wire->L * ii;
    }
    r.total = r.e_term + r.h_term + r.v_term + r.i_term;
    return r;
}

LoopEmf loop_emf(const CouplingTable& table, const WirePath& path, const ScalarField& phi,
                 const GridSpec& g) {
    if (!path.closed) throw ConfigError("loop_emf: EMF is defined for closed loops only");
    const VecField e = grad_node(phi, g);
    std::vector<double> etan(path.panel_count());
    table.interpolate(e, etan);
    LoopEmf r;
    for (int q = 0; q < path.panel_count(); ++q) {
        r.emf += etan[q] * path.length[q];
        r.magnitude += std::abs(etan[q]) * path.length[q];
    }
    return r;
}

double op_norm_curl(const GridSpec& g, double rel_tol, int max_iters, std::uint64_t seed) {
    if (g.boundary != Boundary::Periodic)
        throw ConfigError("op_norm_curl: defined on periodic grids");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    VecField x(g);
    for (ScalarField* s : {&x.x, &x.y, &x.z})
        for (double& v : s->v) v = u(rng);

    double rho_prev = -1.0;
    for (int it = 0; it < max_iters; ++it) {
        const double nrm = std::sqrt(inner_h(x, x, g));
        if (!(nrm > 0.0)) throw NumericalError("op_norm_curl: degenerate iterate");
        for (ScalarField* s : {&x.x, &x.y, &x.z})
            for (double& v : s->v) v /= nrm;
        VecField y = curl_H(curl_E(x, g), g);
        const double rho = inner_h(x, y, g);
        if (rho_prev >= 0.0 && std::abs(rho - rho_prev) <= rel_tol * rho) return std::sqrt(rho);
        rho_prev = rho;
        x = std::move(y);
    }
    throw NumericalError("op_norm_curl: power iteration did not settle");
}

double op_norm_wire_difference(const WirePath& path, double rel_tol, int max_iters,
                               std::uint64_t seed) {
    if (!path.closed) throw ConfigError("op_norm_wire_difference: defined on closed wires");
    const int n = path.panel_count();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> x(n);
    for (double& v : x) v = u(rng);

    auto inner = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (int q = 0; q < n; ++q) s += a[q] * b[q] * path.length[q];
        return s;
    };
    double rho_prev = -1.0;
    std::vector<double> d(n), y(n);
    for (int it = 0; it < max_iters; ++it) {
        const double nrm = std::sqrt(inner(x, x));
        if (!(nrm > 0.0)) throw NumericalError("op_norm_wire_difference: degenerate iterate");
        for (double& v : x) v /= nrm;
        for (int q = 0; q < n; ++q) d[q] = (x[(q + 1) % n] - x[q]) / path.length[q];
        for (int q = 0; q < n; ++q) y[q] = (d[(q + n - 1) % n] - d[q]) / path.length[q];
        const double rho = inner(x, y);
        if (rho_prev >= 0.0 && std::abs(rho - rho_prev) <= rel_tol * rho) return std::sqrt(rho);
        rho_prev = rho;
        x = y;
    }
    throw NumericalError("op_norm_wire_difference: power iteration did not settle");
}

double op_norm_interp(const CouplingTable& table, const WirePath& path, const GridSpec& g,
                      double rel_tol, int max_iters, std::uint64_t seed) {
    const int n = path.panel_count();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> x(n);
    for (double& v : x) v = u(rng);

    auto inner = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (int q = 0; q < n; ++q) s += a[q] * b[q] * path.length[q];
        return s;
    };
    VecField j(g);
    std::vector<double> y(n);
    double rho_prev = -1.0;
    for (int it = 0; it < max_iters; ++it) {
        const double nrm = std::sqrt(inner(x, x));
        if (!(nrm > 0.0)) throw NumericalError("op_norm_interp: degenerate iterate");
        for (double& v : x) v /= nrm;
        table.deposit(x, j);
        table.interpolate(j, y);
        const double rho = inner(x, y);
        if (rho_prev >= 0.0 && std::abs(rho - rho_prev) <= rel_tol * rho) return std::sqrt(rho);
        rho_prev = rho;
        x = y;
    }
    throw NumericalError("op_norm_interp: power iteration did not settle");
}

double curl_norm_symbol(const GridSpec& g) {
    return 2.0 * std::sqrt(1.0 / (g.dx * g.dx) + 1.0 / (g.dy * g.dy) + 1.0 / (g.dz * g.dz));
}

double wire_difference_norm_symbol(const WirePath& path) {
    if (!path.closed) throw ConfigError("wire_difference_norm_symbol: closed wires only");
    const int n = path.panel_count();
    double len_min = path.length[0];
    for (double l : path.length) len_min = std::min(len_min, l);
    double best = 0.0;
    for (int k = 0; k < n; ++k) best = std::max(best, std::abs(std::sin(M_PI * k / n)));
    return 2.0 * best / len_min;
}

DiagnosticsWriter::DiagnosticsWriter(const std::string& file_path) {
    f_ = std::fopen(file_path.c_str(), "a");
    if (!f_) throw ConfigError("diagnostics: cannot open " + file_path);
    if (std::ftell(f_) == 0) std::fprintf(f_, "step,t_s,quantity,value\n");
}

DiagnosticsWriter::~DiagnosticsWriter() {
    if (f_) std::fclose(f_);
}

void DiagnosticsWriter::write(long step, double time, const std::string& quantity, double value) {
    std::fprintf(f_, "%ld,%.17g,%s,%.17g\n", step, time, quantity.c_str(), value);
}

}  // namespace wfdtd

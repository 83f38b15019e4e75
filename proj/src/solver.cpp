#include "wfdtd/solver.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

#include "wfdtd/constants.hpp"
#include "wfdtd/errors.hpp"

namespace wfdtd {

double paper_time_step(const GridSpec& g) { return g.dx / (2.0 * std::sqrt(3.0) * speed_of_light()); }

Simulation::Simulation(const GridSpec& grid, double dt, SolverOptions opts)
    : grid_(grid), dt_(dt), opts_(opts), f_(grid) {
    grid_.validate();
    if (!(dt_ > 0.0)) throw ConfigError("solver: time step must be positive");
    if (grid_.boundary == Boundary::Pml) {
        opts_.pml.thickness = grid_.pml_cells > 0 ? grid_.pml_cells : opts_.pml.thickness;
        grid_.pml_cells = opts_.pml.thickness;
        pml_ = std::make_unique<CfsPml>(grid_, opts_.pml, dt_);
    }
    if (opts_.enforce_cfl) {
        const Limits lim = cfl_limits();
        if (dt_ > lim.dt_em * (1.0 + 1e-12))
            throw ConfigError("solver: dt " + std::to_string(dt_) + " s exceeds the field bound " +
                              std::to_string(lim.dt_em) + " s");
    }
    if (opts_.track_energy) h_prev_ = f_.H;
}

void Simulation::attach_wire(WirePath path, const DeltaKernel& kernel, int feed_panel,
                             const QuadratureOptions& qopts, const WireLC* lc_override) {
    path_ = std::move(path);
    lc_ = lc_override ? *lc_override : compute_wire_lc(path_, kernel, grid_);
    table_ = CouplingTable::build(path_, kernel, grid_, qopts);
    wire_ = WireState::make(path_, lc_, feed_panel);
    e_tan_.assign(path_.panel_count(), 0.0);
    has_wire_ = true;
    if (opts_.track_energy) i_prev_ = wire_.I;
    if (opts_.enforce_cfl) {
        const Limits lim = cfl_limits();
        if (dt_ > std::min(lim.dt_em, lim.dt_wire) * (1.0 + 1e-12))
            throw ConfigError("solver: dt " + std::to_string(dt_) +
                              " s exceeds the coupled CFL bound " +
                              std::to_string(std::min(lim.dt_em, lim.dt_wire)) + " s");
    }
}

void Simulation::set_gap_source(std::function<double(double)> gap_voltage) {
    gap_source_ = std::move(gap_voltage);
}

Simulation::Limits Simulation::cfl_limits() const {
    Limits lim;
    lim.curl_norm = curl_norm_symbol(grid_);
    if (has_wire_) {
        if (path_.closed) {
            lim.wire_norm = wire_difference_norm_symbol(path_);
        } else {
            double len_min = path_.length[0];
            for (double l : path_.length) len_min = std::min(len_min, l);
            lim.wire_norm = 2.0 / len_min;
        }
        lim.interp_norm = op_norm_interp(table_, path_, grid_);
        lim.dt_wire = std::sqrt(lc_.L * lc_.C) / lim.wire_norm;
        lim.dt_em = std::sqrt(2.0 * kMu0 * kEps0 /
                              (lim.curl_norm * lim.curl_norm +
                               2.0 * kMu0 / lc_.L * lim.interp_norm * lim.interp_norm));
    } else {
        lim.dt_em = std::sqrt(2.0 * kMu0 * kEps0) / lim.curl_norm;
        lim.dt_wire = std::numeric_limits<double>::infinity();
    }
    return lim;
}

void Simulation::update_H() {
    const bool per = grid_.boundary == Boundary::Periodic;
    const int nx = grid_.nx, ny = grid_.ny, nz = grid_.nz;
    const double cy = dt_ / (kMu0 * grid_.dy), cz = dt_ / (kMu0 * grid_.dz), cx = dt_ / (kMu0 * grid_.dx);
    const double* iky = pml_ ? pml_->inv_kappa_half(1).data() : nullptr;
    const double* ikz = pml_ ? pml_->inv_kappa_half(2).data() : nullptr;
    const double* ikx = pml_ ? pml_->inv_kappa_half(0).data() : nullptr;

    const double* ex = f_.E.x.v.data();
    const double* ey = f_.E.y.v.data();
    const double* ez = f_.E.z.v.data();
    double* hx = f_.H.x.v.data();
    double* hy = f_.H.y.v.data();
    double* hz = f_.H.z.v.data();
    const std::size_t sx = std::size_t(ny) * nz, sy = nz;

#pragma omp parallel for collapse(2) schedule(static)
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            const int ip = i + 1 < nx ? i + 1 : (per ? 0 : -1);
            const int jp = j + 1 < ny ? j + 1 : (per ? 0 : -1);
            const std::size_t r = std::size_t(i) * sx + std::size_t(j) * sy;
            const std::size_t rip = ip >= 0 ? std::size_t(ip) * sx + std::size_t(j) * sy : 0;
            const std::size_t rjp = jp >= 0 ? std::size_t(i) * sx + std::size_t(jp) * sy : 0;
            const double fy = iky ? iky[j] : 1.0;
            const double fx = ikx ? ikx[i] : 1.0;
            for (int k = 0; k < nz; ++k) {
                const int kp = k + 1 < nz ? k + 1 : (per ? 0 : -1);
                const double fz = ikz ? ikz[k] : 1.0;
                const double ez_c = ez[r + k];
                const double ey_c = ey[r + k];
                const double ex_c = ex[r + k];
                const double ez_jp = jp >= 0 ? ez[rjp + k] : 0.0;
                const double ey_kp = kp >= 0 ? ey[r + kp] : 0.0;
                const double ex_kp = kp >= 0 ? ex[r + kp] : 0.0;
                const double ez_ip = ip >= 0 ? ez[rip + k] : 0.0;
                const double ey_ip = ip >= 0 ? ey[rip + k] : 0.0;
                const double ex_jp = jp >= 0 ? ex[rjp + k] : 0.0;
                hx[r + k] -= cy * fy * (ez_jp - ez_c) - cz * fz * (ey_kp - ey_c);
                hy[r + k] -= cz * fz * (ex_kp - ex_c) - cx * fx * (ez_ip - ez_c);
                hz[r + k] -= cx * fx * (ey_ip - ey_c) - cy * fy * (ex_jp - ex_c);
            }
        }
    }
}

void Simulation::update_E() {
    const bool per = grid_.boundary == Boundary::Periodic;
    const int nx = grid_.nx, ny = grid_.ny, nz = grid_.nz;
    const double cy = dt_ / (kEps0 * grid_.dy), cz = dt_ / (kEps0 * grid_.dz), cx = dt_ / (kEps0 * grid_.dx);
    const double cj = dt_ / kEps0;
    const double* iky = pml_ ? pml_->inv_kappa_node(1).data() : nullptr;
    const double* ikz = pml_ ? pml_->inv_kappa_node(2).data() : nullptr;
    const double* ikx = pml_ ? pml_->inv_kappa_node(0).data() : nullptr;

    double* ex = f_.E.x.v.data();
    double* ey = f_.E.y.v.data();
    double* ez = f_.E.z.v.data();
    const double* hx = f_.H.x.v.data();
    const double* hy = f_.H.y.v.data();
    const double* hz = f_.H.z.v.data();
    const double* jx = f_.J.x.v.data();
    const double* jy = f_.J.y.v.data();
    const double* jz = f_.J.z.v.data();
    const std::size_t sx = std::size_t(ny) * nz, sy = nz;

#pragma omp parallel for collapse(2) schedule(static)
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            const int im = i > 0 ? i - 1 : (per ? nx - 1 : -1);
            const int jm = j > 0 ? j - 1 : (per ? ny - 1 : -1);
            const std::size_t r = std::size_t(i) * sx + std::size_t(j) * sy;
            const std::size_t rim = im >= 0 ? std::size_t(im) * sx + std::size_t(j) * sy : 0;
            const std::size_t rjm = jm >= 0 ? std::size_t(i) * sx + std::size_t(jm) * sy : 0;
            const double fy = iky ? iky[j] : 1.0;
            const double fx = ikx ? ikx[i] : 1.0;
            for (int k = 0; k < nz; ++k) {
                const int km = k > 0 ? k - 1 : (per ? nz - 1 : -1);
                const double fz = ikz ? ikz[k] : 1.0;
                const double hz_c = hz[r + k];
                const double hy_c = hy[r + k];
                const double hx_c = hx[r + k];
                const double hz_jm = jm >= 0 ? hz[rjm + k] : 0.0;
                const double hy_km = km >= 0 ? hy[r + km] : 0.0;
                const double hx_km = km >= 0 ? hx[r + km] : 0.0;
                const double hz_im = im >= 0 ? hz[rim + k] : 0.0;
                const double hy_im = im >= 0 ? hy[rim + k] : 0.0;
                const double hx_jm = jm >= 0 ? hx[rjm + k] : 0.0;
                ex[r + k] += cy * fy * (hz_c - hz_jm) - cz * fz * (hy_c - hy_km) - cj * jx[r + k];
                ey[r + k] += cz * fz * (hx_c - hx_km) - cx * fx * (hz_c - hz_im) - cj * jy[r + k];
                ez[r + k] += cx * fx * (hy_c - hy_im) - cy * fy * (hx_c - hx_jm) - cj * jz[r + k];
            }
        }
    }
}

void Simulation::clamp_boundary_E() {
    const int nx = grid_.nx, ny = grid_.ny, nz = grid_.nz;
    // Tangential E on the low-side walls (the stored part of the PEC box).
    for (int i = 0; i < nx; ++i)
        for (int k = 0; k < nz; ++k) f_.E.x.at(i, 0, k) = 0.0;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) f_.E.x.at(i, j, 0) = 0.0;
    for (int j = 0; j < ny; ++j)
        for (int k = 0; k < nz; ++k) f_.E.y.at(0, j, k) = 0.0;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) f_.E.y.at(i, j, 0) = 0.0;
    for (int j = 0; j < ny; ++j)
        for (int k = 0; k < nz; ++k) f_.E.z.at(0, j, k) = 0.0;
    for (int i = 0; i < nx; ++i)
        for (int k = 0; k < nz; ++k) f_.E.z.at(i, 0, k) = 0.0;
}

void Simulation::screen_for_nan() const {
    const char* names[9] = {"Ex", "Ey", "Ez", "Hx", "Hy", "Hz", "Jx", "Jy", "Jz"};
    const ScalarField* fields[9] = {&f_.E.x, &f_.E.y, &f_.E.z, &f_.H.x, &f_.H.y,
                                    &f_.H.z, &f_.J.x, &f_.J.y, &f_.J.z};
    for (int s = 0; s < 9; ++s)
        for (double v : fields[s]->v)
            if (!std::isfinite(v))
                throw NumericalError("solver: non-finite " + std::string(names[s]) + " at step " +
                                     std::to_string(step_));
}

void Simulation::step() {
    if (opts_.nan_check_interval > 0 && step_ % opts_.nan_check_interval == 0) screen_for_nan();
    if (opts_.track_energy) {
        h_prev_ = f_.H;
        if (has_wire_) i_prev_ = wire_.I;
    }

    update_H();
    if (pml_) pml_->apply_H(f_.H, f_.E);

    if (has_wire_) {
        if (opts_.interp == InterpMode::Adjoint)
            table_.interpolate(f_.E, e_tan_);
        else
            tangential_field_pointwise(path_, f_.E, grid_, e_tan_);
        const double v_gap = gap_source_ ? gap_source_(time()) : 0.0;
        advance_current(wire_, path_, e_tan_, v_gap, dt_);
        table_.deposit(wire_.I, f_.J);
    }

    if (opts_.track_energy)
        energy_ = total_energy(f_.E, f_.H, h_prev_, grid_, has_wire_ ? &wire_ : nullptr,
                               has_wire_ ? &i_prev_ : nullptr, has_wire_ ? &path_ : nullptr);

    update_E();
    if (pml_) pml_->apply_E(f_.E, f_.H);
    if (grid_.boundary == Boundary::Pml) clamp_boundary_E();

    if (has_wire_) advance_voltage(wire_, path_, dt_);
    ++step_;
}

namespace {

void write_block(std::FILE* f, const void* p, std::size_t bytes) {
    if (std::fwrite(p, 1, bytes, f) != bytes) throw NumericalError("checkpoint: short write");
}

void read_block(std::FILE* f, void* p, std::size_t bytes) {
    if (std::fread(p, 1, bytes, f) != bytes) throw NumericalError("checkpoint: short read");
}

}  // namespace

void Simulation::save_checkpoint(const std::string& file) const {
    std::FILE* f = std::fopen(file.c_str(), "wb");
    if (!f) throw ConfigError("checkpoint: cannot open " + file + " for writing");
    const char magic[8] = {'W', 'F', 'D', 'T', 'D', 'C', 'P', '1'};
    write_block(f, magic, 8);
    const std::uint64_t dims[4] = {std::uint64_t(grid_.nx), std::uint64_t(grid_.ny),
                                   std::uint64_t(grid_.nz), std::uint64_t(step_)};
    write_block(f, dims, sizeof dims);
    const double spac[3] = {grid_.dx, grid_.dy, grid_.dz};
    write_block(f, spac, sizeof spac);
    for (const ScalarField* s : {&f_.E.x, &f_.E.y, &f_.E.z, &f_.H.x, &f_.H.y, &f_.H.z, &f_.J.x,
                                 &f_.J.y, &f_.J.z})
        write_block(f, s->v.data(), s->v.size() * sizeof(double));
    const std::uint64_t wire_sizes[2] = {std::uint64_t(wire_.I.size()), std::uint64_t(wire_.V.size())};
    write_block(f, wire_sizes, sizeof wire_sizes);
    if (!wire_.I.empty()) write_block(f, wire_.I.data(), wire_.I.size() * sizeof(double));
    if (!wire_.V.empty()) write_block(f, wire_.V.data(), wire_.V.size() * sizeof(double));
    const std::uint64_t n_slabs = pml_ ? pml_->slabs().size() : 0;
    write_block(f, &n_slabs, sizeof n_slabs);
    if (pml_)
        for (const std::vector<double>& s : pml_->slabs())
            write_block(f, s.data(), s.size() * sizeof(double));
    std::fclose(f);
}

void Simulation::load_checkpoint(const std::string& file) {
    std::FILE* f = std::fopen(file.c_str(), "rb");
    if (!f) throw ConfigError("checkpoint: cannot open " + file);
    char magic[8];
    read_block(f, magic, 8);
    if (std::memcmp(magic, "WFDTDCP1", 8) != 0) {
        std::fclose(f);
        throw ConfigError("checkpoint: bad magic in " + file);
    }
    std::uint64_t dims[4];
    read_block(f, dims, sizeof dims);
    double spac[3];
    read_block(f, spac, sizeof spac);
    if (int(dims[0]) != grid_.nx || int(dims[1]) != grid_.ny || int(dims[2]) != grid_.nz ||
        spac[0] != grid_.dx || spac[1] != grid_.dy || spac[2] != grid_.dz) {
        std::fclose(f);
        throw ConfigError("checkpoint: grid mismatch in " + file);
    }
    step_ = long(dims[3]);
    for (ScalarField* s : {&f_.E.x, &f_.E.y, &f_.E.z, &f_.H.x, &f_.H.y, &f_.H.z, &f_.J.x, &f_.J.y,
                           &f_.J.z})
        read_block(f, s->v.data(), s->v.size() * sizeof(double));
    std::uint64_t wire_sizes[2];
    read_block(f, wire_sizes, sizeof wire_sizes);
    if (wire_sizes[0] != wire_.I.size() || wire_sizes[1] != wire_.V.size()) {
        std::fclose(f);
        throw ConfigError("checkpoint: wire size mismatch in " + file);
    }
    if (!wire_.I.empty()) read_block(f, wire_.I.data(), wire_.I.size() * sizeof(double));
    if (!wire_.V.empty()) read_block(f, wire_.V.data(), wire_.V.size() * sizeof(double));
    std::uint64_t n_slabs = 0;
    read_block(f, &n_slabs, sizeof n_slabs);
    if (pml_) {
        if (n_slabs != pml_->slabs().size()) {
            std::fclose(f);
            throw ConfigError("checkpoint: pml state mismatch in " + file);
        }
        for (std::vector<double>& s : pml_->slabs()) read_block(f, s.data(), s.size() * sizeof(double));
    }
    std::fclose(f);
}

void tangential_field_pointwise(const WirePath& path, const VecField& e, const GridSpec& g,
                                std::vector<double>& out) {
    out.resize(path.panel_count());
    for (int q = 0; q < path.panel_count(); ++q) {
        double acc = 0.0;
        for (int axis = 0; axis < 3; ++axis) {
            if (path.tangent[q][axis] == 0.0) continue;
            double u[3], fr[3];
            int base[3];
            for (int d = 0; d < 3; ++d) {
                const double stag = d == axis ? 0.5 : 0.0;
                u[d] = (path.midpoint[q][d] - g.origin[d]) / g.spacing(d) - stag;
                base[d] = int(std::floor(u[d]));
                fr[d] = u[d] - base[d];
            }
            double val = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    for (int c = 0; c < 2; ++c) {
                        const double w = (a ? fr[0] : 1.0 - fr[0]) * (b ? fr[1] : 1.0 - fr[1]) *
                                         (c ? fr[2] : 1.0 - fr[2]);
                        const int ii = ((base[0] + a) % g.nx + g.nx) % g.nx;
                        const int jj = ((base[1] + b) % g.ny + g.ny) % g.ny;
                        const int kk = ((base[2] + c) % g.nz + g.nz) % g.nz;
                        val += w * e.comp(axis).at(ii, jj, kk);
                    }
            acc += val * path.tangent[q][axis];
        }
        out[q] = acc;
    }
}

}  // namespace wfdtd

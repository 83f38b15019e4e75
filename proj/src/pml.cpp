#include "wfdtd/pml.hpp"

#include <cmath>
#include <string>

#include "wfdtd/constants.hpp"
#include "wfdtd/errors.hpp"

namespace wfdtd {

void PmlSpec::validate() const {
    if (thickness < 8) throw ConfigError("pml: thickness must be at least 8 cells");
    if (grading_order < 1) throw ConfigError("pml: grading order must be positive");
    if (!(sigma_scale >= 0.0) || !(kappa_max >= 1.0) || !(alpha_max >= 0.0))
        throw ConfigError("pml: bad grading parameters");
}

namespace {

struct Profile {
    double sigma, kappa, alpha;
};

// p is the coordinate along the axis in cell units; depth grows toward the
// outer walls and is zero across the interior.
Profile profile_at(double p, int n, const PmlSpec& s, double h) {
    double rho = 0.0;
    if (p < s.thickness)
        rho = (s.thickness - p) / s.thickness;
    else if (p > n - s.thickness)
        rho = (p - (n - s.thickness)) / s.thickness;
    if (rho <= 0.0) return {0.0, 1.0, 0.0};
    if (rho > 1.0) rho = 1.0;
    const double g = std::pow(rho, s.grading_order);
    const double sigma_max = s.sigma_scale * (s.grading_order + 1) / (free_space_impedance() * h);
    return {sigma_max * g, 1.0 + (s.kappa_max - 1.0) * g, s.alpha_max * (1.0 - rho)};
}

}  // namespace

CfsPml::CfsPml(const GridSpec& grid, const PmlSpec& spec, double dt) : grid_(grid), spec_(spec), dt_(dt) {
    spec_.validate();
    for (int d = 0; d < 3; ++d) {
        const int n = grid.count(d);
        if (spec_.axes[d] && n < 2 * spec_.thickness + 4)
            throw ConfigError("pml: axis " + std::to_string(d) + " has " + std::to_string(n) +
                              " cells, too few for two " + std::to_string(spec_.thickness) +
                              "-cell layers");
        inv_kappa_node_[d].assign(n, 1.0);
        inv_kappa_half_[d].assign(n, 1.0);
        coeff_node_[d].b.assign(n, 1.0);
        coeff_node_[d].a.assign(n, 0.0);
        coeff_half_[d].b.assign(n, 1.0);
        coeff_half_[d].a.assign(n, 0.0);
        slab_len_[d] = spec_.axes[d] ? 2 * spec_.thickness : 0;
        if (!spec_.axes[d]) continue;
        const double h = grid.spacing(d);
        for (int u = 0; u < n; ++u) {
            for (int half = 0; half < 2; ++half) {
                const Profile p = profile_at(u + 0.5 * half, n, spec_, h);
                const double b = std::exp(-(p.sigma / p.kappa + p.alpha) * dt / kEps0);
                const double denom = p.kappa * (p.sigma + p.kappa * p.alpha);
                const double a = denom > 0.0 ? p.sigma / denom * (b - 1.0) : 0.0;
                Coeff& c = half ? coeff_half_[d] : coeff_node_[d];
                c.b[u] = b;
                c.a[u] = a;
                (half ? inv_kappa_half_[d] : inv_kappa_node_[d])[u] = 1.0 / p.kappa;
            }
        }
    }

    // Curl term layout: comp <- sign * d(src)/d(graded).
    const int curl[6][4] = {
        {0, 1, 2, +1}, {0, 2, 1, -1}, {1, 2, 0, +1}, {1, 0, 2, -1}, {2, 0, 1, +1}, {2, 1, 0, -1},
    };
    for (const auto& t : curl) {
        if (!spec_.axes[t[1]]) continue;
        Family f{t[0], t[1], t[2], double(t[3]), int(slabs_.size())};
        // Slab sized with the graded dimension compressed to the two layers.
        std::size_t cells = 1;
        for (int d = 0; d < 3; ++d) cells *= (d == f.graded) ? std::size_t(slab_len_[d]) : grid.count(d);
        slabs_.emplace_back(cells, 0.0);
        e_families_.push_back(f);
        f.slab = int(slabs_.size());
        slabs_.emplace_back(cells, 0.0);
        h_families_.push_back(f);
    }
}

void CfsPml::apply(VecField& dst, const VecField& src_field, bool e_update) {
    const double coef = e_update ? dt_ / kEps0 : -dt_ / kMu0;
    const int n[3] = {grid_.nx, grid_.ny, grid_.nz};
    const std::size_t stride[3] = {std::size_t(grid_.ny) * grid_.nz, std::size_t(grid_.nz), 1};

    for (const Family& f : (e_update ? e_families_ : h_families_)) {
        const Coeff& co = e_update ? coeff_node_[f.graded] : coeff_half_[f.graded];
        std::vector<double>& psi = slabs_[f.slab];
        std::vector<double>& out = dst.comp(f.comp).v;
        const std::vector<double>& src = src_field.comp(f.src).v;
        const double inv_h = 1.0 / grid_.spacing(f.graded);
        const int ng = n[f.graded];
        const int t = spec_.thickness;

        // Slab strides: graded dimension compressed to 2t.
        std::size_t sstride[3];
        sstride[2] = 1;
        sstride[1] = (f.graded == 2) ? std::size_t(2 * t) : std::size_t(n[2]);
        sstride[0] = sstride[1] * ((f.graded == 1) ? std::size_t(2 * t) : std::size_t(n[1]));

        const int o1 = (f.graded + 1) % 3;
        const int o2 = (f.graded + 2) % 3;
        for (int pass = 0; pass < 2; ++pass) {
            const int u0 = pass == 0 ? 0 : ng - t;
            for (int u = u0; u < u0 + t; ++u) {
                const int s_u = pass == 0 ? u : u - (ng - t) + t;
                const double b = co.b[u];
                const double a = co.a[u];
                if (b == 1.0 && a == 0.0) continue;
                for (int p1 = 0; p1 < n[o1]; ++p1) {
                    const std::size_t base = std::size_t(u) * stride[f.graded] + std::size_t(p1) * stride[o1];
                    const std::size_t sbase =
                        std::size_t(s_u) * sstride[f.graded] + std::size_t(p1) * sstride[o1];
                    for (int p2 = 0; p2 < n[o2]; ++p2) {
                        const std::size_t c = base + std::size_t(p2) * stride[o2];
                        const std::size_t sc = sbase + std::size_t(p2) * sstride[o2];
                        double diff;
                        if (e_update) {  // backward difference, zero beyond the wall
                            const double lo = u > 0 ? src[c - stride[f.graded]] : 0.0;
                            diff = (src[c] - lo) * inv_h;
                        } else {  // forward difference
                            const double hiv = u + 1 < ng ? src[c + stride[f.graded]] : 0.0;
                            diff = (hiv - src[c]) * inv_h;
                        }
                        const double p = b * psi[sc] + a * diff;
                        psi[sc] = p;
                        out[c] += coef * f.sign * p;
                    }
                }
            }
        }
    }
}

void CfsPml::apply_E(VecField& e, const VecField& h) { apply(e, h, true); }
void CfsPml::apply_H(VecField& h, const VecField& e) { apply(h, e, false); }

}  // namespace wfdtd

#include "wfdtd/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wfdtd/errors.hpp"

namespace wfdtd {

namespace {

// Neighbor index helpers. Periodic wraps; Pml reads out-of-range as "absent",
// signalled by returning -1 so callers substitute zero.
inline int up(int i, int n, bool periodic) {
    const int j = i + 1;
    if (j < n) return j;
    return periodic ? 0 : -1;
}

inline int down(int i, int n, bool periodic) {
    if (i > 0) return i - 1;
    return periodic ? n - 1 : -1;
}

}  // namespace

void GridSpec::validate() const {
    if (nx < 4 || ny < 4 || nz < 4)
        throw ConfigError("grid: cell counts must be at least 4, got " + std::to_string(nx) + "x" +
                          std::to_string(ny) + "x" + std::to_string(nz));
    if (!(dx > 0.0) || !(dy > 0.0) || !(dz > 0.0)) throw ConfigError("grid: spacings must be positive");
}

VecField curl_E(const VecField& e, const GridSpec& g) {
    const bool per = g.boundary == Boundary::Periodic;
    VecField out(g);
    for (int i = 0; i < g.nx; ++i) {
        const int ip = up(i, g.nx, per);
        for (int j = 0; j < g.ny; ++j) {
            const int jp = up(j, g.ny, per);
            for (int k = 0; k < g.nz; ++k) {
                const int kp = up(k, g.nz, per);
                const double ez = e.z.at(i, j, k);
                const double ey = e.y.at(i, j, k);
                const double ex = e.x.at(i, j, k);
                const double ez_jp = jp >= 0 ? e.z.at(i, jp, k) : 0.0;
                const double ey_kp = kp >= 0 ? e.y.at(i, j, kp) : 0.0;
                const double ex_kp = kp >= 0 ? e.x.at(i, j, kp) : 0.0;
                const double ez_ip = ip >= 0 ? e.z.at(ip, j, k) : 0.0;
                const double ey_ip = ip >= 0 ? e.y.at(ip, j, k) : 0.0;
                const double ex_jp = jp >= 0 ? e.x.at(i, jp, k) : 0.0;
                out.x.at(i, j, k) = (ez_jp - ez) / g.dy - (ey_kp - ey) / g.dz;
                out.y.at(i, j, k) = (ex_kp - ex) / g.dz - (ez_ip - ez) / g.dx;
                out.z.at(i, j, k) = (ey_ip - ey) / g.dx - (ex_jp - ex) / g.dy;
            }
        }
    }
    return out;
}

VecField curl_H(const VecField& h, const GridSpec& g) {
    const bool per = g.boundary == Boundary::Periodic;
    VecField out(g);
    for (int i = 0; i < g.nx; ++i) {
        const int im = down(i, g.nx, per);
        for (int j = 0; j < g.ny; ++j) {
            const int jm = down(j, g.ny, per);
            for (int k = 0; k < g.nz; ++k) {
                const int km = down(k, g.nz, per);
                const double hz = h.z.at(i, j, k);
                const double hy = h.y.at(i, j, k);
                const double hx = h.x.at(i, j, k);
                const double hz_jm = jm >= 0 ? h.z.at(i, jm, k) : 0.0;
                const double hy_km = km >= 0 ? h.y.at(i, j, km) : 0.0;
                const double hx_km = km >= 0 ? h.x.at(i, j, km) : 0.0;
                const double hz_im = im >= 0 ? h.z.at(im, j, k) : 0.0;
                const double hy_im = im >= 0 ? h.y.at(im, j, k) : 0.0;
                const double hx_jm = jm >= 0 ? h.x.at(i, jm, k) : 0.0;
                out.x.at(i, j, k) = (hz - hz_jm) / g.dy - (hy - hy_km) / g.dz;
                out.y.at(i, j, k) = (hx - hx_km) / g.dz - (hz - hz_im) / g.dx;
                out.z.at(i, j, k) = (hy - hy_im) / g.dx - (hx - hx_jm) / g.dy;
            }
        }
    }
    return out;
}

ScalarField div_edge(const VecField& f, const GridSpec& g) {
    const bool per = g.boundary == Boundary::Periodic;
    ScalarField out(g);
    for (int i = 0; i < g.nx; ++i) {
        const int im = down(i, g.nx, per);
        for (int j = 0; j < g.ny; ++j) {
            const int jm = down(j, g.ny, per);
            for (int k = 0; k < g.nz; ++k) {
                const int km = down(k, g.nz, per);
                const double fx_im = im >= 0 ? f.x.at(im, j, k) : 0.0;
                const double fy_jm = jm >= 0 ? f.y.at(i, jm, k) : 0.0;
                const double fz_km = km >= 0 ? f.z.at(i, j, km) : 0.0;
                out.at(i, j, k) = (f.x.at(i, j, k) - fx_im) / g.dx + (f.y.at(i, j, k) - fy_jm) / g.dy +
                                  (f.z.at(i, j, k) - fz_km) / g.dz;
            }
        }
    }
    return out;
}

VecField grad_node(const ScalarField& phi, const GridSpec& g) {
    const bool per = g.boundary == Boundary::Periodic;
    VecField out(g);
    for (int i = 0; i < g.nx; ++i) {
        const int ip = up(i, g.nx, per);
        for (int j = 0; j < g.ny; ++j) {
            const int jp = up(j, g.ny, per);
            for (int k = 0; k < g.nz; ++k) {
                const int kp = up(k, g.nz, per);
                const double p = phi.at(i, j, k);
                out.x.at(i, j, k) = ip >= 0 ? (phi.at(ip, j, k) - p) / g.dx : 0.0;
                out.y.at(i, j, k) = jp >= 0 ? (phi.at(i, jp, k) - p) / g.dy : 0.0;
                out.z.at(i, j, k) = kp >= 0 ? (phi.at(i, j, kp) - p) / g.dz : 0.0;
            }
        }
    }
    return out;
}

double inner_h(const VecField& a, const VecField& b, const GridSpec& g) {
    double s = 0.0;
    const std::size_t n = g.cells();
    for (std::size_t c = 0; c < n; ++c) s += a.x.v[c] * b.x.v[c];
    for (std::size_t c = 0; c < n; ++c) s += a.y.v[c] * b.y.v[c];
    for (std::size_t c = 0; c < n; ++c) s += a.z.v[c] * b.z.v[c];
    return s * g.cell_volume();
}

double inner_nodes(const ScalarField& a, const ScalarField& b, const GridSpec& g) {
    double s = 0.0;
    const std::size_t n = g.cells();
    for (std::size_t c = 0; c < n; ++c) s += a.v[c] * b.v[c];
    return s * g.cell_volume();
}

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.v) m = std::max(m, std::abs(v));
    return m;
}

double max_abs(const VecField& f) {
    return std::max({max_abs(f.x), max_abs(f.y), max_abs(f.z)});
}

}  // namespace wfdtd

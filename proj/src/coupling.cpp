#include "wfdtd/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <ostream>
#include <string>

#include "wfdtd/errors.hpp"

namespace wfdtd {

const GaussRule& GaussRule::of(int points) {
    static std::map<int, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(points);
    if (it != cache.end()) return it->second;

    GaussRule r;
    r.node.resize(points);
    r.weight.resize(points);
    for (int i = 0; i < (points + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (points + 0.5));
        double dp = 0.0;
        for (int it_n = 0; it_n < 100; ++it_n) {
            double p0 = 1.0, p1 = x;
            for (int n = 2; n <= points; ++n) {
                const double p2 = ((2 * n - 1) * x * p1 - (n - 1) * p0) / n;
                p0 = p1;
                p1 = p2;
            }
            dp = points * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.node[i] = -x;
        r.weight[i] = w;
        r.node[points - 1 - i] = x;
        r.weight[points - 1 - i] = w;
    }
    if (points % 2 == 1) r.node[points / 2] = 0.0;
    return cache.emplace(points, std::move(r)).first->second;
}

int default_gauss_points(const DeltaKernel& kernel) {
    const int deg = kernel.factor(0, 0).order() + 2 * kernel.factor(0, 1).order();
    return (deg + 2) / 2 + 1;  // ceil((deg+1)/2) + 1
}

std::vector<double> panel_breakpoints(const Vec3& start, const Vec3& tangent, double len,
                                      const DeltaKernel& kernel, const GridSpec& grid) {
    const double tol = 1e-13 * len;
    std::vector<double> out = {0.0, len};
    for (int d = 0; d < 3; ++d) {
        if (tangent[d] == 0.0) continue;
        const double spacing = grid.spacing(d);
        const double x0 = start[d] - grid.origin[d];
        for (double rho : kernel.plane_residues(d)) {
            const double u0 = x0 / spacing - rho;
            const double u1 = (x0 + tangent[d] * len) / spacing - rho;
            const long mlo = long(std::ceil(std::min(u0, u1)));
            const long mhi = long(std::floor(std::max(u0, u1)));
            for (long m = mlo; m <= mhi; ++m) {
                const double s = ((m + rho) * spacing - x0) / tangent[d];
                if (s > tol && s < len - tol) out.push_back(s);
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(), [tol](double a, double b) { return b - a < tol; }),
              out.end());
    return out;
}

CouplingTable CouplingTable::build(const WirePath& path, const DeltaKernel& kernel, const GridSpec& grid,
                                   const QuadratureOptions& opts) {
    CouplingTable t;
    t.cell_volume_ = grid.cell_volume();
    t.ny_ = grid.ny;
    t.nz_ = grid.nz;
    t.panel_len_ = path.length;
    for (int a = 0; a < 3; ++a) t.comp_[a].resize(path.panel_count());

    const bool periodic = grid.boundary == Boundary::Periodic;
    const int margin = periodic ? 0 : grid.pml_cells;
    const int g_base = opts.gauss_points > 0 ? opts.gauss_points : default_gauss_points(kernel);

    for (int q = 0; q < path.panel_count(); ++q) {
        const Vec3 start = path.vertices[q];
        const Vec3 tau = path.tangent[q];
        const double len = path.length[q];

        std::vector<double> bps = panel_breakpoints(start, tau, len, kernel, grid);
        int g = g_base;
        if (!opts.split_at_breakpoints) {
            g = g_base * (int(bps.size()) - 1);  // same total point count, no splits
            bps = {0.0, len};
        }
        const GaussRule& rule = GaussRule::of(g);

        for (int axis = 0; axis < 3; ++axis) {
            if (tau[axis] == 0.0) continue;
            const std::array<double, 3> ext = kernel.support_extent(axis);

            // Index box covering the kernel support swept by the panel.
            int lo[3], hi[3];
            for (int d = 0; d < 3; ++d) {
                const double stagger = (d == axis) ? 0.5 : 0.0;
                const double a0 = (start[d] - grid.origin[d]) / grid.spacing(d);
                const double a1 = a0 + tau[d] * len / grid.spacing(d);
                lo[d] = int(std::floor(std::min(a0, a1) - stagger - ext[d])) - 1;
                hi[d] = int(std::ceil(std::max(a0, a1) - stagger + ext[d])) + 1;
                if (hi[d] - lo[d] + 1 > grid.count(d))
                    throw ConfigError("coupling: kernel support spans the whole grid along axis " +
                                      std::to_string(d));
                if (!periodic && (lo[d] < margin || hi[d] > grid.count(d) - 1 - margin))
                    throw ConfigError("coupling: panel " + std::to_string(q) +
                                      " support reaches the absorbing layer or domain edge (axis " +
                                      std::to_string(d) + ")");
            }
            const int bx = hi[0] - lo[0] + 1;
            const int by = hi[1] - lo[1] + 1;
            const int bz = hi[2] - lo[2] + 1;
            std::vector<double> acc(std::size_t(bx) * by * bz, 0.0);
            std::vector<double> vx(bx), vy(by), vz(bz);

            for (std::size_t sub = 0; sub + 1 < bps.size(); ++sub) {
                const double sa = bps[sub];
                const double sb = bps[sub + 1];
                const double half = 0.5 * (sb - sa);
                const double mid = 0.5 * (sb + sa);
                for (int gp = 0; gp < g; ++gp) {
                    const double s = mid + half * rule.node[gp];
                    const double gw = half * rule.weight[gp] * tau[axis] / t.cell_volume_;
                    for (int d = 0; d < 3; ++d) {
                        const double stagger = (d == axis) ? 0.5 : 0.0;
                        const double xhat = (start[d] + s * tau[d] - grid.origin[d]) / grid.spacing(d);
                        const BSpline& f = kernel.factor(axis, d);
                        std::vector<double>& vals = d == 0 ? vx : (d == 1 ? vy : vz);
                        const int cnt = d == 0 ? bx : (d == 1 ? by : bz);
                        for (int m = 0; m < cnt; ++m) vals[m] = f((lo[d] + m) + stagger - xhat);
                    }
                    std::size_t c = 0;
                    for (int mi = 0; mi < bx; ++mi) {
                        const double wx = gw * vx[mi];
                        for (int mj = 0; mj < by; ++mj) {
                            const double wxy = wx * vy[mj];
                            for (int mk = 0; mk < bz; ++mk, ++c) acc[c] += wxy * vz[mk];
                        }
                    }
                }
            }

            std::vector<Entry>& entries = t.comp_[axis][q];
            std::size_t c = 0;
            for (int mi = 0; mi < bx; ++mi) {
                for (int mj = 0; mj < by; ++mj) {
                    for (int mk = 0; mk < bz; ++mk, ++c) {
                        if (acc[c] == 0.0) continue;
                        int ii = lo[0] + mi, jj = lo[1] + mj, kk = lo[2] + mk;
                        if (periodic) {
                            ii = ((ii % grid.nx) + grid.nx) % grid.nx;
                            jj = ((jj % grid.ny) + grid.ny) % grid.ny;
                            kk = ((kk % grid.nz) + grid.nz) % grid.nz;
                        }
                        entries.push_back(Entry{grid.idx(ii, jj, kk), acc[c]});
                    }
                }
            }
            std::sort(entries.begin(), entries.end(),
                      [](const Entry& a, const Entry& b) { return a.flat < b.flat; });
        }
    }

    for (int a = 0; a < 3; ++a) {
        std::vector<std::size_t>& tt = t.touched_[a];
        for (const std::vector<Entry>& es : t.comp_[a])
            for (const Entry& e : es) tt.push_back(e.flat);
        std::sort(tt.begin(), tt.end());
        tt.erase(std::unique(tt.begin(), tt.end()), tt.end());
    }
    return t;
}

void CouplingTable::deposit(std::span<const double> current, VecField& j) const {
    for (int a = 0; a < 3; ++a) {
        std::vector<double>& v = j.comp(a).v;
        for (std::size_t flat : touched_[a]) v[flat] = 0.0;
        for (int q = 0; q < panel_count(); ++q) {
            const double iq = current[q];
            for (const Entry& e : comp_[a][q]) v[e.flat] += iq * e.w;
        }
    }
}

void CouplingTable::interpolate(const VecField& e, std::span<double> e_tan) const {
    for (int q = 0; q < panel_count(); ++q) {
        double acc = 0.0;
        for (int a = 0; a < 3; ++a) {
            const std::vector<double>& v = e.comp(a).v;
            for (const Entry& en : comp_[a][q]) acc += en.w * v[en.flat];
        }
        e_tan[q] = acc * cell_volume_ / panel_len_[q];
    }
}

void CouplingTable::dump_csv(std::ostream& os) const {
    os << "panel,component,i,j,k,weight\n";
    const char* names = "xyz";
    for (int q = 0; q < panel_count(); ++q) {
        for (int a = 0; a < 3; ++a) {
            for (const Entry& e : comp_[a][q]) {
                const std::size_t i = e.flat / (std::size_t(ny_) * nz_);
                const std::size_t j = (e.flat / nz_) % ny_;
                const std::size_t k = e.flat % nz_;
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.17g", e.w);
                os << q << ',' << names[a] << ',' << i << ',' << j << ',' << k << ',' << buf << '\n';
            }
        }
    }
}

}  // namespace wfdtd

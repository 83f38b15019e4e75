#include "wfdtd/wire.hpp"

#include <cmath>
#include <map>
#include <string>

#include "wfdtd/constants.hpp"
#include "wfdtd/errors.hpp"

namespace wfdtd {

double WirePath::total_length() const {
    double s = 0.0;
    for (double l : length) s += l;
    return s;
}

void WirePath::finalize() {
    const int n_panels = closed ? int(vertices.size()) : int(vertices.size()) - 1;
    if (n_panels < (closed ? 3 : 1)) throw ConfigError("wire: too few panels");
    length.resize(n_panels);
    tangent.resize(n_panels);
    midpoint.resize(n_panels);
    for (int q = 0; q < n_panels; ++q) {
        const Vec3 a = vertices[q];
        const Vec3 b = vertices[(q + 1) % vertices.size()];
        const Vec3 d = b - a;
        const double l = norm(d);
        if (!(l > 0.0)) throw ConfigError("wire: degenerate panel " + std::to_string(q));
        length[q] = l;
        tangent[q] = (1.0 / l) * d;
        midpoint[q] = a + 0.5 * d;
    }
}

namespace {

void check_shape_inputs(double extent, double panel_target, double radius, const Vec3& axis) {
    if (!(extent > 0.0)) throw ConfigError("wire: size must be positive");
    if (!(panel_target > 0.0)) throw ConfigError("wire: panel target must be positive");
    if (!(radius > 0.0)) throw ConfigError("wire: radius must be positive");
    if (!(norm(axis) > 0.0)) throw ConfigError("wire: orientation vector is degenerate");
}

}  // namespace

WirePath WirePath::line(double wire_length, const Vec3& axis, const Vec3& center, double panel_target,
                        double radius) {
    check_shape_inputs(wire_length, panel_target, radius, axis);
    const Vec3 u = normalized(axis);
    const int n = std::max(1, int(std::lround(wire_length / panel_target)));
    WirePath w;
    w.closed = false;
    w.radius = radius;
    w.vertices.resize(n + 1);
    for (int q = 0; q <= n; ++q)
        w.vertices[q] = center + (wire_length * (double(q) / n - 0.5)) * u;
    w.finalize();
    return w;
}

WirePath WirePath::circle(double loop_radius, const Vec3& normal, const Vec3& center, double panel_target,
                          double radius) {
    check_shape_inputs(loop_radius, panel_target, radius, normal);
    const auto frame = orthonormal_frame(normal);
    const double circumference = 2.0 * M_PI * loop_radius;
    const int n = std::max(3, int(std::lround(circumference / panel_target)));
    WirePath w;
    w.closed = true;
    w.radius = radius;
    w.vertices.resize(n);
    for (int q = 0; q < n; ++q) {
        const double th = 2.0 * M_PI * q / n;
        w.vertices[q] = center + (loop_radius * std::cos(th)) * frame[0] + (loop_radius * std::sin(th)) * frame[1];
    }
    w.finalize();
    return w;
}

WirePath WirePath::square(double side, const Vec3& normal, const Vec3& center, double panel_target,
                          double radius) {
    check_shape_inputs(side, panel_target, radius, normal);
    const auto frame = orthonormal_frame(normal);
    const int m = std::max(1, int(std::lround(side / panel_target)));
    const Vec3 corners[4] = {
        center + (-0.5 * side) * frame[0] + (-0.5 * side) * frame[1],
        center + (0.5 * side) * frame[0] + (-0.5 * side) * frame[1],
        center + (0.5 * side) * frame[0] + (0.5 * side) * frame[1],
        center + (-0.5 * side) * frame[0] + (0.5 * side) * frame[1],
    };
    WirePath w;
    w.closed = true;
    w.radius = radius;
    w.vertices.reserve(std::size_t(4) * m);
    for (int s = 0; s < 4; ++s) {
        const Vec3 a = corners[s];
        const Vec3 b = corners[(s + 1) % 4];
        for (int q = 0; q < m; ++q) w.vertices.push_back(a + (double(q) / m) * (b - a));
    }
    w.finalize();
    return w;
}

double transverse_gmean_cell_units(const DeltaKernel& kernel) {
    // Node-aligned factors carry the transverse spreading for every
    // component, so the profile is the same along any wire axis.
    const BSpline& f = kernel.factor(0, 1);
    const int reach = int(std::ceil(f.support_half_width()));
    double mean_log = 0.0;
    constexpr int kStrata = 4;
    for (int a = 0; a < kStrata; ++a) {
        for (int b = 0; b < kStrata; ++b) {
            const double oy = (a + 0.5) / kStrata;
            const double oz = (b + 0.5) / kStrata;
            double acc = 0.0;
            double wsum = 0.0;
            for (int j = -reach; j <= reach + 1; ++j) {
                for (int k = -reach; k <= reach + 1; ++k) {
                    const double ry = j - oy;
                    const double rz = k - oz;
                    const double w = f(ry) * f(rz);
                    if (w == 0.0) continue;
                    acc += w * 0.5 * std::log(ry * ry + rz * rz);
                    wsum += w;
                }
            }
            mean_log += acc / wsum;
        }
    }
    return std::exp(mean_log / (kStrata * kStrata));
}

WireLC compute_wire_lc(const WirePath& path, const DeltaKernel& kernel, const GridSpec& grid) {
    static std::map<std::string, double> cache;
    const std::string key = kernel.name();
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, transverse_gmean_cell_units(kernel)).first;

    WireLC lc;
    lc.d_avg = it->second * grid.dx;
    if (!(lc.d_avg > path.radius))
        throw ConfigError("wire: radius " + std::to_string(path.radius) +
                          " m is not below the kernel support distance d_avg = " + std::to_string(lc.d_avg) +
                          " m");
    lc.L = kMu0 / (2.0 * M_PI) * std::log(lc.d_avg / path.radius);
    lc.C = kMu0 * kEps0 / lc.L;
    return lc;
}

WireState WireState::make(const WirePath& path, const WireLC& lc, int feed_panel) {
    if (feed_panel >= path.panel_count())
        throw ConfigError("wire: feed panel " + std::to_string(feed_panel) + " out of range (" +
                          std::to_string(path.panel_count()) + " panels)");
    WireState s;
    s.I.assign(path.panel_count(), 0.0);
    s.V.assign(path.vertex_count(), 0.0);
    s.L = lc.L;
    s.C = lc.C;
    s.feed_panel = feed_panel;
    return s;
}

void advance_current(WireState& s, const WirePath& path, std::span<const double> e_tan, double gap_voltage,
                     double dt) {
    const int n = path.panel_count();
    if (int(e_tan.size()) != n) throw ConfigError("wire: e_tan size mismatch");
    const int nv = path.vertex_count();
    for (int q = 0; q < n; ++q) {
        const double vq = s.V[q];
        const double vq1 = s.V[(q + 1) % nv];
        double forcing = -(vq1 - vq) / path.length[q] + e_tan[q];
        if (q == s.feed_panel) forcing += gap_voltage / path.length[q];
        s.I[q] += dt / s.L * forcing;
        if (!std::isfinite(s.I[q])) throw NumericalError("wire: non-finite current at panel " + std::to_string(q));
    }
}

void advance_voltage(WireState& s, const WirePath& path, double dt) {
    const int n = path.panel_count();
    if (path.closed) {
        for (int q = 0; q < n; ++q) {
            const double im = s.I[(q + n - 1) % n];
            s.V[q] -= dt / s.C * (s.I[q] - im) / path.length[q];
        }
    } else {
        // Vertices 0 and n see zero current beyond the tips; their dual
        // cells are the half panels, so the tips divide by length/2.
        for (int q = 0; q <= n; ++q) {
            const double iq = q < n ? s.I[q] : 0.0;
            const double im = q > 0 ? s.I[q - 1] : 0.0;
            const double left = q > 0 ? path.length[q - 1] : 0.0;
            const double right = q < n ? path.length[q] : 0.0;
            s.V[q] -= dt / s.C * (iq - im) / (0.5 * (left + right));
        }
    }
    for (double v : s.V)
        if (!std::isfinite(v)) throw NumericalError("wire: non-finite voltage");
}

}  // namespace wfdtd

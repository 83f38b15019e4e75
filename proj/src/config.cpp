#include "wfdtd/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "wfdtd/constants.hpp"
#include "wfdtd/errors.hpp"
#include "wfdtd/solver.hpp"

namespace wfdtd {

// The paper-reproduction band for the dipole reaches 8 cells per wavelength
// at the spectral edge; anything below that is refused.
static constexpr double kMinCellsPerWavelength = 8.0;

const char* to_string(Scenario s) {
    switch (s) {
        case Scenario::Dipole: return "dipole";
        case Scenario::CircleLoop: return "circle_loop";
        case Scenario::SquareLoop: return "square_loop";
    }
    return "?";
}

const char* to_string(OrientationKind o) {
    switch (o) {
        case OrientationKind::Axis: return "axis";
        case OrientationKind::FaceDiagonal: return "face_diagonal";
        case OrientationKind::BodyDiagonal: return "body_diagonal";
    }
    return "?";
}

DeltaKernel SimConfig::make_kernel() const {
    if (kernel == "iso") return DeltaKernel::isotropic();
    if (kernel.rfind("bs", 0) == 0) {
        const int n = std::atoi(kernel.c_str() + 2);
        if (std::to_string(n) == kernel.substr(2)) return DeltaKernel::composite(n);
    }
    throw ConfigError("kernel: unknown kind '" + kernel + "' (expected bs<N> or iso)");
}

Waveform::Kind SimConfig::waveform_kind() const {
    if (waveform == "gaussian") return Waveform::Kind::Gaussian;
    if (waveform == "differentiated_gaussian") return Waveform::Kind::DifferentiatedGaussian;
    if (waveform == "auto")
        return scenario == Scenario::Dipole ? Waveform::Kind::Gaussian
                                            : Waveform::Kind::DifferentiatedGaussian;
    throw ConfigError("source: unknown waveform '" + waveform + "'");
}

double SimConfig::duration_s() const {
    if (duration_ns > 0.0) return duration_ns * 1e-9;
    return scenario == Scenario::Dipole ? 60e-9 : 250e-9;
}

double SimConfig::reference_length_m() const {
    switch (scenario) {
        case Scenario::Dipole: return dipole_length_m;
        case Scenario::CircleLoop: return 2.0 * M_PI * loop_radius_m;
        case Scenario::SquareLoop: return 4.0 * square_side_m;
    }
    return 0.0;
}

double SimConfig::band_edge_hz() const { return band_elen * speed_of_light() / reference_length_m(); }

Vec3 SimConfig::orientation_vector() const {
    switch (orientation) {
        case OrientationKind::Axis: return {0.0, 0.0, 1.0};
        case OrientationKind::FaceDiagonal: return normalized(Vec3{1.0, 1.0, 0.0});
        case OrientationKind::BodyDiagonal: return normalized(Vec3{1.0, 1.0, 1.0});
    }
    return {0.0, 0.0, 1.0};
}

double SimConfig::time_step_s() const {
    if (dt_policy == "paper") {
        GridSpec g;
        g.dx = g.dy = g.dz = h();
        return paper_time_step(g);
    }
    if (dt_policy == "explicit") {
        if (!(dt_ps > 0.0)) throw ConfigError("run: dt_policy=explicit requires dt_ps > 0");
        return dt_ps * 1e-12;
    }
    throw ConfigError("run: unknown dt_policy '" + dt_policy + "'");
}

std::string SimConfig::run_id() const {
    return std::string(to_string(scenario)) + "_" + to_string(orientation) + "_" + kernel;
}

void SimConfig::validate() const {
    if (cells_per_meter < 4) throw ConfigError("grid: cells_per_meter must be at least 4");
    if (boundary == Boundary::Pml && pml_cells < 8) throw ConfigError("grid: pml_cells must be >= 8");
    if (!(clearance_m >= 0.0)) throw ConfigError("grid: clearance_m must be non-negative");
    make_kernel();
    waveform_kind();
    if (!(radius_over_h > 0.0)) throw ConfigError("wire: radius_over_h must be positive");
    if (!(panel_target_over_h > 0.0)) throw ConfigError("wire: panel_target_over_h must be positive");
    if (!(amplitude_v > 0.0)) throw ConfigError("source: amplitude_v must be positive");
    if (!(band_elen > 0.0)) throw ConfigError("source: band_elen must be positive");
    const double cells_per_wavelength = speed_of_light() / band_edge_hz() / h();
    if (cells_per_wavelength < kMinCellsPerWavelength) {
        std::ostringstream os;
        os << "source: band edge " << band_edge_hz() << " Hz is resolved by only "
           << cells_per_wavelength << " cells per wavelength (minimum " << kMinCellsPerWavelength
           << ")";
        throw ConfigError(os.str());
    }
    // Checks the paper CFL bound; the solver re-validates the coupled bound.
    if (time_step_s() > h() / (std::sqrt(3.0) * speed_of_light()) * (1.0 + 1e-12))
        throw ConfigError("run: dt exceeds the Yee stability bound h/(sqrt(3) c0)");
    if (diagnostics_every < 0) throw ConfigError("run: diagnostics_every must be >= 0");
}

void SimConfig::write_snapshot(std::ostream& os) const {
    os.precision(17);
    os << "[grid]\n";
    os << "cells_per_meter = " << cells_per_meter << "\n";
    os << "boundary = " << (boundary == Boundary::Pml ? "pml" : "periodic") << "\n";
    os << "pml_cells = " << pml_cells << "\n";
    os << "clearance_m = " << clearance_m << "\n\n";
    os << "[kernel]\n";
    os << "kind = " << kernel << "\n\n";
    os << "[wire]\n";
    os << "scenario = " << to_string(scenario) << "\n";
    os << "orientation = " << to_string(orientation) << "\n";
    os << "dipole_length_m = " << dipole_length_m << "\n";
    os << "loop_radius_m = " << loop_radius_m << "\n";
    os << "square_side_m = " << square_side_m << "\n";
    os << "radius_over_h = " << radius_over_h << "\n";
    os << "panel_target_over_h = " << panel_target_over_h << "\n";
    os << "center_offset_cells = " << center_offset_cells[0] << " " << center_offset_cells[1] << " "
       << center_offset_cells[2] << "\n\n";
    os << "[source]\n";
    os << "waveform = "
       << (waveform_kind() == Waveform::Kind::Gaussian ? "gaussian" : "differentiated_gaussian")
       << "\n";
    os << "amplitude_v = " << amplitude_v << "\n";
    os << "band_elen = " << band_elen << "\n\n";
    os << "[run]\n";
    os << "duration_ns = " << duration_s() * 1e9 << "\n";
    os << "dt_policy = " << dt_policy << "\n";
    if (dt_policy == "explicit") os << "dt_ps = " << dt_ps << "\n";
    os << "seed = " << seed << "\n";
    os << "diagnostics_every = " << diagnostics_every << "\n";
}

namespace {

struct Parser {
    std::string origin;
    int line_no = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ConfigError(origin + ":" + std::to_string(line_no) + ": " + msg);
    }

    double num(const std::string& v) const {
        std::size_t used = 0;
        double d = 0.0;
        try {
            d = std::stod(v, &used);
        } catch (const std::exception&) {
            fail("expected a number, got '" + v + "'");
        }
        if (used != v.size()) fail("trailing characters after number: '" + v + "'");
        return d;
    }

    long integer(const std::string& v) const {
        const double d = num(v);
        if (d != std::floor(d)) fail("expected an integer, got '" + v + "'");
        return long(d);
    }
};

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    std::size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

}  // namespace

SimConfig SimConfig::from_string(const std::string& text, const std::string& origin) {
    SimConfig c;
    Parser p{origin, 0};
    std::istringstream is(text);
    std::string raw, section;
    while (std::getline(is, raw)) {
        ++p.line_no;
        std::string line = raw;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') p.fail("malformed section header");
            section = line.substr(1, line.size() - 2);
            if (section != "grid" && section != "kernel" && section != "wire" &&
                section != "source" && section != "run")
                p.fail("unknown section [" + section + "]");
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) p.fail("expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        const std::string qual = section + "." + key;

        if (qual == "grid.cells_per_meter") c.cells_per_meter = int(p.integer(val));
        else if (qual == "grid.boundary") {
            if (val == "pml") c.boundary = Boundary::Pml;
            else if (val == "periodic") c.boundary = Boundary::Periodic;
            else p.fail("boundary must be pml or periodic");
        } else if (qual == "grid.pml_cells") c.pml_cells = int(p.integer(val));
        else if (qual == "grid.clearance_m") c.clearance_m = p.num(val);
        else if (qual == "kernel.kind") c.kernel = val;
        else if (qual == "wire.scenario") {
            if (val == "dipole") c.scenario = Scenario::Dipole;
            else if (val == "circle_loop") c.scenario = Scenario::CircleLoop;
            else if (val == "square_loop") c.scenario = Scenario::SquareLoop;
            else p.fail("scenario must be dipole, circle_loop, or square_loop");
        } else if (qual == "wire.orientation") {
            if (val == "axis") c.orientation = OrientationKind::Axis;
            else if (val == "face_diagonal") c.orientation = OrientationKind::FaceDiagonal;
            else if (val == "body_diagonal") c.orientation = OrientationKind::BodyDiagonal;
            else p.fail("orientation must be axis, face_diagonal, or body_diagonal");
        } else if (qual == "wire.dipole_length_m") c.dipole_length_m = p.num(val);
        else if (qual == "wire.loop_radius_m") c.loop_radius_m = p.num(val);
        else if (qual == "wire.square_side_m") c.square_side_m = p.num(val);
        else if (qual == "wire.radius_over_h") c.radius_over_h = p.num(val);
        else if (qual == "wire.panel_target_over_h") c.panel_target_over_h = p.num(val);
        else if (qual == "wire.center_offset_cells") {
            std::istringstream vs(val);
            if (!(vs >> c.center_offset_cells[0] >> c.center_offset_cells[1] >>
                  c.center_offset_cells[2]))
                p.fail("center_offset_cells needs three numbers");
        } else if (qual == "source.waveform") c.waveform = val;
        else if (qual == "source.amplitude_v") c.amplitude_v = p.num(val);
        else if (qual == "source.band_elen") c.band_elen = p.num(val);
        else if (qual == "run.duration_ns") c.duration_ns = p.num(val);
        else if (qual == "run.dt_policy") c.dt_policy = val;
        else if (qual == "run.dt_ps") c.dt_ps = p.num(val);
        else if (qual == "run.seed") c.seed = (unsigned long long)(p.integer(val));
        else if (qual == "run.diagnostics_every") c.diagnostics_every = int(p.integer(val));
        else if (qual == "run.out_dir") c.out_dir = val;
        else p.fail("unknown key '" + key + "' in section [" + section + "]");
    }
    c.validate();
    return c;
}

SimConfig SimConfig::from_file(const std::string& file) {
    std::ifstream is(file);
    if (!is) throw ConfigError("config: cannot open " + file);
    std::ostringstream os;
    os << is.rdbuf();
    return from_string(os.str(), file);
}

}  // namespace wfdtd

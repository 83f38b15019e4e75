#pragma once

#include <array>
#include <vector>

#include "wfdtd/grid.hpp"

namespace wfdtd {

// Complex-frequency-shifted PML with polynomial grading and recursive
// convolution. sigma_max = sigma_scale * (m+1) / (eta0 * h); kappa grades
// from 1 to kappa_max with the same power; alpha falls linearly from
// alpha_max at the interface to 0 at the outer wall.
struct PmlSpec {
    int thickness = 32;  // cells per side
    int grading_order = 3;
    double sigma_scale = 0.8;
    double kappa_max = 7.0;
    double alpha_max = 0.05;  // S/m at the interface
    std::array<bool, 3> axes = {true, true, true};

    void validate() const;  // throws ConfigError
};

// Auxiliary psi memory and coefficient tables. The main field updates apply
// the 1/kappa scaling everywhere (unity in the interior); this class owns
// the layer-only psi corrections.
class CfsPml {
  public:
    CfsPml(const GridSpec& grid, const PmlSpec& spec, double dt);

    // 1/kappa profiles indexed by cell index; node positions for the E
    // update differences, half positions for the H update differences.
    const std::vector<double>& inv_kappa_node(int axis) const { return inv_kappa_node_[axis]; }
    const std::vector<double>& inv_kappa_half(int axis) const { return inv_kappa_half_[axis]; }

    // Update psi from the current H differences and add the corrections to
    // E (call between the H and E updates, with dt/eps0 folded in here).
    void apply_E(VecField& e, const VecField& h);
    // Update psi from the current E differences and add the corrections to H.
    void apply_H(VecField& h, const VecField& e);

    // Raw psi storage, serialized into checkpoints.
    std::vector<std::vector<double>>& slabs() { return slabs_; }
    const std::vector<std::vector<double>>& slabs() const { return slabs_; }

  private:
    struct Coeff {
        std::vector<double> b, a;  // indexed by graded-direction cell index
    };

    // One psi family: the correction to component `comp` of E or H from the
    // difference along `graded` of component `src` of the other field.
    struct Family {
        int comp;    // updated component
        int graded;  // difference direction
        int src;     // differentiated component of the other field
        double sign; // sign of this curl term
        int slab;    // index into slabs_
    };

    void apply(VecField& dst, const VecField& src_field, bool e_update);

    GridSpec grid_;
    PmlSpec spec_;
    double dt_ = 0.0;
    std::array<std::vector<double>, 3> inv_kappa_node_;
    std::array<std::vector<double>, 3> inv_kappa_half_;
    std::array<Coeff, 3> coeff_node_;
    std::array<Coeff, 3> coeff_half_;
    std::vector<Family> e_families_, h_families_;
    std::vector<std::vector<double>> slabs_;
    std::array<int, 3> slab_len_;  // 2 * thickness (or 0 when axis disabled)
};

}  // namespace wfdtd

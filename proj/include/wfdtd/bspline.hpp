#pragma once

#include <vector>

namespace wfdtd {

// Cardinal B-spline of order n as an exact piecewise polynomial on unit
// knots. Order 0 is the indicator of [-1/2, 1/2); order n+1 is the running
// convolution of order n with order 0. Support is [-(n+1)/2, (n+1)/2] with
// n+1 unit-width pieces; knots sit at half-integers for even n and at
// integers for odd n. Pieces use the half-open convention [knot, knot+1),
// so values at knots are the right limits and evaluation is deterministic.
//
// Coefficients are produced once in exact rational arithmetic and frozen to
// doubles, so construction adds no roundoff beyond one rounding per
// coefficient.
class BSpline {
  public:
    static constexpr int kMaxOrder = 8;

    static BSpline make(int order);  // throws ConfigError if order < 0 or > kMaxOrder

    int order() const { return order_; }
    double support_half_width() const { return 0.5 * (order_ + 1); }

    // Knots, length order()+2, spaced exactly 1 apart starting at -(n+1)/2.
    const std::vector<double>& knots() const { return knots_; }

    // Piece p covers [knots[p], knots[p]+1); coefficients in the local
    // variable u = r - knots[p], constant term first.
    const std::vector<std::vector<double>>& pieces() const { return coeffs_; }

    double operator()(double r) const {
        const double s = r - knots_[0];
        if (s < 0.0 || s >= double(coeffs_.size())) return 0.0;
        const int p = int(s);
        const double u = s - p;
        const std::vector<double>& c = coeffs_[p];
        double acc = 0.0;
        for (int d = int(c.size()) - 1; d >= 0; --d) acc = acc * u + c[d];
        return acc;
    }

    // Right derivative (exact piecewise polynomial derivative).
    double derivative(double r) const;

  private:
    int order_ = 0;
    std::vector<double> knots_;
    std::vector<std::vector<double>> coeffs_;
};

}  // namespace wfdtd

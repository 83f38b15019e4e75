#include "wfdtd/bspline.hpp"

#include <cstdint>
#include <numeric>
#include <string>

#include "wfdtd/errors.hpp"

namespace wfdtd {

namespace {

// Minimal exact rational on int64 with overflow checks. B-spline
// construction up to order 8 stays far below the int64 range once reduced.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static std::int64_t checked(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN) throw std::logic_error("bspline: rational overflow");
        return std::int64_t(v);
    }

    static Rational reduce(__int128 n, __int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 a = n < 0 ? -n : n;
        __int128 b = d;
        while (b != 0) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        if (a == 0) a = 1;
        return Rational{checked(n / a), checked(d / a)};
    }

    Rational operator+(const Rational& o) const {
        return reduce(__int128(num) * o.den + __int128(o.num) * den, __int128(den) * o.den);
    }
    Rational operator-(const Rational& o) const {
        return reduce(__int128(num) * o.den - __int128(o.num) * den, __int128(den) * o.den);
    }
    Rational operator*(const Rational& o) const {
        return reduce(__int128(num) * o.num, __int128(den) * o.den);
    }
    Rational divided_by(std::int64_t k) const { return reduce(num, __int128(den) * k); }

    double to_double() const { return double(num) / double(den); }
};

using RatPoly = std::vector<Rational>;  // c[0] + c[1] u + ... on u in [0, 1)

Rational poly_at_one(const RatPoly& p) {
    Rational s{0, 1};
    for (const Rational& c : p) s = s + c;
    return s;
}

RatPoly antiderivative(const RatPoly& p) {
    RatPoly out(p.size() + 1, Rational{0, 1});
    for (std::size_t d = 0; d < p.size(); ++d) out[d + 1] = p[d].divided_by(std::int64_t(d) + 1);
    return out;
}

}  // namespace

BSpline BSpline::make(int order) {
    if (order < 0 || order > kMaxOrder)
        throw ConfigError("bspline: order must be in [0, " + std::to_string(kMaxOrder) + "], got " +
                          std::to_string(order));

    // Order 0: single piece, constant 1 on [-1/2, 1/2).
    std::vector<RatPoly> pieces = {{Rational{1, 1}}};
    for (int n = 0; n < order; ++n) {
        // A = running antiderivative of the current spline, piece by piece,
        // with A = 0 left of the support.
        std::vector<RatPoly> anti(pieces.size());
        std::vector<Rational> offset(pieces.size() + 1);
        offset[0] = Rational{0, 1};
        for (std::size_t p = 0; p < pieces.size(); ++p) {
            anti[p] = antiderivative(pieces[p]);
            anti[p][0] = offset[p];
            offset[p + 1] = poly_at_one(anti[p]);
        }
        const Rational total = offset[pieces.size()];  // == 1

        // Next order: piece q of BS_{n+1} is A_q(u) - A_{q-1}(u) in the
        // shared local variable, with A clamped to 0 / total outside.
        std::vector<RatPoly> next(pieces.size() + 1);
        for (std::size_t q = 0; q < next.size(); ++q) {
            const std::size_t deg = pieces[0].size() + 1;
            RatPoly hi(deg, Rational{0, 1});
            RatPoly lo(deg, Rational{0, 1});
            if (q < anti.size())
                for (std::size_t d = 0; d < anti[q].size(); ++d) hi[d] = anti[q][d];
            else
                hi[0] = total;
            if (q >= 1 && q - 1 < anti.size())
                for (std::size_t d = 0; d < anti[q - 1].size(); ++d) lo[d] = anti[q - 1][d];
            RatPoly diff(deg);
            for (std::size_t d = 0; d < deg; ++d) diff[d] = hi[d] - lo[d];
            next[q] = std::move(diff);
        }
        pieces = std::move(next);
    }

    BSpline b;
    b.order_ = order;
    b.knots_.resize(pieces.size() + 1);
    for (std::size_t p = 0; p < b.knots_.size(); ++p) b.knots_[p] = -0.5 * (order + 1) + double(p);
    b.coeffs_.resize(pieces.size());
    for (std::size_t p = 0; p < pieces.size(); ++p) {
        b.coeffs_[p].resize(pieces[p].size());
        for (std::size_t d = 0; d < pieces[p].size(); ++d) b.coeffs_[p][d] = pieces[p][d].to_double();
    }
    return b;
}

double BSpline::derivative(double r) const {
    const double s = r - knots_[0];
    if (s < 0.0 || s >= double(coeffs_.size())) return 0.0;
    const int p = int(s);
    const double u = s - p;
    const std::vector<double>& c = coeffs_[p];
    double acc = 0.0;
    for (int d = int(c.size()) - 1; d >= 1; --d) acc = acc * u + c[d] * d;
    return acc;
}

}  // namespace wfdtd

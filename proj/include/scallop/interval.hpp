#pragma once

#include <algorithm>
#include <utility>

#include "scallop/rational.hpp"

namespace scallop {

// Closed rational interval [lo, hi] used for certified enclosures of the
// irrational quantities (pi, sines, tangents) that parameterize the
// constructions. Every endpoint is an exact rational, so every enclosure is
// a machine-checkable statement.
struct Interval {
    Rat lo, hi;

    Interval() = default;
    Interval(Rat v) : lo(v), hi(std::move(v)) {}
    Interval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw invalid_input("interval endpoints out of order");
    }

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
};

inline Interval operator+(const Interval& a, const Interval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

inline Interval operator-(const Interval& a, const Interval& b) {
    return {a.lo - b.hi, a.hi - b.lo};
}

inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

inline Interval operator*(const Interval& a, const Interval& b) {
    Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {std::min(std::min(p1, p2), std::min(p3, p4)),
            std::max(std::max(p1, p2), std::max(p3, p4))};
}

inline Interval operator*(const Rat& c, const Interval& a) {
    return c >= 0 ? Interval{c * a.lo, c * a.hi} : Interval{c * a.hi, c * a.lo};
}

inline Interval interval_div(const Interval& a, const Interval& b) {
    if (b.lo <= 0 && b.hi >= 0) throw invalid_input("interval division by interval containing zero");
    Rat p1 = a.lo / b.lo, p2 = a.lo / b.hi, p3 = a.hi / b.lo, p4 = a.hi / b.hi;
    return {std::min(std::min(p1, p2), std::min(p3, p4)),
            std::max(std::max(p1, p2), std::max(p3, p4))};
}

// arctan(x) for 0 < x <= 1 by the alternating Maclaurin series. Consecutive
// partial sums bracket the limit, so two of them give a certified enclosure.
inline Interval atan_interval(const Rat& x, int terms) {
    if (x <= 0 || x > 1) throw invalid_input("atan_interval expects 0 < x <= 1");
    if (terms < 2) terms = 2;
    Rat x2 = x * x;
    Rat power = x;
    Rat sum = 0;
    Rat prev = 0;
    for (int k = 0; k < terms; ++k) {
        Rat term = power / (2 * k + 1);
        prev = sum;
        sum += (k % 2 == 0) ? term : -term;
        power *= x2;
    }
    return {std::min(prev, sum), std::max(prev, sum)};
}

// Machin: pi = 16*atan(1/5) - 4*atan(1/239).
inline Interval pi_interval(int terms = 24) {
    Interval a = atan_interval(rat(1, 5), terms);
    Interval b = atan_interval(rat(1, 239), terms);
    return rat(16) * a - rat(4) * b;
}

namespace detail {

// Partial sums of sin t = t - t^3/3! + ... bracket sin t for 0 <= t <= 2
// (term magnitudes decrease from the first step onward in that range).
inline Interval sin_series(const Rat& t, int terms) {
    if (t < 0 || t > 2) throw invalid_input("sin_series expects 0 <= t <= 2");
    if (terms < 2) terms = 2;
    Rat t2 = t * t;
    Rat term = t;
    Rat sum = 0;
    Rat prev = 0;
    for (int k = 0; k < terms; ++k) {
        prev = sum;
        sum += (k % 2 == 0) ? term : -term;
        term *= t2;
        term /= (2 * k + 2) * (2 * k + 3);
    }
    Interval out{std::min(prev, sum), std::max(prev, sum)};
    if (out.lo < 0) out.lo = 0;
    if (out.hi > 1) out.hi = 1;
    return out;
}

// Enclosure of sin(e) for a single rational e in [0, pi]. Arguments beyond
// the series' validity range are reflected through pi - e, which introduces
// the pi enclosure's width; concavity on [0, pi] keeps the bounds valid.
inline Interval sin_point(const Rat& e, int terms, const Interval& pi) {
    if (e < 0 || e > pi.hi) throw invalid_input("sin_point expects argument in [0, pi]");
    if (e <= 2) return sin_series(e, terms);
    Interval s{pi.lo - e, pi.hi - e};
    if (s.lo < 0) s.lo = 0;
    Interval at_lo = sin_series(s.lo, terms);
    Interval at_hi = sin_series(s.hi, terms);
    Rat lo = std::min(at_lo.lo, at_hi.lo);
    Rat hi = std::max(at_lo.hi, at_hi.hi);
    Interval half_pi = rat(1, 2) * pi;
    if (s.hi >= half_pi.lo && s.lo <= half_pi.hi) hi = 1;
    return {lo, std::min(hi, Rat(1))};
}

}  // namespace detail

// sin over an interval contained in [0, pi]. Concavity of sin on [0, pi]
// puts the minimum at an endpoint; the maximum is at an endpoint unless the
// interval might contain pi/2, in which case 1 is a valid cap.
inline Interval sin_interval(const Interval& x, int terms, const Interval& pi) {
    if (x.lo < 0 || x.hi > pi.hi) throw invalid_input("sin_interval expects interval in [0, pi]");
    Interval at_lo = detail::sin_point(x.lo, terms, pi);
    Interval at_hi = detail::sin_point(x.hi, terms, pi);
    Rat lo = std::min(at_lo.lo, at_hi.lo);
    Interval half_pi = rat(1, 2) * pi;
    Rat hi;
    if (x.hi < half_pi.lo) {
        hi = at_hi.hi;  // increasing region
    } else if (x.lo > half_pi.hi) {
        hi = at_lo.hi;  // decreasing region
    } else {
        hi = 1;
    }
    return {lo, hi};
}

// cos over an interval contained in [0, pi], via cos t = sin(pi/2 - t) on
// [0, pi/2] and cos t = -sin(t - pi/2) on (pi/2, pi]. The interval is split
// at pi/2 when it straddles it.
inline Interval cos_interval(const Interval& x, int terms, const Interval& pi);

// A rational point exactly on the unit circle, within chord distance
// 2^-bits of e^{i * rho * pi}. rho is taken mod 2. The point is produced by
// the tan-half-angle parametrization (1-t^2, 2t)/(1+t^2) after reduction to
// the first quadrant, so the on-circle identity x^2 + y^2 = 1 holds exactly.
std::pair<Rat, Rat> rational_unit_vector(Rat rho, long bits);

inline Interval cos_interval(const Interval& x, int terms, const Interval& pi) {
    if (x.lo < 0 || x.hi > pi.hi) throw invalid_input("cos_interval expects interval in [0, pi]");
    Interval half_pi = rat(1, 2) * pi;
    auto left = [&](const Interval& seg) {  // seg in [0, pi/2]
        Interval arg = half_pi - seg;
        if (arg.lo < 0) arg.lo = 0;
        return sin_interval(arg, terms, pi);
    };
    auto right = [&](const Interval& seg) {  // seg in [pi/2, pi]
        Interval arg = seg - half_pi;
        if (arg.lo < 0) arg.lo = 0;
        return -sin_interval(arg, terms, pi);
    };
    if (x.hi <= half_pi.lo) return left(x);
    if (x.lo >= half_pi.hi) return right(x);
    Interval a = left(Interval{x.lo, half_pi.hi});
    Interval b = right(Interval{half_pi.lo, x.hi});
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

inline std::pair<Rat, Rat> rational_unit_vector(Rat rho, long bits) {
    // reduce to [0, 2)
    Rat two(2);
    rho -= Rat(rat_floor(rho / two)) * two;
    if (rho == 0) return {Rat(1), Rat(0)};
    if (rho == rat(1, 2)) return {Rat(0), Rat(1)};
    if (rho == 1) return {Rat(-1), Rat(0)};
    if (rho == rat(3, 2)) return {Rat(0), Rat(-1)};

    // quadrant reduction: rho*pi = q*(pi/2) + psi with psi in (0, pi/2)
    long q = rat_floor(rho * 2).get_si();
    Rat frac = rho - rat(q, 2);  // psi = frac * pi, frac in (0, 1/2)

    // Certified enclosure of tan(psi/2); tighten until the dyadic rounding
    // error budget is met. The half-angle stays in (0, pi/4), so the cosine
    // divisor is bounded away from zero.
    long target_bits = bits + 2;
    Rat target_width = pow2(-target_bits);
    Rat tau;
    bool ok = false;
    for (int terms = 16; terms <= 4096; terms *= 2) {
        Interval pi = pi_interval(terms);
        Interval half_angle = (frac / 2) * pi;
        Interval s = sin_interval(half_angle, terms, pi);
        Interval c = cos_interval(half_angle, terms, pi);
        if (c.lo <= 0) continue;
        Interval t = interval_div(s, c);
        if (t.width() <= target_width) {
            tau = round_to_dyadic(t.mid(), target_bits);
            ok = true;
            break;
        }
    }
    if (!ok) throw invalid_input("rational_unit_vector: requested precision not reached");

    Rat denom = 1 + tau * tau;
    Rat x = (1 - tau * tau) / denom;
    Rat y = (2 * tau) / denom;
    for (long i = 0; i < q; ++i) {
        Rat nx = -y;
        y = x;
        x = nx;
    }
    return {x, y};
}

}  // namespace scallop

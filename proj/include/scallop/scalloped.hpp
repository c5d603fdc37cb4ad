#pragma once

#include <string>
#include <vector>

#include "scallop/geometry.hpp"
#include "scallop/interval.hpp"
#include "scallop/json_io.hpp"

namespace scallop {

// Geometric parameters of the scalloped s-gon: s congruent disks of radius
// R = M - 1 centered at distance M from the origin, each carrying a tiny
// boundary arc of central width delta = 1/M^2 facing the origin. M is the
// smallest integer exceeding 3/sin^2(pi/s) + 1, plus a unit of safety
// margin for the rational center approximations.
struct ScallopParams {
    long s = 0;
    Rat M, R, delta;
    long precision_bits = 128;
    long points_per_arc = 0;  // s or 2s
    std::vector<std::string> transcript;

    Json to_json() const {
        Json t = Json::array();
        for (const auto& line : transcript) t.push_back(line);
        return Json{{"s", s},
                    {"M", rat_to_string(M)},
                    {"R", rat_to_string(R)},
                    {"delta", rat_to_string(delta)},
                    {"precision_bits", precision_bits},
                    {"points_per_arc", points_per_arc},
                    {"transcript", t}};
    }
};

namespace detail {

// Exact sin^2(pi/s) where it is rational (Niven): these are also exactly
// the cases where 3/sin^2(pi/s) is an integer and an interval enclosure
// could never disambiguate the ceiling.
inline bool exact_sin2_pi_over(long s, Rat& out) {
    switch (s) {
        case 2: out = rat(1); return true;
        case 3: out = rat(3, 4); return true;
        case 4: out = rat(1, 2); return true;
        case 6: out = rat(1, 4); return true;
        default: return false;
    }
}

}  // namespace detail

inline ScallopParams choose_params(long s, long precision_bits = 128, long points_per_arc = 0) {
    if (s < 2) throw invalid_input("choose_params requires s >= 2");
    if (precision_bits < 16) throw invalid_input("choose_params requires precision_bits >= 16");
    ScallopParams p;
    p.s = s;
    p.precision_bits = precision_bits;
    p.points_per_arc = points_per_arc == 0 ? s : points_per_arc;
    if (p.points_per_arc != s && p.points_per_arc != 2 * s)
        throw invalid_input("points_per_arc must be s or 2s");

    Int m_int;
    Rat sin2_exact;
    Rat ratio_upper;  // certified upper bound on 3/sin^2(pi/s)
    if (detail::exact_sin2_pi_over(s, sin2_exact)) {
        Rat ratio = rat(3) / sin2_exact;
        m_int = rat_ceil(ratio) + 2;
        ratio_upper = ratio;
        p.transcript.push_back("sin^2(pi/" + std::to_string(s) + ") = " + rat_to_string(sin2_exact) +
                               " exactly; 3/sin^2 = " + rat_to_string(ratio));
    } else {
        bool settled = false;
        for (int terms = 24; terms <= 3072; terms *= 2) {
            Interval pi = pi_interval(terms);
            Interval x = interval_div(pi, Interval{rat(s), rat(s)});
            Interval sin = sin_interval(x, terms, pi);
            if (sin.lo <= 0) continue;
            Rat lo = rat(3) / (sin.hi * sin.hi);
            Rat hi = rat(3) / (sin.lo * sin.lo);
            if (rat_ceil(lo) == rat_ceil(hi)) {
                m_int = rat_ceil(lo) + 2;
                ratio_upper = hi;
                p.transcript.push_back("sin(pi/" + std::to_string(s) + ") in [" + rat_to_string(sin.lo) +
                                       ", " + rat_to_string(sin.hi) + "]");
                p.transcript.push_back("3/sin^2(pi/" + std::to_string(s) + ") in [" + rat_to_string(lo) +
                                       ", " + rat_to_string(hi) + "], ceil " + rat_ceil(lo).get_str());
                settled = true;
                break;
            }
        }
        if (!settled) throw invalid_input("choose_params: ceiling of 3/sin^2(pi/s) did not stabilize");
    }
    p.M = Rat(m_int);
    p.R = p.M - 1;
    p.delta = rat(Int(1), m_int * m_int);
    p.transcript.push_back("M = " + m_int.get_str() + ", R = M-1, delta = M^-2");

    if (!(p.M - 1 > ratio_upper)) throw invalid_input("choose_params: M fails the certified lower bound");
    p.transcript.push_back("certified M - 1 > 3/sin^2(pi/s) via upper bound " + rat_to_string(ratio_upper));

    // re-verify the defining inequality 2(M-1) sin(pi/s) cos((s+2)pi/(2s)) + 6 < 0
    bool verified = false;
    for (int terms = 24; terms <= 3072; terms *= 2) {
        Interval pi = pi_interval(terms);
        Interval x1 = interval_div(pi, Interval{rat(s), rat(s)});
        Interval x2 = rat(s + 2, 2 * s) * pi;
        Interval sin = sin_interval(x1, terms, pi);
        Interval cos = cos_interval(x2, terms, pi);
        Interval lhs = (rat(2) * (p.M - 1)) * (sin * cos) + Interval{rat(6), rat(6)};
        if (lhs.hi < 0) {
            p.transcript.push_back("2(M-1) sin(pi/s) cos((s+2)pi/(2s)) + 6 <= " + rat_to_string(lhs.hi) +
                                   " < 0 verified");
            verified = true;
            break;
        }
    }
    if (!verified) throw invalid_input("choose_params: defining inequality not certified at chosen M");
    return p;
}

// The witness point set: rows are disks, columns are angular slots. All
// points lie exactly on rational-radius circles around rational centers,
// so every downstream certificate evaluates in exact arithmetic.
struct PointGrid {
    long s = 0;
    long cols = 0;
    std::vector<Vec> centers;             // one per row
    std::vector<std::vector<Vec>> points; // s rows of cols points
    Rat radius;
    ScallopParams params;

    const Vec& at(long i, long j) const {
        return points[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

    Json to_json() const {
        Json centers_j = Json::array();
        for (const auto& c : centers) centers_j.push_back(scallop::to_json(c));
        Json points_j = Json::array();
        for (const auto& row : points) {
            Json row_j = Json::array();
            for (const auto& p : row) row_j.push_back(scallop::to_json(p));
            points_j.push_back(row_j);
        }
        return Json{{"schema", "v1"},     {"s", s},
                    {"cols", cols},       {"radius", rat_to_string(radius)},
                    {"centers", centers_j}, {"points", points_j},
                    {"params", params.to_json()}};
    }

    static PointGrid from_json(const Json& j) {
        PointGrid g;
        g.s = j.at("s").get<long>();
        g.cols = j.at("cols").get<long>();
        g.radius = rat_from_json(j.at("radius"));
        for (const auto& c : j.at("centers")) g.centers.push_back(vec_from_json(c));
        for (const auto& row : j.at("points")) {
            std::vector<Vec> r;
            for (const auto& p : row) r.push_back(vec_from_json(p));
            g.points.push_back(std::move(r));
        }
        const auto& pj = j.at("params");
        g.params.s = pj.at("s").get<long>();
        g.params.M = rat_from_json(pj.at("M"));
        g.params.R = rat_from_json(pj.at("R"));
        g.params.delta = rat_from_json(pj.at("delta"));
        g.params.precision_bits = pj.at("precision_bits").get<long>();
        g.params.points_per_arc = pj.at("points_per_arc").get<long>();
        for (const auto& line : pj.at("transcript")) g.params.transcript.push_back(line.get<std::string>());
        return g;
    }

    std::string hash() const { return json_hash(to_json()); }
};

inline PointGrid generate_scalloped(const ScallopParams& params) {
    const long s = params.s;
    const long cols = params.points_per_arc;
    if (cols < 2) throw invalid_input("generate_scalloped requires at least 2 points per arc");
    PointGrid g;
    g.s = s;
    g.cols = cols;
    g.radius = params.R;
    g.params = params;

    // center approximation budget: |y~ - y| <= M * chord_error <= 2^-precision
    long mbits = static_cast<long>(mpz_sizeinbase(params.M.get_num().get_mpz_t(), 2));
    long center_bits = params.precision_bits + mbits + 2;

    for (long k = 1; k <= s; ++k) {
        Rat rho = rat(2 * k + 1, s);  // angle as a multiple of pi
        auto [ux, uy] = rational_unit_vector(rho, center_bits);
        Vec u{ux, uy};
        Vec u_cw{uy, -ux};  // clockwise perpendicular: increasing t walks clockwise
        Vec center = vscale(params.M, u);
        g.centers.push_back(center);

        std::vector<Vec> row;
        for (long j = 1; j <= cols; ++j) {
            // half-angle parameter across the width-delta window, endpoints included
            Rat t = -params.delta / 2 + rat(j - 1) * params.delta / rat(cols - 1);
            Rat denom = 1 + t * t;
            Rat cos_t = (1 - t * t) / denom;
            Rat sin_t = (2 * t) / denom;
            Vec z = vsub(center, vadd(vscale(params.R * cos_t, u), vscale(params.R * sin_t, u_cw)));
            // on-circle identity, exact
            Vec dvec = vsub(z, center);
            if (dot(dvec, dvec) != params.R * params.R)
                throw invalid_input("generate_scalloped: on-circle identity violated");
            row.push_back(std::move(z));
        }
        g.points.push_back(std::move(row));
    }

    // all points pairwise distinct
    std::vector<Vec> flat;
    for (const auto& row : g.points) flat.insert(flat.end(), row.begin(), row.end());
    for (std::size_t i = 0; i < flat.size(); ++i)
        for (std::size_t j = i + 1; j < flat.size(); ++j)
            if (flat[i] == flat[j])
                throw invalid_input(
                    "generate_scalloped: coincident points; retry with more precision bits");

    // each row in convex position
    for (long i = 0; i < s; ++i) {
        auto cp = convex_position(g.points[static_cast<std::size_t>(i)]);
        if (!cp.in_convex_position)
            throw invalid_input("generate_scalloped: row not in convex position; retry with more bits");
    }
    return g;
}

}  // namespace scallop

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scallop {

// All geometry in this library is computed over exact rationals. GMP's mpq
// keeps values canonical (positive denominator, reduced), which is exactly
// the representation contract we need.
using Rat = mpq_class;
using Int = mpz_class;

struct invalid_input : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct dimension_mismatch : invalid_input {
    using invalid_input::invalid_input;
};

struct cap_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw invalid_input("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat(const Int& num, const Int& den) {
    if (den == 0) throw invalid_input("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Serialized form is "p/q", or just "p" when q == 1. Never floating point.
inline std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rat parse_rat(std::string_view text) {
    if (text.empty()) throw invalid_input("empty rational literal");
    std::string s(text);
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Rat r(Int(s), 1);
            return r;
        }
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw invalid_input("rational literal with zero denominator: " + s);
        if (den < 0) throw invalid_input("rational literal with negative denominator: " + s);
        Rat r(num, den);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw invalid_input("malformed rational literal: " + s);
    }
}

inline int sgn(const Rat& r) { return ::sgn(r); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline Int rat_floor(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

inline Int rat_ceil(const Rat& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

// 2^k for possibly negative k.
inline Rat pow2(long k) {
    Int p(1);
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k < 0 ? -k : k));
    return k >= 0 ? Rat(p) : rat(Int(1), p);
}

// Nearest dyadic rational with denominator 2^bits; |result - x| <= 2^-(bits+1).
inline Rat round_to_dyadic(const Rat& x, long bits) {
    Rat scaled = x * pow2(bits);
    Rat shifted = scaled + rat(1, 2);
    Int n = rat_floor(shifted);
    return Rat(n) * pow2(-bits);
}

inline double rat_to_double(const Rat& r) { return r.get_d(); }

// FNV-1a over bytes; used for transcript hashes of serialized artifacts.
inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string fnv1a64_hex(std::string_view data) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a64(data);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace scallop

#pragma once

#include "dode/calculus.hpp"
#include "dode/expr.hpp"

#include <random>
#include <vector>

namespace dode::testing {

using Rng = std::mt19937_64;

inline long rand_long(Rng& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

// Uniform in [-2^bits, 2^bits] built from raw 64-bit chunks.
inline Int rand_int_pm(Rng& rng, unsigned bits) {
    Int m = Int::pow2(bits);
    // Rejection-free: random bits-wide magnitude, random sign.
    Int v(0);
    unsigned produced = 0;
    while (produced < bits) {
        unsigned take = std::min(32u, bits - produced);
        v = v.shifted_left(take) + Int(static_cast<long>(rng() & ((1ull << take) - 1)));
        produced += take;
    }
    if (v > m) v -= m;
    return (rng() & 1) ? -v : v;
}

inline Int rand_bits(Rng& rng, unsigned bits) {
    // Exactly `bits` bits: top bit forced.
    if (bits == 0) return Int(0);
    Int v = Int::pow2(bits - 1);
    unsigned produced = 0;
    Int low(0);
    while (produced + 1 < bits) {
        unsigned take = std::min(32u, bits - 1 - produced);
        low = low.shifted_left(take) + Int(static_cast<long>(rng() & ((1ull << take) - 1)));
        produced += take;
    }
    return v + low;
}

inline std::vector<Int> rand_table(Rng& rng, std::size_t n, long lo, long hi) {
    std::vector<Int> t;
    t.reserve(n);
    for (std::size_t i = 0; i < n; ++i) t.push_back(Int(rand_long(rng, lo, hi)));
    return t;
}

inline std::vector<Int> rand_table_pm(Rng& rng, std::size_t n, unsigned bits) {
    std::vector<Int> t;
    t.reserve(n);
    for (std::size_t i = 0; i < n; ++i) t.push_back(rand_int_pm(rng, bits));
    return t;
}

inline bool same_tree(const Expr& a, const Expr& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case Expr::Kind::Const: return a.value() == b.value();
        case Expr::Kind::Var: return a.name() == b.name();
        case Expr::Kind::Call:
            if (a.name() != b.name()) return false;
            break;
        default: break;
    }
    if (a.args().size() != b.args().size()) return false;
    for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!same_tree(a.args()[i], b.args()[i])) return false;
    return true;
}

}  // namespace dode::testing

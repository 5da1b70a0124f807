#include "dode/funclib.hpp"

#include "doctest.h"
#include "support.hpp"

using namespace dode;
using namespace dode::funclib;
using dode::testing::Rng;

namespace {

// Brute-force oracles, kept deliberately independent of the ODE route.
Int oracle_min(const IntFn& f, long x) {
    Int m = f(Int(0));
    for (long t = 1; t <= x; ++t) {
        Int v = f(Int(t));
        if (v < m) m = v;
    }
    return m;
}

Int oracle_isqrt(long x) {
    long y = 0;
    while ((y + 1) * (y + 1) <= x) ++y;
    return Int(y);
}

Int oracle_suffix(long x, long y) {
    unsigned long ly = Int(y).bit_length();
    return Int(x % (1L << ly));
}

}  // namespace

TEST_CASE("f_min") {
    IntFn f = IntFn::from_unary([](const Int& t) { return (t - Int(3)) * (t - Int(3)); });
    CHECK(oracle_min(f, 5) == Int(0));
    CHECK(f_min(f, Int(5)).value == Int(0));

    IntFn c7 = IntFn::from_unary([](const Int&) { return Int(7); });
    CHECK(f_min(c7, Int(12)).value == Int(7));
    CHECK(f_min(f, Int(0)).value == f(Int(0)));
}

TEST_CASE("f_min is a lower bound attained on the prefix") {
    Rng rng(51);
    for (int trial = 0; trial < 50; ++trial) {
        long x = testing::rand_long(rng, 0, 255);
        IntFn f = IntFn::from_table(0, testing::rand_table(rng, x + 2, -1000, 1000));
        Int m = f_min(f, Int(x)).value;
        bool attained = false;
        for (long t = 0; t <= x; ++t) {
            CHECK(m <= f(Int(t)));
            if (m == f(Int(t))) attained = true;
        }
        CHECK(attained);
        CHECK(m == oracle_min(f, x));
    }
}

TEST_CASE("isqrt examples and oracle") {
    CHECK(oracle_isqrt(10) == Int(3));
    CHECK(isqrt(Int(10)).value == Int(3));
    CHECK(isqrt(Int(16)).value == Int(4));
    CHECK(isqrt(Int(0)).value == Int(0));
    for (long x = 0; x < 1024; ++x) CHECK(isqrt(Int(x)).value == oracle_isqrt(x));
}

TEST_CASE("idiv examples and oracle") {
    CHECK(idiv(Int(7), Int(2)).value == Int(3));
    for (long x = 0; x < 1024; ++x) CHECK(idiv(Int(x), Int(1)).value == Int(x));
    for (long x = 0; x < 256; ++x)
        for (long y = 1; y <= 12; ++y) CHECK(idiv(Int(x), Int(y)).value == Int(x / y));
    CHECK_THROWS_AS(idiv(Int(5), Int(0)), DivByZero);
}

TEST_CASE("suffix examples and oracle") {
    CHECK(oracle_suffix(53, 5) == Int(5));
    CHECK(suffix(Int(53), Int(5)).value == Int(5));
    CHECK(suffix(Int(11), Int(1)).value == Int(1));
    // len(y) >= len(x) keeps x intact
    CHECK(suffix(Int(9), Int(15)).value == Int(9));
    CHECK(suffix(Int(9), Int(9)).value == Int(9));
    for (long x = 0; x < 200; ++x)
        for (long y = 0; y < 40; ++y) CHECK(suffix(Int(x), Int(y)).value == oracle_suffix(x, y));
}

TEST_CASE("pow2 family examples") {
    CHECK(pow2_len(Int(5)).value == Int(8));
    CHECK(pow2_len(Int(0)).value == Int(1));
    CHECK(pow2_lenprod(Int(5), Int(3)).value == Int(64));
    CHECK(pow2_len_sq(Int(5)).value == Int(512));  // len 3, 2^9
    for (long x = 0; x < 600; ++x) {
        unsigned long l = Int(x).bit_length();
        CHECK(pow2_len(Int(x)).value == Int::pow2(l));
        CHECK(pow2_len_sq(Int(x)).value == Int::pow2(l * l));
        for (long y : {0L, 1L, 5L, 100L}) {
            unsigned long ly = Int(y).bit_length();
            CHECK(pow2_lenprod(Int(x), Int(y)).value == Int::pow2(l * ly));
        }
    }
}

TEST_CASE("length-ODE step accounting") {
    for (long x : {0L, 1L, 5L, 100L, 4095L}) {
        unsigned long l = Int(x).bit_length();
        CHECK(pow2_len(Int(x)).steps == l);
        CHECK(pow2_len_sq(Int(x)).steps == l * l);
        CHECK(pow2_lenprod(Int(x), Int(9)).steps == l);
        CHECK(suffix(Int(x), Int(9)).steps == l);
        CHECK(isqrt(Int(x)).steps == l);
        CHECK(idiv(Int(x), Int(3)).steps == l);
    }
}

TEST_CASE("bounded sum and product") {
    IntFn id = IntFn::from_unary([](const Int& z) { return z; });
    CHECK(bounded_sum(id, Int(4)).value == Int(6));
    CHECK(bounded_sum(id, Int(0)).value == Int(0));
    IntFn two = IntFn::from_unary([](const Int&) { return Int(2); });
    CHECK(bounded_product(two, Int(3)).value == Int(8));
    CHECK(bounded_product(two, Int(0)).value == Int(1));

    // with a parameter: g(z,y) = z + y
    IntFn gy = IntFn::from_binary([](const Int& z, const Int& y) { return z + y; });
    CHECK(bounded_sum(gy, Int(3), {Int(10)}).value == Int(33));
    CHECK(bounded_product(gy, Int(3), {Int(1)}).value == Int(6));
}

TEST_CASE("smin_ode") {
    IntFn gsub = IntFn::from_binary([](const Int& x, const Int& y) { return x - y; });
    auto r = smin_ode(gsub, {Int(4)}, 10);
    CHECK(r.value == Int(4));

    // zero iff x >= 3
    IntFn g3 = IntFn::from_unary([](const Int& x) { return ifz(sg(x - Int(2)), Int(1), Int(0)); });
    CHECK(smin_ode(g3, {}, 10).value == Int(3));

    IntFn one = IntFn::from_unary([](const Int&) { return Int(1); });
    CHECK_THROWS_AS(smin_ode(one, {}, 100), CapExceeded);
}

TEST_CASE("smin_ode trajectory is monotone with unit increments") {
    // Reconstruct the recurrence f(x+1) = f(x) + sg(g(f)) and check it
    // only ever holds or increments by one.
    Rng rng(52);
    for (int trial = 0; trial < 20; ++trial) {
        long zero_at = testing::rand_long(rng, 0, 50);
        IntFn g = IntFn::from_unary(
            [zero_at](const Int& x) { return x >= Int(zero_at) ? Int(0) : Int(1); });
        Int f(0);
        for (int step = 0; step < 64; ++step) {
            Int next = f + sg(g(f));
            CHECK((next == f || next == f + Int(1)));
            f = next;
        }
        CHECK(smin_ode(g, {}, 64).value == Int(zero_at));
    }
}

TEST_CASE("registered auxiliaries are callable from expressions") {
    Env env;
    env.functions = &default_registry();
    env.set("x", Int(10));
    CHECK(eval_expr(parse_expr("isqrt(x)"), env) == Int(3));
    CHECK(eval_expr(parse_expr("idiv(x,3)"), env) == Int(3));
    CHECK(eval_expr(parse_expr("suffix(53,5)"), env) == Int(5));
    CHECK(eval_expr(parse_expr("pow2_len(x)"), env) == Int(16));
    CHECK(eval_expr(parse_expr("pow2_lenprod(x,3)"), env) == Int(256));
    CHECK(eval_expr(parse_expr("len(x)"), env) == Int(4));
}

#include "dode/ode.hpp"

#include "dode/funclib.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace dode;
using dode::testing::Rng;

namespace {

OdeSystem scalar_system(const std::string& init, const std::string& rhs,
                        OdeKind kind = OdeKind::Plain) {
    OdeSystem sys;
    sys.name = "t";
    sys.state = {"f"};
    sys.init = {parse_expr(init)};
    sys.rhs = {parse_expr(rhs)};
    sys.kind = kind;
    return sys;
}

const FunctionRegistry& reg() { return funclib::default_registry(); }

}  // namespace

TEST_CASE("solve_naive: constant derivative") {
    auto rep = solve_naive(scalar_system("0", "1"), Int(7), {}, &reg());
    CHECK(rep.values[0] == Int(7));
    CHECK(rep.steps == 7);
}

TEST_CASE("solve_naive: the sign function as an IVP over N") {
    OdeSystem sys = scalar_system("0", "0-f+1");
    CHECK(solve_naive(sys, Int(0), {}, &reg()).values[0] == Int(0));
    for (long x = 1; x <= 20; ++x)
        CHECK(solve_naive(sys, Int(x), {}, &reg()).values[0] == Int(1));
}

TEST_CASE("solve_naive: doubling") {
    auto rep = solve_naive(scalar_system("1", "f"), Int(10), {}, &reg());
    CHECK(rep.values[0] == Int(1024));
    CHECK(rep.max_bits == 11);
}

TEST_CASE("closed form: 2^x and pure integration") {
    // a=1, b=0, g=1 at x=6
    auto v = solve_linear_closed_form({{parse_expr("1")}}, {parse_expr("0")}, {parse_expr("1")},
                                      Int(6), {}, {}, &reg());
    CHECK(v[0] == Int(64));
    // a=0, b=1, g=0 at x=9
    v = solve_linear_closed_form({{parse_expr("0")}}, {parse_expr("1")}, {parse_expr("0")},
                                 Int(9), {}, {}, &reg());
    CHECK(v[0] == Int(9));
}

TEST_CASE("closed form equals naive on random systems") {
    Rng rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t k = 1 + rng() % 3;
        std::vector<std::vector<Expr>> A(k, std::vector<Expr>(k, Expr()));
        std::vector<Expr> B(k), G(k);
        OdeSystem sys;
        sys.name = "rand";
        sys.kind = OdeKind::Linear;
        for (std::size_t i = 0; i < k; ++i) sys.state.push_back("f" + std::to_string(i));
        for (std::size_t i = 0; i < k; ++i) {
            // Coefficients depend on x only, constants in [-5,5].
            auto coef = [&rng]() {
                long c = testing::rand_long(rng, -5, 5);
                long d = testing::rand_long(rng, -5, 5);
                return parse_expr(std::to_string(c) + "+x*" + std::to_string(d));
            };
            B[i] = coef();
            G[i] = Expr::constant(Int(testing::rand_long(rng, -5, 5)));
            Expr rhs = B[i];
            for (std::size_t j = 0; j < k; ++j) {
                A[i][j] = coef();
                rhs = Expr::add(rhs, Expr::mul(A[i][j], Expr::variable(sys.state[j])));
            }
            sys.rhs.push_back(rhs);
            sys.init.push_back(G[i]);
        }
        long x = testing::rand_long(rng, 0, 50);
        auto naive = solve_naive(sys, Int(x), {}, &reg());
        auto closed = solve_linear_closed_form(A, B, G, Int(x), {}, {}, &reg());
        for (std::size_t i = 0; i < k; ++i) CHECK(naive.values[i] == closed[i]);
    }
}

TEST_CASE("jump_set of the length function") {
    Env env;
    LSpec len = length_lspec();
    auto j5 = jump_set(len, Int(5), env);
    REQUIRE(j5.size() == 3);  // lengths 0,1,2,2,3 change at 0, 1, 3
    CHECK(j5[0] == Int(0));
    CHECK(j5[1] == Int(1));
    CHECK(j5[2] == Int(3));

    CHECK(jump_set(len, Int(0), env).empty());

    LSpec constant{"const", [](const Int&, const Env&) { return Int(9); }, std::nullopt};
    CHECK(jump_set(constant, Int(100), env).empty());
}

TEST_CASE("jump enumerator agrees with scan everywhere below 2^12") {
    Env env;
    LSpec len = length_lspec();
    LSpec scan_only{"len", len.L, std::nullopt};
    for (long x : {0L, 1L, 2L, 3L, 100L, 1000L, 4095L}) {
        auto fast = jump_set(len, Int(x), env);
        auto slow = jump_set(scan_only, Int(x), env);
        CHECK(fast == slow);
    }
    // alpha(i) = 2^i - 1 for every length below 14 bits
    auto jumps = jump_set(len, Int(10000), env);
    REQUIRE(jumps.size() == 14);
    for (std::size_t i = 0; i < jumps.size(); ++i) CHECK(jumps[i] == Int::pow2(i) - Int(1));
}

TEST_CASE("a lying enumerator is caught by the sampling validation") {
    LSpec bad = length_lspec();
    bad.enumerator->alpha = [](unsigned long j, const Env&) { return Int(2 * j); };
    Env env;
    CHECK_THROWS_AS(jump_set(bad, Int(50), env), EnumeratorMismatch);
}

TEST_CASE("solve_lode_fast: 2^len and step counts") {
    OdeSystem sys = funclib::pow2_len_system();
    auto rep = solve_lode_fast(sys, Int(5), {}, &reg());
    CHECK(rep.values[0] == Int(8));
    CHECK(rep.steps == 3);

    rep = solve_lode_fast(sys, Int(0), {}, &reg());
    CHECK(rep.values[0] == Int(1));
    CHECK(rep.steps == 0);

    // Fast path equals the naive scan.
    for (long x = 0; x < 300; ++x) {
        auto fast = solve_lode_fast(sys, Int(x), {}, &reg());
        auto naive = solve_naive(sys, Int(x), {}, &reg());
        CHECK(fast.values[0] == naive.values[0]);
    }
}

TEST_CASE("an L-ODE along len with nonlinear h: 2^{len^2}") {
    // State (f, g) with f' = f*(2g^2-1) and g' = g along len(x) keeps
    // g = 2^{len} and pushes f through the odd jump sizes of len^2,
    // giving f = 2^{len(x)^2}.
    OdeSystem sys;
    sys.name = "pow2lensq_pair";
    sys.state = {"f", "g"};
    sys.deriv_var = "x";
    sys.lspec = length_lspec();
    sys.kind = OdeKind::LOde;
    sys.init = {parse_expr("1"), parse_expr("1")};
    sys.rhs = {parse_expr("f*(2*g*g-1)"), parse_expr("g")};

    for (long x = 0; x < 4096; ++x) {
        unsigned long l = Int(x).bit_length();
        Int expected = Int::pow2(l * l);
        auto fast = solve_lode_fast(sys, Int(x), {}, &reg());
        CHECK(fast.values[0] == expected);
        CHECK(fast.steps == l);
    }
    // and it matches the naive recurrence at small x
    for (long x = 0; x < 64; ++x) {
        auto fast = solve_lode_fast(sys, Int(x), {}, &reg());
        auto naive = solve_naive(sys, Int(x), {}, &reg());
        CHECK(fast.values == naive.values);
    }
}

TEST_CASE("an L-ODE along len(x)^2: the jump counter solves to len^2") {
    OdeSystem sys;
    sys.name = "lensq_counter";
    sys.state = {"f"};
    sys.deriv_var = "x";
    sys.lspec = length_squared_lspec();
    sys.kind = OdeKind::LOde;
    sys.init = {parse_expr("0")};
    sys.rhs = {parse_expr("1")};

    for (long x = 0; x < 1024; ++x) {
        unsigned long l = Int(x).bit_length();
        auto fast = solve_lode_fast(sys, Int(x), {}, &reg());
        auto naive = solve_naive(sys, Int(x), {}, &reg());
        CHECK(fast.values[0] == Int(static_cast<long>(l * l)));
        CHECK(fast.values[0] == naive.values[0]);
        CHECK(fast.steps == l);
    }
}

TEST_CASE("fast equals naive across the library systems") {
    const FunctionRegistry& registry = funclib::default_registry();

    OdeSystem pl = funclib::pow2_len_system();
    OdeSystem sfx = funclib::suffix_system();
    OdeSystem lp = funclib::pow2_lenprod_system();
    for (long x = 0; x < 512; ++x) {
        CHECK(solve_lode_fast(pl, Int(x), {}, &registry).values ==
              solve_naive(pl, Int(x), {}, &registry).values);
        CHECK(solve_lode_fast(sfx, Int(x), {Int(x), Int(5)}, &registry).values ==
              solve_naive(sfx, Int(x), {Int(x), Int(5)}, &registry).values);
        CHECK(solve_lode_fast(lp, Int(x), {Int(9)}, &registry).values ==
              solve_naive(lp, Int(x), {Int(9)}, &registry).values);
    }

    // the dichotomy system, h(z) = z*z, f = identity
    FunctionRegistry with_h = registry;
    with_h.add("h_fn", 1, [](const std::vector<Int>& a) { return a[0] * a[0]; });
    with_h.add("f_fn", 1, [](const std::vector<Int>& a) { return a[0]; });
    OdeSystem sh = funclib::some_h_system();
    for (long x = 0; x < 512; ++x)
        CHECK(solve_lode_fast(sh, Int(x), {Int(x)}, &with_h).values ==
              solve_naive(sh, Int(x), {Int(x)}, &with_h).values);
}

TEST_CASE("L-expressibility: equal L values force equal solutions") {
    OdeSystem sys = funclib::suffix_system();
    // f(x, (X,Y)) depends on x only through len(x); bucket by L value.
    std::vector<Int> params = {Int(1000), Int(5)};
    std::map<unsigned long, Int> by_l;
    for (long x = 0; x <= 1024; ++x) {
        auto rep = solve_naive(sys, Int(x), params, &reg());
        unsigned long l = Int(x).bit_length();
        auto [it, fresh] = by_l.emplace(l, rep.values[0]);
        if (!fresh) CHECK(it->second == rep.values[0]);
    }
}

TEST_CASE("solve_linear_fast: doubling under a guard") {
    OdeSystem sys = scalar_system("1", "f", OdeKind::Linear);
    auto rep = solve_linear_fast(sys, 10, {}, &reg(), 64);
    CHECK(rep.values[0] == Int(1024));
    CHECK(rep.steps == 10);

    try {
        solve_linear_fast(sys, 100, {}, &reg(), 8);
        FAIL("expected GrowthExceeded");
    } catch (const GrowthExceeded& e) {
        CHECK(e.bits == 9);   // 2^8 is the first value needing 9 bits
        CHECK(e.step == 8);
    }
}

TEST_CASE("solve_linear_fast rejects nonlinear right-hand sides") {
    OdeSystem sys = scalar_system("2", "f*f", OdeKind::Plain);
    CHECK_THROWS_AS(solve_linear_fast(sys, 10, {}, &reg(), 1000), NotEssentiallyLinear);
}

TEST_CASE("bounded systems: violation is an error, not a clamp") {
    OdeSystem sys = scalar_system("1", "f", OdeKind::Bounded);
    sys.bounds = {parse_expr("100")};
    CHECK_NOTHROW(solve_naive(sys, Int(6), {}, &reg()));
    try {
        solve_naive(sys, Int(10), {}, &reg());
        FAIL("expected BoundViolated");
    } catch (const BoundViolated& e) {
        CHECK(e.step == 7);  // f(7) = 128 > 100
    }
}

TEST_CASE("bounded systems check the initial values too") {
    OdeSystem sys = scalar_system("1", "f", OdeKind::Bounded);
    sys.bounds = {parse_expr("0")};
    try {
        solve_naive(sys, Int(3), {}, &reg());
        FAIL("expected BoundViolated");
    } catch (const BoundViolated& e) {
        CHECK(e.step == 0);
    }
}

TEST_CASE("an enumerator that misses jumps is rejected") {
    LSpec lazy = length_lspec();
    lazy.enumerator->count = [](const Int&, const Env&) { return 1ul; };
    Env env;
    CHECK_THROWS_AS(jump_set(lazy, Int(40), env), EnumeratorMismatch);
}

TEST_CASE("tower of exponentials trips any small guard quickly") {
    OdeSystem sys;
    sys.name = "tower3";
    sys.state = {"y1", "y2", "y3"};
    sys.kind = OdeKind::Plain;
    sys.init = {parse_expr("1"), parse_expr("1"), parse_expr("1")};
    sys.rhs = {parse_expr("y1"), parse_expr("y1*y2"), parse_expr("y2*y3")};
    CHECK_THROWS_AS(solve_naive(sys, Int(40), {}, &reg(), 64ul), GrowthExceeded);
    CHECK_THROWS_AS(solve_naive(sys, Int(200), {}, &reg(), 2048ul), GrowthExceeded);
}

TEST_CASE("system files parse, print and round-trip") {
    const std::string text =
        "# a comment\n"
        "# output: f\n"
        "system lenprod\n"
        "state f\n"
        "param Y\n"
        "wrt len(x)\n"
        "init f = 1\n"
        "deriv f = f*(pow2_len(Y)-1)   # doubles len(Y) times per len jump\n";
    OdeSystem sys = parse_system(text);
    CHECK(sys.name == "lenprod");
    CHECK(sys.kind == OdeKind::LinearLengthOde);
    CHECK(sys.output == "f");
    REQUIRE(sys.state.size() == 1);

    auto rep = solve_lode_fast(sys, Int(5), {Int(3)}, &reg());
    CHECK(rep.values[0] == Int(64));  // 2^{3*2}

    // print -> parse -> print is a fixed point
    std::string printed = print_system(sys);
    OdeSystem again = parse_system(printed);
    CHECK(print_system(again) == printed);
    CHECK(again.kind == sys.kind);
}

TEST_CASE("system file errors") {
    CHECK_THROWS_AS(parse_system("state f\nwrt x\ninit f = 0\nderiv f = 1\n"), ParseError);
    CHECK_THROWS_AS(parse_system("system s\nstate f\nwrt q\ninit f = 0\nderiv f = 1\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_system("system s\nstate f\nwrt x\ninit f = 0\n"), ParseError);
    CHECK_THROWS_AS(parse_system("system s\nstate f\nwrt x\ninit g = 0\nderiv f = 1\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_system("system s\nstate f\nwrt L=nosuch\ninit f = 0\nderiv f = 1\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_system("system s\nstate f\nwrt x\ninit f = (\nderiv f = 1\n"),
                    ParseError);
    CHECK_THROWS_AS(
        parse_system("system s\nstate f\nwrt x\ninit f = 0\ninit f = 1\nderiv f = 1\n"),
        ParseError);
}

TEST_CASE("kind inference") {
    CHECK(parse_system("system a\nstate f\nwrt x\ninit f = 0\nderiv f = f\n").kind ==
          OdeKind::Linear);
    CHECK(parse_system("system b\nstate f\nwrt x\ninit f = 2\nderiv f = f*f\n").kind ==
          OdeKind::Plain);
    CHECK(parse_system("system c\nstate f\nwrt len(x)\ninit f = 1\nderiv f = f\n").kind ==
          OdeKind::LinearLengthOde);
    CHECK(parse_system("system d\nstate f\nwrt len(x)\ninit f = 1\nderiv f = f*f\n").kind ==
          OdeKind::LOde);
    CHECK(parse_system("system e\nstate f\nwrt L=lensq\ninit f = 0\nderiv f = 1\n").kind ==
          OdeKind::LOde);
    CHECK(parse_system("system g\nstate f\nwrt x\ninit f = 0\nderiv f = 1\nbound f = x+1\n")
              .kind == OdeKind::Bounded);
}

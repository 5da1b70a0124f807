#include "dode/calculus.hpp"

namespace dode {

IntFn IntFn::from_table(long lo, std::vector<Int> values) {
    long hi = lo + static_cast<long>(values.size());
    auto fn = [lo, hi, values = std::move(values)](const std::vector<Int>& a) -> Int {
        long x = a[0].to_long();
        if (x < lo || x >= hi)
            throw std::out_of_range("table lookup outside window [" + std::to_string(lo) +
                                    "," + std::to_string(hi) + "): " + std::to_string(x));
        return values[static_cast<std::size_t>(x - lo)];
    };
    return IntFn(1, std::move(fn), "table");
}

Int IntFn::apply(const std::vector<Int>& args) const {
    if (!fn_) throw std::logic_error("empty IntFn");
    if (args.size() != arity_)
        throw std::invalid_argument("IntFn arity mismatch: expected " + std::to_string(arity_) +
                                    ", got " + std::to_string(args.size()));
    return fn_(args);
}

IntFn delta(const IntFn& f, std::size_t slot) {
    if (slot >= f.arity()) throw std::invalid_argument("delta: bad argument slot");
    return IntFn(
        f.arity(),
        [f, slot](const std::vector<Int>& args) {
            std::vector<Int> shifted = args;
            shifted[slot] += Int(1);
            return f.apply(shifted) - f.apply(args);
        },
        "closed-form");
}

Int dint(const std::function<Int(const Int&)>& f, const Int& a, const Int& b) {
    if (a == b) return Int(0);
    if (a > b) return -dint(f, b, a);
    Int acc(0);
    for (Int x = a; x < b; x += Int(1)) acc += f(x);
    return acc;
}

Int dint(const IntFn& f, const Int& a, const Int& b) {
    return dint([&f](const Int& x) { return f(x); }, a, b);
}

Int falling_power(const Int& x, unsigned long m) {
    Int acc(1);
    for (unsigned long i = 0; i < m; ++i) acc *= x - Int(i);
    return acc;
}

Int falling_exp(const IntFn& U, const Int& x) {
    if (x.is_negative()) throw std::invalid_argument("falling_exp: x must be non-negative");
    Int acc(1);
    for (Int t(0); t < x; t += Int(1)) acc = (Int(1) + (U(t + Int(1)) - U(t))) * acc;
    return acc;
}

IntMatrix falling_exp(const std::function<IntMatrix(const Int&)>& U, const Int& x) {
    if (x.is_negative()) throw std::invalid_argument("falling_exp: x must be non-negative");
    IntMatrix u0 = U(Int(0));
    std::size_t k = u0.size();
    IntMatrix acc(k, std::vector<Int>(k, Int(0)));
    for (std::size_t i = 0; i < k; ++i) acc[i][i] = Int(1);
    for (Int t(0); t < x; t += Int(1)) {
        IntMatrix a = U(t), b = U(t + Int(1));
        // factor = I + dU(t), applied from the left
        IntMatrix next(k, std::vector<Int>(k, Int(0)));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t l = 0; l < k; ++l) {
                Int f = b[i][l] - a[i][l];
                if (i == l) f += Int(1);
                for (std::size_t j = 0; j < k; ++j) next[i][j] += f * acc[l][j];
            }
        acc = std::move(next);
    }
    return acc;
}

namespace {

const IntFn& need(const std::optional<IntFn>& f, const char* what) {
    if (!f) throw std::invalid_argument(std::string("check_identity: missing function ") + what);
    return *f;
}

std::string point(const std::string& desc, const Int& lhs, const Int& rhs) {
    return desc + ": lhs=" + lhs.str() + " rhs=" + rhs.str();
}

}  // namespace

IdentityReport check_identity(const std::string& name, const IdentityInputs& in, Window w) {
    IdentityReport rep;
    rep.name = name;
    rep.ok = true;

    auto fail = [&](const std::string& cx) {
        rep.ok = false;
        rep.counterexample = cx;
    };

    if (name == "product_rule") {
        // (fg)'(x) = f'(x) g(x+1) + f(x) g'(x)
        const IntFn& f = need(in.f, "f");
        const IntFn& g = need(in.g, "g");
        for (long x = w.lo; x <= w.hi && rep.ok; ++x) {
            Int xi(x), x1(x + 1);
            Int lhs = f(x1) * g(x1) - f(xi) * g(xi);
            Int rhs = (f(x1) - f(xi)) * g(x1) + f(xi) * (g(x1) - g(xi));
            ++rep.cases_checked;
            if (lhs != rhs) fail(point("x=" + std::to_string(x), lhs, rhs));
        }
        return rep;
    }

    if (name == "fundamental_theorem") {
        // int_a^b F'(x) dx = F(b) - F(a), over every (a,b) in the window box
        const IntFn& F = need(in.F, "F");
        IntFn Fp = delta(F);
        for (long a = w.lo; a <= w.hi && rep.ok; ++a)
            for (long b = w.lo; b <= w.hi && rep.ok; ++b) {
                Int lhs = dint(Fp, Int(a), Int(b));
                Int rhs = F(Int(b)) - F(Int(a));
                ++rep.cases_checked;
                if (lhs != rhs)
                    fail(point("a=" + std::to_string(a) + " b=" + std::to_string(b), lhs, rhs));
            }
        return rep;
    }

    if (name == "integration_by_parts") {
        // int_a^b u v' = [uv]_a^b - int_a^b u'(x) v(x+1)
        const IntFn& u = need(in.u, "u");
        const IntFn& v = need(in.v, "v");
        IntFn up = delta(u), vp = delta(v);
        for (long a = w.lo; a <= w.hi && rep.ok; ++a)
            for (long b = w.lo; b <= w.hi && rep.ok; ++b) {
                Int ia(a), ib(b);
                Int lhs = dint([&](const Int& x) { return u(x) * vp(x); }, ia, ib);
                Int rhs = u(ib) * v(ib) - u(ia) * v(ia) -
                          dint([&](const Int& x) { return up(x) * v(x + Int(1)); }, ia, ib);
                ++rep.cases_checked;
                if (lhs != rhs)
                    fail(point("a=" + std::to_string(a) + " b=" + std::to_string(b), lhs, rhs));
            }
        return rep;
    }

    if (name == "composition_derivative") {
        // (f o g)'(x) = int_0^{g'(x)} f'(g(x)+k) dk
        const IntFn& f = need(in.f, "f");
        const IntFn& g = need(in.g, "g");
        IntFn fp = delta(f);
        for (long x = w.lo; x <= w.hi && rep.ok; ++x) {
            Int xi(x), x1(x + 1);
            Int lhs = f(g(x1)) - f(g(xi));
            Int gp = g(x1) - g(xi);
            Int rhs = dint([&](const Int& k) { return fp(g(xi) + k); }, Int(0), gp);
            ++rep.cases_checked;
            if (lhs != rhs) fail(point("x=" + std::to_string(x), lhs, rhs));
        }
        return rep;
    }

    if (name == "falling_power_derivative") {
        // (x^{m falling})' = m * x^{m-1 falling}
        for (long x = w.lo; x <= w.hi && rep.ok; ++x)
            for (unsigned long m = 1; m <= in.max_falling_m && rep.ok; ++m) {
                Int lhs = falling_power(Int(x + 1), m) - falling_power(Int(x), m);
                Int rhs = Int(static_cast<long>(m)) * falling_power(Int(x), m - 1);
                ++rep.cases_checked;
                if (lhs != rhs)
                    fail(point("x=" + std::to_string(x) + " m=" + std::to_string(m), lhs, rhs));
            }
        return rep;
    }

    if (name == "falling_exponential_derivative") {
        // (U fallingexp)'(x) = U'(x) * (U fallingexp)(x), for x >= 0
        const IntFn& U = need(in.U, "U");
        long lo = std::max(w.lo, 0L);
        for (long x = lo; x <= w.hi && rep.ok; ++x) {
            Int xi(x);
            Int fe = falling_exp(U, xi);
            Int lhs = falling_exp(U, xi + Int(1)) - fe;
            Int rhs = (U(xi + Int(1)) - U(xi)) * fe;
            ++rep.cases_checked;
            if (lhs != rhs) fail(point("x=" + std::to_string(x), lhs, rhs));
        }
        return rep;
    }

    if (name == "parameterized_integral_derivative") {
        // F(x) = int_{a(x)}^{b(x)} f(x,t) dt;
        // F'(x) = int_{a(x)}^{b(x)} df/dx (x,t) dt
        //       + int_0^{-a'(x)} f(x+1, a(x+1)+t) dt
        //       + int_0^{b'(x)} f(x+1, b(x)+t) dt
        const IntFn& f2 = need(in.f2, "f2");
        const IntFn& a = need(in.a, "a");
        const IntFn& b = need(in.b, "b");
        auto F = [&](const Int& x) {
            return dint([&](const Int& t) { return f2(x, t); }, a(x), b(x));
        };
        for (long x = w.lo; x <= w.hi && rep.ok; ++x) {
            Int xi(x), x1(x + 1);
            Int lhs = F(x1) - F(xi);
            Int rhs =
                dint([&](const Int& t) { return f2(x1, t) - f2(xi, t); }, a(xi), b(xi)) +
                dint([&](const Int& t) { return f2(x1, a(x1) + t); }, Int(0), a(xi) - a(x1)) +
                dint([&](const Int& t) { return f2(x1, b(xi) + t); }, Int(0), b(x1) - b(xi));
            ++rep.cases_checked;
            if (lhs != rhs) fail(point("x=" + std::to_string(x), lhs, rhs));
        }
        return rep;
    }

    throw UnknownIdentity(name);
}

}  // namespace dode

#include "dode/funclib.hpp"

namespace dode {
namespace funclib {

namespace {

FnResult from_report(EvalReport rep, std::size_t component = 0) {
    return FnResult{rep.values[component], rep.steps, rep.max_bits};
}

FunctionRegistry base_registry() {
    FunctionRegistry reg;
    reg.add("len", 1, [](const std::vector<Int>& a) { return length(a[0]); });
    // 2^v for v >= 0. Negative exponents only occur in positions whose
    // contribution is multiplied by a zero jump factor, so 0 is safe there.
    reg.add("pow2", 1, [](const std::vector<Int>& a) {
        return a[0].is_negative() ? Int(0) : Int::pow2(a[0].to_ulong());
    });
    reg.add("msb", 1, [](const std::vector<Int>& a) {
        return a[0].sgn() <= 0 ? Int(0) : Int::pow2(a[0].bit_length() - 1);
    });
    return reg;
}

FunctionRegistry registry_with(const FunctionRegistry& base,
                               std::initializer_list<std::pair<std::string, IntFn>> extra) {
    FunctionRegistry reg = base;
    for (const auto& [name, fn] : extra)
        reg.add(name, fn.arity(), [fn](const std::vector<Int>& a) { return fn.apply(a); });
    return reg;
}

const FunctionRegistry& base_registry_instance() {
    static const FunctionRegistry reg = base_registry();
    return reg;
}

}  // namespace

OdeSystem f_min_system() {
    OdeSystem sys;
    sys.name = "f_min";
    sys.state = {"F"};
    sys.deriv_var = "t";
    sys.kind = OdeKind::Plain;
    sys.init = {parse_expr("f_fn(0)")};
    // 0 while F < f(t+1), otherwise f(t+1) - F: a running minimum.
    sys.rhs = {parse_expr("(1-sg(f_fn(t+1)-F))*(f_fn(t+1)-F)")};
    return sys;
}

FnResult f_min(const IntFn& f, const Int& x) {
    if (x.is_negative()) throw std::invalid_argument("f_min: x must be non-negative");
    FunctionRegistry reg = registry_with(base_registry_instance(), {{"f_fn", f}});
    return from_report(solve_naive(f_min_system(), x, {}, &reg));
}

OdeSystem some_h_system() {
    OdeSystem sys;
    sys.name = "some_h";
    sys.state = {"G"};
    sys.params = {"X"};
    sys.deriv_var = "x";
    sys.lspec = length_lspec();
    sys.kind = OdeKind::LinearLengthOde;
    // From 0, steer G by the halved correction 2^{len(X)-t-1}: down when
    // h(G) is too big, up when too small, hold on a hit. Starting at 0
    // keeps G non-negative, where h is monotone.
    sys.init = {parse_expr("0")};
    sys.rhs = {parse_expr("(sg(f_fn(X)-h_fn(G))-sg(h_fn(G)-f_fn(X)))*pow2(len(X)-len(x)-1)")};
    return sys;
}

FnResult some_h(const IntFn& h, const IntFn& f, const Int& x) {
    if (x.is_negative()) throw std::invalid_argument("some_h: x must be non-negative");
    FunctionRegistry reg = registry_with(base_registry_instance(), {{"h_fn", h}, {"f_fn", f}});
    return from_report(solve_lode_fast(some_h_system(), x, {x}, &reg));
}

FnResult isqrt(const Int& x) {
    if (x.is_negative()) throw std::invalid_argument("isqrt: x must be non-negative");
    IntFn sq = IntFn::from_unary([](const Int& z) { return z * z; });
    IntFn id = IntFn::from_unary([](const Int& z) { return z; });
    FnResult r = some_h(sq, id, x);
    // if sg(G*G - x) = 0 then G else G-1
    r.value = ifz(sg(r.value * r.value - x), r.value, r.value - Int(1));
    return r;
}

FnResult idiv(const Int& x, const Int& y) {
    if (y.is_zero()) throw DivByZero();
    if (y.is_negative() || x.is_negative())
        throw std::invalid_argument("idiv expects x >= 0 and y >= 1");
    IntFn times_y = IntFn::from_unary([y](const Int& z) { return z * y; });
    IntFn id = IntFn::from_unary([](const Int& z) { return z; });
    FnResult r = some_h(times_y, id, x);
    r.value = ifz(sg(r.value * y - x), r.value, r.value - Int(1));
    return r;
}

OdeSystem suffix_system() {
    OdeSystem sys;
    sys.name = "suffix";
    sys.state = {"F"};
    sys.params = {"X", "Y"};
    sys.deriv_var = "x";
    sys.lspec = length_lspec();
    sys.kind = OdeKind::LinearLengthOde;
    sys.init = {parse_expr("X")};
    // Strip the leading bit while F is longer than Y.
    sys.rhs = {parse_expr("(0-sg(len(F)-len(Y)))*msb(F)")};
    return sys;
}

FnResult suffix(const Int& x, const Int& y) {
    if (x.is_negative() || y.is_negative())
        throw std::invalid_argument("suffix expects non-negative arguments");
    return from_report(solve_lode_fast(suffix_system(), x, {x, y}, &base_registry_instance()));
}

OdeSystem pow2_len_system() {
    OdeSystem sys;
    sys.name = "pow2_len";
    sys.state = {"f"};
    sys.deriv_var = "x";
    sys.lspec = length_lspec();
    sys.kind = OdeKind::LinearLengthOde;
    sys.init = {parse_expr("1")};
    sys.rhs = {parse_expr("f")};
    return sys;
}

FnResult pow2_len(const Int& x) {
    if (x.is_negative()) throw std::invalid_argument("pow2_len: x must be non-negative");
    return from_report(solve_lode_fast(pow2_len_system(), x, {}, &base_registry_instance()));
}

FnResult pow2_len_sq(const Int& x) {
    if (x.is_negative()) throw std::invalid_argument("pow2_len_sq: x must be non-negative");
    // Change of variables: F(t) with F'=F, run for L(x) = len(x)^2 steps.
    OdeSystem doubling;
    doubling.name = "pow2_len_sq_core";
    doubling.state = {"f"};
    doubling.deriv_var = "t";
    doubling.kind = OdeKind::Linear;
    doubling.init = {parse_expr("1")};
    doubling.rhs = {parse_expr("f")};
    unsigned long l = x.bit_length();
    return from_report(solve_linear_fast(doubling, l * l, {}, &base_registry_instance()));
}

OdeSystem pow2_lenprod_system() {
    OdeSystem sys;
    sys.name = "pow2_lenprod";
    sys.state = {"f"};
    sys.params = {"Y"};
    sys.deriv_var = "x";
    sys.lspec = length_lspec();
    sys.kind = OdeKind::LinearLengthOde;
    sys.init = {parse_expr("1")};
    sys.rhs = {parse_expr("f*(pow2_len(Y)-1)")};
    return sys;
}

FnResult pow2_lenprod(const Int& x, const Int& y) {
    if (x.is_negative() || y.is_negative())
        throw std::invalid_argument("pow2_lenprod expects non-negative arguments");
    // The rhs calls the pow2_len auxiliary, so it needs the full registry.
    return from_report(solve_lode_fast(pow2_lenprod_system(), x, {y}, &default_registry()));
}

namespace {

// Builds the bounded sum/product systems for a g of arity 1+|y|.
OdeSystem bounded_system(bool product, std::size_t extra_params) {
    std::string call = "g_fn(x";
    std::vector<std::string> params;
    for (std::size_t i = 0; i < extra_params; ++i) {
        std::string p = "y" + std::to_string(i + 1);
        params.push_back(p);
        call += "," + p;
    }
    call += ")";

    OdeSystem sys;
    sys.name = product ? "bounded_product" : "bounded_sum";
    sys.state = {"f"};
    sys.params = std::move(params);
    sys.deriv_var = "x";
    sys.kind = OdeKind::Plain;
    sys.init = {parse_expr(product ? "1" : "0")};
    sys.rhs = {parse_expr(product ? "f*(" + call + "-1)" : call)};
    return sys;
}

}  // namespace

FnResult bounded_sum(const IntFn& g, const Int& x, const std::vector<Int>& y) {
    FunctionRegistry reg = registry_with(base_registry_instance(), {{"g_fn", g}});
    return from_report(solve_naive(bounded_system(false, y.size()), x, y, &reg));
}

FnResult bounded_product(const IntFn& g, const Int& x, const std::vector<Int>& y) {
    FunctionRegistry reg = registry_with(base_registry_instance(), {{"g_fn", g}});
    return from_report(solve_naive(bounded_system(true, y.size()), x, y, &reg));
}

FnResult smin_ode(const IntFn& g, const std::vector<Int>& y, unsigned long cap) {
    auto g_at = [&](const Int& f) {
        std::vector<Int> args;
        args.reserve(1 + y.size());
        args.push_back(f);
        args.insert(args.end(), y.begin(), y.end());
        return g.apply(args);
    };

    // f' = sg(g(f,y)): counts up while g is nonzero, freezes on a zero.
    Int f(0);
    FnResult res;
    for (unsigned long step = 0; step <= cap; ++step) {
        if (g_at(f).is_zero()) {
            res.value = f;
            res.steps = step;
            res.max_bits = f.bit_length();
            return res;
        }
        if (step == cap) break;
        f += Int(1);
    }
    throw CapExceeded(cap);
}

const FunctionRegistry& default_registry() {
    static const FunctionRegistry reg = [] {
        FunctionRegistry r = base_registry_instance();
        r.add("isqrt", 1, [](const std::vector<Int>& a) { return isqrt(a[0]).value; });
        r.add("idiv", 2, [](const std::vector<Int>& a) { return idiv(a[0], a[1]).value; });
        r.add("suffix", 2, [](const std::vector<Int>& a) { return suffix(a[0], a[1]).value; });
        r.add("pow2_len", 1, [](const std::vector<Int>& a) { return pow2_len(a[0]).value; });
        r.add("pow2_lenprod", 2,
              [](const std::vector<Int>& a) { return pow2_lenprod(a[0], a[1]).value; });
        return r;
    }();
    return reg;
}

}  // namespace funclib
}  // namespace dode

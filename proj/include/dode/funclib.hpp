#pragma once

#include "dode/calculus.hpp"
#include "dode/ode.hpp"

namespace dode {
namespace funclib {

struct FnResult {
    Int value;
    unsigned long steps = 0;
    unsigned long max_bits = 0;
};

struct CapExceeded : std::runtime_error {
    explicit CapExceeded(unsigned long cap)
        : std::runtime_error("no zero witnessed within cap " + std::to_string(cap)) {}
};

// Auxiliary functions callable from expressions: len, isqrt, idiv, suffix,
// pow2_len, pow2_lenprod, plus the helpers pow2 (2^v for v>=0, 0 below) and
// msb (the value of the leading bit, 0 for 0).
const FunctionRegistry& default_registry();

// min{f(t) : 0 <= t <= x}, by iterating the running-minimum recurrence
// F' = (1 - sg(f(t+1)-F)) * (f(t+1)-F) for x steps from F = f(0).
FnResult f_min(const IntFn& f, const Int& x);

// Dichotomy along len(x): from G=x, adjust by +-2^{len(x)-t-1} until
// h(G) ~ f(x); h must be nondecreasing. Returns G(len(x), x); steps=len(x).
FnResult some_h(const IntFn& h, const IntFn& f, const Int& x);

FnResult isqrt(const Int& x);                // floor(sqrt(x)), x >= 0
FnResult idiv(const Int& x, const Int& y);   // floor(x/y), y >= 1
FnResult suffix(const Int& x, const Int& y); // x mod 2^{len(y)}

FnResult pow2_len(const Int& x);             // 2^{len(x)}, steps = len(x)
FnResult pow2_len_sq(const Int& x);          // 2^{len(x)^2}, steps = len(x)^2
FnResult pow2_lenprod(const Int& x, const Int& y);  // 2^{len(x) len(y)}

// Strict bounded sum / product of g(z, y...) for z < x, as the linear ODE
// solutions f'=g (init 0) and f'=f*(g-1) (init 1).
FnResult bounded_sum(const IntFn& g, const Int& x, const std::vector<Int>& y = {});
FnResult bounded_product(const IntFn& g, const Int& x, const std::vector<Int>& y = {});

// Capped minimization: iterates f(0)=0, f(x+1)=f(x)+sg(g(f(x),y)) and
// returns f once g(f,y)=0 is witnessed; throws CapExceeded when no witness
// appears within cap steps (meaning only "not found at this budget").
FnResult smin_ode(const IntFn& g, const std::vector<Int>& y, unsigned long cap);

// The underlying systems, exposed for inspection and tests. The some_h
// system expects callables h_fn / f_fn in its registry; bounded_sum and
// bounded_product expect g_fn.
OdeSystem some_h_system();
OdeSystem suffix_system();
OdeSystem pow2_len_system();
OdeSystem pow2_lenprod_system();
OdeSystem f_min_system();

}  // namespace funclib
}  // namespace dode

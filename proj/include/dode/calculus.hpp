#pragma once

#include "dode/int.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace dode {

// A total integer function of fixed arity. Backed by a closed form, a memo
// table over an explicit window, or an expression; evaluation is
// deterministic and reentrant.
class IntFn {
public:
    IntFn() = default;
    IntFn(std::size_t arity, std::function<Int(const std::vector<Int>&)> fn,
          std::string provenance = "closed-form")
        : arity_(arity), fn_(std::move(fn)), provenance_(std::move(provenance)) {}

    static IntFn from_unary(std::function<Int(const Int&)> f,
                            std::string provenance = "closed-form") {
        return IntFn(1, [f = std::move(f)](const std::vector<Int>& a) { return f(a[0]); },
                     std::move(provenance));
    }
    static IntFn from_binary(std::function<Int(const Int&, const Int&)> f,
                             std::string provenance = "closed-form") {
        return IntFn(2, [f = std::move(f)](const std::vector<Int>& a) { return f(a[0], a[1]); },
                     std::move(provenance));
    }
    // Unary function tabulated on [lo, lo+values.size()); out-of-window
    // evaluation is a caller error and throws.
    static IntFn from_table(long lo, std::vector<Int> values);

    std::size_t arity() const { return arity_; }
    const std::string& provenance() const { return provenance_; }

    Int apply(const std::vector<Int>& args) const;
    Int operator()(const Int& x) const { return apply({x}); }
    Int operator()(const Int& x, const Int& y) const { return apply({x, y}); }

private:
    std::size_t arity_ = 0;
    std::function<Int(const std::vector<Int>&)> fn_;
    std::string provenance_;
};

// Discrete derivative in the given argument slot: f(..,x+1,..) - f(..,x,..).
IntFn delta(const IntFn& f, std::size_t slot = 0);

// Discrete integral: sum_{x=a}^{b-1} f(x), 0 when a=b, antisymmetric when a>b.
Int dint(const IntFn& f, const Int& a, const Int& b);
// Same, over an arbitrary integrand.
Int dint(const std::function<Int(const Int&)>& f, const Int& a, const Int& b);

// x(x-1)...(x-m+1); the empty product (m=0) is 1.
Int falling_power(const Int& x, unsigned long m);

// prod_{t=0}^{x-1} (1 + dU(t)) with the convention that it is 1 at x=0.
Int falling_exp(const IntFn& U, const Int& x);

// Matrix variant for vector systems: prod (I + dU(t)), higher t on the
// left, the identity matrix at x=0.
using IntMatrix = std::vector<std::vector<Int>>;
IntMatrix falling_exp(const std::function<IntMatrix(const Int&)>& U, const Int& x);

struct Window {
    long lo;
    long hi;  // inclusive
};

// Function bundle for check_identity; each identity uses the members it
// needs and ignores the rest.
struct IdentityInputs {
    std::optional<IntFn> f, g, F, U, u, v, a, b;
    std::optional<IntFn> f2;  // binary f(x,t) for the parameterized integral
    unsigned max_falling_m = 8;
};

struct IdentityReport {
    std::string name;
    bool ok = false;
    unsigned long cases_checked = 0;
    std::string counterexample;  // first failing point, empty when ok
};

struct UnknownIdentity : std::runtime_error {
    explicit UnknownIdentity(const std::string& name)
        : std::runtime_error("unknown identity: " + name) {}
};

// Evaluates both sides of the named identity at every point of the window
// and reports the first counterexample, if any. Names:
//   product_rule, fundamental_theorem, integration_by_parts,
//   composition_derivative, falling_power_derivative,
//   falling_exponential_derivative, parameterized_integral_derivative
IdentityReport check_identity(const std::string& name, const IdentityInputs& in, Window w);

}  // namespace dode

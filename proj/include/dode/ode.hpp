#pragma once

#include "dode/expr.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dode {

// Enumeration of the points where a derivation function L changes value:
// alpha(j) is the j-th such point, count(x) = |Jump_L(x,y)|.
struct LSpecEnumerator {
    std::function<Int(unsigned long j, const Env& params)> alpha;
    std::function<unsigned long(const Int& x, const Env& params)> count;
};

// A derivation function L(x,y) for L-ODEs, optionally with a jump
// enumerator that makes evaluation independent of the magnitude of x.
struct LSpec {
    std::string name;
    std::function<Int(const Int& x, const Env& params)> L;
    std::optional<LSpecEnumerator> enumerator;
};

// L(x,y) = len(x); jumps at alpha(j) = 2^j - 1, count = len(x).
LSpec length_lspec();
// L(x,y) = len(x)^2; same jump points, jumps of size 2j+1.
LSpec length_squared_lspec();

enum class OdeKind { Plain, Linear, Bounded, LOde, LinearLengthOde };

// An initial value problem. init is over the params; rhs is over
// state + params + the derivation variable (plus auxiliary calls).
struct OdeSystem {
    std::string name;
    std::vector<std::string> state;
    std::vector<std::string> params;
    std::string deriv_var = "x";
    std::optional<LSpec> lspec;  // present for LOde / LinearLengthOde
    std::vector<Expr> init;
    std::vector<Expr> rhs;
    std::vector<Expr> bounds;  // Bounded only
    OdeKind kind = OdeKind::Plain;
    std::optional<std::string> output;  // which component a CLI solve prints
};

// Values plus exact step and bit-length accounting. steps counts recurrence
// iterations; max_bits is the largest bit length any state component
// reached, including the initial values.
struct EvalReport {
    std::vector<Int> values;
    unsigned long steps = 0;
    unsigned long max_bits = 0;
};

struct BoundViolated : std::runtime_error {
    unsigned long step;
    explicit BoundViolated(unsigned long s)
        : std::runtime_error("bound violated at step " + std::to_string(s)), step(s) {}
};

struct GrowthExceeded : std::runtime_error {
    unsigned long step;
    unsigned long bits;
    GrowthExceeded(unsigned long s, unsigned long b)
        : std::runtime_error("growth guard exceeded at step " + std::to_string(s) + " (" +
                             std::to_string(b) + " bits)"),
          step(s), bits(b) {}
};

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& what)
        : std::runtime_error("dimension mismatch: " + what) {}
};

struct EnumeratorMismatch : std::runtime_error {
    explicit EnumeratorMismatch(const std::string& what)
        : std::runtime_error("jump enumerator disagrees with scan: " + what) {}
};

// Checks structural invariants for the system's kind tag (dimensions, the
// decompose gate for Linear/LinearLengthOde, lspec presence) and throws on
// violation.
void validate_system(const OdeSystem& sys);

// Iterates the defining recurrence exactly x steps from the initial values.
// For LOde kinds each step adds (L(x+1)-L(x)) * rhs; Bounded systems are
// checked componentwise against their bounds at every step. An optional
// guard aborts with GrowthExceeded once any component outgrows guard_bits.
EvalReport solve_naive(const OdeSystem& sys, const Int& x, const std::vector<Int>& params,
                       const FunctionRegistry* registry,
                       std::optional<unsigned long> guard_bits = std::nullopt);

// Direct evaluation of the affine closed form
//   f(x) = (fallingexp int_0^x A) G + int_0^x (fallingexp int_{u+1}^x A) B(u) du,
// i.e. prod(1+A) products; A and B may depend on the derivation variable and
// params only. Must agree with solve_naive exactly.
std::vector<Int> solve_linear_closed_form(const std::vector<std::vector<Expr>>& A,
                                          const std::vector<Expr>& B,
                                          const std::vector<Expr>& G, const Int& x,
                                          const std::vector<std::string>& param_names,
                                          const std::vector<Int>& params,
                                          const FunctionRegistry* registry,
                                          const std::string& deriv_var = "x");

// Increasing list of 0 <= i < x with L(i+1,y) != L(i,y). Uses the
// enumerator when present (validated against a scan on a prefix sample),
// otherwise scans.
std::vector<Int> jump_set(const LSpec& lspec, const Int& x, const Env& params);

// Evaluates an L-ODE through its jump set:
//   f(x,y) = f(0,y) + sum_{j} dL(alpha(j),y) * h(f(alpha(j),y), alpha(j), y)
// steps = |Jump_L(x,y)|. Equals solve_naive exactly.
EvalReport solve_lode_fast(const OdeSystem& sys, const Int& x, const std::vector<Int>& params,
                           const FunctionRegistry* registry);

// Running sum-product evaluation of an essentially linear system for T
// steps: f <- f + dL * (A(f,t,y) f + B(f,t,y)), with A, B from
// linear_decompose evaluated at the current state. The derivation variable
// is bound to alpha(t) when an L-spec is present, to t otherwise. Aborts
// with GrowthExceeded once any component needs more than guard_bits bits.
EvalReport solve_linear_fast(const OdeSystem& sys, unsigned long T,
                             const std::vector<Int>& params, const FunctionRegistry* registry,
                             std::optional<unsigned long> guard_bits = std::nullopt);

// "len" and "lensq".
const std::map<std::string, LSpec>& builtin_lspecs();

// Line-based system file format:
//   system NAME
//   state f g ...
//   param y ...
//   wrt x | wrt len(x) | wrt L=IDENT
//   init f = EXPR
//   deriv f = EXPR
//   bound f = EXPR
// '#' starts a comment; '# output: NAME' is recognized as a hint naming the
// component a CLI solve should print. The kind tag is inferred: bounds give
// Bounded, wrt len(x) gives LinearLengthOde when linear_decompose succeeds
// (LOde otherwise), wrt L=IDENT gives LOde, wrt x gives Linear when
// decompose succeeds and Plain otherwise.
OdeSystem parse_system(const std::string& text,
                       const std::map<std::string, LSpec>& lspecs = builtin_lspecs());

std::string print_system(const OdeSystem& sys,
                         const std::vector<std::string>& header_comments = {});

}  // namespace dode

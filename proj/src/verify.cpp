#include "dode/verify.hpp"

#include "dode/calculus.hpp"
#include "dode/compiler.hpp"
#include "dode/funclib.hpp"
#include "dode/ode.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <set>
#include <sstream>

namespace dode {
namespace verify {

namespace {

using Clock = std::chrono::steady_clock;
using Rng = std::mt19937_64;

double elapsed(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

long rnd(Rng& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

// Uniform magnitude up to 2^bits with a random sign.
Int rnd_pm(Rng& rng, unsigned bits) {
    Int v(0);
    unsigned produced = 0;
    while (produced < bits) {
        unsigned take = std::min(32u, bits - produced);
        v = v.shifted_left(take) + Int(static_cast<long>(rng() & ((1ull << take) - 1)));
        produced += take;
    }
    return (rng() & 1) ? -v : v;
}

IntFn rnd_table(Rng& rng, long lo, long hi, unsigned bits) {
    std::vector<Int> vals;
    vals.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (long i = lo; i <= hi; ++i) vals.push_back(rnd_pm(rng, bits));
    return IntFn::from_table(lo, std::move(vals));
}

struct Check {
    CheckResult res;
    Clock::time_point t0 = Clock::now();
    unsigned long count = 0;

    explicit Check(std::string name) { res.name = std::move(name); }

    void fail(const std::string& why) {
        if (res.pass || res.detail.empty()) res.detail = why;
        res.pass = false;
        failed = true;
    }
    CheckResult done(const std::string& ok_detail) {
        res.seconds = elapsed(t0);
        if (!failed) {
            res.pass = true;
            res.detail = ok_detail;
        }
        return res;
    }
    bool failed = false;
};

const FunctionRegistry& reg() { return funclib::default_registry(); }

}  // namespace

// ---------------------------------------------------------------------------
// 1. Calculus identity suite

CheckResult calculus_identities(unsigned long cases_per_identity) {
    Check c("calculus-identities");
    Rng rng(1001);
    const char* names[] = {
        "product_rule",
        "fundamental_theorem",
        "integration_by_parts",
        "composition_derivative",
        "falling_power_derivative",
        "falling_exponential_derivative",
        "parameterized_integral_derivative",
    };

    for (const char* name : names) {
        for (unsigned long i = 0; i < cases_per_identity && !c.failed; ++i) {
            long lo = rnd(rng, -8, 0);
            long hi = lo + rnd(rng, 4, 8);
            Window w{lo, hi};

            IdentityInputs in;
            std::string id = name;
            if (id == "product_rule") {
                in.f = rnd_table(rng, lo, hi + 1, 32);
                in.g = rnd_table(rng, lo, hi + 1, 32);
            } else if (id == "fundamental_theorem") {
                in.F = rnd_table(rng, lo, hi + 1, 32);
            } else if (id == "integration_by_parts") {
                in.u = rnd_table(rng, lo, hi + 1, 32);
                in.v = rnd_table(rng, lo, hi + 1, 32);
            } else if (id == "composition_derivative") {
                // g stays small so the integral over g'(x) stays walkable;
                // f is a closed form with large coefficients.
                in.g = rnd_table(rng, lo, hi + 1, 6);
                Int a = rnd_pm(rng, 32), b = rnd_pm(rng, 32), d = rnd_pm(rng, 32);
                in.f = IntFn::from_unary([a, b, d](const Int& x) { return (a * x + b) * x + d; });
            } else if (id == "falling_exponential_derivative") {
                in.U = rnd_table(rng, 0, std::max(hi, 0L) + 1, 32);
            } else if (id == "parameterized_integral_derivative") {
                in.a = rnd_table(rng, lo, hi + 1, 7);
                in.b = rnd_table(rng, lo, hi + 1, 7);
                Int p = rnd_pm(rng, 32), q = rnd_pm(rng, 32), r = rnd_pm(rng, 32);
                in.f2 = IntFn::from_binary(
                    [p, q, r](const Int& x, const Int& t) { return p * x + q * t + r * x * t; });
            }

            auto rep = check_identity(name, in, w);
            ++c.count;
            if (!rep.ok) c.fail(id + " case " + std::to_string(i) + ": " + rep.counterexample);
        }
    }
    return c.done(std::to_string(c.count) + " cases across 7 identities, 0 counterexamples");
}

// ---------------------------------------------------------------------------
// 2. Closed form vs naive

CheckResult closed_form_vs_naive(unsigned long systems) {
    Check c("closed-form-vs-naive");
    Rng rng(1002);
    for (unsigned long trial = 0; trial < systems && !c.failed; ++trial) {
        std::size_t k = 1 + rng() % 3;
        std::vector<std::vector<Expr>> A(k, std::vector<Expr>(k));
        std::vector<Expr> B(k), G(k);
        OdeSystem sys;
        sys.name = "rand";
        sys.kind = OdeKind::Linear;
        for (std::size_t i = 0; i < k; ++i) sys.state.push_back("f" + std::to_string(i));
        auto coef = [&rng] {
            return parse_expr(std::to_string(rnd(rng, -5, 5)) + "+x*" +
                              std::to_string(rnd(rng, -5, 5)));
        };
        for (std::size_t i = 0; i < k; ++i) {
            B[i] = coef();
            G[i] = Expr::constant(Int(rnd(rng, -5, 5)));
            Expr rhs = B[i];
            for (std::size_t j = 0; j < k; ++j) {
                A[i][j] = coef();
                rhs = Expr::add(rhs, Expr::mul(A[i][j], Expr::variable(sys.state[j])));
            }
            sys.rhs.push_back(rhs);
            sys.init.push_back(G[i]);
        }
        long x = rnd(rng, 0, 50);
        auto naive = solve_naive(sys, Int(x), {}, &reg());
        auto closed = solve_linear_closed_form(A, B, G, Int(x), {}, {}, &reg());
        ++c.count;
        for (std::size_t i = 0; i < k; ++i)
            if (naive.values[i] != closed[i])
                c.fail("system " + std::to_string(trial) + " component " + std::to_string(i) +
                       " differs at x=" + std::to_string(x));
    }
    return c.done(std::to_string(c.count) + " random systems, exact agreement");
}

// ---------------------------------------------------------------------------
// 3. Exhaustive oracle equivalence

CheckResult exhaustive_oracles(unsigned long bound) {
    Check c("exhaustive-oracles");
    const long n = static_cast<long>(bound);

    // isqrt
    {
        long root = 0;
        for (long x = 0; x < n && !c.failed; ++x) {
            if ((root + 1) * (root + 1) <= x) ++root;  // incremental floor sqrt
            if (funclib::isqrt(Int(x)).value != Int(root))
                c.fail("isqrt(" + std::to_string(x) + ") != " + std::to_string(root));
        }
    }

    // idiv, y in 1..64
    for (long y = 1; y <= 64 && !c.failed; ++y)
        for (long x = 0; x < n && !c.failed; ++x)
            if (funclib::idiv(Int(x), Int(y)).value != Int(x / y))
                c.fail("idiv(" + std::to_string(x) + "," + std::to_string(y) + ")");

    // suffix: the solution depends on y only through len(y), so solve once
    // per (x, len(y)) class and compare every pair against the oracle.
    if (!c.failed) {
        unsigned long max_ly = Int(n - 1).bit_length();
        std::vector<std::vector<long>> memo(static_cast<std::size_t>(n));
        for (long x = 0; x < n; ++x) {
            memo[x].resize(max_ly + 1);
            for (unsigned long ly = 0; ly <= max_ly; ++ly) {
                Int rep_y = ly == 0 ? Int(0) : Int::pow2(ly - 1);
                memo[x][ly] = funclib::suffix(Int(x), rep_y).value.to_long();
            }
        }
        for (long x = 0; x < n && !c.failed; ++x)
            for (long y = 0; y < n && !c.failed; ++y) {
                unsigned long ly = Int(y).bit_length();
                long expect = ly >= 63 ? x : x & ((1L << ly) - 1);
                if (memo[x][ly] != expect)
                    c.fail("suffix(" + std::to_string(x) + "," + std::to_string(y) + ")");
            }
    }

    // pow2_len and pow2_len_sq
    for (long x = 0; x < n && !c.failed; ++x) {
        unsigned long l = Int(x).bit_length();
        if (funclib::pow2_len(Int(x)).value != Int::pow2(l))
            c.fail("pow2_len(" + std::to_string(x) + ")");
        if (funclib::pow2_len_sq(Int(x)).value != Int::pow2(l * l))
            c.fail("pow2_len_sq(" + std::to_string(x) + ")");
    }

    // pow2_lenprod: depends only on (len x, len y); solve each class once,
    // then sweep every pair.
    if (!c.failed) {
        unsigned long max_l = Int(n - 1).bit_length();
        std::vector<std::vector<Int>> cls(max_l + 1, std::vector<Int>(max_l + 1));
        for (unsigned long lx = 0; lx <= max_l; ++lx)
            for (unsigned long ly = 0; ly <= max_l; ++ly) {
                Int rx = lx == 0 ? Int(0) : Int::pow2(lx - 1);
                Int ry = ly == 0 ? Int(0) : Int::pow2(ly - 1);
                cls[lx][ly] = funclib::pow2_lenprod(rx, ry).value;
                if (cls[lx][ly] != Int::pow2(lx * ly)) c.fail("pow2_lenprod class");
            }
        for (long x = 0; x < n && !c.failed; ++x) {
            unsigned long lx = Int(x).bit_length();
            for (long y = 0; y < n; ++y) {
                unsigned long ly = Int(y).bit_length();
                if (cls[lx][ly] != Int::pow2(lx * ly)) {
                    c.fail("pow2_lenprod(" + std::to_string(x) + "," + std::to_string(y) + ")");
                    break;
                }
            }
        }
    }

    // bounded sum of g(z)=z and bounded product of g=2, every x below the
    // bound, against running oracles.
    if (!c.failed) {
        IntFn id = IntFn::from_unary([](const Int& z) { return z; });
        IntFn two = IntFn::from_unary([](const Int&) { return Int(2); });
        Int sum(0), prod(1);
        for (long x = 0; x < n && !c.failed; ++x) {
            if (funclib::bounded_sum(id, Int(x)).value != sum)
                c.fail("bounded_sum at x=" + std::to_string(x));
            if (funclib::bounded_product(two, Int(x)).value != prod)
                c.fail("bounded_product at x=" + std::to_string(x));
            sum += Int(x);
            prod *= Int(2);
        }
    }

    return c.done("isqrt, idiv, suffix, pow2_len, pow2_lenprod, bounded sum/product exhaustive below " +
                  std::to_string(n));
}

// ---------------------------------------------------------------------------
// 4. Step-count law

CheckResult step_count_law(unsigned long bound, unsigned long big_bits) {
    Check c("step-count-law");
    for (long x = 0; x < static_cast<long>(bound) && !c.failed; ++x) {
        unsigned long l = Int(x).bit_length();
        if (funclib::isqrt(Int(x)).steps != l) c.fail("isqrt steps at " + std::to_string(x));
        if (funclib::idiv(Int(x), Int(3)).steps != l) c.fail("idiv steps at " + std::to_string(x));
        if (funclib::suffix(Int(x), Int(9)).steps != l)
            c.fail("suffix steps at " + std::to_string(x));
        if (funclib::pow2_len(Int(x)).steps != l)
            c.fail("pow2_len steps at " + std::to_string(x));
        if (funclib::pow2_lenprod(Int(x), Int(9)).steps != l)
            c.fail("pow2_lenprod steps at " + std::to_string(x));
        if (funclib::pow2_len_sq(Int(x)).steps != l * l)
            c.fail("pow2_len_sq steps at " + std::to_string(x));
    }

    // A random big input must complete in exactly big_bits jump steps and
    // under a second of wall time.
    if (!c.failed) {
        Rng rng(1004);
        Int big = Int::pow2(big_bits - 1);
        unsigned produced = 0;
        Int low(0);
        while (produced + 1 < big_bits) {
            unsigned take = std::min(32u, static_cast<unsigned>(big_bits - 1 - produced));
            low = low.shifted_left(take) + Int(static_cast<long>(rng() & ((1ull << take) - 1)));
            produced += take;
        }
        big += low;

        auto t0 = Clock::now();
        auto r = funclib::pow2_len(big);
        double secs = elapsed(t0);
        if (r.steps != big_bits)
            c.fail("pow2_len on a " + std::to_string(big_bits) + "-bit input took " +
                   std::to_string(r.steps) + " steps");
        if (r.value != Int::pow2(big_bits)) c.fail("pow2_len big value wrong");
        if (secs >= 1.0) c.fail("pow2_len big input took " + std::to_string(secs) + "s");
    }
    return c.done("steps = len(x) for all length-ODE functions below " + std::to_string(bound) +
                  "; " + std::to_string(big_bits) + "-bit input in " + std::to_string(big_bits) +
                  " steps under 1s");
}

// ---------------------------------------------------------------------------
// 5. Jump-set law

CheckResult jump_set_law(unsigned long bound) {
    Check c("jump-set-law");
    Env env;
    LSpec len = length_lspec();
    LSpec scan_only{"len", len.L, std::nullopt};
    for (long x = 0; x < static_cast<long>(bound) && !c.failed; ++x) {
        auto jumps = jump_set(len, Int(x), env);
        unsigned long l = Int(x).bit_length();
        if (jumps.size() != l) {
            c.fail("jump count at x=" + std::to_string(x));
            break;
        }
        for (unsigned long i = 0; i < l; ++i)
            if (jumps[i] != Int::pow2(i) - Int(1)) {
                c.fail("alpha(" + std::to_string(i) + ") at x=" + std::to_string(x));
                break;
            }
        // The scan path must agree with the enumerator path; scanning is
        // linear in x, so sweep it on the low range and sample above.
        if (x < 2048 || x % 64 == 0) {
            if (jump_set(scan_only, Int(x), env) != jumps)
                c.fail("scan/enumerator disagreement at x=" + std::to_string(x));
        }
    }
    return c.done("jump_set(length, x) = {2^i - 1} for all x below " + std::to_string(bound));
}

// ---------------------------------------------------------------------------
// Corpus

namespace {

std::vector<std::vector<Int>> grid_pairs(long n) {
    std::vector<std::vector<Int>> g;
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b) g.push_back({Int(a), Int(b)});
    return g;
}

std::vector<std::vector<Int>> grid_range(long n) {
    std::vector<std::vector<Int>> g;
    for (long x = 0; x < n; ++x) g.push_back({Int(x)});
    return g;
}

}  // namespace

const std::vector<CorpusProgram>& corpus() {
    static const std::vector<CorpusProgram> progs = [] {
        std::vector<CorpusProgram> v;

        v.push_back({"add",
                     "ADD 0 1\n"
                     "ADD 0 2\n"
                     "HALT\n",
                     grid_pairs(5),
                     [](const std::vector<Int>& in) { return in[0] + in[1]; }});

        // R0 := R1 by repeated decrement; R2 holds 1, R3 stays 0 for the
        // unconditional back jump.
        v.push_back({"countdown",
                     "SET 2 1\n"
                     "JZ 1 5\n"
                     "ADD 0 2\n"
                     "SUB 1 2\n"
                     "JZ 3 1\n"
                     "HALT\n",
                     grid_range(32),
                     [](const std::vector<Int>& in) { return in[0]; }});

        v.push_back({"double",
                     "SET 2 1\n"
                     "JZ 1 6\n"
                     "ADD 0 2\n"
                     "ADD 0 2\n"
                     "SUB 1 2\n"
                     "JZ 3 1\n"
                     "HALT\n",
                     grid_range(26),
                     [](const std::vector<Int>& in) { return in[0] + in[0]; }});

        // Peels both copies down in lockstep; whichever empties first loses
        // and the survivor is the maximum. The b=0 case short-circuits so
        // the answer lands in R0 within the smallest step budgets.
        v.push_back({"max2",
                     "JZ 2 12\n"   // b = 0: max is a
                     "SET 5 1\n"
                     "ADD 0 2\n"   // R0 = b, provisional
                     "ADD 3 1\n"   // R3 = a
                     "ADD 4 2\n"   // R4 = b
                     "JZ 3 14\n"   // a exhausted first: keep b
                     "JZ 4 10\n"   // b exhausted first: fix to a
                     "SUB 3 5\n"
                     "SUB 4 5\n"
                     "JZ 6 5\n"    // loop
                     "SUB 0 2\n"   // undo the provisional b
                     "JZ 6 12\n"
                     "ADD 0 1\n"   // R0 = a
                     "JZ 6 14\n"
                     "HALT\n",
                     grid_pairs(5),
                     [](const std::vector<Int>& in) { return in[0] > in[1] ? in[0] : in[1]; }});

        // R0 := x + (x-1) + ... + 1
        v.push_back({"triangular",
                     "SET 2 1\n"
                     "JZ 1 5\n"
                     "ADD 0 1\n"
                     "SUB 1 2\n"
                     "JZ 3 1\n"
                     "HALT\n",
                     grid_range(26),
                     [](const std::vector<Int>& in) {
                         return (in[0] * (in[0] + Int(1))).fdiv(Int(2));
                     }});

        return v;
    }();
    return progs;
}

// ---------------------------------------------------------------------------
// 6. Compiler lockstep

CheckResult compiler_lockstep() {
    Check c("compiler-lockstep");
    for (const CorpusProgram& p : corpus()) {
        MachineProgram prog = load_program(p.text);
        compiler::CompiledSystem cs = compiler::compile_rm(prog);

        // Linearity certificate: decompose succeeded in compile_rm; every
        // right-hand side is at most linear in the state and the system as
        // a whole has state-degree exactly 1.
        std::set<std::string> state(cs.system.state.begin(), cs.system.state.end());
        unsigned overall = 0;
        for (const Expr& r : cs.system.rhs) {
            unsigned d = degree(r, state);
            if (d > 1) c.fail(p.name + ": rhs state-degree above 1");
            overall = std::max(overall, d);
        }
        if (overall != 1) c.fail(p.name + ": selector sums lost the state");

        for (const auto& inputs : p.grid) {
            // Simulator trajectory to the halt, configs at t = 0..halt.
            std::vector<MachineConfig> sim;
            MachineConfig cfg = initial_config(prog, inputs);
            sim.push_back(cfg);
            unsigned long halting = 0;
            while (machine_step(prog, cfg)) {
                sim.push_back(cfg);
                if (++halting > 100000) break;
            }

            auto trace = compiler::run_compiled_trace(cs, inputs, halting);
            for (unsigned long t = 0; t <= halting && !c.failed; ++t) {
                const auto& ode = trace[t];
                const auto& mc = sim[t];
                if (ode.size() != mc.registers.size() + 1) {
                    c.fail(p.name + ": state width mismatch");
                    break;
                }
                if (ode[0] != Int(mc.pc))
                    c.fail(p.name + " t=" + std::to_string(t) + ": inst != pc");
                for (std::size_t r = 0; r < mc.registers.size(); ++r)
                    if (ode[r + 1] != mc.registers[r])
                        c.fail(p.name + " t=" + std::to_string(t) + ": R" + std::to_string(r));
            }
            ++c.count;
            if (c.failed) break;
        }

        // Fixed point at the halt label: derivatives vanish forever after.
        if (!c.failed) {
            const auto& inputs = p.grid.front();
            MachineConfig cfg = initial_config(prog, inputs);
            unsigned long halting = 0;
            while (machine_step(prog, cfg) && halting < 100000) ++halting;
            auto trace = compiler::run_compiled_trace(cs, inputs, halting + 10);
            for (unsigned long t = halting; t <= halting + 10; ++t)
                if (trace[t] != trace[halting]) c.fail(p.name + ": state moved after halt");
        }
    }
    return c.done(std::to_string(c.count) + " grid points in lockstep across " +
                  std::to_string(corpus().size()) + " programs");
}

// ---------------------------------------------------------------------------
// 7. SLL end to end

CheckResult sll_end_to_end() {
    Check c("sll-end-to-end");
    for (const CorpusProgram& p : corpus()) {
        MachineProgram prog = load_program(p.text);
        compiler::SLLForm sll = compiler::package_sll(compiler::compile_rm(prog), 2);
        for (const auto& inputs : p.grid) {
            RunResult sim = run(prog, inputs, 1000000);
            auto got = compiler::eval_sll(sll, inputs);
            ++c.count;
            if (!sim.halted) c.fail(p.name + ": simulator did not halt");
            if (got.value != sim.output) {
                std::ostringstream os;
                os << p.name << "(";
                for (std::size_t i = 0; i < inputs.size(); ++i)
                    os << (i ? "," : "") << inputs[i].str();
                os << ") = " << got.value.str() << ", simulator says " << sim.output.str();
                c.fail(os.str());
            }
            if (sim.output != p.expected(inputs)) c.fail(p.name + ": corpus oracle mismatch");
            if (c.failed) break;
        }
        // Also exercise max_bits accounting: linear in the step budget for
        // this corpus.
        if (!c.failed) {
            const auto& inputs = p.grid.back();
            unsigned long s = 0;
            for (const Int& v : inputs) s += v.bit_length();
            unsigned long T = compiler::bound_steps(s, 2);
            auto rep = compiler::run_compiled(compiler::compile_rm(prog), inputs, T);
            unsigned long ly = 0;
            for (const Int& v : inputs) ly += v.bit_length();
            if (rep.max_bits > ly + 8 * T)
                c.fail(p.name + ": max_bits " + std::to_string(rep.max_bits) +
                       " above the linear budget");
        }
    }
    return c.done(std::to_string(c.count) + " grid points agree with the simulator");
}

// ---------------------------------------------------------------------------
// 8. Negative controls

CheckResult negative_controls() {
    Check c("negative-controls");

    // Ten-deep chain y1'=y1, y_{i+1}'=y_i*y_{i+1}: the bit count of the
    // last component grows like C(t,10), crossing 10^6 bits near t=23.
    {
        OdeSystem tower;
        tower.name = "tower";
        tower.kind = OdeKind::Plain;
        const int k = 10;
        for (int i = 1; i <= k; ++i) {
            tower.state.push_back("y" + std::to_string(i));
            tower.init.push_back(parse_expr("1"));
        }
        tower.rhs.push_back(parse_expr("y1"));
        for (int i = 2; i <= k; ++i)
            tower.rhs.push_back(parse_expr("y" + std::to_string(i - 1) + "*y" +
                                           std::to_string(i)));
        try {
            solve_naive(tower, Int(25), {}, &reg(), 1000000ul);
            c.fail("tower failed to trip the 10^6-bit guard by T=25");
        } catch (const GrowthExceeded& e) {
            if (e.step >= 25) c.fail("tower tripped too late: step " + std::to_string(e.step));
        }
    }

    // f*f right-hand sides are rejected.
    {
        bool threw = false;
        try {
            linear_decompose({parse_expr("f*f")}, {"f"});
        } catch (const NotEssentiallyLinear&) {
            threw = true;
        }
        if (!threw) c.fail("f*f passed linear_decompose");

        OdeSystem sq;
        sq.name = "sq";
        sq.state = {"f"};
        sq.kind = OdeKind::Plain;
        sq.init = {parse_expr("2")};
        sq.rhs = {parse_expr("f*f")};
        threw = false;
        try {
            solve_linear_fast(sq, 5, {}, &reg(), 1000);
        } catch (const NotEssentiallyLinear&) {
            threw = true;
        }
        if (!threw) c.fail("solve_linear_fast accepted f*f");
    }

    // Minimization with no zero anywhere reports the cap.
    {
        IntFn one = IntFn::from_unary([](const Int&) { return Int(1); });
        bool threw = false;
        try {
            funclib::smin_ode(one, {}, 100);
        } catch (const funclib::CapExceeded&) {
            threw = true;
        }
        if (!threw) c.fail("smin_ode on g=1 did not report CapExceeded");
    }

    return c.done("growth guard, linearity gate and minimization cap all trip as required");
}

// ---------------------------------------------------------------------------
// 9. Minimization

CheckResult minimization(unsigned long cases, unsigned long cap) {
    Check c("minimization");
    Rng rng(1009);
    for (unsigned long trial = 0; trial < cases && !c.failed; ++trial) {
        long plant = rnd(rng, 0, static_cast<long>(cap) - 1);
        std::vector<Int> table(cap + 1);
        for (unsigned long i = 0; i < table.size(); ++i) {
            long v = rnd(rng, 0, 50);
            table[i] = static_cast<long>(i) < plant ? Int(1 + v) : Int(v);
        }
        table[static_cast<std::size_t>(plant)] = Int(0);
        // The oracle is the first zero in the table.
        long expect = 0;
        while (!table[static_cast<std::size_t>(expect)].is_zero()) ++expect;

        IntFn g = IntFn::from_table(0, table);
        auto r = funclib::smin_ode(g, {}, cap);
        ++c.count;
        if (r.value != Int(expect))
            c.fail("trial " + std::to_string(trial) + ": got " + r.value.str() + ", want " +
                   std::to_string(expect));
    }
    return c.done(std::to_string(c.count) + " planted-zero tables recovered exactly");
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> run_suite(const std::string& suite, unsigned long limit) {
    auto capped = [&](unsigned long full) { return limit ? std::min(limit, full) : full; };
    std::vector<CheckResult> out;
    bool all = suite == "all";

    if (all || suite == "calculus") out.push_back(calculus_identities(capped(1000)));
    if (all || suite == "ode") {
        out.push_back(closed_form_vs_naive(capped(500)));
        out.push_back(jump_set_law(capped(16384)));
        out.push_back(negative_controls());
    }
    if (all || suite == "funclib") {
        out.push_back(exhaustive_oracles(capped(4096)));
        out.push_back(step_count_law(capped(4096)));
        out.push_back(minimization(capped(200)));
    }
    if (all || suite == "compiler") {
        out.push_back(compiler_lockstep());
        out.push_back(sll_end_to_end());
    }
    if (out.empty()) throw std::invalid_argument("unknown suite: " + suite);
    return out;
}

}  // namespace verify
}  // namespace dode

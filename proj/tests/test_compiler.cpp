#include "dode/compiler.hpp"

#include "dode/funclib.hpp"
#include "dode/verify.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace dode;
using namespace dode::compiler;

namespace {

std::vector<Int> ints(std::initializer_list<long> xs) {
    std::vector<Int> v;
    for (long x : xs) v.push_back(Int(x));
    return v;
}

}  // namespace

TEST_CASE("halt-only program freezes at instruction 0") {
    CompiledSystem cs = compile_rm(load_program("HALT\n"));
    REQUIRE(cs.system.state.size() == 2);  // inst, R0
    auto trace = run_compiled_trace(cs, {}, 10);
    for (const auto& st : trace) {
        CHECK(st[0] == Int(0));
        CHECK(st[1] == Int(0));
    }
}

TEST_CASE("add program: inst trajectory and output") {
    CompiledSystem cs = compile_rm(load_program("ADD 0 1\nADD 0 2\nHALT\n"));
    REQUIRE(cs.system.state.size() == 4);
    auto trace = run_compiled_trace(cs, ints({3, 4}), 6);
    // inst walks 0,1,2 and then parks on the halt label.
    CHECK(trace[0][0] == Int(0));
    CHECK(trace[1][0] == Int(1));
    CHECK(trace[2][0] == Int(2));
    CHECK(trace[3][0] == Int(2));
    CHECK(trace[6][0] == Int(2));
    CHECK(trace[2][1] == Int(7));  // R0 after both adds

    auto rep = run_compiled(cs, ints({3, 4}), 8);
    CHECK(rep.values[1] == Int(7));
    CHECK(rep.steps == 8);
}

TEST_CASE("compiled systems decompose and have state-degree one") {
    for (const auto& p : verify::corpus()) {
        CompiledSystem cs = compile_rm(load_program(p.text));
        CHECK(cs.system.kind == OdeKind::LinearLengthOde);
        CHECK_NOTHROW(linear_decompose(cs.system.rhs, cs.system.state));
        std::set<std::string> state(cs.system.state.begin(), cs.system.state.end());
        unsigned overall = 0;
        for (const Expr& r : cs.system.rhs) {
            unsigned d = degree(r, state);
            CHECK(d <= 1);
            overall = std::max(overall, d);
        }
        CHECK(overall == 1);
    }
}

TEST_CASE("truncated budget matches the simulator prefix") {
    MachineProgram prog = load_program(verify::corpus()[1].text);  // countdown
    CompiledSystem cs = compile_rm(prog);
    for (unsigned long T : {0ul, 1ul, 3ul, 7ul, 11ul}) {
        auto rep = run_compiled(cs, ints({5}), T);
        // Walk the simulator exactly T machine steps.
        MachineConfig cfg = initial_config(prog, ints({5}));
        for (unsigned long t = 0; t < T; ++t) machine_step(prog, cfg);
        CHECK(rep.values[0] == Int(cfg.pc));
        CHECK(rep.values[1] == cfg.registers[0]);
    }
}

TEST_CASE("sum-product evaluation equals the plain recurrence") {
    // run_compiled goes through the decomposed (1+A)f+B form; the trace
    // iterates the raw right-hand sides. Same system, two routes.
    for (const auto& p : verify::corpus()) {
        CompiledSystem cs = compile_rm(load_program(p.text));
        const auto& inputs = p.grid.back();
        for (unsigned long T : {0ul, 5ul, 20ul}) {
            auto trace = run_compiled_trace(cs, inputs, T);
            auto rep = run_compiled(cs, inputs, T);
            CHECK(trace.back() == rep.values);
        }
    }
}

TEST_CASE("countdown through the compiled system") {
    MachineProgram prog = load_program(verify::corpus()[1].text);
    CompiledSystem cs = compile_rm(prog);
    RunResult sim = run(prog, ints({5}), 1000);
    REQUIRE(sim.halted);
    auto rep = run_compiled(cs, ints({5}), sim.steps + 5);
    CHECK(rep.values[1] == Int(5));
}

TEST_CASE("bound_steps") {
    CHECK(bound_steps(3, 1) == 10);  // len(2^9) = 10 >= 3
    CHECK(bound_steps(1, 1) == 2);
    CHECK(bound_steps(0, 1) == 1);
    CHECK(bound_steps(5, 2) == 677);
    // T >= l^c for the corpus scales
    for (unsigned long l = 0; l <= 12; ++l)
        for (unsigned c = 1; c <= 2; ++c) {
            unsigned long t = bound_steps(l, c);
            unsigned long pow = 1;
            for (unsigned i = 0; i < c; ++i) pow *= l;
            CHECK(t >= pow);
        }
}

TEST_CASE("bound_value computes 2^{len^2} and matches bound_steps") {
    for (long v : {0L, 1L, 2L, 5L, 100L, 4095L}) {
        unsigned long l = Int(v).bit_length();
        CHECK(bound_value(Int(v)) == Int::pow2(l * l));
    }
    // len(B(B(v))) over a length-l v equals the arithmetic budget.
    for (unsigned long l : {0ul, 1ul, 3ul, 5ul}) {
        Int v = l == 0 ? Int(0) : Int::pow2(l - 1);
        Int b2 = bound_value(bound_value(v));
        CHECK(b2.bit_length() == bound_steps(l, 2));
    }
}

TEST_CASE("sll evaluation on the add grid") {
    MachineProgram prog = load_program("ADD 0 1\nADD 0 2\nHALT\n");
    SLLForm sll = package_sll(compile_rm(prog), 2);
    for (long a = 0; a < 5; ++a)
        for (long b = 0; b < 5; ++b) {
            RunResult sim = run(prog, ints({a, b}), 1000);
            CHECK(eval_sll(sll, ints({a, b})).value == sim.output);
        }
}

TEST_CASE("sll evaluation: halt-only and countdown") {
    SLLForm halt = package_sll(compile_rm(load_program("HALT\n")), 2);
    CHECK(eval_sll(halt, {}).value == Int(0));

    MachineProgram prog = load_program(verify::corpus()[1].text);
    SLLForm sll = package_sll(compile_rm(prog), 2);
    for (long x = 0; x < 32; ++x) CHECK(eval_sll(sll, ints({x})).value == Int(x));
}

TEST_CASE("compiled system file round-trips through the ode format") {
    CompiledSystem cs = compile_rm(load_program("ADD 0 1\nADD 0 2\nHALT\n"));
    std::string text = print_system(cs.system, {"program-digest: " + program_digest("x")});
    OdeSystem parsed = parse_system(text);
    CHECK(parsed.kind == OdeKind::LinearLengthOde);
    CHECK(parsed.output == "R0");
    auto a = solve_linear_fast(parsed, 8, {Int(3), Int(4)}, &funclib::default_registry());
    auto b = run_compiled(cs, ints({3, 4}), 8);
    CHECK(a.values == b.values);
}

TEST_CASE("program digest is stable and input-sensitive") {
    CHECK(program_digest("HALT\n") == program_digest("HALT\n"));
    CHECK(program_digest("HALT\n") != program_digest("ADD 0 1\n"));
}

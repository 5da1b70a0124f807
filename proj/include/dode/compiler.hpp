#pragma once

#include "dode/machines.hpp"
#include "dode/ode.hpp"

namespace dode {
namespace compiler {

// A register machine translated into a linear length-ODE over the state
// (inst, R0..Rk). selector_proof is the successful linear_decompose of the
// right-hand sides over that state.
struct CompiledSystem {
    OdeSystem system;
    MachineProgram program;
    LinearForm selector_proof;
};

// Emits the selector-sum derivatives
//   d inst = sum_l (prod_{i<l} sg(inst-i)) * cosg(inst-l) * next_l^I
// and likewise for each register, with the per-instruction effects:
// ADD j k: next^I=1, next^j=R_k;  SUB: next^j=-R_k;  SET j c: next^j=c-R_j;
// JZ j p: next^I = ifz(R_j, p-inst, 1);  HALT: next^I=0.
// Initial values: inst=0, R_i = x_i (params), R_0 and scratch registers 0.
CompiledSystem compile_rm(const MachineProgram& prog);

// Length of the c-fold composition of B(v)=2^{len(v)^2} starting from a
// value of the given length; iterates l <- l*l + 1. This is the number of
// length-ODE steps available to a compiled run, and is >= l^c for c >= 1.
unsigned long bound_steps(unsigned long total_input_length, unsigned c);

// Growth guard the module supplies when the caller does not:
// len(G) + T*(T + len(y))*c bits.
unsigned long default_guard_bits(const std::vector<Int>& inputs, unsigned long T, unsigned c);

// Solves the compiled system for T steps (jump steps counted directly)
// through solve_linear_fast, with the default growth guard unless one is
// given. values[0] is inst, values[1] is R0.
EvalReport run_compiled(const CompiledSystem& cs, const std::vector<Int>& inputs,
                        unsigned long T,
                        std::optional<unsigned long> guard_bits = std::nullopt,
                        unsigned c = 2);

// State trajectory (inst, R0..Rk) for t = 0..T, for lockstep comparison
// against the simulator.
std::vector<std::vector<Int>> run_compiled_trace(const CompiledSystem& cs,
                                                 const std::vector<Int>& inputs,
                                                 unsigned long T);

// B(v) = 2^{len(v)^2} as a single linear length-ODE (the rhs uses the
// basic 2^{len} auxiliary: b' = b*(2*pow2_len(x)^2 - 1), b(0)=1).
OdeSystem bound_ode();
Int bound_value(const Int& v);

// The theorem's packaging: f(y) = g.R0(h(y), y) with g the compiled normal
// linear length-ODE (plain sg-polynomial right-hand sides) and h the c-fold
// composition of the B bound, fed the summed input length.
struct SLLForm {
    OdeSystem g;
    OdeSystem h;
    unsigned c = 2;
    MachineProgram program;
};

SLLForm package_sll(const CompiledSystem& cs, unsigned c = 2);

struct SllEvalResult {
    Int value;
    unsigned long steps = 0;   // jump steps spent in g
    Int budget;                // h(y)
};
SllEvalResult eval_sll(const SLLForm& sll, const std::vector<Int>& inputs);

// FNV-1a 64 of the program text, for the compile output header.
std::string program_digest(const std::string& text);

}  // namespace compiler
}  // namespace dode

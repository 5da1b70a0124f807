#include "dode/compiler.hpp"

#include "dode/funclib.hpp"

#include <sstream>

namespace dode {
namespace compiler {

namespace {

Expr var(const std::string& n) { return Expr::variable(n); }
Expr cnum(long v) { return Expr::constant(Int(v)); }

// prod_{i<l} sg(inst - i) * cosg(inst - l)
Expr selector(int l) {
    Expr sel = Expr::cosg_of(Expr::sub(var("inst"), cnum(l)));
    for (int i = l - 1; i >= 0; --i)
        sel = Expr::mul(Expr::sg(Expr::sub(var("inst"), cnum(i))), sel);
    return sel;
}

std::string reg_name(int j) { return "R" + std::to_string(j); }

}  // namespace

CompiledSystem compile_rm(const MachineProgram& prog) {
    int k = prog.num_registers;
    int m = static_cast<int>(prog.instructions.size());

    OdeSystem sys;
    sys.name = "compiled";
    sys.state.push_back("inst");
    for (int j = 0; j < k; ++j) sys.state.push_back(reg_name(j));
    for (int j = 1; j < k; ++j) sys.params.push_back("x" + std::to_string(j));
    sys.deriv_var = "x";
    sys.lspec = length_lspec();
    sys.kind = OdeKind::LinearLengthOde;
    sys.output = "R0";

    // inst(0)=0, R0(0)=0, R_j(0)=x_j.
    sys.init.push_back(cnum(0));
    sys.init.push_back(cnum(0));
    for (int j = 1; j < k; ++j) sys.init.push_back(var("x" + std::to_string(j)));

    // next_l effects per state variable; absent entries are 0 and still
    // appear in the sums as selector * 0, matching the proof's case sums.
    std::vector<std::vector<Expr>> next(static_cast<std::size_t>(m),
                                        std::vector<Expr>(static_cast<std::size_t>(k) + 1,
                                                          cnum(0)));
    for (int l = 0; l < m; ++l) {
        const Instr& in = prog.instructions[static_cast<std::size_t>(l)];
        switch (in.op) {
            case Instr::Op::AddReg:
                next[l][0] = cnum(1);
                next[l][1 + in.j] = var(reg_name(in.k));
                break;
            case Instr::Op::SubReg:
                next[l][0] = cnum(1);
                next[l][1 + in.j] = Expr::sub(cnum(0), var(reg_name(in.k)));
                break;
            case Instr::Op::SetConst:
                next[l][0] = cnum(1);
                next[l][1 + in.j] = Expr::sub(cnum(in.c), var(reg_name(in.j)));
                break;
            case Instr::Op::JumpIfZero:
                // R_j = 0 sends inst to the target, otherwise to l+1.
                next[l][0] = Expr::ifz_of(var(reg_name(in.j)),
                                          Expr::sub(cnum(in.target), var("inst")), cnum(1));
                break;
            case Instr::Op::Halt:
                next[l][0] = cnum(0);
                break;
        }
    }

    for (std::size_t s = 0; s < static_cast<std::size_t>(k) + 1; ++s) {
        if (m == 0) {
            sys.rhs.push_back(cnum(0));
            continue;
        }
        Expr sum = Expr::mul(selector(0), next[0][s]);
        for (int l = 1; l < m; ++l) sum = Expr::add(sum, Expr::mul(selector(l), next[l][s]));
        sys.rhs.push_back(sum);
    }

    CompiledSystem cs;
    cs.selector_proof = linear_decompose(sys.rhs, sys.state);
    cs.system = std::move(sys);
    cs.program = prog;
    return cs;
}

unsigned long bound_steps(unsigned long total_input_length, unsigned c) {
    if (c < 1) throw std::invalid_argument("bound_steps: c must be >= 1");
    unsigned long l = total_input_length;
    for (unsigned i = 0; i < c; ++i) {
        if (l > (1ul << 31)) throw std::overflow_error("bound_steps: budget does not fit");
        l = l * l + 1;
    }
    return l;
}

unsigned long default_guard_bits(const std::vector<Int>& inputs, unsigned long T, unsigned c) {
    unsigned long len_g = 0, len_y = 0;
    for (const Int& v : inputs) {
        len_g = std::max(len_g, v.bit_length());
        len_y += v.bit_length();
    }
    return len_g + T * (T + len_y) * c;
}

EvalReport run_compiled(const CompiledSystem& cs, const std::vector<Int>& inputs,
                        unsigned long T, std::optional<unsigned long> guard_bits, unsigned c) {
    std::vector<Int> params(cs.system.params.size(), Int(0));
    for (std::size_t i = 0; i < inputs.size() && i < params.size(); ++i) params[i] = inputs[i];
    unsigned long guard = guard_bits ? *guard_bits : default_guard_bits(inputs, T, c);
    return solve_linear_fast(cs.system, T, params, &funclib::default_registry(), guard);
}

std::vector<std::vector<Int>> run_compiled_trace(const CompiledSystem& cs,
                                                 const std::vector<Int>& inputs,
                                                 unsigned long T) {
    const OdeSystem& sys = cs.system;
    std::vector<Int> params(sys.params.size(), Int(0));
    for (std::size_t i = 0; i < inputs.size() && i < params.size(); ++i) params[i] = inputs[i];

    Env env;
    env.functions = &funclib::default_registry();
    for (std::size_t i = 0; i < params.size(); ++i) env.set(sys.params[i], params[i]);

    std::vector<Int> state;
    for (const Expr& e : sys.init) state.push_back(eval_expr(e, env));

    std::vector<std::vector<Int>> trace;
    trace.push_back(state);
    for (unsigned long t = 0; t < T; ++t) {
        env.set(sys.deriv_var, sys.lspec->enumerator->alpha(t, env));
        for (std::size_t i = 0; i < state.size(); ++i) env.set(sys.state[i], state[i]);
        std::vector<Int> next = state;
        for (std::size_t i = 0; i < state.size(); ++i) next[i] += eval_expr(sys.rhs[i], env);
        state = std::move(next);
        trace.push_back(state);
    }
    return trace;
}

OdeSystem bound_ode() {
    OdeSystem sys;
    sys.name = "B_bound";
    sys.state = {"b"};
    sys.deriv_var = "x";
    sys.lspec = length_lspec();
    sys.kind = OdeKind::LinearLengthOde;
    sys.init = {parse_expr("1")};
    // At the j-th length jump pow2_len(x) is 2^j, so the step multiplies b
    // by 2^{2j+1}, giving b = 2^{len^2} after all jumps.
    sys.rhs = {parse_expr("b*(2*pow2_len(x)*pow2_len(x)-1)")};
    return sys;
}

Int bound_value(const Int& v) {
    static const OdeSystem sys = bound_ode();
    return solve_lode_fast(sys, v, {}, &funclib::default_registry()).values[0];
}

SLLForm package_sll(const CompiledSystem& cs, unsigned c) {
    if (c < 1) throw std::invalid_argument("package_sll: c must be >= 1");
    SLLForm sll;
    sll.g = cs.system;
    sll.h = bound_ode();
    sll.c = c;
    sll.program = cs.program;
    return sll;
}

SllEvalResult eval_sll(const SLLForm& sll, const std::vector<Int>& inputs) {
    // Feed B the summed input length through its canonical representative
    // 2^s - 1 (B reads its argument only through len), then compose.
    unsigned long s = 0;
    for (const Int& v : inputs) s += v.bit_length();
    Int v = Int::pow2(s) - Int(1);
    for (unsigned i = 0; i < sll.c; ++i) v = bound_value(v);

    unsigned long T = v.bit_length();
    CompiledSystem cs;
    cs.system = sll.g;
    cs.program = sll.program;
    EvalReport rep = run_compiled(cs, inputs, T, std::nullopt, sll.c);

    SllEvalResult res;
    res.value = rep.values[1];  // R0
    res.steps = rep.steps;
    res.budget = v;
    return res;
}

std::string program_digest(const std::string& text) {
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return "fnv1a64:" + os.str();
}

}  // namespace compiler
}  // namespace dode

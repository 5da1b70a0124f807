// Command line front end: expression/function evaluation, ODE solving,
// machine simulation, compilation to ODE files, and the verification
// suites.

#include "dode/compiler.hpp"
#include "dode/funclib.hpp"
#include "dode/machines.hpp"
#include "dode/ode.hpp"
#include "dode/verify.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace {

using namespace dode;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<Int> parse_csv(const std::string& csv, const char* flag = "--inputs") {
    std::vector<Int> out;
    if (csv.empty()) return out;
    std::istringstream is(csv);
    std::string item;
    while (std::getline(is, item, ',')) {
        try {
            out.push_back(Int::parse(item));
        } catch (const std::invalid_argument&) {
            throw UsageError(std::string(flag) + ": bad integer '" + item + "'");
        }
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

funclib::FnResult eval_named(const std::string& fn, const std::vector<Int>& a) {
    auto want = [&](std::size_t n) {
        if (a.size() != n)
            throw UsageError("--fn " + fn + " takes " + std::to_string(n) + " argument(s), got " +
                             std::to_string(a.size()));
    };
    if (fn == "len") { want(1); return {length(a[0]), 0, 0}; }
    if (fn == "sg") { want(1); return {sg(a[0]), 0, 0}; }
    if (fn == "cosg") { want(1); return {cosg(a[0]), 0, 0}; }
    if (fn == "ifz") { want(3); return {ifz(a[0], a[1], a[2]), 0, 0}; }
    if (fn == "isqrt") { want(1); return funclib::isqrt(a[0]); }
    if (fn == "idiv") { want(2); return funclib::idiv(a[0], a[1]); }
    if (fn == "suffix") { want(2); return funclib::suffix(a[0], a[1]); }
    if (fn == "pow2_len") { want(1); return funclib::pow2_len(a[0]); }
    if (fn == "pow2_len_sq") { want(1); return funclib::pow2_len_sq(a[0]); }
    if (fn == "pow2_lenprod") { want(2); return funclib::pow2_lenprod(a[0], a[1]); }
    throw UsageError("--fn " + fn + " is not a known function");
}

int cmd_eval(const std::string& fn, const std::string& args_csv) {
    auto r = eval_named(fn, parse_csv(args_csv, "--args"));
    std::cout << r.value.str() << "\n";
    return 0;
}

int cmd_solve(const std::string& file, const std::string& x_str, const std::string& t_str,
              const std::string& inputs_csv, unsigned long guard) {
    OdeSystem sys = parse_system(read_file(file));
    std::vector<Int> inputs = parse_csv(inputs_csv);
    std::vector<Int> params(sys.params.size(), Int(0));
    for (std::size_t i = 0; i < inputs.size() && i < params.size(); ++i) params[i] = inputs[i];

    std::optional<unsigned long> guard_bits;
    if (guard) guard_bits = guard;

    EvalReport rep;
    if (!x_str.empty() && !t_str.empty()) throw UsageError("give either --x or --T, not both");
    if (!x_str.empty()) {
        Int x = Int::parse(x_str);
        if (sys.lspec && sys.lspec->enumerator)
            rep = solve_lode_fast(sys, x, params, &funclib::default_registry());
        else
            rep = solve_naive(sys, x, params, &funclib::default_registry(), guard_bits);
    } else if (!t_str.empty()) {
        unsigned long T = Int::parse(t_str).to_ulong();
        rep = solve_linear_fast(sys, T, params, &funclib::default_registry(), guard_bits);
    } else {
        throw UsageError("solve needs --x N or --T N");
    }

    if (sys.output) {
        for (std::size_t i = 0; i < sys.state.size(); ++i)
            if (sys.state[i] == *sys.output) std::cout << rep.values[i].str() << "\n";
    } else {
        for (const Int& v : rep.values) std::cout << v.str() << "\n";
    }
    return 0;
}

int cmd_simulate(const std::string& file, const std::string& inputs_csv, unsigned long max_steps,
                 bool ram, const std::string& opset) {
    std::vector<Int> inputs = parse_csv(inputs_csv);
    if (ram) {
        if (opset != "basic" && opset != "full")
            throw UsageError("--opset must be basic or full");
        RamProgram prog = load_ram(read_file(file), opset == "full");
        RamRunResult r = run_ram(prog, inputs, max_steps);
        std::cout << r.output.str() << "\n";
        std::cout << "steps=" << r.steps << "\n";
        if (!r.halted) std::cout << "status=step-limit\n";
        return 0;
    }
    MachineProgram prog = load_program(read_file(file));
    RunResult r = run(prog, inputs, max_steps);
    std::cout << r.output.str() << "\n";
    std::cout << "steps=" << r.steps << "\n";
    if (!r.halted) std::cout << "status=step-limit\n";
    return 0;
}

int cmd_compile(const std::string& file, const std::string& out, unsigned c) {
    std::string text = read_file(file);
    compiler::CompiledSystem cs = compiler::compile_rm(load_program(text));
    std::vector<std::string> header = {
        "program-digest: " + compiler::program_digest(text),
        "c: " + std::to_string(c),
    };
    std::ofstream os(out, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + out);
    os << print_system(cs.system, header);
    return 0;
}

int cmd_verify(const std::string& suite, unsigned long limit) {
    auto results = dode::verify::run_suite(suite, limit);
    bool all_pass = true;
    for (const auto& r : results) {
        std::printf("%-24s %s  (%.2fs) %s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL",
                    r.seconds, r.detail.c_str());
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}

int cmd_bench(const std::string& fn, unsigned long bits) {
    std::mt19937_64 rng(std::random_device{}());
    auto rand_bits = [&rng](unsigned long n) {
        if (n == 0) return Int(0);
        Int v = Int::pow2(n - 1);
        unsigned long produced = 0;
        Int low(0);
        while (produced + 1 < n) {
            unsigned take = std::min<unsigned long>(32, n - 1 - produced);
            low = low.shifted_left(take) + Int(static_cast<long>(rng() & ((1ull << take) - 1)));
            produced += take;
        }
        return v + low;
    };
    Int x = rand_bits(bits);
    std::vector<Int> args = {x};
    // binary functions get a second operand
    if (fn == "idiv" || fn == "suffix" || fn == "pow2_lenprod")
        args.push_back(fn == "idiv" ? Int(3) : rand_bits(bits));
    auto r = eval_named(fn, args);
    std::cout << "steps=" << r.steps << "\n";
    std::cout << "max_bits=" << r.max_bits << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact discrete-calculus and discrete-ODE engine"};
    app.require_subcommand(1);

    std::string fn, args_csv, file, out, x_str, t_str, inputs_csv, suite = "all",
                opset = "basic";
    unsigned long guard = 0, max_steps = 1000000, limit = 0, bits = 64;
    unsigned c = 2;
    bool ram = false;

    auto* eval = app.add_subcommand("eval", "evaluate a library function");
    eval->add_option("--fn", fn, "function name")->required();
    eval->add_option("--args", args_csv, "comma separated integers")->required();

    auto* solve = app.add_subcommand("solve", "solve an ODE system file");
    solve->add_option("--system", file, "system file")->required();
    solve->add_option("--x", x_str, "solve at point x");
    solve->add_option("--T", t_str, "iterate T steps");
    solve->add_option("--inputs", inputs_csv, "parameter values, CSV");
    solve->add_option("--guard", guard, "growth guard in bits");

    auto* sim = app.add_subcommand("simulate", "run a machine program");
    sim->add_option("--program", file, "program file")->required();
    sim->add_option("--inputs", inputs_csv, "input values, CSV");
    sim->add_option("--max-steps", max_steps, "step budget");
    sim->add_flag("--ram", ram, "treat the program as a RAM");
    sim->add_option("--opset", opset, "basic|full (RAM only)");

    auto* comp = app.add_subcommand("compile", "compile a register machine to an ODE file");
    comp->add_option("--program", file, "program file")->required();
    comp->add_option("--out", out, "output system file")->required();
    comp->add_option("--c", c, "polynomial budget exponent");

    auto* ver = app.add_subcommand("verify", "run a verification suite");
    ver->add_option("--suite", suite, "calculus|ode|funclib|compiler|all");
    ver->add_option("--limit", limit, "shrink case counts");

    auto* bench = app.add_subcommand("bench", "steps/bits accounting on a random input");
    bench->add_option("--fn", fn, "function name")->required();
    bench->add_option("--bits", bits, "input width in bits");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (eval->parsed()) return cmd_eval(fn, args_csv);
        if (solve->parsed()) return cmd_solve(file, x_str, t_str, inputs_csv, guard);
        if (sim->parsed()) return cmd_simulate(file, inputs_csv, max_steps, ram, opset);
        if (comp->parsed()) return cmd_compile(file, out, c);
        if (ver->parsed()) return cmd_verify(suite, limit);
        if (bench->parsed()) return cmd_bench(fn, bits);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

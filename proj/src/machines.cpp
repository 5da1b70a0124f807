#include "dode/machines.hpp"

#include "dode/expr.hpp"  // ParseError

#include <algorithm>
#include <map>
#include <sstream>

namespace dode {

namespace {

std::vector<std::string> tokenize_lines(const std::string& text,
                                        std::vector<std::vector<std::string>>& out) {
    std::vector<std::string> raw_lines;
    std::istringstream is(text);
    std::string raw;
    while (std::getline(is, raw)) {
        std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::istringstream ls(raw);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (!toks.empty()) {
            out.push_back(std::move(toks));
            raw_lines.push_back(raw);
        }
    }
    return raw_lines;
}

int parse_index(const std::string& tok, const char* what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
        return v;
    } catch (...) {
        throw ParseError(0, std::string("bad ") + what + ": " + tok);
    }
}

// Register files are meant to be small; an index this large is a typo,
// not a machine.
constexpr int kMaxRegisterIndex = 4096;

int parse_register(const std::string& tok) {
    int r = parse_index(tok, "register");
    if (r > kMaxRegisterIndex)
        throw BadRegister(tok + " (indices above " + std::to_string(kMaxRegisterIndex) +
                          " are rejected)");
    return r;
}

}  // namespace

MachineProgram load_program(const std::string& text) {
    std::vector<std::vector<std::string>> lines;
    tokenize_lines(text, lines);

    MachineProgram prog;
    int max_reg = 0;
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const auto& t = lines[ln];
        auto expect = [&](std::size_t n) {
            if (t.size() != n)
                throw ParseError(ln, "instruction " + t[0] + " takes " + std::to_string(n - 1) +
                                         " operands");
        };
        Instr in;
        if (t[0] == "ADD") {
            expect(3);
            in.op = Instr::Op::AddReg;
            in.j = parse_register(t[1]);
            in.k = parse_register(t[2]);
            max_reg = std::max({max_reg, in.j, in.k});
        } else if (t[0] == "SUB") {
            expect(3);
            in.op = Instr::Op::SubReg;
            in.j = parse_register(t[1]);
            in.k = parse_register(t[2]);
            max_reg = std::max({max_reg, in.j, in.k});
        } else if (t[0] == "SET") {
            expect(3);
            in.op = Instr::Op::SetConst;
            in.j = parse_register(t[1]);
            in.c = parse_index(t[2], "constant");
            if (in.c != 0 && in.c != 1)
                throw ParseError(ln, "SET constant must be 0 or 1, got " + t[2]);
            max_reg = std::max(max_reg, in.j);
        } else if (t[0] == "JZ") {
            expect(3);
            in.op = Instr::Op::JumpIfZero;
            in.j = parse_register(t[1]);
            in.target = parse_index(t[2], "label");
            max_reg = std::max(max_reg, in.j);
        } else if (t[0] == "HALT") {
            expect(1);
            in.op = Instr::Op::Halt;
        } else {
            throw ParseError(ln, "unknown instruction: " + t[0]);
        }
        prog.instructions.push_back(in);
    }

    int m = static_cast<int>(prog.instructions.size());
    for (const Instr& in : prog.instructions)
        if (in.op == Instr::Op::JumpIfZero && in.target >= m)
            throw BadLabel("jump target " + std::to_string(in.target) + " outside program of " +
                           std::to_string(m) + " instructions");

    prog.num_registers = max_reg + 1;
    return prog;
}

MachineConfig initial_config(const MachineProgram& prog, const std::vector<Int>& inputs) {
    int k = std::max<int>(prog.num_registers, static_cast<int>(inputs.size()) + 1);
    MachineConfig cfg;
    cfg.pc = 0;
    cfg.registers.assign(static_cast<std::size_t>(k), Int(0));
    for (std::size_t i = 0; i < inputs.size(); ++i) cfg.registers[i + 1] = inputs[i];
    return cfg;
}

bool machine_step(const MachineProgram& prog, MachineConfig& cfg) {
    if (cfg.pc < 0 || cfg.pc >= static_cast<int>(prog.instructions.size())) return false;
    const Instr& in = prog.instructions[static_cast<std::size_t>(cfg.pc)];
    switch (in.op) {
        case Instr::Op::AddReg:
            cfg.registers[in.j] += cfg.registers[in.k];
            ++cfg.pc;
            return true;
        case Instr::Op::SubReg:
            cfg.registers[in.j] -= cfg.registers[in.k];
            ++cfg.pc;
            return true;
        case Instr::Op::SetConst:
            cfg.registers[in.j] = Int(in.c);
            ++cfg.pc;
            return true;
        case Instr::Op::JumpIfZero:
            cfg.pc = cfg.registers[in.j].is_zero() ? in.target : cfg.pc + 1;
            return true;
        case Instr::Op::Halt:
            return false;
    }
    return false;
}

RunResult run(const MachineProgram& prog, const std::vector<Int>& inputs,
              unsigned long max_steps) {
    MachineConfig cfg = initial_config(prog, inputs);
    RunResult res;
    int m = static_cast<int>(prog.instructions.size());
    while (res.steps < max_steps) {
        if (cfg.pc < 0 || cfg.pc >= m) {
            res.halted = true;  // nothing left to execute
            break;
        }
        bool halt = prog.instructions[static_cast<std::size_t>(cfg.pc)].op == Instr::Op::Halt;
        machine_step(prog, cfg);
        ++res.steps;  // executing the halt counts as an instruction
        if (halt) {
            res.halted = true;
            break;
        }
    }
    res.output = cfg.registers.empty() ? Int(0) : cfg.registers[0];
    res.final_config = std::move(cfg);
    return res;
}

// ---------------------------------------------------------------------------
// RAM

RamProgram load_ram(const std::string& text, bool full_opset) {
    std::vector<std::vector<std::string>> lines;
    tokenize_lines(text, lines);

    RamProgram prog;
    prog.full_opset = full_opset;
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const auto& t = lines[ln];
        auto expect = [&](std::size_t n) {
            if (t.size() != n)
                throw ParseError(ln, "instruction " + t[0] + " takes " + std::to_string(n - 1) +
                                         " operands");
        };
        RamInstr in;
        if (t[0] == "LA" || t[0] == "LB") {
            expect(2);
            in.op = t[0] == "LA" ? RamInstr::Op::LoadA : RamInstr::Op::LoadB;
            try {
                in.c = Int::parse(t[1]);
            } catch (...) {
                throw ParseError(ln, "bad constant: " + t[1]);
            }
        } else if (t[0] == "AOP") {
            expect(2);
            if (t[1].size() != 1 || std::string("+-*/").find(t[1][0]) == std::string::npos)
                throw ParseError(ln, "AOP operator must be one of + - * /");
            if (!full_opset && (t[1][0] == '*' || t[1][0] == '/'))
                throw ParseError(ln, std::string("operator ") + t[1][0] +
                                         " requires the full opset");
            in.op = RamInstr::Op::AluOp;
            in.alu = t[1][0];
        } else if (t[0] == "MAB") {
            expect(1);
            in.op = RamInstr::Op::MoveAB;
        } else if (t[0] == "MBA") {
            expect(1);
            in.op = RamInstr::Op::MoveBA;
        } else if (t[0] == "LOAD") {
            expect(1);
            in.op = RamInstr::Op::Load;
        } else if (t[0] == "STORE") {
            expect(1);
            in.op = RamInstr::Op::Store;
        } else if (t[0] == "JEQ") {
            expect(3);
            in.op = RamInstr::Op::JumpEq;
            in.ti = parse_index(t[1], "label");
            in.tj = parse_index(t[2], "label");
        } else if (t[0] == "HALT") {
            expect(1);
            in.op = RamInstr::Op::Halt;
        } else {
            throw ParseError(ln, "unknown instruction: " + t[0]);
        }
        prog.instructions.push_back(in);
    }

    int m = static_cast<int>(prog.instructions.size());
    for (const RamInstr& in : prog.instructions)
        if (in.op == RamInstr::Op::JumpEq && (in.ti >= m || in.tj >= m))
            throw BadLabel("JEQ target outside program of " + std::to_string(m) +
                           " instructions");
    return prog;
}

RamRunResult run_ram(const RamProgram& prog, const std::vector<Int>& inputs,
                     unsigned long max_steps) {
    // Registers grow on demand; unwritten cells read 0.
    std::map<Int, Int> regs;
    for (std::size_t i = 0; i < inputs.size(); ++i) regs[Int(static_cast<long>(i) + 1)] = inputs[i];
    Int a(0), b(0);
    int pc = 0;

    auto read_reg = [&](const Int& addr) -> Int {
        auto it = regs.find(addr);
        return it == regs.end() ? Int(0) : it->second;
    };

    RamRunResult res;
    int m = static_cast<int>(prog.instructions.size());
    while (res.steps < max_steps) {
        if (pc < 0 || pc >= m) { res.halted = true; break; }
        const RamInstr& in = prog.instructions[static_cast<std::size_t>(pc)];
        if (in.op == RamInstr::Op::Halt) {
            ++res.steps;
            res.halted = true;
            break;
        }
        switch (in.op) {
            case RamInstr::Op::LoadA: a = in.c; ++pc; break;
            case RamInstr::Op::LoadB: b = in.c; ++pc; break;
            case RamInstr::Op::AluOp:
                switch (in.alu) {
                    case '+': a = a + b; break;
                    case '-': a = a - b; break;
                    case '*': a = a * b; break;
                    // Integer division truncates toward zero.
                    case '/': a = a.tdiv(b); break;
                }
                ++pc;
                break;
            case RamInstr::Op::MoveAB: b = a; ++pc; break;
            case RamInstr::Op::MoveBA: a = b; ++pc; break;
            case RamInstr::Op::Load:
                if (a.is_negative()) throw NegativeAddress("LOAD with A=" + a.str());
                a = read_reg(a);
                ++pc;
                break;
            case RamInstr::Op::Store:
                if (a.is_negative()) throw NegativeAddress("STORE with A=" + a.str());
                regs[a] = b;
                ++pc;
                break;
            case RamInstr::Op::JumpEq: pc = (a == b) ? in.ti : in.tj; break;
            case RamInstr::Op::Halt: break;
        }
        ++res.steps;
    }
    res.output = a;
    res.a = a;
    res.b = b;
    return res;
}

}  // namespace dode

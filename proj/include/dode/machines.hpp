#pragma once

#include "dode/int.hpp"

#include <string>
#include <vector>

namespace dode {

struct BadRegister : std::runtime_error {
    explicit BadRegister(const std::string& what) : std::runtime_error("bad register: " + what) {}
};

struct BadLabel : std::runtime_error {
    explicit BadLabel(const std::string& what) : std::runtime_error("bad label: " + what) {}
};

struct NegativeAddress : std::runtime_error {
    explicit NegativeAddress(const std::string& what)
        : std::runtime_error("negative address: " + what) {}
};

// One register machine instruction. Labels are 0-based instruction indices.
struct Instr {
    enum class Op { AddReg, SubReg, SetConst, JumpIfZero, Halt };
    Op op;
    int j = 0;       // destination / tested register
    int k = 0;       // source register (AddReg/SubReg)
    int c = 0;       // constant (SetConst), restricted to {0,1}
    int target = 0;  // jump target (JumpIfZero)
};

struct MachineProgram {
    std::vector<Instr> instructions;
    int num_registers = 1;  // R0..R_{num_registers-1}
};

// Text format, one instruction per line:
//   ADD j k | SUB j k | SET j c | JZ j p | HALT
// decimal operands, '#' comments, blank lines ignored.
MachineProgram load_program(const std::string& text);

struct MachineConfig {
    int pc = 0;
    std::vector<Int> registers;
};

MachineConfig initial_config(const MachineProgram& prog, const std::vector<Int>& inputs);

// Executes one instruction; returns false (leaving the config unchanged)
// when the machine is halted, i.e. pc sits on a Halt or past the end.
bool machine_step(const MachineProgram& prog, MachineConfig& cfg);

struct RunResult {
    Int output;           // R0 for register machines, A for RAMs
    unsigned long steps = 0;
    bool halted = false;  // false means the step limit was hit
    MachineConfig final_config;
};

RunResult run(const MachineProgram& prog, const std::vector<Int>& inputs,
              unsigned long max_steps);

// ---------------------------------------------------------------------------
// Random access machine with accumulators A, B, an unbounded register file
// and a configurable operation set.

struct RamInstr {
    enum class Op { LoadA, LoadB, AluOp, MoveAB, MoveBA, Load, Store, JumpEq, Halt };
    Op op;
    char alu = '+';  // + - * / for AluOp
    Int c;           // constant for LoadA/LoadB
    int ti = 0, tj = 0;  // JumpEq targets
};

struct RamProgram {
    std::vector<RamInstr> instructions;
    bool full_opset = false;  // false: {+,-}; true: {+,-,*,/}
};

// Text format, one instruction per line:
//   LA c | LB c | AOP op | MAB | MBA | LOAD | STORE | JEQ i j | HALT
// MAB is B:=A, MBA is A:=B, LOAD is A:=R_A, STORE is R_A:=B,
// JEQ i j jumps to i when A=B and to j otherwise. Programs using * or /
// fail to load unless the full opset is enabled.
RamProgram load_ram(const std::string& text, bool full_opset);

struct RamRunResult {
    Int output;  // accumulator A
    unsigned long steps = 0;
    bool halted = false;
    Int a, b;
};

RamRunResult run_ram(const RamProgram& prog, const std::vector<Int>& inputs,
                     unsigned long max_steps);

}  // namespace dode

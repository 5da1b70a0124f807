#pragma once

#include "dode/machines.hpp"

#include <functional>
#include <string>
#include <vector>

namespace dode {
namespace verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// Fixed register machine corpus with per-program input grids and expected
// outputs.
struct CorpusProgram {
    std::string name;
    std::string text;
    std::vector<std::vector<Int>> grid;
    std::function<Int(const std::vector<Int>&)> expected;
};
const std::vector<CorpusProgram>& corpus();

// The acceptance checks. Defaults are the full-scale parameters; smaller
// values are for quick runs.
CheckResult calculus_identities(unsigned long cases_per_identity = 1000);
CheckResult closed_form_vs_naive(unsigned long systems = 500);
CheckResult exhaustive_oracles(unsigned long bound = 4096);
CheckResult step_count_law(unsigned long bound = 4096, unsigned long big_bits = 1000);
CheckResult jump_set_law(unsigned long bound = 16384);
CheckResult compiler_lockstep();
CheckResult sll_end_to_end();
CheckResult negative_controls();
CheckResult minimization(unsigned long cases = 200, unsigned long cap = 1024);

// suite: calculus | ode | funclib | compiler | all. limit > 0 shrinks the
// randomized/exhaustive case counts for quick runs.
std::vector<CheckResult> run_suite(const std::string& suite, unsigned long limit = 0);

}  // namespace verify
}  // namespace dode

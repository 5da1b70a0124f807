#pragma once

#include "dode/int.hpp"

#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace dode {

// sg-polynomial expression trees over +, -, *, sg, integer constants,
// variables and calls to registered auxiliary functions. Nodes are
// immutable and shared; an Expr is a cheap value.
class Expr {
public:
    enum class Kind { Const, Var, Add, Sub, Mul, Sg, Call };

    Expr() : Expr(constant(Int(0))) {}

    static Expr constant(Int v);
    static Expr variable(std::string name);
    static Expr add(Expr a, Expr b);
    static Expr sub(Expr a, Expr b);
    static Expr mul(Expr a, Expr b);
    static Expr sg(Expr a);
    static Expr call(std::string fn, std::vector<Expr> args);

    // cosg(a) spelled as the sg-polynomial (1-sg(a))*(1-sg(0-a)).
    static Expr cosg_of(Expr a);
    // ifz(c,y,z): y if c=0, z otherwise, spelled z + cosg(c)*(y-z).
    static Expr ifz_of(Expr c, Expr y, Expr z);
    // The other branch-on-zero reading: y if c!=0, z otherwise.
    static Expr ifnz_of(Expr c, Expr y, Expr z);

    Kind kind() const { return n_->kind; }
    const Int& value() const { return n_->value; }           // Const
    const std::string& name() const { return n_->name; }     // Var / Call
    const std::vector<Expr>& args() const { return n_->args; }  // children

    std::string str() const;

private:
    struct Node {
        Kind kind;
        Int value;
        std::string name;
        std::vector<Expr> args;
    };
    explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;
};

// An auxiliary function callable from expressions.
struct AuxFunction {
    std::size_t arity;
    std::function<Int(const std::vector<Int>&)> fn;
};

class FunctionRegistry {
public:
    void add(const std::string& name, std::size_t arity,
             std::function<Int(const std::vector<Int>&)> fn) {
        entries_.emplace_back(name, AuxFunction{arity, std::move(fn)});
    }
    const AuxFunction* find(const std::string& name) const {
        for (const auto& [n, f] : entries_)
            if (n == name) return &f;
        return nullptr;
    }

private:
    std::vector<std::pair<std::string, AuxFunction>> entries_;
};

// Variable bindings plus the function table. Kept as a small flat vector;
// solver loops overwrite values in place between steps.
class Env {
public:
    const FunctionRegistry* functions = nullptr;

    void set(const std::string& name, Int v) {
        for (auto& [n, val] : vars_)
            if (n == name) { val = std::move(v); return; }
        vars_.emplace_back(name, std::move(v));
    }
    const Int* find(const std::string& name) const {
        for (const auto& [n, val] : vars_)
            if (n == name) return &val;
        return nullptr;
    }

private:
    std::vector<std::pair<std::string, Int>> vars_;
};

struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(std::size_t off, const std::string& what)
        : std::runtime_error(what + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

struct UnboundVariable : std::runtime_error {
    explicit UnboundVariable(const std::string& name)
        : std::runtime_error("unbound variable: " + name) {}
};

struct UnknownFunction : std::runtime_error {
    explicit UnknownFunction(const std::string& name)
        : std::runtime_error("unknown function: " + name) {}
};

struct NotEssentiallyLinear : std::runtime_error {
    explicit NotEssentiallyLinear(const std::string& what)
        : std::runtime_error("not essentially linear: " + what) {}
};

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := INT | IDENT | IDENT '(' expr (',' expr)* ')'
//           | 'sg' '(' expr ')' | '(' expr ')'
// INT is an optionally '-'-prefixed decimal literal; IDENT is
// [a-zA-Z_][a-zA-Z0-9_]*. ifz(a,b,c) is accepted as sugar.
Expr parse_expr(const std::string& text);

Int eval_expr(const Expr& e, const Env& env);

// Total degree of e over the variable set, by the sg-polynomial rules:
// deg(v)=1 for v in vars, constants and other variables 0, + and - take
// max, * adds, and anything under sg (or an auxiliary call) counts 0.
unsigned degree(const Expr& e, const std::set<std::string>& vars);

bool is_essentially_constant(const Expr& e, const std::set<std::string>& vars);

// Result of rewriting a vector expression u as A*f + B with A, B
// essentially constant in the state variables f.
struct LinearForm {
    std::vector<std::vector<Expr>> A;  // k x k
    std::vector<Expr> B;               // k
};

// Distributes + and - over * and splits each component of u into
// sum_j A[i][j]*f_j + B[i]. The state may still appear inside sg or call
// arguments of A and B (those occurrences are degree 0). Throws
// NotEssentiallyLinear if any distributed term has state-degree >= 2.
LinearForm linear_decompose(const std::vector<Expr>& u,
                            const std::vector<std::string>& state);

}  // namespace dode

#include "dode/expr.hpp"

#include <cctype>

namespace dode {

Expr Expr::constant(Int v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Const;
    n->value = std::move(v);
    return Expr(n);
}

Expr Expr::variable(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->name = std::move(name);
    return Expr(n);
}

Expr Expr::add(Expr a, Expr b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Add;
    n->args = {std::move(a), std::move(b)};
    return Expr(n);
}

Expr Expr::sub(Expr a, Expr b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Sub;
    n->args = {std::move(a), std::move(b)};
    return Expr(n);
}

Expr Expr::mul(Expr a, Expr b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Mul;
    n->args = {std::move(a), std::move(b)};
    return Expr(n);
}

Expr Expr::sg(Expr a) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Sg;
    n->args = {std::move(a)};
    return Expr(n);
}

Expr Expr::call(std::string fn, std::vector<Expr> args) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Call;
    n->name = std::move(fn);
    n->args = std::move(args);
    return Expr(n);
}

Expr Expr::cosg_of(Expr a) {
    Expr one = constant(Int(1));
    Expr zero = constant(Int(0));
    return mul(sub(one, sg(a)), sub(one, sg(sub(zero, a))));
}

Expr Expr::ifz_of(Expr c, Expr y, Expr z) {
    return add(z, mul(cosg_of(std::move(c)), sub(std::move(y), z)));
}

Expr Expr::ifnz_of(Expr c, Expr y, Expr z) {
    return ifz_of(std::move(c), std::move(z), std::move(y));
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    Expr parse() {
        Expr e = expr();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError(pos_, "trailing input");
        return e;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool eat(char c) {
        if (peek() == c) { ++pos_; return true; }
        return false;
    }

    Expr expr() {
        Expr e = term();
        for (;;) {
            char c = peek();
            if (c == '+') { ++pos_; e = Expr::add(e, term()); }
            else if (c == '-') { ++pos_; e = Expr::sub(e, term()); }
            else break;
        }
        return e;
    }

    Expr term() {
        Expr e = factor();
        while (peek() == '*') { ++pos_; e = Expr::mul(e, factor()); }
        return e;
    }

    Expr factor() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            if (!eat(')')) throw ParseError(pos_, "expected ')'");
            return e;
        }
        if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) return integer();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident_factor();
        throw ParseError(pos_, pos_ >= s_.size() ? "unexpected end of input"
                                                 : std::string("unexpected character '") + c + "'");
    }

    Expr integer() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
        std::size_t digits = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == digits) throw ParseError(start, "expected integer literal");
        return Expr::constant(Int::parse(s_.substr(start, pos_ - start)));
    }

    Expr ident_factor() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        std::string name = s_.substr(start, pos_ - start);
        if (peek() != '(') return Expr::variable(name);
        ++pos_;  // '('
        std::vector<Expr> args;
        args.push_back(expr());
        while (eat(',')) args.push_back(expr());
        if (!eat(')')) throw ParseError(pos_, "expected ')' or ','");
        if (name == "sg") {
            if (args.size() != 1) throw ParseError(start, "sg takes one argument");
            return Expr::sg(args[0]);
        }
        if (name == "ifz") {
            if (args.size() != 3) throw ParseError(start, "ifz takes three arguments");
            return Expr::ifz_of(args[0], args[1], args[2]);
        }
        return Expr::call(name, std::move(args));
    }
};

}  // namespace

Expr parse_expr(const std::string& text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Printer. Output re-parses to the same tree.

namespace {

// Precedence levels: 0 additive, 1 multiplicative, 2 atom.
void print(const Expr& e, int parent_level, std::string& out) {
    switch (e.kind()) {
        case Expr::Kind::Const: {
            // A negative literal is a valid factor, so no parens needed.
            out += e.value().str();
            return;
        }
        case Expr::Kind::Var:
            out += e.name();
            return;
        case Expr::Kind::Sg:
            out += "sg(";
            print(e.args()[0], 0, out);
            out += ')';
            return;
        case Expr::Kind::Call: {
            out += e.name();
            out += '(';
            for (std::size_t i = 0; i < e.args().size(); ++i) {
                if (i) out += ',';
                print(e.args()[i], 0, out);
            }
            out += ')';
            return;
        }
        case Expr::Kind::Add:
        case Expr::Kind::Sub: {
            bool parens = parent_level >= 1;
            if (parens) out += '(';
            print(e.args()[0], 0, out);
            out += e.kind() == Expr::Kind::Add ? '+' : '-';
            // Right child of '-' binds tighter: a-(b+c) must keep parens.
            print(e.args()[1], 1, out);
            if (parens) out += ')';
            return;
        }
        case Expr::Kind::Mul: {
            bool parens = parent_level >= 2;
            if (parens) out += '(';
            print(e.args()[0], 1, out);
            out += '*';
            print(e.args()[1], 2, out);
            if (parens) out += ')';
            return;
        }
    }
}

}  // namespace

std::string Expr::str() const {
    std::string out;
    print(*this, 0, out);
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation

Int eval_expr(const Expr& e, const Env& env) {
    switch (e.kind()) {
        case Expr::Kind::Const:
            return e.value();
        case Expr::Kind::Var: {
            const Int* v = env.find(e.name());
            if (!v) throw UnboundVariable(e.name());
            return *v;
        }
        case Expr::Kind::Add:
            return eval_expr(e.args()[0], env) + eval_expr(e.args()[1], env);
        case Expr::Kind::Sub:
            return eval_expr(e.args()[0], env) - eval_expr(e.args()[1], env);
        case Expr::Kind::Mul:
            return eval_expr(e.args()[0], env) * eval_expr(e.args()[1], env);
        case Expr::Kind::Sg:
            return sg(eval_expr(e.args()[0], env));
        case Expr::Kind::Call: {
            const AuxFunction* f = env.functions ? env.functions->find(e.name()) : nullptr;
            if (!f) throw UnknownFunction(e.name());
            std::vector<Int> args;
            args.reserve(e.args().size());
            for (const Expr& a : e.args()) args.push_back(eval_expr(a, env));
            if (f->arity != args.size())
                throw std::invalid_argument("function " + e.name() + " expects " +
                                            std::to_string(f->arity) + " arguments, got " +
                                            std::to_string(args.size()));
            return f->fn(args);
        }
    }
    throw std::logic_error("bad expression node");
}

// ---------------------------------------------------------------------------
// Degree and essential linearity

unsigned degree(const Expr& e, const std::set<std::string>& vars) {
    switch (e.kind()) {
        case Expr::Kind::Const:
            return 0;
        case Expr::Kind::Var:
            return vars.count(e.name()) ? 1u : 0u;
        case Expr::Kind::Add:
        case Expr::Kind::Sub:
            return std::max(degree(e.args()[0], vars), degree(e.args()[1], vars));
        case Expr::Kind::Mul:
            return degree(e.args()[0], vars) + degree(e.args()[1], vars);
        case Expr::Kind::Sg:
        case Expr::Kind::Call:
            return 0;
    }
    throw std::logic_error("bad expression node");
}

bool is_essentially_constant(const Expr& e, const std::set<std::string>& vars) {
    return degree(e, vars) == 0;
}

namespace {

// A product of atomic factors with a sign; atoms are Const, Var, Sg or Call
// nodes, so the state-degree of a term is just its count of bare state vars.
struct Term {
    int sign = 1;
    std::vector<Expr> factors;
};

void distribute(const Expr& e, int sign, std::vector<Term>& out) {
    switch (e.kind()) {
        case Expr::Kind::Add:
            distribute(e.args()[0], sign, out);
            distribute(e.args()[1], sign, out);
            return;
        case Expr::Kind::Sub:
            distribute(e.args()[0], sign, out);
            distribute(e.args()[1], -sign, out);
            return;
        case Expr::Kind::Mul: {
            std::vector<Term> left, right;
            distribute(e.args()[0], sign, left);
            distribute(e.args()[1], 1, right);
            for (const Term& l : left)
                for (const Term& r : right) {
                    Term t;
                    t.sign = l.sign * r.sign;
                    t.factors = l.factors;
                    t.factors.insert(t.factors.end(), r.factors.begin(), r.factors.end());
                    out.push_back(std::move(t));
                }
            return;
        }
        default:
            out.push_back(Term{sign, {e}});
            return;
    }
}

Expr term_rest(const Term& t, std::size_t skip_index) {
    Expr acc = Expr::constant(Int(t.sign));
    bool have = false;
    for (std::size_t i = 0; i < t.factors.size(); ++i) {
        if (i == skip_index) continue;
        if (!have && t.sign == 1) { acc = t.factors[i]; have = true; }
        else acc = Expr::mul(acc, t.factors[i]);
    }
    if (!have && t.sign == 1) return Expr::constant(Int(1));
    return acc;
}

Expr sum_terms(const std::vector<Expr>& parts) {
    if (parts.empty()) return Expr::constant(Int(0));
    Expr acc = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) acc = Expr::add(acc, parts[i]);
    return acc;
}

}  // namespace

LinearForm linear_decompose(const std::vector<Expr>& u,
                            const std::vector<std::string>& state) {
    LinearForm lf;
    lf.A.assign(u.size(), std::vector<Expr>(state.size(), Expr::constant(Int(0))));
    lf.B.assign(u.size(), Expr::constant(Int(0)));

    for (std::size_t i = 0; i < u.size(); ++i) {
        std::vector<Term> terms;
        distribute(u[i], 1, terms);

        std::vector<std::vector<Expr>> a_parts(state.size());
        std::vector<Expr> b_parts;

        for (const Term& t : terms) {
            std::size_t hits = 0, hit_factor = 0, hit_state = 0;
            for (std::size_t fi = 0; fi < t.factors.size(); ++fi) {
                const Expr& f = t.factors[fi];
                if (f.kind() != Expr::Kind::Var) continue;
                for (std::size_t si = 0; si < state.size(); ++si) {
                    if (f.name() == state[si]) {
                        ++hits;
                        hit_factor = fi;
                        hit_state = si;
                        break;
                    }
                }
            }
            if (hits >= 2)
                throw NotEssentiallyLinear("component " + std::to_string(i) +
                                           " has a term of state-degree " + std::to_string(hits));
            if (hits == 1)
                a_parts[hit_state].push_back(term_rest(t, hit_factor));
            else
                b_parts.push_back(term_rest(t, t.factors.size()));
        }

        for (std::size_t si = 0; si < state.size(); ++si)
            lf.A[i][si] = sum_terms(a_parts[si]);
        lf.B[i] = sum_terms(b_parts);
    }
    return lf;
}

}  // namespace dode

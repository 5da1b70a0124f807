#include "dode/ode.hpp"

#include <algorithm>
#include <sstream>

namespace dode {

LSpec length_lspec() {
    LSpec s;
    s.name = "len";
    s.L = [](const Int& x, const Env&) { return length(x); };
    s.enumerator = LSpecEnumerator{
        [](unsigned long j, const Env&) { return Int::pow2(j) - Int(1); },
        [](const Int& x, const Env&) { return x.bit_length(); },
    };
    return s;
}

LSpec length_squared_lspec() {
    LSpec s;
    s.name = "lensq";
    s.L = [](const Int& x, const Env&) {
        Int l = length(x);
        return l * l;
    };
    // len^2 changes exactly where len does.
    s.enumerator = LSpecEnumerator{
        [](unsigned long j, const Env&) { return Int::pow2(j) - Int(1); },
        [](const Int& x, const Env&) { return x.bit_length(); },
    };
    return s;
}

const std::map<std::string, LSpec>& builtin_lspecs() {
    static const std::map<std::string, LSpec> specs = {
        {"len", length_lspec()},
        {"lensq", length_squared_lspec()},
    };
    return specs;
}

namespace {

Env make_env(const OdeSystem& sys, const std::vector<Int>& params,
             const FunctionRegistry* registry) {
    if (params.size() != sys.params.size())
        throw DimensionMismatch("system " + sys.name + " takes " +
                                std::to_string(sys.params.size()) + " parameters, got " +
                                std::to_string(params.size()));
    Env env;
    env.functions = registry;
    for (std::size_t i = 0; i < params.size(); ++i) env.set(sys.params[i], params[i]);
    return env;
}

std::vector<Int> eval_init(const OdeSystem& sys, const Env& env) {
    std::vector<Int> state;
    state.reserve(sys.init.size());
    for (const Expr& e : sys.init) state.push_back(eval_expr(e, env));
    return state;
}

void track_bits(const std::vector<Int>& state, unsigned long& max_bits) {
    for (const Int& v : state) max_bits = std::max(max_bits, v.bit_length());
}

void check_guard(const std::vector<Int>& state, unsigned long step,
                 const std::optional<unsigned long>& guard_bits) {
    if (!guard_bits) return;
    for (const Int& v : state)
        if (v.bit_length() > *guard_bits) throw GrowthExceeded(step, v.bit_length());
}

bool uses_lspec(const OdeSystem& sys) {
    return sys.kind == OdeKind::LOde || sys.kind == OdeKind::LinearLengthOde;
}

}  // namespace

void validate_system(const OdeSystem& sys) {
    std::size_t k = sys.state.size();
    if (sys.init.size() != k || sys.rhs.size() != k)
        throw DimensionMismatch("system " + sys.name + ": state/init/deriv sizes disagree");
    if (sys.kind == OdeKind::Bounded && sys.bounds.size() != k)
        throw DimensionMismatch("system " + sys.name + ": bound count must match state");
    if (sys.kind != OdeKind::Bounded && !sys.bounds.empty())
        throw DimensionMismatch("system " + sys.name + ": bounds only allowed on Bounded kind");
    if (uses_lspec(sys) && !sys.lspec)
        throw std::invalid_argument("system " + sys.name + ": L-ODE kind needs an L-spec");
    if (sys.kind == OdeKind::LinearLengthOde || sys.kind == OdeKind::Linear)
        linear_decompose(sys.rhs, sys.state);  // throws NotEssentiallyLinear
}

EvalReport solve_naive(const OdeSystem& sys, const Int& x, const std::vector<Int>& params,
                       const FunctionRegistry* registry,
                       std::optional<unsigned long> guard_bits) {
    if (x.is_negative()) throw std::invalid_argument("solve_naive: x must be non-negative");
    unsigned long n = x.to_ulong();

    Env env = make_env(sys, params, registry);
    std::vector<Int> state = eval_init(sys, env);

    EvalReport rep;
    track_bits(state, rep.max_bits);
    check_guard(state, 0, guard_bits);

    bool lode = uses_lspec(sys);
    Int l_cur = lode ? sys.lspec->L(Int(0), env) : Int(0);

    auto check_bound = [&](unsigned long at) {
        if (sys.kind != OdeKind::Bounded) return;
        env.set(sys.deriv_var, Int(at));
        for (std::size_t i = 0; i < state.size(); ++i)
            if (state[i] > eval_expr(sys.bounds[i], env)) throw BoundViolated(at);
    };
    check_bound(0);

    std::vector<Int> deriv(state.size());
    for (unsigned long step = 0; step < n; ++step) {
        env.set(sys.deriv_var, Int(step));
        for (std::size_t i = 0; i < state.size(); ++i) env.set(sys.state[i], state[i]);
        for (std::size_t i = 0; i < state.size(); ++i) deriv[i] = eval_expr(sys.rhs[i], env);
        if (lode) {
            Int l_next = sys.lspec->L(Int(step + 1), env);
            Int dl = l_next - l_cur;
            l_cur = l_next;
            if (!dl.is_zero())
                for (std::size_t i = 0; i < state.size(); ++i) state[i] += dl * deriv[i];
        } else {
            for (std::size_t i = 0; i < state.size(); ++i) state[i] += deriv[i];
        }
        ++rep.steps;
        track_bits(state, rep.max_bits);
        check_guard(state, step + 1, guard_bits);  // report the time of the violating value
        check_bound(step + 1);
    }

    rep.values = std::move(state);
    return rep;
}

// ---------------------------------------------------------------------------
// Closed form

namespace {

using Mat = std::vector<std::vector<Int>>;

Mat identity_mat(std::size_t k) {
    Mat m(k, std::vector<Int>(k, Int(0)));
    for (std::size_t i = 0; i < k; ++i) m[i][i] = Int(1);
    return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    std::size_t k = a.size();
    Mat r(k, std::vector<Int>(k, Int(0)));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t l = 0; l < k; ++l)
            for (std::size_t j = 0; j < k; ++j) r[i][j] += a[i][l] * b[l][j];
    return r;
}

std::vector<Int> mat_vec(const Mat& a, const std::vector<Int>& v) {
    std::vector<Int> r(a.size(), Int(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
    return r;
}

}  // namespace

std::vector<Int> solve_linear_closed_form(const std::vector<std::vector<Expr>>& A,
                                          const std::vector<Expr>& B,
                                          const std::vector<Expr>& G, const Int& x,
                                          const std::vector<std::string>& param_names,
                                          const std::vector<Int>& params,
                                          const FunctionRegistry* registry,
                                          const std::string& deriv_var) {
    std::size_t k = G.size();
    if (A.size() != k || B.size() != k)
        throw DimensionMismatch("closed form: A/B/G sizes disagree");
    for (const auto& row : A)
        if (row.size() != k) throw DimensionMismatch("closed form: A is not square");
    if (param_names.size() != params.size())
        throw DimensionMismatch("closed form: parameter names/values mismatch");

    Env env;
    env.functions = registry;
    for (std::size_t i = 0; i < params.size(); ++i) env.set(param_names[i], params[i]);

    unsigned long n = x.to_ulong();

    // one_plus_A(t) = I + A(t); A depends on the derivation variable and
    // params only.
    auto one_plus_A = [&](unsigned long t) {
        env.set(deriv_var, Int(t));
        Mat m(k, std::vector<Int>(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                m[i][j] = eval_expr(A[i][j], env);
                if (i == j) m[i][j] += Int(1);
            }
        return m;
    };
    auto B_at = [&](unsigned long t) {
        env.set(deriv_var, Int(t));
        std::vector<Int> v(k);
        for (std::size_t i = 0; i < k; ++i) v[i] = eval_expr(B[i], env);
        return v;
    };

    std::vector<Int> g(k);
    for (std::size_t i = 0; i < k; ++i) g[i] = eval_expr(G[i], env);

    // Suffix products P[u] = (1+A(x-1)) ... (1+A(u)), P[x] = I; the falling
    // exponential of int_u^x A with the product ordered by decreasing t.
    std::vector<Mat> suffix(n + 1);
    suffix[n] = identity_mat(k);
    for (unsigned long u = n; u-- > 0;) suffix[u] = mat_mul(suffix[u + 1], one_plus_A(u));

    std::vector<Int> f = mat_vec(suffix[0], g);
    for (unsigned long u = 0; u < n; ++u) {
        std::vector<Int> bu = mat_vec(suffix[u + 1], B_at(u));
        for (std::size_t i = 0; i < k; ++i) f[i] += bu[i];
    }
    return f;
}

// ---------------------------------------------------------------------------
// Jump sets and the fast paths

std::vector<Int> jump_set(const LSpec& lspec, const Int& x, const Env& params) {
    if (x.is_negative()) throw std::invalid_argument("jump_set: x must be non-negative");

    auto scan = [&](const Int& hi) {
        if (!hi.fits_ulong())
            throw std::invalid_argument(
                "jump_set: scanning to " + hi.str() + " is not feasible; register an enumerator");
        std::vector<Int> out;
        Int prev = lspec.L(Int(0), params);
        for (Int i(0); i < hi; i += Int(1)) {
            Int next = lspec.L(i + Int(1), params);
            if (next != prev) out.push_back(i);
            prev = next;
        }
        return out;
    };

    if (!lspec.enumerator) return scan(x);

    unsigned long n = lspec.enumerator->count(x, params);
    std::vector<Int> jumps;
    jumps.reserve(n);
    for (unsigned long j = 0; j < n; ++j) {
        Int a = lspec.enumerator->alpha(j, params);
        if (a >= x) break;  // truncate to < x
        if (!jumps.empty() && a <= jumps.back())
            throw EnumeratorMismatch("alpha is not increasing at j=" + std::to_string(j));
        jumps.push_back(a);
    }

    // Validate against a scan of a bounded prefix sample.
    Int prefix = x < Int(64) ? x : Int(64);
    std::vector<Int> scanned = scan(prefix);
    std::size_t i = 0;
    for (; i < jumps.size() && jumps[i] < prefix; ++i) {
        if (i >= scanned.size() || scanned[i] != jumps[i])
            throw EnumeratorMismatch("at jump index " + std::to_string(i));
    }
    if (i < scanned.size())
        throw EnumeratorMismatch("enumerator missed jump at " + scanned[i].str());
    return jumps;
}

EvalReport solve_lode_fast(const OdeSystem& sys, const Int& x, const std::vector<Int>& params,
                           const FunctionRegistry* registry) {
    if (!sys.lspec) throw std::invalid_argument("solve_lode_fast: system has no L-spec");

    Env env = make_env(sys, params, registry);
    std::vector<Int> state = eval_init(sys, env);

    EvalReport rep;
    track_bits(state, rep.max_bits);

    std::vector<Int> jumps = jump_set(*sys.lspec, x, env);
    std::vector<Int> deriv(state.size());
    for (const Int& a : jumps) {
        Int dl = sys.lspec->L(a + Int(1), env) - sys.lspec->L(a, env);
        env.set(sys.deriv_var, a);
        for (std::size_t i = 0; i < state.size(); ++i) env.set(sys.state[i], state[i]);
        for (std::size_t i = 0; i < state.size(); ++i) deriv[i] = eval_expr(sys.rhs[i], env);
        for (std::size_t i = 0; i < state.size(); ++i) state[i] += dl * deriv[i];
        ++rep.steps;
        track_bits(state, rep.max_bits);
    }

    rep.values = std::move(state);
    return rep;
}

EvalReport solve_linear_fast(const OdeSystem& sys, unsigned long T,
                             const std::vector<Int>& params, const FunctionRegistry* registry,
                             std::optional<unsigned long> guard_bits) {
    LinearForm lf = linear_decompose(sys.rhs, sys.state);

    if (sys.lspec && !sys.lspec->enumerator)
        throw std::invalid_argument("solve_linear_fast: L-spec has no jump enumerator");

    Env env = make_env(sys, params, registry);
    std::vector<Int> state = eval_init(sys, env);
    std::size_t k = state.size();

    EvalReport rep;
    track_bits(state, rep.max_bits);
    check_guard(state, 0, guard_bits);

    std::vector<Int> next(k);
    for (unsigned long t = 0; t < T; ++t) {
        Int dl(1);
        if (sys.lspec) {
            Int a = sys.lspec->enumerator->alpha(t, env);
            dl = sys.lspec->L(a + Int(1), env) - sys.lspec->L(a, env);
            env.set(sys.deriv_var, a);
        } else {
            env.set(sys.deriv_var, Int(t));
        }
        for (std::size_t i = 0; i < k; ++i) env.set(sys.state[i], state[i]);

        // f <- f + dL * (A f + B), with A and B read at the current state.
        for (std::size_t i = 0; i < k; ++i) {
            Int acc = eval_expr(lf.B[i], env);
            for (std::size_t j = 0; j < k; ++j) acc += eval_expr(lf.A[i][j], env) * state[j];
            next[i] = state[i] + dl * acc;
        }
        state.swap(next);
        ++rep.steps;
        track_bits(state, rep.max_bits);
        check_guard(state, t + 1, guard_bits);
    }

    rep.values = std::move(state);
    return rep;
}

// ---------------------------------------------------------------------------
// System file format

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

OdeSystem parse_system(const std::string& text, const std::map<std::string, LSpec>& lspecs) {
    OdeSystem sys;
    std::map<std::string, Expr> init_map, rhs_map, bound_map;
    bool saw_system = false, saw_wrt = false;
    bool wrt_length = false, wrt_named = false;

    std::istringstream is(text);
    std::string raw;
    std::size_t offset = 0;
    while (std::getline(is, raw)) {
        std::size_t line_off = offset;
        offset += raw.size() + 1;

        std::string line = raw;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            std::string comment = trim(line.substr(hash + 1));
            if (comment.rfind("output:", 0) == 0) sys.output = trim(comment.substr(7));
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;

        auto err = [&](const std::string& what) { return ParseError(line_off, what); };

        std::size_t sp = line.find_first_of(" \t");
        std::string keyword = sp == std::string::npos ? line : line.substr(0, sp);
        std::string rest = sp == std::string::npos ? "" : trim(line.substr(sp));

        if (keyword == "system") {
            if (saw_system) throw err("duplicate system line");
            if (rest.empty()) throw err("system needs a name");
            sys.name = rest;
            saw_system = true;
        } else if (keyword == "state") {
            for (const std::string& n : split_ws(rest)) sys.state.push_back(n);
            if (sys.state.empty()) throw err("state needs at least one name");
        } else if (keyword == "param") {
            for (const std::string& n : split_ws(rest)) sys.params.push_back(n);
        } else if (keyword == "wrt") {
            if (saw_wrt) throw err("duplicate wrt line");
            saw_wrt = true;
            if (rest == "x") {
                sys.deriv_var = "x";
            } else if (rest == "len(x)") {
                sys.deriv_var = "x";
                sys.lspec = lspecs.at("len");
                wrt_length = true;
            } else if (rest.rfind("L=", 0) == 0) {
                std::string name = trim(rest.substr(2));
                auto it = lspecs.find(name);
                if (it == lspecs.end()) throw err("unknown L-spec: " + name);
                sys.deriv_var = "x";
                sys.lspec = it->second;
                wrt_named = true;
            } else {
                throw err("wrt must be one of: x, len(x), L=IDENT");
            }
        } else if (keyword == "init" || keyword == "deriv" || keyword == "bound") {
            std::size_t eq = rest.find('=');
            if (eq == std::string::npos) throw err(keyword + " needs NAME = EXPR");
            std::string var = trim(rest.substr(0, eq));
            std::string body = trim(rest.substr(eq + 1));
            if (std::find(sys.state.begin(), sys.state.end(), var) == sys.state.end())
                throw err(keyword + " names unknown state variable: " + var);
            Expr e;
            try {
                e = parse_expr(body);
            } catch (const ParseError& pe) {
                throw ParseError(line_off + (raw.size() - body.size()) + pe.offset, pe.what());
            }
            auto& target = keyword == "init" ? init_map : keyword == "deriv" ? rhs_map : bound_map;
            if (!target.emplace(var, e).second) throw err("duplicate " + keyword + " for " + var);
        } else {
            throw err("unknown directive: " + keyword);
        }
    }

    if (!saw_system) throw ParseError(0, "missing system line");
    if (sys.state.empty()) throw ParseError(0, "missing state line");
    if (!saw_wrt) throw ParseError(0, "missing wrt line");
    for (const std::string& s : sys.state) {
        if (!init_map.count(s)) throw ParseError(0, "missing init for " + s);
        if (!rhs_map.count(s)) throw ParseError(0, "missing deriv for " + s);
        sys.init.push_back(init_map.at(s));
        sys.rhs.push_back(rhs_map.at(s));
    }
    if (!bound_map.empty()) {
        for (const std::string& s : sys.state) {
            if (!bound_map.count(s)) throw ParseError(0, "missing bound for " + s);
            sys.bounds.push_back(bound_map.at(s));
        }
    }

    bool linear = true;
    try {
        linear_decompose(sys.rhs, sys.state);
    } catch (const NotEssentiallyLinear&) {
        linear = false;
    }
    if (!sys.bounds.empty()) sys.kind = OdeKind::Bounded;
    else if (wrt_length) sys.kind = linear ? OdeKind::LinearLengthOde : OdeKind::LOde;
    else if (wrt_named) sys.kind = OdeKind::LOde;
    else sys.kind = linear ? OdeKind::Linear : OdeKind::Plain;

    validate_system(sys);
    return sys;
}

std::string print_system(const OdeSystem& sys, const std::vector<std::string>& header_comments) {
    std::ostringstream os;
    for (const std::string& c : header_comments) os << "# " << c << "\n";
    if (sys.output) os << "# output: " << *sys.output << "\n";
    os << "system " << sys.name << "\n";
    os << "state";
    for (const std::string& s : sys.state) os << ' ' << s;
    os << "\n";
    if (!sys.params.empty()) {
        os << "param";
        for (const std::string& p : sys.params) os << ' ' << p;
        os << "\n";
    }
    if (!sys.lspec) os << "wrt x\n";
    else if (sys.lspec->name == "len") os << "wrt len(x)\n";
    else os << "wrt L=" << sys.lspec->name << "\n";
    for (std::size_t i = 0; i < sys.state.size(); ++i)
        os << "init " << sys.state[i] << " = " << sys.init[i].str() << "\n";
    for (std::size_t i = 0; i < sys.state.size(); ++i)
        os << "deriv " << sys.state[i] << " = " << sys.rhs[i].str() << "\n";
    for (std::size_t i = 0; i < sys.bounds.size(); ++i)
        os << "bound " << sys.state[i] << " = " << sys.bounds[i].str() << "\n";
    return os.str();
}

}  // namespace dode

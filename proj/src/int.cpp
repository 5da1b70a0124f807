#include "dode/int.hpp"

namespace dode {

Int Int::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty integer literal");
    std::size_t i = (text[0] == '-') ? 1 : 0;
    if (i == text.size()) throw std::invalid_argument("bad integer literal: " + text);
    for (; i < text.size(); ++i)
        if (text[i] < '0' || text[i] > '9')
            throw std::invalid_argument("bad integer literal: " + text);
    return Int(mpz_class(text, 10));
}

Int Int::fdiv(const Int& d) const {
    if (d.is_zero()) throw DivByZero();
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_mpz_t(), d.v_.get_mpz_t());
    return Int(q);
}

Int Int::fmod(const Int& d) const {
    if (d.is_zero()) throw DivByZero();
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), v_.get_mpz_t(), d.v_.get_mpz_t());
    return Int(r);
}

Int Int::tdiv(const Int& d) const {
    if (d.is_zero()) throw DivByZero();
    mpz_class q;
    mpz_tdiv_q(q.get_mpz_t(), v_.get_mpz_t(), d.v_.get_mpz_t());
    return Int(q);
}

unsigned long Int::to_ulong() const {
    if (!v_.fits_ulong_p()) throw std::overflow_error("value does not fit an unsigned long: " + str());
    return v_.get_ui();
}

long Int::to_long() const {
    if (!v_.fits_slong_p()) throw std::overflow_error("value does not fit a long: " + str());
    return v_.get_si();
}

Int length(const Int& x) { return Int(x.bit_length()); }

Int sg(const Int& x) { return Int(x.sgn() > 0 ? 1 : 0); }

Int cosg(const Int& x) { return Int(x.is_zero() ? 1 : 0); }

Int ifz(const Int& c, const Int& y, const Int& z) { return c.is_zero() ? y : z; }

Int ifnz(const Int& c, const Int& y, const Int& z) { return c.is_zero() ? z : y; }

std::pair<int, Int> to_signpair(const Int& x) {
    return {x.is_negative() ? 1 : 0, x.abs()};
}

Int from_signpair(int s, const Int& n) {
    if (s != 0 && s != 1) throw std::invalid_argument("sign must be 0 or 1");
    if (n.is_negative()) throw std::invalid_argument("magnitude must be non-negative");
    return s == 1 ? -n : n;
}

}  // namespace dode

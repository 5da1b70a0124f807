#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace dode {

// Exact signed integer. Every value in the engine is one of these; no
// operation ever rounds or overflows.
class Int {
public:
    Int() : v_(0) {}
    Int(int x) : v_(x) {}
    Int(long x) : v_(x) {}
    Int(unsigned long x) : v_(x) {}
    Int(long long x) : v_(static_cast<long>(x)) {}
    explicit Int(mpz_class v) : v_(std::move(v)) {}

    // Parses an optionally '-'-prefixed decimal literal.
    static Int parse(const std::string& text);

    const mpz_class& raw() const { return v_; }

    Int operator+(const Int& o) const { return Int(mpz_class(v_ + o.v_)); }
    Int operator-(const Int& o) const { return Int(mpz_class(v_ - o.v_)); }
    Int operator*(const Int& o) const { return Int(mpz_class(v_ * o.v_)); }
    Int operator-() const { return Int(mpz_class(-v_)); }

    Int& operator+=(const Int& o) { v_ += o.v_; return *this; }
    Int& operator-=(const Int& o) { v_ -= o.v_; return *this; }
    Int& operator*=(const Int& o) { v_ *= o.v_; return *this; }

    bool operator==(const Int& o) const { return v_ == o.v_; }
    bool operator!=(const Int& o) const { return v_ != o.v_; }
    bool operator<(const Int& o) const { return v_ < o.v_; }
    bool operator<=(const Int& o) const { return v_ <= o.v_; }
    bool operator>(const Int& o) const { return v_ > o.v_; }
    bool operator>=(const Int& o) const { return v_ >= o.v_; }

    bool is_zero() const { return sgn() == 0; }
    bool is_negative() const { return sgn() < 0; }
    int sgn() const { return mpz_sgn(v_.get_mpz_t()); }

    Int abs() const { return Int(mpz_class(::abs(v_))); }

    // Floor division/modulo (quotient rounded toward -inf). Division by
    // zero is a caller error and throws.
    Int fdiv(const Int& d) const;
    Int fmod(const Int& d) const;
    // Truncating division (rounded toward zero), the RAM machine flavor.
    Int tdiv(const Int& d) const;

    // Number of bits of |x|, with length(0) = 0.
    unsigned long bit_length() const {
        if (is_zero()) return 0;
        return mpz_sizeinbase(v_.get_mpz_t(), 2);
    }

    static Int pow2(unsigned long k) {
        mpz_class r;
        mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
        return Int(r);
    }

    Int shifted_left(unsigned long k) const {
        mpz_class r;
        mpz_mul_2exp(r.get_mpz_t(), v_.get_mpz_t(), k);
        return Int(r);
    }

    bool fits_ulong() const { return v_.fits_ulong_p(); }
    unsigned long to_ulong() const;
    long to_long() const;

    std::string str() const { return v_.get_str(); }

private:
    mpz_class v_;
};

// Binary length, as a value of the engine: length(0)=0, else floor(log2|x|)+1.
Int length(const Int& x);

// sg(x) = 1 if x > 0, else 0.
Int sg(const Int& x);

// cosg(x) = 1 if x = 0, else 0.  Equals (1-sg(x))*(1-sg(-x)).
Int cosg(const Int& x);

// Branch on zero, first-branch reading: y if c = 0, z otherwise.
Int ifz(const Int& c, const Int& y, const Int& z);

// The other reading: z if c = 0, y otherwise.
Int ifnz(const Int& c, const Int& y, const Int& z);

// Sign-magnitude view {0,1} x N of an integer, used only by tests and
// conversions. 0 maps to (0,0).
std::pair<int, Int> to_signpair(const Int& x);
Int from_signpair(int s, const Int& n);

struct DivByZero : std::runtime_error {
    DivByZero() : std::runtime_error("division by zero") {}
};

}  // namespace dode

#pragma once
#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>

namespace semiinf {

// Gaussian rational re + im*i.
class Scalar {
public:
    mpq_class re, im;

    Scalar() : re(0), im(0) {}
    Scalar(long v) : re(v), im(0) {}
    Scalar(int v) : re(v), im(0) {}
    Scalar(const mpq_class& r) : re(r), im(0) {}
    Scalar(const mpq_class& r, const mpq_class& i) : re(r), im(i) {}
    static Scalar frac(long p, long q) { mpq_class v(p, q); v.canonicalize(); return Scalar(v); }
    static Scalar I() { return Scalar(0, 1); }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    bool is_one() const { return re == 1 && sgn(im) == 0; }

    Scalar conj() const { return Scalar(re, -im); }
    mpq_class norm2() const { return re * re + im * im; }
    Scalar inv() const;

    Scalar& operator+=(const Scalar& o) { re += o.re; im += o.im; return *this; }
    Scalar& operator-=(const Scalar& o) { re -= o.re; im -= o.im; return *this; }
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o) { return *this *= o.inv(); }
    Scalar operator-() const { return Scalar(-re, -im); }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // a += b*c without temporaries for the real-only case
    void add_mul(const Scalar& b, const Scalar& c);

    std::string str() const;
    static Scalar parse(const std::string& s);  // "p/q+r/s*i", "i", "-3/2*i", ...
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);
std::string q_str(const mpq_class& q);

// i^k for integer k
Scalar i_pow(long k);

// half-integers stored as twice their value
std::string half_str(int twice);
int parse_half(const std::string& s);  // "3/2" -> 3, "1" -> 2

}  // namespace semiinf

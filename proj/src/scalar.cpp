#include "semiinf/scalar.hpp"

#include <cctype>
#include <stdexcept>

namespace semiinf {

Scalar Scalar::inv() const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (is_real()) return Scalar(1 / re);
    mpq_class n = norm2();
    return Scalar(re / n, -im / n);
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (is_real() && o.is_real()) {
        re *= o.re;
        return *this;
    }
    mpq_class r = re * o.re - im * o.im;
    mpq_class i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

void Scalar::add_mul(const Scalar& b, const Scalar& c) {
    if (b.is_real() && c.is_real()) {
        re += b.re * c.re;
        return;
    }
    re += b.re * c.re - b.im * c.im;
    im += b.re * c.im + b.im * c.re;
}

std::string q_str(const mpq_class& q) { return q.get_str(); }

std::string Scalar::str() const {
    if (sgn(im) == 0) return re.get_str();
    std::string ipart = im.get_str() + "*i";
    if (sgn(re) == 0) return ipart;
    if (sgn(im) > 0) return re.get_str() + "+" + ipart;
    return re.get_str() + ipart;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

namespace {
mpq_class parse_q(const std::string& t) {
    if (t.empty()) throw std::invalid_argument("empty rational");
    for (char c : t)
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
            throw std::invalid_argument("bad rational '" + t + "'");
    std::string u = t[0] == '+' ? t.substr(1) : t;
    mpq_class q;
    if (q.set_str(u, 10) != 0) throw std::invalid_argument("bad rational '" + t + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + t + "'");
    q.canonicalize();
    return q;
}

// one signed term: "3/2", "-i", "2*i", "1/2*i"
void add_term(Scalar& acc, const std::string& t) {
    if (t.empty()) throw std::invalid_argument("empty term");
    if (t.back() == 'i') {
        std::string c = t.substr(0, t.size() - 1);
        if (!c.empty() && c.back() == '*') c.pop_back();
        mpq_class v;
        if (c.empty() || c == "+") v = 1;
        else if (c == "-") v = -1;
        else v = parse_q(c);
        acc.im += v;
    } else {
        acc.re += parse_q(t);
    }
}
}  // namespace

Scalar Scalar::parse(const std::string& s0) {
    std::string s;
    for (char c : s0)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty scalar");
    Scalar acc;
    size_t start = 0;
    for (size_t k = 1; k <= s.size(); ++k) {
        if (k == s.size() || ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/')) {
            add_term(acc, s.substr(start, k - start));
            start = k;
        }
    }
    return acc;
}

Scalar i_pow(long k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return Scalar(1);
        case 1: return Scalar(0, 1);
        case 2: return Scalar(-1);
        default: return Scalar(0, -1);
    }
}

std::string half_str(int twice) {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
}

int parse_half(const std::string& s) {
    mpq_class q(s);
    q.canonicalize();
    mpq_class t = 2 * q;
    if (t.get_den() != 1) throw std::invalid_argument("not a half-integer: " + s);
    return static_cast<int>(t.get_num().get_si());
}

}  // namespace semiinf

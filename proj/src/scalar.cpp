#include "plab/scalar.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

#include "plab/errors.hpp"

namespace plab {

Scalar::Scalar(long num, long den) : re_(num, den), im_(0) {
    if (den == 0) throw SingularError("rational with zero denominator");
    re_.canonicalize();
}

Scalar Scalar::inv() const {
    if (is_zero()) throw SingularError("inverse of zero scalar");
    mpq_class n = norm();
    return Scalar(re_ / n, -im_ / n);
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

namespace {

std::string rat_str(const mpq_class& q) { return q.get_str(); }

// signed rational with explicit '+' when nonnegative, for the middle of a sum
std::string signed_rat_str(const mpq_class& q) {
    return (q < 0 ? "" : "+") + q.get_str();
}

} // namespace

std::string Scalar::str() const {
    if (im_ == 0) return rat_str(re_);
    std::string tail = signed_rat_str(im_) + "*i";
    if (re_ == 0) return im_ < 0 ? tail : tail.substr(1);
    return rat_str(re_) + tail;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

namespace {

struct Cursor {
    const std::string& s;
    size_t p = 0;
    void skip_ws() { while (p < s.size() && std::isspace((unsigned char)s[p])) ++p; }
    bool done() { skip_ws(); return p >= s.size(); }
    char peek() { skip_ws(); return p < s.size() ? s[p] : '\0'; }
};

// [sign] digits [/ digits]   — or a bare "i" handled by the caller
mpq_class parse_rat(Cursor& c) {
    c.skip_ws();
    std::string num;
    // mpq_set_str takes '-' but not '+', so only the minus survives
    if (c.peek() == '+' || c.peek() == '-') {
        if (c.s[c.p] == '-') num += '-';
        ++c.p;
    }
    c.skip_ws();
    size_t d0 = c.p;
    while (c.p < c.s.size() && std::isdigit((unsigned char)c.s[c.p])) ++c.p;
    if (c.p == d0) throw Error("scalar parse: expected digits in '" + c.s + "'");
    num += c.s.substr(d0, c.p - d0);
    std::string den = "1";
    c.skip_ws();
    if (c.p < c.s.size() && c.s[c.p] == '/') {
        ++c.p;
        c.skip_ws();
        size_t e0 = c.p;
        while (c.p < c.s.size() && std::isdigit((unsigned char)c.s[c.p])) ++c.p;
        if (c.p == e0) throw Error("scalar parse: expected denominator in '" + c.s + "'");
        den = c.s.substr(e0, c.p - e0);
    }
    mpq_class q(num + "/" + den);
    if (q.get_den() == 0) throw SingularError("scalar parse: zero denominator");
    q.canonicalize();
    return q;
}

// one term: rational, imaginary rational ("3/2*i", "2i", "i", "-i"), or both fused
// returns (value, was_imaginary)
std::pair<mpq_class, bool> parse_term(Cursor& c) {
    c.skip_ws();
    // bare i with optional sign
    size_t save = c.p;
    int sign = 1;
    if (c.peek() == '+' || c.peek() == '-') {
        if (c.s[c.p] == '-') sign = -1;
        ++c.p;
    }
    if (c.peek() == 'i' || c.peek() == 'I') {
        ++c.p;
        return {mpq_class(sign), true};
    }
    c.p = save;
    mpq_class q = parse_rat(c);
    c.skip_ws();
    if (c.p < c.s.size() && (c.s[c.p] == '*' || c.s[c.p] == 'i' || c.s[c.p] == 'I')) {
        if (c.s[c.p] == '*') {
            ++c.p;
            c.skip_ws();
            if (c.p >= c.s.size() || (c.s[c.p] != 'i' && c.s[c.p] != 'I'))
                throw Error("scalar parse: expected i after '*' in '" + c.s + "'");
        }
        ++c.p;
        return {q, true};
    }
    return {q, false};
}

} // namespace

Scalar Scalar::parse(const std::string& s) {
    Cursor c{s};
    mpq_class re(0), im(0);
    bool seen_re = false, seen_im = false;
    while (!c.done()) {
        auto [q, imag] = parse_term(c);
        if (imag) {
            if (seen_im) throw Error("scalar parse: two imaginary parts in '" + s + "'");
            im = q;
            seen_im = true;
        } else {
            if (seen_re) throw Error("scalar parse: two real parts in '" + s + "'");
            re = q;
            seen_re = true;
        }
    }
    if (!seen_re && !seen_im) throw Error("scalar parse: empty input");
    return Scalar(re, im);
}

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
    if (q < 0) return std::nullopt;
    mpz_class num = q.get_num(), den = q.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    mpq_class r(rn, rd);
    r.canonicalize();
    return r;
}

std::optional<Scalar> Scalar::sqrt(const Scalar& a) {
    // (x+yi)^2 = a   =>   x^2 - y^2 = re,  2xy = im.
    if (a.im_ == 0) {
        if (a.re_ >= 0) {
            auto r = rational_sqrt(a.re_);
            if (!r) return std::nullopt;
            return Scalar(*r, mpq_class(0));
        }
        auto r = rational_sqrt(-a.re_);
        if (!r) return std::nullopt;
        return Scalar(mpq_class(0), *r);
    }
    // x^2 = (re + |a|)/2 with |a| = sqrt(re^2 + im^2); both roots must be rational.
    auto mod = rational_sqrt(a.norm());
    if (!mod) return std::nullopt;
    auto x = rational_sqrt((a.re_ + *mod) / 2);
    if (!x || *x == 0) return std::nullopt;
    mpq_class y = a.im_ / (2 * *x);
    Scalar root(*x, y);
    if (!(root * root == a)) return std::nullopt; // y consistency check
    return root;
}

} // namespace plab

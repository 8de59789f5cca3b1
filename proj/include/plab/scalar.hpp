#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <optional>
#include <string>

namespace plab {

/// Gaussian rational: re + im*i with both parts exact rationals.
///
/// Both components are mpq_class and therefore always in lowest terms with
/// positive denominator. Every comparison in the library is exact; there is
/// no tolerance anywhere.
class Scalar {
public:
    Scalar() : re_(0), im_(0) {}
    Scalar(long v) : re_(v), im_(0) {}        // NOLINT: implicit on purpose
    Scalar(long num, long den);
    Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

    static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    Scalar conj() const { return Scalar(re_, -im_); }

    /// re^2 + im^2, the field norm down to Q.
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    Scalar operator-() const { return Scalar(-re_, -im_); }
    Scalar operator+(const Scalar& o) const { return Scalar(re_ + o.re_, im_ + o.im_); }
    Scalar operator-(const Scalar& o) const { return Scalar(re_ - o.re_, im_ - o.im_); }
    Scalar operator*(const Scalar& o) const {
        return Scalar(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
    }
    Scalar operator/(const Scalar& o) const;
    Scalar inv() const;

    Scalar& operator+=(const Scalar& o) { re_ += o.re_; im_ += o.im_; return *this; }
    Scalar& operator-=(const Scalar& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

    bool operator==(const Scalar& o) const { return re_ == o.re_ && im_ == o.im_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Canonical text form: "3", "-1/2", "2*i", "1/2-3/4*i". parse() accepts
    /// everything str() emits plus integer/`i` shorthands ("i", "-i", "2i").
    std::string str() const;
    static Scalar parse(const std::string& s);

    /// Exact square root in Q(i), if one exists. Principal choice: re > 0,
    /// or re == 0 and im >= 0.
    static std::optional<Scalar> sqrt(const Scalar& a);

private:
    mpq_class re_, im_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Exact square root of a rational, if the reduced num/den are both squares.
std::optional<mpq_class> rational_sqrt(const mpq_class& q);

} // namespace plab

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace otslab {

// Arbitrary-precision rational, always in lowest terms with a positive
// denominator. Arithmetic is exact and equality is structural, so tests can
// assert `value == Rational(1, 2)` instead of comparing within a tolerance.
class Rational {
  public:
    Rational() : q_(0) {}
    Rational(long value) : q_(value) {}  // NOLINT: implicit on purpose
    Rational(long num, long den);

    // Accepts "p" or "p/q" with an optional leading minus; reduces.
    static Rational from_string(std::string_view text);
    static Rational one_over_pow2(unsigned k);  // 1 / 2^k

    Rational operator-() const;
    Rational operator+(const Rational& o) const { return Rational(mpq_class(q_ + o.q_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(q_ - o.q_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(q_ * o.q_)); }
    Rational operator/(const Rational& o) const;

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return q_ == o.q_; }
    std::strong_ordering operator<=>(const Rational& o) const {
        const int c = cmp(q_, o.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_negative() const { return sgn(q_) < 0; }

    std::string numerator_str() const { return q_.get_num().get_str(); }
    std::string denominator_str() const { return q_.get_den().get_str(); }

    // "3", "-1/2": denominator printed only when it is not 1.
    std::string str() const;
    // Always "p/q", e.g. "0/1", "1/2". The CSV writer uses this form.
    std::string fraction_str() const;
    // Fixed-point decimal rendering with `digits` places after the point,
    // rounded half away from zero. Exact integer arithmetic throughout.
    std::string decimal_str(int digits = 10) const;

    double to_double() const { return q_.get_d(); }

  private:
    explicit Rational(mpq_class q) : q_(std::move(q)) {}
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace otslab

#include "otslab/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace otslab {

Rational::Rational(long num, long den) {
    if (den == 0) {
        throw std::domain_error("Rational: zero denominator");
    }
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::operator-() const {
    return Rational(mpq_class(-q_));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.is_zero()) {
        throw std::domain_error("Rational: division by zero");
    }
    return Rational(mpq_class(q_ / o.q_));
}

Rational Rational::one_over_pow2(unsigned k) {
    mpq_class den(mpz_class(1) << k);
    return Rational(mpq_class(mpq_class(1) / den));
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

mpz_class parse_integer(std::string_view s) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) {
        throw std::invalid_argument("Rational: malformed integer '" + std::string(s) + "'");
    }
    mpz_class v(std::string(s), 10);
    return negative ? mpz_class(-v) : v;
}

}  // namespace

Rational Rational::from_string(std::string_view text) {
    // Trim surrounding whitespace.
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) {
        throw std::invalid_argument("Rational: empty string");
    }
    const auto slash = text.find('/');
    mpz_class num, den;
    if (slash == std::string_view::npos) {
        num = parse_integer(text);
        den = 1;
    } else {
        num = parse_integer(text.substr(0, slash));
        den = parse_integer(text.substr(slash + 1));
        if (den == 0) {
            throw std::invalid_argument("Rational: zero denominator in '" + std::string(text) + "'");
        }
    }
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(std::move(q));
}

std::string Rational::str() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return fraction_str();
}

std::string Rational::fraction_str() const {
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rational::decimal_str(int digits) const {
    if (digits < 0) {
        throw std::invalid_argument("Rational: negative digit count");
    }
    const bool negative = is_negative();
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpz_class num = abs(q_.get_num()) * scale;
    const mpz_class& den = q_.get_den();
    // Round half away from zero: floor((2*num + den) / (2*den)).
    mpz_class rounded = (2 * num + den) / (2 * den);
    mpz_class int_part = rounded / scale;
    mpz_class frac_part = rounded % scale;
    std::string frac = frac_part.get_str();
    if (static_cast<int>(frac.size()) < digits) {
        frac.insert(0, static_cast<size_t>(digits) - frac.size(), '0');
    }
    std::string out = negative && (int_part != 0 || frac_part != 0) ? "-" : "";
    out += int_part.get_str();
    if (digits > 0) {
        out += "." + frac;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

}  // namespace otslab

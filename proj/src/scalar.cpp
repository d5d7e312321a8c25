#include "cuntzlab/scalar.hpp"

#include "cuntzlab/error.hpp"

#include <charconv>
#include <cstdio>
#include <system_error>

namespace cuntzlab {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::EmptyWord: return "EmptyWord";
    case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::InvalidLetter: return "InvalidLetter";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotPrefixFree: return "NotPrefixFree";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::TailNotCertified: return "TailNotCertified";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::NotInCatalog: return "NotInCatalog";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::GateFailed: return "GateFailed";
    }
    return "Error";
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    Rational den = abs2(o);
    if (sgn(den) == 0)
        throw std::domain_error("division by zero in Q(i)");
    Rational r = (re * o.re + im * o.im) / den;
    Rational i = (im * o.re - re * o.im) / den;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

namespace {

Rational pow10(long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
    if (e >= 0)
        return Rational(p);
    return Rational(mpz_class(1), p);
}

Rational parse_decimal(std::string_view s) {
    bool neg = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = s[i] == '-';
        ++i;
    }
    std::string digits;
    long exp10 = 0;
    bool seen_digit = false, seen_point = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            seen_digit = true;
            if (seen_point)
                --exp10;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit)
        throw Error(ErrorCode::SchemaError, "malformed number '" + std::string(s) + "'");
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        long e = 0;
        auto tail = s.substr(i);
        if (!tail.empty() && tail[0] == '+')
            tail.remove_prefix(1);
        auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), e);
        if (ec != std::errc() || ptr != tail.data() + tail.size())
            throw Error(ErrorCode::SchemaError, "malformed exponent in '" + std::string(s) + "'");
        exp10 += e;
        i = s.size();
    }
    if (i != s.size())
        throw Error(ErrorCode::SchemaError, "malformed number '" + std::string(s) + "'");
    Rational value(mpz_class(digits, 10));
    value *= pow10(exp10);
    value.canonicalize();
    return neg ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && text.front() == ' ')
        text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ')
        text.remove_suffix(1);
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return parse_decimal(text);
    Rational num = parse_decimal(text.substr(0, slash));
    Rational den = parse_decimal(text.substr(slash + 1));
    if (sgn(den) == 0)
        throw Error(ErrorCode::SchemaError, "zero denominator in '" + std::string(text) + "'");
    return num / den;
}

Rational rational_from_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc())
        throw Error(ErrorCode::SchemaError, "cannot convert number");
    return parse_decimal(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
}

std::string format_double(double x) {
    if (x == 0.0)
        x = 0.0;  // drop the sign of negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string format_rational(const Rational& x) { return x.get_str(); }

std::string format_scalar(const Exact& x) {
    if (sgn(x.im) == 0)
        return format_rational(x.re);
    if (sgn(x.re) == 0)
        return format_rational(x.im) + "i";
    std::string im = format_rational(abs(x.im));
    return format_rational(x.re) + (sgn(x.im) < 0 ? "-" : "+") + im + "i";
}

std::string format_scalar(const Float& x) {
    double re = std::abs(x.real()) < 5e-13 ? 0.0 : x.real();
    double im = std::abs(x.imag()) < 5e-13 ? 0.0 : x.imag();
    if (im == 0.0)
        return format_double(re);
    if (re == 0.0)
        return format_double(im) + "i";
    return format_double(re) + (im < 0 ? "-" : "+") + format_double(std::abs(im)) + "i";
}

}  // namespace cuntzlab

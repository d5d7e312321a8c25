#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>

namespace cuntzlab {

using Rational = mpq_class;

/// Element of Q(i). All arithmetic is exact; values stay canonical because
/// mpq_class canonicalizes after every operation.
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(int r) : re(r) {}
    GaussianRational(long r) : re(r) {}
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {Rational(-a.re), Rational(-a.im)}; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

using Exact = GaussianRational;
using Float = std::complex<double>;

template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Exact> {
    using Real = Rational;
    static constexpr bool exact = true;
    static constexpr const char* name = "exact";
};

template <>
struct FieldTraits<Float> {
    using Real = double;
    static constexpr bool exact = false;
    static constexpr const char* name = "float";
};

template <class F>
using RealOf = typename FieldTraits<F>::Real;

template <class F>
inline constexpr bool is_exact_v = FieldTraits<F>::exact;

/// Tolerances for float mode. Exact mode ignores both.
struct Tolerance {
    double eq = 1e-9;
    double rank = 1e-10;
};

inline Exact conjugate(const Exact& x) { return {x.re, Rational(-x.im)}; }
inline Float conjugate(const Float& x) { return std::conj(x); }
inline Rational conjugate(const Rational& x) { return x; }
inline double conjugate(double x) { return x; }

inline Rational abs2(const Exact& x) { return x.re * x.re + x.im * x.im; }
inline double abs2(const Float& x) { return std::norm(x); }
inline Rational abs2(const Rational& x) { return x * x; }
inline double abs2(double x) { return x * x; }

inline double to_double(const Rational& x) { return x.get_d(); }
inline double to_double(double x) { return x; }

inline Float to_complex(const Exact& x) { return {x.re.get_d(), x.im.get_d()}; }
inline Float to_complex(const Float& x) { return x; }

inline const Rational& real_part(const Exact& x) { return x.re; }
inline double real_part(const Float& x) { return x.real(); }
inline const Rational& imag_part(const Exact& x) { return x.im; }
inline double imag_part(const Float& x) { return x.imag(); }

inline bool is_zero(const Exact& x, double = 0) { return sgn(x.re) == 0 && sgn(x.im) == 0; }
inline bool is_zero(const Rational& x, double = 0) { return sgn(x) == 0; }
inline bool is_zero(const Float& x, double tol) { return std::abs(x) <= tol; }
inline bool is_zero(double x, double tol) { return std::abs(x) <= tol; }

template <class T>
bool near(const T& a, const T& b, double tol) {
    return is_zero(T(a - b), tol);
}

/// Pivot magnitude used by elimination routines. Exact mode only needs it for
/// ordering, so the conversion to double is harmless there.
inline double magnitude(const Exact& x) { return std::sqrt(to_double(abs2(x))); }
inline double magnitude(const Float& x) { return std::abs(x); }
inline double magnitude(const Rational& x) { return std::abs(x.get_d()); }
inline double magnitude(double x) { return std::abs(x); }

template <class F>
F make_scalar(const RealOf<F>& re, const RealOf<F>& im = RealOf<F>(0)) {
    return F(re, im);
}

template <class F>
F from_exact(const Exact& x) {
    if constexpr (is_exact_v<F>)
        return x;
    else
        return to_complex(x);
}

/// Parses "p/q", integers and decimals ("0.25", "-1.5e-3") into an exact rational.
Rational parse_rational(std::string_view text);

/// Shortest round-trip decimal of x, read back as a rational.
Rational rational_from_double(double x);

std::string format_double(double x);
std::string format_rational(const Rational& x);
std::string format_scalar(const Exact& x);
std::string format_scalar(const Float& x);

}  // namespace cuntzlab

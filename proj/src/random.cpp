#include "cuntzlab/random.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace cuntzlab {

std::uint64_t env_seed(std::uint64_t fallback) {
    if (const char* s = std::getenv("CUNTZLAB_SEED"); s && *s)
        return std::stoull(s);
    return fallback;
}

namespace {

Rational small_rational(Rng& rng) {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
    return Rational(num(rng), den(rng));
}

}  // namespace

template <class F>
std::vector<F> random_unit_vector(Rng& rng, std::size_t n) {
    if (n == 0)
        throw std::invalid_argument("empty vector");
    if constexpr (is_exact_v<F>) {
        // (2t, |t|²-1) / (1+|t|²) for t ∈ Q^{2n-1}.
        std::vector<Rational> t(2 * n - 1);
        Rational s(0);
        for (auto& x : t) {
            x = small_rational(rng);
            s += x * x;
        }
        const Rational den = 1 + s;
        std::vector<Rational> p(2 * n);
        for (std::size_t i = 0; i + 1 < 2 * n; ++i)
            p[i] = 2 * t[i] / den;
        p[2 * n - 1] = (s - 1) / den;
        std::vector<F> v(n);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = Exact(p[2 * i], p[2 * i + 1]);
        return v;
    } else {
        std::normal_distribution<double> g;
        std::vector<F> v(n);
        double s = 0;
        for (auto& x : v) {
            x = Float(g(rng), g(rng));
            s += std::norm(x);
        }
        for (auto& x : v)
            x /= std::sqrt(s);
        return v;
    }
}

template <class F>
Matrix<F> random_unitary(Rng& rng, std::size_t n) {
    if constexpr (is_exact_v<F>) {
        Matrix<F> k(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            k(i, i) = Exact(Rational(0), small_rational(rng));
            for (std::size_t j = i + 1; j < n; ++j) {
                k(i, j) = Exact(small_rational(rng), small_rational(rng));
                k(j, i) = -conjugate(k(i, j));
            }
        }
        const auto id = Matrix<F>::identity(n);
        // I+K is invertible because K has purely imaginary spectrum.
        auto inv = solve(id + k, id, 0.0);
        return (id - k) * *inv;
    } else {
        std::normal_distribution<double> g;
        Matrix<F> m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) = Float(g(rng), g(rng));
        // Gram-Schmidt on the columns.
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t p = 0; p < j; ++p) {
                Float c(0);
                for (std::size_t i = 0; i < n; ++i)
                    c += std::conj(m(i, p)) * m(i, j);
                for (std::size_t i = 0; i < n; ++i)
                    m(i, j) -= c * m(i, p);
            }
            double s = 0;
            for (std::size_t i = 0; i < n; ++i)
                s += std::norm(m(i, j));
            for (std::size_t i = 0; i < n; ++i)
                m(i, j) /= std::sqrt(s);
        }
        return m;
    }
}

template <class F>
F random_phase(Rng& rng) {
    if constexpr (is_exact_v<F>) {
        const Rational t = small_rational(rng);
        const Rational den = 1 + t * t;
        return Exact(Rational((1 - t * t) / den), Rational(2 * t / den));
    } else {
        std::uniform_real_distribution<double> u(0.0, 2 * M_PI);
        return std::polar(1.0, u(rng));
    }
}

template std::vector<Exact> random_unit_vector<Exact>(Rng&, std::size_t);
template std::vector<Float> random_unit_vector<Float>(Rng&, std::size_t);
template Matrix<Exact> random_unitary<Exact>(Rng&, std::size_t);
template Matrix<Float> random_unitary<Float>(Rng&, std::size_t);
template Exact random_phase<Exact>(Rng&);
template Float random_phase<Float>(Rng&);

}  // namespace cuntzlab

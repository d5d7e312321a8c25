#include "cuntzlab/symalg.hpp"

#include <doctest.h>

using namespace cuntzlab;

namespace {

// Matrix model of O_2 truncated to words: s_i acts on l^2 of finite words by
// prefixing, which satisfies s_i* s_j = δ_ij exactly. Σ s_i s_i* = I fails
// only on the empty word, so products are compared on vectors supported away
// from it.
using Vec = std::map<Word, Exact>;

Vec act(const CuntzElement<Exact>& x, const Vec& v) {
    Vec out;
    for (const auto& [key, c] : x.terms()) {
        for (const auto& [w, y] : v) {
            // s_K* strips K from the front, then s_J prepends J.
            if (!w.starts_with(key.second))
                continue;
            out[key.first + w.drop(key.second.size())] += c * y;
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == Exact(0) ? out.erase(it) : std::next(it);
    return out;
}

}  // namespace

TEST_CASE("Cuntz relations in normal form") {
    const int n = 2;
    const auto s1 = CuntzElement<Exact>::generator(n, 1);
    const auto s2 = CuntzElement<Exact>::generator(n, 2);
    CHECK(s1.adjoint() * s1 == CuntzElement<Exact>::identity(n));
    CHECK((s1.adjoint() * s2).is_zero());
    CHECK(s1 * s1.adjoint() + s2 * s2.adjoint() == CuntzElement<Exact>::identity(n));
}

TEST_CASE("reduction of starred pairs") {
    // s_J* s_K
    CHECK(reduce_starred_pair(Word{1}, Word{1, 2}).kind == StarReductionKind::Monomial);
    CHECK(reduce_starred_pair(Word{1, 2}, Word{1}).kind == StarReductionKind::Starred);
    CHECK(reduce_starred_pair(Word{1}, Word{2}).kind == StarReductionKind::Zero);
    CHECK(reduce_starred_pair(Word{1, 2}, Word{1, 2}).kind == StarReductionKind::Identity);
}

TEST_CASE("multiplication agrees with the word model") {
    const int n = 2;
    std::vector<CuntzElement<Exact>> samples;
    for (const Word& J : words_up_to(n, 2))
        for (const Word& K : words_up_to(n, 2))
            samples.push_back(CuntzElement<Exact>::monomial(n, J, K, Exact(Rational(1), Rational(J.size()))));
    std::vector<Vec> probes;
    for (const Word& w : words_of_length(n, 5))
        probes.push_back({{w, Exact(1)}});
    for (std::size_t a = 0; a < samples.size(); a += 3)
        for (std::size_t b = 0; b < samples.size(); b += 5) {
            const auto prod = samples[a] * samples[b];
            for (const auto& v : probes)
                CHECK(act(prod, v) == act(samples[a], act(samples[b], v)));
        }
}

TEST_CASE("adjoint is an anti-automorphism") {
    const int n = 2;
    const auto x = CuntzElement<Exact>::monomial(n, Word{1, 2}, Word{2}, Exact(Rational(1), Rational(2)));
    const auto y = CuntzElement<Exact>::monomial(n, Word{2}, Word{1, 1}, Exact(3));
    CHECK((x * y).adjoint() == y.adjoint() * x.adjoint());
    CHECK(x.adjoint().adjoint() == x);
}

TEST_CASE("isometries in O_n^+") {
    const int n = 2;
    const auto u = CuntzElement<Exact>::creation(n, {{Word{1, 2}, Exact(1)}});
    CHECK(is_isometry_in_plus(u).isometry);
    const auto v = CuntzElement<Exact>::creation(n, {{Word{1}, Exact(1)}, {Word{2}, Exact(1)}});
    CHECK_FALSE(is_isometry_in_plus(v).isometry);
}

TEST_CASE("gauge action preserves the relations") {
    Matrix<Exact> g(2, 2);
    g(0, 1) = Exact(1);
    g(1, 0) = Exact(1);
    const auto s1 = CuntzElement<Exact>::generator(2, 1);
    CHECK(gauge_apply(g, s1) == CuntzElement<Exact>::generator(2, 2));
    const auto x = gauge_apply(g, s1 * s1.adjoint());
    CHECK(x == CuntzElement<Exact>::monomial(2, Word{2}, Word{2}));
}

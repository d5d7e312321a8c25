#include "cuntzlab/error.hpp"
#include "cuntzlab/shiftrep.hpp"

#include <doctest.h>

using namespace cuntzlab;

namespace {

using SV = StateVector<TailKey, Exact>;
using GV = StateVector<GridKey, Exact>;

// ω_x(s_J s_K*) = 1 iff x = J y = K y for one infinite word y.
Exact brute_shift_moment(const EventuallyPeriodicWord& x, const Word& J, const Word& K) {
    if (x.prefix(J.size()) != J || x.prefix(K.size()) != K)
        return Exact(0);
    for (std::size_t i = 0; i < 48; ++i)
        if (x.at(J.size() + i) != x.at(K.size() + i))
            return Exact(0);
    return Exact(1);
}

template <class Rep, class V>
void check_relations(const Rep& rep, const V& v) {
    const int n = rep.alphabet();
    V sum;
    for (Letter i = 1; i <= n; ++i) {
        for (Letter j = 1; j <= n; ++j) {
            auto w = apply_generator(rep, apply_generator(rep, v, j, false), i, true);
            CHECK(w == (i == j ? v : V{}));
        }
        for (const auto& [k, c] : apply_generator(rep, apply_generator(rep, v, i, true), i, false))
            sum[k] += c;
    }
    CHECK(sum == v);
}

}  // namespace

TEST_CASE("shift representation satisfies the Cuntz relations") {
    const ShiftRepresentation rep(EventuallyPeriodicWord(2, {2}, {1, 1, 2}));
    std::vector<SV> probes{basis_vector<ShiftRepresentation, Exact>(rep, rep.reference())};
    for (int t = 0; t < 6; ++t)
        probes.push_back(apply_generator(rep, probes.back(), t % 3 == 0 ? 2 : 1, t % 2 == 1));
    for (const auto& v : probes)
        if (!v.empty())
            check_relations(rep, v);
}

TEST_CASE("grid representation satisfies the Cuntz relations") {
    const GridRepresentation rep(3);
    for (std::int64_t k = 1; k <= 12; ++k)
        check_relations(rep, GV{{GridKey{k, -2}, Exact(1)}});
}

TEST_CASE("shift vector state moments agree with brute force") {
    for (const auto& x : {EventuallyPeriodicWord(2, {}, {1, 2}), EventuallyPeriodicWord(2, {2, 2}, {1}),
                          EventuallyPeriodicWord(2, {1}, {1, 2, 2}), EventuallyPeriodicWord(3, {3}, {1, 2})}) {
        const auto w = vector_state<Exact>(x);
        for (const Word& J : words_up_to(x.alphabet(), 4))
            for (const Word& K : words_up_to(x.alphabet(), 4))
                CHECK(w(J, K) == brute_shift_moment(x, J, K));
    }
}

TEST_CASE("grid vector state is zero off the diagonal in length") {
    const auto w = grid_vector_state<Exact>(2);
    CHECK(w(Word{1}, Word{}) == Exact(0));
    CHECK(w(Word{1, 1}, Word{1, 1}) == Exact(1));
    for (std::size_t k = 0; k <= 6; ++k)
        for (std::size_t l = 0; l <= 6; ++l)
            CHECK(w(Word{1}.power(k), Word{1}.power(l)) == Exact(k == l ? 1 : 0));
}

TEST_CASE("lazy shift states stop at the horizon") {
    const auto w = vector_state<Exact>(LazyWord::thue_morse(16));
    CHECK(w(Word{1, 2}, Word{1, 2}) == Exact(1));
    const Word past = LazyWord::thue_morse(16).prefix(16) + Word{1, 2, 2, 1};
    CHECK_THROWS_AS(w(past, past), Error);
}

TEST_CASE("DHJ grading of a periodic orbit") {
    const ShiftRepresentation rep(EventuallyPeriodicWord(2, {}, {1, 2}));
    const SV ex = basis_vector<ShiftRepresentation, Exact>(rep, rep.reference());
    const std::vector<SV> M{ex, apply_generator(rep, ex, 1, true)};
    const auto g = dhj_grading(rep, M, 2);
    REQUIRE(g.levels.size() == 3);
    CHECK(g.levels[0].size() == 2);
    CHECK(g.levels[1].size() == 2);
    for (std::size_t a = 0; a < g.levels.size(); ++a)
        for (std::size_t b = a + 1; b < g.levels.size(); ++b)
            for (const auto& u : g.levels[a])
                for (const auto& v : g.levels[b])
                    CHECK(inner(u, v) == Exact(0));
}

TEST_CASE("non-invariant subspaces are rejected") {
    const ShiftRepresentation rep(EventuallyPeriodicWord(2, {}, {1}));
    const SV ex = basis_vector<ShiftRepresentation, Exact>(rep, rep.reference());
    const std::vector<SV> M{apply_generator(rep, ex, 2, false)};
    CHECK_THROWS_AS(require_invariant(rep, M, 0.0), Error);
}

TEST_CASE("convergence lemma on a periodic orbit") {
    const ShiftRepresentation rep(EventuallyPeriodicWord(2, {}, {1}));
    const SV ex = basis_vector<ShiftRepresentation, Exact>(rep, rep.reference());
    SV v = apply_generator(rep, ex, 2, false);
    for (int t = 0; t < 3; ++t)
        v = apply_generator(rep, v, 1, false);  // e_{1112 1^∞}
    const std::function<CuntzElement<Exact>(std::size_t)> a = [](std::size_t) {
        return CuntzElement<Exact>::generator(2, 1);
    };
    const auto norms = lemma_convergence_check(rep, std::vector<SV>{ex}, a, v, 6);
    REQUIRE(norms.size() == 6);
    CHECK(norms[0] == doctest::Approx(1.0));
    CHECK(norms[2] == doctest::Approx(1.0));
    CHECK(norms[3] == doctest::Approx(0.0));
    CHECK(norms[5] == doctest::Approx(0.0));
}

#include "cuntzlab/error.hpp"
#include "cuntzlab/moments.hpp"
#include "cuntzlab/prefix_code.hpp"
#include "cuntzlab/random.hpp"

#include <doctest.h>

using namespace cuntzlab;

namespace {

// ω(u* x u) = ω(x) for every monomial x with |J|,|K| <= L, where
// u = Σ z_W s_W satisfies π(u)Ω = Ω.
template <class F>
bool invariant_under(const MomentFunctional<F>& w, const CuntzElement<F>& u, std::size_t L, double tol) {
    const auto us = u.adjoint();
    for (const Word& J : words_up_to(w.n(), L))
        for (const Word& K : words_up_to(w.n(), L)) {
            const auto x = CuntzElement<F>::monomial(w.n(), J, K);
            if (!near(w.apply(us * x * u), w(J, K), tol))
                return false;
        }
    return true;
}

template <class F>
CuntzElement<F> creation_of(int n, const std::vector<Word>& code, const std::vector<F>& z) {
    std::vector<std::pair<Word, F>> terms;
    for (std::size_t i = 0; i < code.size(); ++i)
        terms.emplace_back(code[i], z[i]);
    return CuntzElement<F>::creation(n, terms);
}

}  // namespace

TEST_CASE("Cuntz state moments") {
    const auto w = make_cuntz<Exact>({Exact(Rational(3, 5)), Exact(Rational(0), Rational(4, 5))});
    CHECK(w(Word{}, Word{}) == Exact(1));
    const auto u = creation_of<Exact>(2, {Word{1}, Word{2}}, {Exact(Rational(3, 5)), Exact(Rational(0), Rational(4, 5))});
    CHECK(w.apply(u) == Exact(1));
    CHECK(invariant_under(w, u, 2, 0.0));
}

TEST_CASE("sub-Cuntz states are fixed by their isometry") {
    Rng rng(7);
    for (int t = 0; t < 4; ++t) {
        const auto z = random_unit_vector<Exact>(rng, 4);
        const auto w = make_sub_cuntz<Exact>(2, 2, z);
        const auto u = creation_of<Exact>(2, uniform_code(2, 2), z);
        CHECK(w.apply(u) == Exact(1));
        CHECK(invariant_under(w, u, 2, 0.0));
    }
}

TEST_CASE("geometric progression states are fixed by their isometry") {
    Rng rng(11);
    const auto z = random_unit_vector<Exact>(rng, 3);
    const auto w = make_geometric_progression<Exact>(2, 2, z);
    const auto u = creation_of<Exact>(2, geometric_progression_code(2, 2), z);
    CHECK(w.apply(u) == Exact(1));
    CHECK(invariant_under(w, u, 2, 0.0));
}

TEST_CASE("general prefix code") {
    const std::vector<Word> code{Word{1}, Word{2, 1}, Word{2, 2}};
    const std::vector<Exact> z{Exact(Rational(0)), Exact(Rational(3, 5)), Exact(Rational(4, 5))};
    const auto w = make_prefix_code_state<Exact>(2, code, z);
    CHECK(invariant_under(w, creation_of<Exact>(2, code, z), 2, 0.0));
    CHECK_THROWS_AS(make_prefix_code_state<Exact>(2, {Word{1}, Word{1, 2}}, {Exact(1), Exact(0)}), Error);
}

TEST_CASE("solution dimension of tensor powers") {
    const auto a = solve_low_moments<Exact>(2, uniform_code(2, 2), {Exact(0), Exact(1), Exact(0), Exact(0)});
    CHECK(a.solution_dim == 1);
    CHECK(a.unique);
    const auto b = solve_low_moments<Exact>(2, uniform_code(2, 2), {Exact(1), Exact(0), Exact(0), Exact(0)});
    CHECK(b.r1_solution_dim == 2);
    CHECK(tensor_power_exponent<Exact>({Exact(1), Exact(0), Exact(0), Exact(0)}, 2, 2, 0.0) == 2);
    CHECK(tensor_power_exponent<Exact>({Exact(0), Exact(1), Exact(0), Exact(0)}, 2, 2, 0.0) == 1);
}

TEST_CASE("sandwich moments match the algebraic definition") {
    const auto base = make_cuntz<Exact>({Exact(Rational(3, 5)), Exact(Rational(4, 5))});
    const auto A = CuntzElement<Exact>::generator(2, 2) * CuntzElement<Exact>::generator(2, 1);
    const auto w = transform_sandwich(base, {{Exact(1), A}});
    for (const Word& J : words_up_to(2, 2))
        for (const Word& K : words_up_to(2, 2))
            CHECK(w(J, K) == base.apply(A.adjoint() * CuntzElement<Exact>::monomial(2, J, K) * A));
}

TEST_CASE("gauge transform moments") {
    Rng rng(3);
    const auto base = make_cuntz(random_unit_vector<Exact>(rng, 2));
    const auto g = random_unitary<Exact>(rng, 2);
    const auto w = transform_gauge(base, g);
    for (const Word& J : words_up_to(2, 2))
        for (const Word& K : words_up_to(2, 2))
            CHECK(w(J, K) == base.apply(gauge_apply(g, CuntzElement<Exact>::monomial(2, J, K))));
}

TEST_CASE("checks across families") {
    Rng rng(5);
    std::vector<MomentFunctional<Exact>> states{
        make_cuntz(random_unit_vector<Exact>(rng, 3)),
        make_sub_cuntz<Exact>(2, 2, random_unit_vector<Exact>(rng, 4)),
        make_induced_product<Exact>({}, {random_unit_vector<Exact>(rng, 2)}),
        make_orthogonal_tail<Exact>(2),
        make_mixture<Exact>({Rational(1, 3), Rational(2, 3)},
                            {make_cuntz<Exact>({Exact(1), Exact(0)}), make_cuntz<Exact>({Exact(0), Exact(1)})}),
    };
    for (const auto& w : states) {
        const auto c = consistency_check(w, 3);
        CHECK(c.hermitian);
        CHECK(c.cuntz_relation);
        CHECK(c.normalized);
        CHECK(positivity_check(w, 2).psd);
    }
}

TEST_CASE("non-positive functionals fail the positivity check") {
    const auto bad = make_custom<Exact>(2, "bad", [](const Word& J, const Word& K) {
        return J == K ? Exact(J.empty() ? 1 : -1) : Exact(0);
    });
    CHECK_FALSE(positivity_check(bad, 1).psd);
}

TEST_CASE("non-unit vectors are rejected") {
    CHECK_THROWS_AS(make_cuntz<Exact>({Exact(1), Exact(1)}), Error);
    CHECK_THROWS_AS(make_sub_cuntz<Exact>(2, 2, {Exact(1), Exact(0), Exact(0)}), Error);
}

TEST_CASE("float and exact agree") {
    const std::vector<Exact> ze{Exact(Rational(3, 5)), Exact(Rational(0), Rational(4, 5))};
    std::vector<Float> zf;
    for (const auto& x : ze)
        zf.push_back(to_complex(x));
    const auto we = make_sub_cuntz<Exact>(2, 1, ze);
    const auto wf = make_sub_cuntz<Float>(2, 1, zf);
    for (const Word& J : words_up_to(2, 3))
        for (const Word& K : words_up_to(2, 3))
            CHECK(std::abs(to_complex(we(J, K)) - wf(J, K)) < 1e-12);
}

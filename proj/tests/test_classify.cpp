#include "cuntzlab/classify.hpp"
#include "cuntzlab/random.hpp"

#include <doctest.h>

using namespace cuntzlab;

namespace {

std::vector<Exact> e(int n, std::size_t m, std::size_t index) {
    std::vector<Exact> z(static_cast<std::size_t>(std::pow(n, m)), Exact(0));
    z[index] = Exact(1);
    return z;
}

}  // namespace

TEST_CASE("cdim of basic families") {
    Rng rng(31);
    const auto c = cdim(make_cuntz(random_unit_vector<Exact>(rng, 3)));
    CHECK(c.stabilized());
    CHECK(c.value == 1);

    const auto base = make_cuntz<Exact>({Exact(1), Exact(0)});
    const auto w = transform_sandwich(base, {{Exact(1), CuntzElement<Exact>::generator(2, 2)}});
    CHECK(cdim(w).value == 2);

    // ρ_c(s_2 s_2 s_2 s_1) = c
    const auto rho = make_sub_cuntz<Exact>(2, 4, e(2, 4, 14));
    const auto r = cdim(rho);
    CHECK(r.stabilized());
    CHECK(r.value == 4);
}

TEST_CASE("minimality certificates") {
    Rng rng(37);
    const auto z = random_unit_vector<Exact>(rng, 4);
    const auto w = make_sub_cuntz<Exact>(2, 2, z);
    REQUIRE(w.flags().minimal_certificate);
    CHECK(verify_minimality_certificate(w, *w.flags().minimal_certificate));

    const auto base = make_cuntz<Exact>({Exact(1), Exact(0)});
    const auto sw = transform_sandwich(base, {{Exact(1), CuntzElement<Exact>::generator(2, 2)}});
    for (const auto& y : {std::vector<Exact>{Exact(1), Exact(0)}, std::vector<Exact>{Exact(0), Exact(1)},
                          random_unit_vector<Exact>(rng, 2)}) {
        const auto u = CuntzElement<Exact>::creation(2, {{Word{1}, y[0]}, {Word{2}, y[1]}});
        CHECK_FALSE(verify_minimality_certificate(sw, u));
    }
}

TEST_CASE("properly infinite tables") {
    const auto grid = grid_vector_state<Exact>(2);
    const auto t = verify_properly_infinite<Exact>(
        grid, [](std::size_t) { return CuntzElement<Exact>::generator(2, 1); }, 12, true);
    CHECK(t.holds());
    CHECK(t.status() == "proved");

    const auto tm = vector_state<Exact>(LazyWord::thue_morse());
    const auto k = kappa(tm);
    CHECK(k.infinite);
    CHECK(k.evidence_only);
    CHECK(spectrum_bucket(k) == "∞ (evidence, cutoff 12)");

    // a Cuntz state is not properly infinite for a_i = s_1
    const auto c = make_cuntz<Exact>({Exact(1), Exact(0)});
    CHECK_FALSE(verify_properly_infinite<Exact>(
                    c, [](std::size_t) { return CuntzElement<Exact>::generator(2, 1); }, 4, false)
                    .holds());
}

TEST_CASE("kappa examples") {
    const auto a = kappa(make_sub_cuntz<Exact>(2, 2, e(2, 2, 1)));
    CHECK(a.resolved);
    CHECK(a.value == 2);
    CHECK(a.certificate.kind == CertificateKind::Minimal);

    const auto t = kappa(make_orthogonal_tail<Exact>(2));
    CHECK(t.value == 1);
    CHECK(t.certificate.kind == CertificateKind::EquivalentToCuntz);
    CHECK_FALSE(t.cdim.stabilized());

    const auto s = kappa(vector_state<Exact>(EventuallyPeriodicWord(2, {1}, {2})));
    CHECK(s.value == 1);
    CHECK(s.certificate.kind == CertificateKind::ShiftPeriod);
    CHECK(s.cdim.value == 2);
    CHECK(spectrum_bucket(s) == "1");
}

TEST_CASE("equivalence examples") {
    const auto c1 = make_cuntz<Exact>({Exact(1), Exact(0)});
    const auto c2 = make_cuntz<Exact>({Exact(0), Exact(1)});
    CHECK(equivalent(c1, c2).verdict == Verdict::No);
    CHECK(equivalent(c1, c1).verdict == Verdict::Yes);

    const auto a = make_sub_cuntz<Exact>(2, 2, e(2, 2, 1));
    const auto b = make_sub_cuntz<Exact>(2, 2, e(2, 2, 2));
    CHECK(equivalent(a, b).verdict == Verdict::Yes);

    const std::vector<Exact> e1{Exact(1), Exact(0)}, e2{Exact(0), Exact(1)};
    const auto constant = make_induced_product<Exact>({}, {e1});
    const auto alternating = make_induced_product<Exact>({}, {e1, e2});
    CHECK(equivalent(constant, alternating).verdict == Verdict::No);
    const auto shifted = make_induced_product<Exact>({e2}, {e1, e2});
    CHECK(equivalent(shifted, alternating).verdict == Verdict::Yes);
}

TEST_CASE("tensor conjugacy") {
    Rng rng(41);
    const auto x1 = random_unit_vector<Exact>(rng, 2), x2 = random_unit_vector<Exact>(rng, 2);
    const auto z = tensor_product(x1, x2), y = tensor_product(x2, x1);
    CHECK(tensors_conjugate(z, y, 2, 2, 0.0));
    CHECK(tensors_conjugate(z, z, 2, 2, 0.0));
    CHECK_FALSE(tensors_conjugate(e(2, 2, 0), e(2, 2, 1), 2, 2, 0.0));
}

TEST_CASE("purity examples") {
    CHECK(pure(make_sub_cuntz<Exact>(2, 2, e(2, 2, 1))).verdict == Verdict::Yes);
    const auto mix = make_mixture<Exact>(
        {Rational(1, 2), Rational(1, 2)},
        {make_cuntz<Exact>({Exact(1), Exact(0)}), make_cuntz<Exact>({Exact(0), Exact(1)})});
    CHECK(pure(mix).verdict == Verdict::No);
    CHECK(pure(make_induced_product<Exact>({}, {{Exact(1), Exact(0)}})).verdict == Verdict::No);
    CHECK(pure(vector_state<Exact>(EventuallyPeriodicWord(2, {}, {1, 2}))).verdict == Verdict::Yes);
}

TEST_CASE("representations") {
    const Representation p12 = ShiftRepresentation(EventuallyPeriodicWord(3, {}, {1, 2}));
    const auto k = kappa_rep<Exact>(p12);
    CHECK(k.value == 2);
    const auto e12 = endo_invariants<Exact>(p12);
    CHECK(e12.powers_index == 3);
    CHECK(e12.kappa.value == 2);

    const Representation grid = GridRepresentation(2);
    const auto eg = endo_invariants<Exact>(grid);
    CHECK(eg.powers_index == 2);
    CHECK(eg.kappa.infinite);

    const Representation one = ShiftRepresentation(EventuallyPeriodicWord(2, {}, {1}));
    CHECK(kappa_rep<Exact>(one).value == 1);
}

TEST_CASE("gauge transport keeps kappa") {
    Rng rng(43);
    const auto w = make_sub_cuntz<Exact>(2, 2, random_unit_vector<Exact>(rng, 4));
    const auto g = random_unitary<Exact>(rng, 2);
    const auto k0 = kappa(w), k1 = kappa(transform_gauge(w, g));
    CHECK(k0.value == k1.value);
    CHECK(k1.certificate.kind == CertificateKind::Minimal);
    CHECK(k0.cdim.levels == k1.cdim.levels);
}

TEST_CASE("certificate search") {
    // Without a family certificate the search recovers u for a periodic shift state.
    const auto base = vector_state<Exact>(EventuallyPeriodicWord(2, {}, {1, 1, 2}));
    const auto custom = make_custom<Exact>(2, "copy", [base](const Word& J, const Word& K) { return base(J, K); });
    const auto u = search_minimality_certificate(custom, 3);
    REQUIRE(u);
    CHECK(verify_minimality_certificate(custom, *u));
    CHECK_FALSE(search_minimality_certificate(vector_state<Exact>(EventuallyPeriodicWord(2, {1}, {1, 1, 2})), 4));
}

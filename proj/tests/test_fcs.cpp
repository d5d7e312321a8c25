#include "cuntzlab/fcs.hpp"
#include "cuntzlab/random.hpp"
#include "cuntzlab/shiftrep.hpp"

#include <doctest.h>

using namespace cuntzlab;

namespace {

template <class F>
void check_round_trip(const MomentFunctional<F>& w, std::size_t expected_d, std::size_t L, double tol) {
    const auto ex = extract_fcs(w, 8);
    REQUIRE(ex.presentation);
    const auto& p = *ex.presentation;
    if (expected_d)
        CHECK(p.d == expected_d);
    else
        CHECK(p.d <= 3);
    CHECK(check_row_isometry(p));
    CHECK(orbit_closure_cdim(p) == p.d);
    for (const Word& J : words_up_to(w.n(), L))
        for (const Word& K : words_up_to(w.n(), L))
            CHECK(magnitude(fcs_moment(p, J, K) - w(J, K)) <= tol);
}

}  // namespace

TEST_CASE("presentations reproduce the moments") {
    Rng rng(17);
    check_round_trip(make_cuntz(random_unit_vector<Exact>(rng, 2)), 1, 4, 0.0);
    check_round_trip(make_sub_cuntz<Exact>(2, 2, {Exact(0), Exact(1), Exact(0), Exact(0)}), 2, 4, 0.0);
    check_round_trip(vector_state<Exact>(EventuallyPeriodicWord(2, {2, 2}, {1, 2, 1})), 5, 5, 0.0);
    check_round_trip(make_geometric_progression<Exact>(2, 3, random_unit_vector<Exact>(rng, 4)), 0, 4, 0.0);
}

TEST_CASE("float presentations") {
    const double r = 1.0 / std::sqrt(2.0);
    check_round_trip(make_sub_cuntz<Float>(2, 2, {r, r, 0.0, 0.0}), 2, 4, 1e-9);
}

TEST_CASE("unstabilized ranks give only a lower bound") {
    const auto ex = extract_fcs(grid_vector_state<Exact>(2), 4);
    CHECK_FALSE(ex.presentation);
    CHECK_FALSE(ex.stabilized_at);
    CHECK(ex.level_ranks == std::vector<std::size_t>{1, 2, 3, 4, 5});
}

TEST_CASE("orbit span growth") {
    FcsPresentation<Exact> p;
    p.n = 2;
    p.d = 2;
    p.A = {Matrix<Exact>(2, 2), Matrix<Exact>(2, 2)};
    p.A[0](1, 0) = Exact(1);
    p.A[1](0, 1) = Exact(1);
    p.omega = {Exact(1), Exact(0)};
    p.metric = Matrix<Exact>::identity(2);
    CHECK(orbit_span_growth(p).back() == 2);
    CHECK(orbit_closure_cdim(p) == 2);
    CHECK(check_row_isometry(p));
}

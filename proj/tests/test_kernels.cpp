#include "cuntzlab/kernels.hpp"
#include "cuntzlab/random.hpp"
#include "cuntzlab/shiftrep.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace cuntzlab;

namespace {

std::vector<MomentFunctional<Exact>> sample_states() {
    Rng rng(23);
    return {
        make_sub_cuntz<Exact>(2, 3, random_unit_vector<Exact>(rng, 8)),
        make_induced_product<Exact>({random_unit_vector<Exact>(rng, 2)},
                                    {random_unit_vector<Exact>(rng, 2), random_unit_vector<Exact>(rng, 2)}),
        vector_state<Exact>(EventuallyPeriodicWord(2, {1, 2}, {2, 1, 1})),
        make_orthogonal_tail<Exact>(2),
    };
}

}  // namespace

TEST_CASE("parallel Gram assembly matches the serial reference") {
    const auto words = words_up_to(2, 4);
    for (const auto& w : sample_states()) {
        const auto a = gram_matrix(w, words, ExecPolicy::Serial);
        const auto b = gram_matrix(w, words, ExecPolicy::Parallel);
        for (std::size_t i = 0; i < words.size(); ++i)
            for (std::size_t j = 0; j < words.size(); ++j) {
                CHECK(a(i, j) == b(i, j));
                CHECK(a(i, j) == w(words[i], words[j]));
            }
        CHECK(gram_column(w, Word{1, 2}, words, ExecPolicy::Serial) ==
              gram_column(w, Word{1, 2}, words, ExecPolicy::Parallel));
    }
}

TEST_CASE("tracker rank equals the rank of the full Gram matrix") {
    for (const auto& w : sample_states()) {
        GramRankTracker<Exact> serial(w, {}, ExecPolicy::Serial), parallel(w, {}, ExecPolicy::Parallel);
        for (std::size_t L = 0; L <= 4; ++L) {
            const std::size_t rs = serial.add_next_length();
            const std::size_t rp = parallel.add_next_length();
            CHECK(rs == rp);
            CHECK(serial.pivots() == parallel.pivots());
            CHECK(rs == rank(gram_matrix(w, words_up_to(2, L), ExecPolicy::Serial), 0.0));
        }
    }
}

TEST_CASE("pivot norms are positive") {
    const auto w = sample_states()[0];
    GramRankTracker<Exact> t(w);
    for (int L = 0; L <= 3; ++L)
        t.add_next_length();
    for (const auto& d : t.pivot_norms())
        CHECK(d.re > 0);
}

TEST_CASE("exceptions inside parallel regions reach the caller") {
    const auto w = make_custom<Exact>(2, "throws", [](const Word& J, const Word& K) -> Exact {
        if (J.size() + K.size() >= 5)
            throw std::runtime_error("boom");
        return Exact(J == K && J.empty() ? 1 : 0);
    });
    CHECK_THROWS_AS(gram_matrix(w, words_up_to(2, 3), ExecPolicy::Parallel), std::runtime_error);
    GramRankTracker<Exact> t(w, {}, ExecPolicy::Parallel);
    CHECK_THROWS_AS((t.add_next_length(), t.add_next_length(), t.add_next_length(), t.add_next_length()),
                    std::runtime_error);
}

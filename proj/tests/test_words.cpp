#include "cuntzlab/error.hpp"
#include "cuntzlab/words.hpp"

#include <doctest.h>

#include <algorithm>

using namespace cuntzlab;

namespace {

std::size_t brute_period(const Word& w) {
    for (std::size_t p = 1; p <= w.size(); ++p) {
        bool ok = true;
        for (std::size_t i = 0; i + p < w.size(); ++i)
            ok = ok && w[i] == w[i + p];
        if (ok)
            return p;
    }
    return w.size();
}

bool brute_primitive(const Word& w) {
    for (std::size_t d = 1; d < w.size(); ++d)
        if (w.size() % d == 0 && w.prefix(d).power(w.size() / d) == w)
            return false;
    return true;
}

Word brute_least_rotation(const Word& w) {
    Word best = w;
    for (std::size_t k = 0; k < w.size(); ++k)
        best = std::min(best, w.drop(k) + w.prefix(k));
    return best;
}

// Two eventually periodic words are tail equivalent iff long prefixes share a
// common tail after dropping some number of letters from each.
bool brute_tail_equivalent(const EventuallyPeriodicWord& x, const EventuallyPeriodicWord& y) {
    const std::size_t window = 24;
    for (std::size_t a = 0; a <= 8; ++a)
        for (std::size_t b = 0; b <= 8; ++b) {
            bool same = true;
            for (std::size_t i = 0; i < window && same; ++i)
                same = x.at(a + i) == y.at(b + i);
            if (same)
                return true;
        }
    return false;
}

}  // namespace

TEST_CASE("smallest period and primitivity agree with brute force") {
    for (int n = 2; n <= 3; ++n)
        for (const Word& w : words_up_to(n, n == 2 ? 8 : 5)) {
            if (w.empty())
                continue;
            const std::size_t p = brute_period(w);
            CHECK(smallest_period(w) == p);
            CHECK(is_primitive(w) == brute_primitive(w));
            const auto [root, e] = primitive_root(w);
            CHECK(root.power(e) == w);
            CHECK(brute_primitive(root));
        }
}

TEST_CASE("least rotation and conjugacy") {
    for (const Word& w : words_up_to(2, 7)) {
        if (w.empty())
            continue;
        CHECK(rotate(w, least_rotation(w)) == brute_least_rotation(w));
        for (std::size_t k = 0; k < w.size(); ++k)
            CHECK(words_conjugate(w, rotate(w, k)));
    }
    CHECK(words_conjugate(Word{1, 2}, Word{2, 1}));
    CHECK_FALSE(words_conjugate(Word{1, 1, 2}, Word{1, 2, 2}));
}

TEST_CASE("empty word has no primitive root") {
    CHECK_THROWS_AS(primitive_root(Word{}), Error);
}

TEST_CASE("canonical eventually periodic words") {
    const EventuallyPeriodicWord x(2, {1, 2}, {1, 2});
    CHECK(x.preperiod().empty());
    CHECK(x.period() == Word{1, 2});
    const EventuallyPeriodicWord y(2, {}, {1, 2, 1, 2});
    CHECK(y.period() == Word{1, 2});
    const EventuallyPeriodicWord z(2, {2, 1}, {1});
    CHECK(z.preperiod() == Word{2});
    for (std::size_t i = 0; i < 12; ++i)
        CHECK(z.at(i) == (i == 0 ? 2 : 1));
}

TEST_CASE("tail equivalence agrees with brute force") {
    std::vector<EventuallyPeriodicWord> all;
    for (const Word& pre : words_up_to(2, 2))
        for (std::size_t len = 1; len <= 3; ++len)
            for (const Word& per : words_of_length(2, len))
                all.emplace_back(2, pre, per);
    for (const auto& x : all)
        for (const auto& y : all)
            CHECK(tail_equivalent(x, y) == brute_tail_equivalent(x, y));
}

TEST_CASE("alphabet mismatch") {
    CHECK_THROWS_AS(tail_equivalent(EventuallyPeriodicWord(2, {}, {1}), EventuallyPeriodicWord(3, {}, {1})), Error);
}

TEST_CASE("invalid letters are rejected") {
    CHECK_THROWS_AS(Word({1, 3}).validate(2), Error);
    CHECK_NOTHROW(Word({1, 2}).validate(2));
}

TEST_CASE("lazy words are bounded by their horizon") {
    const auto tm = LazyWord::thue_morse(64);
    const Word expect{1, 2, 2, 1, 2, 1, 1, 2};
    CHECK(tm.prefix(8) == expect);
    CHECK_THROWS_AS(tm.at(64), Error);
}

#include "cuntzlab/words.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace cuntzlab {

Word Word::prefix(std::size_t len) const {
    len = std::min(len, letters_.size());
    return Word(std::vector<Letter>(letters_.begin(), letters_.begin() + static_cast<long>(len)));
}

Word Word::drop(std::size_t k) const {
    k = std::min(k, letters_.size());
    return Word(std::vector<Letter>(letters_.begin() + static_cast<long>(k), letters_.end()));
}

bool Word::starts_with(const Word& p) const {
    return p.size() <= size() && std::equal(p.begin(), p.end(), letters_.begin());
}

Word Word::pushed(Letter a) const {
    Word w = *this;
    w.letters_.push_back(a);
    return w;
}

Word Word::prepended(Letter a) const {
    std::vector<Letter> v;
    v.reserve(size() + 1);
    v.push_back(a);
    v.insert(v.end(), letters_.begin(), letters_.end());
    return Word(std::move(v));
}

Word Word::power(std::size_t p) const {
    std::vector<Letter> v;
    v.reserve(size() * p);
    for (std::size_t i = 0; i < p; ++i)
        v.insert(v.end(), letters_.begin(), letters_.end());
    return Word(std::move(v));
}

Word Word::reversed() const {
    return Word(std::vector<Letter>(letters_.rbegin(), letters_.rend()));
}

void Word::validate(int n) const {
    for (Letter a : letters_)
        if (a < 1 || a > n)
            throw Error(ErrorCode::InvalidLetter,
                        "letter " + std::to_string(a) + " outside 1.." + std::to_string(n));
}

bool Word::all_equal(Letter a) const {
    return std::all_of(letters_.begin(), letters_.end(), [a](Letter b) { return a == b; });
}

std::string Word::str() const {
    if (letters_.empty())
        return "∅";
    bool wide = std::any_of(letters_.begin(), letters_.end(), [](Letter a) { return a > 9; });
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (wide && i > 0)
            out.push_back('.');
        out += std::to_string(letters_[i]);
    }
    return out;
}

Word operator+(const Word& a, const Word& b) {
    std::vector<Letter> v = a.letters_;
    v.insert(v.end(), b.letters_.begin(), b.letters_.end());
    return Word(std::move(v));
}

std::vector<std::size_t> prefix_function(const Word& w) {
    std::vector<std::size_t> pi(w.size(), 0);
    for (std::size_t i = 1; i < w.size(); ++i) {
        std::size_t k = pi[i - 1];
        while (k > 0 && w[i] != w[k])
            k = pi[k - 1];
        if (w[i] == w[k])
            ++k;
        pi[i] = k;
    }
    return pi;
}

std::size_t smallest_period(const Word& w) {
    if (w.empty())
        return 0;
    return w.size() - prefix_function(w).back();
}

std::pair<Word, std::size_t> primitive_root(const Word& w) {
    if (w.empty())
        throw Error(ErrorCode::EmptyWord, "primitive_root of the empty word");
    std::size_t p = smallest_period(w);
    if (w.size() % p != 0)
        p = w.size();
    return {w.prefix(p), w.size() / p};
}

bool is_primitive(const Word& w) { return !w.empty() && primitive_root(w).second == 1; }

Word rotate(const Word& w, std::size_t k) {
    if (w.empty())
        return w;
    k %= w.size();
    return w.drop(k) + w.prefix(k);
}

std::size_t least_rotation(const Word& w) {
    // Booth's algorithm on the doubled word.
    const std::size_t n = w.size();
    if (n == 0)
        return 0;
    std::vector<long> f(2 * n, -1);
    std::size_t k = 0;
    auto at = [&](std::size_t i) { return w[i % n]; };
    for (std::size_t j = 1; j < 2 * n; ++j) {
        Letter sj = at(j);
        long i = f[j - k - 1];
        while (i != -1 && sj != at(k + static_cast<std::size_t>(i) + 1)) {
            if (sj < at(k + static_cast<std::size_t>(i) + 1))
                k = j - static_cast<std::size_t>(i) - 1;
            i = f[static_cast<std::size_t>(i)];
        }
        if (sj != at(k + static_cast<std::size_t>(i) + 1)) {
            if (sj < at(k))
                k = j;
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    return k % n;
}

bool words_conjugate(const Word& w1, const Word& w2) {
    if (w1.size() != w2.size())
        return false;
    if (w1.empty())
        return true;
    return rotate(w1, least_rotation(w1)) == rotate(w2, least_rotation(w2));
}

std::vector<Word> words_of_length(int n, std::size_t len) {
    std::vector<Word> out;
    std::vector<Letter> cur(len, 1);
    for (;;) {
        out.emplace_back(cur);
        std::size_t i = len;
        while (i > 0 && cur[i - 1] == n)
            cur[--i] = 1;
        if (i == 0)
            break;
        ++cur[i - 1];
    }
    return out;
}

std::vector<Word> words_up_to(int n, std::size_t max_len) {
    std::vector<Word> out;
    for (std::size_t len = 0; len <= max_len; ++len) {
        auto level = words_of_length(n, len);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

EventuallyPeriodicWord::EventuallyPeriodicWord(int n, Word preperiod, Word period)
    : n_(n), pre_(std::move(preperiod)), per_(std::move(period)) {
    if (per_.empty())
        throw Error(ErrorCode::EmptyWord, "eventually periodic word needs a nonempty period");
    pre_.validate(n_);
    per_.validate(n_);
    per_ = primitive_root(per_).first;
    // x = pre·per^∞ = pre'·(a·per')^∞ whenever pre = pre'·a and per = per'·a.
    while (!pre_.empty() && pre_.back() == per_.back()) {
        pre_ = pre_.prefix(pre_.size() - 1);
        per_ = rotate(per_, per_.size() - 1);
    }
}

Letter EventuallyPeriodicWord::at(std::size_t i) const {
    if (i < pre_.size())
        return pre_[i];
    return per_[(i - pre_.size()) % per_.size()];
}

Word EventuallyPeriodicWord::prefix(std::size_t len) const {
    std::vector<Letter> v(len);
    for (std::size_t i = 0; i < len; ++i)
        v[i] = at(i);
    return Word(std::move(v));
}

EventuallyPeriodicWord EventuallyPeriodicWord::shifted(std::size_t k) const {
    if (k <= pre_.size())
        return EventuallyPeriodicWord(n_, pre_.drop(k), per_);
    return EventuallyPeriodicWord(n_, Word{}, rotate(per_, (k - pre_.size()) % per_.size()));
}

Word EventuallyPeriodicWord::tail_key() const { return rotate(per_, least_rotation(per_)); }

std::size_t EventuallyPeriodicWord::tail_phase() const {
    const std::size_t d = per_.size();
    return (d - least_rotation(per_)) % d;
}

std::string EventuallyPeriodicWord::str() const {
    return (pre_.empty() ? std::string() : pre_.str()) + "(" + per_.str() + ")^∞";
}

bool tail_equivalent(const EventuallyPeriodicWord& x, const EventuallyPeriodicWord& y) {
    if (x.alphabet() != y.alphabet())
        throw Error(ErrorCode::AlphabetMismatch, "tail_equivalent over different alphabets");
    return x.tail_key() == y.tail_key();
}

ShiftedTailData shifted_tail_data(const EventuallyPeriodicWord& x) {
    return {x.period().size(), x.preperiod().size() + x.period().size()};
}

namespace {

std::int64_t isqrt(std::int64_t v) {
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
    while (r * r > v)
        --r;
    while ((r + 1) * (r + 1) <= v)
        ++r;
    return r;
}

// floor(k·(3-√5)/2), exact in integer arithmetic.
std::int64_t floor_golden(std::int64_t k) {
    std::int64_t a = 3 * k - isqrt(5 * k * k);
    std::int64_t t = a - 1;
    return t >= 0 ? t / 2 : -((-t + 1) / 2);
}

Letter thue_morse_letter(std::size_t i) { return 1 + (__builtin_popcountll(i) & 1); }

Letter fibonacci_letter(std::size_t i) {
    auto k = static_cast<std::int64_t>(i);
    return static_cast<Letter>(1 + floor_golden(k + 2) - floor_golden(k + 1));
}

}  // namespace

LazyWord::LazyWord(std::string name, int n, std::function<Letter(std::size_t)> rule, std::size_t horizon)
    : name_(std::move(name)), n_(n), horizon_(horizon) {
    auto cache = std::make_shared<std::vector<Letter>>(horizon);
    for (std::size_t i = 0; i < horizon; ++i) {
        (*cache)[i] = rule(i);
        if ((*cache)[i] < 1 || (*cache)[i] > n)
            throw Error(ErrorCode::InvalidLetter, "lazy word rule produced an invalid letter");
    }
    cache_ = std::move(cache);
}

LazyWord LazyWord::thue_morse(std::size_t horizon) { return LazyWord("thue_morse", 2, thue_morse_letter, horizon); }

LazyWord LazyWord::fibonacci(std::size_t horizon) { return LazyWord("fibonacci", 2, fibonacci_letter, horizon); }

LazyWord LazyWord::preset(const std::string& name, std::size_t horizon) {
    if (name == "thue_morse")
        return thue_morse(horizon);
    if (name == "fibonacci")
        return fibonacci(horizon);
    throw Error(ErrorCode::SchemaError, "unknown lazy word preset '" + name + "'");
}

Letter LazyWord::at(std::size_t i) const {
    if (i >= horizon_)
        throw Error(ErrorCode::TailNotCertified,
                    "position " + std::to_string(i) + " is past the horizon of " + name_);
    return (*cache_)[i];
}

Word LazyWord::prefix(std::size_t len) const {
    std::vector<Letter> v(len);
    for (std::size_t i = 0; i < len; ++i)
        v[i] = at(i);
    return Word(std::move(v));
}

}  // namespace cuntzlab

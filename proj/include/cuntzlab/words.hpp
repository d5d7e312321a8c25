#pragma once

#include "cuntzlab/error.hpp"

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace cuntzlab {

/// Letters are 1-based: a word over n letters uses 1..n.
using Letter = int;

class Word {
public:
    Word() = default;
    Word(std::initializer_list<Letter> letters) : letters_(letters) {}
    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    Letter operator[](std::size_t i) const { return letters_[i]; }
    Letter front() const { return letters_.front(); }
    Letter back() const { return letters_.back(); }
    auto begin() const { return letters_.begin(); }
    auto end() const { return letters_.end(); }
    const std::vector<Letter>& letters() const { return letters_; }

    Word prefix(std::size_t len) const;
    /// The word with its first k letters removed.
    Word drop(std::size_t k) const;
    bool starts_with(const Word& p) const;
    Word pushed(Letter a) const;
    Word prepended(Letter a) const;
    Word power(std::size_t p) const;
    Word reversed() const;

    /// Throws InvalidLetter unless every letter is in 1..n.
    void validate(int n) const;
    bool all_equal(Letter a) const;

    /// "12", "1.10.2" when some letter exceeds 9, "∅" for the empty word.
    std::string str() const;

    friend Word operator+(const Word& a, const Word& b);
    friend auto operator<=>(const Word&, const Word&) = default;
    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<Letter> letters_;
};

/// Orders by length first, then lexicographically.
struct ShortLex {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    }
};

/// Knuth-Morris-Pratt failure function: pi[i] is the length of the longest
/// proper border of w[0..i].
std::vector<std::size_t> prefix_function(const Word& w);

/// Smallest p with w[i] = w[i+p]; equals |w| - border(w) when that divides |w|,
/// otherwise the word is primitive.
std::size_t smallest_period(const Word& w);

/// Returns (root, exponent) with w = root^exponent and root primitive.
/// Throws EmptyWord for the empty word.
std::pair<Word, std::size_t> primitive_root(const Word& w);

bool is_primitive(const Word& w);

/// Left rotation: rotate(w, k) = w[k..] w[..k].
Word rotate(const Word& w, std::size_t k);

/// Start index of the lexicographically least rotation (Booth's algorithm).
std::size_t least_rotation(const Word& w);

/// True iff w2 is a cyclic rotation of w1.
bool words_conjugate(const Word& w1, const Word& w2);

/// All words of the given length in lexicographic order.
std::vector<Word> words_of_length(int n, std::size_t len);

/// All words of length <= max_len in shortlex order (starting with the empty word).
std::vector<Word> words_up_to(int n, std::size_t max_len);

/**
 * @brief Infinite word pre · per · per · ... in canonical form.
 *
 * The period is primitive and the preperiod cannot lose its last letter
 * without changing the word (its last letter differs from the last letter of
 * the period). The period is stored as the block that directly follows the
 * preperiod; tail_key() gives the phase-free class representative.
 */
class EventuallyPeriodicWord {
public:
    EventuallyPeriodicWord(int n, Word preperiod, Word period);

    int alphabet() const { return n_; }
    const Word& preperiod() const { return pre_; }
    const Word& period() const { return per_; }
    bool purely_periodic() const { return pre_.empty(); }

    /// Letter at 0-based position i.
    Letter at(std::size_t i) const;
    Word prefix(std::size_t len) const;

    /// The word with its first k letters removed, canonicalized.
    EventuallyPeriodicWord shifted(std::size_t k) const;

    /// Least rotation of the period: equal keys iff tail equivalent.
    Word tail_key() const;
    /// Offset of the stored period inside tail_key().
    std::size_t tail_phase() const;

    std::string str() const;

    friend bool operator==(const EventuallyPeriodicWord&, const EventuallyPeriodicWord&) = default;

private:
    int n_;
    Word pre_;
    Word per_;
};

/// Throws AlphabetMismatch when the alphabets differ.
bool tail_equivalent(const EventuallyPeriodicWord& x, const EventuallyPeriodicWord& y);

struct ShiftedTailData {
    std::size_t period_length;
    std::size_t distinct_shifts;
};

ShiftedTailData shifted_tail_data(const EventuallyPeriodicWord& x);

/**
 * @brief Deterministic infinite word known only through a letter rule.
 *
 * Every query is bounded by the horizon; asking past it raises
 * TailNotCertified. Results derived from a LazyWord are evidence only.
 */
class LazyWord {
public:
    LazyWord(std::string name, int n, std::function<Letter(std::size_t)> rule, std::size_t horizon = 256);

    static LazyWord thue_morse(std::size_t horizon = 256);
    static LazyWord fibonacci(std::size_t horizon = 256);
    static LazyWord preset(const std::string& name, std::size_t horizon = 256);

    int alphabet() const { return n_; }
    const std::string& name() const { return name_; }
    std::size_t horizon() const { return horizon_; }

    Letter at(std::size_t i) const;
    Word prefix(std::size_t len) const;

private:
    std::string name_;
    int n_;
    std::size_t horizon_;
    std::shared_ptr<const std::vector<Letter>> cache_;
};

}  // namespace cuntzlab

#pragma once

#include "cuntzlab/moments.hpp"
#include "cuntzlab/symalg.hpp"
#include "cuntzlab/words.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cuntzlab {

/// Basis vector e_y of the shift representation, y = prefix · x^(phase).
struct TailKey {
    Word prefix;
    std::size_t phase = 0;
    friend auto operator<=>(const TailKey&, const TailKey&) = default;
    friend bool operator==(const TailKey&, const TailKey&) = default;
};

/// Shift representation Π(s_i)e_y = e_{iy} restricted to the tail class of a
/// reference word x. Keys are kept canonical: a prefix letter that merely
/// repeats the tail is absorbed into the phase.
class ShiftRepresentation {
public:
    using Key = TailKey;

    explicit ShiftRepresentation(EventuallyPeriodicWord x);
    explicit ShiftRepresentation(LazyWord x);

    int alphabet() const;
    bool lazy() const { return std::holds_alternative<LazyWord>(ref_); }
    const EventuallyPeriodicWord* word() const { return std::get_if<EventuallyPeriodicWord>(&ref_); }
    const LazyWord* lazy_word() const { return std::get_if<LazyWord>(&ref_); }

    /// Letter of x at a 0-based position.
    Letter reference_letter(std::size_t pos) const;
    std::size_t reduce_phase(std::size_t p) const;
    Key canonical(Key k) const;
    std::optional<Key> apply(const Key& k, Letter i, bool dagger) const;
    Key reference() const { return {}; }

    /// The infinite word of an eventually periodic key.
    EventuallyPeriodicWord word_of(const Key& k) const;
    std::string key_str(const Key& k) const;

private:
    std::variant<EventuallyPeriodicWord, LazyWord> ref_;
};

/// Grid representation on l²(N×Z): π(s_i)e_{k,m} = e_{n(k-1)+i, m+1}.
struct GridKey {
    std::int64_t k = 1;
    std::int64_t m = 0;
    friend auto operator<=>(const GridKey&, const GridKey&) = default;
    friend bool operator==(const GridKey&, const GridKey&) = default;
};

class GridRepresentation {
public:
    using Key = GridKey;

    explicit GridRepresentation(int n);
    int alphabet() const { return n_; }
    std::optional<Key> apply(const Key& k, Letter i, bool dagger) const;
    Key reference() const { return {1, 0}; }
    std::string key_str(const Key& k) const;
    /// Letters stripped by s_i* starting from e_{k,m}: the base-n digits of k-1
    /// (least significant first, digit d as letter d+1) followed by 1s.
    Letter address_letter(const Key& k, std::size_t t) const;

private:
    int n_;
};

using Representation = std::variant<ShiftRepresentation, GridRepresentation>;

template <class Key, class F>
using StateVector = std::map<Key, F>;

template <class Key, class F>
F inner(const StateVector<Key, F>& a, const StateVector<Key, F>& b) {
    F s(0);
    for (const auto& [k, x] : a) {
        auto it = b.find(k);
        if (it != b.end())
            s += conjugate(x) * it->second;
    }
    return s;
}

template <class Rep, class F>
StateVector<typename Rep::Key, F> basis_vector(const Rep& rep, const typename Rep::Key& k) {
    (void)rep;
    return {{k, F(1)}};
}

template <class Rep, class F>
StateVector<typename Rep::Key, F> apply_generator(const Rep& rep, const StateVector<typename Rep::Key, F>& v,
                                                  Letter i, bool dagger) {
    StateVector<typename Rep::Key, F> out;
    for (const auto& [k, c] : v)
        if (auto k2 = rep.apply(k, i, dagger)) {
            auto& slot = out[*k2];
            slot += c;
        }
    for (auto it = out.begin(); it != out.end();)
        it = is_zero(it->second, 0.0) ? out.erase(it) : std::next(it);
    return out;
}

/// π(x)v for a finite element x.
template <class Rep, class F>
StateVector<typename Rep::Key, F> apply_element(const Rep& rep, const CuntzElement<F>& x,
                                                const StateVector<typename Rep::Key, F>& v) {
    StateVector<typename Rep::Key, F> out;
    for (const auto& [key, c] : x.terms()) {
        auto w = v;
        for (Letter a : key.second)  // s_K* = s_{k_l}* ... s_{k_1}*: s_{k_1}* acts first
            w = apply_generator(rep, w, a, true);
        for (std::size_t t = key.first.size(); t-- > 0;)
            w = apply_generator(rep, w, key.first[t], false);
        for (const auto& [k, y] : w)
            out[k] += c * y;
    }
    for (auto it = out.begin(); it != out.end();)
        it = is_zero(it->second, 0.0) ? out.erase(it) : std::next(it);
    return out;
}

// ---------------------------------------------------------------------------
// Vector states

/// ω_x = ⟨e_x, Π(·) e_x⟩ for an eventually periodic x.
template <class F>
class ShiftStateModel final : public StateModel<F> {
public:
    explicit ShiftStateModel(EventuallyPeriodicWord x);
    int alphabet() const override { return x_.alphabet(); }
    Family family() const override { return Family::Shift; }
    F moment(const Word& J, const Word& K) const override;
    std::optional<GnsVector<F>> gns_vector(const Word& J) const override;
    std::string describe() const override;
    const EventuallyPeriodicWord& word() const { return x_; }
    const ShiftRepresentation& representation() const { return rep_; }

private:
    std::optional<TailKey> strip(const Word& J) const;
    EventuallyPeriodicWord x_;
    ShiftRepresentation rep_;
};

/// ω_x for a non-eventually-periodic x known through a LazyWord. Distinct
/// shifts are taken to be distinct tails, which is exactly the assumption the
/// horizon cannot certify.
template <class F>
class LazyShiftStateModel final : public StateModel<F> {
public:
    explicit LazyShiftStateModel(LazyWord x);
    int alphabet() const override { return x_.alphabet(); }
    Family family() const override { return Family::LazyShift; }
    F moment(const Word& J, const Word& K) const override;
    std::optional<GnsVector<F>> gns_vector(const Word& J) const override;
    std::string describe() const override;
    const LazyWord& word() const { return x_; }

private:
    bool is_prefix(const Word& J) const;
    LazyWord x_;
};

/// ⟨e_{k,m}, π(·) e_{k,m}⟩ in the grid representation.
template <class F>
class GridStateModel final : public StateModel<F> {
public:
    GridStateModel(int n, GridKey key);
    int alphabet() const override { return rep_.alphabet(); }
    Family family() const override { return Family::Grid; }
    F moment(const Word& J, const Word& K) const override;
    std::optional<GnsVector<F>> gns_vector(const Word& J) const override;
    std::string describe() const override;
    const GridKey& key() const { return key_; }

private:
    bool valid(const Word& J) const;
    GridRepresentation rep_;
    GridKey key_;
};

template <class F>
MomentFunctional<F> vector_state(const EventuallyPeriodicWord& x);

template <class F>
MomentFunctional<F> vector_state(const LazyWord& x);

/// Vector state of the basis vector `key` in a shift representation.
template <class F>
MomentFunctional<F> vector_state(const ShiftRepresentation& rep, const TailKey& key);

template <class F>
MomentFunctional<F> grid_vector_state(int n, GridKey key = {1, 0});

// ---------------------------------------------------------------------------
// DHJ grading and the convergence lemma

template <class Key, class F>
struct DhjGrading {
    /// levels[l] spans H_l. Float mode: orthonormal. Exact mode: orthogonal,
    /// left unnormalized to avoid square roots.
    std::vector<std::vector<StateVector<Key, F>>> levels;
    bool normalized = false;
};

/// Throws NotInvariant unless s_i* M ⊂ span(M) for every i.
template <class Rep, class F>
void require_invariant(const Rep& rep, const std::vector<StateVector<typename Rep::Key, F>>& M, double tol);

template <class Rep, class F>
DhjGrading<typename Rep::Key, F> dhj_grading(const Rep& rep, const std::vector<StateVector<typename Rep::Key, F>>& M,
                                             std::size_t depth, const Tolerance& tol = {});

/// ‖P_M a[l]* v − a[l]* v‖ for l = 1..L, with a[l] = a_1 ⋯ a_l.
template <class Rep, class F>
std::vector<double> lemma_convergence_check(const Rep& rep, const std::vector<StateVector<typename Rep::Key, F>>& M,
                                            const std::function<CuntzElement<F>(std::size_t)>& a,
                                            const StateVector<typename Rep::Key, F>& v, std::size_t L,
                                            const Tolerance& tol = {});

}  // namespace cuntzlab

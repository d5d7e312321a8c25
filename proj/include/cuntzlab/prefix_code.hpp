#pragma once

#include "cuntzlab/symalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cuntzlab {

enum class PrefixCodeKind { General, SubCuntz, GeometricProgression };

/// All words of length m in lexicographic order.
std::vector<Word> uniform_code(int n, std::size_t m);

/// {n^r i : r < k, i < n} followed by n^k, indexed (n-1)r + i.
std::vector<Word> geometric_progression_code(int n, std::size_t k);

/// Throws NotPrefixFree if some word is a prefix of another (or empty).
void require_prefix_free(const std::vector<Word>& code);

template <class F>
struct LowMomentSolution {
    std::map<Word, F> table;  // v_C = ω(s_C) for |C| <= M, v_∅ = 1
    std::size_t r1_solution_dim = 0;
    std::size_t solution_dim = 0;  // after augmentation, if it ran
    bool unique = false;
    std::string pinned_by;  // "R1", "R1+sandwich" or "none"
};

/**
 * Solves for v_C = ω(s_C), |C| <= max|W|, from π(u)Ω = Ω with u = Σ z_W s_W.
 *
 * R1: v_C = Σ_W conj(z_W) ⟨s_C* s_W Ω, Ω⟩ for every nonempty C.
 * The system is conjugate-linear, so it is solved over real coordinates with
 * v_∅ kept as an unknown; solution_dim is the dimension of that homogeneous
 * solution space. When R1 leaves it above 1 the sandwich equations
 * v_C = Σ conj(z_A) z_B ω(s_A* s_C s_B) are appended. The returned table is
 * the minimum-norm solution with v_∅ = 1.
 */
template <class F>
LowMomentSolution<F> solve_low_moments(int n, const std::vector<Word>& code, const std::vector<F>& z,
                                       const Tolerance& tol = {});

template <class F>
class PrefixCodeState {
public:
    PrefixCodeState(int n, std::vector<Word> code, std::vector<F> z, PrefixCodeKind kind, std::size_t order,
                    const Tolerance& tol = {});

    int alphabet() const { return n_; }
    const std::vector<Word>& code() const { return code_; }
    const std::vector<F>& z() const { return z_; }
    PrefixCodeKind kind() const { return kind_; }
    /// m for sub-Cuntz, k for geometric progression, max length otherwise.
    std::size_t order() const { return order_; }
    std::size_t max_length() const { return max_len_; }
    const CuntzElement<F>& u() const { return u_; }
    const LowMomentSolution<F>& solution() const { return solution_; }

    /// s_J* Ω = Σ_X β_X s_X Ω, unrolled through π(u)Ω = Ω.
    std::map<Word, F> annihilation_expansion(const Word& J) const;

    F moment(const Word& J, const Word& K) const;

private:
    F table(const Word& C) const;
    F pair_moment(const Word& X, const Word& Y) const;

    int n_;
    std::vector<Word> code_;
    std::vector<F> z_;
    PrefixCodeKind kind_;
    std::size_t order_;
    std::size_t max_len_ = 0;
    CuntzElement<F> u_;
    LowMomentSolution<F> solution_;
};

/// Largest p such that z = x^{⊗p} for some x (z indexed by words of length m).
/// Decided by block-rotation invariance plus a rank-1 split, both exact in exact mode.
template <class F>
std::size_t tensor_power_exponent(const std::vector<F>& z, int n, std::size_t m, double tol);

/// Rank-1 factorization of z ∈ C^{n^q} ⊗ C^{n^{m-q}} if it exists.
template <class F>
std::optional<std::pair<std::vector<F>, std::vector<F>>> rank_one_split(const std::vector<F>& z, int n,
                                                                        std::size_t m, std::size_t q,
                                                                        double tol);

template <class F>
std::vector<F> tensor_product(const std::vector<F>& a, const std::vector<F>& b);

}  // namespace cuntzlab

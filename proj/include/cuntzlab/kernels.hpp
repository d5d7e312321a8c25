#pragma once

#include "cuntzlab/linalg.hpp"
#include "cuntzlab/moments.hpp"

#include <vector>

namespace cuntzlab {

enum class ExecPolicy { Serial, Parallel };

/// G[a][b] = ω(s_{w_a} s_{w_b}*). Only the upper triangle is evaluated; the
/// lower one is filled by Hermitian symmetry.
template <class F>
Matrix<F> gram_matrix(const MomentFunctional<F>& w, const std::vector<Word>& words,
                      ExecPolicy policy = ExecPolicy::Parallel);

/// ω(s_p s_c*) for every candidate c.
template <class F>
std::vector<F> gram_column(const MomentFunctional<F>& w, const Word& pivot, const std::vector<Word>& candidates,
                           ExecPolicy policy = ExecPolicy::Parallel);

/**
 * @brief Level-by-level pivoted Cholesky of the Gram matrix of {π(s_J)*Ω}.
 *
 * Words are fed one length at a time. Within a level the candidate with the
 * largest residual squared norm becomes the next pivot (ties go to the
 * earlier word); the level closes once no residual exceeds the rank
 * tolerance. The factorization is kept as LDL^H without square roots, so
 * exact mode never leaves Q(i).
 */
template <class F>
class GramRankTracker {
public:
    GramRankTracker(MomentFunctional<F> w, const Tolerance& tol = {}, ExecPolicy policy = ExecPolicy::Parallel);

    /// Adds one level of candidate words and returns the new rank.
    std::size_t add_level(const std::vector<Word>& candidates);
    /// Adds all words of the next length.
    std::size_t add_next_length();

    std::size_t rank() const { return pivots_.size(); }
    std::size_t levels_done() const { return levels_; }
    const std::vector<Word>& pivots() const { return pivots_; }
    const std::vector<F>& pivot_norms() const { return diag_; }

private:
    MomentFunctional<F> w_;
    Tolerance tol_;
    ExecPolicy policy_;
    std::size_t levels_ = 0;
    std::vector<Word> pivots_;
    std::vector<F> diag_;                // D_k = squared norm of the k-th orthogonalized pivot
    std::vector<std::vector<F>> mu_;     // mu_[k][s] = c_s(p_k) / D_s for s < k
};

}  // namespace cuntzlab

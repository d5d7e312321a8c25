#pragma once

#include "cuntzlab/kernels.hpp"
#include "cuntzlab/linalg.hpp"
#include "cuntzlab/moments.hpp"

#include <optional>
#include <vector>

namespace cuntzlab {

/**
 * @brief Finite-dimensional model of K(ω): A_i = s_i*|_K in a basis of
 * vectors π(s_p)*Ω, the cyclic vector Ω and the Gram metric G of that basis.
 *
 * The basis is not orthonormal; inner products are ⟨x, y⟩_G = x^H G y.
 */
template <class F>
struct FcsPresentation {
    int n = 0;
    std::size_t d = 0;
    std::vector<Matrix<F>> A;  // A[i-1] for letter i
    std::vector<F> omega;
    Matrix<F> metric;
    std::vector<Word> basis_words;  // p with basis vector π(s_p)*Ω, when extracted
};

/// A_J Ω with A_J = A_{j_l} ⋯ A_{j_1}.
template <class F>
std::vector<F> fcs_apply(const FcsPresentation<F>& p, const Word& J);

/// ⟨A_J Ω, A_K Ω⟩_G.
template <class F>
F fcs_moment(const FcsPresentation<F>& p, const Word& J, const Word& K);

/// dim S_L for the span growth S_0 = CΩ, S_{L+1} = S_L + Σ_i A_i S_L, up to
/// the first repeat.
template <class F>
std::vector<std::size_t> orbit_span_growth(const FcsPresentation<F>& p, const Tolerance& tol = {});

template <class F>
std::size_t orbit_closure_cdim(const FcsPresentation<F>& p, const Tolerance& tol = {});

/// Σ_i A_i† A_i = I for the G-adjoint, checked as Σ_i A_i^H G A_i = G.
template <class F>
bool check_row_isometry(const FcsPresentation<F>& p, const Tolerance& tol = {});

template <class F>
struct FcsExtraction {
    std::optional<FcsPresentation<F>> presentation;  // empty means LowerBoundOnly
    std::vector<std::size_t> level_ranks;            // rank of G_L for L = 0..
    std::optional<std::size_t> stabilized_at;        // first L with rank(L) = rank(L+1)
    std::size_t lower_bound() const { return level_ranks.empty() ? 0 : level_ranks.back(); }
};

/// Gram ranks for L = 0..L_max from the pivoted LDL tracker, stopping at the
/// first repeat.
template <class F>
FcsExtraction<F> gram_ranks(const MomentFunctional<F>& w, std::size_t L_max, const Tolerance& tol = {},
                            ExecPolicy policy = ExecPolicy::Parallel);

/// Builds the presentation once the Gram rank stabilizes within L_max, then
/// validates the row isometry and 20 random moments; throws ValidationFailed
/// on mismatch.
template <class F>
FcsExtraction<F> extract_fcs(const MomentFunctional<F>& w, std::size_t L_max, const Tolerance& tol = {},
                             ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace cuntzlab

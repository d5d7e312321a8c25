#pragma once

#include "cuntzlab/prefix_code.hpp"
#include "cuntzlab/symalg.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cuntzlab {

enum class Family {
    Cuntz,
    SubCuntz,
    GeometricProgression,
    PrefixCode,
    InducedProduct,
    Shift,
    LazyShift,
    Grid,
    Sandwich,
    OrthogonalTail,
    Gauge,
    Mixture,
    Custom,
};

std::string family_name(Family f);

/// Coordinates of π(s_J)*Ω in a fixed orthonormal system of the GNS space.
/// Families that know such a system expose it so that δ-tables over long
/// products avoid enumerating all words.
template <class F>
using GnsVector = std::map<long, F>;

template <class F>
F gns_inner(const GnsVector<F>& a, const GnsVector<F>& b) {
    F s(0);
    for (const auto& [k, x] : a) {
        auto it = b.find(k);
        if (it != b.end())
            s += conjugate(x) * it->second;
    }
    return s;
}

/// Facts a family constructor can vouch for analytically.
template <class F>
struct AnalyticFlags {
    std::optional<bool> pure;
    std::string pure_reason;
    std::optional<CuntzElement<F>> minimal_certificate;
    /// a_i for i >= 1, each an isometry in O_n^+.
    std::function<CuntzElement<F>(std::size_t)> properly_infinite_sequence;
    bool properly_infinite_proved = false;
    std::string properly_infinite_reason;
    std::optional<std::vector<F>> equivalent_cuntz;
    std::string equivalence_reason;
};

template <class F>
class StateModel {
public:
    virtual ~StateModel() = default;
    virtual int alphabet() const = 0;
    virtual Family family() const = 0;
    virtual F moment(const Word& J, const Word& K) const = 0;
    virtual std::optional<GnsVector<F>> gns_vector(const Word&) const { return std::nullopt; }
    virtual std::string describe() const = 0;

    const AnalyticFlags<F>& flags() const { return flags_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

protected:
    AnalyticFlags<F> flags_;
    std::vector<std::string> warnings_;
};

/**
 * @brief A state on O_n presented by its moments ω(s_J s_K*).
 *
 * Cheap to copy; the model behind it is immutable and safe to evaluate from
 * several threads at once.
 */
template <class F>
class MomentFunctional {
public:
    explicit MomentFunctional(std::shared_ptr<const StateModel<F>> model) : model_(std::move(model)) {}

    int n() const { return model_->alphabet(); }
    Family family() const { return model_->family(); }
    const StateModel<F>& model() const { return *model_; }
    const AnalyticFlags<F>& flags() const { return model_->flags(); }
    std::string describe() const { return model_->describe(); }

    template <class M>
    const M* as() const {
        return dynamic_cast<const M*>(model_.get());
    }

    F operator()(const Word& J, const Word& K) const { return model_->moment(J, K); }
    std::optional<GnsVector<F>> gns_vector(const Word& J) const { return model_->gns_vector(J); }

    /// ω(x) for a finite element x.
    F apply(const CuntzElement<F>& x) const;

private:
    std::shared_ptr<const StateModel<F>> model_;
};

/// ω(s_J s_K*) with letter validation.
template <class F>
F eval_moment(const MomentFunctional<F>& w, const Word& J, const Word& K);

// ---------------------------------------------------------------------------
// Families

template <class F>
class CuntzModel final : public StateModel<F> {
public:
    CuntzModel(std::vector<F> z, const Tolerance& tol);
    int alphabet() const override { return static_cast<int>(z_.size()); }
    Family family() const override { return Family::Cuntz; }
    F moment(const Word& J, const Word& K) const override;
    std::optional<GnsVector<F>> gns_vector(const Word& J) const override;
    std::string describe() const override;
    const std::vector<F>& z() const { return z_; }
    F z_word(const Word& J) const;

private:
    std::vector<F> z_;
};

template <class F>
class PrefixCodeModel final : public StateModel<F> {
public:
    explicit PrefixCodeModel(PrefixCodeState<F> state);
    int alphabet() const override { return state_.alphabet(); }
    Family family() const override;
    F moment(const Word& J, const Word& K) const override { return state_.moment(J, K); }
    std::string describe() const override;
    const PrefixCodeState<F>& state() const { return state_; }
    /// Largest p with z = x^{⊗p} (sub-Cuntz only; 1 otherwise).
    std::size_t periodicity() const { return periodicity_; }

private:
    PrefixCodeState<F> state_;
    std::size_t periodicity_ = 1;
};

template <class F>
class InducedProductModel final : public StateModel<F> {
public:
    InducedProductModel(std::vector<std::vector<F>> pre, std::vector<std::vector<F>> rep, const Tolerance& tol);
    int alphabet() const override { return n_; }
    Family family() const override { return Family::InducedProduct; }
    F moment(const Word& J, const Word& K) const override;
    std::optional<GnsVector<F>> gns_vector(const Word& J) const override;
    std::string describe() const override;

    /// z^(i), 1-based.
    const std::vector<F>& vector_at(std::size_t i) const;
    const std::vector<std::vector<F>>& pre() const { return pre_; }
    const std::vector<std::vector<F>>& rep() const { return rep_; }
    F z_word(const Word& J) const;

private:
    int n_;
    std::vector<std::vector<F>> pre_, rep_;
};

template <class F>
struct SandwichTerm {
    F coeff;
    CuntzElement<F> element;
};

/// ω'(x) = ω(A* x A) with A = Σ c_l A_l, a finite sum.
template <class F>
class SandwichModel final : public StateModel<F> {
public:
    SandwichModel(MomentFunctional<F> base, std::vector<SandwichTerm<F>> terms, bool assume_equivalent,
                  const Tolerance& tol);
    int alphabet() const override { return base_.n(); }
    Family family() const override { return Family::Sandwich; }
    F moment(const Word& J, const Word& K) const override;
    std::string describe() const override;
    const MomentFunctional<F>& base() const { return base_; }
    const CuntzElement<F>& a() const { return a_; }
    bool assume_equivalent() const { return assume_equivalent_; }

private:
    MomentFunctional<F> base_;
    CuntzElement<F> a_, a_star_;
    bool assume_equivalent_;
};

/**
 * @brief ω'(x) = ω(A* x A) over the Cuntz state ω(s_b) = 1, with
 * A = Σ_{l>=1} γ^l s_j^{l-1} s_b s_j^l and |γ|² = 1/2.
 *
 * Evaluated in the shift picture where Ω = e_{b^∞} and A_l Ω = e_{j^{l-1} b j^l b^∞}.
 * Terms with l <= max(|J|,|K|) + 1 are summed directly. For larger l the
 * vector s_J* A_l Ω survives only when J = j^a; it then keeps a j-run of
 * length l, so it is orthogonal to everything else and the remaining sum is
 * the geometric tail |γ|^{2(N+1)} / (1 - |γ|²).
 */
template <class F>
class OrthogonalTailModel final : public StateModel<F> {
public:
    OrthogonalTailModel(int n, Letter base_letter, Letter spacer, F gamma, const Tolerance& tol);
    int alphabet() const override { return n_; }
    Family family() const override { return Family::OrthogonalTail; }
    F moment(const Word& J, const Word& K) const override;
    std::string describe() const override;
    Letter base_letter() const { return b_; }
    Letter spacer() const { return j_; }
    const F& gamma() const { return gamma_; }
    std::vector<F> base_vector() const;

private:
    std::map<Word, F> annihilate(const Word& J, std::size_t terms) const;
    int n_;
    Letter b_, j_;
    F gamma_;
    RealOf<F> gamma2_;
};

/// ω∘α_g.
template <class F>
class GaugeModel final : public StateModel<F> {
public:
    GaugeModel(MomentFunctional<F> base, Matrix<F> g, const Tolerance& tol);
    int alphabet() const override { return base_.n(); }
    Family family() const override { return Family::Gauge; }
    F moment(const Word& J, const Word& K) const override;
    std::optional<GnsVector<F>> gns_vector(const Word& J) const override;
    std::string describe() const override;
    const MomentFunctional<F>& base() const { return base_; }
    const Matrix<F>& g() const { return g_; }

private:
    std::vector<std::pair<Word, F>> images(const Word& J) const;
    MomentFunctional<F> base_;
    Matrix<F> g_;
};

template <class F>
class MixtureModel final : public StateModel<F> {
public:
    MixtureModel(std::vector<RealOf<F>> weights, std::vector<MomentFunctional<F>> parts, const Tolerance& tol);
    int alphabet() const override { return parts_.front().n(); }
    Family family() const override { return Family::Mixture; }
    F moment(const Word& J, const Word& K) const override;
    std::string describe() const override;
    const std::vector<RealOf<F>>& weights() const { return weights_; }
    const std::vector<MomentFunctional<F>>& parts() const { return parts_; }

private:
    std::vector<RealOf<F>> weights_;
    std::vector<MomentFunctional<F>> parts_;
};

/// A bare evaluator without family guarantees; used for user tables and tests.
template <class F>
class CustomModel final : public StateModel<F> {
public:
    CustomModel(int n, std::string label, std::function<F(const Word&, const Word&)> fn)
        : n_(n), label_(std::move(label)), fn_(std::move(fn)) {}
    int alphabet() const override { return n_; }
    Family family() const override { return Family::Custom; }
    F moment(const Word& J, const Word& K) const override { return fn_(J, K); }
    std::string describe() const override { return label_; }

private:
    int n_;
    std::string label_;
    std::function<F(const Word&, const Word&)> fn_;
};

// ---------------------------------------------------------------------------
// Constructors

template <class F>
MomentFunctional<F> make_cuntz(const std::vector<F>& z, const Tolerance& tol = {});

template <class F>
MomentFunctional<F> make_prefix_code_state(int n, const std::vector<Word>& code, const std::vector<F>& z,
                                           const Tolerance& tol = {});

/// z indexed by the words of length m in lexicographic order.
template <class F>
MomentFunctional<F> make_sub_cuntz(int n, std::size_t m, const std::vector<F>& z, const Tolerance& tol = {});

/// z has (n-1)k + 1 entries, z_{(n-1)r+i} on s_n^r s_i and the last on s_n^k.
template <class F>
MomentFunctional<F> make_geometric_progression(int n, std::size_t k, const std::vector<F>& z,
                                               const Tolerance& tol = {});

template <class F>
MomentFunctional<F> make_induced_product(const std::vector<std::vector<F>>& pre,
                                         const std::vector<std::vector<F>>& rep, const Tolerance& tol = {});

template <class F>
MomentFunctional<F> transform_gauge(const MomentFunctional<F>& w, const Matrix<F>& g, const Tolerance& tol = {});

template <class F>
MomentFunctional<F> transform_sandwich(const MomentFunctional<F>& w, const std::vector<SandwichTerm<F>>& terms,
                                       bool assume_equivalent = false, const Tolerance& tol = {});

/// The schedule c_l = γ^l, A_l = s_j^{l-1} s_b s_j^l over Cuntz e_b. Exact mode
/// defaults to γ = (1+i)/2, float mode to 1/√2; both have |γ|² = 1/2.
template <class F>
MomentFunctional<F> make_orthogonal_tail(int n, Letter base_letter = 1, Letter spacer = 2,
                                         std::optional<F> gamma = std::nullopt, const Tolerance& tol = {});

template <class F>
MomentFunctional<F> make_mixture(const std::vector<RealOf<F>>& weights, const std::vector<MomentFunctional<F>>& parts,
                                 const Tolerance& tol = {});

template <class F>
MomentFunctional<F> make_custom(int n, std::string label, std::function<F(const Word&, const Word&)> fn);

// ---------------------------------------------------------------------------
// Checks

template <class F>
struct PositivityResult {
    bool psd = true;
    double min_eigen = 0.0;
    std::vector<Float> witness;  // eigenvector for min_eigen when psd is false
    std::vector<Word> words;
};

/// Gram matrix over |J|,|K| <= L is Hermitian PSD (exact LDL in exact mode).
template <class F>
PositivityResult<F> positivity_check(const MomentFunctional<F>& w, std::size_t L, const Tolerance& tol = {});

struct ConsistencyReport {
    bool hermitian = true;
    bool cuntz_relation = true;
    bool normalized = true;
    double max_error = 0.0;
};

/// Hermitian symmetry, normalization and Σ_i ω(J i, K i) = ω(J, K) on |J|,|K| <= L.
template <class F>
ConsistencyReport consistency_check(const MomentFunctional<F>& w, std::size_t L, const Tolerance& tol = {});

}  // namespace cuntzlab

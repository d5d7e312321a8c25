#pragma once

#include "cuntzlab/fcs.hpp"
#include "cuntzlab/kernels.hpp"
#include "cuntzlab/moments.hpp"
#include "cuntzlab/shiftrep.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cuntzlab {

struct ClassifyConfig {
    std::size_t max_level = 8;
    std::size_t cutoff = 12;
    Tolerance tol;
    /// Bounded search for u = Σ conj(ω(s_W)) s_W over uniform and geometric
    /// progression codes when no family certificate exists.
    bool search_certificates = false;
    std::size_t search_depth = 4;
    ExecPolicy policy = ExecPolicy::Parallel;
};

enum class CdimStatus { Stabilized, LowerBound };

struct CdimResult {
    std::size_t value = 0;  // exact when Stabilized, a lower bound otherwise
    CdimStatus status = CdimStatus::LowerBound;
    std::vector<std::size_t> levels;
    bool stabilized() const { return status == CdimStatus::Stabilized; }
    std::string str() const;
};

template <class F>
CdimResult cdim(const MomentFunctional<F>& w, const ClassifyConfig& cfg = {});

// ---------------------------------------------------------------------------
// Certificates

enum class CertificateKind { Minimal, ProperlyInfinite, ShiftPeriod, EquivalentToCuntz, LowerBoundOnly };

std::string certificate_name(CertificateKind k);

template <class F>
struct Certificate {
    CertificateKind kind = CertificateKind::LowerBoundOnly;
    std::optional<CuntzElement<F>> u;     // Minimal
    std::vector<CuntzElement<F>> a;       // ProperlyInfinite: a_1..a_cutoff
    std::size_t cutoff = 0;
    bool proved = false;                  // ProperlyInfinite: analytic vs evidence
    std::size_t period = 0;               // ShiftPeriod
    std::vector<F> z;                     // EquivalentToCuntz
    std::string note;
};

/// u*u = I, u ∈ O_n^+ and ω(u) = 1.
template <class F>
bool verify_minimality_certificate(const MomentFunctional<F>& w, const CuntzElement<F>& u, const Tolerance& tol = {});

template <class F>
struct ProperlyInfiniteCheck {
    bool table_is_identity = false;
    bool proved = false;  // analytic flag from the family constructor
    std::size_t cutoff = 0;
    Matrix<F> table;      // table(l-1, k-1) = ω(a[l] a[k]*)
    bool holds() const { return table_is_identity; }
    std::string status() const;
};

/// Checks ω(a[l] a[k]*) = δ_lk for l, k <= cutoff, a[l] = a_1 ⋯ a_l. Each a_i
/// must be an isometry in O_n^+.
template <class F>
ProperlyInfiniteCheck<F> verify_properly_infinite(const MomentFunctional<F>& w,
                                                  const std::function<CuntzElement<F>(std::size_t)>& a,
                                                  std::size_t cutoff, bool analytic, const Tolerance& tol = {});

/// Searches uniform codes of length <= depth and geometric progression codes
/// of order <= depth for an isometry u with ω(u) = 1.
template <class F>
std::optional<CuntzElement<F>> search_minimality_certificate(const MomentFunctional<F>& w, std::size_t depth,
                                                             const Tolerance& tol = {});

// ---------------------------------------------------------------------------
// κ

template <class F>
struct KappaResult {
    bool resolved = false;
    bool infinite = false;
    bool evidence_only = false;  // ∞ from a finite δ-table only
    std::size_t value = 0;       // when resolved and finite
    std::size_t lower = 1;       // interval when unresolved
    std::optional<std::size_t> upper;  // nullopt: ∞
    Certificate<F> certificate;
    CdimResult cdim;
    std::vector<std::string> citations;
    std::string str() const;
};

template <class F>
KappaResult<F> kappa(const MomentFunctional<F>& w, const ClassifyConfig& cfg = {});

/// κ-stratum label: "1", "2", ..., "∞", "∞ (evidence, cutoff 12)" or "unresolved".
template <class F>
std::string spectrum_bucket(const KappaResult<F>& k);

template <class F>
std::string decompose_spectrum_bucket(const MomentFunctional<F>& w, const ClassifyConfig& cfg = {});

// ---------------------------------------------------------------------------
// Equivalence and purity

enum class Verdict { Yes, No, Unknown };

struct Decision {
    Verdict verdict = Verdict::Unknown;
    std::string reason;
    std::string str(const char* yes, const char* no) const;
};

/// Equivalent (Yes) / Inequivalent (No) / Unknown.
template <class F>
Decision equivalent(const MomentFunctional<F>& a, const MomentFunctional<F>& b, const ClassifyConfig& cfg = {});

template <class F>
Decision pure(const MomentFunctional<F>& w, const ClassifyConfig& cfg = {});

/// Tensor conjugacy of z, y ∈ (C^n)^{⊗m}: z = x1 ⊗ x2 and y = x2 ⊗ x1.
template <class F>
bool tensors_conjugate(const std::vector<F>& z, const std::vector<F>& y, int n, std::size_t m, double tol);

/// Σ_l (1 − |⟨z^(l)|y^(l+k)⟩|) < ∞ for some k >= 0 in either direction,
/// decided exactly for eventually periodic sequences.
template <class F>
bool induced_products_equivalent(const InducedProductModel<F>& z, const InducedProductModel<F>& y, double tol);

/// z is aperiodic: the series diverges for every k >= 1.
template <class F>
bool induced_product_aperiodic(const InducedProductModel<F>& z, double tol);

// ---------------------------------------------------------------------------
// Representations and endomorphisms

template <class F>
KappaResult<F> kappa_rep(const Representation& rep, const ClassifyConfig& cfg = {});

template <class F>
struct EndoInvariants {
    int powers_index = 0;
    KappaResult<F> kappa;
    std::string note;
};

template <class F>
EndoInvariants<F> endo_invariants(const Representation& rep, const ClassifyConfig& cfg = {});

}  // namespace cuntzlab

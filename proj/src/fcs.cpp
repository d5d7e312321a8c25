#include "cuntzlab/fcs.hpp"

#include "cuntzlab/random.hpp"

namespace cuntzlab {

template <class F>
std::vector<F> fcs_apply(const FcsPresentation<F>& p, const Word& J) {
    J.validate(p.n);
    std::vector<F> v = p.omega;
    for (Letter a : J)
        v = matvec(p.A[static_cast<std::size_t>(a - 1)], v);
    return v;
}

template <class F>
F fcs_moment(const FcsPresentation<F>& p, const Word& J, const Word& K) {
    const auto x = fcs_apply(p, J);
    const auto y = matvec(p.metric, fcs_apply(p, K));
    F s(0);
    for (std::size_t i = 0; i < p.d; ++i)
        s += conjugate(x[i]) * y[i];
    return s;
}

template <class F>
std::vector<std::size_t> orbit_span_growth(const FcsPresentation<F>& p, const Tolerance& tol) {
    std::vector<std::vector<F>> basis{p.omega};
    std::vector<std::size_t> dims{1};
    for (;;) {
        std::vector<std::vector<F>> cols = basis;
        for (const auto& a : p.A)
            for (const auto& v : basis)
                cols.push_back(matvec(a, v));
        Matrix<F> m(p.d, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < p.d; ++i)
                m(i, j) = cols[j][i];
        const auto piv = rref(m, tol.rank);
        if (piv.size() == basis.size())
            return dims;
        // The old basis is independent and comes first, so it stays among the pivots.
        std::vector<std::vector<F>> next;
        for (auto j : piv)
            next.push_back(cols[j]);
        basis = std::move(next);
        dims.push_back(basis.size());
    }
}

template <class F>
std::size_t orbit_closure_cdim(const FcsPresentation<F>& p, const Tolerance& tol) {
    return orbit_span_growth(p, tol).back();
}

template <class F>
bool check_row_isometry(const FcsPresentation<F>& p, const Tolerance& tol) {
    Matrix<F> s(p.d, p.d);
    for (const auto& a : p.A)
        s = s + a.adjoint() * p.metric * a;
    return s.approx_equal(p.metric, tol.eq);
}

namespace {

template <class F>
FcsExtraction<F> run_tracker(GramRankTracker<F>& tracker, std::size_t L_max) {
    FcsExtraction<F> out;
    out.level_ranks.push_back(tracker.add_next_length());
    for (std::size_t L = 1; L <= L_max; ++L) {
        out.level_ranks.push_back(tracker.add_next_length());
        if (out.level_ranks[L] == out.level_ranks[L - 1]) {
            out.stabilized_at = L - 1;
            break;
        }
    }
    return out;
}

template <class F>
void validate(const MomentFunctional<F>& w, const FcsPresentation<F>& p, std::size_t max_len, const Tolerance& tol) {
    if (!check_row_isometry(p, tol))
        throw Error(ErrorCode::ValidationFailed, "extracted presentation violates the row isometry relation");
    Rng rng(env_seed());
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<int> letter(1, w.n());
    auto random_word = [&] {
        std::vector<Letter> v(len(rng));
        for (auto& a : v)
            a = letter(rng);
        return Word(std::move(v));
    };
    for (int trial = 0; trial < 20; ++trial) {
        const Word J = random_word(), K = random_word();
        const F expect = w(J, K), got = fcs_moment(p, J, K);
        if (!near(got, expect, tol.eq))
            throw Error(ErrorCode::ValidationFailed, "round trip ω(" + J.str() + "," + K.str() + ") = " +
                                                         format_scalar(expect) + " but the presentation gives " +
                                                         format_scalar(got) + "; rerun in exact mode");
    }
}

}  // namespace

template <class F>
FcsExtraction<F> gram_ranks(const MomentFunctional<F>& w, std::size_t L_max, const Tolerance& tol,
                            ExecPolicy policy) {
    GramRankTracker<F> tracker(w, tol, policy);
    return run_tracker(tracker, L_max);
}

template <class F>
FcsExtraction<F> extract_fcs(const MomentFunctional<F>& w, std::size_t L_max, const Tolerance& tol,
                             ExecPolicy policy) {
    if (L_max < 1)
        throw Error(ErrorCode::SchemaError, "extract_fcs needs L_max >= 1");
    GramRankTracker<F> tracker(w, tol, policy);
    FcsExtraction<F> out = run_tracker(tracker, L_max);
    if (!out.stabilized_at)
        return out;

    FcsPresentation<F> p;
    p.n = w.n();
    p.basis_words = tracker.pivots();
    p.d = p.basis_words.size();
    p.metric = gram_matrix(w, p.basis_words, policy);
    p.omega.assign(p.d, F(0));
    p.omega[0] = F(1);  // the first pivot is always ∅
    for (Letter i = 1; i <= p.n; ++i) {
        std::vector<Word> images;
        for (const auto& q : p.basis_words)
            images.push_back(q.pushed(i));
        // Column a of A_i holds the coordinates of π(s_{p_a i})*Ω, found from G x = ⟨w_q, w_{p_a i}⟩.
        Matrix<F> rhs(p.d, p.d);
        for (std::size_t q = 0; q < p.d; ++q)
            for (std::size_t a = 0; a < p.d; ++a)
                rhs(q, a) = w(p.basis_words[q], images[a]);
        auto x = solve(p.metric, rhs, tol.rank);
        if (!x)
            throw Error(ErrorCode::ValidationFailed, "pivot Gram matrix is singular; rerun in exact mode");
        p.A.push_back(std::move(*x));
    }
    validate(w, p, *out.stabilized_at + 2, tol);
    out.presentation = std::move(p);
    return out;
}

#define CUNTZLAB_INSTANTIATE(F)                                                                                 \
    template std::vector<F> fcs_apply(const FcsPresentation<F>&, const Word&);                                 \
    template F fcs_moment(const FcsPresentation<F>&, const Word&, const Word&);                                \
    template std::vector<std::size_t> orbit_span_growth(const FcsPresentation<F>&, const Tolerance&);          \
    template std::size_t orbit_closure_cdim(const FcsPresentation<F>&, const Tolerance&);                      \
    template bool check_row_isometry(const FcsPresentation<F>&, const Tolerance&);                             \
    template FcsExtraction<F> gram_ranks(const MomentFunctional<F>&, std::size_t, const Tolerance&, ExecPolicy); \
    template FcsExtraction<F> extract_fcs(const MomentFunctional<F>&, std::size_t, const Tolerance&, ExecPolicy);

CUNTZLAB_INSTANTIATE(Exact)
CUNTZLAB_INSTANTIATE(Float)

}  // namespace cuntzlab

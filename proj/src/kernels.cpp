#include "cuntzlab/kernels.hpp"

#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cuntzlab {

namespace {

// Exceptions must not cross an OpenMP region boundary.
class ExceptionSlot {
public:
    template <class Fn>
    void run(Fn&& fn) {
        try {
            fn();
        } catch (...) {
            std::lock_guard<std::mutex> lock(mutex_);
            if (!error_)
                error_ = std::current_exception();
        }
    }
    void rethrow() {
        if (error_)
            std::rethrow_exception(error_);
    }

private:
    std::mutex mutex_;
    std::exception_ptr error_;
};

}  // namespace

template <class F>
Matrix<F> gram_matrix(const MomentFunctional<F>& w, const std::vector<Word>& words, ExecPolicy policy) {
    const long d = static_cast<long>(words.size());
    Matrix<F> g(words.size(), words.size());
    if (policy == ExecPolicy::Serial) {
        for (long i = 0; i < d; ++i)
            for (long j = i; j < d; ++j)
                g(i, j) = w(words[i], words[j]);
    } else {
        ExceptionSlot slot;
#pragma omp parallel for schedule(dynamic, 1)
        for (long i = 0; i < d; ++i)
            slot.run([&] {
                for (long j = i; j < d; ++j)
                    g(i, j) = w(words[i], words[j]);
            });
        slot.rethrow();
    }
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < i; ++j)
            g(i, j) = conjugate(g(j, i));
    return g;
}

template <class F>
std::vector<F> gram_column(const MomentFunctional<F>& w, const Word& pivot, const std::vector<Word>& candidates,
                           ExecPolicy policy) {
    const long m = static_cast<long>(candidates.size());
    std::vector<F> col(candidates.size());
    if (policy == ExecPolicy::Serial) {
        for (long c = 0; c < m; ++c)
            col[c] = w(pivot, candidates[c]);
    } else {
        ExceptionSlot slot;
#pragma omp parallel for schedule(dynamic, 4)
        for (long c = 0; c < m; ++c)
            slot.run([&] { col[c] = w(pivot, candidates[c]); });
        slot.rethrow();
    }
    return col;
}

template <class F>
GramRankTracker<F>::GramRankTracker(MomentFunctional<F> w, const Tolerance& tol, ExecPolicy policy)
    : w_(std::move(w)), tol_(tol), policy_(policy) {}

template <class F>
std::size_t GramRankTracker<F>::add_next_length() {
    return add_level(words_of_length(w_.n(), levels_));
}

template <class F>
std::size_t GramRankTracker<F>::add_level(const std::vector<Word>& candidates) {
    const std::size_t m = candidates.size();
    const std::size_t r0 = pivots_.size();
    // c[w][t] = ⟨q_t, w⟩ for the orthogonalized pivots q_t; res[w] = residual squared norm.
    std::vector<std::vector<F>> c(m);
    std::vector<F> res(m);
    auto project = [&](std::size_t idx) {
        const Word& cand = candidates[idx];
        std::vector<F>& ct = c[idx];
        ct.resize(r0);
        F r = w_(cand, cand);
        for (std::size_t t = 0; t < r0; ++t) {
            F v = w_(pivots_[t], cand);
            for (std::size_t s = 0; s < t; ++s)
                v -= conjugate(mu_[t][s]) * ct[s];
            ct[t] = v;
            r -= F(abs2(v)) / diag_[t];
        }
        res[idx] = r;
    };
    if (policy_ == ExecPolicy::Serial) {
        for (std::size_t idx = 0; idx < m; ++idx)
            project(idx);
    } else {
        ExceptionSlot slot;
        const long lm = static_cast<long>(m);
#pragma omp parallel for schedule(dynamic, 1)
        for (long idx = 0; idx < lm; ++idx)
            slot.run([&] { project(static_cast<std::size_t>(idx)); });
        slot.rethrow();
    }

    std::vector<bool> taken(m, false);
    for (;;) {
        std::size_t best = m;
        for (std::size_t idx = 0; idx < m; ++idx) {
            if (taken[idx] || !is_positive(res[idx], tol_.rank))
                continue;
            if (best == m || real_part(res[idx]) > real_part(res[best]))
                best = idx;
        }
        if (best == m)
            break;
        taken[best] = true;
        const std::size_t k = pivots_.size();
        std::vector<F> mu(k);
        for (std::size_t s = 0; s < k; ++s)
            mu[s] = c[best][s] / diag_[s];
        const F d = res[best];
        pivots_.push_back(candidates[best]);
        diag_.push_back(d);
        mu_.push_back(std::move(mu));

        // Extend every remaining candidate by the new pivot's coordinate.
        std::vector<std::size_t> open;
        for (std::size_t idx = 0; idx < m; ++idx)
            if (!taken[idx])
                open.push_back(idx);
        std::vector<Word> open_words;
        for (auto idx : open)
            open_words.push_back(candidates[idx]);
        std::vector<F> col = gram_column(w_, pivots_.back(), open_words, policy_);
        for (std::size_t o = 0; o < open.size(); ++o) {
            const std::size_t idx = open[o];
            F v = col[o];
            const auto& mk = mu_.back();
            for (std::size_t s = 0; s < k; ++s)
                v -= conjugate(mk[s]) * c[idx][s];
            c[idx].push_back(v);
            res[idx] -= F(abs2(v)) / d;
        }
    }
    ++levels_;
    return pivots_.size();
}

#define CUNTZLAB_INSTANTIATE(F)                                                                         \
    template Matrix<F> gram_matrix(const MomentFunctional<F>&, const std::vector<Word>&, ExecPolicy);   \
    template std::vector<F> gram_column(const MomentFunctional<F>&, const Word&, const std::vector<Word>&, \
                                        ExecPolicy);                                                    \
    template class GramRankTracker<F>;

CUNTZLAB_INSTANTIATE(Exact)
CUNTZLAB_INSTANTIATE(Float)

}  // namespace cuntzlab

#include "cuntzlab/prefix_code.hpp"

#include <algorithm>

namespace cuntzlab {

std::vector<Word> uniform_code(int n, std::size_t m) { return words_of_length(n, m); }

std::vector<Word> geometric_progression_code(int n, std::size_t k) {
    std::vector<Word> code;
    for (std::size_t r = 0; r < k; ++r)
        for (Letter i = 1; i < n; ++i)
            code.push_back(Word{n}.power(r).pushed(i));
    code.push_back(Word{n}.power(k));
    return code;
}

void require_prefix_free(const std::vector<Word>& code) {
    for (std::size_t a = 0; a < code.size(); ++a) {
        if (code[a].empty())
            throw Error(ErrorCode::NotPrefixFree, "code contains the empty word");
        for (std::size_t b = 0; b < code.size(); ++b)
            if (a != b && code[b].starts_with(code[a]))
                throw Error(ErrorCode::NotPrefixFree, code[a].str() + " is a prefix of " + code[b].str());
    }
}

namespace {

/// Conjugate-linear form in the unknowns v_C: terms (C, conj?) -> coefficient.
template <class F>
using LinearForm = std::map<std::pair<Word, bool>, F>;

template <class F>
void accumulate(LinearForm<F>& form, const Word& C, bool conj, const F& a) {
    if (is_zero(a, 0.0))
        return;
    // v_∅ is the real unknown h; conj(h) = h.
    form[{C, C.empty() ? false : conj}] += a;
}

template <class F>
class RealSystem {
public:
    using R = RealOf<F>;

    explicit RealSystem(const std::vector<Word>& unknowns) {
        for (std::size_t j = 0; j < unknowns.size(); ++j)
            index_.emplace(unknowns[j], j);
        cols_ = 1 + 2 * unknowns.size();
    }

    std::size_t cols() const { return cols_; }

    void add(const LinearForm<F>& form) {
        std::vector<R> re(cols_, R(0)), im(cols_, R(0));
        for (const auto& [key, a] : form) {
            const auto& [C, conj] = key;
            const R ar = real_part(a), ai = imag_part(a);
            if (C.empty()) {
                re[0] += ar;
                im[0] += ai;
                continue;
            }
            std::size_t j = index_.at(C);
            std::size_t x = 1 + 2 * j, y = 2 + 2 * j;
            if (!conj) {  // a (x + iy)
                re[x] += ar;
                re[y] -= ai;
                im[x] += ai;
                im[y] += ar;
            } else {  // a (x - iy)
                re[x] += ar;
                re[y] += ai;
                im[x] += ai;
                im[y] -= ar;
            }
        }
        rows_.push_back(std::move(re));
        rows_.push_back(std::move(im));
    }

    Matrix<R> matrix() const {
        Matrix<R> a(rows_.size(), cols_);
        for (std::size_t i = 0; i < rows_.size(); ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                a(i, j) = rows_[i][j];
        return a;
    }

private:
    std::map<Word, std::size_t> index_;
    std::size_t cols_ = 0;
    std::vector<std::vector<R>> rows_;
};

/// s_C* Ω expanded through π(u)Ω = Ω, coefficients multiplying s_X Ω.
template <class F>
std::map<Word, F> expand(const std::vector<Word>& code, const std::vector<F>& z, const Word& J) {
    std::map<Word, F> out;
    F coef(1);
    Word rest = J;
    for (;;) {
        if (rest.empty()) {
            out[Word{}] += coef;
            break;
        }
        std::optional<std::size_t> descend;
        Word next;
        for (std::size_t w = 0; w < code.size(); ++w) {
            StarReduction r = reduce_starred_pair(rest, code[w]);
            switch (r.kind) {
            case StarReductionKind::Zero: break;
            case StarReductionKind::Identity: out[Word{}] += coef * z[w]; break;
            case StarReductionKind::Monomial: out[r.word] += coef * z[w]; break;
            case StarReductionKind::Starred:
                descend = w;  // unique: the code is prefix-free
                next = r.word;
                break;
            }
        }
        if (!descend)
            break;
        coef *= z[*descend];
        if (is_zero(coef, 0.0))
            break;
        rest = next;
    }
    for (auto it = out.begin(); it != out.end();)
        it = is_zero(it->second, 0.0) ? out.erase(it) : std::next(it);
    return out;
}

/// ω(s_X) as a linear form in the table, for any length.
template <class F>
void creation_form(LinearForm<F>& form, const std::vector<Word>& code, const std::vector<F>& z,
                   std::size_t max_len, const Word& X, const F& a) {
    if (X.size() <= max_len) {
        accumulate(form, X, false, a);
        return;
    }
    // ω(s_X) = ⟨s_X*Ω, Ω⟩ = Σ conj(β_Y) ω(s_Y*) = Σ conj(β_Y) conj(v_Y).
    for (const auto& [Y, b] : expand(code, z, X))
        accumulate(form, Y, true, F(a * conjugate(b)));
}

template <class F>
std::size_t homogeneous_dim(const RealSystem<F>& sys, double tol) {
    auto a = sys.matrix();
    return sys.cols() - rank(std::move(a), tol);
}

}  // namespace

template <class F>
LowMomentSolution<F> solve_low_moments(int n, const std::vector<Word>& code, const std::vector<F>& z,
                                       const Tolerance& tol) {
    require_prefix_free(code);
    std::size_t M = 0;
    for (const auto& w : code)
        M = std::max(M, w.size());
    std::vector<Word> unknowns = words_up_to(n, M);
    unknowns.erase(unknowns.begin());  // v_∅ is handled separately

    RealSystem<F> sys(unknowns);
    for (const Word& C : unknowns) {
        LinearForm<F> form;
        accumulate(form, C, false, F(1));
        for (std::size_t w = 0; w < code.size(); ++w) {
            const F cz = F(-conjugate(z[w]));
            StarReduction r = reduce_starred_pair(C, code[w]);
            switch (r.kind) {
            case StarReductionKind::Zero: break;
            case StarReductionKind::Identity: accumulate(form, Word{}, false, cz); break;
            case StarReductionKind::Starred: accumulate(form, r.word, false, cz); break;
            case StarReductionKind::Monomial: accumulate(form, r.word, true, cz); break;
            }
        }
        sys.add(form);
    }

    LowMomentSolution<F> out;
    out.r1_solution_dim = homogeneous_dim(sys, tol.rank);
    out.solution_dim = out.r1_solution_dim;
    out.pinned_by = out.solution_dim == 1 ? "R1" : "none";

    if (out.solution_dim > 1) {
        for (const Word& C : unknowns) {
            LinearForm<F> form;
            accumulate(form, C, false, F(1));
            for (std::size_t a = 0; a < code.size(); ++a) {
                for (std::size_t b = 0; b < code.size(); ++b) {
                    const F c = F(-conjugate(z[a]) * z[b]);
                    if (is_zero(c, 0.0))
                        continue;
                    // ω(s_A* s_{C B})
                    StarReduction r = reduce_starred_pair(code[a], C + code[b]);
                    switch (r.kind) {
                    case StarReductionKind::Zero: break;
                    case StarReductionKind::Identity: accumulate(form, Word{}, false, c); break;
                    case StarReductionKind::Monomial: creation_form(form, code, z, M, r.word, c); break;
                    case StarReductionKind::Starred: accumulate(form, r.word, true, c); break;
                    }
                }
            }
            sys.add(form);
        }
        out.solution_dim = homogeneous_dim(sys, tol.rank);
        if (out.solution_dim == 1)
            out.pinned_by = "R1+sandwich";
    }
    out.unique = out.solution_dim == 1;
    if (out.solution_dim == 0)
        throw Error(ErrorCode::Inconsistent, "low-moment system forces v_∅ = 0");

    // Fix h = v_∅ = 1 and take the minimum-norm solution of the rest.
    using R = RealOf<F>;
    Matrix<R> full = sys.matrix();
    Matrix<R> a(full.rows(), full.cols() - 1);
    std::vector<R> rhs(full.rows());
    for (std::size_t i = 0; i < full.rows(); ++i) {
        rhs[i] = R(-full(i, 0));
        for (std::size_t j = 1; j < full.cols(); ++j)
            a(i, j - 1) = full(i, j);
    }
    auto sol = solve_min_norm(a, rhs, tol.rank);
    if (!sol.consistent || sol.residual > tol.eq)
        throw Error(ErrorCode::Inconsistent, "low-moment system has no solution with v_∅ = 1");
    out.table.emplace(Word{}, F(1));
    for (std::size_t j = 0; j < unknowns.size(); ++j)
        out.table.emplace(unknowns[j], make_scalar<F>(sol.x[2 * j], sol.x[2 * j + 1]));
    return out;
}

template <class F>
PrefixCodeState<F>::PrefixCodeState(int n, std::vector<Word> code, std::vector<F> z, PrefixCodeKind kind,
                                    std::size_t order, const Tolerance& tol)
    : n_(n), code_(std::move(code)), z_(std::move(z)), kind_(kind), order_(order), u_(n) {
    if (code_.size() != z_.size())
        throw Error(ErrorCode::SchemaError, "code and coefficient vector differ in length");
    for (const auto& w : code_) {
        w.validate(n_);
        max_len_ = std::max(max_len_, w.size());
    }
    require_prefix_free(code_);
    RealOf<F> norm2(0);
    for (const auto& c : z_)
        norm2 += abs2(c);
    if (!near(norm2, RealOf<F>(1), tol.eq))
        throw Error(ErrorCode::NotUnit, "Σ|z_W|² = " + format_scalar(F(norm2)) + ", expected 1");
    std::vector<std::pair<Word, F>> terms;
    for (std::size_t i = 0; i < code_.size(); ++i)
        terms.emplace_back(code_[i], z_[i]);
    u_ = CuntzElement<F>::creation(n_, terms);
    if (!is_isometry_in_plus(u_, tol.eq).isometry)
        throw Error(ErrorCode::NotUnit, "u = Σ z_W s_W is not an isometry");
    solution_ = solve_low_moments(n_, code_, z_, tol);
}

template <class F>
std::map<Word, F> PrefixCodeState<F>::annihilation_expansion(const Word& J) const {
    return expand(code_, z_, J);
}

template <class F>
F PrefixCodeState<F>::table(const Word& C) const {
    return solution_.table.at(C);
}

template <class F>
F PrefixCodeState<F>::pair_moment(const Word& X, const Word& Y) const {
    StarReduction r = reduce_starred_pair(X, Y);
    switch (r.kind) {
    case StarReductionKind::Zero: return F(0);
    case StarReductionKind::Identity: return F(1);
    case StarReductionKind::Monomial: return table(r.word);
    case StarReductionKind::Starred: return conjugate(table(r.word));
    }
    return F(0);
}

template <class F>
F PrefixCodeState<F>::moment(const Word& J, const Word& K) const {
    auto bj = annihilation_expansion(J);
    auto bk = J == K ? bj : annihilation_expansion(K);
    F sum(0);
    for (const auto& [X, a] : bj) {
        F ca = conjugate(a);
        for (const auto& [Y, b] : bk)
            sum += ca * b * pair_moment(X, Y);
    }
    return sum;
}

template <class F>
std::vector<F> tensor_product(const std::vector<F>& a, const std::vector<F>& b) {
    std::vector<F> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b)
            out.push_back(x * y);
    return out;
}

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--)
        r *= b;
    return r;
}

}  // namespace

template <class F>
std::optional<std::pair<std::vector<F>, std::vector<F>>> rank_one_split(const std::vector<F>& z, int n,
                                                                        std::size_t m, std::size_t q,
                                                                        double tol) {
    const std::size_t rows = ipow(static_cast<std::size_t>(n), q);
    const std::size_t cols = ipow(static_cast<std::size_t>(n), m - q);
    std::size_t br = 0, bc = 0;
    double best = -1.0;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            double mag = magnitude(z[r * cols + c]);
            if (mag > best) {
                best = mag;
                br = r;
                bc = c;
            }
        }
    if (is_zero(z[br * cols + bc], tol))
        return std::nullopt;
    std::vector<F> x1(rows), x2(cols);
    for (std::size_t r = 0; r < rows; ++r)
        x1[r] = z[r * cols + bc];
    const F pivot = z[br * cols + bc];
    for (std::size_t c = 0; c < cols; ++c)
        x2[c] = z[br * cols + c] / pivot;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (!near(F(x1[r] * x2[c]), z[r * cols + c], tol))
                return std::nullopt;
    return std::make_pair(std::move(x1), std::move(x2));
}

template <class F>
std::size_t tensor_power_exponent(const std::vector<F>& z, int n, std::size_t m, double tol) {
    for (std::size_t p = m; p > 1; --p) {
        if (m % p != 0)
            continue;
        const std::size_t q = m / p;
        const std::size_t block = ipow(static_cast<std::size_t>(n), q);
        const std::size_t rest = ipow(static_cast<std::size_t>(n), m - q);
        bool invariant = true;
        for (std::size_t a = 0; a < block && invariant; ++a)
            for (std::size_t r = 0; r < rest && invariant; ++r)
                invariant = near(z[a * rest + r], z[r * block + a], tol);
        if (invariant && rank_one_split(z, n, m, q, tol))
            return p;
    }
    return 1;
}

#define CUNTZLAB_INSTANTIATE(F)                                                                          \
    template LowMomentSolution<F> solve_low_moments(int, const std::vector<Word>&, const std::vector<F>&, \
                                                    const Tolerance&);                                   \
    template class PrefixCodeState<F>;                                                                   \
    template std::vector<F> tensor_product(const std::vector<F>&, const std::vector<F>&);                \
    template std::optional<std::pair<std::vector<F>, std::vector<F>>> rank_one_split(                    \
        const std::vector<F>&, int, std::size_t, std::size_t, double);                                   \
    template std::size_t tensor_power_exponent(const std::vector<F>&, int, std::size_t, double);

CUNTZLAB_INSTANTIATE(Exact)
CUNTZLAB_INSTANTIATE(Float)

}  // namespace cuntzlab

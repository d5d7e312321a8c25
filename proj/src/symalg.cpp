#include "cuntzlab/symalg.hpp"

#include <sstream>

namespace cuntzlab {

StarReduction reduce_starred_pair(const Word& J, const Word& K) {
    const std::size_t m = std::min(J.size(), K.size());
    for (std::size_t i = 0; i < m; ++i)
        if (J[i] != K[i])
            return {StarReductionKind::Zero, {}};
    if (J.size() == K.size())
        return {StarReductionKind::Identity, {}};
    if (J.size() < K.size())
        return {StarReductionKind::Monomial, K.drop(J.size())};
    return {StarReductionKind::Starred, J.drop(K.size())};
}

namespace {

template <class F>
bool negligible(const F& c) {
    if constexpr (is_exact_v<F>)
        return is_zero(c);
    else
        return std::abs(c) <= 1e-15;
}

}  // namespace

template <class F>
CuntzElement<F>::CuntzElement(int n) : n_(n) {}

template <class F>
CuntzElement<F> CuntzElement<F>::identity(int n) {
    CuntzElement e(n);
    e.terms_[{Word{}, Word{}}] = F(1);
    return e;
}

template <class F>
CuntzElement<F> CuntzElement<F>::generator(int n, Letter i) {
    return monomial(n, Word{i}, Word{});
}

template <class F>
CuntzElement<F> CuntzElement<F>::monomial(int n, const Word& J, const Word& K, const F& c) {
    J.validate(n);
    K.validate(n);
    CuntzElement e(n);
    e.add_term(J, K, c);
    return e;
}

template <class F>
CuntzElement<F> CuntzElement<F>::creation(int n, const std::vector<std::pair<Word, F>>& terms) {
    CuntzElement e(n);
    for (const auto& [w, c] : terms) {
        w.validate(n);
        e.add_term(w, Word{}, c);
    }
    return e;
}

template <class F>
void CuntzElement<F>::add_term(const Word& J, const Word& K, const F& c) {
    if (negligible(c))
        return;
    if (!J.empty() && !K.empty() && J.back() == n_ && K.back() == n_) {
        Word j0 = J.prefix(J.size() - 1), k0 = K.prefix(K.size() - 1);
        add_term(j0, k0, c);
        F minus = -c;
        for (Letter i = 1; i < n_; ++i)
            add_term(j0.pushed(i), k0.pushed(i), minus);
        return;
    }
    auto [it, inserted] = terms_.try_emplace({J, K}, c);
    if (!inserted) {
        it->second += c;
        if (negligible(it->second))
            terms_.erase(it);
    }
}

template <class F>
CuntzElement<F> CuntzElement<F>::adjoint() const {
    CuntzElement out(n_);
    // (s_J s_K*)* = s_K s_J*; normal form is symmetric in (J,K), so no rewriting.
    for (const auto& [key, c] : terms_)
        out.terms_.emplace(Key{key.second, key.first}, conjugate(c));
    return out;
}

template <class F>
CuntzElement<F> CuntzElement<F>::power(std::size_t p) const {
    CuntzElement out = identity(n_);
    for (std::size_t i = 0; i < p; ++i)
        out = multiply(out, *this);
    return out;
}

template <class F>
CuntzElement<F> CuntzElement<F>::dropped_small(double tol) const {
    CuntzElement out(n_);
    for (const auto& [key, c] : terms_)
        if (!cuntzlab::is_zero(c, tol))
            out.terms_.emplace(key, c);
    return out;
}

template <class F>
bool CuntzElement<F>::in_plus() const {
    for (const auto& [key, c] : terms_)
        if (key.first.empty() || !key.second.empty())
            return false;
    return true;
}

template <class F>
bool CuntzElement<F>::approx_equal(const CuntzElement& o, double tol) const {
    if (n_ != o.n_)
        return false;
    if constexpr (is_exact_v<F>) {
        return terms_ == o.terms_;
    } else {
        CuntzElement diff = *this;
        diff -= o;
        return diff.dropped_small(tol).is_zero();
    }
}

template <class F>
std::string CuntzElement<F>::str() const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : terms_) {
        if (!first)
            os << " + ";
        first = false;
        os << "(" << format_scalar(c) << ")";
        if (key.first.empty() && key.second.empty())
            os << "·I";
        if (!key.first.empty())
            os << "·s_" << key.first.str();
        if (!key.second.empty())
            os << "·s_" << key.second.str() << "*";
    }
    return os.str();
}

template <class F>
CuntzElement<F>& CuntzElement<F>::operator+=(const CuntzElement& o) {
    if (n_ != o.n_)
        throw Error(ErrorCode::AlphabetMismatch, "adding elements of different O_n");
    for (const auto& [key, c] : o.terms_)
        add_term(key.first, key.second, c);
    return *this;
}

template <class F>
CuntzElement<F>& CuntzElement<F>::operator-=(const CuntzElement& o) {
    if (n_ != o.n_)
        throw Error(ErrorCode::AlphabetMismatch, "subtracting elements of different O_n");
    for (const auto& [key, c] : o.terms_)
        add_term(key.first, key.second, F(-c));
    return *this;
}

template <class F>
CuntzElement<F>& CuntzElement<F>::operator*=(const F& c) {
    if (negligible(c)) {
        terms_.clear();
        return *this;
    }
    for (auto& [key, v] : terms_)
        v *= c;
    return *this;
}

template <class F>
CuntzElement<F> multiply(const CuntzElement<F>& a, const CuntzElement<F>& b) {
    if (a.alphabet() != b.alphabet())
        throw Error(ErrorCode::AlphabetMismatch, "multiplying elements of different O_n");
    CuntzElement<F> out(a.alphabet());
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            // s_A s_B* · s_C s_D*
            const Word& A = ka.first;
            const Word& D = kb.second;
            StarReduction r = reduce_starred_pair(ka.second, kb.first);
            switch (r.kind) {
            case StarReductionKind::Zero: break;
            case StarReductionKind::Identity: out.add_term(A, D, ca * cb); break;
            case StarReductionKind::Monomial: out.add_term(A + r.word, D, ca * cb); break;
            case StarReductionKind::Starred: out.add_term(A, D + r.word, ca * cb); break;
            }
        }
    }
    return out;
}

template <class F>
IsometryCheck is_isometry_in_plus(const CuntzElement<F>& u, double tol) {
    CuntzElement<F> uu = multiply(u.adjoint(), u);
    bool iso = uu.approx_equal(CuntzElement<F>::identity(u.alphabet()), tol);
    return {iso, u.in_plus()};
}

template <class F>
void require_unitary(const Matrix<F>& g, int n, double tol) {
    if (g.rows() != static_cast<std::size_t>(n) || g.cols() != static_cast<std::size_t>(n))
        throw Error(ErrorCode::NotUnitary, "gauge matrix must be " + std::to_string(n) + "x" + std::to_string(n));
    Matrix<F> gg = g.adjoint() * g;
    if (!gg.approx_equal(Matrix<F>::identity(static_cast<std::size_t>(n)), tol))
        throw Error(ErrorCode::NotUnitary, "g^H g differs from the identity");
}

template <class F>
F gauge_coefficient(const Matrix<F>& g, const Word& image, const Word& source) {
    F c(1);
    for (std::size_t t = 0; t < source.size(); ++t) {
        c *= g(static_cast<std::size_t>(image[t] - 1), static_cast<std::size_t>(source[t] - 1));
        if (is_zero(c, 0.0))
            break;
    }
    return c;
}

template <class F>
CuntzElement<F> gauge_apply(const Matrix<F>& g, const CuntzElement<F>& a, double tol) {
    const int n = a.alphabet();
    require_unitary(g, n, tol);
    CuntzElement<F> out(n);
    std::map<std::size_t, std::vector<Word>> images;
    auto words = [&](std::size_t len) -> const std::vector<Word>& {
        auto it = images.find(len);
        if (it == images.end())
            it = images.emplace(len, words_of_length(n, len)).first;
        return it->second;
    };
    for (const auto& [key, c] : a.terms()) {
        const Word& J = key.first;
        const Word& K = key.second;
        for (const Word& J2 : words(J.size())) {
            F cj = gauge_coefficient(g, J2, J);
            if (is_zero(cj, 0.0))
                continue;
            for (const Word& K2 : words(K.size())) {
                F ck = gauge_coefficient(g, K2, K);
                if (is_zero(ck, 0.0))
                    continue;
                out.add_term(J2, K2, c * cj * conjugate(ck));
            }
        }
    }
    return out;
}

#define CUNTZLAB_INSTANTIATE(F)                                                              \
    template class CuntzElement<F>;                                                          \
    template CuntzElement<F> multiply(const CuntzElement<F>&, const CuntzElement<F>&);      \
    template IsometryCheck is_isometry_in_plus(const CuntzElement<F>&, double);              \
    template void require_unitary(const Matrix<F>&, int, double);                            \
    template F gauge_coefficient(const Matrix<F>&, const Word&, const Word&);                \
    template CuntzElement<F> gauge_apply(const Matrix<F>&, const CuntzElement<F>&, double);

CUNTZLAB_INSTANTIATE(Exact)
CUNTZLAB_INSTANTIATE(Float)

}  // namespace cuntzlab

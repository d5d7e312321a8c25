#pragma once

#include "cuntzlab/linalg.hpp"
#include "cuntzlab/scalar.hpp"
#include "cuntzlab/words.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cuntzlab {

enum class StarReductionKind { Monomial, Starred, Identity, Zero };

struct StarReduction {
    StarReductionKind kind;
    Word word;  // K' for Monomial, J' for Starred, empty otherwise
};

/// Normal form of s_J* s_K: s_{K'} if K = J·K', s_{J'}* if J = K·J', I if equal, else 0.
StarReduction reduce_starred_pair(const Word& J, const Word& K);

/**
 * @brief Finite combination of monomials s_J s_K* in normal form.
 *
 * A term is in normal form unless J and K both end in the letter n; those are
 * rewritten with s_{J'n} s_{K'n}* = s_{J'} s_{K'}* - sum_{i<n} s_{J'i} s_{K'i}*.
 * With this rule the monomials form a basis, so equality is structural.
 */
template <class F>
class CuntzElement {
public:
    using Key = std::pair<Word, Word>;
    using Terms = std::map<Key, F>;

    explicit CuntzElement(int n);

    static CuntzElement identity(int n);
    static CuntzElement generator(int n, Letter i);
    static CuntzElement monomial(int n, const Word& J, const Word& K, const F& c = F(1));
    /// sum_W c_W s_W.
    static CuntzElement creation(int n, const std::vector<std::pair<Word, F>>& terms);

    int alphabet() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Adds c·s_J s_K* and restores normal form.
    void add_term(const Word& J, const Word& K, const F& c);

    CuntzElement adjoint() const;
    CuntzElement power(std::size_t p) const;
    /// Terms with coefficient magnitude <= tol removed.
    CuntzElement dropped_small(double tol) const;

    /// Every term has K = ∅ and J ≠ ∅.
    bool in_plus() const;
    bool approx_equal(const CuntzElement& o, double tol) const;

    std::string str() const;

    CuntzElement& operator+=(const CuntzElement& o);
    CuntzElement& operator-=(const CuntzElement& o);
    CuntzElement& operator*=(const F& c);

    friend CuntzElement operator+(CuntzElement a, const CuntzElement& b) { return a += b; }
    friend CuntzElement operator-(CuntzElement a, const CuntzElement& b) { return a -= b; }
    friend CuntzElement operator*(CuntzElement a, const F& c) { return a *= c; }
    friend CuntzElement operator*(const F& c, CuntzElement a) { return a *= c; }
    friend bool operator==(const CuntzElement& a, const CuntzElement& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

private:
    int n_;
    Terms terms_;
};

template <class F>
CuntzElement<F> multiply(const CuntzElement<F>& a, const CuntzElement<F>& b);

template <class F>
CuntzElement<F> operator*(const CuntzElement<F>& a, const CuntzElement<F>& b) {
    return multiply(a, b);
}

struct IsometryCheck {
    bool isometry;
    bool in_plus;
};

/// u*u = I exactly (exact mode) or within tol after dropping small terms.
template <class F>
IsometryCheck is_isometry_in_plus(const CuntzElement<F>& u, double tol = Tolerance{}.eq);

/// Throws NotUnitary unless g is an n×n unitary (exactly, or within tol).
template <class F>
void require_unitary(const Matrix<F>& g, int n, double tol);

/// alpha_g(s_i) = sum_j g(j,i) s_j, extended multiplicatively and by alpha_g(x*) = alpha_g(x)*.
template <class F>
CuntzElement<F> gauge_apply(const Matrix<F>& g, const CuntzElement<F>& a, double tol = Tolerance{}.eq);

/// prod_t g(J'_t, J_t) for words of equal length.
template <class F>
F gauge_coefficient(const Matrix<F>& g, const Word& image, const Word& source);

}  // namespace cuntzlab

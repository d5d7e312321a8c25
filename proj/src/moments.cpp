#include "cuntzlab/moments.hpp"

#include "cuntzlab/kernels.hpp"

#include <Eigen/Eigenvalues>

#include <sstream>

namespace cuntzlab {

std::string family_name(Family f) {
    switch (f) {
    case Family::Cuntz: return "cuntz";
    case Family::SubCuntz: return "sub_cuntz";
    case Family::GeometricProgression: return "geometric_progression";
    case Family::PrefixCode: return "prefix_code";
    case Family::InducedProduct: return "induced_product";
    case Family::Shift: return "shift";
    case Family::LazyShift: return "lazy_shift";
    case Family::Grid: return "grid";
    case Family::Sandwich: return "sandwich";
    case Family::OrthogonalTail: return "orthogonal_tail";
    case Family::Gauge: return "gauge";
    case Family::Mixture: return "mixture";
    case Family::Custom: return "custom";
    }
    return "unknown";
}

namespace {

template <class F>
RealOf<F> norm2(const std::vector<F>& v) {
    RealOf<F> s(0);
    for (const auto& x : v)
        s += abs2(x);
    return s;
}

template <class F>
void require_unit(const std::vector<F>& v, const Tolerance& tol, const std::string& what) {
    if (!near(norm2(v), RealOf<F>(1), tol.eq))
        throw Error(ErrorCode::NotUnit, what + " has squared norm " + format_scalar(F(norm2(v))) + ", expected 1");
}

template <class F>
std::string format_vector(const std::vector<F>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + format_scalar(v[i]);
    return s + ")";
}

template <class F>
CuntzElement<F> linear_isometry(const std::vector<F>& z) {
    const int n = static_cast<int>(z.size());
    CuntzElement<F> a(n);
    for (int j = 1; j <= n; ++j)
        a.add_term(Word{j}, Word{}, z[static_cast<std::size_t>(j - 1)]);
    return a;
}

}  // namespace

template <class F>
F MomentFunctional<F>::apply(const CuntzElement<F>& x) const {
    if (x.alphabet() != n())
        throw Error(ErrorCode::AlphabetMismatch, "element and state live on different O_n");
    F s(0);
    for (const auto& [key, c] : x.terms())
        s += c * model_->moment(key.first, key.second);
    return s;
}

template <class F>
F eval_moment(const MomentFunctional<F>& w, const Word& J, const Word& K) {
    J.validate(w.n());
    K.validate(w.n());
    return w(J, K);
}

// --- Cuntz ----------------------------------------------------------------

template <class F>
CuntzModel<F>::CuntzModel(std::vector<F> z, const Tolerance& tol) : z_(std::move(z)) {
    if (z_.size() < 2)
        throw Error(ErrorCode::SchemaError, "Cuntz state needs n >= 2 coordinates");
    require_unit(z_, tol, "z");
    this->flags_.pure = true;
    this->flags_.pure_reason = "Cuntz states are pure";
    this->flags_.minimal_certificate = linear_isometry(z_);
}

template <class F>
F CuntzModel<F>::z_word(const Word& J) const {
    F c(1);
    for (Letter a : J)
        c *= z_[static_cast<std::size_t>(a - 1)];
    return c;
}

template <class F>
F CuntzModel<F>::moment(const Word& J, const Word& K) const {
    return conjugate(z_word(J)) * z_word(K);
}

template <class F>
std::optional<GnsVector<F>> CuntzModel<F>::gns_vector(const Word& J) const {
    GnsVector<F> v;
    F c = z_word(J);
    if (!is_zero(c, 0.0))
        v.emplace(0, c);
    return v;
}

template <class F>
std::string CuntzModel<F>::describe() const {
    return "Cuntz state z=" + format_vector(z_);
}

// --- prefix codes -----------------------------------------------------------

template <class F>
PrefixCodeModel<F>::PrefixCodeModel(PrefixCodeState<F> state) : state_(std::move(state)) {
    auto& fl = this->flags_;
    fl.minimal_certificate = state_.u();
    const auto& sol = state_.solution();
    if (!sol.unique)
        this->warnings_.push_back("NonUniqueState: solution space has dimension " +
                                  std::to_string(sol.solution_dim) +
                                  "; moments use the minimum-norm (symmetric) solution");
    const auto& z = state_.z();
    switch (state_.kind()) {
    case PrefixCodeKind::SubCuntz:
        periodicity_ = tensor_power_exponent(z, state_.alphabet(), state_.order(), Tolerance{}.eq);
        fl.pure = periodicity_ == 1;
        fl.pure_reason = periodicity_ == 1
                             ? "sub-Cuntz state with nonperiodic z is pure"
                             : "z = x^{⊗" + std::to_string(periodicity_) +
                                   "}: the state averages the sub-Cuntz states by phase-rotated x";
        break;
    case PrefixCodeKind::GeometricProgression: {
        bool unique_z = !near(abs2(z.back()), RealOf<F>(1), Tolerance{}.eq);
        fl.pure = unique_z;
        fl.pure_reason = unique_z ? "geometric progression state with |z_m| < 1 is pure"
                                  : "|z_m| = 1: the state is a mixture of Cuntz states";
        const int n = state_.alphabet();
        const std::size_t k = state_.order();
        if (unique_z && k >= 1) {
            // hat form: z = (y_n^r y_j ..., y_n^k) for a unit y with |y_n| < 1.
            std::vector<F> y(z.begin(), z.begin() + (n - 1));
            y.push_back(F(0));
            std::size_t best = 0;
            for (std::size_t j = 1; j < y.size() - 1; ++j)
                if (magnitude(y[j]) > magnitude(y[best]))
                    best = j;
            if (k == 1) {
                y.back() = z.back();
            } else if (!is_zero(y[best], Tolerance{}.eq)) {
                y.back() = z[static_cast<std::size_t>(n - 1) + best] / y[best];
            }
            bool hat = near(norm2(y), RealOf<F>(1), Tolerance{}.eq);
            for (std::size_t r = 0; hat && r < k; ++r) {
                F pw(1);
                for (std::size_t t = 0; t < r; ++t)
                    pw *= y.back();
                for (std::size_t j = 0; hat && j + 1 < static_cast<std::size_t>(n); ++j)
                    hat = near(F(pw * y[j]), z[r * static_cast<std::size_t>(n - 1) + j], Tolerance{}.eq);
            }
            if (hat) {
                F pw(1);
                for (std::size_t t = 0; t < k; ++t)
                    pw *= y.back();
                hat = near(pw, z.back(), Tolerance{}.eq);
            }
            if (hat) {
                fl.equivalent_cuntz = y;
                fl.equivalence_reason = "z is the hat image of y=" + format_vector(y) +
                                        ", so the state is the Cuntz state by y";
            }
        }
        break;
    }
    case PrefixCodeKind::General: break;
    }
}

template <class F>
Family PrefixCodeModel<F>::family() const {
    switch (state_.kind()) {
    case PrefixCodeKind::SubCuntz: return Family::SubCuntz;
    case PrefixCodeKind::GeometricProgression: return Family::GeometricProgression;
    case PrefixCodeKind::General: break;
    }
    return Family::PrefixCode;
}

template <class F>
std::string PrefixCodeModel<F>::describe() const {
    std::ostringstream os;
    switch (state_.kind()) {
    case PrefixCodeKind::SubCuntz: os << "sub-Cuntz state of order " << state_.order(); break;
    case PrefixCodeKind::GeometricProgression:
        os << "geometric progression state k=" << state_.order();
        break;
    case PrefixCodeKind::General: os << "prefix-code state"; break;
    }
    os << ", z=" << format_vector(state_.z());
    return os.str();
}

// --- induced product --------------------------------------------------------

template <class F>
InducedProductModel<F>::InducedProductModel(std::vector<std::vector<F>> pre, std::vector<std::vector<F>> rep,
                                            const Tolerance& tol)
    : pre_(std::move(pre)), rep_(std::move(rep)) {
    if (rep_.empty())
        throw Error(ErrorCode::SchemaError, "induced product needs a nonempty repeating block");
    n_ = static_cast<int>(rep_.front().size());
    if (n_ < 2)
        throw Error(ErrorCode::SchemaError, "induced product needs n >= 2");
    for (const auto* block : {&pre_, &rep_})
        for (const auto& v : *block) {
            if (static_cast<int>(v.size()) != n_)
                throw Error(ErrorCode::AlphabetMismatch, "induced product vectors differ in dimension");
            require_unit(v, tol, "induced product vector");
        }
    auto& fl = this->flags_;
    fl.properly_infinite_sequence = [pre = pre_, rep = rep_](std::size_t i) {
        const auto& v = i <= pre.size() ? pre[i - 1] : rep[(i - pre.size() - 1) % rep.size()];
        return linear_isometry(v);
    };
    fl.properly_infinite_proved = true;
    fl.properly_infinite_reason = "induced product states are properly infinitely correlated, "
                                  "with a_i = Σ_j z_j^(i) s_j";
    fl.pure = false;
    fl.pure_reason = "eventually periodic data is never aperiodic: the series with k = period "
                     "vanishes termwise";
}

template <class F>
const std::vector<F>& InducedProductModel<F>::vector_at(std::size_t i) const {
    if (i == 0)
        throw std::out_of_range("induced product index is 1-based");
    if (i <= pre_.size())
        return pre_[i - 1];
    return rep_[(i - pre_.size() - 1) % rep_.size()];
}

template <class F>
F InducedProductModel<F>::z_word(const Word& J) const {
    F c(1);
    for (std::size_t t = 0; t < J.size(); ++t)
        c *= vector_at(t + 1)[static_cast<std::size_t>(J[t] - 1)];
    return c;
}

template <class F>
F InducedProductModel<F>::moment(const Word& J, const Word& K) const {
    if (J.size() != K.size())
        return F(0);
    return conjugate(z_word(J)) * z_word(K);
}

template <class F>
std::optional<GnsVector<F>> InducedProductModel<F>::gns_vector(const Word& J) const {
    GnsVector<F> v;
    F c = z_word(J);
    if (!is_zero(c, 0.0))
        v.emplace(static_cast<long>(J.size()), c);
    return v;
}

template <class F>
std::string InducedProductModel<F>::describe() const {
    std::ostringstream os;
    os << "induced product state, pre=[";
    for (std::size_t i = 0; i < pre_.size(); ++i)
        os << (i ? ", " : "") << format_vector(pre_[i]);
    os << "], rep=[";
    for (std::size_t i = 0; i < rep_.size(); ++i)
        os << (i ? ", " : "") << format_vector(rep_[i]);
    os << "]";
    return os.str();
}

// --- sandwich -------------------------------------------------------------

template <class F>
SandwichModel<F>::SandwichModel(MomentFunctional<F> base, std::vector<SandwichTerm<F>> terms,
                                bool assume_equivalent, const Tolerance& tol)
    : base_(std::move(base)), a_(base_.n()), a_star_(base_.n()), assume_equivalent_(assume_equivalent) {
    if (terms.empty())
        throw Error(ErrorCode::SchemaError, "sandwich needs at least one term");
    RealOf<F> schedule(0);
    for (const auto& t : terms) {
        if (t.element.alphabet() != base_.n())
            throw Error(ErrorCode::AlphabetMismatch, "sandwich term lives on a different O_n");
        schedule += abs2(t.coeff);
        a_ += t.element * t.coeff;
    }
    if (schedule > RealOf<F>(1) && !near(schedule, RealOf<F>(1), tol.eq))
        throw Error(ErrorCode::NotUnit, "Σ|c_l|² exceeds 1");
    a_star_ = a_.adjoint();
    F norm = base_.apply(multiply(a_star_, a_));
    if (!near(norm, F(1), tol.eq))
        throw Error(ErrorCode::NotUnit, "ω(A*A) = " + format_scalar(norm) + ", the sandwich is not normalized");
    auto& fl = this->flags_;
    if (assume_equivalent_) {
        const auto& bf = base_.flags();
        fl.pure = bf.pure;
        fl.pure_reason = "equivalent to the base state (user-supplied)";
        if (const auto* c = base_.template as<CuntzModel<F>>()) {
            fl.equivalent_cuntz = c->z();
        } else if (bf.equivalent_cuntz) {
            fl.equivalent_cuntz = bf.equivalent_cuntz;
        }
        if (fl.equivalent_cuntz)
            fl.equivalence_reason = "user-supplied: ω(A*·A) is equivalent to its Cuntz base state";
    }
}

template <class F>
F SandwichModel<F>::moment(const Word& J, const Word& K) const {
    CuntzElement<F> x = CuntzElement<F>::monomial(base_.n(), J, K);
    return base_.apply(multiply(multiply(a_star_, x), a_));
}

template <class F>
std::string SandwichModel<F>::describe() const {
    return "sandwich ω(A*·A) with A=" + a_.str() + " over " + base_.describe();
}

// --- orthogonal tail ------------------------------------------------------

template <class F>
OrthogonalTailModel<F>::OrthogonalTailModel(int n, Letter base_letter, Letter spacer, F gamma,
                                            const Tolerance& tol)
    : n_(n), b_(base_letter), j_(spacer), gamma_(std::move(gamma)), gamma2_(abs2(gamma_)) {
    Word{b_, j_}.validate(n_);
    if (b_ == j_)
        throw Error(ErrorCode::SchemaError, "base letter and spacer must differ");
    if (!near(gamma2_, RealOf<F>(RealOf<F>(1) / RealOf<F>(2)), tol.eq))
        throw Error(ErrorCode::NotUnit, "need |γ|² = 1/2 so that Σ_l |γ|^{2l} = 1");
    auto& fl = this->flags_;
    fl.pure = true;
    fl.pure_reason = "vector state of the irreducible GNS representation of a Cuntz state";
    fl.equivalent_cuntz = base_vector();
    fl.equivalence_reason = "each A_l Ω lies in the GNS space of the Cuntz state by e_" + std::to_string(b_) +
                            ", so ω' is a vector state of that irreducible representation";
}

template <class F>
std::vector<F> OrthogonalTailModel<F>::base_vector() const {
    std::vector<F> e(static_cast<std::size_t>(n_), F(0));
    e[static_cast<std::size_t>(b_ - 1)] = F(1);
    return e;
}

template <class F>
std::map<Word, F> OrthogonalTailModel<F>::annihilate(const Word& J, std::size_t terms) const {
    // Vectors e_{u b^∞} keyed by u with trailing b's stripped.
    std::map<Word, F> out;
    F c(1);
    for (std::size_t l = 1; l <= terms; ++l) {
        c *= gamma_;
        Word u = Word{j_}.power(l - 1).pushed(b_) + Word{j_}.power(l);
        bool prefix = true;
        for (std::size_t t = 0; t < J.size() && prefix; ++t)
            prefix = J[t] == (t < u.size() ? u[t] : b_);
        if (!prefix)
            continue;
        Word rest = u.drop(J.size());
        while (!rest.empty() && rest.back() == b_)
            rest = rest.prefix(rest.size() - 1);
        out[rest] += c;
    }
    return out;
}

template <class F>
F OrthogonalTailModel<F>::moment(const Word& J, const Word& K) const {
    const std::size_t N = std::max(J.size(), K.size()) + 1;
    auto vj = annihilate(J, N);
    auto vk = annihilate(K, N);
    F s(0);
    for (const auto& [key, x] : vj) {
        auto it = vk.find(key);
        if (it != vk.end())
            s += conjugate(x) * it->second;
    }
    if (J.size() == K.size() && J.all_equal(j_) && K.all_equal(j_)) {
        RealOf<F> tail(1);
        for (std::size_t t = 0; t <= N; ++t)
            tail *= gamma2_;
        tail /= RealOf<F>(RealOf<F>(1) - gamma2_);
        s += F(tail);
    }
    return s;
}

template <class F>
std::string OrthogonalTailModel<F>::describe() const {
    std::ostringstream os;
    os << "ω(A*·A), A = Σ_l γ^l s_" << j_ << "^{l-1} s_" << b_ << " s_" << j_ << "^l, γ=" << format_scalar(gamma_)
       << ", over the Cuntz state by e_" << b_;
    return os.str();
}

// --- gauge ------------------------------------------------------------------

template <class F>
GaugeModel<F>::GaugeModel(MomentFunctional<F> base, Matrix<F> g, const Tolerance& tol)
    : base_(std::move(base)), g_(std::move(g)) {
    require_unitary(g_, base_.n(), tol.eq);
    const Matrix<F> gh = g_.adjoint();
    const auto& bf = base_.flags();
    auto& fl = this->flags_;
    fl.pure = bf.pure;
    fl.pure_reason = bf.pure_reason;
    if (bf.minimal_certificate)
        fl.minimal_certificate = gauge_apply(gh, *bf.minimal_certificate, tol.eq);
    if (bf.properly_infinite_sequence) {
        auto seq = bf.properly_infinite_sequence;
        double eq = tol.eq;
        fl.properly_infinite_sequence = [seq, gh, eq](std::size_t i) { return gauge_apply(gh, seq(i), eq); };
        fl.properly_infinite_proved = bf.properly_infinite_proved;
        fl.properly_infinite_reason = bf.properly_infinite_reason;
    }
    if (bf.equivalent_cuntz) {
        fl.equivalent_cuntz = matvec(gh, *bf.equivalent_cuntz);
        fl.equivalence_reason = bf.equivalence_reason + "; transported by the gauge action";
    }
}

template <class F>
std::vector<std::pair<Word, F>> GaugeModel<F>::images(const Word& J) const {
    std::vector<std::pair<Word, F>> out;
    for (const Word& J2 : words_of_length(base_.n(), J.size())) {
        F c = gauge_coefficient(g_, J2, J);
        if (!is_zero(c, 0.0))
            out.emplace_back(J2, c);
    }
    return out;
}

template <class F>
F GaugeModel<F>::moment(const Word& J, const Word& K) const {
    auto ij = images(J);
    auto ik = J == K ? ij : images(K);
    F s(0);
    for (const auto& [J2, a] : ij)
        for (const auto& [K2, b] : ik)
            s += a * conjugate(b) * base_(J2, K2);
    return s;
}

template <class F>
std::optional<GnsVector<F>> GaugeModel<F>::gns_vector(const Word& J) const {
    GnsVector<F> out;
    for (const auto& [J2, a] : images(J)) {
        auto v = base_.gns_vector(J2);
        if (!v)
            return std::nullopt;
        F ca = conjugate(a);
        for (const auto& [k, x] : *v)
            out[k] += ca * x;
    }
    for (auto it = out.begin(); it != out.end();)
        it = is_zero(it->second, 0.0) ? out.erase(it) : std::next(it);
    return out;
}

template <class F>
std::string GaugeModel<F>::describe() const {
    return "gauge transform of " + base_.describe();
}

// --- mixture ----------------------------------------------------------------

template <class F>
MixtureModel<F>::MixtureModel(std::vector<RealOf<F>> weights, std::vector<MomentFunctional<F>> parts,
                              const Tolerance& tol)
    : weights_(std::move(weights)), parts_(std::move(parts)) {
    if (parts_.empty() || parts_.size() != weights_.size())
        throw Error(ErrorCode::SchemaError, "mixture needs matching weights and parts");
    RealOf<F> total(0);
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i].n() != parts_.front().n())
            throw Error(ErrorCode::AlphabetMismatch, "mixture parts live on different O_n");
        if (weights_[i] < RealOf<F>(0))
            throw Error(ErrorCode::SchemaError, "mixture weights must be nonnegative");
        total += weights_[i];
    }
    if (!near(total, RealOf<F>(1), tol.eq))
        throw Error(ErrorCode::NotUnit, "mixture weights must sum to 1");
}

template <class F>
F MixtureModel<F>::moment(const Word& J, const Word& K) const {
    F s(0);
    for (std::size_t i = 0; i < parts_.size(); ++i)
        s += F(weights_[i]) * parts_[i](J, K);
    return s;
}

template <class F>
std::string MixtureModel<F>::describe() const {
    std::ostringstream os;
    os << "mixture of " << parts_.size() << " states";
    return os.str();
}

// --- constructors -----------------------------------------------------------

template <class F>
MomentFunctional<F> make_cuntz(const std::vector<F>& z, const Tolerance& tol) {
    return MomentFunctional<F>(std::make_shared<CuntzModel<F>>(z, tol));
}

template <class F>
MomentFunctional<F> make_prefix_code_state(int n, const std::vector<Word>& code, const std::vector<F>& z,
                                           const Tolerance& tol) {
    std::size_t m = 0;
    for (const auto& w : code)
        m = std::max(m, w.size());
    return MomentFunctional<F>(
        std::make_shared<PrefixCodeModel<F>>(PrefixCodeState<F>(n, code, z, PrefixCodeKind::General, m, tol)));
}

template <class F>
MomentFunctional<F> make_sub_cuntz(int n, std::size_t m, const std::vector<F>& z, const Tolerance& tol) {
    if (m == 0)
        throw Error(ErrorCode::SchemaError, "sub-Cuntz order must be positive");
    auto code = uniform_code(n, m);
    if (z.size() != code.size())
        throw Error(ErrorCode::SchemaError, "sub-Cuntz z needs n^m = " + std::to_string(code.size()) + " entries");
    return MomentFunctional<F>(
        std::make_shared<PrefixCodeModel<F>>(PrefixCodeState<F>(n, code, z, PrefixCodeKind::SubCuntz, m, tol)));
}

template <class F>
MomentFunctional<F> make_geometric_progression(int n, std::size_t k, const std::vector<F>& z,
                                               const Tolerance& tol) {
    if (k == 0)
        throw Error(ErrorCode::SchemaError, "geometric progression needs k >= 1");
    auto code = geometric_progression_code(n, k);
    if (z.size() != code.size())
        throw Error(ErrorCode::SchemaError,
                    "geometric progression z needs (n-1)k+1 = " + std::to_string(code.size()) + " entries");
    return MomentFunctional<F>(std::make_shared<PrefixCodeModel<F>>(
        PrefixCodeState<F>(n, code, z, PrefixCodeKind::GeometricProgression, k, tol)));
}

template <class F>
MomentFunctional<F> make_induced_product(const std::vector<std::vector<F>>& pre,
                                         const std::vector<std::vector<F>>& rep, const Tolerance& tol) {
    return MomentFunctional<F>(std::make_shared<InducedProductModel<F>>(pre, rep, tol));
}

template <class F>
MomentFunctional<F> transform_gauge(const MomentFunctional<F>& w, const Matrix<F>& g, const Tolerance& tol) {
    return MomentFunctional<F>(std::make_shared<GaugeModel<F>>(w, g, tol));
}

template <class F>
MomentFunctional<F> transform_sandwich(const MomentFunctional<F>& w, const std::vector<SandwichTerm<F>>& terms,
                                       bool assume_equivalent, const Tolerance& tol) {
    return MomentFunctional<F>(std::make_shared<SandwichModel<F>>(w, terms, assume_equivalent, tol));
}

template <class F>
MomentFunctional<F> make_orthogonal_tail(int n, Letter base_letter, Letter spacer, std::optional<F> gamma,
                                         const Tolerance& tol) {
    F g;
    if (gamma) {
        g = *gamma;
    } else if constexpr (is_exact_v<F>) {
        g = Exact(Rational(1, 2), Rational(1, 2));
    } else {
        g = F(1.0 / std::sqrt(2.0), 0.0);
    }
    return MomentFunctional<F>(std::make_shared<OrthogonalTailModel<F>>(n, base_letter, spacer, g, tol));
}

template <class F>
MomentFunctional<F> make_mixture(const std::vector<RealOf<F>>& weights, const std::vector<MomentFunctional<F>>& parts,
                                 const Tolerance& tol) {
    return MomentFunctional<F>(std::make_shared<MixtureModel<F>>(weights, parts, tol));
}

template <class F>
MomentFunctional<F> make_custom(int n, std::string label, std::function<F(const Word&, const Word&)> fn) {
    return MomentFunctional<F>(std::make_shared<CustomModel<F>>(n, std::move(label), std::move(fn)));
}

// --- checks -------------------------------------------------------------------

template <class F>
PositivityResult<F> positivity_check(const MomentFunctional<F>& w, std::size_t L, const Tolerance& tol) {
    PositivityResult<F> out;
    out.words = words_up_to(w.n(), L);
    Matrix<F> g = gram_matrix(w, out.words, ExecPolicy::Parallel);
    const std::size_t d = g.rows();
    bool hermitian = true;
    for (std::size_t i = 0; i < d && hermitian; ++i)
        for (std::size_t j = i; j < d && hermitian; ++j)
            hermitian = near(g(i, j), conjugate(g(j, i)), tol.eq);

    Eigen::MatrixXcd m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_complex(g(i, j));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    out.min_eigen = es.eigenvalues()(0);

    out.psd = hermitian && pivoted_ldl(g, tol.rank).psd;
    if constexpr (!is_exact_v<F>)
        out.psd = out.psd && out.min_eigen >= -tol.eq;
    if (!out.psd) {
        auto v = es.eigenvectors().col(0);
        for (Eigen::Index i = 0; i < v.size(); ++i)
            out.witness.push_back(v(i));
    }
    return out;
}

template <class F>
ConsistencyReport consistency_check(const MomentFunctional<F>& w, std::size_t L, const Tolerance& tol) {
    ConsistencyReport rep;
    auto words = words_up_to(w.n(), L);
    auto note = [&](const F& a, const F& b, bool& flag) {
        double err = magnitude(F(a - b));
        rep.max_error = std::max(rep.max_error, err);
        if (!near(a, b, tol.eq))
            flag = false;
    };
    note(w(Word{}, Word{}), F(1), rep.normalized);
    for (const auto& J : words)
        for (const auto& K : words) {
            F v = w(J, K);
            note(v, conjugate(w(K, J)), rep.hermitian);
            F s(0);
            for (Letter i = 1; i <= w.n(); ++i)
                s += w(J.pushed(i), K.pushed(i));
            note(s, v, rep.cuntz_relation);
        }
    return rep;
}

#define CUNTZLAB_INSTANTIATE(F)                                                                                 \
    template class MomentFunctional<F>;                                                                         \
    template F eval_moment(const MomentFunctional<F>&, const Word&, const Word&);                               \
    template class CuntzModel<F>;                                                                               \
    template class PrefixCodeModel<F>;                                                                          \
    template class InducedProductModel<F>;                                                                      \
    template class SandwichModel<F>;                                                                            \
    template class OrthogonalTailModel<F>;                                                                      \
    template class GaugeModel<F>;                                                                               \
    template class MixtureModel<F>;                                                                             \
    template MomentFunctional<F> make_cuntz(const std::vector<F>&, const Tolerance&);                           \
    template MomentFunctional<F> make_prefix_code_state(int, const std::vector<Word>&, const std::vector<F>&,   \
                                                        const Tolerance&);                                      \
    template MomentFunctional<F> make_sub_cuntz(int, std::size_t, const std::vector<F>&, const Tolerance&);     \
    template MomentFunctional<F> make_geometric_progression(int, std::size_t, const std::vector<F>&,            \
                                                            const Tolerance&);                                  \
    template MomentFunctional<F> make_induced_product(const std::vector<std::vector<F>>&,                       \
                                                      const std::vector<std::vector<F>>&, const Tolerance&);    \
    template MomentFunctional<F> transform_gauge(const MomentFunctional<F>&, const Matrix<F>&,                  \
                                                 const Tolerance&);                                             \
    template MomentFunctional<F> transform_sandwich(const MomentFunctional<F>&,                                 \
                                                    const std::vector<SandwichTerm<F>>&, bool,                  \
                                                    const Tolerance&);                                          \
    template MomentFunctional<F> make_orthogonal_tail(int, Letter, Letter, std::optional<F>, const Tolerance&); \
    template MomentFunctional<F> make_mixture(const std::vector<RealOf<F>>&,                                    \
                                              const std::vector<MomentFunctional<F>>&, const Tolerance&);       \
    template MomentFunctional<F> make_custom(int, std::string, std::function<F(const Word&, const Word&)>);     \
    template PositivityResult<F> positivity_check(const MomentFunctional<F>&, std::size_t, const Tolerance&);   \
    template ConsistencyReport consistency_check(const MomentFunctional<F>&, std::size_t, const Tolerance&);

CUNTZLAB_INSTANTIATE(Exact)
CUNTZLAB_INSTANTIATE(Float)

}  // namespace cuntzlab

#include "cuntzlab/shiftrep.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cuntzlab {

// --- shift representation --------------------------------------------------

ShiftRepresentation::ShiftRepresentation(EventuallyPeriodicWord x) : ref_(std::move(x)) {}
ShiftRepresentation::ShiftRepresentation(LazyWord x) : ref_(std::move(x)) {}

int ShiftRepresentation::alphabet() const {
    return std::visit([](const auto& x) { return x.alphabet(); }, ref_);
}

Letter ShiftRepresentation::reference_letter(std::size_t pos) const {
    return std::visit([pos](const auto& x) { return x.at(pos); }, ref_);
}

std::size_t ShiftRepresentation::reduce_phase(std::size_t p) const {
    if (const auto* x = word()) {
        const std::size_t c = x->preperiod().size(), d = x->period().size();
        return p < c + d ? p : c + (p - c) % d;
    }
    const auto* lw = lazy_word();
    if (p >= lw->horizon())
        throw Error(ErrorCode::TailNotCertified,
                    "phase " + std::to_string(p) + " is past the horizon of " + lw->name());
    return p;
}

TailKey ShiftRepresentation::canonical(TailKey k) const {
    k.phase = reduce_phase(k.phase);
    const auto* x = word();
    while (!k.prefix.empty()) {
        const Letter a = k.prefix.back();
        std::optional<std::size_t> absorbed;
        if (k.phase >= 1 && reference_letter(k.phase - 1) == a) {
            absorbed = k.phase - 1;
        } else if (x && k.phase >= x->preperiod().size()) {
            // x^(p) = x^(p+d) inside the periodic part, so the letter before p+d also works.
            const std::size_t q = reduce_phase(k.phase + x->period().size() - 1);
            if (reference_letter(q) == a)
                absorbed = q;
        }
        if (!absorbed)
            break;
        k.prefix = k.prefix.prefix(k.prefix.size() - 1);
        k.phase = *absorbed;
    }
    return k;
}

std::optional<TailKey> ShiftRepresentation::apply(const TailKey& k, Letter i, bool dagger) const {
    if (!dagger)
        return canonical({k.prefix.prepended(i), k.phase});
    if (!k.prefix.empty()) {
        if (k.prefix[0] != i)
            return std::nullopt;
        return TailKey{k.prefix.drop(1), k.phase};
    }
    if (reference_letter(k.phase) != i)
        return std::nullopt;
    return TailKey{Word{}, reduce_phase(k.phase + 1)};
}

EventuallyPeriodicWord ShiftRepresentation::word_of(const TailKey& k) const {
    const auto* x = word();
    if (!x)
        throw Error(ErrorCode::TailNotCertified, "lazy tail classes have no finite description");
    EventuallyPeriodicWord tail = x->shifted(k.phase);
    return EventuallyPeriodicWord(x->alphabet(), k.prefix + tail.preperiod(), tail.period());
}

std::string ShiftRepresentation::key_str(const TailKey& k) const {
    if (word())
        return word_of(k).str();
    std::string s = k.prefix.empty() ? "" : k.prefix.str() + "·";
    return s + lazy_word()->name() + "^(" + std::to_string(k.phase) + ")";
}

// --- grid representation ---------------------------------------------------

GridRepresentation::GridRepresentation(int n) : n_(n) {
    if (n < 2)
        throw Error(ErrorCode::SchemaError, "grid representation needs n >= 2");
}

std::optional<GridKey> GridRepresentation::apply(const GridKey& key, Letter i, bool dagger) const {
    if (!dagger) {
        if (key.k - 1 > (std::numeric_limits<std::int64_t>::max() - i) / n_)
            throw std::overflow_error("grid index overflow");
        return GridKey{n_ * (key.k - 1) + i, key.m + 1};
    }
    if ((key.k - 1) % n_ != i - 1)
        return std::nullopt;
    return GridKey{(key.k - 1) / n_ + 1, key.m - 1};
}

std::string GridRepresentation::key_str(const GridKey& key) const {
    return "e_{" + std::to_string(key.k) + "," + std::to_string(key.m) + "}";
}

Letter GridRepresentation::address_letter(const GridKey& key, std::size_t t) const {
    std::int64_t k = key.k;
    for (std::size_t s = 0; s < t && k > 1; ++s)
        k = (k - 1) / n_ + 1;
    return static_cast<Letter>((k - 1) % n_) + 1;
}

// --- vector states ---------------------------------------------------------

template <class F>
ShiftStateModel<F>::ShiftStateModel(EventuallyPeriodicWord x) : x_(std::move(x)), rep_(x_) {
    auto& fl = this->flags_;
    fl.pure = true;
    fl.pure_reason = "shift states are pure: the tail-class representation is irreducible";
    const Word& per = x_.period();
    if (x_.purely_periodic())
        fl.minimal_certificate = CuntzElement<F>::monomial(x_.alphabet(), per, Word{});
    if (per.size() == 1) {
        std::vector<F> e(static_cast<std::size_t>(x_.alphabet()), F(0));
        e[static_cast<std::size_t>(per[0] - 1)] = F(1);
        fl.equivalent_cuntz = e;
        fl.equivalence_reason = "x is tail equivalent to " + per.str() + "^∞, whose shift state is a Cuntz state";
    }
}

template <class F>
std::optional<TailKey> ShiftStateModel<F>::strip(const Word& J) const {
    for (std::size_t t = 0; t < J.size(); ++t)
        if (x_.at(t) != J[t])
            return std::nullopt;
    return TailKey{Word{}, rep_.reduce_phase(J.size())};
}

template <class F>
F ShiftStateModel<F>::moment(const Word& J, const Word& K) const {
    auto a = strip(J);
    if (!a)
        return F(0);
    auto b = strip(K);
    return b && *a == *b ? F(1) : F(0);
}

template <class F>
std::optional<GnsVector<F>> ShiftStateModel<F>::gns_vector(const Word& J) const {
    GnsVector<F> v;
    if (auto k = strip(J))
        v.emplace(static_cast<long>(k->phase), F(1));
    return v;
}

template <class F>
std::string ShiftStateModel<F>::describe() const {
    return "shift state of x = " + x_.str();
}

template <class F>
LazyShiftStateModel<F>::LazyShiftStateModel(LazyWord x) : x_(std::move(x)) {
    auto& fl = this->flags_;
    fl.pure = true;
    fl.pure_reason = "shift states are pure: the tail-class representation is irreducible";
    fl.properly_infinite_sequence = [x = x_](std::size_t i) {
        return CuntzElement<F>::generator(x.alphabet(), x.at(i - 1));
    };
    fl.properly_infinite_proved = false;
    fl.properly_infinite_reason = "a_i = s_{x_i}; the δ-table is checked up to the cutoff only, "
                                  "since non-eventual periodicity of a lazy word is not certified";
}

template <class F>
bool LazyShiftStateModel<F>::is_prefix(const Word& J) const {
    for (std::size_t t = 0; t < J.size(); ++t)
        if (x_.at(t) != J[t])
            return false;
    return true;
}

template <class F>
F LazyShiftStateModel<F>::moment(const Word& J, const Word& K) const {
    return J.size() == K.size() && is_prefix(J) && is_prefix(K) ? F(1) : F(0);
}

template <class F>
std::optional<GnsVector<F>> LazyShiftStateModel<F>::gns_vector(const Word& J) const {
    GnsVector<F> v;
    if (is_prefix(J))
        v.emplace(static_cast<long>(J.size()), F(1));
    return v;
}

template <class F>
std::string LazyShiftStateModel<F>::describe() const {
    return "shift state of " + x_.name() + " (horizon " + std::to_string(x_.horizon()) + ")";
}

template <class F>
GridStateModel<F>::GridStateModel(int n, GridKey key) : rep_(n), key_(key) {
    if (key.k < 1)
        throw Error(ErrorCode::SchemaError, "grid basis index k must be >= 1");
    auto& fl = this->flags_;
    fl.properly_infinite_sequence = [rep = rep_, key](std::size_t i) {
        return CuntzElement<F>::generator(rep.alphabet(), rep.address_letter(key, i - 1));
    };
    fl.properly_infinite_proved = true;
    fl.properly_infinite_reason = "a[l]* e_{k,m} sits at height m - l, so the vectors are orthonormal";
    fl.pure = false;
    fl.pure_reason = "equals the induced product state of the eventually constant basis sequence "
                     "read off the address of k, which is not aperiodic";
}

template <class F>
bool GridStateModel<F>::valid(const Word& J) const {
    for (std::size_t t = 0; t < J.size(); ++t)
        if (rep_.address_letter(key_, t) != J[t])
            return false;
    return true;
}

template <class F>
F GridStateModel<F>::moment(const Word& J, const Word& K) const {
    return J.size() == K.size() && valid(J) && valid(K) ? F(1) : F(0);
}

template <class F>
std::optional<GnsVector<F>> GridStateModel<F>::gns_vector(const Word& J) const {
    GnsVector<F> v;
    if (valid(J))
        v.emplace(static_cast<long>(J.size()), F(1));
    return v;
}

template <class F>
std::string GridStateModel<F>::describe() const {
    return "grid vector state at " + rep_.key_str(key_) + ", n=" + std::to_string(rep_.alphabet());
}

template <class F>
MomentFunctional<F> vector_state(const EventuallyPeriodicWord& x) {
    return MomentFunctional<F>(std::make_shared<ShiftStateModel<F>>(x));
}

template <class F>
MomentFunctional<F> vector_state(const LazyWord& x) {
    return MomentFunctional<F>(std::make_shared<LazyShiftStateModel<F>>(x));
}

template <class F>
MomentFunctional<F> vector_state(const ShiftRepresentation& rep, const TailKey& key) {
    if (rep.word())
        return vector_state<F>(rep.word_of(key));
    const LazyWord& x = *rep.lazy_word();
    const TailKey k = rep.canonical(key);
    if (x.horizon() <= k.phase)
        throw Error(ErrorCode::TailNotCertified, "basis vector lies past the horizon");
    auto rule = [x, k](std::size_t i) {
        return i < k.prefix.size() ? k.prefix[i] : x.at(i - k.prefix.size() + k.phase);
    };
    LazyWord y(rep.key_str(k), x.alphabet(), rule, x.horizon() - k.phase + k.prefix.size());
    return vector_state<F>(y);
}

template <class F>
MomentFunctional<F> grid_vector_state(int n, GridKey key) {
    return MomentFunctional<F>(std::make_shared<GridStateModel<F>>(n, key));
}

// --- DHJ grading -----------------------------------------------------------

namespace {

template <class Key, class F>
struct OrthoBasis {
    std::vector<StateVector<Key, F>> q;
    std::vector<F> norm2;

    StateVector<Key, F> residual(StateVector<Key, F> v) const {
        // Modified Gram-Schmidt: subtract one direction at a time.
        for (std::size_t t = 0; t < q.size(); ++t) {
            const F c = inner(q[t], v) / norm2[t];
            if (is_zero(c, 0.0))
                continue;
            for (const auto& [k, y] : q[t])
                v[k] -= c * y;
        }
        for (auto it = v.begin(); it != v.end();)
            it = is_zero(it->second, 1e-15) ? v.erase(it) : std::next(it);
        return v;
    }

    /// Adds the residual of v when it is not negligible; returns it if added.
    std::optional<StateVector<Key, F>> add(const StateVector<Key, F>& v, double tol) {
        auto r = residual(v);
        const F d = inner(r, r);
        if (is_exact_v<F> ? is_zero(d, 0.0) : to_double(real_part(d)) <= tol)
            return std::nullopt;
        q.push_back(r);
        norm2.push_back(d);
        return r;
    }
};

template <class Key, class F>
double vector_norm(const StateVector<Key, F>& v) {
    return std::sqrt(to_double(real_part(inner(v, v))));
}

template <class Key, class F>
OrthoBasis<Key, F> span_basis(const std::vector<StateVector<Key, F>>& M, double tol) {
    OrthoBasis<Key, F> b;
    for (const auto& v : M)
        b.add(v, tol);
    return b;
}

template <class Key, class F>
StateVector<Key, F> normalized(StateVector<Key, F> v) {
    if constexpr (!is_exact_v<F>) {
        const double s = vector_norm(v);
        for (auto& [k, y] : v)
            y /= s;
    }
    return v;
}

}  // namespace

template <class Rep, class F>
void require_invariant(const Rep& rep, const std::vector<StateVector<typename Rep::Key, F>>& M, double tol) {
    const auto basis = span_basis(M, tol);
    for (std::size_t idx = 0; idx < M.size(); ++idx)
        for (Letter i = 1; i <= rep.alphabet(); ++i) {
            const double r = vector_norm(basis.residual(apply_generator(rep, M[idx], i, true)));
            if (r > std::sqrt(tol))
                throw Error(ErrorCode::NotInvariant, "s_" + std::to_string(i) + "* maps spanning vector " +
                                                         std::to_string(idx) + " outside span(M); residual " +
                                                         format_double(r));
        }
}

template <class Rep, class F>
DhjGrading<typename Rep::Key, F> dhj_grading(const Rep& rep, const std::vector<StateVector<typename Rep::Key, F>>& M,
                                             std::size_t depth, const Tolerance& tol) {
    using Key = typename Rep::Key;
    require_invariant(rep, M, tol.eq);
    DhjGrading<Key, F> out;
    out.normalized = !is_exact_v<F>;
    OrthoBasis<Key, F> acc;
    std::vector<StateVector<Key, F>> level;
    for (const auto& v : M)
        if (auto r = acc.add(v, tol.rank))
            level.push_back(*r);
    out.levels.push_back(level);
    // span{s_J v : |J| <= k} = S_{k-1} + Σ_i s_i H_{k-1}, so only the last level needs lifting.
    for (std::size_t k = 1; k <= depth; ++k) {
        std::vector<StateVector<Key, F>> next;
        for (const auto& u : out.levels.back())
            for (Letter i = 1; i <= rep.alphabet(); ++i)
                if (auto r = acc.add(apply_generator(rep, u, i, false), tol.rank))
                    next.push_back(*r);
        out.levels.push_back(std::move(next));
    }
    if (out.normalized)
        for (auto& lv : out.levels)
            for (auto& v : lv)
                v = normalized(v);
    return out;
}

template <class Rep, class F>
std::vector<double> lemma_convergence_check(const Rep& rep, const std::vector<StateVector<typename Rep::Key, F>>& M,
                                            const std::function<CuntzElement<F>(std::size_t)>& a,
                                            const StateVector<typename Rep::Key, F>& v, std::size_t L,
                                            const Tolerance& tol) {
    require_invariant(rep, M, tol.eq);
    const auto basis = span_basis(M, tol.rank);
    std::vector<double> norms;
    auto x = v;
    for (std::size_t l = 1; l <= L; ++l) {
        x = apply_element(rep, a(l).adjoint(), x);
        norms.push_back(vector_norm(basis.residual(x)));
    }
    return norms;
}

#define CUNTZLAB_INSTANTIATE_REP(R, F)                                                                          \
    template void require_invariant<R, F>(const R&, const std::vector<StateVector<R::Key, F>>&, double);        \
    template DhjGrading<R::Key, F> dhj_grading<R, F>(const R&, const std::vector<StateVector<R::Key, F>>&,      \
                                                     std::size_t, const Tolerance&);                            \
    template std::vector<double> lemma_convergence_check<R, F>(                                                 \
        const R&, const std::vector<StateVector<R::Key, F>>&, const std::function<CuntzElement<F>(std::size_t)>&, \
        const StateVector<R::Key, F>&, std::size_t, const Tolerance&);

#define CUNTZLAB_INSTANTIATE(F)                                                             \
    template class ShiftStateModel<F>;                                                      \
    template class LazyShiftStateModel<F>;                                                  \
    template class GridStateModel<F>;                                                       \
    template MomentFunctional<F> vector_state<F>(const EventuallyPeriodicWord&);            \
    template MomentFunctional<F> vector_state<F>(const LazyWord&);                          \
    template MomentFunctional<F> vector_state<F>(const ShiftRepresentation&, const TailKey&); \
    template MomentFunctional<F> grid_vector_state<F>(int, GridKey);                        \
    CUNTZLAB_INSTANTIATE_REP(ShiftRepresentation, F)                                        \
    CUNTZLAB_INSTANTIATE_REP(GridRepresentation, F)

CUNTZLAB_INSTANTIATE(Exact)
CUNTZLAB_INSTANTIATE(Float)

}  // namespace cuntzlab

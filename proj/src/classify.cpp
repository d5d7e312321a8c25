#include "cuntzlab/classify.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cuntzlab {

std::string CdimResult::str() const {
    std::ostringstream os;
    os << (stabilized() ? "cdim=" : "cdim lower bound ") << value;
    if (!stabilized())
        os << " at level " << (levels.empty() ? 0 : levels.size() - 1);
    os << " (levels";
    for (auto r : levels)
        os << ' ' << r;
    os << ")";
    return os.str();
}

std::string certificate_name(CertificateKind k) {
    switch (k) {
    case CertificateKind::Minimal: return "Minimal";
    case CertificateKind::ProperlyInfinite: return "ProperlyInfinite";
    case CertificateKind::ShiftPeriod: return "ShiftPeriod";
    case CertificateKind::EquivalentToCuntz: return "EquivalentToCuntz";
    case CertificateKind::LowerBoundOnly: return "LowerBoundOnly";
    }
    return "LowerBoundOnly";
}

std::string Decision::str(const char* yes, const char* no) const {
    const char* v = verdict == Verdict::Yes ? yes : verdict == Verdict::No ? no : "Unknown";
    return reason.empty() ? std::string(v) : std::string(v) + " (" + reason + ")";
}

template <class F>
CdimResult cdim(const MomentFunctional<F>& w, const ClassifyConfig& cfg) {
    const auto ex = gram_ranks(w, cfg.max_level, cfg.tol, cfg.policy);
    CdimResult r;
    r.levels = ex.level_ranks;
    r.value = ex.lower_bound();
    r.status = ex.stabilized_at ? CdimStatus::Stabilized : CdimStatus::LowerBound;
    return r;
}

// --- certificates -----------------------------------------------------------

template <class F>
bool verify_minimality_certificate(const MomentFunctional<F>& w, const CuntzElement<F>& u, const Tolerance& tol) {
    if (u.alphabet() != w.n())
        return false;
    const auto chk = is_isometry_in_plus(u, tol.eq);
    if (!chk.isometry || !chk.in_plus)
        return false;
    return near(w.apply(u), F(1), tol.eq);
}

template <class F>
std::string ProperlyInfiniteCheck<F>::status() const {
    if (!table_is_identity)
        return "failed";
    if (proved)
        return "proved";
    return "evidence(cutoff " + std::to_string(cutoff) + ")";
}

namespace {

template <class F>
using Creation = std::map<Word, F>;

template <class F>
Creation<F> creation_part(const CuntzElement<F>& a) {
    Creation<F> out;
    for (const auto& [key, c] : a.terms()) {
        if (!key.second.empty() || key.first.empty())
            throw Error(ErrorCode::ValidationFailed, "sequence element " + a.str() + " is not in O_n^+");
        out.emplace(key.first, c);
    }
    return out;
}

template <class F>
Creation<F> concat(const Creation<F>& a, const Creation<F>& b) {
    Creation<F> out;
    for (const auto& [J, x] : a)
        for (const auto& [K, y] : b) {
            F c = x * y;
            if (!is_zero(c, 0.0))
                out[J + K] += c;
        }
    return out;
}

/// a*Ω for a = Σ c_J s_J in GNS coordinates, when the family exposes them.
template <class F>
std::optional<GnsVector<F>> annihilated(const MomentFunctional<F>& w, const Creation<F>& a) {
    GnsVector<F> v;
    for (const auto& [J, c] : a) {
        auto g = w.gns_vector(J);
        if (!g)
            return std::nullopt;
        const F cc = conjugate(c);
        for (const auto& [k, x] : *g)
            v[k] += cc * x;
    }
    return v;
}

template <class F>
F pair_value(const MomentFunctional<F>& w, const Creation<F>& a, const Creation<F>& b,
             const std::optional<GnsVector<F>>& ga, const std::optional<GnsVector<F>>& gb) {
    if (ga && gb)
        return gns_inner(*ga, *gb);
    F s(0);
    for (const auto& [J, x] : a)
        for (const auto& [K, y] : b)
            s += x * conjugate(y) * w(J, K);
    return s;
}

}  // namespace

template <class F>
ProperlyInfiniteCheck<F> verify_properly_infinite(const MomentFunctional<F>& w,
                                                  const std::function<CuntzElement<F>(std::size_t)>& a,
                                                  std::size_t cutoff, bool analytic, const Tolerance& tol) {
    ProperlyInfiniteCheck<F> out;
    out.cutoff = cutoff;
    out.proved = analytic;
    out.table = Matrix<F>(cutoff, cutoff);
    std::vector<Creation<F>> prod;
    std::vector<std::optional<GnsVector<F>>> vecs;
    Creation<F> acc{{Word{}, F(1)}};
    for (std::size_t l = 1; l <= cutoff; ++l) {
        const CuntzElement<F> al = a(l);
        const auto chk = is_isometry_in_plus(al, tol.eq);
        if (!chk.isometry || !chk.in_plus)
            throw Error(ErrorCode::ValidationFailed, "a_" + std::to_string(l) + " is not an isometry in O_n^+");
        acc = concat(acc, creation_part(al));
        prod.push_back(acc);
        vecs.push_back(annihilated(w, acc));
    }
    bool identity = true;
    for (std::size_t l = 0; l < cutoff; ++l)
        for (std::size_t k = l; k < cutoff; ++k) {
            const F v = pair_value(w, prod[l], prod[k], vecs[l], vecs[k]);
            out.table(l, k) = v;
            out.table(k, l) = conjugate(v);
            identity = identity && near(v, F(l == k ? 1 : 0), tol.eq);
        }
    out.table_is_identity = identity;
    return out;
}

template <class F>
std::optional<CuntzElement<F>> search_minimality_certificate(const MomentFunctional<F>& w, std::size_t depth,
                                                             const Tolerance& tol) {
    const int n = w.n();
    std::vector<std::vector<Word>> codes;
    for (std::size_t m = 1; m <= depth; ++m)
        codes.push_back(uniform_code(n, m));
    for (std::size_t k = 2; k <= depth; ++k)
        codes.push_back(geometric_progression_code(n, k));
    // By Cauchy-Schwarz, ω(Σ z_W s_W) = 1 with ‖z‖ = 1 forces z_W = conj(ω(s_W)).
    for (const auto& code : codes) {
        RealOf<F> s(0);
        std::vector<std::pair<Word, F>> terms;
        for (const auto& W : code) {
            const F v = w(W, Word{});
            s += abs2(v);
            terms.emplace_back(W, conjugate(v));
        }
        if (!near(s, RealOf<F>(1), tol.eq))
            continue;
        auto u = CuntzElement<F>::creation(n, terms);
        if (verify_minimality_certificate(w, u, tol))
            return u;
    }
    return std::nullopt;
}

// --- κ -----------------------------------------------------------------------

template <class F>
std::string KappaResult<F>::str() const {
    std::ostringstream os;
    if (infinite && evidence_only)
        os << "κ=∞ (evidence, cutoff " << certificate.cutoff << ")";
    else if (infinite)
        os << "κ=∞ (" << certificate_name(certificate.kind) << ", proved)";
    else if (resolved)
        os << "κ=" << value << " (" << certificate_name(certificate.kind) << ")";
    else
        os << "κ ∈ [" << lower << "," << (upper ? std::to_string(*upper) : std::string("∞")) << "] unresolved";
    return os.str();
}

template <class F>
std::string spectrum_bucket(const KappaResult<F>& k) {
    if (k.infinite && k.evidence_only)
        return "∞ (evidence, cutoff " + std::to_string(k.certificate.cutoff) + ")";
    if (k.infinite)
        return "∞";
    if (k.resolved)
        return std::to_string(k.value);
    return "unresolved";
}

namespace {

template <class F>
void set_finite(KappaResult<F>& r, std::size_t v) {
    r.resolved = true;
    r.value = v;
    r.lower = v;
    r.upper = v;
}

template <class F>
KappaResult<F> kappa_of_gauge(const MomentFunctional<F>& w, const GaugeModel<F>& gm, const ClassifyConfig& cfg) {
    KappaResult<F> r = kappa(gm.base(), cfg);
    r.cdim = cdim(w, cfg);
    const Matrix<F> gh = gm.g().adjoint();
    auto& c = r.certificate;
    if (c.u) {
        c.u = gauge_apply(gh, *c.u, cfg.tol.eq);
        if (!verify_minimality_certificate(w, *c.u, cfg.tol))
            throw Error(ErrorCode::ValidationFailed, "transported minimality certificate does not verify");
    }
    if (c.kind == CertificateKind::ProperlyInfinite) {
        for (auto& a : c.a)
            a = gauge_apply(gh, a, cfg.tol.eq);
        const auto seq = [&c](std::size_t i) { return c.a.at(i - 1); };
        if (!verify_properly_infinite<F>(w, seq, c.a.size(), c.proved, cfg.tol).holds())
            throw Error(ErrorCode::ValidationFailed, "transported δ-table is not the identity");
    }
    if (!c.z.empty())
        c.z = matvec(gh, c.z);  // ω_z∘α_g = ω_{g* z}
    r.citations.push_back("gauge invariance: κ(ω∘α_g) = κ(ω), certificates transported by α_{g*}");
    return r;
}

template <class F>
void finish_minimal(KappaResult<F>& r, CuntzElement<F> u, const std::string& note) {
    r.certificate.kind = CertificateKind::Minimal;
    r.certificate.u = std::move(u);
    r.certificate.note = note;
    r.citations.push_back("minimality theorem: an isometry u ∈ O_n^+ with ω(u) = 1 makes ω minimal, so κ = cdim");
    if (r.cdim.stabilized()) {
        set_finite(r, r.cdim.value);
    } else {
        r.lower = r.cdim.value;
        r.upper.reset();
    }
}

}  // namespace

template <class F>
KappaResult<F> kappa(const MomentFunctional<F>& w, const ClassifyConfig& cfg) {
    if (const auto* gm = w.template as<GaugeModel<F>>())
        return kappa_of_gauge(w, *gm, cfg);

    KappaResult<F> r;
    r.cdim = cdim(w, cfg);
    const auto& fl = w.flags();

    if (const auto* sm = w.template as<ShiftStateModel<F>>()) {
        const auto& x = sm->word();
        set_finite(r, x.period().size());
        r.certificate.kind = CertificateKind::ShiftPeriod;
        r.certificate.period = x.period().size();
        r.certificate.note = x.purely_periodic() ? "purely periodic, minimal with u = s_" + x.period().str()
                                                 : "not purely periodic, hence not minimal";
        r.citations.push_back("shift states: κ(ω_x) = d(x), the primitive period length of x");
        return r;
    }

    if (fl.equivalent_cuntz) {
        set_finite(r, 1);
        r.certificate.kind = CertificateKind::EquivalentToCuntz;
        r.certificate.z = *fl.equivalent_cuntz;
        r.certificate.note = fl.equivalence_reason;
        r.citations.push_back("κ = 1 exactly on the class of Cuntz states");
        return r;
    }

    if (fl.minimal_certificate && verify_minimality_certificate(w, *fl.minimal_certificate, cfg.tol)) {
        finish_minimal(r, *fl.minimal_certificate, "family certificate");
        return r;
    }

    if (fl.properly_infinite_sequence) {
        const auto chk =
            verify_properly_infinite(w, fl.properly_infinite_sequence, cfg.cutoff, fl.properly_infinite_proved, cfg.tol);
        if (chk.holds()) {
            r.infinite = true;
            r.resolved = chk.proved;
            r.evidence_only = !chk.proved;
            r.lower = 1;
            r.upper.reset();
            r.certificate.kind = CertificateKind::ProperlyInfinite;
            r.certificate.cutoff = cfg.cutoff;
            r.certificate.proved = chk.proved;
            for (std::size_t i = 1; i <= cfg.cutoff; ++i)
                r.certificate.a.push_back(fl.properly_infinite_sequence(i));
            r.certificate.note = fl.properly_infinite_reason;
            r.citations.push_back("proper infiniteness theorem: ω(a[l]a[k]*) = δ_lk for isometries a_i ∈ O_n^+ "
                                  "gives κ = ∞");
            return r;
        }
    }

    if (cfg.search_certificates) {
        if (auto u = search_minimality_certificate(w, cfg.search_depth, cfg.tol)) {
            finish_minimal(r, *u, "found by bounded search");
            return r;
        }
        r.certificate.note = "no certificate found";
    }

    r.certificate.kind = CertificateKind::LowerBoundOnly;
    r.lower = 1;
    if (r.cdim.stabilized())
        r.upper = r.cdim.value;
    else
        r.upper.reset();
    r.citations.push_back("κ is a minimum of cdim over the equivalence class: 1 <= κ <= cdim");
    if (r.upper && *r.upper == 1) {
        set_finite(r, 1);
        r.citations.push_back("cdim = 1 holds exactly for Cuntz states");
    }
    return r;
}

template <class F>
std::string decompose_spectrum_bucket(const MomentFunctional<F>& w, const ClassifyConfig& cfg) {
    return spectrum_bucket(kappa(w, cfg));
}

// --- equivalence -------------------------------------------------------------

template <class F>
bool tensors_conjugate(const std::vector<F>& z, const std::vector<F>& y, int n, std::size_t m, double tol) {
    if (z.size() != y.size())
        return false;
    auto same = [&](const std::vector<F>& a) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!near(a[i], y[i], tol))
                return false;
        return true;
    };
    if (same(z))
        return true;
    // x1 ⊗ x2 is unchanged by x1 → c x1, x2 → x2 / c, and so is x2 ⊗ x1.
    for (std::size_t q = 1; q < m; ++q)
        if (auto split = rank_one_split(z, n, m, q, tol))
            if (same(tensor_product(split->second, split->first)))
                return true;
    return false;
}

namespace {

template <class F>
bool unit_overlap(const std::vector<F>& a, const std::vector<F>& b, double tol) {
    F s(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        s += conjugate(a[i]) * b[i];
    return near(abs2(s), RealOf<F>(1), tol);
}

/// Terms 1 - |⟨z^(l)|y^(l+k)⟩| vanish for all large l.
template <class F>
bool tail_terms_vanish(const InducedProductModel<F>& z, const InducedProductModel<F>& y, std::size_t k, double tol) {
    const std::size_t start = std::max(z.pre().size(), y.pre().size()) + 1;
    const std::size_t period = std::lcm(z.rep().size(), y.rep().size());
    for (std::size_t l = start; l < start + period; ++l)
        if (!unit_overlap(z.vector_at(l), y.vector_at(l + k), tol))
            return false;
    return true;
}

template <class F>
std::optional<InducedProductModel<F>> as_induced_product(const MomentFunctional<F>& w, const Tolerance& tol) {
    if (const auto* ip = w.template as<InducedProductModel<F>>())
        return *ip;
    if (const auto* gs = w.template as<GridStateModel<F>>()) {
        // The grid state is the induced product of the basis vectors e_{letter} read off the address.
        const int n = w.n();
        GridRepresentation rep(n);
        auto basis = [n](Letter a) {
            std::vector<F> e(static_cast<std::size_t>(n), F(0));
            e[static_cast<std::size_t>(a - 1)] = F(1);
            return e;
        };
        std::vector<std::vector<F>> pre;
        GridKey key = gs->key();
        while (key.k > 1) {
            const Letter a = rep.address_letter(key, 0);
            pre.push_back(basis(a));
            key = *rep.apply(key, a, true);
        }
        return InducedProductModel<F>(pre, {basis(1)}, tol);
    }
    return std::nullopt;
}

template <class F>
std::optional<std::vector<F>> cuntz_vector(const MomentFunctional<F>& w) {
    if (const auto* c = w.template as<CuntzModel<F>>())
        return c->z();
    if (w.flags().equivalent_cuntz)
        return w.flags().equivalent_cuntz;
    return std::nullopt;
}

/// Shift word for shift states and for sub-Cuntz states by a primitive basis tensor e_{J0}.
template <class F>
std::optional<EventuallyPeriodicWord> shift_word(const MomentFunctional<F>& w) {
    if (const auto* s = w.template as<ShiftStateModel<F>>())
        return s->word();
    const auto* pc = w.template as<PrefixCodeModel<F>>();
    if (!pc || pc->state().kind() != PrefixCodeKind::SubCuntz || pc->periodicity() != 1)
        return std::nullopt;
    const auto& z = pc->state().z();
    std::optional<std::size_t> hot;
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (is_zero(z[i], 0.0))
            continue;
        if (hot || !near(z[i], F(1), 0.0))
            return std::nullopt;
        hot = i;
    }
    if (!hot)
        return std::nullopt;
    const auto words = uniform_code(w.n(), pc->state().order());
    return EventuallyPeriodicWord(w.n(), Word{}, words[*hot]);
}

template <class F>
const PrefixCodeModel<F>* prefix_kind(const MomentFunctional<F>& w, PrefixCodeKind kind) {
    const auto* pc = w.template as<PrefixCodeModel<F>>();
    return pc && pc->state().kind() == kind ? pc : nullptr;
}

template <class F>
bool vectors_equal(const std::vector<F>& a, const std::vector<F>& b, double tol) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!near(a[i], b[i], tol))
            return false;
    return true;
}

Decision make(Verdict v, std::string reason) {
    return {v, std::move(reason)};
}

/// Geometric progression (|z_m| < 1, k >= 2) against a Cuntz class.
template <class F>
std::optional<Decision> gp_vs_cuntz(const MomentFunctional<F>& a, const MomentFunctional<F>& b) {
    const auto* gp = prefix_kind(a, PrefixCodeKind::GeometricProgression);
    if (!gp || a.flags().equivalent_cuntz || !cuntz_vector(b) || gp->state().order() < 2 ||
        a.flags().pure != std::optional<bool>(true))
        return std::nullopt;
    return make(Verdict::No, "geometric progression state is equivalent to a Cuntz state only for z = hat(y)");
}

template <class F>
bool same_kappa_class(const KappaResult<F>& k) {
    return k.resolved && !k.evidence_only;
}

}  // namespace

template <class F>
bool induced_products_equivalent(const InducedProductModel<F>& z, const InducedProductModel<F>& y, double tol) {
    if (z.vector_at(1).size() != y.vector_at(1).size())
        return false;
    // Shifting k by a period of the shifted sequence leaves the tail terms unchanged.
    for (std::size_t k = 0; k < y.rep().size(); ++k)
        if (tail_terms_vanish(z, y, k, tol))
            return true;
    for (std::size_t k = 0; k < z.rep().size(); ++k)
        if (tail_terms_vanish(y, z, k, tol))
            return true;
    return false;
}

template <class F>
bool induced_product_aperiodic(const InducedProductModel<F>& z, double tol) {
    for (std::size_t k = 1; k <= z.rep().size(); ++k)
        if (tail_terms_vanish(z, z, k, tol))
            return false;
    return true;
}

template <class F>
Decision equivalent(const MomentFunctional<F>& a, const MomentFunctional<F>& b, const ClassifyConfig& cfg) {
    if (a.n() != b.n())
        throw Error(ErrorCode::AlphabetMismatch, "states live on different Cuntz algebras");
    const double tol = cfg.tol.eq;

    const auto* ga = a.template as<GaugeModel<F>>();
    const auto* gb = b.template as<GaugeModel<F>>();
    if (ga && gb && ga->g().approx_equal(gb->g(), tol)) {
        auto d = equivalent(ga->base(), gb->base(), cfg);
        d.reason += "; α_g is an automorphism";
        return d;
    }

    const auto ca = cuntz_vector(a), cb = cuntz_vector(b);
    if (ca && cb) {
        const bool eq = vectors_equal(*ca, *cb, tol);
        return make(eq ? Verdict::Yes : Verdict::No, "Cuntz states: ω_z ∼ ω_y iff z = y");
    }

    const auto* pa = prefix_kind(a, PrefixCodeKind::SubCuntz);
    const auto* pb = prefix_kind(b, PrefixCodeKind::SubCuntz);
    if (pa && pb && pa->state().order() == pb->state().order()) {
        const auto& za = pa->state().z();
        const auto& zb = pb->state().z();
        if (vectors_equal(za, zb, tol))
            return make(Verdict::Yes, "identical sub-Cuntz data");
        if (pa->periodicity() == 1 && pb->periodicity() == 1) {
            const bool conj = tensors_conjugate(za, zb, a.n(), pa->state().order(), tol);
            return make(conj ? Verdict::Yes : Verdict::No,
                        "sub-Cuntz conjugacy: nonperiodic ω_z ∼ ω_y iff z = x1⊗x2 and y = x2⊗x1");
        }
    }

    const auto sa = shift_word(a), sb = shift_word(b);
    if (sa && sb)
        return make(tail_equivalent(*sa, *sb) ? Verdict::Yes : Verdict::No,
                    "shift states: ω_x ∼ ω_y iff x and y are tail equivalent");

    const auto* qa = prefix_kind(a, PrefixCodeKind::GeometricProgression);
    const auto* qb = prefix_kind(b, PrefixCodeKind::GeometricProgression);
    if (qa && qb && qa->state().order() == qb->state().order() && qa->state().order() >= 2 &&
        a.flags().pure == std::optional<bool>(true) && b.flags().pure == std::optional<bool>(true))
        return make(vectors_equal(qa->state().z(), qb->state().z(), tol) ? Verdict::Yes : Verdict::No,
                    "geometric progression states with |z_m| < 1: ω'_z ∼ ω'_y iff z = y");
    if (auto d = gp_vs_cuntz(a, b))
        return *d;
    if (auto d = gp_vs_cuntz(b, a))
        return *d;

    const auto ia = as_induced_product(a, cfg.tol), ib = as_induced_product(b, cfg.tol);
    if (ia && ib)
        return make(induced_products_equivalent(*ia, *ib, tol) ? Verdict::Yes : Verdict::No,
                    "induced products: ω_z ∼ ω_y iff Σ_l (1 - |⟨z^(l)|y^(l+k)⟩|) < ∞ for some shift k");

    const auto ka = kappa(a, cfg), kb = kappa(b, cfg);
    if (same_kappa_class(ka) && same_kappa_class(kb) &&
        (ka.infinite != kb.infinite || (!ka.infinite && ka.value != kb.value)))
        return make(Verdict::No, "κ is an invariant of equivalence and differs (" + ka.str() + " vs " + kb.str() + ")");

    return make(Verdict::Unknown, "pair outside the classified families");
}

template <class F>
Decision pure(const MomentFunctional<F>& w, const ClassifyConfig& cfg) {
    if (const auto* gm = w.template as<GaugeModel<F>>()) {
        auto d = pure(gm->base(), cfg);
        d.reason += "; purity is invariant under automorphisms";
        return d;
    }
    if (const auto* mx = w.template as<MixtureModel<F>>()) {
        const auto words = words_up_to(w.n(), 2);
        std::optional<std::size_t> first;
        for (std::size_t i = 0; i < mx->parts().size(); ++i) {
            if (mx->weights()[i] == RealOf<F>(0))
                continue;
            if (!first) {
                first = i;
                continue;
            }
            for (const auto& J : words)
                for (const auto& K : words)
                    if (!near(mx->parts()[i](J, K), mx->parts()[*first](J, K), cfg.tol.eq))
                        return make(Verdict::No, "a nontrivial convex combination of distinct states is not pure");
        }
        return make(Verdict::Unknown, "mixture parts agree on all tested moments");
    }
    if (auto ip = as_induced_product(w, cfg.tol)) {
        const bool ap = induced_product_aperiodic(*ip, cfg.tol.eq);
        return make(ap ? Verdict::Yes : Verdict::No,
                    "induced products are pure iff z is aperiodic; eventually periodic data has a vanishing series");
    }
    const auto& fl = w.flags();
    if (fl.pure)
        return make(*fl.pure ? Verdict::Yes : Verdict::No, fl.pure_reason);
    const auto k = kappa(w, cfg);
    if (k.resolved && !k.infinite && k.value == 1)
        return make(Verdict::Yes, "κ = 1 implies purity");
    return make(Verdict::Unknown, "no purity criterion applies");
}

// --- representations -----------------------------------------------------------

template <class F>
KappaResult<F> kappa_rep(const Representation& rep, const ClassifyConfig& cfg) {
    std::vector<MomentFunctional<F>> samples;
    if (const auto* sr = std::get_if<ShiftRepresentation>(&rep)) {
        for (const TailKey& key : {sr->reference(), sr->canonical({Word{1}, 0}), sr->canonical({Word{}, 1})})
            samples.push_back(vector_state<F>(*sr, key));
    } else {
        const auto& gr = std::get<GridRepresentation>(rep);
        for (const GridKey& key : {GridKey{1, 0}, GridKey{2, 0}, GridKey{5, 3}})
            samples.push_back(grid_vector_state<F>(gr.alphabet(), key));
    }
    KappaResult<F> first = kappa(samples.front(), cfg);
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const auto k = kappa(samples[i], cfg);
        if (k.infinite != first.infinite || k.resolved != first.resolved || k.value != first.value)
            throw std::logic_error("κ differs between basis vectors of one representation: " + first.str() +
                                   " vs " + k.str());
    }
    first.citations.push_back("κ(π) := κ(ω_x∘π) for a unit vector x; agreement checked on 3 basis vectors");
    return first;
}

template <class F>
EndoInvariants<F> endo_invariants(const Representation& rep, const ClassifyConfig& cfg) {
    EndoInvariants<F> out;
    out.powers_index = std::visit([](const auto& r) { return r.alphabet(); }, rep);
    out.kappa = kappa_rep<F>(rep, cfg);
    if (std::holds_alternative<GridRepresentation>(rep))
        out.note = "φ = Σ π(s_i)(·)π(s_i)* on the grid space; the grid representation is reducible, so φ is not "
                   "ergodic there and κ refers to the cyclic subrepresentation of each basis vector";
    else
        out.note = "φ = Σ π(s_i)(·)π(s_i)* is ergodic because the tail-class representation is irreducible; "
                   "κ(φ) := κ(π) is invariant under conjugacy, which matches π1 ∼ π2∘α_g";
    return out;
}

#define CUNTZLAB_INSTANTIATE(F)                                                                                  \
    template CdimResult cdim(const MomentFunctional<F>&, const ClassifyConfig&);                                 \
    template bool verify_minimality_certificate(const MomentFunctional<F>&, const CuntzElement<F>&,              \
                                                const Tolerance&);                                               \
    template struct ProperlyInfiniteCheck<F>;                                                                    \
    template ProperlyInfiniteCheck<F> verify_properly_infinite(                                                  \
        const MomentFunctional<F>&, const std::function<CuntzElement<F>(std::size_t)>&, std::size_t, bool,       \
        const Tolerance&);                                                                                       \
    template std::optional<CuntzElement<F>> search_minimality_certificate(const MomentFunctional<F>&,            \
                                                                          std::size_t, const Tolerance&);        \
    template struct KappaResult<F>;                                                                              \
    template KappaResult<F> kappa(const MomentFunctional<F>&, const ClassifyConfig&);                            \
    template std::string spectrum_bucket(const KappaResult<F>&);                                                 \
    template std::string decompose_spectrum_bucket(const MomentFunctional<F>&, const ClassifyConfig&);           \
    template Decision equivalent(const MomentFunctional<F>&, const MomentFunctional<F>&, const ClassifyConfig&); \
    template Decision pure(const MomentFunctional<F>&, const ClassifyConfig&);                                   \
    template bool tensors_conjugate(const std::vector<F>&, const std::vector<F>&, int, std::size_t, double);     \
    template bool induced_products_equivalent(const InducedProductModel<F>&, const InducedProductModel<F>&,      \
                                              double);                                                           \
    template bool induced_product_aperiodic(const InducedProductModel<F>&, double);                              \
    template KappaResult<F> kappa_rep(const Representation&, const ClassifyConfig&);                             \
    template struct EndoInvariants<F>;                                                                           \
    template EndoInvariants<F> endo_invariants(const Representation&, const ClassifyConfig&);

CUNTZLAB_INSTANTIATE(Exact)
CUNTZLAB_INSTANTIATE(Float)

}  // namespace cuntzlab

#include "cuntzlab/acceptance.hpp"

#include "cuntzlab/classify.hpp"
#include "cuntzlab/random.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

namespace cuntzlab {

namespace {

struct Check {
    bool ok = true;
    std::ostringstream detail;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail << "first failure: " << what << "; ";
        }
    }
};

std::vector<Exact> basis_tensor(int n, const Word& J, const Exact& c = Exact(1)) {
    const auto words = uniform_code(n, J.size());
    std::vector<Exact> z(words.size(), Exact(0));
    for (std::size_t i = 0; i < words.size(); ++i)
        if (words[i] == J)
            z[i] = c;
    return z;
}

template <class F>
bool same_kappa(const KappaResult<F>& a, const KappaResult<F>& b) {
    return a.resolved == b.resolved && a.infinite == b.infinite && a.value == b.value && a.lower == b.lower &&
           a.upper == b.upper;
}

// 1. cdim = 1 for random Cuntz states.
void criterion1(Check& c, Rng& rng) {
    int stabilized = 0;
    for (int t = 0; t < 20; ++t) {
        const int n = 2 + t % 2;
        const auto z = random_unit_vector<Exact>(rng, static_cast<std::size_t>(n));
        const auto r = cdim(make_cuntz(z));
        c.require(r.stabilized() && r.value == 1, "cdim of Cuntz state " + r.str());
        stabilized += r.stabilized() && r.value == 1;
    }
    c.detail << stabilized << "/20 exact Cuntz states have cdim=1 stabilized";
}

// 2. ω(s_2*(·)s_2) over Cuntz (1,0): cdim 2, κ unresolved in [1,2] unless equivalence is supplied.
void criterion2(Check& c) {
    const auto base = make_cuntz<Exact>({Exact(1), Exact(0)});
    const std::vector<SandwichTerm<Exact>> terms{{Exact(1), CuntzElement<Exact>::generator(2, 2)}};
    const auto w = transform_sandwich(base, terms, false);
    const auto k = kappa(w);
    c.require(k.cdim.stabilized() && k.cdim.value == 2, "cdim " + k.cdim.str());
    c.require(!k.resolved && k.lower == 1 && k.upper == std::optional<std::size_t>(2), "kappa " + k.str());
    const auto supplied = kappa(transform_sandwich(base, terms, true));
    c.require(supplied.resolved && supplied.value == 1 &&
                  supplied.certificate.kind == CertificateKind::EquivalentToCuntz,
              "fixture kappa " + supplied.str());
    c.detail << k.cdim.str() << "; tool: " << k.str() << "; fixture with supplied equivalence: " << supplied.str();
}

// 3. ω(s_1s_2)=1 and ω'(s_2s_1)=1.
void criterion3(Check& c) {
    const auto w1 = make_sub_cuntz<Exact>(2, 2, basis_tensor(2, {1, 2}));
    const auto w2 = make_sub_cuntz<Exact>(2, 2, basis_tensor(2, {2, 1}));
    for (const auto* w : {&w1, &w2}) {
        const auto k = kappa(*w);
        c.require(k.certificate.kind == CertificateKind::Minimal && k.resolved && k.value == 2, "kappa " + k.str());
        c.require(k.cdim.stabilized() && k.cdim.value == 2, "cdim " + k.cdim.str());
    }
    const auto d = equivalent(w1, w2);
    c.require(d.verdict == Verdict::Yes, "equivalence " + d.str("Equivalent", "Inequivalent"));
    const Exact m = eval_moment(w2, Word{1, 2}, Word{});
    c.require(m == Exact(0), "ω'(s_1s_2) = " + format_scalar(m));
    c.detail << "both Minimal with cdim=2; " << d.str("Equivalent", "Inequivalent") << "; ω'(s_1s_2)="
             << format_scalar(m);
}

// 4. ω(s_1s_2)=1 against ω'(s_1s_1)=ω'(s_1s_2)=1/√2.
void criterion4(Check& c) {
    const double r = 1.0 / std::sqrt(2.0);
    const auto w1 = make_sub_cuntz<Float>(2, 2, {0.0, 1.0, 0.0, 0.0});
    const auto w2 = make_sub_cuntz<Float>(2, 2, {r, r, 0.0, 0.0});
    ClassifyConfig cfg;
    cfg.tol.rank = 1e-9;
    for (const auto* w : {&w1, &w2}) {
        const auto k = kappa(*w, cfg);
        c.require(k.resolved && !k.infinite && k.value == 2, "kappa " + k.str());
        c.require(k.cdim.stabilized() && k.cdim.value == 2, "cdim " + k.cdim.str());
    }
    const auto d = equivalent(w1, w2, cfg);
    c.require(d.verdict == Verdict::No, "equivalence " + d.str("Equivalent", "Inequivalent"));
    c.detail << "κ=2 and cdim=2 for both; " << d.str("Equivalent", "Inequivalent");
}

// 5. ρ_c(s_2^{d-1}s_1) = c.
void criterion5(Check& c) {
    std::vector<Exact> phases;
    for (int t = 0; t < 8; ++t) {
        const Rational s(t, 3);
        const Rational den = 1 + s * s;
        phases.push_back(Exact(Rational((1 - s * s) / den), Rational(2 * s / den)));
    }
    int pairs = 0;
    for (int d = 2; d <= 5; ++d) {
        Word J = Word{2}.power(static_cast<std::size_t>(d - 1)).pushed(1);
        std::vector<MomentFunctional<Exact>> states;
        for (const auto& ph : phases) {
            states.push_back(make_sub_cuntz<Exact>(2, static_cast<std::size_t>(d), basis_tensor(2, J, conjugate(ph))));
            const auto r = cdim(states.back());
            c.require(r.stabilized() && r.value == static_cast<std::size_t>(d),
                      "cdim ρ_c for d=" + std::to_string(d) + ": " + r.str());
            c.require(states.back()(J, Word{}) == ph, "ρ_c(s_J) != c");
        }
        for (std::size_t i = 0; i < states.size(); ++i)
            for (std::size_t k = i + 1; k < states.size(); ++k) {
                const auto dec = equivalent(states[i], states[k]);
                c.require(dec.verdict == Verdict::No, "ρ_c pair not Inequivalent at d=" + std::to_string(d));
                ++pairs;
            }
    }
    c.detail << "cdim ρ_c = d for d=2..5 over 8 phases; " << pairs << " pairs checked for inequivalence";
}

// 6. Geometric progression n=2, k=3.
void criterion6(Check& c, Rng& rng) {
    int checked = 0;
    while (checked < 10) {
        const auto z = random_unit_vector<Exact>(rng, 4);
        if (abs2(z.back()) == Rational(1))
            continue;
        const auto w = make_geometric_progression<Exact>(2, 3, z);
        const auto r = cdim(w);
        c.require(r.stabilized() && r.value <= 3, "cdim " + r.str());
        c.require(w.flags().minimal_certificate &&
                      verify_minimality_certificate(w, *w.flags().minimal_certificate),
                  "geometric progression certificate does not verify");
        ++checked;
    }
    int hats = 0;
    while (hats < 5) {
        const auto y = random_unit_vector<Exact>(rng, 2);
        if (abs2(y[1]) == Rational(1))
            continue;
        const std::vector<Exact> zh{y[0], y[1] * y[0], y[1] * y[1] * y[0], y[1] * y[1] * y[1]};
        const auto r = cdim(make_geometric_progression<Exact>(2, 3, zh));
        c.require(r.stabilized() && r.value == 1, "cdim of hat(y) state " + r.str());
        ++hats;
    }
    c.detail << checked << " random states with cdim<=3 and verified certificates; " << hats
             << " hat(y) states with cdim=1";
}

// 7. Properly infinite: grid and induced products.
void criterion7(Check& c, Rng& rng) {
    ClassifyConfig cfg;
    const auto grid = grid_vector_state<Exact>(2);
    const auto table = verify_properly_infinite<Exact>(
        grid, [](std::size_t) { return CuntzElement<Exact>::generator(2, 1); }, 12, true);
    c.require(table.holds(), "grid δ-table with a_i = s_1");
    const auto kg = kappa(grid, cfg);
    c.require(kg.infinite && kg.resolved, "grid kappa " + kg.str());
    std::uniform_int_distribution<int> pre_len(0, 2), rep_len(1, 3);
    for (int t = 0; t < 5; ++t) {
        std::vector<std::vector<Exact>> pre(static_cast<std::size_t>(pre_len(rng))), rep(static_cast<std::size_t>(rep_len(rng)));
        for (auto& v : pre)
            v = random_unit_vector<Exact>(rng, 2);
        for (auto& v : rep)
            v = random_unit_vector<Exact>(rng, 2);
        const auto w = make_induced_product(pre, rep);
        const auto chk = verify_properly_infinite(w, w.flags().properly_infinite_sequence, 12, true);
        c.require(chk.holds(), "induced product δ-table");
        const auto k = kappa(w, cfg);
        c.require(k.infinite && k.resolved, "induced product kappa " + k.str());
    }
    c.detail << "grid and 5 induced products: δ-table identity at cutoff 12, κ=∞ proved";
}

// 8. The orthogonal-tail state.
void criterion8(Check& c) {
    const auto w = make_orthogonal_tail<Exact>(2);
    ClassifyConfig cfg;
    cfg.max_level = 6;
    const auto k = kappa(w, cfg);
    c.require(k.resolved && k.value == 1 && k.certificate.kind == CertificateKind::EquivalentToCuntz,
              "kappa " + k.str());
    std::vector<Word> witness{Word{}};
    std::ostringstream ranks;
    for (std::size_t L = 1; L <= 6; ++L) {
        witness.push_back(Word{2}.power(L - 1).pushed(1));
        const auto g = gram_matrix(w, witness);
        const auto r = rank(g, 0.0);
        ranks << (L > 1 ? "," : "") << r;
        c.require(r == L + 1, "witness Gram rank at L=" + std::to_string(L) + " is " + std::to_string(r));
    }
    const auto& lv = k.cdim.levels;
    bool increasing = !k.cdim.stabilized();
    for (std::size_t i = 1; i < lv.size(); ++i)
        increasing = increasing && lv[i] > lv[i - 1];
    c.require(increasing, "full Gram ranks not strictly increasing");
    c.detail << k.str() << "; witness Gram ranks L=1..6: " << ranks.str() << "; full Gram ranks " << k.cdim.str();
}

// 9. Shift dictionary over n=2.
void criterion9(Check& c) {
    std::set<std::pair<Word, Word>> seen;
    int count = 0;
    for (const Word& pre : words_up_to(2, 2))
        for (std::size_t len = 1; len <= 4; ++len)
            for (const Word& per : words_of_length(2, len)) {
                if (!is_primitive(per))
                    continue;
                EventuallyPeriodicWord x(2, pre, per);
                if (!seen.insert({x.preperiod(), x.period()}).second)
                    continue;
                ++count;
                const auto w = vector_state<Exact>(x);
                const auto k = kappa(w);
                const std::size_t cc = x.preperiod().size(), d = x.period().size();
                c.require(k.cdim.stabilized() && k.cdim.value == cc + d, "cdim of " + x.str() + ": " + k.cdim.str());
                c.require(k.resolved && k.value == d, "kappa of " + x.str() + ": " + k.str());
                const bool family = w.flags().minimal_certificate &&
                                    verify_minimality_certificate(w, *w.flags().minimal_certificate);
                const bool searched = search_minimality_certificate(w, 4).has_value();
                c.require((family || searched) == x.purely_periodic(), "minimality certificate for " + x.str());
            }
    c.detail << count << " canonical words: cdim = c+d, κ = d, certificate iff purely periodic";
}

// 10. Property suites.
void criterion10(Check& c, Rng& rng) {
    std::vector<std::pair<std::string, MomentFunctional<Exact>>> catalog{
        {"cuntz", make_cuntz(random_unit_vector<Exact>(rng, 2))},
        {"sub_cuntz", make_sub_cuntz<Exact>(2, 2, random_unit_vector<Exact>(rng, 4))},
        {"geometric_progression", make_geometric_progression<Exact>(2, 2, random_unit_vector<Exact>(rng, 3))},
        {"induced_product", make_induced_product<Exact>({random_unit_vector<Exact>(rng, 2)},
                                                        {random_unit_vector<Exact>(rng, 2),
                                                         random_unit_vector<Exact>(rng, 2)})},
        {"shift_periodic", vector_state<Exact>(EventuallyPeriodicWord(2, {}, {1, 1, 2}))},
        {"shift_eventual", vector_state<Exact>(EventuallyPeriodicWord(2, {2}, {1}))},
        {"grid", grid_vector_state<Exact>(2)},
    };
    int invariant_checks = 0;
    for (const auto& [name, w] : catalog) {
        const auto cons = consistency_check(w, 3);
        c.require(cons.hermitian && cons.cuntz_relation && cons.normalized, "consistency of " + name);
        c.require(positivity_check(w, 2).psd, "PSD Gram of " + name);
        ++invariant_checks;
    }
    ClassifyConfig cfg;
    cfg.max_level = 4;
    cfg.cutoff = 6;
    int gauge_checks = 0;
    for (const auto& [name, w] : catalog) {
        const auto k0 = kappa(w, cfg);
        for (int t = 0; t < 10; ++t) {
            const auto g = random_unitary<Exact>(rng, 2);
            const auto wg = transform_gauge(w, g);
            const auto kg = kappa(wg, cfg);
            c.require(kg.cdim.levels == k0.cdim.levels, "gauge changes level ranks of " + name);
            c.require(same_kappa(k0, kg), "gauge changes κ of " + name + ": " + k0.str() + " vs " + kg.str());
            ++gauge_checks;
        }
    }
    int oracle_checks = 0;
    for (std::size_t m = 1; m <= 3; ++m)
        for (const Word& J0 : words_of_length(2, m)) {
            if (!is_primitive(J0))
                continue;
            const auto sub = make_sub_cuntz<Exact>(2, m, basis_tensor(2, J0));
            const auto shift = vector_state<Exact>(EventuallyPeriodicWord(2, {}, J0));
            const auto words = words_up_to(2, 2 * m);
            for (const auto& J : words)
                for (const auto& K : words)
                    c.require(sub(J, K) == shift(J, K), "sub-Cuntz vs shift moment at " + J.str() + "," + K.str());
            ++oracle_checks;
        }
    std::ostringstream dims;
    for (std::size_t p = 2; p <= 3; ++p)
        for (const auto& x : {std::vector<Exact>{Exact(1), Exact(0)}, random_unit_vector<Exact>(rng, 2)}) {
            std::vector<Exact> z = x;
            for (std::size_t i = 1; i < p; ++i)
                z = tensor_product(z, x);
            const auto w = make_sub_cuntz<Exact>(2, p, z);
            const auto dim = w.as<PrefixCodeModel<Exact>>()->state().solution().solution_dim;
            c.require(dim == p, "solution_dim for p=" + std::to_string(p) + " is " + std::to_string(dim));
            dims << " p=" << p << "→" << dim;
        }
    c.detail << invariant_checks << " invariant checks, " << gauge_checks << " gauge checks, " << oracle_checks
             << " oracle words, solution_dim" << dims.str();
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed, int only) {
    Rng rng(seed);
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"Cuntz baseline", [&](Check& c) { criterion1(c, rng); }},
        {"pure but not minimal", [](Check& c) { criterion2(c); }},
        {"minimal model non-uniqueness", [](Check& c) { criterion3(c); }},
        {"kappa=2 pair", [](Check& c) { criterion4(c); }},
        {"continuum family", [](Check& c) { criterion5(c); }},
        {"geometric progression", [&](Check& c) { criterion6(c, rng); }},
        {"properly infinite", [&](Check& c) { criterion7(c, rng); }},
        {"orthogonal tail state", [](Check& c) { criterion8(c); }},
        {"shift dictionary", [](Check& c) { criterion9(c); }},
        {"property suites", [&](Check& c) { criterion10(c, rng); }},
    };
    std::vector<CriterionResult> out;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (only && only != id)
            continue;
        CriterionResult r;
        r.id = id;
        r.title = criteria[i].first;
        Check c;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r.pass = c.ok;
        r.detail = c.detail.str();
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_acceptance(const std::vector<CriterionResult>& results) {
    std::ostringstream os;
    for (const auto& r : results) {
        char secs[32];
        std::snprintf(secs, sizeof secs, "%.2fs", r.seconds);
        os << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.title << ", " << secs
           << "): " << r.detail << "\n";
    }
    return os.str();
}

}  // namespace cuntzlab

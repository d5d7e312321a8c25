#include "cuntzlab/report.hpp"

#include <sstream>

namespace cuntzlab {

std::string verdict_word(Verdict v, const char* yes, const char* no) {
    return v == Verdict::Yes ? yes : v == Verdict::No ? no : "Unknown";
}

template <class F>
StateReport<F> analyze_state(const MomentFunctional<F>& w, const std::string& label, const ClassifyConfig& cfg) {
    StateReport<F> r;
    r.label = label;
    r.description = w.describe();
    r.family = family_name(w.family());
    r.mode = FieldTraits<F>::name;
    r.kappa = kappa(w, cfg);
    r.cdim = r.kappa.cdim;
    r.pure = pure(w, cfg);
    r.bucket = spectrum_bucket(r.kappa);
    r.warnings = w.model().warnings();
    return r;
}

template <class F>
Json report_json(const StateReport<F>& r) {
    Json j;
    j["state"] = r.label;
    j["description"] = r.description;
    j["family"] = r.family;
    j["mode"] = r.mode;
    j["cdim"] = cdim_json(r.cdim);
    j["kappa"] = kappa_json(r.kappa);
    j["pure"] = r.pure.verdict == Verdict::Unknown ? Json(nullptr) : Json(r.pure.verdict == Verdict::Yes);
    j["pure_reason"] = r.pure.reason;
    const auto& k = r.kappa;
    if (k.resolved && !k.infinite)
        j["bucket"] = k.value;
    else
        j["bucket"] = r.bucket;
    j["warnings"] = r.warnings;
    return j;
}

template <class F>
std::string report_markdown(const StateReport<F>& r) {
    std::ostringstream os;
    os << "## " << r.label << "\n\n";
    os << "- state: " << r.description << " (" << r.family << ", " << r.mode << " mode)\n";
    os << "- " << r.cdim.str() << "\n";
    os << "- " << r.kappa.str();
    if (r.kappa.certificate.u)
        os << ", u = " << r.kappa.certificate.u->str();
    if (r.kappa.certificate.kind == CertificateKind::ShiftPeriod)
        os << ", d = " << r.kappa.certificate.period;
    if (!r.kappa.certificate.z.empty()) {
        os << ", z = (";
        for (std::size_t i = 0; i < r.kappa.certificate.z.size(); ++i)
            os << (i ? ", " : "") << format_scalar(r.kappa.certificate.z[i]);
        os << ")";
    }
    os << "\n";
    if (!r.kappa.certificate.note.empty())
        os << "  - note: " << r.kappa.certificate.note << "\n";
    for (const auto& c : r.kappa.citations)
        os << "  - by: " << c << "\n";
    os << "- pure: " << r.pure.str("yes", "no") << "\n";
    os << "- bucket: " << r.bucket << "\n";
    for (const auto& w : r.warnings)
        os << "- warning: " << w << "\n";
    return os.str();
}

template <class F>
std::string batch_report(const std::vector<MomentFunctional<F>>& states, const std::vector<std::string>& labels,
                         const ClassifyConfig& cfg, OutputFormat format) {
    std::vector<StateReport<F>> reports;
    for (std::size_t i = 0; i < states.size(); ++i)
        reports.push_back(analyze_state(states[i], labels[i], cfg));
    std::vector<std::vector<Decision>> eq(states.size(), std::vector<Decision>(states.size()));
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t k = i + 1; k < states.size(); ++k)
            eq[i][k] = eq[k][i] = equivalent(states[i], states[k], cfg);

    if (format == OutputFormat::Json) {
        Json j;
        Json arr = Json::array();
        for (const auto& r : reports)
            arr.push_back(report_json(r));
        j["states"] = arr;
        if (states.size() > 1) {
            Json m = Json::array();
            for (std::size_t i = 0; i < states.size(); ++i) {
                Json row = Json::array();
                for (std::size_t k = 0; k < states.size(); ++k)
                    row.push_back(i == k ? "Equivalent" : verdict_word(eq[i][k].verdict, "Equivalent", "Inequivalent"));
                m.push_back(row);
            }
            j["equivalence"] = m;
        }
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "# cuntzlab report\n\n";
    for (const auto& r : reports)
        os << report_markdown(r) << "\n";
    if (states.size() > 1) {
        os << "## equivalence\n\n|   |";
        for (std::size_t k = 0; k < states.size(); ++k)
            os << ' ' << k + 1 << " |";
        os << "\n|---|";
        for (std::size_t k = 0; k < states.size(); ++k)
            os << "---|";
        os << "\n";
        for (std::size_t i = 0; i < states.size(); ++i) {
            os << "| " << i + 1 << " |";
            for (std::size_t k = 0; k < states.size(); ++k)
                os << ' ' << (i == k ? "=" : verdict_word(eq[i][k].verdict, "∼", "≁").c_str()) << " |";
            os << "\n";
        }
        os << "\n";
        for (std::size_t i = 0; i < states.size(); ++i)
            for (std::size_t k = i + 1; k < states.size(); ++k)
                os << "- " << i + 1 << " vs " << k + 1 << ": " << eq[i][k].str("Equivalent", "Inequivalent") << "\n";
    }
    return os.str();
}

#define CUNTZLAB_INSTANTIATE(F)                                                                             \
    template StateReport<F> analyze_state(const MomentFunctional<F>&, const std::string&, const ClassifyConfig&); \
    template Json report_json(const StateReport<F>&);                                                     \
    template std::string report_markdown(const StateReport<F>&);                                          \
    template std::string batch_report(const std::vector<MomentFunctional<F>>&, const std::vector<std::string>&, \
                                      const ClassifyConfig&, OutputFormat);

CUNTZLAB_INSTANTIATE(Exact)
CUNTZLAB_INSTANTIATE(Float)

}  // namespace cuntzlab

// cuntzlab command-line front end.

#include "cuntzlab/acceptance.hpp"
#include "cuntzlab/classify.hpp"
#include "cuntzlab/error.hpp"
#include "cuntzlab/json_io.hpp"
#include "cuntzlab/random.hpp"
#include "cuntzlab/report.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <sstream>

using namespace cuntzlab;

namespace {

struct Options {
    std::string mode = "auto";
    double tol = Tolerance{}.eq;
    double rank_tol = Tolerance{}.rank;
    std::size_t max_level = 8;
    std::size_t cutoff = 12;
    std::string format = "md";
    bool strict = false;
    bool search = false;
    std::size_t length = 2;
    int only = 0;
    std::vector<std::string> files;
};

constexpr int kExitUnknown = 3;
constexpr int kExitError = 2;

ClassifyConfig config_of(const Options& o) {
    ClassifyConfig cfg;
    cfg.max_level = o.max_level;
    cfg.cutoff = o.cutoff;
    cfg.tol.eq = o.tol;
    cfg.tol.rank = o.rank_tol;
    cfg.search_certificates = o.search;
    return cfg;
}

bool json_out(const Options& o) { return o.format == "json"; }

int unknown_exit(const Options& o, Verdict v) { return o.strict && v == Verdict::Unknown ? kExitUnknown : 0; }

template <class F>
std::vector<MomentFunctional<F>> load_states(const std::vector<SpecDocument>& docs, const Options& o) {
    std::vector<MomentFunctional<F>> out;
    for (const auto& d : docs) {
        if (d.representation)
            throw Error(ErrorCode::SchemaError, d.source + ": expected a state spec, found a representation");
        out.push_back(parse_state<F>(d.doc, config_of(o).tol));
    }
    return out;
}

template <class F>
int run_state_command(const std::string& cmd, const std::vector<SpecDocument>& docs, const Options& o) {
    const auto cfg = config_of(o);
    const auto states = load_states<F>(docs, o);
    auto& out = std::cout;

    if (cmd == "cdim") {
        const auto r = cdim(states[0], cfg);
        if (json_out(o))
            out << cdim_json(r).dump(2) << "\n";
        else
            out << r.str() << "\n";
        return unknown_exit(o, r.stabilized() ? Verdict::Yes : Verdict::Unknown);
    }
    if (cmd == "kappa") {
        const auto k = kappa(states[0], cfg);
        if (json_out(o)) {
            out << kappa_json(k).dump(2) << "\n";
        } else {
            out << k.str() << "; " << k.cdim.str() << "\n";
            for (const auto& c : k.citations)
                out << "  by: " << c << "\n";
        }
        return unknown_exit(o, k.resolved ? Verdict::Yes : Verdict::Unknown);
    }
    if (cmd == "equiv") {
        const auto d = equivalent(states[0], states[1], cfg);
        if (json_out(o)) {
            Json j;
            j["verdict"] = verdict_word(d.verdict, "Equivalent", "Inequivalent");
            j["reason"] = d.reason;
            out << j.dump(2) << "\n";
        } else {
            out << d.str("Equivalent", "Inequivalent") << "\n";
        }
        return unknown_exit(o, d.verdict);
    }
    if (cmd == "pure") {
        const auto d = pure(states[0], cfg);
        if (json_out(o)) {
            Json j;
            j["pure"] = d.verdict == Verdict::Unknown ? Json(nullptr) : Json(d.verdict == Verdict::Yes);
            j["reason"] = d.reason;
            out << j.dump(2) << "\n";
        } else {
            out << d.str("Pure", "Not pure") << "\n";
        }
        return unknown_exit(o, d.verdict);
    }
    if (cmd == "moments") {
        const auto words = words_up_to(states[0].n(), o.length);
        if (json_out(o)) {
            Json arr = Json::array();
            for (const auto& J : words)
                for (const auto& K : words)
                    arr.push_back({{"J", to_json(J)}, {"K", to_json(K)}, {"value", scalar_json(states[0](J, K))}});
            out << arr.dump(2) << "\n";
        } else {
            for (const auto& J : words)
                for (const auto& K : words) {
                    const F v = states[0](J, K);
                    if (!is_zero(v, o.tol))
                        out << "ω(s_" << J.str() << " s_" << K.str() << "*) = " << format_scalar(v) << "\n";
                }
        }
        return 0;
    }
    if (cmd == "fcs") {
        const auto ex = extract_fcs(states[0], cfg.max_level, cfg.tol, cfg.policy);
        if (!ex.presentation) {
            std::ostringstream levels;
            for (auto r : ex.level_ranks)
                levels << ' ' << r;
            if (json_out(o)) {
                Json j;
                j["status"] = "LowerBoundOnly";
                j["levels"] = ex.level_ranks;
                out << j.dump(2) << "\n";
            } else {
                out << "LowerBoundOnly: cdim >= " << ex.lower_bound() << " (levels" << levels.str() << ")\n";
            }
            return unknown_exit(o, Verdict::Unknown);
        }
        const auto& p = *ex.presentation;
        if (json_out(o)) {
            out << fcs_json(p).dump(2) << "\n";
        } else {
            out << "d = " << p.d << "\n";
            out << "basis:";
            for (const auto& w : p.basis_words)
                out << " π(s_" << w.str() << ")*Ω";
            out << "\n" << fcs_json(p).dump() << "\n";
        }
        return 0;
    }
    if (cmd == "report") {
        std::vector<std::string> labels;
        for (const auto& d : docs)
            labels.push_back(d.source);
        out << batch_report(states, labels, cfg, json_out(o) ? OutputFormat::Json : OutputFormat::Markdown);
        return 0;
    }
    throw std::logic_error("unhandled command " + cmd);
}

template <class F>
int run_rep_command(const SpecDocument& doc, const Options& o) {
    const auto cfg = config_of(o);
    const auto rep = parse_representation(doc.doc);
    const auto endo = endo_invariants<F>(rep, cfg);
    if (json_out(o)) {
        Json j;
        j["kappa"] = kappa_json(endo.kappa);
        j["powers_index"] = endo.powers_index;
        j["note"] = endo.note;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << endo.kappa.str() << "; " << endo.kappa.cdim.str() << "\n";
        std::cout << "powers index " << endo.powers_index << "\n" << endo.note << "\n";
    }
    return unknown_exit(o, endo.kappa.resolved ? Verdict::Yes : Verdict::Unknown);
}

int run(const std::string& cmd, const Options& o) {
    if (cmd == "selftest") {
        const auto results = run_acceptance(env_seed(), o.only);
        std::cout << format_acceptance(results);
        for (const auto& r : results)
            if (!r.pass)
                return 1;
        return 0;
    }
    static const std::map<std::string, std::size_t> arity{{"cdim", 1}, {"kappa", 1}, {"equiv", 2}, {"pure", 1},
                                                           {"moments", 1}, {"fcs", 1}, {"rep", 1}};
    if (auto it = arity.find(cmd); it != arity.end() && o.files.size() != it->second)
        throw Error(ErrorCode::SchemaError,
                    cmd + " expects " + std::to_string(it->second) + " spec file(s), got " + std::to_string(o.files.size()));
    if (cmd == "report" && o.files.empty())
        throw Error(ErrorCode::SchemaError, "report expects at least one spec file");

    std::vector<SpecDocument> docs;
    for (const auto& f : o.files)
        docs.push_back(load_spec(f));
    Mode requested = o.mode == "exact" ? Mode::Exact : o.mode == "float" ? Mode::Float : Mode::Auto;
    const Mode mode = resolve_mode(requested, docs);

    if (cmd == "rep")
        return mode == Mode::Float ? run_rep_command<Float>(docs[0], o) : run_rep_command<Exact>(docs[0], o);
    return mode == Mode::Float ? run_state_command<Float>(cmd, docs, o) : run_state_command<Exact>(cmd, docs, o);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cuntzlab: invariants of states on Cuntz algebras"};
    app.require_subcommand(1);
    Options o;

    auto common = [&o](CLI::App* sub, bool files) {
        sub->add_option("--mode", o.mode, "Arithmetic mode")->check(CLI::IsMember({"auto", "exact", "float"}));
        sub->add_option("--tol", o.tol, "Equality tolerance (float mode)")->check(CLI::PositiveNumber);
        sub->add_option("--rank-tol", o.rank_tol, "Rank tolerance (float mode)")->check(CLI::PositiveNumber);
        sub->add_option("--max-level", o.max_level, "Largest word length for Gram ranks");
        sub->add_option("--cutoff", o.cutoff, "Properly-infinite δ-table cutoff");
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"md", "json"}));
        sub->add_flag("--strict", o.strict, "Exit 3 when the answer is Unknown or unresolved");
        sub->add_flag("--search-certificates", o.search, "Bounded search for minimality certificates");
        if (files)
            sub->add_option("files", o.files, "Spec files")->required()->check(CLI::ExistingFile);
    };

    const std::vector<std::pair<std::string, std::string>> commands{
        {"cdim", "Gram ranks by level and cdim status"},
        {"kappa", "κ with its certificate"},
        {"equiv", "Equivalence of two states"},
        {"pure", "Purity decision"},
        {"moments", "Table of ω(s_J s_K*)"},
        {"fcs", "Finitely correlated presentation"},
        {"rep", "κ and endomorphism data of a shift or grid representation"},
        {"report", "Report for one or more states with the pairwise equivalence matrix"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        common(sub, true);
        if (name == "moments")
            sub->add_option("--length", o.length, "Largest |J|, |K|");
    }
    auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
    selftest->add_option("--only", o.only, "Run a single criterion")->check(CLI::Range(1, 10));

    CLI11_PARSE(app, argc, argv);
    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        return run(cmd, o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}

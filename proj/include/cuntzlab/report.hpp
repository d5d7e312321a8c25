#pragma once

#include "cuntzlab/classify.hpp"
#include "cuntzlab/json_io.hpp"

#include <string>
#include <vector>

namespace cuntzlab {

enum class OutputFormat { Markdown, Json };

template <class F>
struct StateReport {
    std::string label;
    std::string description;
    std::string family;
    std::string mode;
    CdimResult cdim;
    KappaResult<F> kappa;
    Decision pure;
    std::string bucket;
    std::vector<std::string> warnings;
};

template <class F>
StateReport<F> analyze_state(const MomentFunctional<F>& w, const std::string& label, const ClassifyConfig& cfg = {});

template <class F>
Json report_json(const StateReport<F>& r);

template <class F>
std::string report_markdown(const StateReport<F>& r);

/// Reports for every state plus the pairwise equivalence matrix.
template <class F>
std::string batch_report(const std::vector<MomentFunctional<F>>& states, const std::vector<std::string>& labels,
                         const ClassifyConfig& cfg, OutputFormat format);

std::string verdict_word(Verdict v, const char* yes, const char* no);

}  // namespace cuntzlab

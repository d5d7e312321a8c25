#pragma once

#include "cuntzlab/classify.hpp"
#include "cuntzlab/fcs.hpp"
#include "cuntzlab/moments.hpp"
#include "cuntzlab/shiftrep.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace cuntzlab {

using Json = nlohmann::ordered_json;

enum class Mode { Auto, Exact, Float };

/// A parsed spec file before it is bound to an arithmetic mode.
struct SpecDocument {
    Json doc;
    std::string source;
    bool representation = false;  // "kind" present instead of "family"
    bool has_float_literal = false;
};

/// Throws SchemaError with the byte offset on malformed JSON.
SpecDocument load_spec(const std::string& path);
SpecDocument spec_from_text(const std::string& text, const std::string& source = "<inline>");

/// Auto resolves to Exact unless some document uses a JSON float literal.
Mode resolve_mode(Mode requested, const std::vector<SpecDocument>& docs);

/// Scalars: a number, a rational string "p/q" or decimal string, a pair
/// [re, im], or {"re": .., "im": ..}.
template <class F>
F parse_scalar(const Json& j, const std::string& path);

Word parse_word(const Json& j, const std::string& path);
EventuallyPeriodicWord parse_periodic_word(const Json& j, int n, const std::string& path);

template <class F>
CuntzElement<F> parse_element(const Json& j, const std::string& path);

/// Builds the state and runs the positivity gate at level 2 (GateFailed with
/// the witness eigenvector). Family constructor errors come back as SchemaError.
template <class F>
MomentFunctional<F> parse_state(const Json& j, const Tolerance& tol = {}, bool gate = true);

/// Throws NotInCatalog for unknown kinds.
Representation parse_representation(const Json& j);

// --- serialization -----------------------------------------------------------

Json to_json(const Word& w);
Json to_json(const EventuallyPeriodicWord& x);
Json scalar_json(const Exact& x);
Json scalar_json(const Float& x);
/// A real number for CuntzElement terms: integer, "p/q" string, or 12-digit double.
Json real_json(const Rational& x);
Json real_json(double x);

template <class F>
Json element_json(const CuntzElement<F>& e);

template <class F>
Json fcs_json(const FcsPresentation<F>& p);

Json cdim_json(const CdimResult& c);

template <class F>
Json kappa_json(const KappaResult<F>& k);

}  // namespace cuntzlab

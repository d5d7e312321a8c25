#include "cuntzlab/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace cuntzlab {

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::SchemaError, (path.empty() ? std::string("$") : path) + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object())
        schema(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        schema(path, std::string("missing field \"") + key + "\"");
    return *it;
}

int int_field(const Json& j, const char* key, const std::string& path) {
    const Json& v = field(j, key, path);
    if (!v.is_number_integer())
        schema(path + "." + key, "expected an integer");
    return v.get<int>();
}

bool any_float(const Json& j) {
    if (j.is_number_float())
        return true;
    if (j.is_structured())
        for (const auto& x : j)
            if (any_float(x))
                return true;
    return false;
}

Rational real_from(const Json& j, const std::string& path) {
    if (j.is_number_integer())
        return Rational(j.get<long>());
    if (j.is_number_unsigned())
        return Rational(static_cast<long>(j.get<unsigned long>()));
    if (j.is_number_float())
        return rational_from_double(j.get<double>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const std::exception& e) {
            schema(path, "bad number \"" + j.get<std::string>() + "\"");
        }
    }
    schema(path, "expected a number");
}

double double_from(const Json& j, const std::string& path) {
    if (j.is_number())
        return j.get<double>();
    return real_from(j, path).get_d();
}

template <class F>
RealOf<F> parse_real(const Json& j, const std::string& path) {
    if constexpr (is_exact_v<F>)
        return real_from(j, path);
    else
        return double_from(j, path);
}

template <class F>
std::vector<F> parse_vector(const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty())
        schema(path, "expected a nonempty array of scalars");
    std::vector<F> v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(parse_scalar<F>(j[i], path + "[" + std::to_string(i) + "]"));
    return v;
}

template <class F>
std::vector<std::vector<F>> parse_vectors(const Json& j, const std::string& path, bool allow_empty) {
    if (!j.is_array() || (!allow_empty && j.empty()))
        schema(path, "expected an array of vectors");
    std::vector<std::vector<F>> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(parse_vector<F>(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

template <class F>
Matrix<F> parse_matrix(const Json& j, const std::string& path) {
    const auto rows = parse_vectors<F>(j, path, false);
    Matrix<F> m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols())
            schema(path, "ragged matrix");
        for (std::size_t c = 0; c < m.cols(); ++c)
            m(r, c) = rows[r][c];
    }
    return m;
}

std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--)
        r *= b;
    return r;
}

/// n from an explicit field, else from the size of z.
int alphabet_for(const Json& j, const std::string& path, std::size_t len, std::size_t order, bool geometric) {
    if (j.contains("n"))
        return int_field(j, "n", path);
    for (int n = 2; n <= 16; ++n) {
        const std::size_t expect = geometric ? static_cast<std::size_t>(n - 1) * order + 1 : ipow(n, order);
        if (expect == len)
            return n;
    }
    schema(path, "cannot infer n from z of length " + std::to_string(len));
}

/// Explicit n, else the largest letter (at least 2).
int alphabet_of_word(const Json& spec, const Json& word, const std::string& path) {
    if (spec.contains("n"))
        return int_field(spec, "n", path);
    int n = 2;
    for (const char* key : {"pre", "per"})
        if (word.contains(key))
            for (Letter a : parse_word(word[key], path + ".word." + key))
                n = std::max(n, a);
    return n;
}

template <class F>
MomentFunctional<F> build_state(const Json& j, const Tolerance& tol, const std::string& path);

template <class F>
MomentFunctional<F> build_state_checked(const Json& j, const Tolerance& tol, const std::string& path) {
    try {
        return build_state<F>(j, tol, path);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SchemaError)
            throw;
        schema(path, e.what());
    }
}

template <class F>
MomentFunctional<F> build_state(const Json& j, const Tolerance& tol, const std::string& path) {
    const Json& fam = field(j, "family", path);
    if (!fam.is_string())
        schema(path + ".family", "expected a string");
    const std::string family = fam.get<std::string>();

    if (family == "cuntz") {
        auto z = parse_vector<F>(field(j, "z", path), path + ".z");
        if (j.contains("n") && int_field(j, "n", path) != static_cast<int>(z.size()))
            schema(path + ".z", "length differs from n");
        return make_cuntz(z, tol);
    }
    if (family == "sub_cuntz") {
        const auto m = static_cast<std::size_t>(int_field(j, "m", path));
        auto z = parse_vector<F>(field(j, "z", path), path + ".z");
        return make_sub_cuntz(alphabet_for(j, path, z.size(), m, false), m, z, tol);
    }
    if (family == "geometric_progression") {
        const auto k = static_cast<std::size_t>(int_field(j, "k", path));
        auto z = parse_vector<F>(field(j, "z", path), path + ".z");
        return make_geometric_progression(alphabet_for(j, path, z.size(), k, true), k, z, tol);
    }
    if (family == "prefix_code") {
        const Json& code = field(j, "code", path);
        if (!code.is_array())
            schema(path + ".code", "expected an array of words");
        std::vector<Word> words;
        for (std::size_t i = 0; i < code.size(); ++i)
            words.push_back(parse_word(code[i], path + ".code[" + std::to_string(i) + "]"));
        auto z = parse_vector<F>(field(j, "z", path), path + ".z");
        return make_prefix_code_state(int_field(j, "n", path), words, z, tol);
    }
    if (family == "induced_product") {
        auto pre = j.contains("pre") ? parse_vectors<F>(j["pre"], path + ".pre", true)
                                     : std::vector<std::vector<F>>{};
        auto rep = parse_vectors<F>(field(j, "rep", path), path + ".rep", false);
        return make_induced_product(pre, rep, tol);
    }
    if (family == "shift") {
        const Json& w = field(j, "word", path);
        return vector_state<F>(parse_periodic_word(w, alphabet_of_word(j, w, path), path + ".word"));
    }
    if (family == "lazy_shift") {
        const Json& p = field(j, "preset", path);
        const std::size_t horizon = j.contains("horizon") ? static_cast<std::size_t>(int_field(j, "horizon", path)) : 256;
        try {
            return vector_state<F>(LazyWord::preset(p.get<std::string>(), horizon));
        } catch (const Error& e) {
            schema(path + ".preset", e.what());
        }
    }
    if (family == "grid") {
        const int n = int_field(j, "n", path);
        GridKey key;
        if (j.contains("k"))
            key.k = int_field(j, "k", path);
        if (j.contains("m"))
            key.m = int_field(j, "m", path);
        return grid_vector_state<F>(n, key);
    }
    if (family == "sandwich") {
        auto base = build_state<F>(field(j, "base", path), tol, path + ".base");
        const Json& terms = field(j, "terms", path);
        if (!terms.is_array() || terms.empty())
            schema(path + ".terms", "expected a nonempty array");
        std::vector<SandwichTerm<F>> ts;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const std::string tp = path + ".terms[" + std::to_string(i) + "]";
            const F c = terms[i].contains("coeff") ? parse_scalar<F>(terms[i]["coeff"], tp + ".coeff") : F(1);
            ts.push_back({c, parse_element<F>(field(terms[i], "element", tp), tp + ".element")});
        }
        const bool assume = j.value("assume_equivalent", false);
        return transform_sandwich(base, ts, assume, tol);
    }
    if (family == "orthogonal_tail") {
        const int n = j.contains("n") ? int_field(j, "n", path) : 2;
        const Letter b = j.contains("base_letter") ? int_field(j, "base_letter", path) : 1;
        const Letter s = j.contains("spacer") ? int_field(j, "spacer", path) : 2;
        std::optional<F> gamma;
        if (j.contains("gamma"))
            gamma = parse_scalar<F>(j["gamma"], path + ".gamma");
        return make_orthogonal_tail<F>(n, b, s, gamma, tol);
    }
    if (family == "gauge") {
        auto base = build_state<F>(field(j, "base", path), tol, path + ".base");
        return transform_gauge(base, parse_matrix<F>(field(j, "g", path), path + ".g"), tol);
    }
    if (family == "mixture") {
        const Json& ws = field(j, "weights", path);
        const Json& ps = field(j, "parts", path);
        if (!ws.is_array() || !ps.is_array() || ws.size() != ps.size() || ws.empty())
            schema(path, "weights and parts must be arrays of equal nonzero length");
        std::vector<RealOf<F>> weights;
        std::vector<MomentFunctional<F>> parts;
        for (std::size_t i = 0; i < ws.size(); ++i) {
            weights.push_back(parse_real<F>(ws[i], path + ".weights[" + std::to_string(i) + "]"));
            parts.push_back(build_state<F>(ps[i], tol, path + ".parts[" + std::to_string(i) + "]"));
        }
        return make_mixture(weights, parts, tol);
    }
    schema(path + ".family", "unknown family \"" + family + "\"");
}

}  // namespace

SpecDocument spec_from_text(const std::string& text, const std::string& source) {
    SpecDocument d;
    d.source = source;
    try {
        d.doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::SchemaError, source + ": byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!d.doc.is_object())
        throw Error(ErrorCode::SchemaError, source + ": top level must be an object");
    d.representation = d.doc.contains("kind") && !d.doc.contains("family");
    d.has_float_literal = any_float(d.doc);
    return d;
}

SpecDocument load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::SchemaError, path + ": cannot open file");
    std::ostringstream os;
    os << in.rdbuf();
    return spec_from_text(os.str(), path);
}

Mode resolve_mode(Mode requested, const std::vector<SpecDocument>& docs) {
    if (requested != Mode::Auto)
        return requested;
    for (const auto& d : docs)
        if (d.has_float_literal)
            return Mode::Float;
    return Mode::Exact;
}

template <class F>
F parse_scalar(const Json& j, const std::string& path) {
    if (j.is_array()) {
        if (j.size() != 2)
            schema(path, "complex pairs are [re, im]");
        return make_scalar<F>(parse_real<F>(j[0], path + "[0]"), parse_real<F>(j[1], path + "[1]"));
    }
    if (j.is_object()) {
        RealOf<F> re = j.contains("re") ? parse_real<F>(j["re"], path + ".re") : RealOf<F>(0);
        RealOf<F> im = j.contains("im") ? parse_real<F>(j["im"], path + ".im") : RealOf<F>(0);
        return make_scalar<F>(re, im);
    }
    return make_scalar<F>(parse_real<F>(j, path));
}

Word parse_word(const Json& j, const std::string& path) {
    if (!j.is_array())
        schema(path, "words are arrays of letters");
    std::vector<Letter> v;
    for (const auto& x : j) {
        if (!x.is_number_integer())
            schema(path, "letters are integers");
        v.push_back(x.get<Letter>());
    }
    return Word(std::move(v));
}

EventuallyPeriodicWord parse_periodic_word(const Json& j, int n, const std::string& path) {
    const Word pre = j.contains("pre") ? parse_word(j["pre"], path + ".pre") : Word{};
    const Word per = parse_word(field(j, "per", path), path + ".per");
    try {
        return EventuallyPeriodicWord(n, pre, per);
    } catch (const Error& e) {
        schema(path, e.what());
    }
}

template <class F>
CuntzElement<F> parse_element(const Json& j, const std::string& path) {
    const int n = int_field(j, "n", path);
    CuntzElement<F> e(n);
    const Json& terms = field(j, "terms", path);
    if (!terms.is_array())
        schema(path + ".terms", "expected an array");
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string tp = path + ".terms[" + std::to_string(i) + "]";
        const Json& t = terms[i];
        const Word J = t.contains("J") ? parse_word(t["J"], tp + ".J") : Word{};
        const Word K = t.contains("K") ? parse_word(t["K"], tp + ".K") : Word{};
        try {
            J.validate(n);
            K.validate(n);
        } catch (const Error& err) {
            schema(tp, err.what());
        }
        const RealOf<F> re = t.contains("re") ? parse_real<F>(t["re"], tp + ".re") : RealOf<F>(1);
        const RealOf<F> im = t.contains("im") ? parse_real<F>(t["im"], tp + ".im") : RealOf<F>(0);
        e.add_term(J, K, make_scalar<F>(re, im));
    }
    return e;
}

template <class F>
MomentFunctional<F> parse_state(const Json& j, const Tolerance& tol, bool gate) {
    auto w = build_state_checked<F>(j, tol, "$");
    if (gate) {
        const auto pos = positivity_check(w, 2, tol);
        if (!pos.psd) {
            std::ostringstream os;
            os << "Gram matrix over |J|,|K| <= 2 has eigenvalue " << format_double(pos.min_eigen) << "; witness";
            for (std::size_t i = 0; i < pos.witness.size(); ++i)
                if (std::abs(pos.witness[i]) > 1e-9)
                    os << ' ' << format_scalar(pos.witness[i]) << "·" << pos.words[i].str();
            throw Error(ErrorCode::GateFailed, os.str());
        }
    }
    return w;
}

Representation parse_representation(const Json& j) {
    const Json& kind = field(j, "kind", "$");
    const std::string k = kind.is_string() ? kind.get<std::string>() : "";
    if (k == "shift") {
        const Json& w = field(j, "word", "$");
        return ShiftRepresentation(parse_periodic_word(w, alphabet_of_word(j, w, "$"), "$.word"));
    }
    if (k == "grid")
        return GridRepresentation(int_field(j, "n", "$"));
    if (k == "lazy") {
        const std::size_t horizon = j.contains("horizon") ? static_cast<std::size_t>(int_field(j, "horizon", "$")) : 256;
        try {
            return ShiftRepresentation(LazyWord::preset(field(j, "preset", "$").get<std::string>(), horizon));
        } catch (const Error& e) {
            throw Error(ErrorCode::NotInCatalog, e.what());
        }
    }
    throw Error(ErrorCode::NotInCatalog, "representation kind \"" + k + "\" is not in the catalog");
}

// --- serialization -------------------------------------------------------------

Json to_json(const Word& w) {
    Json a = Json::array();
    for (Letter x : w)
        a.push_back(x);
    return a;
}

Json to_json(const EventuallyPeriodicWord& x) {
    return Json{{"pre", to_json(x.preperiod())}, {"per", to_json(x.period())}};
}

Json real_json(const Rational& x) {
    if (x.get_den() == 1 && x.get_num().fits_slong_p())
        return x.get_num().get_si();
    return format_rational(x);
}

Json real_json(double x) {
    if (x == 0.0)
        return 0.0;  // no negative zero in reports
    return std::stod(format_double(x));
}

Json scalar_json(const Exact& x) {
    return Json::array({real_json(x.re), real_json(x.im)});
}

Json scalar_json(const Float& x) {
    return Json::array({real_json(x.real()), real_json(x.imag())});
}

template <class F>
Json element_json(const CuntzElement<F>& e) {
    Json terms = Json::array();
    for (const auto& [key, c] : e.terms())
        terms.push_back(Json{{"J", to_json(key.first)},
                             {"K", to_json(key.second)},
                             {"re", real_json(real_part(c))},
                             {"im", real_json(imag_part(c))}});
    return Json{{"n", e.alphabet()}, {"terms", terms}};
}

template <class F>
Json fcs_json(const FcsPresentation<F>& p) {
    auto mat = [](const Matrix<F>& m) {
        Json rows = Json::array();
        for (std::size_t r = 0; r < m.rows(); ++r) {
            Json row = Json::array();
            for (std::size_t c = 0; c < m.cols(); ++c)
                row.push_back(scalar_json(m(r, c)));
            rows.push_back(row);
        }
        return rows;
    };
    Json A = Json::array();
    for (const auto& a : p.A)
        A.push_back(mat(a));
    Json omega = Json::array();
    for (const auto& x : p.omega)
        omega.push_back(scalar_json(x));
    Json basis = Json::array();
    for (const auto& w : p.basis_words)
        basis.push_back(to_json(w));
    return Json{{"d", p.d}, {"A", A}, {"omega", omega}, {"metric", mat(p.metric)}, {"basis_words", basis}};
}

Json cdim_json(const CdimResult& c) {
    return Json{{"value", c.value},
                {"status", c.stabilized() ? "stabilized" : "lower_bound"},
                {"levels", c.levels}};
}

namespace {

std::string snake(CertificateKind k) {
    switch (k) {
    case CertificateKind::Minimal: return "minimal";
    case CertificateKind::ProperlyInfinite: return "properly_infinite";
    case CertificateKind::ShiftPeriod: return "shift_period";
    case CertificateKind::EquivalentToCuntz: return "equivalent_to_cuntz";
    case CertificateKind::LowerBoundOnly: return "lower_bound_only";
    }
    return "lower_bound_only";
}

}  // namespace

template <class F>
Json kappa_json(const KappaResult<F>& k) {
    Json j;
    if (k.infinite)
        j["value"] = "inf";
    else if (k.resolved)
        j["value"] = k.value;
    else
        j["value"] = nullptr;
    j["status"] = k.infinite && k.evidence_only ? "evidence" : k.resolved ? "resolved" : "unresolved";
    if (!k.resolved && !k.infinite)
        j["interval"] = Json::array({k.lower, k.upper ? Json(*k.upper) : Json("inf")});
    const auto& c = k.certificate;
    j["certificate"] = snake(c.kind);
    switch (c.kind) {
    case CertificateKind::Minimal:
        if (c.u)
            j["u"] = element_json(*c.u);
        break;
    case CertificateKind::ProperlyInfinite: {
        j["cutoff"] = c.cutoff;
        j["proved"] = c.proved;
        Json a = Json::array();
        for (std::size_t i = 0; i < std::min<std::size_t>(c.a.size(), 3); ++i)
            a.push_back(element_json(c.a[i]));
        j["a_first"] = a;
        break;
    }
    case CertificateKind::ShiftPeriod: j["period"] = c.period; break;
    case CertificateKind::EquivalentToCuntz: {
        Json z = Json::array();
        for (const auto& x : c.z)
            z.push_back(scalar_json(x));
        j["z"] = z;
        break;
    }
    case CertificateKind::LowerBoundOnly: break;
    }
    if (!c.note.empty())
        j["note"] = c.note;
    j["citations"] = k.citations;
    return j;
}

#define CUNTZLAB_INSTANTIATE(F)                                                  \
    template F parse_scalar<F>(const Json&, const std::string&);                 \
    template CuntzElement<F> parse_element<F>(const Json&, const std::string&);  \
    template MomentFunctional<F> parse_state<F>(const Json&, const Tolerance&, bool); \
    template Json element_json(const CuntzElement<F>&);                          \
    template Json fcs_json(const FcsPresentation<F>&);                           \
    template Json kappa_json(const KappaResult<F>&);

CUNTZLAB_INSTANTIATE(Exact)
CUNTZLAB_INSTANTIATE(Float)

}  // namespace cuntzlab

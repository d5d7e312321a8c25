#include "cuntzlab/error.hpp"
#include "cuntzlab/json_io.hpp"

#include <doctest.h>

using namespace cuntzlab;

namespace {

ErrorCode code_of(const std::string& text, Mode m = Mode::Exact) {
    try {
        const auto doc = spec_from_text(text);
        if (resolve_mode(m, {doc}) == Mode::Float)
            parse_state<Float>(doc.doc);
        else
            parse_state<Exact>(doc.doc);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::EmptyWord;
}

}  // namespace

TEST_CASE("scalars") {
    CHECK(parse_scalar<Exact>(Json::parse("\"1/2\""), "x") == Exact(Rational(1, 2)));
    CHECK(parse_scalar<Exact>(Json::parse("[0, \"-3/4\"]"), "x") == Exact(Rational(0), Rational(-3, 4)));
    CHECK(parse_scalar<Exact>(Json::parse("{\"re\": 1, \"im\": 2}"), "x") == Exact(Rational(1), Rational(2)));
    CHECK(parse_scalar<Exact>(Json::parse("0.25"), "x") == Exact(Rational(1, 4)));
    CHECK(parse_scalar<Float>(Json::parse("[0.5, 0.5]"), "x") == Float(0.5, 0.5));
}

TEST_CASE("mode resolution") {
    CHECK(resolve_mode(Mode::Auto, {spec_from_text(R"({"family":"cuntz","z":[1,0]})")}) == Mode::Exact);
    CHECK(resolve_mode(Mode::Auto, {spec_from_text(R"({"family":"cuntz","z":[0.6,0.8]})")}) == Mode::Float);
    CHECK(resolve_mode(Mode::Exact, {spec_from_text(R"({"family":"cuntz","z":[0.6,0.8]})")}) == Mode::Exact);
}

TEST_CASE("state specs") {
    const auto c = parse_state<Exact>(spec_from_text(R"({"n":2,"family":"cuntz","z":[[1,0],[0,0]]})").doc);
    CHECK(c.family() == Family::Cuntz);
    CHECK(c(Word{1}, Word{}) == Exact(1));

    const auto s = parse_state<Exact>(spec_from_text(R"({"family":"sub_cuntz","m":2,"z":[0,1,0,0]})").doc);
    CHECK(s(Word{1, 2}, Word{}) == Exact(1));

    const auto x = parse_state<Exact>(spec_from_text(R"({"family":"shift","word":{"pre":[],"per":[1,2]}})").doc);
    CHECK(x.family() == Family::Shift);

    const auto sw = parse_state<Exact>(spec_from_text(R"({"family":"sandwich",
        "base":{"family":"cuntz","z":[1,0]},
        "terms":[{"coeff":1,"element":{"n":2,"terms":[{"J":[2]}]}}]})")
                                           .doc);
    CHECK(sw(Word{2}, Word{2}) == Exact(1));
}

TEST_CASE("schema errors") {
    CHECK(code_of(R"({"family":"cuntz","z":[1,1]})") == ErrorCode::SchemaError);
    CHECK(code_of(R"({"family":"nope"})") == ErrorCode::SchemaError);
    CHECK(code_of(R"({"family":"cuntz","z":[1,0)") == ErrorCode::SchemaError);
    CHECK(code_of(R"({"family":"shift","word":{"pre":[3],"per":[1]},"n":2})") == ErrorCode::SchemaError);
}

TEST_CASE("NotUnit is surfaced as a schema error") {
    try {
        parse_state<Exact>(spec_from_text(R"({"family":"cuntz","z":[1,1]})").doc);
        FAIL("accepted a non-unit vector");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("NotUnit") != std::string::npos);
    }
}

TEST_CASE("representations") {
    const auto r = parse_representation(Json::parse(R"({"kind":"shift","word":{"pre":[],"per":[1,2]},"n":3})"));
    CHECK(std::holds_alternative<ShiftRepresentation>(r));
    CHECK(std::holds_alternative<GridRepresentation>(parse_representation(Json::parse(R"({"kind":"grid","n":2})"))));
    CHECK_THROWS_AS(parse_representation(Json::parse(R"({"kind":"spiral"})")), Error);
}

TEST_CASE("serialization") {
    CHECK(real_json(Rational(1, 2)) == Json("1/2"));
    CHECK(real_json(Rational(3)) == Json(3));
    CHECK(scalar_json(Exact(Rational(1), Rational(-1))).dump() == "[1,-1]");
    CHECK(real_json(1.0 / 3.0).dump() == "0.333333333333");
}

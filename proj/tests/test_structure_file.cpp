#include <doctest.h>

#include "hslie/catalog4d.hpp"
#include "hslie/catalog_suite.hpp"
#include "hslie/structure_file.hpp"

using namespace hslie;

TEST_CASE("round trips through the text format") {
    // catalog structures with all optional blocks
    for (const auto& spec :
         {CanonicalCPSSpec::r4(),
          CanonicalCPSSpec::g0h(HalfAngle::from_tangent(Rational(1, 2))),
          CanonicalCPSSpec::g2h_theta(HalfAngle::from_tangent(Rational(3)), 1)}) {
        StructureFile s = structure_of(canonical_metric(spec));
        StructureFile back = parse_structure(serialize_structure(s));
        CHECK(back == s);
    }

    // randomized structures with random optional blocks
    Rng rng(0x50f7);
    for (int i = 0; i < 200; ++i) {
        std::size_t dim = static_cast<std::size_t>(rng.pick(1, 5));
        StructureFile s;
        s.dim = dim;
        for (std::size_t k = 0; k < dim; ++k) s.basis.push_back("b" + std::to_string(k + 1));
        for (std::size_t a = 0; a < dim; ++a)
            for (std::size_t b = a + 1; b < dim; ++b) {
                if (rng.pick(0, 2) != 0) continue;
                Vec val(dim);
                bool nonzero = false;
                for (auto& x : val) {
                    x = rng.rational(3, 2);
                    nonzero = nonzero || !x.is_zero();
                }
                if (nonzero) s.brackets.emplace_back(a, b, std::move(val));
            }
        if (rng.pick(0, 1)) {
            std::vector<std::vector<Vec>> gamma(dim, std::vector<Vec>(dim, Vec(dim)));
            for (auto& row : gamma)
                for (auto& v : row)
                    for (auto& x : v) x = rng.rational(3, 2);
            s.connection = std::move(gamma);
        }
        if (rng.pick(0, 1)) {
            Mat m(dim, dim);
            for (std::size_t a = 0; a < dim; ++a)
                for (std::size_t b = a; b < dim; ++b) {
                    m(a, b) = rng.rational(3, 2);
                    m(b, a) = m(a, b);
                }
            s.metric = std::move(m);
        }
        StructureFile back = parse_structure(serialize_structure(s));
        CHECK(back == s);
    }
}

TEST_CASE("shipped example files round trip") {
    for (const char* name : {"r4_canonical.json", "g1h_theta1.json", "nabla1_aff.json",
                             "r4_bad_metric.json"}) {
        StructureFile s = load_structure(std::string(HSLIE_DATA_DIR) + "/" + name);
        CHECK(parse_structure(serialize_structure(s)) == s);
    }
    MatchedPairFile mp = load_matched_pair(std::string(HSLIE_DATA_DIR) + "/bicross_a2.json");
    MatchedPairFile back = parse_matched_pair(serialize_matched_pair(mp));
    CHECK(back.factor_u == mp.factor_u);
    CHECK(back.factor_v == mp.factor_v);
    CHECK(back.phi == mp.phi);
}

TEST_CASE("strict parsing") {
    // unknown fields are rejected with their path
    try {
        parse_structure(R"({"schema_version": 1, "dim": 2, "surprise": 3})");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("/surprise") != std::string::npos);
    }

    // scalars must be exact strings
    CHECK_THROWS_AS(parse_structure(
                        R"({"schema_version": 1, "dim": 2, "metric": [[0.5, "0"], ["0", "1"]]})"),
                    ParseError);

    // malformed JSON reports a line and column
    try {
        parse_structure("{\n  \"schema_version\": 1,\n  oops\n}");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }

    // a self-bracket [x, x] != 0 is rejected
    CHECK_THROWS_AS(
        parse_structure(
            R"({"schema_version": 1, "dim": 2, "brackets": [{"i": 0, "j": 0, "coeffs": {"1": "1"}}]})"),
        ParseError);

    // duplicate bracket entries are rejected
    CHECK_THROWS_AS(
        parse_structure(
            R"({"schema_version": 1, "dim": 2,
                "brackets": [{"i": 0, "j": 1, "coeffs": {"1": "1"}},
                             {"i": 1, "j": 0, "coeffs": {"1": "2"}}]})"),
        ParseError);

    // out-of-range indices
    CHECK_THROWS_AS(
        parse_structure(
            R"({"schema_version": 1, "dim": 2, "brackets": [{"i": 0, "j": 5, "coeffs": {}}]})"),
        ParseError);

    CHECK_THROWS_AS(parse_structure(R"({"schema_version": 2, "dim": 2})"), ParseError);
    CHECK_THROWS_AS(parse_structure(R"({"dim": 2})"), ParseError);

    // entries with i > j normalize to the antisymmetric counterpart
    StructureFile s = parse_structure(
        R"({"schema_version": 1, "dim": 2, "brackets": [{"i": 1, "j": 0, "coeffs": {"1": "-1"}}]})");
    REQUIRE(s.brackets.size() == 1);
    CHECK(std::get<0>(s.brackets[0]) == 0);
    CHECK(std::get<2>(s.brackets[0]) == Vec{0, 1});
    CHECK(s.algebra().basis_bracket(0, 1) == Vec{0, 1});  // aff up to labels
}

TEST_CASE("structure files feed the validator end to end") {
    StructureFile good = structure_of(
        canonical_metric(CanonicalCPSSpec::g1h_theta(HalfAngle(Rational(3, 5), Rational(4, 5)), 1)));
    StructureFile parsed = parse_structure(serialize_structure(good));
    REQUIRE(parsed.J);
    REQUIRE(parsed.E);
    REQUIRE(parsed.metric);
    ValidationReport rep =
        verify_hypersymplectic(parsed.algebra(), *parsed.J, *parsed.E,
                               BilinearForm(*parsed.metric, Symmetry::symmetric));
    CHECK(rep.verdict);
}

TEST_CASE("matched-pair files") {
    MatchedPairFile f;
    f.factor_u = structure_of(named_algebra("aff"));
    f.factor_u.connection = std::vector<std::vector<Vec>>(2, std::vector<Vec>(2, Vec(2)));
    (*f.factor_u.connection)[0][0] = Vec{-1, 0};
    (*f.factor_u.connection)[0][1] = Vec{0, 1};
    f.factor_u.omega = canonical_omega2().matrix();
    f.factor_v = structure_of(named_algebra("R2"));
    f.factor_v.connection = std::vector<std::vector<Vec>>(2, std::vector<Vec>(2, Vec(2)));
    f.factor_v.omega = canonical_omega2().matrix();
    f.phi = Mat::identity(2);

    MatchedPairFile back = parse_matched_pair(serialize_matched_pair(f));
    CHECK(back.factor_u == f.factor_u);
    CHECK(back.factor_v == f.factor_v);
    CHECK(back.phi == f.phi);

    // the B1 pair builds a valid structure through the file layer
    BicrossResult res = build_bicrossproduct(to_spec(back));
    CHECK(check_jacobi(res.algebra).empty());

    // factors without connection or omega blocks are rejected
    MatchedPairFile missing = f;
    missing.factor_u.connection.reset();
    CHECK_THROWS_AS(to_spec(missing), ParseError);
}

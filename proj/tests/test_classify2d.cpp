#include <doctest.h>

#include "hslie/catalog_suite.hpp"
#include "hslie/classify2d.hpp"

using namespace hslie;

TEST_CASE("residual systems") {
    // family (a) with alpha = 3 on the plane
    Coeff2d fa{0, 3, 0, 0, 0, 0};
    for (const auto& r : residuals_r2(fa)) CHECK(r.is_zero());

    Coeff2d zero{};
    for (const auto& r : residuals_r2(zero)) CHECK(r.is_zero());

    Coeff2d bad{1, 1, 0, -1, 0, 0};
    bool nonzero = false;
    for (const auto& r : residuals_r2(bad)) nonzero = nonzero || !r.is_zero();
    CHECK(nonzero);  // a^2 = -bc fails

    Coeff2d aff_a{-1, 5, 0, 1, 0, 0};
    for (const auto& r : residuals_aff(aff_a)) CHECK(r.is_zero());

    Coeff2d aff_b{Rational(-1, 2), 0, 0, Rational(1, 2), 0, 0};
    for (const auto& r : residuals_aff(aff_b)) CHECK(r.is_zero());

    Coeff2d aff_bad{Rational(1, 2), 0, 0, Rational(-1, 2), 1, 0};
    nonzero = false;
    for (const auto& r : residuals_aff(aff_bad)) nonzero = nonzero || !r.is_zero();
    CHECK(nonzero);
}

TEST_CASE("family constructors") {
    Family2dData fc = make_family({Algebra2d::r2, Family2d::c, {1, 1}});
    CHECK(fc.nabla.gamma(0, 0) == Vec{1, 1});
    CHECK(fc.nabla.gamma(0, 1) == Vec{-1, -1});
    CHECK(fc.nabla.gamma(1, 0) == Vec{-1, -1});
    CHECK(fc.nabla.gamma(1, 1) == Vec{1, 1});

    Family2dData fa = make_family({Algebra2d::r2, Family2d::a, {1}});
    CHECK(fa.nabla.gamma(0, 0) == Vec{0, 1});
    CHECK(vec_is_zero(fa.nabla.gamma(0, 1)));
    CHECK(vec_is_zero(fa.nabla.gamma(1, 1)));

    Family2dData fb = make_family({Algebra2d::aff, Family2d::b, {2}});
    CHECK(fb.nabla.gamma(0, 0) == Vec{Rational(-1, 2), 2});
    CHECK(fb.nabla.gamma(0, 1) == Vec{0, Rational(1, 2)});
    CHECK(fb.nabla.gamma(1, 0) == Vec{0, Rational(-1, 2)});

    CHECK_THROWS_AS(make_family({Algebra2d::r2, Family2d::a, {0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_family({Algebra2d::r2, Family2d::c, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_family({Algebra2d::r2, Family2d::a, {}}), std::invalid_argument);
    CHECK_THROWS_AS(make_family({Algebra2d::aff, Family2d::c, {1}}), std::invalid_argument);
}

TEST_CASE("classification decision procedure") {
    FamilyTag fb = classify(Algebra2d::r2, {0, 0, 0, 0, 7, 0});
    CHECK(fb.family == Family2d::b);
    CHECK(fb.params == std::vector<Rational>{7});

    CHECK(classify(Algebra2d::r2, {}).family == Family2d::zero);

    FamilyTag fc = classify(Algebra2d::r2, {1, 1, -1, -1, 1, 1});
    CHECK(fc.family == Family2d::c);
    CHECK(fc.params == std::vector<Rational>{1, 1});

    FamilyTag aff_a = classify(Algebra2d::aff, {-1, 4, 0, 1, 0, 0});
    CHECK(aff_a.family == Family2d::a);
    CHECK(aff_a.params == std::vector<Rational>{4});

    CHECK_THROWS_AS(classify(Algebra2d::r2, {1, 1, 0, -1, 0, 0}), NotClassifiable);
}

TEST_CASE("soundness of the families under random parameters") {
    Rng rng(0xfeed);
    for (int i = 0; i < 100; ++i) {
        FamilyTag tag{Algebra2d::r2, Family2d::c,
                      {rng.nonzero_rational(6, 3), rng.nonzero_rational(6, 3)}};
        Family2dData data = make_family(tag);  // re-verified internally
        FamilyTag back = classify(Algebra2d::r2, coeffs_of_connection(data.nabla, Algebra2d::r2));
        CHECK(back == tag);
    }
    for (int i = 0; i < 100; ++i) {
        FamilyTag tag{Algebra2d::aff, rng.pick(0, 1) ? Family2d::a : Family2d::b,
                      {rng.rational(6, 3)}};
        Family2dData data = make_family(tag);
        FamilyTag back =
            classify(Algebra2d::aff, coeffs_of_connection(data.nabla, Algebra2d::aff));
        CHECK(back == tag);
    }
}

TEST_CASE("canonical witnesses") {
    CanonicalWitness w8 = canonical_witness({Algebra2d::r2, Family2d::a, {8}});
    CHECK(w8.target == CanonicalTarget::nabla0);
    REQUIRE(w8.exact_xi);
    CHECK(*w8.exact_xi == Mat{{2, 0}, {0, Rational(1, 2)}});

    CanonicalWitness wid = canonical_witness({Algebra2d::aff, Family2d::a, {0}});
    CHECK(wid.target == CanonicalTarget::nabla1);
    REQUIRE(wid.exact_xi);
    CHECK(*wid.exact_xi == Mat::identity(2));

    CanonicalWitness wc = canonical_witness({Algebra2d::r2, Family2d::c, {1, 8}});
    REQUIRE(wc.exact_xi);
    CHECK(*wc.exact_xi == Mat{{2, Rational(-1, 4)}, {0, Rational(1, 2)}});
    Family2dData fc = make_family({Algebra2d::r2, Family2d::c, {1, 8}});
    CHECK(verify_symplectic_equivalence(*wc.exact_xi, fc.nabla, fc.omega,
                                        canonical_connection(CanonicalTarget::nabla0),
                                        canonical_omega2()));

    CanonicalWitness wf = canonical_witness({Algebra2d::r2, Family2d::b, {5}});
    CHECK(!wf.exact_xi);
    CHECK(wf.xi_float[0][1] != 0.0);

    CHECK_THROWS_AS(canonical_witness({Algebra2d::r2, Family2d::zero, {}}),
                    std::invalid_argument);
}

TEST_CASE("completeness by family") {
    CHECK(family_complete({Algebra2d::r2, Family2d::zero, {}}));
    CHECK(family_complete({Algebra2d::r2, Family2d::c, {1, 2}}));
    CHECK(!family_complete({Algebra2d::aff, Family2d::a, {3}}));
    CHECK(!family_complete({Algebra2d::aff, Family2d::b, {0}}));
}

TEST_CASE("normalization of scrambled 2-d factors") {
    Rng rng(0xbead);
    int done = 0;
    while (done < 50) {
        bool aff = rng.pick(0, 1) == 1;
        FamilyTag tag = aff ? FamilyTag{Algebra2d::aff,
                                        rng.pick(0, 1) ? Family2d::a : Family2d::b,
                                        {rng.rational(4, 2)}}
                            : FamilyTag{Algebra2d::r2, Family2d::a, {rng.nonzero_rational(4, 2)}};
        Family2dData data = make_family(tag);

        // scramble by a random automorphism-compatible basis change: transport
        // the whole package and normalize back
        Mat P(2, 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) P(i, j) = rng.rational(3, 2);
        auto P_inv_opt = inverse(P);
        if (!P_inv_opt) continue;
        const Mat& P_inv = *P_inv_opt;

        // transported algebra must stay a Lie algebra of the same type
        std::vector<std::vector<Vec>> c(2, std::vector<Vec>(2, Vec(2)));
        c[0][1] = P * data.nabla.algebra().bracket(P_inv.column(0), P_inv.column(1));
        c[1][0] = vec_scale(-1, c[0][1]);
        LieAlgebra moved_alg(2, {}, c);
        std::vector<std::vector<Vec>> gamma(2, std::vector<Vec>(2, Vec(2)));
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                gamma[i][j] = P * data.nabla.apply(P_inv.column(i), P_inv.column(j));
        Connection moved(moved_alg, gamma);
        BilinearForm momega(P_inv.transpose() * data.omega.matrix() * P_inv,
                            Symmetry::antisymmetric);
        ++done;

        NormalizedFactor norm = normalize_2d(moved, momega);
        CHECK(norm.algebra == tag.algebra);
        FamilyTag back = classify(norm.algebra, norm.coeffs);
        CHECK(back.algebra == tag.algebra);
        // the canonical target is an equivalence invariant
        if (!(back.algebra == Algebra2d::r2 && back.family == Family2d::zero)) {
            CanonicalWitness wa = canonical_witness(back);
            CanonicalWitness wb = canonical_witness(tag);
            CHECK(wa.target == wb.target);
        }
    }
}

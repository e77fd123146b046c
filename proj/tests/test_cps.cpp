#include <doctest.h>

#include "hslie/catalog4d.hpp"
#include "hslie/catalog_suite.hpp"

using namespace hslie;

TEST_CASE("complex structure integrability") {
    LieAlgebra g0h = named_algebra("h3R");
    CHECK(is_complex_structure(g0h, canonical_J(Algebra4::g0h)));

    // any square root of -Id is integrable on an abelian algebra
    LieAlgebra r4 = named_algebra("R4");
    Mat J{{0, 0, -2, 0}, {0, 0, 0, -1}, {Rational(1, 2), 0, 0, 0}, {0, 1, 0, 0}};
    REQUIRE(J * J == -Mat::identity(4));
    CHECK(is_complex_structure(r4, J));

    // label map v0 -> v1 -> -v0, v2 -> v3 -> -v2 fails on the g2h brackets
    LieAlgebra g2h = named_algebra("g2h");  // storage order v0, v2, v1, v3
    Mat bad(4, 4);
    bad(2, 0) = 1;   // v0 -> v1
    bad(0, 2) = -1;  // v1 -> -v0
    bad(3, 1) = 1;   // v2 -> v3
    bad(1, 3) = -1;  // v3 -> -v2
    REQUIRE(bad * bad == -Mat::identity(4));
    CHECK(!is_complex_structure(g2h, bad));

    CHECK_THROWS_AS(is_complex_structure(r4, Mat::identity(4)), StructureError);
}

TEST_CASE("product structure integrability") {
    LieAlgebra g0h = named_algebra("h3R");
    CHECK(is_product_structure(g0h,
                               canonical_E_full_angle(Algebra4::g0h, CanonicalFamily::e0, 1, 0, 0)));

    LieAlgebra r4 = named_algebra("R4");
    Mat E(4, 4);
    E(0, 0) = 1; E(1, 1) = 1; E(2, 2) = -1; E(3, 3) = -1;
    CHECK(is_product_structure(r4, E));

    // plus eigenspace span{v1, v2} is not a subalgebra of h3R
    Mat badE(4, 4);
    badE(0, 0) = 1; badE(1, 1) = 1; badE(2, 2) = -1; badE(3, 3) = -1;
    CHECK(!is_product_structure(g0h, badE));

    CHECK_THROWS_AS(is_product_structure(g0h, Mat::identity(4)), StructureError);
    Mat notinv{{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}};
    CHECK_THROWS_AS(is_product_structure(g0h, notinv), StructureError);
}

TEST_CASE("CPStructure constructor names the violated identity") {
    LieAlgebra r4 = named_algebra("R4");
    Mat J = canonical_J(Algebra4::r4);
    Mat E(4, 4);
    E(0, 0) = 1; E(1, 1) = 1; E(2, 2) = -1; E(3, 3) = -1;
    CHECK_NOTHROW(CPStructure(r4, J, E));

    try {
        CPStructure(r4, Mat::identity(4), E);
        CHECK(false);
    } catch (const StructureError& e) {
        CHECK(e.identity == "J_squared");
    }
    try {
        CPStructure(r4, J, Mat::identity(4));
        CHECK(false);
    } catch (const StructureError& e) {
        CHECK(e.identity == "E_proper");
    }
    try {
        // E with the same eigenspaces as J-blocks fails anticommutation
        Mat E2(4, 4);
        E2(0, 0) = 1; E2(1, 1) = -1; E2(2, 2) = 1; E2(3, 3) = -1;
        CPStructure(r4, J, E2);
        CHECK(false);
    } catch (const StructureError& e) {
        CHECK(e.identity == "anticommutation");
    }
}

TEST_CASE("eigenspace splitting") {
    // angle-0 structure on g1h: plus = span{v0, v2}, minus = span{v1, v3}
    Splitting sp = split(canonical_cps(CanonicalCPSSpec::g1h_theta(HalfAngle(1, 0), 0)));
    LieAlgebra g1h = named_algebra("g1h");
    CHECK(sp.plus == Subspace(g1h, {unit_vec(4, 0), unit_vec(4, 2)}));
    CHECK(sp.minus == Subspace(g1h, {unit_vec(4, 1), unit_vec(4, 3)}));

    Splitting spr4 = split(canonical_cps(CanonicalCPSSpec::r4()));
    LieAlgebra r4 = named_algebra("R4");
    CHECK(spr4.plus == Subspace(r4, {unit_vec(4, 0), unit_vec(4, 1)}));

    // g1h shear: plus = span{v1 + v3, v2}, minus = span{-v0 - v2, v3}
    Splitting sps = split(canonical_cps(CanonicalCPSSpec::g1h_shear()));
    CHECK(sps.plus == Subspace(g1h, {Vec{0, 1, 0, 1}, unit_vec(4, 2)}));
    CHECK(sps.minus == Subspace(g1h, {Vec{-1, 0, -1, 0}, unit_vec(4, 3)}));

    // non-integrable pair: split refuses
    Mat badE(4, 4);
    badE(0, 0) = 1; badE(1, 1) = 1; badE(2, 2) = -1; badE(3, 3) = -1;
    LieAlgebra g0h = named_algebra("h3R");
    CHECK_THROWS_AS(split(CPStructure(g0h, canonical_J(Algebra4::g0h), badE)), StructureError);
}

TEST_CASE("compatible metric space") {
    HalfAngle h(Rational(3, 5), Rational(4, 5));
    auto basis_g0h = compatible_metric_space(canonical_cps(CanonicalCPSSpec::g0h(h)));
    REQUIRE(basis_g0h.size() == 1);
    CHECK(!det(basis_g0h[0].matrix()).is_zero());

    // the canonical pair on the abelian algebra: dimension 1, and the plus
    // eigenspace is isotropic (so the generator is antidiagonal, not diagonal)
    auto basis_r4 = compatible_metric_space(canonical_cps(CanonicalCPSSpec::r4()));
    REQUIRE(basis_r4.size() == 1);
    const Mat& gen = basis_r4[0].matrix();
    CHECK(gen(0, 0).is_zero());
    CHECK(gen(0, 1).is_zero());
    CHECK(!gen(0, 3).is_zero());
    CHECK(gen(0, 3) == -gen(1, 2));

    auto basis_shear = compatible_metric_space(canonical_cps(CanonicalCPSSpec::g2h_shear()));
    CHECK(basis_shear.size() == 1);
}

TEST_CASE("compatible metrics have neutral signature and isotropic eigenspaces") {
    for (const auto& t : {Rational(0), Rational(1, 3), Rational(2), Rational(5, 4)}) {
        HalfAngle h = HalfAngle::from_tangent(t);
        for (const auto& spec : {CanonicalCPSSpec::g0h(h), CanonicalCPSSpec::g1h_theta(h, 0),
                                 CanonicalCPSSpec::g1h_theta(h, 1),
                                 CanonicalCPSSpec::g2h_theta(h, 0),
                                 CanonicalCPSSpec::g2h_theta(h, 1)}) {
            CPStructure cp = canonical_cps(spec);
            auto basis = compatible_metric_space(cp);
            REQUIRE(basis.size() == 1);
            const BilinearForm& g = basis[0];
            REQUIRE(g.nondegenerate());
            CHECK(signature(g) == SignatureCount{2, 2});
            Splitting sp = split(cp);
            for (const auto& x : sp.plus.vectors())
                for (const auto& y : sp.plus.vectors()) CHECK(g(x, y).is_zero());
            for (const auto& x : sp.minus.vectors())
                for (const auto& y : sp.minus.vectors()) CHECK(g(x, y).is_zero());
        }
    }
}

TEST_CASE("induced factor connections are flat, torsion-free and land in the factor") {
    for (const auto& spec :
         {CanonicalCPSSpec::r4(), CanonicalCPSSpec::g0h(HalfAngle::from_tangent(Rational(1, 2))),
          CanonicalCPSSpec::g1h_theta(HalfAngle::from_tangent(Rational(2)), 1),
          CanonicalCPSSpec::g1h_shear(), CanonicalCPSSpec::g2h_theta(HalfAngle(0, 1), 0),
          CanonicalCPSSpec::g2h_shear()}) {
        CPStructure cp = canonical_cps(spec);
        for (bool plus : {true, false}) {
            RestrictedFactor f = plus ? plus_factor(cp) : minus_factor(cp);
            CHECK(check_jacobi(f.algebra).empty());
            CHECK(is_torsion_free(f.nabla));
            CHECK(is_flat(f.nabla));
        }
    }
}

TEST_CASE("induced connections agree with the mixed-part decomposition") {
    // for x in plus and y in minus, nabla_x y is the minus-part of [x, y]
    CPStructure cp = canonical_cps(CanonicalCPSSpec::g2h_theta(HalfAngle(Rational(3, 5),
                                                                         Rational(4, 5)),
                                                               1));
    Splitting sp = split(cp);
    Mat p_minus = eigenspace_projector(cp, false);
    Mat p_plus = eigenspace_projector(cp, true);
    for (const auto& x : sp.plus.vectors())
        for (const auto& y : sp.minus.vectors()) {
            auto [nxy, nyx] = mixed_connection_part(cp.algebra(), sp.plus, sp.minus, x, y);
            CHECK(nxy == p_minus * cp.algebra().bracket(x, y));
            CHECK(nyx == vec_scale(-1, p_plus * cp.algebra().bracket(x, y)));
        }
}

TEST_CASE("restricted symplectic data: flat, torsion-free, parallel on the factors") {
    // the factor connections of every catalog structure preserve the
    // restricted first form (the structures are closed), and classify into
    // the 2-d families
    for (const auto& spec :
         {CanonicalCPSSpec::g0h(HalfAngle::from_tangent(Rational(1, 3))),
          CanonicalCPSSpec::g1h_theta(HalfAngle::from_tangent(Rational(5, 2)), 1),
          CanonicalCPSSpec::g1h_shear(), CanonicalCPSSpec::g2h_theta(HalfAngle(1, 0), 1),
          CanonicalCPSSpec::g2h_shear()}) {
        HSStructure hs = canonical_metric(spec);
        ClosednessReport rep = closedness_battery(hs);
        CHECK(rep.d_omega1_zero);
        CHECK(rep.d_omega2_zero);
        CHECK(rep.d_omega3_zero);
        CHECK(rep.plus_parallel);
        CHECK(rep.minus_parallel);

        // and the Levi-Civita restriction agrees with the induced connection
        Connection lc = levi_civita(hs.algebra(), hs.metric());
        for (bool plus : {true, false}) {
            RestrictedFactor f = plus ? plus_factor(hs.cp()) : minus_factor(hs.cp());
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j) {
                    Vec ambient = lc.apply(f.space.vectors()[i], f.space.vectors()[j]);
                    auto coords = coordinates_in_span(f.space.vectors(), ambient);
                    REQUIRE(coords);
                    CHECK(*coords == f.nabla.gamma(i, j));
                }
        }
    }
}

#include <doctest.h>

#include "hslie/catalog4d.hpp"
#include "hslie/catalog_suite.hpp"

using namespace hslie;

TEST_CASE("HSStructure enforces metric compatibility at construction") {
    LieAlgebra g0h = named_algebra("h3R");
    Mat J = canonical_J(Algebra4::g0h);
    Mat E = canonical_E_full_angle(Algebra4::g0h, CanonicalFamily::e0, 1, 0, 0);
    try {
        HSStructure(CPStructure(g0h, J, E), BilinearForm(Mat::identity(4), Symmetry::symmetric));
        CHECK(false);
    } catch (const StructureError& e) {
        // a positive-definite metric cannot satisfy g(Ex, Ey) = -g(x, y)
        CHECK(e.identity == "metric_E_anti_invariance");
    }

    // corrupting one entry of a valid metric breaks compatibility
    HSStructure good = canonical_metric(CanonicalCPSSpec::g0h(HalfAngle(1, 0)));
    Mat broken = good.metric().matrix();
    broken(0, 0) += 1;
    CHECK_THROWS_AS(HSStructure(CPStructure(g0h, J, E),
                                BilinearForm(broken, Symmetry::symmetric)),
                    StructureError);
}

TEST_CASE("the form triple of the canonical abelian structure") {
    HSStructure hs = canonical_metric(CanonicalCPSSpec::r4());
    FormTriple t = kaehler_forms(hs);

    // omega1 pairs within eigenspaces: e^1 ^ e^2 + e^3 ^ e^4 up to sign
    CHECK(t.omega1(unit_vec(4, 0), unit_vec(4, 1)) == t.omega1(unit_vec(4, 2), unit_vec(4, 3)));
    CHECK(!t.omega1(unit_vec(4, 0), unit_vec(4, 1)).is_zero());
    CHECK(t.omega1(unit_vec(4, 0), unit_vec(4, 2)).is_zero());
    CHECK(t.omega1(unit_vec(4, 0), unit_vec(4, 3)).is_zero());

    // doubling the metric doubles every form
    HSStructure hs2(hs.cp(), BilinearForm(Rational(2) * hs.metric().matrix(),
                                          Symmetry::symmetric));
    FormTriple t2 = kaehler_forms(hs2);
    CHECK(t2.omega1.matrix() == Rational(2) * t.omega1.matrix());
    CHECK(t2.omega2.matrix() == Rational(2) * t.omega2.matrix());
    CHECK(t2.omega3.matrix() == Rational(2) * t.omega3.matrix());

    // omega1 restricted to the plus eigenspace is nondegenerate
    HalfAngle h = HalfAngle::from_tangent(Rational(1, 3));
    HSStructure g_theta = canonical_metric(CanonicalCPSSpec::g0h(h));
    FormTriple tt = kaehler_forms(g_theta);
    Splitting sp = split(g_theta.cp());
    CHECK(restrict_form(tt.omega1, sp.plus).nondegenerate());
    CHECK(restrict_form(tt.omega1, sp.minus).nondegenerate());
}

TEST_CASE("exterior derivative of 2-forms") {
    // dimension 2: no 3-forms
    CHECK(is_closed(named_algebra("R2"), canonical_omega2()));

    // v^0 ^ v^3 on h3R: d omega (v1, v2, v0) = 1
    LieAlgebra g0h = named_algebra("h3R");  // storage v1, v2, v3, v0
    Mat w(4, 4);
    w(3, 2) = 1;  // v^0 ^ v^3 as a matrix: omega(v0, v3) = 1
    w(2, 3) = -1;
    ThreeForm d = d_two_form(g0h, BilinearForm(w, Symmetry::antisymmetric));
    CHECK(!d.is_zero());
    // indices: v1 = 0, v2 = 1, v0 = 3
    CHECK(d.value(0, 1, 3) == Rational(1));
    // alternation in the index order
    CHECK(d.value(1, 0, 3) == Rational(-1));
    CHECK(d.value(0, 1, 1).is_zero());

    // the structure built from the A2 factors has closed forms
    CaseResult a2 = construct_case({CaseId::A2});
    FormTriple t = kaehler_forms(a2.bicross.structure);
    CHECK(is_closed(a2.bicross.algebra, t.omega1));
    CHECK(is_closed(a2.bicross.algebra, t.omega2));
    CHECK(is_closed(a2.bicross.algebra, t.omega3));
}

TEST_CASE("form symmetry and reconstruction identities") {
    std::vector<CanonicalCPSSpec> specs = {
        CanonicalCPSSpec::r4(),
        CanonicalCPSSpec::g0h(HalfAngle::from_tangent(Rational(3, 4))),
        CanonicalCPSSpec::g1h_theta(HalfAngle::from_tangent(Rational(1, 5)), 1),
        CanonicalCPSSpec::g1h_shear(),
        CanonicalCPSSpec::g2h_theta(HalfAngle(0, 1), 1),
        CanonicalCPSSpec::g2h_shear()};
    for (const auto& spec : specs) {
        HSStructure hs = canonical_metric(spec);
        CHECK(form_symmetry_check(hs));
        CHECK(reconstruction_check(hs));
    }
}

TEST_CASE("closedness battery pattern on randomized matched pairs") {
    Rng rng(0xabcdefULL);
    std::size_t found = 0, closed_count = 0, open_count = 0;
    while (found < 60) {
        auto sample = battery_sample(rng);
        if (!sample) continue;
        ++found;
        ClosednessReport rep = closedness_battery(sample->result.structure);
        CHECK(battery_pattern_holds(rep));
        bool hypo = sample->parallel_u && sample->parallel_v;
        CHECK(rep.d_omega1_zero == hypo);
        (rep.d_omega1_zero ? closed_count : open_count)++;
    }
    // the generator must exercise both sides of the biconditional
    CHECK(closed_count > 0);
    CHECK(open_count > 0);
}

TEST_CASE("a non-parallel factor produces a non-closed first form") {
    // nabla_{e1} e1 = e1 on the plane does not preserve the area form
    Coeff2d co{1, 0, 0, 0, 0, 0};
    FactorData u{named_algebra("R2"), connection_from_coeffs(Algebra2d::r2, co),
                 canonical_omega2()};
    FactorData v{named_algebra("R2"), Connection(named_algebra("R2")), canonical_omega2()};
    BicrossResult res = assemble_bicrossproduct(u, v, Mat::identity(2));
    ClosednessReport rep = closedness_battery(res.structure);
    CHECK(!rep.d_omega1_zero);
    CHECK(!rep.d_omega3_zero);
    CHECK(!(rep.plus_parallel && rep.minus_parallel));
    CHECK(battery_pattern_holds(rep));
}

TEST_CASE("top-level validator") {
    HSStructure r4 = canonical_metric(CanonicalCPSSpec::r4());
    ValidationReport rep = verify_hypersymplectic(r4.algebra(), r4.cp().J(), r4.cp().E(),
                                                  r4.metric());
    CHECK(rep.verdict);
    for (const auto& line : rep.checks) CHECK(line.pass);

    HSStructure g1 = canonical_metric(CanonicalCPSSpec::g1h_theta(HalfAngle(0, 1), 1));
    CHECK(verify_hypersymplectic(g1.algebra(), g1.cp().J(), g1.cp().E(), g1.metric()).verdict);

    // the identity metric fails exactly at the compatibility identities
    LieAlgebra g0h = named_algebra("h3R");
    ValidationReport bad = verify_hypersymplectic(
        g0h, canonical_J(Algebra4::g0h),
        canonical_E_full_angle(Algebra4::g0h, CanonicalFamily::e0, 1, 0, 0),
        BilinearForm(Mat::identity(4), Symmetry::symmetric));
    CHECK(!bad.verdict);
    bool saw_compat_fail = false;
    for (const auto& line : bad.checks) {
        if (line.name == "metric_E_anti_invariance") {
            CHECK(!line.pass);
            CHECK(!line.witness.empty());
            saw_compat_fail = true;
        }
        if (line.name == "jacobi" || line.name == "anticommutation") CHECK(line.pass);
    }
    CHECK(saw_compat_fail);
    CHECK(bad.to_text().find("metric_E_anti_invariance: fail") != std::string::npos);
}

TEST_CASE("structure equivalence witnesses") {
    HSStructure a = canonical_metric(CanonicalCPSSpec::g0h(HalfAngle(0, 1)));
    CHECK(verify_structure_equivalence(Mat::identity(4), a, a));

    // the A2 construction maps onto the angle-pi catalog structure; the
    // basis change is the witness once the catalog metric is rescaled
    CaseResult a2 = construct_case({CaseId::A2});
    Mat P = a2.basis_change;
    Mat B = *inverse(P);
    Mat moved = B.transpose() * a2.bicross.structure.metric().matrix() * B;
    // moved = the bicross metric expressed in catalog coordinates
    HSStructure target(canonical_cps(CanonicalCPSSpec::g0h(HalfAngle(0, 1))),
                       BilinearForm(moved, Symmetry::symmetric));
    CHECK(verify_structure_equivalence(P, a2.bicross.structure, target));
    // and it is a lambda-multiple of the catalog normalization
    HSStructure catalog = canonical_metric(CanonicalCPSSpec::g0h(HalfAngle(0, 1)));
    Rational lambda;
    for (std::size_t i = 0; i < 4 && lambda.is_zero(); ++i)
        for (std::size_t j = 0; j < 4 && lambda.is_zero(); ++j)
            if (!catalog.metric().matrix()(i, j).is_zero())
                lambda = moved(i, j) / catalog.metric().matrix()(i, j);
    CHECK(moved == lambda * catalog.metric().matrix());

    // an intertwiner with the eigenspaces swapped is rejected
    HSStructure r4 = canonical_metric(CanonicalCPSSpec::r4());
    Mat swap(4, 4);
    swap(2, 0) = 1; swap(3, 1) = 1; swap(0, 2) = 1; swap(1, 3) = 1;
    CHECK(!verify_structure_equivalence(swap, r4, r4));

    CHECK_THROWS_AS(verify_structure_equivalence(Mat(4, 4), r4, r4), std::domain_error);
}

TEST_CASE("Levi-Civita connection annihilates the structure exactly when closed") {
    // closed case: handled across the catalog by the suite; here the converse:
    // a compatible but non-closed structure has nabla J != 0 somewhere
    Coeff2d co{1, 0, 0, 0, 0, 0};
    FactorData u{named_algebra("R2"), connection_from_coeffs(Algebra2d::r2, co),
                 canonical_omega2()};
    FactorData v{named_algebra("R2"), Connection(named_algebra("R2")), canonical_omega2()};
    BicrossResult res = assemble_bicrossproduct(u, v, Mat::identity(2));
    Connection lc = levi_civita(res.algebra, res.structure.metric());
    bool annihilates = true;
    for (std::size_t i = 0; i < 4; ++i) {
        Mat ni = lc.covariant_matrix(unit_vec(4, i));
        if (ni * res.structure.cp().J() != res.structure.cp().J() * ni) annihilates = false;
        if (ni * res.structure.cp().E() != res.structure.cp().E() * ni) annihilates = false;
    }
    CHECK(!annihilates);
}

#include <doctest.h>

#include "hslie/catalog_suite.hpp"
#include "hslie/lie_algebra.hpp"

using namespace hslie;

namespace {

Vec label_vec(const LieAlgebra& L, std::string_view lbl) {
    return unit_vec(L.dim(), L.label_index(lbl));
}

}  // namespace

TEST_CASE("brackets of the catalog algebras") {
    LieAlgebra g0h = named_algebra("h3R");
    CHECK(g0h.bracket(label_vec(g0h, "v1"), label_vec(g0h, "v2")) == label_vec(g0h, "v3"));

    LieAlgebra aff = named_algebra("aff");
    CHECK(aff.bracket(label_vec(aff, "e2"), label_vec(aff, "e1")) ==
          vec_scale(-1, label_vec(aff, "e2")));

    LieAlgebra g1h = named_algebra("g1h");
    CHECK(g1h.bracket(label_vec(g1h, "v0"), label_vec(g1h, "v1")) == label_vec(g1h, "v1"));
    CHECK(g1h.bracket(label_vec(g1h, "v0"), label_vec(g1h, "v2")) ==
          vec_scale(-1, label_vec(g1h, "v2")));
    CHECK(g1h.bracket(label_vec(g1h, "v0"), label_vec(g1h, "v3")) ==
          vec_scale(-1, label_vec(g1h, "v3")));

    LieAlgebra g2h = named_algebra("g2h");
    CHECK(g2h.bracket(label_vec(g2h, "v0"), label_vec(g2h, "v1")) ==
          vec_scale(2, label_vec(g2h, "v1")));
    CHECK(g2h.bracket(label_vec(g2h, "v0"), label_vec(g2h, "v2")) ==
          vec_scale(-1, label_vec(g2h, "v2")));
    CHECK(g2h.bracket(label_vec(g2h, "v0"), label_vec(g2h, "v3")) == label_vec(g2h, "v3"));
    CHECK(g2h.bracket(label_vec(g2h, "v1"), label_vec(g2h, "v2")) == label_vec(g2h, "v3"));

    CHECK(named_algebra("R4").is_abelian());
    CHECK_THROWS_AS(named_algebra("so3"), std::invalid_argument);

    // [x, x] = 0 under random draws
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        Vec x(4);
        for (auto& c : x) c = rng.rational(5, 3);
        CHECK(vec_is_zero(g2h.bracket(x, x)));
    }

    CHECK_THROWS_AS(g2h.bracket(Vec{1, 2}, label_vec(g2h, "v0")), std::invalid_argument);
}

TEST_CASE("construction rejects non-antisymmetric tables") {
    std::vector<std::vector<Vec>> c(2, std::vector<Vec>(2, Vec(2)));
    c[0][1] = Vec{0, 1};
    c[1][0] = Vec{0, 1};  // should be the negative
    CHECK_THROWS_AS(LieAlgebra(2, {}, c), std::invalid_argument);
}

TEST_CASE("Jacobi check") {
    for (const char* name : {"R2", "R4", "aff", "h3R", "g1h", "g2h"})
        CHECK(check_jacobi(named_algebra(name)).empty());

    // c^1_23 = c^2_13 = c^3_12 = 1 actually satisfies Jacobi (each cyclic
    // term is a bracket of a vector with itself)
    auto e = [](std::size_t i) { return unit_vec(3, i); };
    LieAlgebra sl2ish = LieAlgebra::from_brackets(
        3, {}, {{1, 2, e(0)}, {0, 2, e(1)}, {0, 1, e(2)}});
    CHECK(check_jacobi(sl2ish).empty());

    // a genuinely violating tensor: [e1,e2] = e3, [e1,e3] = e1
    LieAlgebra bad = LieAlgebra::from_brackets(3, {}, {{0, 1, e(2)}, {0, 2, e(0)}});
    auto violations = check_jacobi(bad);
    REQUIRE(!violations.empty());
    CHECK(violations[0].i == 0);
    CHECK(violations[0].j == 1);
    CHECK(violations[0].k == 2);
}

TEST_CASE("basis-change verification") {
    // the semidirect product with [e1, f1] = f2, mapped onto h3R by
    // v1 = e1, v2 = f1, v3 = f2, v0 = -e2
    LieAlgebra sum =
        LieAlgebra::from_brackets(4, {"e1", "e2", "f1", "f2"}, {{0, 2, unit_vec(4, 3)}});
    LieAlgebra g0h = named_algebra("h3R");
    Mat B = Mat::from_columns(
        {Vec{1, 0, 0, 0}, Vec{0, 0, 1, 0}, Vec{0, 0, 0, 1}, Vec{0, -1, 0, 0}});
    Mat P = *inverse(B);
    CHECK(verify_basis_change(sum, P, g0h));

    CHECK(verify_basis_change(g0h, Mat::identity(4), g0h));

    // swapping the first two basis vectors of g1h is not an isomorphism
    Mat swap = Mat::identity(4);
    std::swap(swap(0, 0), swap(0, 1));
    std::swap(swap(1, 1), swap(1, 0));
    CHECK(!verify_basis_change(named_algebra("g1h"), swap, named_algebra("g1h")));

    CHECK_THROWS_AS(verify_basis_change(g0h, Mat(4, 4), g0h), std::domain_error);
}

TEST_CASE("basis-change verification is symmetric in the map direction") {
    Rng rng(17);
    LieAlgebra L = named_algebra("g2h");
    int done = 0;
    while (done < 200) {
        Mat P(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) P(i, j) = rng.rational(2, 2);
        auto P_inv = inverse(P);
        if (!P_inv) continue;
        ++done;

        // transported algebra: [x, y]' = P [P^-1 x, P^-1 y], so P maps L onto it
        std::vector<std::vector<Vec>> c(4, std::vector<Vec>(4, Vec(4)));
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                c[i][j] = P * L.bracket(P_inv->column(i), P_inv->column(j));
        LieAlgebra L2(4, {}, c);

        CHECK(verify_basis_change(L, P, L2));
        CHECK(verify_basis_change(L, P, L2) == verify_basis_change(L2, *P_inv, L));
        // and against an unrelated algebra both directions agree on failure
        LieAlgebra other = named_algebra("h3R");
        CHECK(verify_basis_change(other, P, L2) == verify_basis_change(L2, *P_inv, other));
    }
}

TEST_CASE("structure invariants of the catalog algebras") {
    AlgebraInvariants g0h = invariants(named_algebra("h3R"));
    CHECK(g0h.nilpotent());
    CHECK(g0h.nilpotency_class() == 2);
    CHECK(g0h.unimodular);
    CHECK(g0h.center_dim == 2);

    AlgebraInvariants g2h = invariants(named_algebra("g2h"));
    CHECK(!g2h.nilpotent());
    CHECK(g2h.solvable());
    CHECK(g2h.solvability_steps() == 3);
    CHECK(!g2h.unimodular);

    AlgebraInvariants g1h = invariants(named_algebra("g1h"));
    CHECK(g1h.solvable());
    CHECK(g1h.solvability_steps() == 2);
    CHECK(!g1h.unimodular);

    AlgebraInvariants r4 = invariants(named_algebra("R4"));
    CHECK(r4.abelian());
    CHECK(r4.unimodular);
    CHECK(r4.center_dim == 4);
}

TEST_CASE("invariants are isomorphism-invariant") {
    LieAlgebra sum =
        LieAlgebra::from_brackets(4, {"e1", "e2", "f1", "f2"}, {{0, 2, unit_vec(4, 3)}});
    AlgebraInvariants a = invariants(sum);
    AlgebraInvariants b = invariants(named_algebra("h3R"));
    CHECK(a.derived_series_dims == b.derived_series_dims);
    CHECK(a.lower_central_dims == b.lower_central_dims);
    CHECK(a.center_dim == b.center_dim);
    CHECK(a.unimodular == b.unimodular);
}

TEST_CASE("subalgebra test") {
    LieAlgebra g0h = named_algebra("h3R");
    Vec v0 = label_vec(g0h, "v0"), v1 = label_vec(g0h, "v1"), v2 = label_vec(g0h, "v2");

    CHECK(is_subalgebra(g0h, Subspace(g0h, {v0, v1})));
    CHECK(is_subalgebra(g0h, Subspace(g0h, {unit_vec(4, 0), unit_vec(4, 1), unit_vec(4, 2),
                                            unit_vec(4, 3)})));
    CHECK(!is_subalgebra(g0h, Subspace(g0h, {v1, v2})));

    CHECK_THROWS_AS(Subspace(g0h, {v1, vec_scale(2, v1)}), std::invalid_argument);
}

TEST_CASE("subalgebra bracket tables") {
    LieAlgebra g2h = named_algebra("g2h");
    Vec v0 = label_vec(g2h, "v0"), v1 = label_vec(g2h, "v1");
    LieAlgebra sub = subalgebra_in_basis(g2h, Subspace(g2h, {v0, v1}));
    // [v0, v1] = 2 v1 restricts to an aff-like algebra
    CHECK(sub.basis_bracket(0, 1) == Vec{0, 2});
    CHECK(check_jacobi(sub).empty());
}

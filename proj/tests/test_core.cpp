#include <doctest.h>

#include "hslie/catalog_suite.hpp"  // Rng
#include "hslie/linalg.hpp"

using namespace hslie;

TEST_CASE("rational arithmetic is exact and canonical") {
    Rational a(1, 3), b(1, 6);
    CHECK((a + b).str() == "1/2");
    CHECK(Rational(2, 4).str() == "1/2");
    CHECK(Rational(3, -6).str() == "-1/2");
    CHECK(Rational(-3, -6).den() == 2);
    CHECK(Rational(7).str() == "7");
    CHECK(Rational::parse("22/7") == Rational(22, 7));
    CHECK(Rational::parse("-5") == Rational(-5));
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);

    Rng rng(7);
    for (int i = 0; i < 500; ++i) {
        Rational p = rng.rational(50, 20), q = rng.rational(50, 20);
        CHECK(((p + q) - q) == p);  // zero residual on re-expansion
        CHECK(p.den() > 0);
        if (!q.is_zero()) CHECK((p / q) * q == p);
        CHECK(Rational::parse(p.str()) == p);
    }
}

TEST_CASE("exact cube roots") {
    CHECK(*exact_cube_root(Rational(8)) == Rational(2));
    CHECK(*exact_cube_root(Rational(-27, 64)) == Rational(-3, 4));
    CHECK(!exact_cube_root(Rational(5)));
    CHECK(!exact_cube_root(Rational(8, 3)));
    CHECK(*exact_cube_root(Rational(0)) == Rational(0));
}

TEST_CASE("matrix inverse, determinant, rank, nullspace") {
    Rng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        Mat m(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) m(i, j) = rng.rational(4, 2);
        Rational dm = det(m);
        auto inv = inverse(m);
        if (dm.is_zero()) {
            CHECK(!inv);
            CHECK(rank(m) < 4);
            CHECK(!nullspace(m).empty());
        } else {
            REQUIRE(inv);
            CHECK(m * *inv == Mat::identity(4));
            CHECK(*inv * m == Mat::identity(4));
            CHECK(rank(m) == 4);
            CHECK(nullspace(m).empty());
        }
    }
    // every nullspace vector is an actual kernel element
    Mat m{{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
    auto ns = nullspace(m);
    CHECK(ns.size() == 1);
    CHECK(vec_is_zero(m * ns[0]));
}

TEST_CASE("span utilities") {
    Vec a{1, 0, 0, 0}, b{0, 1, 0, 0}, c{1, 1, 0, 0};
    CHECK(linearly_independent({a, b}));
    CHECK(!linearly_independent({a, b, c}));
    CHECK(spans_equal({a, b}, {c, a}));
    CHECK(!spans_equal({a}, {b}));
    auto coords = coordinates_in_span({a, b}, c);
    REQUIRE(coords);
    CHECK((*coords)[0] == Rational(1));
    CHECK((*coords)[1] == Rational(1));
    CHECK(!coordinates_in_span({a, b}, Vec{0, 0, 1, 0}));
}

TEST_CASE("bilinear form validates its symmetry tag") {
    CHECK_THROWS_AS(BilinearForm(Mat{{0, 1}, {1, 0}}, Symmetry::antisymmetric),
                    std::invalid_argument);
    CHECK_THROWS_AS(BilinearForm(Mat{{0, 1}, {-2, 0}}, Symmetry::symmetric),
                    std::invalid_argument);
    BilinearForm w(Mat{{0, 1}, {-1, 0}}, Symmetry::antisymmetric);
    CHECK(w(Vec{1, 0}, Vec{0, 1}) == Rational(1));
    CHECK(w.nondegenerate());
}

namespace {

// Independent signature oracle: exact characteristic polynomial via the
// Faddeev-LeVerrier recurrence, then Descartes sign counts (exact for
// real-rooted polynomials, which symmetric matrices guarantee).
SignatureCount signature_oracle(const Mat& a) {
    std::size_t n = a.rows();
    // det(lambda I - A) = lambda^n + c[1] lambda^(n-1) + ... + c[n]
    std::vector<Rational> c(n + 1);
    Mat N = Mat::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        Mat M = a * N;
        Rational tr;
        for (std::size_t i = 0; i < n; ++i) tr += M(i, i);
        c[k] = -tr / Rational(static_cast<long>(k));
        N = M;
        for (std::size_t i = 0; i < n; ++i) N(i, i) += c[k];
    }
    auto sign_changes = [&](bool flip_odd) {
        int changes = 0, last = 1;  // leading coefficient is 1
        for (std::size_t k = 1; k <= n; ++k) {
            Rational coef = c[k];
            if (flip_odd && (k % 2 == 1)) coef = -coef;
            if (coef.is_zero()) continue;
            if (coef.sign() != last) ++changes;
            last = coef.sign();
        }
        return static_cast<std::size_t>(changes);
    };
    return {sign_changes(false), sign_changes(true)};
}

}  // namespace

TEST_CASE("signature of symmetric forms") {
    Mat diag(4, 4);
    diag(0, 0) = 1; diag(1, 1) = 1; diag(2, 2) = -1; diag(3, 3) = -1;
    CHECK(signature(BilinearForm(diag, Symmetry::symmetric)) == SignatureCount{2, 2});

    CHECK(signature(BilinearForm(Mat::identity(4), Symmetry::symmetric)) ==
          SignatureCount{4, 0});

    // Gram matrix of the adapted-basis normal form
    Mat anti{{0, 0, 0, -1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}};
    CHECK(signature(BilinearForm(anti, Symmetry::symmetric)) == SignatureCount{2, 2});

    Mat degen(3, 3);
    degen(0, 0) = 1;
    try {
        signature(BilinearForm(degen, Symmetry::symmetric));
        CHECK(false);
    } catch (const DegenerateFormError& e) {
        CHECK(e.radical_dim == 2);
    }

    CHECK_THROWS_AS(signature(BilinearForm(Mat{{0, 1}, {-1, 0}}, Symmetry::antisymmetric)),
                    std::invalid_argument);
}

TEST_CASE("signature agrees with the characteristic-polynomial oracle") {
    Rng rng(1234);
    int done = 0;
    while (done < 1000) {
        Mat m(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i; j < 4; ++j) {
                m(i, j) = rng.rational(4, 2);
                m(j, i) = m(i, j);
            }
        if (det(m).is_zero()) continue;
        ++done;
        BilinearForm g(m, Symmetry::symmetric);
        SignatureCount got = signature(g);
        SignatureCount want = signature_oracle(m);
        REQUIRE(got == want);
        CHECK(got.positive + got.negative == 4);
    }
}

TEST_CASE("half-angle values") {
    CHECK(halfangle_trig(HalfAngle(1, 0)) == std::pair<Rational, Rational>{1, 0});
    CHECK(halfangle_trig(HalfAngle(0, 1)) == std::pair<Rational, Rational>{-1, 0});
    CHECK(halfangle_trig(HalfAngle(Rational(3, 5), Rational(4, 5))) ==
          std::pair<Rational, Rational>{Rational(-7, 25), Rational(24, 25)});
    CHECK_THROWS_AS(HalfAngle(Rational(1, 2), Rational(1, 2)), std::invalid_argument);

    Rng rng(99);
    for (int i = 0; i < 200; ++i) {
        HalfAngle h = HalfAngle::from_tangent(rng.rational(20, 9));
        auto [c, s] = halfangle_trig(h);
        CHECK(c * c + s * s == Rational(1));
        CHECK(h.c() * h.c() + h.s() * h.s() == Rational(1));
    }
}

TEST_CASE("signature handles zero-diagonal pivot blocks") {
    // hyperbolic plane: both diagonal entries vanish
    CHECK(signature(BilinearForm(Mat{{0, 1}, {1, 0}}, Symmetry::symmetric)) ==
          SignatureCount{1, 1});
    CHECK(signature(BilinearForm(Mat{{0, -3}, {-3, 0}}, Symmetry::symmetric)) ==
          SignatureCount{1, 1});
    // odd dimension with a hyperbolic block
    Mat m{{0, 2, 0}, {2, 0, 0}, {0, 0, -5}};
    CHECK(signature(BilinearForm(m, Symmetry::symmetric)) == SignatureCount{1, 2});
}

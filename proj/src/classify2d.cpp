#include "hslie/classify2d.hpp"

#include <cmath>

namespace hslie {

std::vector<Rational> residuals_r2(const Coeff2d& co) {
    // parallelism of e^1 ^ e^2 forces d = -a, h = -c; flatness then reduces to
    // bg = -ac, a^2 = -bc, c^2 = ag
    return {co.d + co.a, co.h + co.c, co.b * co.g + co.a * co.c, co.a * co.a + co.b * co.c,
            co.c * co.c - co.a * co.g};
}

std::vector<Rational> residuals_aff(const Coeff2d& co) {
    // same parallelism constraints; flatness reduces to
    // c(a+2) + bg = 0, g(2a-1) - 2c^2 = 0, 2bc + (a+1)(2a+1) = 0
    return {co.d + co.a, co.h + co.c, co.c * (co.a + 2) + co.b * co.g,
            co.g * (Rational(2) * co.a - 1) - Rational(2) * co.c * co.c,
            Rational(2) * co.b * co.c + (co.a + 1) * (Rational(2) * co.a + 1)};
}

LieAlgebra algebra_of(Algebra2d which) {
    return which == Algebra2d::r2 ? named_algebra("R2") : named_algebra("aff");
}

BilinearForm canonical_omega2() {
    return BilinearForm(Mat{{Rational(0), Rational(1)}, {Rational(-1), Rational(0)}},
                        Symmetry::antisymmetric);
}

Connection connection_from_coeffs(Algebra2d which, const Coeff2d& co) {
    LieAlgebra L = algebra_of(which);
    std::vector<std::vector<Vec>> gamma(2, std::vector<Vec>(2, Vec(2)));
    gamma[0][0] = {co.a, co.b};
    gamma[0][1] = {co.c, co.d};
    gamma[1][1] = {co.g, co.h};
    gamma[1][0] = which == Algebra2d::r2 ? Vec{co.c, co.d} : Vec{co.c, co.d - 1};
    return Connection(std::move(L), std::move(gamma));
}

Coeff2d coeffs_of_connection(const Connection& C, Algebra2d which) {
    if (C.dim() != 2) throw std::invalid_argument("coeffs_of_connection: need dim 2");
    Coeff2d co{C.gamma(0, 0)[0], C.gamma(0, 0)[1], C.gamma(0, 1)[0],
               C.gamma(0, 1)[1], C.gamma(1, 1)[0], C.gamma(1, 1)[1]};
    // the remaining block is determined by torsion-freeness; check it
    Vec expected = which == Algebra2d::r2 ? Vec{co.c, co.d} : Vec{co.c, co.d - 1};
    if (C.gamma(1, 0) != expected)
        throw std::invalid_argument("coeffs_of_connection: connection has torsion");
    return co;
}

namespace {

Coeff2d family_coeffs(const FamilyTag& tag) {
    auto need = [&](std::size_t k) {
        if (tag.params.size() != k)
            throw std::invalid_argument("make_family: wrong parameter arity");
    };
    if (tag.algebra == Algebra2d::r2) {
        switch (tag.family) {
            case Family2d::zero:
                need(0);
                return {};
            case Family2d::a: {
                need(1);
                if (tag.params[0].is_zero())
                    throw std::invalid_argument("make_family: alpha must be nonzero");
                return {0, tag.params[0], 0, 0, 0, 0};
            }
            case Family2d::b: {
                need(1);
                if (tag.params[0].is_zero())
                    throw std::invalid_argument("make_family: alpha must be nonzero");
                return {0, 0, 0, 0, tag.params[0], 0};
            }
            case Family2d::c: {
                need(2);
                const Rational& al = tag.params[0];
                const Rational& be = tag.params[1];
                if (al.is_zero() || be.is_zero())
                    throw std::invalid_argument("make_family: alpha, beta must be nonzero");
                Rational c = -al * al / be;
                Rational g = al * al * al / (be * be);
                return {al, be, c, -al, g, -c};
            }
        }
    } else {
        const Rational& al = tag.params.empty() ? Rational(0) : tag.params[0];
        switch (tag.family) {
            case Family2d::a:
                need(1);
                return {-1, al, 0, 1, 0, 0};
            case Family2d::b:
                need(1);
                return {Rational(-1, 2), al, 0, Rational(1, 2), 0, 0};
            default:
                throw std::invalid_argument("make_family: aff families are only (a), (b)");
        }
    }
    throw std::invalid_argument("make_family: bad tag");
}

}  // namespace

Family2dData make_family(const FamilyTag& tag) {
    Coeff2d co = family_coeffs(tag);
    auto res = tag.algebra == Algebra2d::r2 ? residuals_r2(co) : residuals_aff(co);
    for (const auto& r : res)
        if (!r.is_zero()) throw std::logic_error("make_family: nonzero residual");
    Connection C = connection_from_coeffs(tag.algebra, co);
    BilinearForm omega = canonical_omega2();
    if (!is_torsion_free(C) || !is_flat(C) || !parallel_form_check(C, omega))
        throw std::logic_error("make_family: output failed re-verification");
    return {std::move(C), std::move(omega)};
}

FamilyTag classify(Algebra2d which, const Coeff2d& co) {
    auto res = which == Algebra2d::r2 ? residuals_r2(co) : residuals_aff(co);
    for (const auto& r : res)
        if (!r.is_zero())
            throw NotClassifiable("classify: nonzero residuals, not a flat symplectic block");

    FamilyTag tag;
    tag.algebra = which;
    if (which == Algebra2d::r2) {
        bool all_zero = co.a.is_zero() && co.b.is_zero() && co.c.is_zero() && co.d.is_zero() &&
                        co.g.is_zero() && co.h.is_zero();
        if (all_zero) {
            tag.family = Family2d::zero;
        } else if (co.a.is_zero()) {
            // the residuals force c = 0 and bg = 0
            if (!co.b.is_zero()) {
                tag.family = Family2d::a;
                tag.params = {co.b};
            } else {
                tag.family = Family2d::b;
                tag.params = {co.g};
            }
        } else {
            tag.family = Family2d::c;
            tag.params = {co.a, co.b};
        }
    } else {
        if (co.a == Rational(-1)) {
            tag.family = Family2d::a;
            tag.params = {co.b};
        } else if (co.a == Rational(-1, 2)) {
            tag.family = Family2d::b;
            tag.params = {co.b};
        } else {
            throw NotClassifiable("classify: aff block with zero residuals must have a = -1 or -1/2");
        }
    }

    // round-trip: the tag reproduces the block exactly
    Coeff2d back = family_coeffs(tag);
    if (back.a != co.a || back.b != co.b || back.c != co.c || back.d != co.d ||
        back.g != co.g || back.h != co.h)
        throw std::logic_error("classify: tag does not reproduce the input block");
    return tag;
}

Connection canonical_connection(CanonicalTarget t) {
    switch (t) {
        case CanonicalTarget::nabla0:
            return connection_from_coeffs(Algebra2d::r2, {0, 1, 0, 0, 0, 0});
        case CanonicalTarget::nabla1:
            return connection_from_coeffs(Algebra2d::aff, {-1, 0, 0, 1, 0, 0});
        case CanonicalTarget::nabla2:
            return connection_from_coeffs(Algebra2d::aff,
                                          {Rational(-1, 2), 0, 0, Rational(1, 2), 0, 0});
    }
    throw std::invalid_argument("canonical_connection: bad target");
}

CanonicalWitness canonical_witness(const FamilyTag& tag) {
    if (tag.algebra == Algebra2d::r2 && tag.family == Family2d::zero)
        throw std::invalid_argument("canonical_witness: the zero family has no canonical target");

    auto as_float = [](const Mat& m) {
        return std::array<std::array<double, 2>, 2>{
            {{m(0, 0).to_double(), m(0, 1).to_double()},
             {m(1, 0).to_double(), m(1, 1).to_double()}}};
    };

    if (tag.algebra == Algebra2d::aff) {
        const Rational& al = tag.params[0];
        Mat xi = tag.family == Family2d::a
                     ? Mat{{Rational(1), Rational(0)}, {al / 2, Rational(1)}}
                     : Mat{{Rational(1), Rational(0)}, {Rational(2) * al, Rational(1)}};
        CanonicalTarget tgt =
            tag.family == Family2d::a ? CanonicalTarget::nabla1 : CanonicalTarget::nabla2;
        return {tgt, xi, as_float(xi)};
    }

    // r2 families: witnesses involve cube roots of the parameters
    const Rational& al = tag.params[0];
    auto build = [&](const std::optional<Rational>& root,
                     double root_f) -> CanonicalWitness {
        std::optional<Mat> exact;
        std::array<std::array<double, 2>, 2> xf{};
        switch (tag.family) {
            case Family2d::a:
                if (root) exact = Mat{{*root, Rational(0)}, {Rational(0), Rational(1) / *root}};
                xf = {{{root_f, 0.0}, {0.0, 1.0 / root_f}}};
                break;
            case Family2d::b:
                if (root) exact = Mat{{Rational(0), -*root}, {Rational(1) / *root, Rational(0)}};
                xf = {{{0.0, -root_f}, {1.0 / root_f, 0.0}}};
                break;
            case Family2d::c: {
                const Rational& be = tag.params[1];
                if (root)
                    exact = Mat{{*root, -al / (*root * *root)},
                                {Rational(0), Rational(1) / *root}};
                double alf = al.to_double();
                xf = {{{root_f, -alf / (root_f * root_f)}, {0.0, 1.0 / root_f}}};
                (void)be;
                break;
            }
            default:
                throw std::invalid_argument("canonical_witness: bad family");
        }
        return {CanonicalTarget::nabla0, exact, xf};
    };

    const Rational& cube_of = tag.family == Family2d::c ? tag.params[1] : al;
    auto root = exact_cube_root(cube_of);
    double root_f = std::cbrt(cube_of.to_double());
    return build(root, root_f);
}

bool family_complete(const FamilyTag& tag) { return tag.algebra == Algebra2d::r2; }

NormalizedFactor normalize_2d(const Connection& nabla, const BilinearForm& omega) {
    if (nabla.dim() != 2 || omega.dim() != 2)
        throw std::invalid_argument("normalize_2d: need a 2-d factor");
    if (omega.symmetry() != Symmetry::antisymmetric || !omega.nondegenerate())
        throw std::invalid_argument("normalize_2d: omega must be symplectic");
    const LieAlgebra& L = nabla.algebra();

    Vec e1(2), e2(2);
    Algebra2d which;
    Vec b01 = L.basis_bracket(0, 1);
    if (vec_is_zero(b01)) {
        which = Algebra2d::r2;
        e1 = unit_vec(2, 0);
        e2 = unit_vec(2, 1);
    } else {
        which = Algebra2d::aff;
        // e2 spans the derived algebra; pick e1 with [e1, e2] = e2
        e2 = b01;
        Vec cand = unit_vec(2, 0);
        Vec br = L.bracket(cand, e2);
        auto lam = coordinates_in_span({e2}, br);
        if (!lam || (*lam)[0].is_zero()) {
            cand = unit_vec(2, 1);
            br = L.bracket(cand, e2);
            lam = coordinates_in_span({e2}, br);
        }
        if (!lam || (*lam)[0].is_zero())
            throw std::logic_error("normalize_2d: could not split off the derived algebra");
        e1 = vec_scale(Rational(1) / (*lam)[0], cand);
    }
    // scale e2 so that omega(e1, e2) = 1 (keeps [e1, e2] = e2 on aff... only
    // scaling e2 rescales the bracket value the same way, so redo e1 instead)
    Rational w = omega(e1, e2);
    if (w.is_zero()) throw std::logic_error("normalize_2d: degenerate pairing");
    if (which == Algebra2d::r2) {
        e2 = vec_scale(Rational(1) / w, e2);
    } else {
        // [e1, lambda e2] = lambda e2 for any lambda, so scaling e2 is safe
        e2 = vec_scale(Rational(1) / w, e2);
    }

    Mat P = Mat::from_columns({e1, e2});
    auto P_inv = inverse(P);
    if (!P_inv) throw std::logic_error("normalize_2d: basis is singular");

    // transport nabla into the new basis: gamma'_{ij} = P^{-1} nabla_{P ei} (P ej)
    std::vector<std::vector<Vec>> gamma(2, std::vector<Vec>(2, Vec(2)));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            gamma[i][j] = *P_inv * nabla.apply(P.column(i), P.column(j));
    Connection moved(algebra_of(which), std::move(gamma));
    Coeff2d co = coeffs_of_connection(moved, which);
    return {which, co, std::move(P)};
}

}  // namespace hslie

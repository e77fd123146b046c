#include "hslie/catalog4d.hpp"

#include <cmath>
#include <map>

namespace hslie {

CanonicalCPSSpec CanonicalCPSSpec::r4() { return {Algebra4::r4, CanonicalFamily::canonical}; }
CanonicalCPSSpec CanonicalCPSSpec::g0h(HalfAngle theta) {
    return {Algebra4::g0h, CanonicalFamily::e0, std::move(theta), 0};
}
CanonicalCPSSpec CanonicalCPSSpec::g1h_theta(HalfAngle theta, int d) {
    return {Algebra4::g1h, CanonicalFamily::e1_theta, std::move(theta), d};
}
CanonicalCPSSpec CanonicalCPSSpec::g1h_shear() {
    return {Algebra4::g1h, CanonicalFamily::e1_shear};
}
CanonicalCPSSpec CanonicalCPSSpec::g2h_theta(HalfAngle theta, int d) {
    return {Algebra4::g2h, CanonicalFamily::e2_theta, std::move(theta), d};
}
CanonicalCPSSpec CanonicalCPSSpec::g2h_shear() {
    return {Algebra4::g2h, CanonicalFamily::e2_shear};
}

namespace {

void validate_spec(const CanonicalCPSSpec& spec) {
    auto ok = [&](Algebra4 a) { return spec.algebra == a; };
    bool good = false;
    switch (spec.family) {
        case CanonicalFamily::canonical: good = ok(Algebra4::r4); break;
        case CanonicalFamily::e0: good = ok(Algebra4::g0h); break;
        case CanonicalFamily::e1_theta:
        case CanonicalFamily::e1_shear: good = ok(Algebra4::g1h); break;
        case CanonicalFamily::e2_theta:
        case CanonicalFamily::e2_shear: good = ok(Algebra4::g2h); break;
    }
    if (!good) throw std::invalid_argument("catalog: family does not live on this algebra");
    if (spec.d != 0 && spec.d != 1)
        throw std::invalid_argument("catalog: d must be 0 or 1");
}

Rational R(long n, long d = 1) { return Rational(n, d); }

}  // namespace

LieAlgebra catalog_algebra(Algebra4 which) {
    switch (which) {
        case Algebra4::r4: return named_algebra("R4");
        case Algebra4::g0h: return named_algebra("h3R");
        case Algebra4::g1h: return named_algebra("g1h");
        case Algebra4::g2h: return named_algebra("g2h");
    }
    throw std::invalid_argument("catalog_algebra: bad tag");
}

Mat canonical_J(Algebra4 which) {
    switch (which) {
        case Algebra4::r4:
            return Mat{{0, 0, -1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}};
        case Algebra4::g0h:
        case Algebra4::g1h:
            return Mat{{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}};
        case Algebra4::g2h:
            return Mat{{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}};
    }
    throw std::invalid_argument("canonical_J: bad tag");
}

Mat canonical_E_full_angle(Algebra4 which, CanonicalFamily family, const Rational& c,
                           const Rational& s, int d) {
    if (c * c + s * s != Rational(1))
        throw std::invalid_argument("canonical_E_full_angle: (cos, sin) not on the circle");
    Rational dd(d);
    switch (family) {
        case CanonicalFamily::canonical:
            return Mat{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}};
        case CanonicalFamily::e0:
            return Mat{{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, c, s}, {0, 0, s, -c}};
        case CanonicalFamily::e1_theta:
            return Mat{{c, s, 0, 0},
                       {s, -c, 0, 0},
                       {-dd * s, dd * (Rational(1) + c), 1, 0},
                       {dd * (Rational(1) + c), dd * s, 0, -1}};
        case CanonicalFamily::e1_shear:
            return Mat{{-1, 0, 0, 0}, {0, 1, 0, 0}, {-2, 0, 1, 0}, {0, 2, 0, -1}};
        case CanonicalFamily::e2_theta: {
            Rational one_c = Rational(1) + c;
            return Mat{{c, s, 0, 0},
                       {s, -c, 0, 0},
                       {dd * s * one_c, -dd * c * one_c, c, -s},
                       {dd * c * one_c, dd * s * one_c, -s, -c}};
        }
        case CanonicalFamily::e2_shear:
            return Mat{{-1, 0, 0, 0}, {0, 1, 0, 0}, {0, 2, -1, 0}, {-2, 0, 0, 1}};
    }
    (void)which;
    throw std::invalid_argument("canonical_E_full_angle: bad family");
}

CPStructure canonical_cps(const CanonicalCPSSpec& spec) {
    validate_spec(spec);
    LieAlgebra L = catalog_algebra(spec.algebra);
    Mat J = canonical_J(spec.algebra);
    Mat E = canonical_E_full_angle(spec.algebra, spec.family, spec.theta.cos_full(),
                                   spec.theta.sin_full(), spec.d);
    CPStructure cp(std::move(L), std::move(J), std::move(E));
    if (!is_complex_structure(cp.algebra(), cp.J()))
        throw std::logic_error("canonical_cps: catalog J is not integrable");
    if (!is_product_structure(cp.algebra(), cp.E()))
        throw std::logic_error("canonical_cps: catalog E is not integrable");
    return cp;
}

std::array<Vec, 4> adapted_basis(const CanonicalCPSSpec& spec) {
    validate_spec(spec);
    const Rational C = spec.theta.c(), S = spec.theta.s();
    const Rational dC = spec.d == 1 ? C : Rational(0);
    auto v = [](Rational a, Rational b, Rational c, Rational d) {
        return Vec{std::move(a), std::move(b), std::move(c), std::move(d)};
    };
    switch (spec.family) {
        case CanonicalFamily::canonical:
            return {v(1, 0, 0, 0), v(0, 1, 0, 0), v(0, 0, 1, 0), v(0, 0, 0, 1)};
        case CanonicalFamily::e0:
            // {U, v1, V, v2} with U = C v3 + S v0, V = -S v3 + C v0
            return {v(0, 0, C, S), v(1, 0, 0, 0), v(0, 0, -S, C), v(0, 1, 0, 0)};
        case CanonicalFamily::e1_theta:
            // {U, v2, V, v3}, U = C v0 + S v1 (+ C v3 if d), V = -S v0 + C v1 (- C v2 if d)
            return {v(C, S, 0, dC), v(0, 0, 1, 0), v(-S, C, -dC, 0), v(0, 0, 0, 1)};
        case CanonicalFamily::e1_shear:
            // {v1 + v3, v2, -v0 - v2, v3}
            return {v(0, 1, 0, 1), v(0, 0, 1, 0), v(-1, 0, -1, 0), v(0, 0, 0, 1)};
        case CanonicalFamily::e2_theta:
            // storage (v0, v2, v1, v3): {U, Ut, V, Vt}
            // U = C v0 + S v2 (+ C v3 if d), Ut = C v1 - S v3,
            // V = S v0 - C v2 (- C v1 if d), Vt = S v1 + C v3
            return {v(C, S, 0, dC), v(0, 0, C, -S), v(S, -C, -dC, 0), v(0, 0, S, C)};
        case CanonicalFamily::e2_shear:
            // {v1 + v2, v3, v0 + v3, -v1} in storage (v0, v2, v1, v3)
            return {v(0, 1, 1, 0), v(0, 0, 0, 1), v(1, 0, 0, 1), v(0, 0, -1, 0)};
    }
    throw std::invalid_argument("adapted_basis: bad family");
}

Splitting eigenspace_display(const CanonicalCPSSpec& spec) {
    auto b = adapted_basis(spec);
    LieAlgebra L = catalog_algebra(spec.algebra);
    Splitting disp{Subspace(L, {b[0], b[1]}), Subspace(L, {b[2], b[3]})};
    Splitting computed = split(canonical_cps(spec));
    if (!(disp.plus == computed.plus) || !(disp.minus == computed.minus))
        throw std::logic_error("eigenspace_display: displayed spans differ from the eigenspaces");
    return disp;
}

HSStructure canonical_metric(const CanonicalCPSSpec& spec) {
    CPStructure cp = canonical_cps(spec);
    auto b = adapted_basis(spec);
    Mat P = Mat::from_columns({b[0], b[1], b[2], b[3]});
    auto P_inv = inverse(P);
    if (!P_inv) throw std::logic_error("canonical_metric: adapted basis is singular");
    Mat K{{0, 0, 0, -1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}};
    Mat G = P_inv->transpose() * K * *P_inv;

    // cross-check against the compatible-metric solution space
    auto space = compatible_metric_space(cp);
    if (space.size() != 1)
        throw std::logic_error("canonical_metric: compatible space dimension != 1");
    const Mat& gen = space[0].matrix();
    Rational mu;
    for (std::size_t i = 0; i < 4 && mu.is_zero(); ++i)
        for (std::size_t j = 0; j < 4 && mu.is_zero(); ++j)
            if (!gen(i, j).is_zero()) mu = G(i, j) / gen(i, j);
    if (mu.is_zero() || G != mu * gen)
        throw std::logic_error("canonical_metric: pullback not proportional to the generator");

    HSStructure hs(std::move(cp), BilinearForm(std::move(G), Symmetry::symmetric));
    ValidationReport rep = verify_hypersymplectic(hs.algebra(), hs.cp().J(), hs.cp().E(),
                                                  hs.metric());
    if (!rep.verdict)
        throw std::logic_error("canonical_metric: catalog structure failed validation:\n" +
                               rep.to_text());
    return hs;
}

CurvatureProfile curvature_profile(const CanonicalCPSSpec& spec) {
    HSStructure hs = canonical_metric(spec);
    Connection nabla = levi_civita(hs.algebra(), hs.metric());
    auto b = adapted_basis(spec);
    Mat P = Mat::from_columns({b[0], b[1], b[2], b[3]});
    Mat P_inv = *inverse(P);

    CurvatureProfile prof;
    prof.flat = is_flat(nabla);
    Mat R_uv = P_inv * curvature(nabla, b[0], b[2]) * P;
    prof.distinguished_entry = R_uv(1, 0);

    prof.other_pairs_zero = true;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) {
            if (i == 0 && j == 2) continue;
            if (!curvature(nabla, b[i], b[j]).is_zero()) prof.other_pairs_zero = false;
        }

    // closed forms for the angle families
    const Rational C = spec.theta.c();
    switch (spec.family) {
        case CanonicalFamily::canonical:
        case CanonicalFamily::e0:
            if (!prof.flat) throw std::logic_error("curvature_profile: expected a flat family");
            break;
        case CanonicalFamily::e1_theta:
            if (spec.d == 0) {
                if (!prof.flat)
                    throw std::logic_error("curvature_profile: d=0 family must be flat");
            } else {
                if (prof.distinguished_entry != Rational(6) * C)
                    throw std::logic_error("curvature_profile: entry != 6 cos(t/2)");
                if (prof.flat != C.is_zero())
                    throw std::logic_error("curvature_profile: flatness != (cos(t/2) = 0)");
                // the only nonzero entries of R(U, V) sit at (2,1) and (4,3)
                Mat expected(4, 4);
                expected(1, 0) = prof.distinguished_entry;
                expected(3, 2) = prof.distinguished_entry;
                if (R_uv != expected)
                    throw std::logic_error("curvature_profile: R(U,V) shape mismatch");
            }
            break;
        case CanonicalFamily::e2_theta:
            if (spec.d == 0) {
                if (!prof.flat)
                    throw std::logic_error("curvature_profile: d=0 family must be flat");
            } else {
                if (prof.distinguished_entry != Rational(6) * C * C)
                    throw std::logic_error("curvature_profile: entry != 6 cos^2(t/2)");
                if (prof.flat != C.is_zero())
                    throw std::logic_error("curvature_profile: flatness != (cos(t/2) = 0)");
                Mat expected(4, 4);
                expected(1, 0) = prof.distinguished_entry;
                expected(3, 2) = prof.distinguished_entry;
                if (R_uv != expected)
                    throw std::logic_error("curvature_profile: R(U,V) shape mismatch");
            }
            break;
        case CanonicalFamily::e1_shear:
        case CanonicalFamily::e2_shear:
            break;  // no closed-form claim; the computed profile is the result
    }
    return prof;
}

// ---------------------------------------------------------------------------
// Construction cases
// ---------------------------------------------------------------------------

const char* case_name(CaseId id) {
    switch (id) {
        case CaseId::A1: return "A1";
        case CaseId::A2: return "A2";
        case CaseId::A3: return "A3";
        case CaseId::A4: return "A4";
        case CaseId::B1: return "B1";
        case CaseId::B2: return "B2";
        case CaseId::B3: return "B3";
        case CaseId::B4: return "B4";
        case CaseId::B1p: return "B1'";
        case CaseId::B2p: return "B2'";
        case CaseId::B3p: return "B3'";
        case CaseId::B4p: return "B4'";
        case CaseId::C1: return "C1";
        case CaseId::C3: return "C3";
    }
    return "?";
}

bool case_has_params(CaseId id) {
    switch (id) {
        case CaseId::A4:
        case CaseId::B2:
        case CaseId::B4:
        case CaseId::B2p:
        case CaseId::B4p:
        case CaseId::C1:
        case CaseId::C3: return true;
        default: return false;
    }
}

namespace {

FactorData make_factor(Algebra2d alg, int which_nabla /* 0: zero, 1: n0/n1/n2 per algebra */) {
    Connection nabla = [&] {
        if (which_nabla == 0) return Connection(algebra_of(alg));
        if (alg == Algebra2d::r2) return canonical_connection(CanonicalTarget::nabla0);
        return canonical_connection(which_nabla == 1 ? CanonicalTarget::nabla1
                                                     : CanonicalTarget::nabla2);
    }();
    return {algebra_of(alg), std::move(nabla), canonical_omega2()};
}

struct CaseRecipe {
    FactorData u, v;
    Algebra4 target;
    CanonicalFamily family;
    Rational cos_t = 1, sin_t = 0;
    int d = 0;
    std::vector<Vec> B_cols;                      // catalog basis in sum coordinates
    std::vector<Vec> plus_disp, minus_disp;       // displayed eigenspaces, catalog coords
};

Vec v4(Rational a, Rational b, Rational c, Rational d) {
    return Vec{std::move(a), std::move(b), std::move(c), std::move(d)};
}

CaseRecipe recipe(const CaseSpec& cs) {
    const Rational& a = cs.a;
    const Rational& b = cs.b;
    if (case_has_params(cs.id) && a.is_zero())
        throw std::invalid_argument("construct_case: parameter a must be nonzero");
    if (!case_has_params(cs.id) && (a != Rational(1) || !b.is_zero()))
        throw std::invalid_argument("construct_case: this case takes no parameters");
    Rational d = case_has_params(cs.id) ? Rational(1) / a : Rational(1);

    switch (cs.id) {
        case CaseId::A1: {
            CaseRecipe r{make_factor(Algebra2d::r2, 0), make_factor(Algebra2d::r2, 0),
                         Algebra4::r4, CanonicalFamily::canonical};
            r.B_cols = {v4(1, 0, 0, 0), v4(0, 1, 0, 0), v4(0, 0, 1, 0), v4(0, 0, 0, 1)};
            r.plus_disp = {v4(1, 0, 0, 0), v4(0, 1, 0, 0)};
            r.minus_disp = {v4(0, 0, 1, 0), v4(0, 0, 0, 1)};
            return r;
        }
        case CaseId::A2: {
            // v1 = e1, v2 = f1, v3 = f2, v0 = -e2 ; angle pi
            CaseRecipe r{make_factor(Algebra2d::r2, 1), make_factor(Algebra2d::r2, 0),
                         Algebra4::g0h, CanonicalFamily::e0, -1, 0};
            r.B_cols = {v4(1, 0, 0, 0), v4(0, 0, 1, 0), v4(0, 0, 0, 1), v4(0, -1, 0, 0)};
            r.plus_disp = {v4(0, 0, 0, 1), v4(1, 0, 0, 0)};   // {v0, v1}
            r.minus_disp = {v4(0, 1, 0, 0), v4(0, 0, 1, 0)};  // {v2, v3}
            return r;
        }
        case CaseId::A3: {
            // master bracket gives [e1, f1] = -e2; take v1 = e1, v2 = f1,
            // v3 = -e2, v0 = -f2 (same spans as the A3 display); angle 0
            CaseRecipe r{make_factor(Algebra2d::r2, 0), make_factor(Algebra2d::r2, 1),
                         Algebra4::g0h, CanonicalFamily::e0, 1, 0};
            r.B_cols = {v4(1, 0, 0, 0), v4(0, 0, 1, 0), v4(0, -1, 0, 0), v4(0, 0, 0, -1)};
            r.plus_disp = {v4(1, 0, 0, 0), v4(0, 0, 1, 0)};   // {v1, v3}
            r.minus_disp = {v4(0, 0, 0, 1), v4(0, 1, 0, 0)};  // {v0, v2}
            return r;
        }
        case CaseId::A4: {
            Rational a3 = a * a * a, a6 = a3 * a3;
            CaseRecipe r{make_factor(Algebra2d::r2, 1), make_factor(Algebra2d::r2, 1),
                         Algebra4::g0h, CanonicalFamily::e0,
                         (a6 - 1) / (a6 + 1), Rational(2) * a3 / (a6 + 1)};
            // v1 = e1, v2 = a f1 + b f2, v3 = a(-a^2 e2 + d^2 f2), v0 = -a(d e2 + a f2)
            r.B_cols = {v4(1, 0, 0, 0), v4(0, 0, a, b), v4(0, -a3, 0, a * d * d),
                        v4(0, -a * d, 0, -a * a)};
            Rational den = a6 + 1;
            r.plus_disp = {v4(1, 0, 0, 0), v4(0, 0, a3 / den, Rational(1) / den)};
            r.minus_disp = {v4(0, 1, 0, 0), v4(0, 0, Rational(-1) / den, a3 / den)};
            return r;
        }
        case CaseId::B1: {
            // v0 = -e1, v1 = -f1, v2 = e2, v3 = f2 ; angle 0, d = 0
            CaseRecipe r{make_factor(Algebra2d::aff, 1), make_factor(Algebra2d::r2, 0),
                         Algebra4::g1h, CanonicalFamily::e1_theta, 1, 0, 0};
            r.B_cols = {v4(-1, 0, 0, 0), v4(0, 0, -1, 0), v4(0, 1, 0, 0), v4(0, 0, 0, 1)};
            r.plus_disp = {v4(1, 0, 0, 0), v4(0, 0, 1, 0)};
            r.minus_disp = {v4(0, 1, 0, 0), v4(0, 0, 0, 1)};
            return r;
        }
        case CaseId::B2: {
            Rational a3 = a * a * a;
            CaseRecipe r{make_factor(Algebra2d::aff, 1), make_factor(Algebra2d::r2, 1),
                         Algebra4::g1h, CanonicalFamily::e1_theta, 1, 0, 1};
            // v0 = -e1 + (a^2/2) f2, v1 = -(a^3/2) e2 - a f1 - b f2, v2 = e2, v3 = d f2
            r.B_cols = {v4(-1, 0, 0, a * a / 2), v4(0, -a3 / 2, -a, -b), v4(0, 1, 0, 0),
                        v4(0, 0, 0, d)};
            r.plus_disp = {v4(1, 0, 0, -a3 / 2), v4(0, 0, 1, 0)};
            r.minus_disp = {v4(0, 1, a3 / 2, 0), v4(0, 0, 0, 1)};
            return r;
        }
        case CaseId::B3: {
            // v0 = 2 e1, v1 = e2, v2 = -2 f1, v3 = f2 (storage v0, v2, v1, v3)
            CaseRecipe r{make_factor(Algebra2d::aff, 2), make_factor(Algebra2d::r2, 0),
                         Algebra4::g2h, CanonicalFamily::e2_theta, 1, 0, 0};
            r.B_cols = {v4(2, 0, 0, 0), v4(0, 0, -2, 0), v4(0, 1, 0, 0), v4(0, 0, 0, 1)};
            r.plus_disp = {v4(1, 0, 0, 0), v4(0, 0, 1, 0)};   // {v0, v1}
            r.minus_disp = {v4(0, 1, 0, 0), v4(0, 0, 0, 1)};  // {v2, v3}
            return r;
        }
        case CaseId::B4: {
            Rational a3 = a * a * a;
            CaseRecipe r{make_factor(Algebra2d::aff, 2), make_factor(Algebra2d::r2, 1),
                         Algebra4::g2h, CanonicalFamily::e2_theta, 1, 0, 1};
            // v0 = 2 e1 - (4/3) a^2 f2, v2 = -((4/3) a^3 e2 + 2a f1 + 2b f2),
            // v1 = e2, v3 = d f2
            r.B_cols = {v4(2, 0, 0, R(-4, 3) * a * a), v4(0, R(-4, 3) * a3, -2 * a, -2 * b),
                        v4(0, 1, 0, 0), v4(0, 0, 0, d)};
            r.plus_disp = {v4(1, 0, 0, R(4, 3) * a3), v4(0, 0, 1, 0)};
            r.minus_disp = {v4(0, 1, R(4, 3) * a3, 0), v4(0, 0, 0, 1)};
            return r;
        }
        case CaseId::B1p: {
            // v0 = -f1, v1 = e1, v2 = e2, v3 = f2 ; angle pi
            CaseRecipe r{make_factor(Algebra2d::r2, 0), make_factor(Algebra2d::aff, 1),
                         Algebra4::g1h, CanonicalFamily::e1_theta, -1, 0, 0};
            r.B_cols = {v4(0, 0, -1, 0), v4(1, 0, 0, 0), v4(0, 1, 0, 0), v4(0, 0, 0, 1)};
            r.plus_disp = {v4(0, 1, 0, 0), v4(0, 0, 1, 0)};   // {v1, v2}
            r.minus_disp = {v4(1, 0, 0, 0), v4(0, 0, 0, 1)};  // {v0, v3}
            return r;
        }
        case CaseId::B2p: {
            Rational d2 = d * d, d3 = d * d * d;
            CaseRecipe r{make_factor(Algebra2d::r2, 1), make_factor(Algebra2d::aff, 1),
                         Algebra4::g1h, CanonicalFamily::e1_shear};
            // v0 = (d^2/2) e2 - f1, v1 = d e1 - b e2 + (d^3/2) f2, v2 = e2, v3 = d f2
            r.B_cols = {v4(0, d2 / 2, -1, 0), v4(d, -b, 0, d3 / 2), v4(0, 1, 0, 0),
                        v4(0, 0, 0, d)};
            r.plus_disp = {v4(0, 1, 0, -d2 / 2), v4(0, 0, 1, 0)};
            r.minus_disp = {v4(-1, 0, d2 / 2, 0), v4(0, 0, 0, 1)};
            return r;
        }
        case CaseId::B3p: {
            // v0 = 2 f1, v1 = f2, v2 = 2 e1, v3 = -e2 ; angle pi
            CaseRecipe r{make_factor(Algebra2d::r2, 0), make_factor(Algebra2d::aff, 2),
                         Algebra4::g2h, CanonicalFamily::e2_theta, -1, 0, 0};
            r.B_cols = {v4(0, 0, 2, 0), v4(2, 0, 0, 0), v4(0, 0, 0, 1), v4(0, -1, 0, 0)};
            r.plus_disp = {v4(0, 1, 0, 0), v4(0, 0, 0, 1)};   // {v2, v3}
            r.minus_disp = {v4(1, 0, 0, 0), v4(0, 0, 1, 0)};  // {v0, v1}
            return r;
        }
        case CaseId::B4p: {
            Rational d2 = d * d, d3 = d * d * d;
            CaseRecipe r{make_factor(Algebra2d::r2, 1), make_factor(Algebra2d::aff, 2),
                         Algebra4::g2h, CanonicalFamily::e2_shear};
            // v0 = -(4/3) d^2 e2 + 2 f1, v2 = 2d e1 - 2b e2 + (4/3) d^3 f2,
            // v1 = f2, v3 = -a e2
            r.B_cols = {v4(0, R(-4, 3) * d2, 2, 0), v4(2 * d, -2 * b, 0, R(4, 3) * d3),
                        v4(0, 0, 0, 1), v4(0, -a, 0, 0)};
            r.plus_disp = {v4(0, -1, R(4, 3) * d3, 0), v4(0, 0, 0, 1)};
            r.minus_disp = {v4(1, 0, 0, R(-4, 3) * d3), v4(0, 0, 1, 0)};
            return r;
        }
        case CaseId::C1: {
            Rational den = a * a + 1;
            CaseRecipe r{make_factor(Algebra2d::aff, 1), make_factor(Algebra2d::aff, 1),
                         Algebra4::g1h, CanonicalFamily::e1_theta,
                         (Rational(1) - a * a) / den, Rational(-2) * a / den,
                         b.is_zero() ? 0 : 1};
            // v0 = -(e1 + a^2 f1)/(a^2+1),
            // v1 = (a(e1 - f1) - a^2 b e2 - b f2)/(a^2+1), v2 = a e2, v3 = f2
            r.B_cols = {v4(Rational(-1) / den, 0, -a * a / den, 0),
                        v4(a / den, -a * a * b / den, -a / den, -b / den),
                        v4(0, a, 0, 0), v4(0, 0, 0, 1)};
            r.plus_disp = {v4(1, -a, 0, -a * b / den), v4(0, 0, 1, 0)};
            r.minus_disp = {v4(1, d, b / den, 0), v4(0, 0, 0, 1)};
            return r;
        }
        case CaseId::C3: {
            Rational den = a * a + 1;
            Rational den3 = Rational(3) * den;
            // the constructed presentation sits at the opposite angle
            // orientation from the C1 pattern: sin t = +2a/(1+a^2) here
            CaseRecipe r{make_factor(Algebra2d::aff, 2), make_factor(Algebra2d::aff, 2),
                         Algebra4::g2h, CanonicalFamily::e2_theta,
                         (Rational(1) - a * a) / den, Rational(2) * a / den,
                         b.is_zero() ? 0 : 1};
            Rational two_den = Rational(2) / den;
            // v0 = (2/(a^2+1)) (e1 - (2a^3 b / 3(a^2+1)) e2 + a^2 f1 + (2ab / 3(a^2+1)) f2)
            Vec v0 = v4(two_den, two_den * (Rational(-2) * a * a * a * b / den3),
                        two_den * a * a, two_den * (Rational(2) * a * b / den3));
            // v2 = (2/(a^2+1)) (a(e1 - f1) - (a^2 b (3a^2+1) / 3(a^2+1)) e2
            //                   - (b (a^2+3) / 3(a^2+1)) f2)
            Vec v2 = v4(two_den * a,
                        two_den * (-a * a * b * (Rational(3) * a * a + 1) / den3),
                        two_den * (-a),
                        two_den * (-b * (a * a + 3) / den3));
            Vec v1 = v4(0, 1, 0, 1);          // e2 + f2
            Vec v3 = v4(0, -a, 0, d);         // -a e2 + d f2
            r.B_cols = {std::move(v0), std::move(v2), std::move(v1), std::move(v3)};
            r.plus_disp = {v4(1, a, 0, Rational(2) * a * a * b / den3), v4(0, 0, 1, -a)};
            r.minus_disp = {v4(1, -d, Rational(-2) * a * b / den3, 0), v4(0, 0, a, 1)};
            return r;
        }
    }
    throw std::invalid_argument("construct_case: unknown case");
}

}  // namespace

CaseResult construct_case(const CaseSpec& cs) {
    CaseRecipe rec = recipe(cs);
    Rational d = case_has_params(cs.id) ? Rational(1) / cs.a : Rational(1);
    Mat phi{{cs.a, Rational(0)}, {cs.b, d}};
    if (!case_has_params(cs.id)) phi = Mat::identity(2);

    MatchedPairSpec spec{rec.u, rec.v, phi};
    BicrossResult bic = build_bicrossproduct(spec);

    Mat B = Mat::from_columns(rec.B_cols);
    auto B_inv = inverse(B);
    if (!B_inv) throw std::logic_error("construct_case: basis change is singular");
    LieAlgebra target = catalog_algebra(rec.target);
    if (!verify_basis_change(bic.algebra, *B_inv, target))
        throw std::logic_error("construct_case: basis change does not map onto the target");

    CaseResult res{std::move(bic), *B_inv, rec.target, rec.family,
                   rec.cos_t, rec.sin_t, rec.d,
                   std::move(rec.plus_disp), std::move(rec.minus_disp)};
    return res;
}

// ---------------------------------------------------------------------------
// Coframes and coordinate metrics
// ---------------------------------------------------------------------------

namespace {

CoframeTerm term(int k, Rational c0, Rational cx, Rational cy, std::size_t mu) {
    return {k, std::move(c0), std::move(cx), std::move(cy), mu};
}

}  // namespace

Coframe coframe(Algebra4 group) {
    Coframe cf;
    cf.group = group;
    switch (group) {
        case Algebra4::r4:
            // constant pseudo-orthonormal frame: the coordinate Gram is
            // diag(1, 1, -1, -1)
            cf.forms[0] = {term(0, 1, 0, 0, 0), term(0, 1, 0, 0, 3)};            // dt + dz
            cf.forms[1] = {term(0, 1, 0, 0, 1), term(0, 1, 0, 0, 2)};            // dx + dy
            cf.forms[2] = {term(0, R(1, 2), 0, 0, 1), term(0, R(-1, 2), 0, 0, 2)};
            cf.forms[3] = {term(0, R(-1, 2), 0, 0, 0), term(0, R(1, 2), 0, 0, 3)};
            break;
        case Algebra4::g0h:
            // storage (v1, v2, v3, v0)
            cf.forms[0] = {term(0, 1, 0, 0, 1)};                                  // dx
            cf.forms[1] = {term(0, 1, 0, 0, 2)};                                  // dy
            cf.forms[2] = {term(0, 0, -1, 0, 2), term(0, 1, 0, 0, 3)};            // -x dy + dz
            cf.forms[3] = {term(0, 1, 0, 0, 0)};                                  // dt
            break;
        case Algebra4::g1h:
            cf.forms[0] = {term(0, 1, 0, 0, 0)};    // dt
            cf.forms[1] = {term(-1, 1, 0, 0, 1)};   // e^-t dx
            cf.forms[2] = {term(1, 1, 0, 0, 2)};    // e^t dy
            cf.forms[3] = {term(1, 1, 0, 0, 3)};    // e^t dz
            break;
        case Algebra4::g2h:
            // storage (v0, v2, v1, v3)
            cf.forms[0] = {term(0, 1, 0, 0, 0)};    // dt
            cf.forms[1] = {term(1, 1, 0, 0, 2)};    // e^t dy
            cf.forms[2] = {term(-2, 1, 0, 0, 1)};   // e^-2t dx
            cf.forms[3] = {term(-1, 1, 0, 0, 3), term(-1, 0, R(-1, 2), 0, 2),
                           term(-1, 0, 0, R(1, 2), 1)};  // e^-t (dz - x/2 dy + y/2 dx)
            break;
    }
    return cf;
}

namespace {

// quadratic coefficient functions e^{kt} (c + cx x + cy y + cxx x^2 + cxy xy + cyy y^2)
struct Poly2 {
    Rational c, cx, cy, cxx, cxy, cyy;
    bool is_zero() const {
        return c.is_zero() && cx.is_zero() && cy.is_zero() && cxx.is_zero() && cxy.is_zero() &&
               cyy.is_zero();
    }
    Poly2& operator+=(const Poly2& o) {
        c += o.c; cx += o.cx; cy += o.cy; cxx += o.cxx; cxy += o.cxy; cyy += o.cyy;
        return *this;
    }
    friend bool operator==(const Poly2&, const Poly2&) = default;
};

Poly2 affine_product(const CoframeTerm& s, const CoframeTerm& t) {
    Poly2 p;
    p.c = s.c0 * t.c0;
    p.cx = s.c0 * t.cx + s.cx * t.c0;
    p.cy = s.c0 * t.cy + s.cy * t.c0;
    p.cxx = s.cx * t.cx;
    p.cxy = s.cx * t.cy + s.cy * t.cx;
    p.cyy = s.cy * t.cy;
    return p;
}

using TwoForm = std::map<std::tuple<int, std::size_t, std::size_t>, Poly2>;

void add_term(TwoForm& f, int k, std::size_t mu, std::size_t nu, const Poly2& val, int sign) {
    if (mu == nu || val.is_zero()) return;
    Poly2 v = val;
    if (mu > nu) {
        std::swap(mu, nu);
        sign = -sign;
    }
    if (sign < 0) {
        Poly2 neg;
        neg.c = -v.c; neg.cx = -v.cx; neg.cy = -v.cy;
        neg.cxx = -v.cxx; neg.cxy = -v.cxy; neg.cyy = -v.cyy;
        v = neg;
    }
    f[{k, mu, nu}] += v;
}

void prune(TwoForm& f) {
    for (auto it = f.begin(); it != f.end();)
        it = it->second.is_zero() ? f.erase(it) : std::next(it);
}

TwoForm exterior_d(const std::vector<CoframeTerm>& form) {
    TwoForm d;
    for (const auto& s : form) {
        // d(e^{kt} (c0 + cx x + cy y) dmu)
        Poly2 kpart;
        kpart.c = Rational(s.exp_t) * s.c0;
        kpart.cx = Rational(s.exp_t) * s.cx;
        kpart.cy = Rational(s.exp_t) * s.cy;
        add_term(d, s.exp_t, 0, s.dmu, kpart, +1);  // dt ^ dmu
        Poly2 xpart; xpart.c = s.cx;
        add_term(d, s.exp_t, 1, s.dmu, xpart, +1);  // dx ^ dmu
        Poly2 ypart; ypart.c = s.cy;
        add_term(d, s.exp_t, 2, s.dmu, ypart, +1);  // dy ^ dmu
    }
    prune(d);
    return d;
}

TwoForm wedge(const std::vector<CoframeTerm>& f, const std::vector<CoframeTerm>& g,
              const Rational& scale) {
    TwoForm w;
    for (const auto& s : f)
        for (const auto& t : g) {
            Poly2 p = affine_product(s, t);
            Poly2 scaled;
            scaled.c = scale * p.c; scaled.cx = scale * p.cx; scaled.cy = scale * p.cy;
            scaled.cxx = scale * p.cxx; scaled.cxy = scale * p.cxy; scaled.cyy = scale * p.cyy;
            add_term(w, s.exp_t + t.exp_t, s.dmu, t.dmu, scaled, +1);
        }
    prune(w);
    return w;
}

}  // namespace

bool coframe_consistent(Algebra4 group) {
    Coframe cf = coframe(group);
    LieAlgebra L = catalog_algebra(group);
    for (std::size_t k = 0; k < 4; ++k) {
        TwoForm lhs = exterior_d(cf.forms[k]);
        TwoForm rhs;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i + 1; j < 4; ++j) {
                Rational coef = L.basis_bracket(i, j)[k];
                if (coef.is_zero()) continue;
                TwoForm w = wedge(cf.forms[i], cf.forms[j], -coef);
                for (auto& [key, val] : w) rhs[key] += val;
            }
        prune(rhs);
        if (lhs != rhs) return false;
    }
    return true;
}

namespace {

double eval_term(const CoframeTerm& s, const std::array<double, 4>& p) {
    double aff = s.c0.to_double() + s.cx.to_double() * p[1] + s.cy.to_double() * p[2];
    return std::exp(static_cast<double>(s.exp_t) * p[0]) * aff;
}

}  // namespace

Mat4d metric_at_point(const CanonicalCPSSpec& spec, const std::array<double, 4>& txyz) {
    for (double c : txyz)
        if (!std::isfinite(c)) throw std::invalid_argument("metric_at_point: non-finite point");
    HSStructure hs = canonical_metric(spec);
    Coframe cf = coframe(spec.algebra);

    double A[4][4] = {};  // A[i][mu]: coefficient of dx^mu in v^i at the point
    for (std::size_t i = 0; i < 4; ++i)
        for (const auto& s : cf.forms[i]) A[i][s.dmu] += eval_term(s, txyz);

    Mat4d G{};
    for (std::size_t mu = 0; mu < 4; ++mu)
        for (std::size_t nu = 0; nu < 4; ++nu) {
            double sum = 0;
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j)
                    sum += hs.metric().matrix()(i, j).to_double() * A[i][mu] * A[j][nu];
            G[mu][nu] = sum;
        }
    return G;
}

Mat4d coordinate_metric_reference(const CanonicalCPSSpec& spec,
                                  const std::array<double, 4>& txyz) {
    validate_spec(spec);
    const double t = txyz[0], x = txyz[1], y = txyz[2];
    const double C = spec.theta.c().to_double(), S = spec.theta.s().to_double();
    Mat4d G{};
    auto set = [&G](int mu, int nu, double v) { G[mu][nu] = v; G[nu][mu] = v; };
    switch (spec.family) {
        case CanonicalFamily::canonical:
            set(0, 0, 1); set(1, 1, 1); set(2, 2, -1); set(3, 3, -1);
            break;
        case CanonicalFamily::e0:
            set(0, 1, C); set(0, 2, -S); set(1, 2, S * x); set(1, 3, -S);
            set(2, 2, 2 * C * x); set(2, 3, -C);
            break;
        case CanonicalFamily::e1_theta:
            set(0, 3, -C * std::exp(t)); set(0, 2, -S * std::exp(t));
            set(1, 3, -S); set(1, 2, C);
            if (spec.d == 1) { set(0, 0, 2 * C); set(1, 1, 2 * C * std::exp(-2 * t)); }
            break;
        case CanonicalFamily::e1_shear:
            set(0, 2, -std::exp(t)); set(1, 3, -1);
            set(0, 0, 2); set(1, 1, 2 * std::exp(-2 * t));
            break;
        case CanonicalFamily::e2_theta:
            set(0, 3, -std::exp(-t)); set(0, 1, -0.5 * y * std::exp(-t));
            set(0, 2, 0.5 * x * std::exp(-t)); set(1, 2, -std::exp(-t));
            if (spec.d == 1) { set(0, 0, 2 * C * C); set(2, 2, 2 * C * C * std::exp(2 * t)); }
            break;
        case CanonicalFamily::e2_shear:
            set(0, 3, std::exp(-t)); set(0, 1, 0.5 * y * std::exp(-t));
            set(0, 2, -0.5 * x * std::exp(-t)); set(1, 2, std::exp(-t));
            set(0, 0, -2); set(2, 2, -2 * std::exp(2 * t));
            break;
    }
    return G;
}

Mat4d headline_metric(int which, const std::array<double, 4>& txyz) {
    const double t = txyz[0], x = txyz[1], y = txyz[2];
    Mat4d G{};
    auto set = [&G](int mu, int nu, double v) { G[mu][nu] = v; G[nu][mu] = v; };
    switch (which) {
        case 1:
            set(0, 0, 1); set(1, 1, 1); set(2, 2, -1); set(3, 3, -1);
            break;
        case 2:
            set(0, 3, std::exp(-t)); set(0, 1, 0.5 * y * std::exp(-t));
            set(0, 2, -0.5 * x * std::exp(-t)); set(1, 2, std::exp(-t));
            break;
        case 3:
            set(0, 3, std::exp(t)); set(1, 2, -1);
            set(0, 0, -2); set(1, 1, -2 * std::exp(-2 * t));
            break;
        default:
            throw std::invalid_argument("headline_metric: which must be 1, 2 or 3");
    }
    return G;
}

CanonicalCPSSpec headline_spec(int which) {
    switch (which) {
        case 1: return CanonicalCPSSpec::r4();
        case 2: return CanonicalCPSSpec::g2h_theta(HalfAngle(1, 0), 0);
        case 3: return CanonicalCPSSpec::g1h_theta(HalfAngle(1, 0), 1);
        default: throw std::invalid_argument("headline_spec: which must be 1, 2 or 3");
    }
}

Rational headline_lambda(int which) {
    switch (which) {
        case 1: return 1;
        case 2: return -1;
        case 3: return -1;
        default: throw std::invalid_argument("headline_lambda: which must be 1, 2 or 3");
    }
}

RestrictionCompleteness restriction_completeness(const HSStructure& hs) {
    FormTriple t = kaehler_forms(hs);
    RestrictionCompleteness out;
    for (bool plus : {true, false}) {
        RestrictedFactor f = plus ? plus_factor(hs.cp()) : minus_factor(hs.cp());
        NormalizedFactor norm = normalize_2d(f.nabla, restrict_form(t.omega1, f.space));
        FamilyTag tag = classify(norm.algebra, norm.coeffs);
        (plus ? out.plus_tag : out.minus_tag) = tag;
    }
    out.incomplete_certified =
        !family_complete(out.plus_tag) || !family_complete(out.minus_tag);
    return out;
}

}  // namespace hslie

#include "hslie/bicrossproduct.hpp"

namespace hslie {

namespace {

Mat require_invertible(const Mat& phi) {
    auto inv = inverse(phi);
    if (!inv) throw std::domain_error("bicrossproduct: singular phi");
    return *inv;
}

Vec embed(const Vec& x, std::size_t offset, std::size_t total) {
    Vec r(total);
    for (std::size_t i = 0; i < x.size(); ++i) r[offset + i] = x[i];
    return r;
}

}  // namespace

void validate(const MatchedPairSpec& spec) {
    if (spec.phi.rows() != spec.v.algebra.dim() || spec.phi.cols() != spec.u.algebra.dim())
        throw std::invalid_argument("MatchedPairSpec: phi shape mismatch");
    require_invertible(spec.phi);
    auto check_factor = [](const FactorData& f, const char* side) {
        if (!is_torsion_free(f.nabla))
            throw StructureError("factor_torsion_free",
                                 std::string("matched pair: ") + side + " connection has torsion");
        if (!is_flat(f.nabla))
            throw StructureError("factor_flat",
                                 std::string("matched pair: ") + side + " connection not flat");
        if (f.omega.symmetry() != Symmetry::antisymmetric || !f.omega.nondegenerate())
            throw StructureError("factor_symplectic",
                                 std::string("matched pair: ") + side + " form not symplectic");
        if (!is_closed(f.algebra, f.omega))
            throw StructureError("factor_symplectic",
                                 std::string("matched pair: ") + side + " form not closed");
        if (!parallel_form_check(f.nabla, f.omega))
            throw StructureError("factor_parallel",
                                 std::string("matched pair: ") + side + " form not parallel");
    };
    check_factor(spec.u, "u");
    check_factor(spec.v, "v");

    std::size_t m = spec.u.algebra.dim();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            Vec ei = unit_vec(m, i), ej = unit_vec(m, j);
            if (spec.u.omega(ei, ej) != spec.v.omega(spec.phi.column(i), spec.phi.column(j)))
                throw StructureError("omega_phi_compatibility",
                                     "matched pair: omega(x,y) != omega'(phi x, phi y)");
        }
}

Representations build_representations(const Connection& nabla_u, const Connection& nabla_v,
                                      const Mat& phi) {
    Mat phi_inv = require_invertible(phi);
    Representations reps;
    for (std::size_t i = 0; i < nabla_u.dim(); ++i)
        reps.rho.push_back(phi * nabla_u.covariant_matrix(unit_vec(nabla_u.dim(), i)) * phi_inv);
    for (std::size_t j = 0; j < nabla_v.dim(); ++j)
        reps.mu.push_back(phi_inv * nabla_v.covariant_matrix(unit_vec(nabla_v.dim(), j)) * phi);
    return reps;
}

std::vector<MatchedPairViolation> check_matched_pair(const LieAlgebra& u, const LieAlgebra& v,
                                                     const Representations& reps) {
    std::vector<MatchedPairViolation> bad;
    std::size_t m = u.dim(), n = v.dim();
    auto rho = [&](const Vec& x) {  // action of x in u on v
        Mat r(n, n);
        for (std::size_t i = 0; i < m; ++i)
            if (!x[i].is_zero()) r = r + x[i] * reps.rho[i];
        return r;
    };
    auto mu = [&](const Vec& a) {  // action of a in v on u
        Mat r(m, m);
        for (std::size_t j = 0; j < n; ++j)
            if (!a[j].is_zero()) r = r + a[j] * reps.mu[j];
        return r;
    };

    // rho(x)[a,b] - [rho(x)a, b] - [a, rho(x)b] + rho(mu(a)x)b - rho(mu(b)x)a = 0
    for (std::size_t xi = 0; xi < m; ++xi)
        for (std::size_t ai = 0; ai < n; ++ai)
            for (std::size_t bi = ai + 1; bi < n; ++bi) {
                Vec x = unit_vec(m, xi), a = unit_vec(n, ai), b = unit_vec(n, bi);
                Vec r = reps.rho[xi] * v.basis_bracket(ai, bi);
                r = vec_sub(r, v.bracket(reps.rho[xi] * a, b));
                r = vec_sub(r, v.bracket(a, reps.rho[xi] * b));
                r = vec_add(r, rho(reps.mu[ai] * x) * b);
                r = vec_sub(r, rho(reps.mu[bi] * x) * a);
                if (!vec_is_zero(r)) bad.push_back({1, xi, ai, bi, std::move(r)});
            }

    // mu(a)[x,y] - [mu(a)x, y] - [x, mu(a)y] + mu(rho(x)a)y - mu(rho(y)a)x = 0
    for (std::size_t ai = 0; ai < n; ++ai)
        for (std::size_t xi = 0; xi < m; ++xi)
            for (std::size_t yi = xi + 1; yi < m; ++yi) {
                Vec a = unit_vec(n, ai), x = unit_vec(m, xi), y = unit_vec(m, yi);
                Vec r = reps.mu[ai] * u.basis_bracket(xi, yi);
                r = vec_sub(r, u.bracket(reps.mu[ai] * x, y));
                r = vec_sub(r, u.bracket(x, reps.mu[ai] * y));
                r = vec_add(r, mu(reps.rho[xi] * a) * y);
                r = vec_sub(r, mu(reps.rho[yi] * a) * x);
                if (!vec_is_zero(r)) bad.push_back({2, ai, xi, yi, std::move(r)});
            }
    return bad;
}

BicrossResult assemble_bicrossproduct(const FactorData& u, const FactorData& v, const Mat& phi) {
    Mat phi_inv = require_invertible(phi);
    Representations reps = build_representations(u.nabla, v.nabla, phi);
    auto bad = check_matched_pair(u.algebra, v.algebra, reps);
    if (!bad.empty())
        throw StructureError("matched_pair",
                             "bicrossproduct: matched-pair identities violated (identity " +
                                 std::to_string(bad[0].identity) + ")");

    std::size_t m = u.algebra.dim(), n = v.algebra.dim(), N = m + n;

    // bracket: [(x,a),(y,b)] = ([x,y] + mu(a)y - mu(b)x, [a,b] + rho(x)b - rho(y)a)
    std::vector<std::vector<Vec>> c(N, std::vector<Vec>(N, Vec(N)));
    auto set_bracket = [&](std::size_t i, std::size_t j, const Vec& val) {
        c[i][j] = val;
        c[j][i] = vec_scale(Rational(-1), val);
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            set_bracket(i, j, embed(u.algebra.basis_bracket(i, j), 0, N));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            set_bracket(m + i, m + j, embed(v.algebra.basis_bracket(i, j), m, N));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // [(e_i, 0), (0, f_j)] = (-mu(f_j) e_i, rho(e_i) f_j)
            Vec uu = vec_scale(Rational(-1), reps.mu[j] * unit_vec(m, i));
            Vec vv = reps.rho[i] * unit_vec(n, j);
            Vec val = vec_add(embed(uu, 0, N), embed(vv, m, N));
            set_bracket(i, m + j, val);
        }

    std::vector<std::string> labels;
    for (const auto& s : u.algebra.basis_labels()) labels.push_back("u." + s);
    for (const auto& s : v.algebra.basis_labels()) labels.push_back("v." + s);
    LieAlgebra sum(N, std::move(labels), std::move(c));

    // J(x, a) = (-phi^{-1} a, phi x);  E = Id on u, -Id on v
    Mat J(N, N), E(N, N);
    for (std::size_t j = 0; j < m; ++j) {
        Vec col = phi.column(j);
        for (std::size_t i = 0; i < n; ++i) J(m + i, j) = col[i];
        E(j, j) = 1;
    }
    for (std::size_t j = 0; j < n; ++j) {
        Vec col = phi_inv.column(j);
        for (std::size_t i = 0; i < m; ++i) J(i, m + j) = -col[i];
        E(m + j, m + j) = -1;
    }

    // g((x,a),(y,b)) = omega(phi^{-1} b, x) + omega(phi^{-1} a, y)
    Mat G(N, N);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational val = u.omega(phi_inv.column(j), unit_vec(m, i));
            G(i, m + j) = val;
            G(m + j, i) = val;
        }

    HSStructure structure(CPStructure(sum, std::move(J), std::move(E)),
                          BilinearForm(std::move(G), Symmetry::symmetric));
    Mat embed_u(N, m), embed_v(N, n);
    for (std::size_t i = 0; i < m; ++i) embed_u(i, i) = 1;
    for (std::size_t i = 0; i < n; ++i) embed_v(m + i, i) = 1;
    return {std::move(sum), std::move(structure), std::move(embed_u), std::move(embed_v)};
}

BicrossResult build_bicrossproduct(const MatchedPairSpec& spec) {
    validate(spec);
    BicrossResult res = assemble_bicrossproduct(spec.u, spec.v, spec.phi);

    if (!check_jacobi(res.algebra).empty())
        throw std::logic_error("bicrossproduct: assembled algebra violates Jacobi");
    ValidationReport rep = verify_hypersymplectic(res.algebra, res.structure.cp().J(),
                                                  res.structure.cp().E(),
                                                  res.structure.metric());
    if (!rep.verdict)
        throw std::logic_error("bicrossproduct: assembled structure failed validation:\n" +
                               rep.to_text());

    // omega1 restricted to the embedded factors must reproduce omega, omega'
    FormTriple t = kaehler_forms(res.structure);
    std::size_t m = spec.u.algebra.dim(), n = spec.v.algebra.dim();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Vec ei = unit_vec(m, i), ej = unit_vec(m, j);
            if (t.omega1(res.embed_u * ei, res.embed_u * ej) != spec.u.omega(ei, ej))
                throw std::logic_error("bicrossproduct: omega1 does not restrict to omega on u");
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec fi = unit_vec(n, i), fj = unit_vec(n, j);
            if (t.omega1(res.embed_v * fi, res.embed_v * fj) != spec.v.omega(fi, fj))
                throw std::logic_error("bicrossproduct: omega1 does not restrict to omega' on v");
        }
    return res;
}

TransportResult transport_equivalence(const Mat& xi, const Mat& xi_prime,
                                      const MatchedPairSpec& spec) {
    std::size_t m = spec.u.algebra.dim(), n = spec.v.algebra.dim();
    auto xi_inv_opt = inverse(xi);
    auto xip_inv_opt = inverse(xi_prime);
    if (!xi_inv_opt || !xip_inv_opt)
        throw std::domain_error("transport_equivalence: singular factor map");
    if (!verify_basis_change(spec.u.algebra, xi, spec.u.algebra) ||
        !verify_basis_change(spec.v.algebra, xi_prime, spec.v.algebra))
        throw StructureError("factor_automorphism",
                             "transport_equivalence: maps are not factor automorphisms");
    const Mat& xi_inv = *xi_inv_opt;
    const Mat& xip_inv = *xip_inv_opt;

    // transported data: nabla-bar_p q = xi nabla_{xi^-1 p} (xi^-1 q), omega-bar = omega(xi^-1 ., xi^-1 .)
    auto transport_factor = [](const FactorData& f, const Mat& map, const Mat& map_inv) {
        std::size_t d = f.algebra.dim();
        std::vector<std::vector<Vec>> gamma(d, std::vector<Vec>(d, Vec(d)));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                gamma[i][j] = map * f.nabla.apply(map_inv.column(i), map_inv.column(j));
        BilinearForm omega_bar(map_inv.transpose() * f.omega.matrix() * map_inv,
                               Symmetry::antisymmetric);
        return FactorData{f.algebra, Connection(f.algebra, std::move(gamma)),
                          std::move(omega_bar)};
    };

    MatchedPairSpec out{transport_factor(spec.u, xi, xi_inv),
                        transport_factor(spec.v, xi_prime, xip_inv),
                        xi_prime * spec.phi * xi_inv};

    // xi must be a symplectic equivalence (original -> transported); re-verified
    if (!verify_symplectic_equivalence(xi, spec.u.nabla, spec.u.omega, out.u.nabla, out.u.omega) ||
        !verify_symplectic_equivalence(xi_prime, spec.v.nabla, spec.v.omega, out.v.nabla,
                                       out.v.omega))
        throw std::logic_error("transport_equivalence: transported data is not equivalent");

    Mat eta(m + n, m + n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) eta(i, j) = xi(i, j);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) eta(m + i, m + j) = xi_prime(i, j);
    return {std::move(out), std::move(eta)};
}

}  // namespace hslie

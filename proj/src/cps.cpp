#include "hslie/cps.hpp"

namespace hslie {

namespace {

void require_square(const Mat& m, std::size_t n, const char* what) {
    if (m.rows() != n || m.cols() != n)
        throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

bool is_pm_identity(const Mat& m) {
    return m == Mat::identity(m.rows()) || m == -Mat::identity(m.rows());
}

}  // namespace

CPStructure::CPStructure(LieAlgebra algebra, Mat J, Mat E)
    : alg_(std::move(algebra)), J_(std::move(J)), E_(std::move(E)) {
    std::size_t n = alg_.dim();
    require_square(J_, n, "CPStructure J");
    require_square(E_, n, "CPStructure E");
    if (J_ * J_ != -Mat::identity(n))
        throw StructureError("J_squared", "CPStructure: J^2 != -Id");
    if (E_ * E_ != Mat::identity(n))
        throw StructureError("E_squared", "CPStructure: E^2 != Id");
    if (is_pm_identity(E_))
        throw StructureError("E_proper", "CPStructure: E = +-Id is not a product structure");
    if (!(J_ * E_ + E_ * J_).is_zero())
        throw StructureError("anticommutation", "CPStructure: JE != -EJ");
}

bool is_complex_structure(const LieAlgebra& L, const Mat& J) {
    std::size_t n = L.dim();
    require_square(J, n, "is_complex_structure");
    if (J * J != -Mat::identity(n))
        throw StructureError("J_squared", "is_complex_structure: J^2 != -Id");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Vec ei = unit_vec(n, i), ej = unit_vec(n, j);
            Vec lhs = J * L.basis_bracket(i, j);
            Vec rhs = vec_add(vec_add(L.bracket(J.column(i), ej), L.bracket(ei, J.column(j))),
                              J * L.bracket(J.column(i), J.column(j)));
            if (lhs != rhs) return false;
        }
    return true;
}

bool is_product_structure(const LieAlgebra& L, const Mat& E) {
    std::size_t n = L.dim();
    require_square(E, n, "is_product_structure");
    if (E * E != Mat::identity(n))
        throw StructureError("E_squared", "is_product_structure: E^2 != Id");
    if (is_pm_identity(E))
        throw StructureError("E_proper", "is_product_structure: E = +-Id");

    bool tensor_ok = true;
    for (std::size_t i = 0; i < n && tensor_ok; ++i)
        for (std::size_t j = i + 1; j < n && tensor_ok; ++j) {
            Vec ei = unit_vec(n, i), ej = unit_vec(n, j);
            Vec lhs = E * L.basis_bracket(i, j);
            Vec rhs = vec_sub(vec_add(L.bracket(E.column(i), ej), L.bracket(ei, E.column(j))),
                              E * L.bracket(E.column(i), E.column(j)));
            if (lhs != rhs) tensor_ok = false;
        }

    // cross-check: integrability <=> both eigenspaces are subalgebras
    auto plus_basis = nullspace(E - Mat::identity(n));
    auto minus_basis = nullspace(E + Mat::identity(n));
    bool eig_ok = is_subalgebra(L, Subspace(L, plus_basis)) &&
                  is_subalgebra(L, Subspace(L, minus_basis));
    if (tensor_ok != eig_ok)
        throw std::logic_error("is_product_structure: tensor and eigenspace criteria disagree");
    return tensor_ok;
}

Splitting split(const CPStructure& cp) {
    const LieAlgebra& L = cp.algebra();
    std::size_t n = cp.dim();
    if (!is_complex_structure(L, cp.J()))
        throw StructureError("complex_integrability", "split: J is not integrable");
    if (!is_product_structure(L, cp.E()))
        throw StructureError("product_integrability", "split: E is not integrable");

    Subspace plus(L, nullspace(cp.E() - Mat::identity(n)));
    Subspace minus(L, nullspace(cp.E() + Mat::identity(n)));
    if (plus.dim() + minus.dim() != n)
        throw std::logic_error("split: eigenspaces do not fill the space");

    std::vector<Vec> j_plus;
    for (const auto& v : plus.vectors()) j_plus.push_back(cp.J() * v);
    if (!spans_equal(j_plus, minus.vectors()))
        throw std::logic_error("split: J(plus) != minus");
    return {std::move(plus), std::move(minus)};
}

std::vector<BilinearForm> compatible_metric_space(const CPStructure& cp) {
    std::size_t n = cp.dim();
    // unknowns: upper triangle of symmetric G
    std::vector<std::pair<std::size_t, std::size_t>> idx;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) idx.emplace_back(i, j);
    std::size_t m = idx.size();

    auto entry = [&](const Mat& A, std::size_t r, std::size_t c, std::size_t u) {
        // coefficient of unknown g_{idx[u]} in (A^T G A)(r, c) = sum A_ir G_ij A_jc
        auto [p, q] = idx[u];
        Rational coef = A(p, r) * A(q, c);
        if (p != q) coef += A(q, r) * A(p, c);
        return coef;
    };

    // rows: for each (r <= c): (J^T G J - G)(r,c) = 0 and (E^T G E + G)(r,c) = 0
    Mat sys(2 * m, m);
    for (std::size_t rc = 0; rc < m; ++rc) {
        auto [r, c] = idx[rc];
        for (std::size_t u = 0; u < m; ++u) {
            auto [p, q] = idx[u];
            Rational direct = (p == r && q == c) || (p == c && q == r) ? Rational(1) : Rational(0);
            sys(rc, u) = entry(cp.J(), r, c, u) - direct;
            sys(m + rc, u) = entry(cp.E(), r, c, u) + direct;
        }
    }

    std::vector<BilinearForm> basis;
    for (const auto& sol : nullspace(sys)) {
        Mat g(n, n);
        for (std::size_t u = 0; u < m; ++u) {
            auto [p, q] = idx[u];
            g(p, q) = sol[u];
            g(q, p) = sol[u];
        }
        basis.emplace_back(std::move(g), Symmetry::symmetric);
    }
    return basis;
}

Mat eigenspace_projector(const CPStructure& cp, bool onto_plus) {
    // P_+ = (Id + E)/2, P_- = (Id - E)/2
    std::size_t n = cp.dim();
    Mat id = Mat::identity(n);
    Rational half(1, 2);
    return onto_plus ? half * (id + cp.E()) : half * (id - cp.E());
}

namespace {

RestrictedFactor make_factor(const CPStructure& cp, bool plus) {
    Splitting sp = split(cp);
    const Subspace& S = plus ? sp.plus : sp.minus;
    Mat proj_other = eigenspace_projector(cp, !plus);

    LieAlgebra sub = subalgebra_in_basis(cp.algebra(), S);
    std::size_t m = S.dim();
    std::vector<std::vector<Vec>> gamma(m, std::vector<Vec>(m, Vec(m)));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const Vec& x = S.vectors()[i];
            Vec jy = cp.J() * S.vectors()[j];
            Vec val = vec_scale(Rational(-1), cp.J() * (proj_other * cp.algebra().bracket(x, jy)));
            auto coords = coordinates_in_span(S.vectors(), val);
            if (!coords)
                throw std::logic_error("induced connection left its eigenspace");
            gamma[i][j] = *coords;
        }
    Connection conn(sub, std::move(gamma));
    return {S, std::move(sub), std::move(conn)};
}

}  // namespace

RestrictedFactor plus_factor(const CPStructure& cp) { return make_factor(cp, true); }
RestrictedFactor minus_factor(const CPStructure& cp) { return make_factor(cp, false); }

BilinearForm restrict_form(const BilinearForm& form, const Subspace& S) {
    std::size_t m = S.dim();
    Mat g(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) g(i, j) = form(S.vectors()[i], S.vectors()[j]);
    return BilinearForm(std::move(g), form.symmetry());
}

}  // namespace hslie

#include "hslie/hypersymplectic.hpp"

#include <algorithm>
#include <sstream>

namespace hslie {

namespace {

bool metric_compatible(const CPStructure& cp, const BilinearForm& g, bool check_J) {
    const Mat& A = check_J ? cp.J() : cp.E();
    Mat lhs = A.transpose() * g.matrix() * A;
    return check_J ? lhs == g.matrix() : lhs == -g.matrix();
}

}  // namespace

HSStructure::HSStructure(CPStructure cp, BilinearForm g)
    : cp_(std::move(cp)), g_(std::move(g)) {
    if (g_.dim() != cp_.dim()) throw std::invalid_argument("HSStructure: dimension mismatch");
    if (g_.symmetry() != Symmetry::symmetric)
        throw StructureError("metric_symmetric", "HSStructure: metric must be symmetric");
    if (!g_.nondegenerate())
        throw StructureError("metric_nondegenerate", "HSStructure: metric is degenerate");
    if (!metric_compatible(cp_, g_, true))
        throw StructureError("metric_J_invariance", "HSStructure: g(Jx,Jy) != g(x,y)");
    if (!metric_compatible(cp_, g_, false))
        throw StructureError("metric_E_anti_invariance", "HSStructure: g(Ex,Ey) != -g(x,y)");
}

FormTriple kaehler_forms(const HSStructure& hs) {
    const Mat& G = hs.metric().matrix();
    Mat w1 = hs.cp().J().transpose() * G;
    Mat w2 = hs.cp().E().transpose() * G;
    Mat w3 = (hs.cp().J() * hs.cp().E()).transpose() * G;
    FormTriple t{BilinearForm(w1, Symmetry::antisymmetric),
                 BilinearForm(w2, Symmetry::antisymmetric),
                 BilinearForm(w3, Symmetry::antisymmetric)};
    if (!t.omega1.nondegenerate() || !t.omega2.nondegenerate() || !t.omega3.nondegenerate())
        throw std::logic_error("kaehler_forms: degenerate form from a nondegenerate metric");
    return t;
}

Rational& ThreeForm::at(std::size_t i, std::size_t j, std::size_t k) {
    if (!(i < j && j < k && k < dim_)) throw std::invalid_argument("ThreeForm::at: need i<j<k");
    return v_[{i, j, k}];
}

Rational ThreeForm::value(std::size_t i, std::size_t j, std::size_t k) const {
    if (i == j || j == k || i == k) return Rational(0);
    std::size_t a = i, b = j, c = k;
    int sign = 1;
    if (a > b) { std::swap(a, b); sign = -sign; }
    if (b > c) { std::swap(b, c); sign = -sign; }
    if (a > b) { std::swap(a, b); sign = -sign; }
    auto it = v_.find({a, b, c});
    if (it == v_.end()) return Rational(0);
    return sign > 0 ? it->second : -it->second;
}

bool ThreeForm::is_zero() const {
    return std::all_of(v_.begin(), v_.end(),
                       [](const auto& kv) { return kv.second.is_zero(); });
}

ThreeForm d_two_form(const LieAlgebra& L, const BilinearForm& omega) {
    if (omega.symmetry() != Symmetry::antisymmetric)
        throw std::invalid_argument("d_two_form: omega must be antisymmetric");
    std::size_t n = L.dim();
    ThreeForm d(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                Vec ei = unit_vec(n, i), ej = unit_vec(n, j), ek = unit_vec(n, k);
                Rational val = -omega(L.basis_bracket(i, j), ek) +
                               omega(L.basis_bracket(i, k), ej) -
                               omega(L.basis_bracket(j, k), ei);
                if (!val.is_zero()) d.at(i, j, k) = val;
            }
    return d;
}

bool is_closed(const LieAlgebra& L, const BilinearForm& omega) {
    return d_two_form(L, omega).is_zero();
}

bool form_symmetry_check(const HSStructure& hs) {
    FormTriple t = kaehler_forms(hs);
    const Mat& J = hs.cp().J();
    const Mat& E = hs.cp().E();
    auto transforms = [&](const BilinearForm& w, const Mat& A, int sign) {
        Mat lhs = A.transpose() * w.matrix() * A;
        return sign > 0 ? lhs == w.matrix() : lhs == -w.matrix();
    };
    if (!transforms(t.omega1, J, +1) || !transforms(t.omega1, E, +1)) return false;
    if (!transforms(t.omega2, J, -1) || !transforms(t.omega2, E, -1)) return false;
    if (!transforms(t.omega3, J, -1) || !transforms(t.omega3, E, +1)) return false;

    Splitting sp = split(hs.cp());
    for (const auto& p : sp.plus.vectors()) {
        for (const auto& m : sp.minus.vectors()) {
            if (!t.omega1(p, m).is_zero()) return false;   // omega1 vanishes across
            if (!t.omega3(p, m).is_zero()) return false;   // omega3 vanishes across
        }
        for (const auto& p2 : sp.plus.vectors())
            if (!t.omega2(p, p2).is_zero()) return false;  // omega2 vanishes on plus
    }
    for (const auto& m : sp.minus.vectors())
        for (const auto& m2 : sp.minus.vectors())
            if (!t.omega2(m, m2).is_zero()) return false;  // omega2 vanishes on minus
    return true;
}

bool reconstruction_check(const HSStructure& hs) {
    FormTriple t = kaehler_forms(hs);
    Splitting sp = split(hs.cp());
    const Mat& J = hs.cp().J();
    auto omega_plus = [&](const Vec& x, const Vec& y) { return t.omega1(x, y); };

    // omega_+(x,y) = omega_-(Jx,Jy) on the plus factor
    for (const auto& x : sp.plus.vectors())
        for (const auto& y : sp.plus.vectors())
            if (omega_plus(x, y) != t.omega1(J * x, J * y)) return false;

    // reconstruction on a basis of plus (+) J(plus): elements x + Jx'
    const auto& basis = sp.plus.vectors();
    std::size_t m = basis.size();
    auto component = [&](std::size_t a) -> std::pair<Vec, Vec> {
        // a < m: (basis[a], 0); else (0, basis[a-m]) as the (x, x') pair
        Vec zero = zero_vec(hs.dim());
        if (a < m) return {basis[a], zero};
        return {zero, basis[a - m]};
    };
    for (std::size_t a = 0; a < 2 * m; ++a)
        for (std::size_t b = 0; b < 2 * m; ++b) {
            auto [x, xp] = component(a);
            auto [y, yp] = component(b);
            Vec u = vec_add(x, J * xp), v = vec_add(y, J * yp);
            if (t.omega1(u, v) != omega_plus(x, y) + omega_plus(xp, yp)) return false;
            if (t.omega2(u, v) != -omega_plus(x, yp) + omega_plus(y, xp)) return false;
            if (t.omega3(u, v) != omega_plus(x, y) - omega_plus(xp, yp)) return false;
        }
    return true;
}

ClosednessReport closedness_battery(const HSStructure& hs) {
    FormTriple t = kaehler_forms(hs);
    const LieAlgebra& L = hs.algebra();
    ClosednessReport r;
    r.d_omega1_zero = is_closed(L, t.omega1);
    r.d_omega2_zero = is_closed(L, t.omega2);
    r.d_omega3_zero = is_closed(L, t.omega3);

    RestrictedFactor plus = plus_factor(hs.cp());
    RestrictedFactor minus = minus_factor(hs.cp());
    BilinearForm wp = restrict_form(t.omega1, plus.space);
    BilinearForm wm = restrict_form(t.omega1, minus.space);
    r.plus_parallel = parallel_form_check(plus.nabla, wp);
    r.minus_parallel = parallel_form_check(minus.nabla, wm);
    return r;
}

bool battery_pattern_holds(const ClosednessReport& r) {
    bool parallel = r.plus_parallel && r.minus_parallel;
    if (r.d_omega1_zero != r.d_omega3_zero) return false;
    if (r.d_omega1_zero != parallel) return false;
    if (r.d_omega1_zero && !r.d_omega2_zero) return false;
    return true;
}

std::string ValidationReport::to_text() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << c.name << ": " << (c.pass ? "pass" : "fail");
        if (!c.pass && !c.witness.empty()) os << "  [" << c.witness << "]";
        os << "\n";
    }
    os << "verdict: " << (verdict ? "pass" : "fail") << "\n";
    return os.str();
}

ValidationReport verify_hypersymplectic(const LieAlgebra& L, const Mat& J, const Mat& E,
                                        const BilinearForm& g) {
    ValidationReport rep;
    auto add = [&rep](std::string name, bool pass, std::string witness = "") {
        rep.checks.push_back({std::move(name), pass, std::move(witness)});
    };
    std::size_t n = L.dim();

    {
        auto bad = check_jacobi(L);
        std::string w;
        if (!bad.empty())
            w = "triple (" + std::to_string(bad[0].i) + "," + std::to_string(bad[0].j) + "," +
                std::to_string(bad[0].k) + ")";
        add("jacobi", bad.empty(), w);
    }

    bool j_sq = (J.rows() == n && J.cols() == n && J * J == -Mat::identity(n));
    add("J_squared", j_sq);
    bool e_sq = (E.rows() == n && E.cols() == n && E * E == Mat::identity(n));
    add("E_squared", e_sq);
    bool e_proper = e_sq && E != Mat::identity(n) && E != -Mat::identity(n);
    add("E_proper", e_proper);
    bool anti = j_sq && e_sq && (J * E + E * J).is_zero();
    add("anticommutation", anti);

    bool j_int = j_sq && is_complex_structure(L, J);
    add("complex_integrability", j_int);
    bool e_int = false;
    if (e_proper) {
        try {
            e_int = is_product_structure(L, E);
        } catch (const StructureError&) {
            e_int = false;
        }
    }
    add("product_integrability", e_int);

    bool sym = g.symmetry() == Symmetry::symmetric;
    add("metric_symmetric", sym);
    bool nondeg = sym && g.nondegenerate();
    add("metric_nondegenerate", nondeg);

    bool compat_j = false, compat_e = false;
    std::string wj, we;
    if (j_sq && sym) {
        Mat lhs = J.transpose() * g.matrix() * J;
        compat_j = lhs == g.matrix();
        if (!compat_j)
            for (std::size_t i = 0; i < n && wj.empty(); ++i)
                for (std::size_t jj = 0; jj < n && wj.empty(); ++jj)
                    if (lhs(i, jj) != g.matrix()(i, jj))
                        wj = "entry (" + std::to_string(i) + "," + std::to_string(jj) + ")";
    }
    add("metric_J_invariance", compat_j, wj);
    if (e_sq && sym) {
        Mat lhs = E.transpose() * g.matrix() * E;
        compat_e = lhs == -g.matrix();
        if (!compat_e)
            for (std::size_t i = 0; i < n && we.empty(); ++i)
                for (std::size_t jj = 0; jj < n && we.empty(); ++jj)
                    if (lhs(i, jj) != -g.matrix()(i, jj))
                        we = "entry (" + std::to_string(i) + "," + std::to_string(jj) + ")";
    }
    add("metric_E_anti_invariance", compat_e, we);

    bool structural = rep.checks[0].pass && j_sq && e_sq && e_proper && anti && j_int && e_int &&
                      sym && nondeg && compat_j && compat_e;
    if (structural) {
        HSStructure hs(CPStructure(L, J, E), g);
        FormTriple t = kaehler_forms(hs);
        const char* names[3] = {"omega1_closed", "omega2_closed", "omega3_closed"};
        const BilinearForm* forms[3] = {&t.omega1, &t.omega2, &t.omega3};
        bool all_closed = true;
        for (int f = 0; f < 3; ++f) {
            ThreeForm d = d_two_form(L, *forms[f]);
            std::string w;
            if (!d.is_zero()) {
                all_closed = false;
                for (std::size_t i = 0; i < n && w.empty(); ++i)
                    for (std::size_t j = i + 1; j < n && w.empty(); ++j)
                        for (std::size_t k = j + 1; k < n && w.empty(); ++k)
                            if (!d.value(i, j, k).is_zero())
                                w = "d omega(" + std::to_string(i) + "," + std::to_string(j) +
                                    "," + std::to_string(k) + ") = " + d.value(i, j, k).str();
            }
            add(names[f], d.is_zero(), w);
        }
        rep.verdict = all_closed;
    } else {
        add("omega1_closed", false, "skipped: structural checks failed");
        add("omega2_closed", false, "skipped: structural checks failed");
        add("omega3_closed", false, "skipped: structural checks failed");
        rep.verdict = false;
    }
    return rep;
}

bool verify_structure_equivalence(const Mat& xi, const HSStructure& A, const HSStructure& B) {
    std::size_t n = A.dim();
    if (B.dim() != n || xi.rows() != n || xi.cols() != n)
        throw std::invalid_argument("verify_structure_equivalence: dimension mismatch");
    if (det(xi).is_zero())
        throw std::domain_error("verify_structure_equivalence: singular xi");

    if (!verify_basis_change(A.algebra(), xi, B.algebra())) return false;
    if (xi * A.cp().J() != B.cp().J() * xi) return false;
    if (xi * A.cp().E() != B.cp().E() * xi) return false;
    if (xi.transpose() * B.metric().matrix() * xi != A.metric().matrix()) return false;

    // consequence: the form triples correspond under xi
    FormTriple ta = kaehler_forms(A), tb = kaehler_forms(B);
    const BilinearForm* fa[3] = {&ta.omega1, &ta.omega2, &ta.omega3};
    const BilinearForm* fb[3] = {&tb.omega1, &tb.omega2, &tb.omega3};
    for (int f = 0; f < 3; ++f)
        if (xi.transpose() * fb[f]->matrix() * xi != fa[f]->matrix())
            throw std::logic_error(
                "verify_structure_equivalence: form correspondence failed after the defining "
                "identities passed");
    return true;
}

}  // namespace hslie

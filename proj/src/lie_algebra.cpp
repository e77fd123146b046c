#include "hslie/lie_algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace hslie {

LieAlgebra::LieAlgebra(std::size_t dim, std::vector<std::string> basis_labels,
                       std::vector<std::vector<Vec>> brackets)
    : dim_(dim), labels_(std::move(basis_labels)), c_(std::move(brackets)) {
    if (labels_.empty()) {
        labels_.resize(dim_);
        for (std::size_t i = 0; i < dim_; ++i) labels_[i] = "e" + std::to_string(i + 1);
    }
    if (labels_.size() != dim_) throw std::invalid_argument("LieAlgebra: label count != dim");
    if (c_.size() != dim_) throw std::invalid_argument("LieAlgebra: bracket table shape");
    for (auto& row : c_) {
        if (row.size() != dim_) throw std::invalid_argument("LieAlgebra: bracket table shape");
        for (auto& v : row)
            if (v.size() != dim_) throw std::invalid_argument("LieAlgebra: bracket value length");
    }
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            if (c_[i][j] != vec_scale(Rational(-1), c_[j][i]))
                throw std::invalid_argument("LieAlgebra: structure constants not antisymmetric");
}

LieAlgebra LieAlgebra::from_brackets(
    std::size_t dim, std::vector<std::string> basis_labels,
    const std::vector<std::tuple<std::size_t, std::size_t, Vec>>& entries) {
    std::vector<std::vector<Vec>> c(dim, std::vector<Vec>(dim, Vec(dim)));
    for (const auto& [i, j, v] : entries) {
        if (i >= dim || j >= dim || v.size() != dim)
            throw std::invalid_argument("from_brackets: bad entry shape");
        c.at(i).at(j) = v;
        c.at(j).at(i) = vec_scale(Rational(-1), v);
    }
    return LieAlgebra(dim, std::move(basis_labels), std::move(c));
}

LieAlgebra LieAlgebra::abelian(std::size_t dim) {
    return LieAlgebra(dim, {}, std::vector<std::vector<Vec>>(dim, std::vector<Vec>(dim, Vec(dim))));
}

std::size_t LieAlgebra::label_index(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return i;
    throw std::out_of_range("LieAlgebra: no basis label '" + std::string(label) + "'");
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
    if (x.size() != dim_ || y.size() != dim_)
        throw std::invalid_argument("bracket: dimension mismatch");
    Vec r(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (y[j].is_zero() || vec_is_zero(c_[i][j])) continue;
            Rational f = x[i] * y[j];
            for (std::size_t k = 0; k < dim_; ++k) r[k] += f * c_[i][j][k];
        }
    }
    return r;
}

Mat LieAlgebra::ad(const Vec& x) const {
    Mat m(dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
        Vec col = bracket(x, unit_vec(dim_, j));
        for (std::size_t i = 0; i < dim_; ++i) m(i, j) = col[i];
    }
    return m;
}

bool LieAlgebra::is_abelian() const {
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i + 1; j < dim_; ++j)
            if (!vec_is_zero(c_[i][j])) return false;
    return true;
}

std::vector<JacobiViolation> check_jacobi(const LieAlgebra& L) {
    std::vector<JacobiViolation> bad;
    std::size_t n = L.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                Vec ei = unit_vec(n, i), ej = unit_vec(n, j), ek = unit_vec(n, k);
                Vec r = L.bracket(L.basis_bracket(i, j), ek);
                r = vec_add(r, L.bracket(L.basis_bracket(j, k), ei));
                r = vec_add(r, L.bracket(L.basis_bracket(k, i), ej));
                if (!vec_is_zero(r)) bad.push_back({i, j, k, std::move(r)});
            }
    return bad;
}

LieAlgebra named_algebra(std::string_view name) {
    auto e = [](std::size_t n, std::size_t i) { return unit_vec(n, i); };
    if (name == "R2") return LieAlgebra::abelian(2);
    if (name == "R4") return LieAlgebra::abelian(4);
    if (name == "aff") {
        // [e1, e2] = e2
        return LieAlgebra::from_brackets(2, {"e1", "e2"}, {{0, 1, e(2, 1)}});
    }
    if (name == "h3R") {
        // central extension of the Heisenberg algebra: [v1, v2] = v3.
        // Stored in the catalog order v1, v2, v3, v0.
        return LieAlgebra::from_brackets(4, {"v1", "v2", "v3", "v0"}, {{0, 1, e(4, 2)}});
    }
    if (name == "g1h") {
        // [v0,v1] = v1, [v0,v2] = -v2, [v0,v3] = -v3
        return LieAlgebra::from_brackets(
            4, {"v0", "v1", "v2", "v3"},
            {{0, 1, e(4, 1)}, {0, 2, vec_scale(-1, e(4, 2))}, {0, 3, vec_scale(-1, e(4, 3))}});
    }
    if (name == "g2h") {
        // [v0,v1] = 2v1, [v0,v2] = -v2, [v0,v3] = v3, [v1,v2] = v3.
        // Stored in the catalog order v0, v2, v1, v3.
        return LieAlgebra::from_brackets(
            4, {"v0", "v2", "v1", "v3"},
            {{0, 2, vec_scale(2, e(4, 2))},   // [v0, v1] = 2 v1
             {0, 1, vec_scale(-1, e(4, 1))},  // [v0, v2] = -v2
             {0, 3, e(4, 3)},                 // [v0, v3] = v3
             {2, 1, e(4, 3)}});               // [v1, v2] = v3
    }
    throw std::invalid_argument("named_algebra: unknown name '" + std::string(name) + "'");
}

bool verify_basis_change(const LieAlgebra& src, const Mat& P, const LieAlgebra& dst) {
    if (src.dim() != dst.dim() || P.rows() != src.dim() || P.cols() != src.dim())
        throw std::invalid_argument("verify_basis_change: dimension mismatch");
    if (det(P).is_zero()) throw std::domain_error("verify_basis_change: singular matrix");
    std::size_t n = src.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Vec lhs = P * src.basis_bracket(i, j);
            Vec rhs = dst.bracket(P.column(i), P.column(j));
            if (lhs != rhs) return false;
        }
    return true;
}

namespace {

// Basis of span{[x, y] : x in A, y in B}.
std::vector<Vec> bracket_span(const LieAlgebra& L, const std::vector<Vec>& A,
                              const std::vector<Vec>& B) {
    std::vector<Vec> gens;
    for (const auto& x : A)
        for (const auto& y : B) {
            Vec b = L.bracket(x, y);
            if (!vec_is_zero(b)) gens.push_back(std::move(b));
        }
    if (gens.empty()) return {};
    // reduce to an independent subset
    std::vector<Vec> basis;
    for (auto& g : gens) {
        basis.push_back(g);
        if (!linearly_independent(basis)) basis.pop_back();
    }
    return basis;
}

std::vector<Vec> full_basis(std::size_t n) {
    std::vector<Vec> b;
    for (std::size_t i = 0; i < n; ++i) b.push_back(unit_vec(n, i));
    return b;
}

}  // namespace

AlgebraInvariants invariants(const LieAlgebra& L) {
    AlgebraInvariants inv;
    std::size_t n = L.dim();

    std::vector<Vec> d = full_basis(n);
    inv.derived_series_dims.push_back(d.size());
    while (!d.empty()) {
        auto next = bracket_span(L, d, d);
        if (next.size() == d.size()) break;  // stabilized (non-solvable tail)
        d = next;
        inv.derived_series_dims.push_back(d.size());
    }

    std::vector<Vec> c = full_basis(n);
    inv.lower_central_dims.push_back(c.size());
    while (!c.empty()) {
        auto next = bracket_span(L, full_basis(n), c);
        if (next.size() == c.size()) break;
        c = next;
        inv.lower_central_dims.push_back(c.size());
    }

    // center: x with ad_x = 0, i.e. sum_i x_i c^k_ij = 0 for all (j, k)
    Mat sys(n * n, n);
    for (std::size_t i = 0; i < n; ++i) {
        Mat adei = L.ad(unit_vec(n, i));
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) sys(k * n + j, i) = adei(k, j);
    }
    inv.center_dim = nullspace(sys).size();

    inv.unimodular = true;
    for (std::size_t i = 0; i < n; ++i) {
        Mat adei = L.ad(unit_vec(n, i));
        Rational tr;
        for (std::size_t k = 0; k < n; ++k) tr += adei(k, k);
        if (!tr.is_zero()) { inv.unimodular = false; break; }
    }
    return inv;
}

Subspace::Subspace(const LieAlgebra& parent, std::vector<Vec> spanning)
    : ambient_(parent.dim()), vs_(std::move(spanning)) {
    for (const auto& v : vs_)
        if (v.size() != ambient_) throw std::invalid_argument("Subspace: vector length mismatch");
    if (!linearly_independent(vs_))
        throw std::invalid_argument("Subspace: spanning set is linearly dependent");
}

bool Subspace::contains(const Vec& v) const {
    return coordinates_in_span(vs_, v).has_value();
}

bool is_subalgebra(const LieAlgebra& L, const Subspace& S) {
    for (std::size_t i = 0; i < S.dim(); ++i)
        for (std::size_t j = i + 1; j < S.dim(); ++j)
            if (!S.contains(L.bracket(S.vectors()[i], S.vectors()[j]))) return false;
    return true;
}

LieAlgebra subalgebra_in_basis(const LieAlgebra& L, const Subspace& S,
                               std::vector<std::string> labels) {
    std::size_t m = S.dim();
    std::vector<std::vector<Vec>> c(m, std::vector<Vec>(m, Vec(m)));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            auto coords = coordinates_in_span(S.vectors(), L.bracket(S.vectors()[i], S.vectors()[j]));
            if (!coords) throw std::domain_error("subalgebra_in_basis: not closed under bracket");
            c[i][j] = *coords;
        }
    return LieAlgebra(m, std::move(labels), std::move(c));
}

}  // namespace hslie

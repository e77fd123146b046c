#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hslie/linalg.hpp"

namespace hslie {

/// Finite-dimensional real Lie algebra given by structure constants
/// [e_i, e_j] = sum_k c^k_ij e_k. Antisymmetry is enforced at construction;
/// the Jacobi identity is a checked property (see check_jacobi).
class LieAlgebra {
public:
    LieAlgebra(std::size_t dim, std::vector<std::string> basis_labels,
               std::vector<std::vector<Vec>> brackets);

    /// Sparse constructor: entries (i, j, value of [e_i, e_j]); the
    /// antisymmetric counterparts are filled in automatically.
    static LieAlgebra from_brackets(std::size_t dim, std::vector<std::string> basis_labels,
                                    const std::vector<std::tuple<std::size_t, std::size_t, Vec>>& entries);

    static LieAlgebra abelian(std::size_t dim);

    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& basis_labels() const { return labels_; }
    std::size_t label_index(std::string_view label) const;

    const Vec& basis_bracket(std::size_t i, std::size_t j) const { return c_[i][j]; }
    Vec bracket(const Vec& x, const Vec& y) const;

    /// Matrix of ad_x : y -> [x, y].
    Mat ad(const Vec& x) const;

    bool is_abelian() const;

    friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
        return a.dim_ == b.dim_ && a.c_ == b.c_;
    }

private:
    std::size_t dim_;
    std::vector<std::string> labels_;
    std::vector<std::vector<Vec>> c_;  // c_[i][j] = [e_i, e_j]
};

struct JacobiViolation {
    std::size_t i, j, k;
    Vec residual;  // [[ei,ej],ek] + [[ej,ek],ei] + [[ek,ei],ej]
};

/// Exact Jacobi check on all basis triples; empty result = pass.
std::vector<JacobiViolation> check_jacobi(const LieAlgebra& L);

/// Catalog algebras: "R2", "R4", "aff", "h3R", "g1h", "g2h".
/// Basis labels carry the conventional names; the storage order is the one
/// the 4-d structure catalog uses ("h3R": v1,v2,v3,v0; "g2h": v0,v2,v1,v3).
LieAlgebra named_algebra(std::string_view name);

/// True iff P (columns = images of src basis vectors, in dst coordinates) is
/// a Lie algebra isomorphism: P[x,y]_src = [Px,Py]_dst on basis pairs.
/// Throws on singular P.
bool verify_basis_change(const LieAlgebra& src, const Mat& P, const LieAlgebra& dst);

struct AlgebraInvariants {
    std::vector<std::size_t> derived_series_dims;   // dim g, dim [g,g], ... until stable
    std::vector<std::size_t> lower_central_dims;    // dim g, dim [g,g], dim [g,[g,g]], ...
    std::size_t center_dim = 0;
    bool unimodular = false;

    bool abelian() const { return derived_series_dims.size() <= 1 || derived_series_dims[1] == 0; }
    bool nilpotent() const { return lower_central_dims.back() == 0; }
    bool solvable() const { return derived_series_dims.back() == 0; }
    /// Smallest k with C^k = 0 (nilpotency class), or 0 if not nilpotent.
    std::size_t nilpotency_class() const { return nilpotent() ? lower_central_dims.size() - 1 : 0; }
    std::size_t solvability_steps() const { return solvable() ? derived_series_dims.size() - 1 : 0; }
};

AlgebraInvariants invariants(const LieAlgebra& L);

/// Subspace of a Lie algebra, given by an independent spanning set.
class Subspace {
public:
    Subspace(const LieAlgebra& parent, std::vector<Vec> spanning);

    const std::vector<Vec>& vectors() const { return vs_; }
    std::size_t dim() const { return vs_.size(); }
    std::size_t ambient_dim() const { return ambient_; }

    bool contains(const Vec& v) const;
    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && spans_equal(a.vs_, b.vs_);
    }

private:
    std::size_t ambient_;
    std::vector<Vec> vs_;
};

/// True iff the bracket of any two spanning vectors stays in the span.
bool is_subalgebra(const LieAlgebra& L, const Subspace& S);

/// The bracket table of a subalgebra expressed in the coordinates of its
/// spanning set. Throws if S is not a subalgebra.
LieAlgebra subalgebra_in_basis(const LieAlgebra& L, const Subspace& S,
                               std::vector<std::string> labels = {});

}  // namespace hslie

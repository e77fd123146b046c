#pragma once

#include <string>
#include <vector>

#include "hslie/connection.hpp"

namespace hslie {

struct StructureError : std::invalid_argument {
    std::string identity;  // which identity failed ("J_squared", "anticommutation", ...)
    StructureError(std::string id, const std::string& msg)
        : std::invalid_argument(msg), identity(std::move(id)) {}
};

/// Anticommuting pair {J, E} with J^2 = -Id, E^2 = Id, E != +-Id; the
/// algebraic identities are checked at construction, integrability is not.
class CPStructure {
public:
    CPStructure(LieAlgebra algebra, Mat J, Mat E);

    const LieAlgebra& algebra() const { return alg_; }
    const Mat& J() const { return J_; }
    const Mat& E() const { return E_; }
    std::size_t dim() const { return alg_.dim(); }

private:
    LieAlgebra alg_;
    Mat J_, E_;
};

/// J[x,y] = [Jx,y] + [x,Jy] + J[Jx,Jy] on all basis pairs.
/// Pre: J^2 = -Id (throws StructureError otherwise).
bool is_complex_structure(const LieAlgebra& L, const Mat& J);

/// E[x,y] = [Ex,y] + [x,Ey] - E[Ex,Ey] on all basis pairs; cross-checked
/// against both eigenspaces being subalgebras.
/// Pre: E^2 = Id, E != +-Id.
bool is_product_structure(const LieAlgebra& L, const Mat& E);

struct Splitting {
    Subspace plus;
    Subspace minus;
};

/// Eigenspace decomposition of an integrable structure; verifies
/// plus (+) minus = everything and J(plus) = minus.
Splitting split(const CPStructure& cp);

/// Basis of the space of symmetric G with J^T G J = G and E^T G E = -G.
/// Callers filter for nondegeneracy.
std::vector<BilinearForm> compatible_metric_space(const CPStructure& cp);

/// Projections onto the eigenspace factors (columns = images of basis vectors).
Mat eigenspace_projector(const CPStructure& cp, bool onto_plus);

/// A 2-sided restriction package: the eigenspace as an algebra in its own
/// basis, with the induced torsion-free flat connection of the pair {J, E}.
/// The induced connection is computed from brackets and J alone:
///   plus:  nabla_x y = -J P_minus [x, Jy]
///   minus: nabla_a b = -J P_plus  [a, Jb]
struct RestrictedFactor {
    Subspace space;
    LieAlgebra algebra;    // brackets in the coordinates of space.vectors()
    Connection nabla;      // induced connection in the same coordinates
};

RestrictedFactor plus_factor(const CPStructure& cp);
RestrictedFactor minus_factor(const CPStructure& cp);

/// Restriction of a bilinear form to a subspace, in the subspace coordinates.
BilinearForm restrict_form(const BilinearForm& form, const Subspace& S);

}  // namespace hslie

#pragma once

#include <array>
#include <optional>

#include "hslie/connection.hpp"

namespace hslie {

/// Connection coefficients on a 2-d algebra in the basis {e1, e2}:
///   nabla_{e1} e1 = a e1 + b e2
///   nabla_{e1} e2 = c e1 + d e2
///   nabla_{e2} e2 = g e1 + h e2
/// On the abelian algebra torsion-freeness gives nabla_{e2} e1 = nabla_{e1} e2;
/// on aff it forces nabla_{e2} e1 = c e1 + (d-1) e2.
struct Coeff2d {
    Rational a, b, c, d, g, h;
};

enum class Algebra2d { r2, aff };

enum class Family2d { zero, a, b, c };  // aff admits only a, b

struct FamilyTag {
    Algebra2d algebra = Algebra2d::r2;
    Family2d family = Family2d::zero;
    std::vector<Rational> params;  // r2: a->(alpha), b->(alpha), c->(alpha, beta); aff: (alpha)

    friend bool operator==(const FamilyTag&, const FamilyTag&) = default;
};

/// Residuals whose simultaneous vanishing characterizes a flat torsion-free
/// connection preserving e^1 ^ e^2. Order: (d+a, h+c, then the three flatness
/// residuals of the algebra's reduced system).
std::vector<Rational> residuals_r2(const Coeff2d& co);
std::vector<Rational> residuals_aff(const Coeff2d& co);

LieAlgebra algebra_of(Algebra2d which);

/// The canonical symplectic form e^1 ^ e^2.
BilinearForm canonical_omega2();

/// Connection built from the coefficient block (with the forced
/// nabla_{e2} e1 on aff).
Connection connection_from_coeffs(Algebra2d which, const Coeff2d& co);

Coeff2d coeffs_of_connection(const Connection& C, Algebra2d which);

struct Family2dData {
    Connection nabla;
    BilinearForm omega;  // always e^1 ^ e^2
};

/// The classified families:
///  r2 (a):  nabla_{e1}e1 = alpha e2                        (alpha != 0)
///  r2 (b):  nabla_{e2}e2 = alpha e1                        (alpha != 0)
///  r2 (c):  nabla_{e1}e1 = alpha e1 + beta e2, nabla_{e1}e2 = -(alpha/beta)(alpha e1 + beta e2),
///           nabla_{e2}e2 = (alpha^2/beta^2)(alpha e1 + beta e2)   (alpha, beta != 0)
///  aff (a): nabla_{e1}e1 = -e1 + alpha e2, nabla_{e1}e2 = e2
///  aff (b): nabla_{e1}e1 = -1/2 e1 + alpha e2, nabla_{e1}e2 = 1/2 e2, nabla_{e2}e1 = -1/2 e2
/// The output is re-verified: zero residuals, flat, torsion-free, parallel form.
Family2dData make_family(const FamilyTag& tag);

struct NotClassifiable : std::domain_error {
    using std::domain_error::domain_error;
};

/// Decision procedure from a zero-residual coefficient block to its unique
/// family tag (throws NotClassifiable when the residuals do not vanish).
/// make_family(classify(...)) reproduces the input exactly.
FamilyTag classify(Algebra2d which, const Coeff2d& co);

enum class CanonicalTarget { nabla0, nabla1, nabla2 };

/// nabla0 on R^2: nabla_{e1}e1 = e2.
/// nabla1 on aff: nabla_{e1}e1 = -e1, nabla_{e1}e2 = e2.
/// nabla2 on aff: nabla_{e1}e1 = -1/2 e1, nabla_{e1}e2 = 1/2 e2, nabla_{e2}e1 = -1/2 e2.
Connection canonical_connection(CanonicalTarget t);

struct CanonicalWitness {
    CanonicalTarget target;
    std::optional<Mat> exact_xi;                 // present when the witness is rational
    std::array<std::array<double, 2>, 2> xi_float;  // always filled
};

/// Equivalence witness onto the canonical connection. For the r2 families the
/// exact witness needs a rational cube root of the parameter; otherwise only
/// the float witness is returned. Throws for the zero family (no target).
CanonicalWitness canonical_witness(const FamilyTag& tag);

/// Completeness of the geodesic flow, per classification: every r2 family is
/// complete, both aff families are not.
bool family_complete(const FamilyTag& tag);

/// Normalization of a 2-d factor to the classification presentation: a basis
/// change to {e1, e2} with [e1,e2] = e2 (or abelian) and omega = e^1 ^ e^2,
/// with the transported connection's coefficient block.
struct NormalizedFactor {
    Algebra2d algebra;
    Coeff2d coeffs;
    Mat new_basis;  // columns = canonical basis vectors in the old coordinates
};

NormalizedFactor normalize_2d(const Connection& nabla, const BilinearForm& omega);

}  // namespace hslie

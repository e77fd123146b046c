#pragma once

#include "hslie/hypersymplectic.hpp"

namespace hslie {

/// One side of a matched pair: a Lie algebra with a connection and a
/// nondegenerate antisymmetric form.
struct FactorData {
    LieAlgebra algebra;
    Connection nabla;
    BilinearForm omega;
};

/// Construction data: two factors and the gluing isomorphism phi : u -> v.
/// Hypotheses (flat, torsion-free, parallel forms, omega-phi compatibility)
/// are validated by `validate`, and by build_bicrossproduct before assembly.
struct MatchedPairSpec {
    FactorData u, v;
    Mat phi;
};

/// Throws StructureError naming the violated hypothesis.
void validate(const MatchedPairSpec& spec);

/// rho(x) = phi nabla_x phi^{-1} acting on v;  mu(a) = phi^{-1} nabla'_a phi
/// acting on u. rho[i] is the action of the i-th u-basis vector, mu[j] of the
/// j-th v-basis vector. Throws on singular phi.
struct Representations {
    std::vector<Mat> rho;
    std::vector<Mat> mu;
};

Representations build_representations(const Connection& nabla_u, const Connection& nabla_v,
                                      const Mat& phi);

struct MatchedPairViolation {
    int identity;            // 1: rho-side, 2: mu-side
    std::size_t x, a, b;     // basis indices (x in one factor, a/b in the other)
    Vec residual;
};

/// Evaluates both matched-pair identities on all basis tuples; empty = pass.
std::vector<MatchedPairViolation> check_matched_pair(const LieAlgebra& u, const LieAlgebra& v,
                                                     const Representations& reps);

struct BicrossResult {
    LieAlgebra algebra;    // dim(u) + dim(v), basis = u-basis then v-basis
    HSStructure structure; // J from phi, E = Id (+) -Id, g from omega and phi
    Mat embed_u, embed_v;  // inclusion maps of the factors
};

/// Assembles the sum algebra and structure from factors whose representations
/// form a matched pair. Checks the matched-pair identities (throws with the
/// first violation if they fail) but not the parallelism hypotheses; the
/// resulting forms are closed exactly when those hypotheses hold.
BicrossResult assemble_bicrossproduct(const FactorData& u, const FactorData& v, const Mat& phi);

/// Full validated construction: all hypotheses checked, and the output is
/// re-verified (Jacobi, hypersymplectic validation, factor form restriction).
BicrossResult build_bicrossproduct(const MatchedPairSpec& spec);

struct TransportResult {
    MatchedPairSpec transported;  // (u, nabla-bar, omega-bar), ..., psi = xi' phi xi^{-1}
    Mat eta;                      // xi (+) xi', an equivalence of the two bicrossproducts
};

/// Prop-style transport: given factor equivalences xi (on u) and xi' (on v),
/// produce the transported spec and the structure equivalence eta between the
/// two bicrossproducts. Requires xi, xi' to be automorphisms of the factor
/// algebras (verified); the transported factor data is symplectically
/// equivalent to the original by construction (re-verified).
TransportResult transport_equivalence(const Mat& xi, const Mat& xi_prime,
                                      const MatchedPairSpec& spec);

}  // namespace hslie

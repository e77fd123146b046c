#pragma once

#include <array>

#include "hslie/bicrossproduct.hpp"
#include "hslie/classify2d.hpp"

namespace hslie {

enum class Algebra4 { r4, g0h, g1h, g2h };

/// The structure families of the 4-d catalog:
///   canonical  - the flat abelian pair on r4
///   e0         - the angle family on g0h
///   e1_theta   - the (angle, d) family on g1h, d in {0, 1}
///   e1_shear   - the extra g1h structure outside the angle family
///   e2_theta   - the (angle, d) family on g2h
///   e2_shear   - the extra g2h structure
enum class CanonicalFamily { canonical, e0, e1_theta, e1_shear, e2_theta, e2_shear };

struct CanonicalCPSSpec {
    Algebra4 algebra = Algebra4::r4;
    CanonicalFamily family = CanonicalFamily::canonical;
    HalfAngle theta{};  // used by e0, e1_theta, e2_theta
    int d = 0;          // used by e1_theta, e2_theta

    static CanonicalCPSSpec r4();
    static CanonicalCPSSpec g0h(HalfAngle theta);
    static CanonicalCPSSpec g1h_theta(HalfAngle theta, int d);
    static CanonicalCPSSpec g1h_shear();
    static CanonicalCPSSpec g2h_theta(HalfAngle theta, int d);
    static CanonicalCPSSpec g2h_shear();
};

/// Catalog algebras in the basis order the structure matrices use
/// (g0h: v1,v2,v3,v0; g1h: v0,v1,v2,v3; g2h: v0,v2,v1,v3).
LieAlgebra catalog_algebra(Algebra4 which);

Mat canonical_J(Algebra4 which);

/// Structure matrix of the family at exact full-angle values (cos t, sin t).
/// The angle-family entries are polynomial in the full angle, so this is the
/// exact assembly route shared by canonical_cps and the case expectations.
Mat canonical_E_full_angle(Algebra4 which, CanonicalFamily family, const Rational& cos_t,
                           const Rational& sin_t, int d);

/// Assembled {J, E}; validated (integrable, anticommuting) before returning.
CPStructure canonical_cps(const CanonicalCPSSpec& spec);

/// The eigenspace bases as displayed in the metric catalog (half-angle
/// coefficients); always equal, as subspaces, to split(canonical_cps(spec)).
Splitting eigenspace_display(const CanonicalCPSSpec& spec);

/// Adapted basis (u1, u2, w1, w2) used for the metric normal form: the first
/// two span the plus eigenspace, the last two the minus eigenspace.
std::array<Vec, 4> adapted_basis(const CanonicalCPSSpec& spec);

/// The structure's metric: pullback of the Gram normal form
/// antidiag(-1, 1, 1, -1) through the adapted basis. Cross-checked against
/// the compatible-metric solution space (scalar multiple of its generator)
/// and against the full validator.
HSStructure canonical_metric(const CanonicalCPSSpec& spec);

struct CurvatureProfile {
    bool flat = false;
    Rational distinguished_entry;  // (2,1) entry of R(u1, w1) in the adapted basis
    bool other_pairs_zero = false; // R(b_i, b_j) = 0 for all other adapted pairs
};

/// Levi-Civita curvature profile in the adapted basis. For the angle families
/// the closed forms are asserted internally: entry = 6 cos(t/2) on g1h (d=1),
/// 6 cos^2(t/2) on g2h (d=1), zero for d=0, the g0h family and r4.
CurvatureProfile curvature_profile(const CanonicalCPSSpec& spec);

// ---------------------------------------------------------------------------
// Construction cases
// ---------------------------------------------------------------------------

enum class CaseId { A1, A2, A3, A4, B1, B2, B3, B4, B1p, B2p, B3p, B4p, C1, C3 };

const char* case_name(CaseId id);
bool case_has_params(CaseId id);

/// Case parameters: the gluing map is phi = [[a, 0], [b, 1/a]] for the cases
/// that admit parameters; parameterless cases use phi = Id.
struct CaseSpec {
    CaseId id = CaseId::A1;
    Rational a = 1;
    Rational b = 0;
};

struct CaseResult {
    BicrossResult bicross;
    Mat basis_change;          // sum coordinates -> catalog coordinates
    Algebra4 target = Algebra4::r4;
    CanonicalFamily expected_family = CanonicalFamily::canonical;
    Rational expected_cos, expected_sin;  // full angle; meaningful for angle families
    int expected_d = 0;
    std::vector<Vec> plus_display, minus_display;  // displayed eigenspaces, catalog coords
};

/// Builds the matched pair of the case, assembles the bicrossproduct, applies
/// the catalog basis change (verified into the target algebra), and returns
/// the expected canonical parameters.
CaseResult construct_case(const CaseSpec& spec);

// ---------------------------------------------------------------------------
// Coframes and coordinate metrics
// ---------------------------------------------------------------------------

/// One coframe term: e^{exp_t * t} (c0 + cx*x + cy*y) dx^{dmu},
/// with coordinates (t, x, y, z) = indices (0, 1, 2, 3).
struct CoframeTerm {
    int exp_t = 0;
    Rational c0, cx, cy;
    std::size_t dmu = 0;
};

struct Coframe {
    Algebra4 group = Algebra4::r4;
    std::array<std::vector<CoframeTerm>, 4> forms;  // indexed like the catalog basis
};

Coframe coframe(Algebra4 group);

/// Exact structure-equation check of the coframe:
/// d v^k = - sum_{i<j} c^k_ij v^i ^ v^j.
bool coframe_consistent(Algebra4 group);

using Mat4d = std::array<std::array<double, 4>, 4>;

/// Coordinate components of the catalog metric at a point, through the
/// coframe: G_{mu nu} = sum_{ij} g_ij v^i_mu v^j_nu.
Mat4d metric_at_point(const CanonicalCPSSpec& spec, const std::array<double, 4>& txyz);

/// Independent closed-form transcription of the same coordinate metric
/// (one hard-coded formula per family), used as the oracle for
/// metric_at_point.
Mat4d coordinate_metric_reference(const CanonicalCPSSpec& spec,
                                  const std::array<double, 4>& txyz);

/// The three showcase metrics: 1 = flat complete, 2 = flat incomplete,
/// 3 = nonflat incomplete; as coordinate Grams at a point.
Mat4d headline_metric(int which, const std::array<double, 4>& txyz);

/// Catalog entry reproducing headline_metric(which), together with the
/// homothety factor lambda relating them (catalog = lambda * headline).
CanonicalCPSSpec headline_spec(int which);
Rational headline_lambda(int which);

// ---------------------------------------------------------------------------
// Completeness via the 2-d restriction lookup
// ---------------------------------------------------------------------------

struct RestrictionCompleteness {
    FamilyTag plus_tag, minus_tag;
    bool incomplete_certified = false;  // some eigenfactor is an incomplete family
};

/// Classifies the induced connection + restricted form on both eigenspaces;
/// an aff factor certifies incompleteness of the whole structure.
RestrictionCompleteness restriction_completeness(const HSStructure& hs);

}  // namespace hslie

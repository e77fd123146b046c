#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "hslie/cps.hpp"

namespace hslie {

/// Complex product structure together with a compatible nondegenerate metric:
/// g(Jx,Jy) = g(x,y) and g(Ex,Ey) = -g(x,y) are checked at construction.
/// Closedness of the associated 2-forms is *not* required here; that is the
/// job of verify_hypersymplectic / closedness_battery.
class HSStructure {
public:
    HSStructure(CPStructure cp, BilinearForm g);

    const CPStructure& cp() const { return cp_; }
    const LieAlgebra& algebra() const { return cp_.algebra(); }
    const BilinearForm& metric() const { return g_; }
    std::size_t dim() const { return cp_.dim(); }

private:
    CPStructure cp_;
    BilinearForm g_;
};

struct FormTriple {
    BilinearForm omega1, omega2, omega3;
};

/// omega1(x,y) = g(Jx,y), omega2(x,y) = g(Ex,y), omega3(x,y) = g(JEx,y);
/// verified antisymmetric, and nondegenerate (throws if not).
FormTriple kaehler_forms(const HSStructure& hs);

/// Alternating 3-tensor on a Lie algebra, stored on triples i < j < k.
class ThreeForm {
public:
    explicit ThreeForm(std::size_t dim) : dim_(dim) {}
    std::size_t dim() const { return dim_; }
    Rational& at(std::size_t i, std::size_t j, std::size_t k);  // requires i<j<k
    Rational value(std::size_t i, std::size_t j, std::size_t k) const;  // any order
    bool is_zero() const;

private:
    std::size_t dim_;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Rational> v_;
};

/// (d omega)(x,y,z) = -omega([x,y],z) + omega([x,z],y) - omega([y,z],x).
ThreeForm d_two_form(const LieAlgebra& L, const BilinearForm& omega);
bool is_closed(const LieAlgebra& L, const BilinearForm& omega);

/// The nine symmetry identities of the form triple:
///  omega1(x,y) = omega1(Jx,Jy) = omega1(Ex,Ey),   omega1(plus, minus) = 0
///  omega2(x,y) = -omega2(Jx,Jy) = -omega2(Ex,Ey), omega2 = 0 on each factor
///  omega3(x,y) = -omega3(Jx,Jy) = omega3(Ex,Ey),  omega3(plus, minus) = 0
bool form_symmetry_check(const HSStructure& hs);

/// omega_+(x,y) = omega_-(Jx,Jy) together with the reconstruction of all
/// three forms from omega_+:
///  omega1(x+Jx', y+Jy') = omega_+(x,y) + omega_+(x',y')
///  omega2(x+Jx', y+Jy') = -omega_+(x,y') + omega_+(y,x')
///  omega3(x+Jx', y+Jy') = omega_+(x,y) - omega_+(x',y')
bool reconstruction_check(const HSStructure& hs);

struct ClosednessReport {
    bool d_omega1_zero = false;
    bool d_omega2_zero = false;
    bool d_omega3_zero = false;
    bool plus_parallel = false;   // nabla^+ omega_+ = 0
    bool minus_parallel = false;  // nabla^- omega_- = 0
};

/// The five booleans tying closedness of the forms to parallelism of the
/// restricted symplectic forms under the induced factor connections.
/// The expected logical pattern (see battery_pattern_holds) is:
///   d omega1 = 0  <=>  d omega3 = 0  <=>  (both restrictions parallel),
///   and any of these implies d omega2 = 0.
ClosednessReport closedness_battery(const HSStructure& hs);

bool battery_pattern_holds(const ClosednessReport& r);

struct CheckLine {
    std::string name;
    bool pass;
    std::string witness;  // empty when passing
};

struct ValidationReport {
    std::vector<CheckLine> checks;
    bool verdict = false;
    std::string to_text() const;
};

/// Top-level validator: Jacobi, the J/E algebra, both integrability
/// conditions, metric compatibility, nondegeneracy, and closedness of all
/// three forms. Never throws on bad input; failures are carried in the report.
ValidationReport verify_hypersymplectic(const LieAlgebra& L, const Mat& J, const Mat& E,
                                        const BilinearForm& g);

/// True iff xi is a Lie isomorphism intertwining J and E and an isometry;
/// when true, the induced identities omega_i(x,y) = omega'_i(xi x, xi y) are
/// additionally asserted. Throws on singular xi.
bool verify_structure_equivalence(const Mat& xi, const HSStructure& A, const HSStructure& B);

}  // namespace hslie

#pragma once

#include <utility>
#include <vector>

#include "hslie/lie_algebra.hpp"

namespace hslie {

/// Left-invariant connection on a Lie algebra: a bilinear map
/// (x, y) -> nabla_x y, stored as gamma[i][j] = nabla_{e_i} e_j.
/// Torsion-freeness and flatness are checked properties, not type constraints.
class Connection {
public:
    explicit Connection(LieAlgebra algebra);  // zero connection
    Connection(LieAlgebra algebra, std::vector<std::vector<Vec>> gamma);

    const LieAlgebra& algebra() const { return alg_; }
    std::size_t dim() const { return alg_.dim(); }

    const Vec& gamma(std::size_t i, std::size_t j) const { return g_[i][j]; }
    Vec& gamma(std::size_t i, std::size_t j) { return g_[i][j]; }

    Vec apply(const Vec& x, const Vec& y) const;

    /// nabla_x as an endomorphism matrix.
    Mat covariant_matrix(const Vec& x) const;

    friend bool operator==(const Connection& a, const Connection& b) {
        return a.alg_ == b.alg_ && a.g_ == b.g_;
    }

private:
    LieAlgebra alg_;
    std::vector<std::vector<Vec>> g_;
};

/// T(e_i, e_j) = nabla_i e_j - nabla_j e_i - [e_i, e_j], as a table.
std::vector<std::vector<Vec>> torsion(const Connection& C);
bool is_torsion_free(const Connection& C);

/// R(x, y) = nabla_x nabla_y - nabla_y nabla_x - nabla_[x,y], as an endomorphism.
Mat curvature(const Connection& C, const Vec& x, const Vec& y);
bool is_flat(const Connection& C);

/// True iff omega(nabla_x y, z) = omega(nabla_x z, y) on all basis triples,
/// i.e. nabla omega = 0.
bool parallel_form_check(const Connection& C, const BilinearForm& omega);

/// Levi-Civita connection of a nondegenerate metric, via the Koszul formula
/// 2 g(nabla_x y, z) = g([x,y],z) - g([y,z],x) + g([z,x],y).
/// The result is re-checked to be torsion-free and g-skew-adjoint.
Connection levi_civita(const LieAlgebra& L, const BilinearForm& g);

bool is_metric_connection(const Connection& C, const BilinearForm& g);

/// For a vector-space splitting L = plus (+) minus and a torsion-free
/// connection with nabla_x y in the factor of y, the mixed parts are read off
/// the bracket decomposition [x, y] = -nabla_y x + nabla_x y:
/// returns (nabla_x y in minus, nabla_y x in plus) for x in plus, y in minus.
std::pair<Vec, Vec> mixed_connection_part(const LieAlgebra& L, const Subspace& plus,
                                          const Subspace& minus, const Vec& x, const Vec& y);

/// dim { x : nabla_x = 0 }.
std::size_t parallel_annihilator_dim(const Connection& C);

/// True iff xi is a Lie isomorphism A -> B with xi nabla_x y = nabla'_{xi x} xi y
/// and omega(x, y) = omega'(xi x, xi y). Throws on singular xi.
bool verify_symplectic_equivalence(const Mat& xi, const Connection& nablaA,
                                   const BilinearForm& omegaA, const Connection& nablaB,
                                   const BilinearForm& omegaB);

// ---------------------------------------------------------------------------
// Geodesic probing (the only floating-point corner of the library).
// ---------------------------------------------------------------------------

struct ProbeOptions {
    double horizon = 100.0;
    double abs_tol = 1e-10;
    double escape_threshold = 1e9;
    double min_step = 1e-12;
    std::size_t max_samples = 20000;
};

enum class ProbeVerdict { complete_up_to_horizon, blow_up_detected };

struct TrajectorySample {
    double t;
    std::vector<double> state;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    ProbeVerdict verdict = ProbeVerdict::complete_up_to_horizon;
    double blow_up_time = 0.0;  // meaningful only for blow_up_detected
};

/// Integrates  x'(t) = -nabla_{x(t)} x(t)  with an adaptive embedded
/// Runge-Kutta 4(5) pair. Heuristic verdict: blow-up is reported when the
/// state norm exceeds escape_threshold while the accepted step collapses
/// below min_step (or the state stops being finite).
Trajectory geodesic_probe(const Connection& C, const std::vector<double>& x0,
                          const ProbeOptions& opt);

}  // namespace hslie

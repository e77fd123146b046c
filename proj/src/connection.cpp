#include "hslie/connection.hpp"

#include <cmath>
#include <stdexcept>

namespace hslie {

Connection::Connection(LieAlgebra algebra)
    : alg_(std::move(algebra)),
      g_(alg_.dim(), std::vector<Vec>(alg_.dim(), Vec(alg_.dim()))) {}

Connection::Connection(LieAlgebra algebra, std::vector<std::vector<Vec>> gamma)
    : alg_(std::move(algebra)), g_(std::move(gamma)) {
    std::size_t n = alg_.dim();
    if (g_.size() != n) throw std::invalid_argument("Connection: coefficient shape");
    for (auto& row : g_) {
        if (row.size() != n) throw std::invalid_argument("Connection: coefficient shape");
        for (auto& v : row)
            if (v.size() != n) throw std::invalid_argument("Connection: coefficient shape");
    }
}

Vec Connection::apply(const Vec& x, const Vec& y) const {
    std::size_t n = dim();
    if (x.size() != n || y.size() != n) throw std::invalid_argument("apply: dimension mismatch");
    Vec r(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (y[j].is_zero() || vec_is_zero(g_[i][j])) continue;
            Rational f = x[i] * y[j];
            for (std::size_t k = 0; k < n; ++k) r[k] += f * g_[i][j][k];
        }
    }
    return r;
}

Mat Connection::covariant_matrix(const Vec& x) const {
    std::size_t n = dim();
    Mat m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Vec col = apply(x, unit_vec(n, j));
        for (std::size_t k = 0; k < n; ++k) m(k, j) = col[k];
    }
    return m;
}

std::vector<std::vector<Vec>> torsion(const Connection& C) {
    std::size_t n = C.dim();
    std::vector<std::vector<Vec>> t(n, std::vector<Vec>(n, Vec(n)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            t[i][j] = vec_sub(vec_sub(C.gamma(i, j), C.gamma(j, i)),
                              C.algebra().basis_bracket(i, j));
    return t;
}

bool is_torsion_free(const Connection& C) {
    auto t = torsion(C);
    for (auto& row : t)
        for (auto& v : row)
            if (!vec_is_zero(v)) return false;
    return true;
}

Mat curvature(const Connection& C, const Vec& x, const Vec& y) {
    Mat nx = C.covariant_matrix(x), ny = C.covariant_matrix(y);
    Mat nb = C.covariant_matrix(C.algebra().bracket(x, y));
    return nx * ny - ny * nx - nb;
}

bool is_flat(const Connection& C) {
    std::size_t n = C.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!curvature(C, unit_vec(n, i), unit_vec(n, j)).is_zero()) return false;
    return true;
}

bool parallel_form_check(const Connection& C, const BilinearForm& omega) {
    std::size_t n = C.dim();
    if (omega.dim() != n) throw std::invalid_argument("parallel_form_check: dimension mismatch");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Vec ej = unit_vec(n, j), ek = unit_vec(n, k);
                if (omega(C.gamma(i, j), ek) != omega(C.gamma(i, k), ej)) return false;
            }
    return true;
}

Connection levi_civita(const LieAlgebra& L, const BilinearForm& g) {
    if (g.symmetry() != Symmetry::symmetric)
        throw std::invalid_argument("levi_civita: metric must be symmetric");
    if (g.dim() != L.dim()) throw std::invalid_argument("levi_civita: dimension mismatch");
    auto ginv = inverse(g.matrix());
    if (!ginv) throw DegenerateFormError(g.dim() - rank(g.matrix()));

    std::size_t n = L.dim();
    std::vector<std::vector<Vec>> gamma(n, std::vector<Vec>(n, Vec(n)));
    Rational half(1, 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec ei = unit_vec(n, i), ej = unit_vec(n, j);
            Vec rhs(n);
            for (std::size_t k = 0; k < n; ++k) {
                Vec ek = unit_vec(n, k);
                rhs[k] = half * (g(L.basis_bracket(i, j), ek) - g(L.bracket(ej, ek), ei) +
                                 g(L.bracket(ek, ei), ej));
            }
            gamma[i][j] = *ginv * rhs;
        }
    Connection C(L, std::move(gamma));
    if (!is_torsion_free(C) || !is_metric_connection(C, g))
        throw std::logic_error("levi_civita: result failed its defining checks");
    return C;
}

bool is_metric_connection(const Connection& C, const BilinearForm& g) {
    std::size_t n = C.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Vec ej = unit_vec(n, j), ek = unit_vec(n, k);
                if (!(g(C.gamma(i, j), ek) + g(ej, C.gamma(i, k))).is_zero()) return false;
            }
    return true;
}

std::pair<Vec, Vec> mixed_connection_part(const LieAlgebra& L, const Subspace& plus,
                                          const Subspace& minus, const Vec& x, const Vec& y) {
    if (plus.dim() + minus.dim() != L.dim())
        throw std::invalid_argument("mixed_connection_part: factors do not fill the space");
    if (!plus.contains(x)) throw std::invalid_argument("mixed_connection_part: x not in plus");
    if (!minus.contains(y)) throw std::invalid_argument("mixed_connection_part: y not in minus");

    std::vector<Vec> all = plus.vectors();
    all.insert(all.end(), minus.vectors().begin(), minus.vectors().end());
    auto coords = coordinates_in_span(all, L.bracket(x, y));
    if (!coords) throw std::invalid_argument("mixed_connection_part: factors not complementary");

    std::size_t n = L.dim();
    Vec plus_part(n), minus_part(n);
    for (std::size_t i = 0; i < plus.dim(); ++i)
        plus_part = vec_add(plus_part, vec_scale((*coords)[i], plus.vectors()[i]));
    for (std::size_t i = 0; i < minus.dim(); ++i)
        minus_part =
            vec_add(minus_part, vec_scale((*coords)[plus.dim() + i], minus.vectors()[i]));
    // [x, y] = -nabla_y x + nabla_x y with nabla_x y in minus, nabla_y x in plus
    return {minus_part, vec_scale(Rational(-1), plus_part)};
}

std::size_t parallel_annihilator_dim(const Connection& C) {
    std::size_t n = C.dim();
    Mat sys(n * n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) sys(k * n + j, i) = C.gamma(i, j)[k];
    return nullspace(sys).size();
}

bool verify_symplectic_equivalence(const Mat& xi, const Connection& nablaA,
                                   const BilinearForm& omegaA, const Connection& nablaB,
                                   const BilinearForm& omegaB) {
    std::size_t n = nablaA.dim();
    if (nablaB.dim() != n || omegaA.dim() != n || omegaB.dim() != n || xi.rows() != n ||
        xi.cols() != n)
        throw std::invalid_argument("verify_symplectic_equivalence: dimension mismatch");
    if (det(xi).is_zero()) throw std::domain_error("verify_symplectic_equivalence: singular xi");

    if (!verify_basis_change(nablaA.algebra(), xi, nablaB.algebra())) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (xi * nablaA.gamma(i, j) != nablaB.apply(xi.column(i), xi.column(j))) return false;
            Vec ei = unit_vec(n, i), ej = unit_vec(n, j);
            if (omegaA(ei, ej) != omegaB(xi.column(i), xi.column(j))) return false;
        }
    return true;
}

namespace {

struct OdeSystem {
    std::size_t n;
    std::vector<double> gamma;  // [i][j][k]
    void deriv(const std::vector<double>& x, std::vector<double>& dx) const {
        for (std::size_t k = 0; k < n; ++k) dx[k] = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                double f = x[i] * x[j];
                if (f == 0.0) continue;
                for (std::size_t k = 0; k < n; ++k)
                    dx[k] -= f * gamma[(i * n + j) * n + k];
            }
        }
    }
};

double norm2(const std::vector<double>& x) {
    double s = 0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

bool finite(const std::vector<double>& x) {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace

Trajectory geodesic_probe(const Connection& C, const std::vector<double>& x0,
                          const ProbeOptions& opt) {
    std::size_t n = C.dim();
    if (x0.size() != n) throw std::invalid_argument("geodesic_probe: state dimension mismatch");
    if (opt.horizon <= 0 || opt.abs_tol <= 0 || opt.escape_threshold <= 0 || opt.min_step <= 0)
        throw std::invalid_argument("geodesic_probe: invalid tolerances");

    OdeSystem sys{n, std::vector<double>(n * n * n)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                sys.gamma[(i * n + j) * n + k] = C.gamma(i, j)[k].to_double();

    // Dormand-Prince 5(4) coefficients.
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    Trajectory traj;
    std::vector<double> x = x0;
    double t = 0.0, h = std::min(1e-3, opt.horizon / 10);
    traj.samples.push_back({t, x});

    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), x5(n);
    auto stage = [&](const std::vector<double>& base, std::vector<double>& out) {
        sys.deriv(base, out);
    };

    const std::size_t max_iter = 10'000'000;
    for (std::size_t iter = 0; t < opt.horizon && iter < max_iter; ++iter) {
        if (h < opt.min_step) h = opt.min_step;
        if (h > opt.horizon - t) h = opt.horizon - t;
        bool at_floor = h <= opt.min_step;

        stage(x, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * a21 * k1[i];
        stage(tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * (a31 * k1[i] + a32 * k2[i]);
        stage(tmp, k3);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = x[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        stage(tmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = x[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        stage(tmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = x[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                 a65 * k5[i]);
        stage(tmp, k6);
        for (std::size_t i = 0; i < n; ++i)
            x5[i] = x[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        stage(x5, k7);

        if (!finite(x5)) {
            if (at_floor) {
                traj.verdict = ProbeVerdict::blow_up_detected;
                traj.blow_up_time = t;
                return traj;
            }
            h *= 0.25;
            continue;
        }

        double err = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                            e7 * k7[i]);
            err = std::max(err, std::fabs(e));
        }

        if (err <= opt.abs_tol || at_floor) {
            t += h;
            x = x5;
            if (traj.samples.size() < opt.max_samples)
                traj.samples.push_back({t, x});
            // blow-up = escape while the adaptive step has collapsed
            if (norm2(x) > opt.escape_threshold && at_floor) {
                traj.verdict = ProbeVerdict::blow_up_detected;
                traj.blow_up_time = t;
                return traj;
            }
        }

        double scale = err > 0 ? 0.9 * std::pow(opt.abs_tol / err, 0.2) : 2.0;
        h *= std::min(4.0, std::max(0.1, scale));
    }
    if (t >= opt.horizon) {
        traj.verdict = ProbeVerdict::complete_up_to_horizon;
    } else {
        // iteration budget exhausted: the integration stalled
        traj.verdict = ProbeVerdict::blow_up_detected;
        traj.blow_up_time = t;
    }
    return traj;
}

}  // namespace hslie

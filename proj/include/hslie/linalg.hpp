#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hslie/rational.hpp"

namespace hslie {

using Vec = std::vector<Rational>;

Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Rational& s, const Vec& a);
bool vec_is_zero(const Vec& a);
Vec zero_vec(std::size_t n);
Vec unit_vec(std::size_t n, std::size_t i);

/// Dense matrix of exact rationals. Columns of an endomorphism matrix are the
/// images of the basis vectors.
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}
    Mat(std::initializer_list<std::initializer_list<Rational>> rows);

    static Mat identity(std::size_t n);
    static Mat from_columns(const std::vector<Vec>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Vec column(std::size_t j) const;
    Vec row(std::size_t i) const;

    Mat transpose() const;
    bool is_square() const { return rows_ == cols_; }
    bool is_zero() const;

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Mat operator-() const;
    Vec operator*(const Vec& x) const;
    friend Mat operator*(const Rational& s, const Mat& m);

    std::string str() const;

private:
    std::size_t rows_, cols_;
    std::vector<Rational> a_;
};

Rational det(Mat m);
std::size_t rank(Mat m);
std::optional<Mat> inverse(Mat m);

/// Basis of the kernel {x : Mx = 0}.
std::vector<Vec> nullspace(const Mat& m);

/// Unique solution of Ax = b for invertible A.
Vec solve(const Mat& a, const Vec& b);

/// Coordinates of v in the span of `basis`, or nullopt if v is outside it.
std::optional<Vec> coordinates_in_span(const std::vector<Vec>& basis, const Vec& v);

bool spans_equal(const std::vector<Vec>& a, const std::vector<Vec>& b);
bool linearly_independent(const std::vector<Vec>& vs);

enum class Symmetry { symmetric, antisymmetric };

/// Square matrix of scalars together with its symmetry tag; the matrix is
/// validated against the tag at construction.
class BilinearForm {
public:
    BilinearForm(Mat m, Symmetry sym);

    const Mat& matrix() const { return m_; }
    Symmetry symmetry() const { return sym_; }
    std::size_t dim() const { return m_.rows(); }

    /// x^T M y
    Rational operator()(const Vec& x, const Vec& y) const;

    bool nondegenerate() const;

    friend bool operator==(const BilinearForm& a, const BilinearForm& b) {
        return a.sym_ == b.sym_ && a.m_ == b.m_;
    }

private:
    Mat m_;
    Symmetry sym_;
};

struct DegenerateFormError : std::domain_error {
    std::size_t radical_dim;
    explicit DegenerateFormError(std::size_t rd)
        : std::domain_error("degenerate form: radical has dimension " + std::to_string(rd)),
          radical_dim(rd) {}
};

struct SignatureCount {
    std::size_t positive = 0;
    std::size_t negative = 0;
    friend bool operator==(const SignatureCount&, const SignatureCount&) = default;
};

/// Sign counts (p, q) of a nondegenerate symmetric form, by exact congruence
/// diagonalization. Throws DegenerateFormError naming the radical dimension.
SignatureCount signature(const BilinearForm& form);

/// Rational point (c, s) = (cos(t/2), sin(t/2)) on the unit circle; keeps the
/// angle-parameterized families exact. Full-angle values are recovered as
/// cos t = c^2 - s^2, sin t = 2cs.
class HalfAngle {
public:
    HalfAngle() : c_(1), s_(0) {}
    HalfAngle(Rational c, Rational s) : c_(std::move(c)), s_(std::move(s)) {
        if (c_ * c_ + s_ * s_ != Rational(1))
            throw std::invalid_argument("HalfAngle: c^2 + s^2 != 1");
    }

    /// Tangent substitution t -> ((1-t^2)/(1+t^2), 2t/(1+t^2)).
    static HalfAngle from_tangent(const Rational& t) {
        Rational d = Rational(1) + t * t;
        return HalfAngle((Rational(1) - t * t) / d, (Rational(2) * t) / d);
    }

    const Rational& c() const { return c_; }
    const Rational& s() const { return s_; }
    Rational cos_full() const { return c_ * c_ - s_ * s_; }
    Rational sin_full() const { return Rational(2) * c_ * s_; }

    friend bool operator==(const HalfAngle&, const HalfAngle&) = default;

private:
    Rational c_, s_;
};

inline std::pair<Rational, Rational> halfangle_trig(const HalfAngle& h) {
    return {h.cos_full(), h.sin_full()};
}

}  // namespace hslie

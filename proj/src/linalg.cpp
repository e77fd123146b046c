#include "hslie/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace hslie {

Vec vec_add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec_add: size mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec_sub: size mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec vec_scale(const Rational& s, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

bool vec_is_zero(const Vec& a) {
    return std::all_of(a.begin(), a.end(), [](const Rational& x) { return x.is_zero(); });
}

Vec zero_vec(std::size_t n) { return Vec(n); }

Vec unit_vec(std::size_t n, std::size_t i) {
    Vec v(n);
    v.at(i) = 1;
    return v;
}

Mat::Mat(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("Mat: ragged initializer");
        for (const auto& x : r) a_.push_back(x);
    }
}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat Mat::from_columns(const std::vector<Vec>& cols) {
    if (cols.empty()) return Mat(0, 0);
    Mat m(cols[0].size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != m.rows()) throw std::invalid_argument("from_columns: ragged");
        for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = cols[j][i];
    }
    return m;
}

Vec Mat::column(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

Vec Mat::row(std::size_t i) const {
    Vec v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
}

Mat Mat::transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool Mat::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Rational& x) { return x.is_zero(); });
}

Mat Mat::operator+(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Mat+: shape mismatch");
    Mat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Mat-: shape mismatch");
    Mat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

Mat Mat::operator-() const {
    Mat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
    return r;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Mat*: shape mismatch");
    Mat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& aik = (*this)(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
        }
    return r;
}

Vec Mat::operator*(const Vec& x) const {
    if (cols_ != x.size()) throw std::invalid_argument("Mat*Vec: shape mismatch");
    Vec r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * x[j];
    return r;
}

Mat operator*(const Rational& s, const Mat& m) {
    Mat r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = s * m(i, j);
    return r;
}

std::string Mat::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i == 0 ? "[" : " ");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "[") << (*this)(i, j).str();
        os << "]" << (i + 1 == rows_ ? "]" : "\n");
    }
    return os.str();
}

namespace {

// Row echelon reduction; returns rank. If `companion` is non-null it receives
// the same row operations (used for inverse computation).
std::size_t row_reduce(Mat& m, Mat* companion) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
        if (piv == m.rows()) continue;
        if (piv != r) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
            if (companion)
                for (std::size_t k = 0; k < companion->cols(); ++k)
                    std::swap((*companion)(piv, k), (*companion)(r, k));
        }
        Rational inv = Rational(1) / m(r, c);
        for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
        if (companion)
            for (std::size_t k = 0; k < companion->cols(); ++k) (*companion)(r, k) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            Rational f = m(i, c);
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
            if (companion)
                for (std::size_t k = 0; k < companion->cols(); ++k)
                    (*companion)(i, k) -= f * (*companion)(r, k);
        }
        ++r;
    }
    return r;
}

}  // namespace

Rational det(Mat m) {
    if (!m.is_square()) throw std::invalid_argument("det: not square");
    std::size_t n = m.rows();
    Rational d(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m(piv, c).is_zero()) ++piv;
        if (piv == n) return Rational(0);
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
            d = -d;
        }
        d *= m(c, c);
        Rational inv = Rational(1) / m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c).is_zero()) continue;
            Rational f = m(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return d;
}

std::size_t rank(Mat m) { return row_reduce(m, nullptr); }

std::optional<Mat> inverse(Mat m) {
    if (!m.is_square()) throw std::invalid_argument("inverse: not square");
    Mat inv = Mat::identity(m.rows());
    std::size_t r = row_reduce(m, &inv);
    if (r < m.rows()) return std::nullopt;
    return inv;
}

std::vector<Vec> nullspace(const Mat& m) {
    Mat red = m;
    row_reduce(red, nullptr);
    std::size_t nrows = red.rows(), ncols = red.cols();
    // locate pivot column of each nonzero row
    std::vector<std::ptrdiff_t> pivot_of_col(ncols, -1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
        if (!red(r, c).is_zero()) {
            pivot_of_col[c] = static_cast<std::ptrdiff_t>(r);
            ++r;
        }
    }
    std::vector<Vec> basis;
    for (std::size_t c = 0; c < ncols; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        Vec v(ncols);
        v[c] = 1;
        for (std::size_t cc = 0; cc < c; ++cc)
            if (pivot_of_col[cc] >= 0)
                v[cc] = -red(static_cast<std::size_t>(pivot_of_col[cc]), c);
        basis.push_back(std::move(v));
    }
    return basis;
}

Vec solve(const Mat& a, const Vec& b) {
    auto inv = inverse(a);
    if (!inv) throw std::domain_error("solve: singular matrix");
    return *inv * b;
}

std::optional<Vec> coordinates_in_span(const std::vector<Vec>& basis, const Vec& v) {
    if (basis.empty()) return vec_is_zero(v) ? std::optional<Vec>(Vec{}) : std::nullopt;
    std::size_t n = basis[0].size(), k = basis.size();
    Mat aug(n, k + 1);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) aug(i, j) = basis[j][i];
    for (std::size_t i = 0; i < n; ++i) aug(i, k) = v[i];
    row_reduce(aug, nullptr);
    // Free variables (if the spanning set is dependent) are set to zero; a row
    // of the shape 0 ... 0 | nonzero marks v outside the span.
    Vec coords(k);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t c = 0;
        while (c <= k && aug(i, c).is_zero()) ++c;
        if (c == k) return std::nullopt;
        if (c > k) continue;
        coords[c] = aug(i, k);
    }
    Vec check(n);
    for (std::size_t j = 0; j < k; ++j) check = vec_add(check, vec_scale(coords[j], basis[j]));
    if (check != v) return std::nullopt;
    return coords;
}

bool linearly_independent(const std::vector<Vec>& vs) {
    if (vs.empty()) return true;
    return rank(Mat::from_columns(vs)) == vs.size();
}

bool spans_equal(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    if (a.empty() && b.empty()) return true;
    std::vector<Vec> all = a;
    all.insert(all.end(), b.begin(), b.end());
    std::size_t ra = a.empty() ? 0 : rank(Mat::from_columns(a));
    std::size_t rb = b.empty() ? 0 : rank(Mat::from_columns(b));
    std::size_t rall = rank(Mat::from_columns(all));
    return ra == rb && rb == rall;
}

BilinearForm::BilinearForm(Mat m, Symmetry sym) : m_(std::move(m)), sym_(sym) {
    if (!m_.is_square()) throw std::invalid_argument("BilinearForm: matrix not square");
    for (std::size_t i = 0; i < m_.rows(); ++i)
        for (std::size_t j = 0; j < m_.cols(); ++j) {
            bool ok = sym_ == Symmetry::symmetric ? m_(i, j) == m_(j, i)
                                                  : m_(i, j) == -m_(j, i);
            if (!ok)
                throw std::invalid_argument("BilinearForm: matrix violates its symmetry tag");
        }
}

Rational BilinearForm::operator()(const Vec& x, const Vec& y) const {
    if (x.size() != dim() || y.size() != dim())
        throw std::invalid_argument("BilinearForm: dimension mismatch");
    Rational s;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < dim(); ++j) s += x[i] * m_(i, j) * y[j];
    }
    return s;
}

bool BilinearForm::nondegenerate() const { return !det(m_).is_zero(); }

SignatureCount signature(const BilinearForm& form) {
    if (form.symmetry() != Symmetry::symmetric)
        throw std::invalid_argument("signature: form must be symmetric");
    Mat a = form.matrix();
    std::size_t n = a.rows();
    std::size_t rad = n - rank(a);
    if (rad > 0) throw DegenerateFormError(rad);

    // Symmetric Gaussian congruence reduction. When all remaining diagonal
    // entries vanish, a nonzero off-diagonal pair (i,j) exists; the congruence
    // e_i -> e_i + e_j makes the (i,i) entry 2 a_ij != 0.
    SignatureCount sc;
    std::vector<std::size_t> active(n);
    for (std::size_t i = 0; i < n; ++i) active[i] = i;

    auto add_row_col = [&](Mat& m, std::size_t dst, std::size_t src, const Rational& f) {
        for (std::size_t j = 0; j < n; ++j) m(dst, j) += f * m(src, j);
        for (std::size_t i = 0; i < n; ++i) m(i, dst) += f * m(i, src);
    };

    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::ptrdiff_t p = -1;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && !a(i, i).is_zero()) { p = static_cast<std::ptrdiff_t>(i); break; }
        if (p < 0) {
            // all active diagonal entries zero; find off-diagonal pivot
            std::ptrdiff_t pi = -1, pj = -1;
            for (std::size_t i = 0; i < n && pi < 0; ++i) {
                if (done[i]) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    if (done[j] || j == i || a(i, j).is_zero()) continue;
                    pi = static_cast<std::ptrdiff_t>(i);
                    pj = static_cast<std::ptrdiff_t>(j);
                    break;
                }
            }
            if (pi < 0) break;  // remaining block is zero (cannot happen: nondegenerate)
            add_row_col(a, static_cast<std::size_t>(pi), static_cast<std::size_t>(pj), Rational(1));
            p = pi;
        }
        std::size_t pu = static_cast<std::size_t>(p);
        Rational d = a(pu, pu);
        if (d.sign() > 0) ++sc.positive; else ++sc.negative;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == pu || done[i] || a(i, pu).is_zero()) continue;
            add_row_col(a, i, pu, -a(i, pu) / d);
        }
        done[pu] = true;
    }
    if (sc.positive + sc.negative != n) throw DegenerateFormError(n - sc.positive - sc.negative);
    return sc;
}

}  // namespace hslie

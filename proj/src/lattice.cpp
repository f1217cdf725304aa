#include "toricgec/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace toricgec {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("exponent overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("exponent overflow");
    return r;
}

Exponent add(const Exponent& a, const Exponent& b) {
    if (a.size() != b.size()) throw std::invalid_argument("exponent length mismatch");
    Exponent r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
    return r;
}

Exponent sub(const Exponent& a, const Exponent& b) {
    if (a.size() != b.size()) throw std::invalid_argument("exponent length mismatch");
    Exponent r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], checked_mul(-1, b[i]));
    return r;
}

Exponent scale(std::int64_t k, const Exponent& a) {
    Exponent r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_mul(k, a[i]);
    return r;
}

std::int64_t dot(const Exponent& a, const Exponent& b) {
    if (a.size() != b.size()) throw std::invalid_argument("exponent length mismatch");
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s = checked_add(s, checked_mul(a[i], b[i]));
    return s;
}

bool is_zero(const Exponent& a) {
    return std::all_of(a.begin(), a.end(), [](std::int64_t v) { return v == 0; });
}

std::int64_t gcd_entries(const Exponent& a) {
    std::int64_t g = 0;
    for (auto v : a) g = std::gcd(g, v);
    return g;
}

Exponent primitive(const Exponent& a) {
    std::int64_t g = gcd_entries(a);
    if (g == 0) return a;
    Exponent r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] / g;
    return r;
}

std::string to_string(const Exponent& a) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) os << ',';
        os << a[i];
    }
    os << ')';
    return os.str();
}

std::int64_t to_i64(const Int& x) {
    if (!x.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits");
    return x.get_si();
}

Rat make_rat(const std::string& text) {
    Rat q;
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational literal: " + text);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<Exponent>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<long>(rows[i][j]);
    }
    return m;
}

Exponent IntMatrix::row_exponent(std::size_t i) const {
    Exponent e(cols_);
    for (std::size_t j = 0; j < cols_; ++j) e[j] = to_i64((*this)(i, j));
    return e;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("matrix dimension mismatch");
    IntMatrix r(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) r(i, j) += a * other(k, j);
        }
    return r;
}

bool IntMatrix::operator==(const IntMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i) os << "; ";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) os << ' ';
            os << (*this)(i, j).get_str();
        }
    }
    os << ']';
    return os.str();
}

namespace {

// Row and column operations on D mirrored into U and V so that A = U D V holds throughout.
struct SnfState {
    IntMatrix U, D, V;

    // row_i(D) += k * row_j(D)
    void add_row(std::size_t i, std::size_t j, const Int& k) {
        for (std::size_t c = 0; c < D.cols(); ++c) D(i, c) += k * D(j, c);
        for (std::size_t r = 0; r < U.rows(); ++r) U(r, j) -= k * U(r, i);
    }
    // col_j(D) += k * col_i(D)
    void add_col(std::size_t j, std::size_t i, const Int& k) {
        for (std::size_t r = 0; r < D.rows(); ++r) D(r, j) += k * D(r, i);
        for (std::size_t c = 0; c < V.cols(); ++c) V(i, c) -= k * V(j, c);
    }
    void swap_row(std::size_t i, std::size_t j) {
        D.swap_rows(i, j);
        U.swap_cols(i, j);
    }
    void swap_col(std::size_t i, std::size_t j) {
        D.swap_cols(i, j);
        V.swap_rows(i, j);
    }
    void negate_row(std::size_t i) {
        for (std::size_t c = 0; c < D.cols(); ++c) D(i, c) = -D(i, c);
        for (std::size_t r = 0; r < U.rows(); ++r) U(r, i) = -U(r, i);
    }
};

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& A) {
    const std::size_t m = A.rows(), n = A.cols();
    SnfState s{IntMatrix::identity(m), A, IntMatrix::identity(n)};
    const std::size_t steps = std::min(m, n);
    for (std::size_t t = 0; t < steps; ++t) {
        for (;;) {
            // pivot: smallest nonzero absolute value in the trailing block
            std::size_t pi = m, pj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (s.D(i, j) != 0 && (pi == m || abs(s.D(i, j)) < abs(s.D(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == m) return {s.U, s.D, s.V};
            s.swap_row(t, pi);
            s.swap_col(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (s.D(i, t) == 0) continue;
                s.add_row(i, t, -floor_div(s.D(i, t), s.D(t, t)));
                if (s.D(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (s.D(t, j) == 0) continue;
                s.add_col(j, t, -floor_div(s.D(t, j), s.D(t, t)));
                if (s.D(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // enforce d_t | every trailing entry
            bool divides_all = true;
            for (std::size_t i = t + 1; i < m && divides_all; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(s.D(i, j).get_mpz_t(), s.D(t, t).get_mpz_t())) {
                        s.add_row(t, i, 1);
                        divides_all = false;
                        break;
                    }
            if (divides_all) break;
        }
        if (s.D(t, t) < 0) s.negate_row(t);
    }
    return {s.U, s.D, s.V};
}

Int determinant(const IntMatrix& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = A.rows();
    if (n == 0) return 1;
    IntMatrix M = A;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (M(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && M(p, k) == 0) ++p;
            if (p == n) return 0;
            M.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int v = M(i, j) * M(k, k) - M(i, k) * M(k, j);
                mpz_divexact(M(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
        prev = M(k, k);
    }
    return sign * M(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& A) {
    IntMatrix M = A;
    std::size_t r = 0;
    Int prev = 1;
    for (std::size_t c = 0; c < M.cols() && r < M.rows(); ++c) {
        std::size_t p = r;
        while (p < M.rows() && M(p, c) == 0) ++p;
        if (p == M.rows()) continue;
        M.swap_rows(r, p);
        for (std::size_t i = r + 1; i < M.rows(); ++i) {
            for (std::size_t j = c + 1; j < M.cols(); ++j) {
                Int v = M(i, j) * M(r, c) - M(i, c) * M(r, j);
                mpz_divexact(M(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            M(i, c) = 0;
        }
        prev = M(r, c);
        ++r;
    }
    return r;
}

LatticeBasis difference_lattice_basis(const std::vector<Exponent>& points) {
    if (points.empty()) throw std::invalid_argument("difference_lattice_basis: empty point list");
    const std::size_t n = points[0].size();
    std::vector<Exponent> diffs;
    for (std::size_t i = 1; i < points.size(); ++i) {
        Exponent d = sub(points[i], points[0]);
        if (!is_zero(d)) diffs.push_back(std::move(d));
    }
    LatticeBasis out;
    if (diffs.empty()) {
        out.basis = IntMatrix(0, n);
        return out;
    }
    SmithForm snf = smith_normal_form(IntMatrix::from_rows(diffs, n));
    std::size_t r = 0;
    while (r < std::min(snf.D.rows(), snf.D.cols()) && snf.D(r, r) != 0) ++r;
    // rows of D*V span the difference lattice; the first r rows of V span its saturation
    out.rank = r;
    out.basis = IntMatrix(r, n);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j) out.basis(i, j) = snf.V(i, j);
    return out;
}

LatticeChart::LatticeChart(Exponent base, IntMatrix basis) : base_(std::move(base)), basis_(std::move(basis)) {
    if (basis_.cols() != base_.size()) throw std::invalid_argument("chart basis width mismatch");
    const std::size_t r = basis_.rows(), n = basis_.cols();
    // locate pivot columns by rational elimination
    std::vector<std::vector<Rat>> M(r, std::vector<Rat>(n));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j) M[i][j] = basis_(i, j);
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < r; ++c) {
        std::size_t p = row;
        while (p < r && M[p][c] == 0) ++p;
        if (p == r) continue;
        std::swap(M[p], M[row]);
        for (std::size_t i = 0; i < r; ++i) {
            if (i == row || M[i][c] == 0) continue;
            Rat f = M[i][c] / M[row][c];
            for (std::size_t j = c; j < n; ++j) M[i][j] -= f * M[row][j];
        }
        pivot_cols_.push_back(c);
        ++row;
    }
    if (pivot_cols_.size() != r) throw std::invalid_argument("chart basis rows are dependent");
    // invert the r x r minor on the pivot columns: minor(i, k) = basis(i, pivot_k)
    std::vector<std::vector<Rat>> aug(r, std::vector<Rat>(2 * r));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t k = 0; k < r; ++k) aug[i][k] = basis_(i, pivot_cols_[k]);
        aug[i][r + i] = 1;
    }
    for (std::size_t c = 0; c < r; ++c) {
        std::size_t p = c;
        while (aug[p][c] == 0) ++p;
        std::swap(aug[p], aug[c]);
        Rat inv = 1 / aug[c][c];
        for (auto& v : aug[c]) v *= inv;
        for (std::size_t i = 0; i < r; ++i) {
            if (i == c || aug[i][c] == 0) continue;
            Rat f = aug[i][c];
            for (std::size_t j = 0; j < 2 * r; ++j) aug[i][j] -= f * aug[c][j];
        }
    }
    inverse_.resize(r * r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) inverse_[i * r + j] = aug[i][r + j];
}

LatticeChart LatticeChart::of_points(const std::vector<Exponent>& points) {
    LatticeBasis lb = difference_lattice_basis(points);
    return LatticeChart(points[0], lb.basis);
}

bool LatticeChart::solve(const Exponent& d, Exponent& out) const {
    const std::size_t r = rank();
    if (d.size() != ambient_rank()) throw std::invalid_argument("chart: point length mismatch");
    // c * minor = d restricted to pivots, so c = d_P * minor^{-1}
    out.assign(r, 0);
    for (std::size_t j = 0; j < r; ++j) {
        Rat s = 0;
        for (std::size_t k = 0; k < r; ++k) s += Rat(static_cast<long>(d[pivot_cols_[k]])) * inverse_[k * r + j];
        if (s.get_den() != 1) return false;
        out[j] = to_i64(s.get_num());
    }
    return vector(out) == d;
}

Exponent LatticeChart::vector_coords(const Exponent& d) const {
    Exponent c;
    if (!solve(d, c)) throw std::domain_error("vector " + to_string(d) + " not in chart lattice");
    return c;
}

Exponent LatticeChart::coords(const Exponent& x) const { return vector_coords(sub(x, base_)); }

bool LatticeChart::contains(const Exponent& x) const {
    Exponent c;
    return solve(sub(x, base_), c);
}

Exponent LatticeChart::vector(const Exponent& c) const {
    if (c.size() != rank()) throw std::invalid_argument("chart: coordinate length mismatch");
    Exponent v(ambient_rank(), 0);
    for (std::size_t i = 0; i < rank(); ++i)
        for (std::size_t j = 0; j < ambient_rank(); ++j)
            v[j] = checked_add(v[j], checked_mul(c[i], to_i64(basis_(i, j))));
    return v;
}

Exponent LatticeChart::point(const Exponent& c) const { return add(base_, vector(c)); }

Int simplex_normalized_volume(const std::vector<Exponent>& points, const IntMatrix& chart) {
    const std::size_t r = chart.rows();
    if (points.size() != r + 1)
        throw std::invalid_argument("simplex_normalized_volume: need rank+1 points for the chart");
    if (r == 0) return 1;
    LatticeChart ch(points[0], chart);
    IntMatrix M(r, r);
    for (std::size_t i = 1; i <= r; ++i) {
        Exponent c = ch.coords(points[i]);
        for (std::size_t j = 0; j < r; ++j) M(i - 1, j) = static_cast<long>(c[j]);
    }
    return abs(determinant(M));
}

}  // namespace toricgec

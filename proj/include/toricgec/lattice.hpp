#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace toricgec {

using Int = mpz_class;
using Rat = mpq_class;

// Exponent vectors are small in practice; entries are checked for overflow.
using Exponent = std::vector<std::int64_t>;

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

Exponent add(const Exponent& a, const Exponent& b);
Exponent sub(const Exponent& a, const Exponent& b);
Exponent scale(std::int64_t k, const Exponent& a);
std::int64_t dot(const Exponent& a, const Exponent& b);
bool is_zero(const Exponent& a);
std::int64_t gcd_entries(const Exponent& a);
// Divides by the gcd of the entries; the zero vector is returned unchanged.
Exponent primitive(const Exponent& a);
std::string to_string(const Exponent& a);

std::int64_t to_i64(const Int& x);
Rat make_rat(const std::string& text);

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<Exponent>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Exponent row_exponent(std::size_t i) const;
    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& other) const;
    bool operator==(const IntMatrix& other) const;
    bool operator!=(const IntMatrix& other) const { return !(*this == other); }

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

struct SmithForm {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;
};

// A = U * D * V with U, V unimodular and D diagonal with d_i | d_{i+1}, d_i >= 0.
SmithForm smith_normal_form(const IntMatrix& A);

// Fraction-free Bareiss elimination. The 0x0 determinant is 1.
Int determinant(const IntMatrix& A);

std::size_t rank(const IntMatrix& A);

struct LatticeBasis {
    std::size_t rank = 0;
    IntMatrix basis;  // rank x n, rows span the saturated difference lattice
};

LatticeBasis difference_lattice_basis(const std::vector<Exponent>& points);

// Affine chart onto the saturated difference lattice of a point set.
// coords(x) = c with x - base = c * basis.
class LatticeChart {
public:
    LatticeChart() = default;
    LatticeChart(Exponent base, IntMatrix basis);
    static LatticeChart of_points(const std::vector<Exponent>& points);

    std::size_t rank() const { return basis_.rows(); }
    std::size_t ambient_rank() const { return base_.size(); }
    const Exponent& base() const { return base_; }
    const IntMatrix& basis() const { return basis_; }

    // Coordinates of x - base; throws std::domain_error when x is off the lattice.
    Exponent coords(const Exponent& x) const;
    // Coordinates of a difference vector d lying in the linear span.
    Exponent vector_coords(const Exponent& d) const;
    bool contains(const Exponent& x) const;
    Exponent point(const Exponent& c) const;
    Exponent vector(const Exponent& c) const;

private:
    bool solve(const Exponent& d, Exponent& out) const;

    Exponent base_;
    IntMatrix basis_;
    std::vector<std::size_t> pivot_cols_;
    std::vector<Rat> inverse_;  // r x r inverse of the pivot-column minor
};

// r! * vol of the simplex spanned by r+1 points, measured in the chart lattice.
Int simplex_normalized_volume(const std::vector<Exponent>& points, const IntMatrix& chart);

}  // namespace toricgec

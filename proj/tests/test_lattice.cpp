#include <doctest.h>

#include <algorithm>
#include <random>

#include "toricgec/lattice.hpp"

using namespace toricgec;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    std::uniform_int_distribution<int> d(-9, 9);
    IntMatrix A(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) A(i, j) = d(rng);
    return A;
}

// Leibniz expansion, independent of the elimination code.
Int leibniz(const IntMatrix& A) {
    const std::size_t n = A.rows();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    Int total = 0;
    do {
        Int term = 1;
        for (std::size_t i = 0; i < n; ++i) term *= A(i, perm[i]);
        std::size_t inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        total += inversions % 2 ? -term : term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

void check_snf(const IntMatrix& A) {
    SmithForm s = smith_normal_form(A);
    CHECK(s.U * s.D * s.V == A);
    CHECK(abs(determinant(s.U)) == 1);
    CHECK(abs(determinant(s.V)) == 1);
    const std::size_t k = std::min(A.rows(), A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j)
            if (i != j) CHECK(s.D(i, j) == 0);
    for (std::size_t i = 0; i < k; ++i) {
        CHECK(s.D(i, i) >= 0);
        if (i + 1 < k && s.D(i, i) != 0) CHECK(s.D(i + 1, i + 1) % s.D(i, i) == 0);
        if (s.D(i, i) == 0 && i + 1 < k) CHECK(s.D(i + 1, i + 1) == 0);
    }
}

}  // namespace

TEST_CASE("checked exponent arithmetic") {
    CHECK(checked_add(3, 4) == 7);
    CHECK_THROWS_AS(checked_add(INT64_MAX, 1), std::overflow_error);
    CHECK_THROWS_AS(checked_mul(INT64_MAX / 2 + 1, 2), std::overflow_error);
    CHECK(primitive({4, -6}) == Exponent{2, -3});
    CHECK(primitive({0, 0}) == Exponent{0, 0});
    CHECK(gcd_entries({0, -6, 9}) == 3);
    CHECK(dot({1, 2}, {3, -1}) == 1);
}

TEST_CASE("smith normal form examples") {
    SmithForm id = smith_normal_form(IntMatrix::identity(2));
    CHECK(id.D == IntMatrix::identity(2));

    IntMatrix A = IntMatrix::from_rows({{2, 0}, {0, 3}}, 2);
    SmithForm s = smith_normal_form(A);
    CHECK(s.D(0, 0) == 1);
    CHECK(s.D(1, 1) == 6);
    check_snf(A);

    IntMatrix row = IntMatrix::from_rows({{2, 4}}, 2);
    SmithForm r = smith_normal_form(row);
    CHECK(r.D(0, 0) == 2);
    CHECK(r.D(0, 1) == 0);
    check_snf(row);

    check_snf(IntMatrix(0, 3));
    check_snf(IntMatrix(3, 2));
}

TEST_CASE("smith normal form on random matrices") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> rows(1, 8), cols(1, 12);
    for (int t = 0; t < 200; ++t) check_snf(random_matrix(rng, rows(rng), cols(rng)));
}

TEST_CASE("determinant agrees with Leibniz expansion") {
    std::mt19937_64 rng(5);
    CHECK(determinant(IntMatrix(0, 0)) == 1);
    for (int t = 0; t < 100; ++t) {
        std::size_t n = 1 + t % 5;
        IntMatrix A = random_matrix(rng, n, n);
        CHECK(determinant(A) == leibniz(A));
        CHECK(rank(A) == (leibniz(A) != 0 ? n : rank(A)));
    }
    CHECK(rank(IntMatrix::from_rows({{1, 2}, {2, 4}}, 2)) == 1);
}

TEST_CASE("difference lattice basis") {
    auto b0 = difference_lattice_basis({{0, 0}});
    CHECK(b0.rank == 0);
    CHECK(b0.basis.rows() == 0);

    auto b2 = difference_lattice_basis({{0, 0}, {1, 0}, {0, 1}});
    CHECK(b2.rank == 2);
    CHECK(abs(determinant(b2.basis)) == 1);

    auto b1 = difference_lattice_basis({{0, 0}, {2, 0}});
    CHECK(b1.rank == 1);
    CHECK(primitive(b1.basis.row_exponent(0)) == b1.basis.row_exponent(0));
    CHECK((b1.basis.row_exponent(0) == Exponent{1, 0} || b1.basis.row_exponent(0) == Exponent{-1, 0}));

    // a non-saturated sublattice of index 2 in the plane saturates to Z^2
    auto bs = difference_lattice_basis({{0, 0}, {1, 1}, {1, -1}});
    CHECK(bs.rank == 2);
    CHECK(abs(determinant(bs.basis)) == 1);
}

TEST_CASE("difference lattice basis is translation and permutation invariant") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int t = 0; t < 50; ++t) {
        std::vector<Exponent> pts;
        for (int j = 0; j < 4; ++j) pts.push_back({d(rng), d(rng), d(rng)});
        LatticeChart a = LatticeChart::of_points(pts);
        std::vector<Exponent> moved = pts;
        Exponent shift{d(rng), d(rng), d(rng)};
        for (auto& x : moved) x = add(x, shift);
        std::shuffle(moved.begin(), moved.end(), rng);
        LatticeChart b = LatticeChart::of_points(moved);
        REQUIRE(a.rank() == b.rank());
        // same lattice: each basis expresses the other's rows integrally
        for (std::size_t i = 0; i < a.rank(); ++i) {
            Exponent c = b.vector_coords(a.basis().row_exponent(i));
            CHECK(b.vector(c) == a.basis().row_exponent(i));
        }
        for (const auto& x : pts) CHECK(a.point(a.coords(x)) == x);
    }
}

TEST_CASE("chart rejects points off the lattice") {
    LatticeChart c = LatticeChart::of_points({{0, 0}, {2, 2}});
    CHECK(c.contains({1, 1}));
    CHECK_FALSE(c.contains({1, 0}));
    CHECK_THROWS_AS(c.coords({1, 0}), std::domain_error);
}

TEST_CASE("simplex normalized volume") {
    CHECK(simplex_normalized_volume({{0, 0}, {1, 0}, {0, 1}}, IntMatrix::identity(2)) == 1);
    CHECK(simplex_normalized_volume({{0}, {2}}, IntMatrix::identity(1)) == 2);
    CHECK(simplex_normalized_volume({{0, 0}, {1, 1}, {2, 2}}, IntMatrix::identity(2)) == 0);
    CHECK_THROWS(simplex_normalized_volume({{0, 0}, {1, 0}}, IntMatrix::identity(2)));

    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> d(-3, 3);
    IntMatrix G = IntMatrix::from_rows({{2, 1}, {1, 1}}, 2);  // unimodular
    for (int t = 0; t < 30; ++t) {
        std::vector<Exponent> pts{{d(rng), d(rng)}, {d(rng), d(rng)}, {d(rng), d(rng)}};
        Int v = simplex_normalized_volume(pts, IntMatrix::identity(2));
        std::vector<Exponent> perm{pts[2], pts[0], pts[1]};
        CHECK(simplex_normalized_volume(perm, IntMatrix::identity(2)) == v);
        CHECK(simplex_normalized_volume(pts, G) == v);
    }
}

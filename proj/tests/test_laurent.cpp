#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "toricgec/io.hpp"
#include "toricgec/laurent.hpp"

using namespace toricgec;

namespace {

Laurent P(const std::string& s, std::size_t rank = 0) {
    return rank ? parse_expression(s, rank) : parse_expression(s);
}

Laurent random_laurent(std::mt19937_64& rng, std::size_t n, int terms) {
    std::uniform_int_distribution<int> e(-2, 3), c(-5, 5);
    Laurent p(n);
    for (int t = 0; t < terms; ++t) {
        Exponent x(n);
        for (auto& v : x) v = e(rng);
        p.add_term(x, Rat(c(rng)));
    }
    return p;
}

// Evaluation at a rational point, an oracle for products and substitutions.
Rat eval(const Laurent& p, const std::vector<Rat>& at) {
    Rat total = 0;
    for (const auto& [e, c] : p.terms()) {
        Rat v = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            Rat b = e[i] < 0 ? 1 / at[i] : at[i];
            for (std::int64_t k = 0; k < (e[i] < 0 ? -e[i] : e[i]); ++k) v *= b;
        }
        total += v;
    }
    return total;
}

}  // namespace

TEST_CASE("ring axioms on random Laurent polynomials") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 60; ++t) {
        Laurent a = random_laurent(rng, 2, 4), b = random_laurent(rng, 2, 4), c = random_laurent(rng, 2, 3);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Laurent(2));
        CHECK(a * Laurent::constant(2, 1) == a);
        CHECK(pow(a, 3) == a * a * a);
        CHECK(add(a, b) == a + b);
        CHECK(mul(a, b) == a * b);
        std::vector<Rat> at{Rat(2, 3), Rat(-5, 7)};
        CHECK(eval(a * b, at) == eval(a, at) * eval(b, at));
    }
}

TEST_CASE("no zero coefficients are stored") {
    Laurent p = P("x+1") - P("x");
    CHECK(p.size() == 1);
    CHECK(p.coeff({0}) == 1);
    CHECK((P("x+y") * Rat(0)).is_zero());
}

TEST_CASE("squared quartic has the expected coefficients") {
    Laurent p = P("2+2x-x^2+2x^3+2x^4");
    Laurent sq = p * p;
    const int expected[] = {4, 8, 0, 4, 17, 4, 0, 8, 4};
    for (int i = 0; i <= 8; ++i) CHECK(sq.coeff({i}) == expected[i]);
    CHECK(sq.size() == 7);
}

TEST_CASE("hexagon numerator expands to the seven hexagon terms") {
    Laurent num = P("(x+y)*(x+1)*(y+1)");
    Laurent shifted = num.times_monomial(1, {-1, -1});
    std::vector<std::pair<Exponent, int>> hex{{{0, -1}, 1}, {{1, -1}, 1}, {{-1, 0}, 1}, {{0, 0}, 2},
                                              {{1, 0}, 1},  {{-1, 1}, 1}, {{0, 1}, 1}};
    CHECK(shifted.size() == 7);
    for (const auto& [e, c] : hex) CHECK(shifted.coeff(e) == c);
}

TEST_CASE("restrict") {
    CHECK(restrict(P("1+x+y"), std::vector<Exponent>{{0, 0}}) == Laurent::constant(2, 1));
    CHECK(restrict(P("1+x+y"), std::vector<Exponent>{}).is_zero());
    Laurent hex = P("3x^-1*y + 5y + 7x*y^-1 + 11y^-1 + 13x + 17x^-1 + 19");
    Laurent edge = restrict(hex, std::vector<Exponent>{{0, -1}, {1, -1}});
    CHECK(edge == P("11y^-1 + 7x*y^-1"));
    CHECK(restrict(hex, [](const Exponent& e) { return e[1] == 1; }) == P("3x^-1*y+5y"));
}

TEST_CASE("monomial normalization") {
    Normalized q = monomial_normalize(P("x^-1*y^-1*(x+y)*(x+1)*(y+1)"));
    CHECK(q.shift.exponent == Exponent{-1, -1});
    CHECK(q.q == P("(x+y)*(x+1)*(y+1)"));

    Normalized m = monomial_normalize(P("3x^5"));
    CHECK(m.q == P("3", 1));
    CHECK(m.shift.exponent == Exponent{5});

    Normalized z = monomial_normalize(P("1+x"));
    CHECK(z.q == P("1+x"));
    CHECK(z.shift.exponent == Exponent{0});

    std::mt19937_64 rng(4);
    for (int t = 0; t < 30; ++t) {
        Laurent p = random_laurent(rng, 3, 5);
        if (p.is_zero()) continue;
        Normalized nz = monomial_normalize(p);
        CHECK(nz.q.times_monomial(nz.shift.scalar, nz.shift.exponent) == p);
    }
}

TEST_CASE("divisibility") {
    CHECK(divides(P("1+x+y"), pow(P("1+x+y"), 2)));
    CHECK(divides(P("x+2"), P("x^2+3x+2")));
    CHECK_FALSE(divides(P("x+3"), P("x^2+3x+2")));
    CHECK(divides(P("x^-3*(x+2)"), P("x^2+3x+2")));  // units are invertible

    Laurent q = P("x^-1*y^-1*(x+y)*(x+1)*(y+1)");
    Laurent quad = P("x^2*y+x*y^2+x^2+6x*y+y^2+x+y");
    for (unsigned k = 1; k <= 6; ++k) CHECK_FALSE(divides(quad, pow(q, k)));
}

TEST_CASE("exact division agrees with multiplication") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 50; ++t) {
        Laurent a = random_laurent(rng, 2, 3), b = random_laurent(rng, 2, 3);
        if (a.is_zero() || b.is_zero()) continue;
        auto q = divide_exact(a * b, b);
        REQUIRE(q.has_value());
        CHECK(*q == a);
        Laurent off = a * b + P("1", 2);
        if (auto r = divide_exact(off, b)) CHECK(*r * b == off);
    }
}

TEST_CASE("monomial substitution") {
    Laurent p = P("1+x+y");
    CHECK(substitute_monomial(p, IntMatrix::identity(2), {1, 1}) == p);
    CHECK(substitute_monomial(P("1+x"), IntMatrix::identity(1), {2}) == P("1+2x"));

    // x -> y, y -> x y
    IntMatrix map = IntMatrix::from_rows({{0, 1}, {1, 1}}, 2);
    Laurent s = substitute_monomial(P("x^2+x^-1*y"), map, {1, 1});
    CHECK(s == P("y^2+x"));

    std::mt19937_64 rng(2);
    for (int t = 0; t < 20; ++t) {
        Laurent a = random_laurent(rng, 2, 3), b = random_laurent(rng, 2, 3);
        std::vector<Rat> sc{Rat(2), Rat(-1, 3)};
        CHECK(substitute_monomial(a * b, map, sc) == substitute_monomial(a, map, sc) * substitute_monomial(b, map, sc));
    }

    // the all-one hexagon parameters reduce to q
    Laurent hex = P("x^-1*y^-1*(x+y)*(x+1)*(y+1)");
    Rat rho1 = 1, rho2 = 1, rho3 = 1;
    Laurent red = substitute_monomial(hex, IntMatrix::identity(2), {rho3 / rho2, rho3}) * (1 / (rho1 * rho3));
    CHECK(red == hex);
}

TEST_CASE("graded lexicographic order and degree") {
    CHECK(grlex_less({1, 0}, {0, 2}));
    CHECK(grlex_less({0, 1}, {1, 0}));
    CHECK_FALSE(grlex_less({1, 0}, {1, 0}));
    CHECK(total_degree(P("1+x^2*y+y")) == 3);
}

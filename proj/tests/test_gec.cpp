#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "toricgec/fano.hpp"
#include "toricgec/gec.hpp"
#include "toricgec/io.hpp"
#include "toricgec/monge_ampere.hpp"

using namespace toricgec;

namespace {

Laurent P(const std::string& s, std::size_t rank = 0) {
    return rank ? parse_expression(s, rank) : parse_expression(s);
}

// GEC by linear search over kappa, independent of the single-bound shortcut.
std::optional<unsigned> minimal_kappa(const Laurent& p, unsigned limit) {
    Laurent m = mu(p).mu;
    Laurent pk = p;
    for (unsigned k = 1; k <= limit; ++k, pk = pk * p)
        if (divides(m, pk)) return k;
    return std::nullopt;
}

std::size_t facet_with_normal(const LatticePolytope& P, const Exponent& u) {
    for (std::size_t k = 0; k < P.facets().size(); ++k)
        if (P.facets()[k].u == u) return k;
    throw std::logic_error("no such facet");
}

}  // namespace

TEST_CASE("gec_check verdicts") {
    CHECK(gec_check(P("1+2x+x^2")).verdict == Verdict::holds);
    CHECK(mu(P("1+2x+x^2")).mu == P("2x*(x+1)^2"));
    CHECK(gec_check(P("2+3x+x^2")).verdict == Verdict::fails);
    CHECK(gec_check(hexagon_q()).verdict == Verdict::fails);
    CHECK(gec_check(P("(1+x)^3")).verdict == Verdict::holds);
    CHECK(gec_check(P("1+x+y")).verdict == Verdict::holds);
    CHECK_THROWS_AS(gec_check(P("1+x^2")), NotUnimodular);
    CHECK_THROWS(gec_check(Laurent(1)));
    ObstructionReport r = gec_check(P("2+3x+x^2"));
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->test == "divisibility");
    CHECK(r.witness->data.contains("kappa"));
}

TEST_CASE("single kappa bound agrees with linear search") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> c(1, 4), nu(1, 3);
    for (int t = 0; t < 25; ++t) {
        // GEC-positive: products of powers of simplex polynomials in disjoint variables
        Laurent a = pow(P("1+x", 2) * Rat(c(rng)) + P("y", 2) * Rat(c(rng)), nu(rng));
        Laurent b = pow(P("1", 1) + P("x", 1) * Rat(c(rng)), nu(rng));
        for (const Laurent& p : {a, b}) {
            Laurent m = mu(p).mu;
            auto kmin = minimal_kappa(p, 12);
            REQUIRE(kmin.has_value());
            const auto kstar = std::max<std::int64_t>(1, total_degree(monomial_normalize(m).q));
            CHECK(static_cast<std::int64_t>(*kmin) <= kstar);
            CHECK(gec_check(p).verdict == Verdict::holds);
        }
    }
    std::uniform_int_distribution<int> cc(1, 5);
    for (int t = 0; t < 25; ++t) {
        Laurent p = P("1", 1) * Rat(cc(rng)) + P("x", 1) * Rat(cc(rng)) + P("x^2", 1) * Rat(cc(rng));
        bool linear = minimal_kappa(p, 8).has_value();
        CHECK((gec_check(p).verdict == Verdict::holds) == linear);
    }
}

TEST_CASE("gec verdicts are invariant under unimodular maps and units") {
    IntMatrix map = IntMatrix::from_rows({{1, 1}, {0, 1}}, 2);
    for (const Laurent& p : {hexagon_q(), P("1+x+y"), P("(1+x)*(1+y)")}) {
        Verdict v = gec_check(p).verdict;
        CHECK(gec_check(substitute_monomial(p, map, {2, 3})).verdict == v);
        CHECK(gec_check(p.times_monomial(5, {1, 1})).verdict == v);
    }
}

TEST_CASE("einstein_check") {
    auto a = einstein_check(P("1+x+y"), std::nullopt);
    CHECK_FALSE(a.holds);
    auto b = einstein_check(P("1+x+y"), Rat(3));
    CHECK(b.holds);
    CHECK(*b.c == 1);
    CHECK(*b.m == Exponent{1, 1});
    auto c = einstein_check(P("(1+x)*(1+y)"), Rat(2));
    CHECK(c.holds);
    CHECK(*c.m == Exponent{1, 1});
    CHECK(c.b == 1);
    CHECK_THROWS_AS(einstein_check(P("1+x+y"), Rat(5, 2)), std::domain_error);
    auto k = einstein_check(P("7", 1), std::nullopt);
    CHECK_FALSE(k.holds);
    CHECK(einstein_check(P("1", 1), std::nullopt).holds);
    CHECK(einstein_check(P("1+x", 1), Rat(2)).holds);
    CHECK_FALSE(einstein_check(P("1+x", 1), Rat(1)).holds);
}

TEST_CASE("classify_1d") {
    auto a = classify_1d(P("1+2x+x^2"));
    CHECK(a.is_gec);
    CHECK(a.normal_form->c == 1);
    CHECK(a.normal_form->m == 0);
    CHECK(a.normal_form->xi == 1);
    CHECK(a.normal_form->nu == 2);
    CHECK_FALSE(classify_1d(P("2+3x+x^2")).is_gec);
    auto b = classify_1d(P("4x^3*(x+1/2)^5"));
    CHECK(b.is_gec);
    CHECK(b.normal_form->c == 4);
    CHECK(b.normal_form->m == 3);
    CHECK(b.normal_form->xi == Rat(1, 2));
    CHECK(b.normal_form->nu == 5);
    auto m = classify_1d(P("3x^-2"));
    CHECK(m.is_gec);
    CHECK(m.normal_form->nu == 0);
    CHECK_FALSE(classify_1d(P("1+x^2")).in_hypothesis);
    CHECK_THROWS(classify_1d(P("1+x+y")));
}

TEST_CASE("edge shape test") {
    // p|E = y^-1 (x+2)^3 along y = -1, p|E' = (x+2)^2 along y = 0, apex at y = 1
    Laurent p = P("y^-1*(x+2)^3 + (x+2)^2 + 5y");
    LatticePolytope np = hull(p.support());
    auto e = edge_shape_test(p, facet_with_normal(np, {0, 1}));
    CHECK(e.ok);
    CHECK(*e.xi == 2);
    CHECK(e.edge_length == 3);
    CHECK(e.adjacent_length == 2);

    Laurent bad = P("y^-1*(2+3x+x^2)*(x+1) + (x+2)^2 + 5y");
    CHECK_FALSE(edge_shape_test(bad, facet_with_normal(hull(bad.support()), {0, 1})).ok);

    // a single lattice point above the edge
    Laurent tri = P("1+2x+x^2+y");
    auto t = edge_shape_test(tri, facet_with_normal(hull(tri.support()), {0, 1}));
    CHECK(t.ok);
    CHECK(t.adjacent_length == 0);
    CHECK(*t.xi == 1);
    CHECK_THROWS(edge_shape_test(tri, 17));
}

TEST_CASE("edge ratio test") {
    std::vector<Exponent> trap;
    for (std::int64_t y = -1; y <= 1; ++y)
        for (std::int64_t x = -1; x <= 1 - y; ++x) trap.push_back({x, y});
    EdgeRatio tr = edge_ratio_test(hull(trap));
    CHECK_FALSE(tr.ok);
    std::set<Rat> rs;
    for (const auto& e : tr.edges) rs.insert(e.ratio);
    CHECK(rs.count(Rat(2, 3)));
    CHECK(rs.count(Rat(1)));

    EdgeRatio hx = edge_ratio_test(standard_hexagon());
    CHECK(hx.ok);
    for (const auto& e : hx.edges) CHECK(e.ratio == 2);

    // invariance under a unimodular map
    std::vector<Exponent> moved;
    for (const auto& x : trap) moved.push_back({2 * x[0] + x[1], x[0] + x[1]});
    std::multiset<Rat> before, after;
    for (const auto& e : tr.edges) before.insert(e.ratio);
    for (const auto& e : edge_ratio_test(hull(moved)).edges) after.insert(e.ratio);
    CHECK(before == after);

    CHECK_THROWS(edge_ratio_test(hull({{0, 0}, {1, 1}})));
}

TEST_CASE("hexagon obstruction") {
    ObstructionReport r = hexagon_obstruction(hexagon_q());
    CHECK(r.verdict == Verdict::fails);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->data["stage"] == "reduction");
    CHECK(r.witness->data["quadratic_factor_divides_mu"] == true);

    // all parameters one in product form
    CHECK(hexagon_obstruction(P("x^-1*y^-1*(x+y)*(x+1)*(y+1)")).witness->data["stage"] == "reduction");

    // a torus rescaling of q stays consistent and still reduces to q
    Laurent scaled = substitute_monomial(hexagon_q(), IntMatrix::identity(2), {Rat(2), Rat(3)}) * Rat(5);
    CHECK(hexagon_obstruction(scaled).witness->data["stage"] == "reduction");

    Laurent off = hexagon_q() + P("1", 2);  // center coefficient 3
    ObstructionReport o = hexagon_obstruction(off);
    CHECK(o.verdict == Verdict::fails);
    CHECK(o.witness->data["stage"] == "overlap");
    CHECK(o.witness->data["point"] == Exponent{0, 0});

    // a generic hexagon polynomial breaks one of the boundary equations
    Laurent generic = P("3x^-1*y + 5y + 7x*y^-1 + 11y^-1 + 13x + 17x^-1 + 19");
    CHECK(hexagon_obstruction(generic).witness->data["stage"] == "overlap");

    // multiplying by a unit moves the support off the hexagon; the full check still fails
    Laurent moved = hexagon_q().times_monomial(5, {1, 1});
    CHECK_THROWS(hexagon_obstruction(moved));
    CHECK(gec_check(moved).verdict == Verdict::fails);
    ObstructionReport d = face_descent(hull(moved.support()), moved, 2);
    CHECK(d.verdict == Verdict::fails);
    CHECK(d.witness->test == "hexagon");
}

TEST_CASE("face descent") {
    LatticePolytope v1 = anticanonical_polytope(FamilySpec::parse("V:k=1"));
    ObstructionReport a = face_descent(v1, std::nullopt, 2);
    CHECK(a.verdict == Verdict::fails);
    CHECK(a.witness->test == "hexagon");

    LatticePolytope s21 = anticanonical_polytope(FamilySpec::parse("S:m=2,k=1"));
    ObstructionReport b = face_descent(s21, std::nullopt, 2);
    CHECK(b.verdict == Verdict::fails);
    CHECK(b.witness->test == "edge-ratio");
    std::set<std::string> ratios{b.witness->data["ratios"][0].get<std::string>(),
                                 b.witness->data["ratios"][1].get<std::string>()};
    CHECK(ratios == std::set<std::string>{"3/4", "1"});

    LatticePolytope p2 = anticanonical_polytope(FamilySpec::parse("P:n=2"));
    CHECK(face_descent(p2, std::nullopt, 2).verdict == Verdict::inconclusive);

    // concrete GEC-positive polynomials never produce an obstruction
    for (const Laurent& p : {P("1+x+y"), P("(1+x)*(1+y)"), P("(1+x+y)^2"), P("(1+x)*(1+y)*(1+z)")}) {
        LatticePolytope np = hull(p.support());
        ObstructionReport r = face_descent(np, p, static_cast<int>(np.dim()));
        CHECK(r.verdict == Verdict::holds);
    }
    // heredity: faces of GEC-positive polynomials satisfy GEC
    Laurent p = P("(1+2x+3y)^2*(1+z)");
    auto parent = std::make_shared<const LatticePolytope>(hull(p.support()));
    for (int d = 0; d <= 2; ++d)
        for (const auto& F : faces(*parent, d)) CHECK(gec_check(face_chart_polynomial(p, F)).verdict == Verdict::holds);

    ObstructionReport c = face_descent(hull(P("2+3x+x^2").support()), P("2+3x+x^2"), 1);
    CHECK(c.verdict == Verdict::fails);
    CHECK_THROWS(face_descent(hull({{0, 0}, {1, 1}}), std::nullopt, 2));
}

TEST_CASE("descent is deterministic across worker counts") {
    LatticePolytope s = anticanonical_polytope(FamilySpec::parse("S:m=2,k=2"));
    setenv("TORIC_GEC_THREADS", "1", 1);
    auto one = face_descent(s, std::nullopt, 2);
    setenv("TORIC_GEC_THREADS", "4", 1);
    auto four = face_descent(s, std::nullopt, 2);
    unsetenv("TORIC_GEC_THREADS");
    CHECK(one.witness->face_vertices == four.witness->face_vertices);
    CHECK(one.trace.size() == four.trace.size());
}

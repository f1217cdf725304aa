#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "toricgec/io.hpp"
#include "toricgec/monge_ampere.hpp"

using namespace toricgec;

namespace {

Laurent P(const std::string& s, std::size_t rank = 0) {
    return rank ? parse_expression(s, rank) : parse_expression(s);
}

const std::vector<Exponent> hexagon_points{{0, -1}, {1, -1}, {-1, 0}, {0, 0}, {1, 0}, {-1, 1}, {0, 1}};

std::vector<Exponent> vertex_set(const LatticePolytope& P) { return P.vertices(); }

}  // namespace

TEST_CASE("mu golden values") {
    CHECK(mu(P("1+x+y")).mu == P("x*y"));
    CHECK(mu(P("2+3x+x^2")).mu == P("6x+8x^2+3x^3"));
    CHECK(mu(P("5x^2*y^-1", 2)).mu == P("5x^2*y^-1", 2));
    CHECK(mu(P("5x^2*y^-1", 2)).rank_r == 0);
    CHECK_THROWS(mu(Laurent(2)));

    Laurent q = P("x^-1*y^-1*(x+y)*(x+1)*(y+1)");
    Laurent expected = P("x^-2*y^-2*(x^2*y+x*y^2+x^2+6x*y+y^2+x+y)*(x+y)*(x+1)*(y+1)");
    CHECK(mu(q).mu == expected);
}

TEST_CASE("mu agrees with the Hessian oracle") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> e(-2, 2), c(-4, 4), sz(1, 5);
    for (int t = 0; t < 40; ++t) {
        Laurent p(2);
        int terms = sz(rng);
        while (static_cast<int>(p.size()) < terms) {
            int v = c(rng);
            if (v) p.add_term({e(rng), e(rng)}, Rat(v));
        }
        CHECK(mu(p).mu == oracle::hessian_mu(p));
    }
    // a support whose difference lattice has index 2 must use the saturated volumes
    Laurent p = P("1+x*y+x*y^-1");
    CHECK(mu(p).mu == oracle::hessian_mu(p));
    // rank 1 inside Z^3
    Laurent r1 = P("x*y^2*z+3x^3*y^4*z+2x^5*y^6*z");
    CHECK(mu(r1).rank_r == 1);
    CHECK(mu(r1).mu == oracle::hessian_mu(r1));
}

TEST_CASE("univariate closed form") {
    CHECK(mu_univariate_factored(1, 0, {{Rat(1), 1}}) == P("x"));
    CHECK(mu_univariate_factored(1, 0, {{Rat(1), 1}, {Rat(2), 1}}) == P("3x^3+8x^2+6x"));
    CHECK(mu_univariate_factored(1, 0, {{Rat(1), 1}, {Rat(2), 1}}) == mu(P("2+3x+x^2")).mu);
    for (unsigned nu = 1; nu <= 4; ++nu) {
        Rat xi(3, 2);
        Laurent lin = Laurent::from_terms(1, {{{0}, xi}, {{1}, 1}});
        CHECK(mu_univariate_factored(1, 0, {{xi, nu}}) == pow(lin, 2 * nu - 2).times_monomial(Rat(nu) * xi, {1}));
    }
    CHECK_THROWS(mu_univariate_factored(1, 0, {{Rat(1), 1}, {Rat(1), 2}}));
    CHECK_THROWS(mu_univariate_factored(1, 0, {{Rat(0), 1}}));
}

TEST_CASE("scaling, power and product laws") {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<int> e(-1, 2), c(1, 4);
    for (int t = 0; t < 20; ++t) {
        Laurent p(2);
        for (int j = 0; j < 4; ++j) p.add_term({e(rng), e(rng)}, Rat(c(rng)));
        MuResult m = mu(p);
        const auto r = static_cast<unsigned>(m.rank_r);
        Exponent shift{e(rng), e(rng)};
        Rat k(3, 2);
        Rat kr = 1;
        for (unsigned i = 0; i <= r; ++i) kr *= k;
        CHECK(mu(p.times_monomial(k, shift)).mu ==
              m.mu.times_monomial(kr, scale(static_cast<std::int64_t>(r + 1), shift)));
        for (unsigned lam : {2u, 3u}) {
            Rat lr = 1;
            for (unsigned i = 0; i < r; ++i) lr *= lam;
            CHECK(mu(pow(p, lam)).mu == pow(p, (r + 1) * (lam - 1)) * m.mu * lr);
        }
    }
    // product law in disjoint variables
    Laurent a = P("1+2x1+x2", 4), b = P("3+x3+x3*x4^2+x4", 4);
    const unsigned ra = mu(a).rank_r, rb = mu(b).rank_r;
    CHECK(mu(a * b).mu == pow(a, rb) * pow(b, ra) * mu(a).mu * mu(b).mu);
}

TEST_CASE("unimodular substitution commutes with mu") {
    IntMatrix map = IntMatrix::from_rows({{2, 1}, {1, 1}}, 2);
    std::mt19937_64 rng(14);
    std::uniform_int_distribution<int> c(1, 5);
    for (int t = 0; t < 10; ++t) {
        Laurent p = oracle::random_polynomial(rng, hexagon_points, 1, 5);
        CHECK(mu(substitute_monomial(p, map, {1, 1})).mu == substitute_monomial(mu(p).mu, map, {1, 1}));
        // scalars act as a torus rescaling
        std::vector<Rat> sc{Rat(c(rng)), Rat(1, c(rng))};
        CHECK(mu(substitute_monomial(p, map, sc)).mu == substitute_monomial(mu(p).mu, map, sc));
    }
}

TEST_CASE("Newton polytope predictions") {
    LatticePolytope hex = hull(hexagon_points);
    std::vector<Exponent> doubled;
    for (const auto& v : hex.vertices()) doubled.push_back(scale(2, v));
    CHECK(predicted_np_of_mu(hex).vertices() == hull(doubled).vertices());

    CHECK(predicted_np_of_mu(hull({{0, 0}, {1, 0}, {0, 1}})).vertices() == std::vector<Exponent>{{1, 1}});

    auto ub = unimodular_support({{0, 0}, {1, 0}, {0, 1}});
    CHECK(predicted_mu_vertices(hull({{0, 0}, {1, 0}, {0, 1}}), ub.vertex_bases).front() == Exponent{1, 1});

    auto hb = unimodular_support(hexagon_points);
    auto pv = predicted_mu_vertices(hex, hb.vertex_bases);
    CHECK(std::set<Exponent>(pv.begin(), pv.end()) == std::set<Exponent>(doubled.begin(), doubled.end()));
    CHECK(std::find(pv.begin(), pv.end(), Exponent{2, 0}) != pv.end());

    // one-dimensional: endpoints 2m+1 and 2m'-1
    LatticePolytope seg = hull({{1}, {4}});
    auto sb = unimodular_support({{1}, {2}, {3}, {4}});
    CHECK(predicted_mu_vertices(seg, sb.vertex_bases) == std::vector<Exponent>{{3}, {7}});
    CHECK(hull(mu(P("x+x^2+x^3+x^4")).mu.support()).vertices() == std::vector<Exponent>{{3}, {7}});

    std::mt19937_64 rng(41);
    for (int t = 0; t < 10; ++t) {
        Laurent p = oracle::random_polynomial(rng, hexagon_points, -5, 5);
        CHECK(vertex_set(hull(mu(p).mu.support())) == predicted_np_of_mu(hex).vertices());
    }
}

TEST_CASE("initial parts") {
    Laurent p = P("1+x+y");
    CHECK(initial_part(p, NormalCone{}) == p);
    CHECK(initial_part(p, NormalCone{{{1, 1}}}) == P("1", 2));
    Laurent hex = P("3x^-1*y + 5y + 7x*y^-1 + 11y^-1 + 13x + 17x^-1 + 19");
    CHECK(initial_part(hex, NormalCone{{{0, 1}}}) == P("11y^-1+7x*y^-1"));
}

TEST_CASE("initial factorization") {
    auto r = check_initial_factorization(P("1+x+y"), Exponent{0, 1});
    CHECK(r.equal);
    CHECK(r.lhs == P("x*y"));

    Laurent q = P("x^-1*y^-1*(x+y)*(x+1)*(y+1)");
    CHECK(check_initial_factorization(q, Exponent{0, 1}).equal);

    std::vector<Exponent> trap;
    for (std::int64_t y = -1; y <= 1; ++y)
        for (std::int64_t x = -1; x <= 1 - y; ++x) trap.push_back({x, y});
    std::mt19937_64 rng(5);
    LatticePolytope T = hull(trap);
    for (int t = 0; t < 10; ++t) {
        Laurent p = oracle::random_polynomial(rng, trap, 1, 9);
        for (const auto& f : T.facets()) CHECK(check_initial_factorization(p, f.u).equal);
    }
    CHECK_THROWS(check_initial_factorization(P("1+x^2+y"), Exponent{0, 1}));
    CHECK_THROWS(check_initial_factorization(P("1+x+y"), Exponent{1, 1}));

    // two-ray version on the unit cube
    std::vector<Exponent> cube;
    for (int a = 0; a <= 1; ++a)
        for (int b = 0; b <= 1; ++b)
            for (int c = 0; c <= 1; ++c) cube.push_back({a, b, c});
    Laurent pc = oracle::random_polynomial(rng, cube, 1, 9);
    CHECK(check_initial_factorization(pc, std::vector<Exponent>{{1, 0, 0}, {0, 1, 0}}).equal);
    CHECK(check_initial_factorization(pc, std::vector<Exponent>{{-1, 0, 0}, {0, 0, -1}}).equal);
}

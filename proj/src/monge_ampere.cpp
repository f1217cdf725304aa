#include "toricgec/monge_ampere.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "toricgec/parallel.hpp"

namespace toricgec {

namespace {

struct SubsetWalker {
    std::size_t r;
    const std::vector<Exponent>& chart_pts;  // chart coordinates
    const std::vector<Exponent>& ambient;
    const std::vector<Rat>& coeffs;
    Laurent& out;

    std::vector<std::size_t> chosen;
    std::vector<std::vector<Rat>> echelon;  // reduced difference rows of the chosen prefix
    std::vector<std::size_t> pivots;

    // Reduces the difference y_j - y_{j0}; returns false when it is dependent on the prefix.
    bool push(std::size_t j) {
        const Exponent& y0 = chart_pts[chosen[0]];
        std::vector<Rat> row(r);
        for (std::size_t i = 0; i < r; ++i) row[i] = Rat(static_cast<long>(chart_pts[j][i] - y0[i]));
        for (std::size_t k = 0; k < echelon.size(); ++k) {
            if (row[pivots[k]] == 0) continue;
            Rat f = row[pivots[k]] / echelon[k][pivots[k]];
            for (std::size_t i = 0; i < r; ++i) row[i] -= f * echelon[k][i];
        }
        auto it = std::find_if(row.begin(), row.end(), [](const Rat& v) { return v != 0; });
        if (it == row.end()) return false;
        pivots.push_back(static_cast<std::size_t>(it - row.begin()));
        echelon.push_back(std::move(row));
        chosen.push_back(j);
        return true;
    }

    void pop() {
        echelon.pop_back();
        pivots.pop_back();
        chosen.pop_back();
    }

    void emit() {
        const Exponent& y0 = chart_pts[chosen[0]];
        IntMatrix M(r, r);
        for (std::size_t a = 1; a <= r; ++a)
            for (std::size_t i = 0; i < r; ++i) M(a - 1, i) = static_cast<long>(chart_pts[chosen[a]][i] - y0[i]);
        Int vol = determinant(M);
        Rat c = Rat(vol * vol);
        Exponent e(ambient[0].size(), 0);
        for (auto j : chosen) {
            c *= coeffs[j];
            e = add(e, ambient[j]);
        }
        out.add_term(e, c);
    }

    void walk(std::size_t start) {
        if (chosen.size() == r + 1) {
            emit();
            return;
        }
        const std::size_t need = r + 1 - chosen.size();
        for (std::size_t j = start; j + need <= chart_pts.size(); ++j) {
            if (!push(j)) continue;
            walk(j + 1);
            pop();
        }
    }
};

}  // namespace

MuResult mu(const Laurent& p) {
    if (p.is_zero()) throw std::invalid_argument("mu: zero polynomial");
    MuResult res;
    std::vector<Exponent> ambient = p.support();
    std::vector<Rat> coeffs;
    for (const auto& t : p.terms()) coeffs.push_back(t.second);
    res.chart = LatticeChart::of_points(ambient);
    res.rank_r = res.chart.rank();
    const std::size_t r = res.rank_r;
    if (r == 0) {
        res.mu = p;
        return res;
    }
    std::vector<Exponent> chart_pts;
    for (const auto& e : ambient) chart_pts.push_back(res.chart.coords(e));

    const std::size_t s = ambient.size();
    std::vector<Laurent> partial(s, Laurent(p.rank()));
    parallel_for(s, [&](std::size_t j0) {
        SubsetWalker w{r, chart_pts, ambient, coeffs, partial[j0], {}, {}, {}};
        w.chosen.push_back(j0);
        w.walk(j0 + 1);
    });
    res.mu = Laurent(p.rank());
    for (const auto& part : partial) res.mu += part;
    return res;
}

Laurent mu_univariate_factored(const Rat& c, std::int64_t m, const std::vector<RootFactor>& factors) {
    if (c == 0) throw std::invalid_argument("mu_univariate_factored: zero leading constant");
    if (factors.empty()) throw std::invalid_argument("mu_univariate_factored: need at least one root");
    for (std::size_t k = 0; k < factors.size(); ++k) {
        if (factors[k].xi == 0) throw std::invalid_argument("mu_univariate_factored: zero root");
        if (factors[k].multiplicity == 0) throw std::invalid_argument("mu_univariate_factored: zero multiplicity");
        for (std::size_t l = 0; l < k; ++l)
            if (factors[l].xi == factors[k].xi) throw std::invalid_argument("mu_univariate_factored: repeated root");
    }
    auto linear = [](const Rat& xi) { return Laurent::from_terms(1, {{{0}, xi}, {{1}, 1}}); };
    Laurent sum(1);
    for (std::size_t k = 0; k < factors.size(); ++k) {
        const auto& f = factors[k];
        Laurent term = pow(linear(f.xi), 2 * f.multiplicity - 2) * (Rat(f.multiplicity) * f.xi);
        for (std::size_t l = 0; l < factors.size(); ++l)
            if (l != k) term = term * pow(linear(factors[l].xi), 2 * factors[l].multiplicity);
        sum += term;
    }
    return sum.times_monomial(c * c, {checked_add(checked_mul(2, m), 1)});
}

LatticePolytope predicted_np_of_mu(const LatticePolytope& delta) {
    if (!delta.full_dimensional()) throw std::invalid_argument("predicted_np_of_mu: polytope is not full-dimensional");
    const auto n = static_cast<std::int64_t>(delta.dim());
    std::vector<Facet> shifted;
    for (const auto& f : delta.facets())
        shifted.push_back(Facet{f.u, checked_add(checked_mul(n + 1, f.a), -1)});
    return polytope_from_inequalities(shifted, delta.ambient_rank());
}

std::vector<Exponent> predicted_mu_vertices(const LatticePolytope& delta,
                                            const std::map<Exponent, std::vector<Exponent>>& vertex_bases) {
    const auto n = static_cast<std::int64_t>(delta.dim());
    std::vector<Exponent> out;
    for (const auto& v : delta.vertices()) {
        auto it = vertex_bases.find(v);
        if (it == vertex_bases.end()) throw std::invalid_argument("predicted_mu_vertices: missing basis at a vertex");
        Exponent w = scale(n + 1, v);
        for (const auto& b : it->second) w = add(w, b);
        out.push_back(std::move(w));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Laurent initial_part(const Laurent& p, const NormalCone& sigma) {
    if (p.is_zero()) throw std::invalid_argument("initial_part: zero polynomial");
    return restrict(p, min_weight_subset(p.support(), sigma));
}

namespace {

void require_unimodular(const Laurent& p) {
    auto us = unimodular_support(p.support());
    if (!us.ok) throw std::domain_error("support is not unimodular: " + us.reason);
}

std::size_t facet_index_of(const LatticePolytope& P, const Exponent& tau) {
    for (std::size_t k = 0; k < P.facets().size(); ++k)
        if (P.facets()[k].u == tau) return k;
    throw std::invalid_argument("ray " + to_string(tau) + " is not a facet normal of NP(p)");
}

}  // namespace

FactorizationCheck check_initial_factorization(const Laurent& p, const Exponent& tau) {
    return check_initial_factorization(p, std::vector<Exponent>{tau});
}

FactorizationCheck check_initial_factorization(const Laurent& p, const std::vector<Exponent>& rays) {
    if (p.is_zero()) throw std::invalid_argument("check_initial_factorization: zero polynomial");
    require_unimodular(p);
    auto P = std::make_shared<const LatticePolytope>(hull(p.support()));
    if (!P->full_dimensional()) throw std::invalid_argument("check_initial_factorization: NP(p) not full-dimensional");
    std::vector<std::size_t> idx;
    for (const auto& tau : rays) idx.push_back(facet_index_of(*P, tau));

    NormalCone sigma{rays};
    FactorizationCheck out;
    out.lhs = initial_part(mu(p).mu, sigma);
    out.rhs = mu(initial_part(p, sigma)).mu;

    auto F = face_from_active(P, idx);
    if (!F || F->dim + rays.size() != P->dim())
        throw std::invalid_argument("check_initial_factorization: rays do not span a cone of the normal fan");
    for (std::size_t i = 0; i < idx.size(); ++i) {
        std::vector<std::size_t> others;
        for (std::size_t j = 0; j < idx.size(); ++j)
            if (j != i) others.push_back(idx[j]);
        auto G = face_from_active(P, others);
        // F is a facet of G; take the lattice points of G at height 1 over it, inside G's own chart
        LatticePolytope Gc = G->chart_polytope();
        std::set<Exponent> Fc;
        for (const auto& v : F->vertices) Fc.insert(G->chart.coords(v));
        std::size_t facet = Gc.facets().size();
        for (std::size_t k = 0; k < Gc.facets().size(); ++k) {
            std::set<Exponent> on;
            for (auto vi : Gc.facet_vertices(k)) on.insert(Gc.vertices()[vi]);
            if (on == Fc) facet = k;
        }
        if (facet == Gc.facets().size()) throw std::logic_error("face is not a facet of its neighbouring face");
        std::vector<Exponent> adj;
        for (const auto& c : adjacent_polytope(Gc, facet)) adj.push_back(G->chart.point(c));
        out.rhs = out.rhs * restrict(p, adj);
    }
    out.equal = out.lhs == out.rhs;
    return out;
}

}  // namespace toricgec

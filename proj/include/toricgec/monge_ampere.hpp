#pragma once

#include <map>
#include <vector>

#include "toricgec/laurent.hpp"
#include "toricgec/polytope.hpp"

namespace toricgec {

struct MuResult {
    Laurent mu;
    std::size_t rank_r = 0;
    LatticeChart chart;  // chart of M_p used for the simplex volumes
};

// Cauchy-Binet evaluation: sum over affinely independent (r+1)-subsets J of
// (r! vol)^2 prod c_j x^{m_j}, with volumes in the saturated lattice M_p.
MuResult mu(const Laurent& p);

struct RootFactor {
    Rat xi;
    unsigned multiplicity = 1;
};

// Closed form for p = c x^m prod (x + xi_k)^{e_k}.
Laurent mu_univariate_factored(const Rat& c, std::int64_t m, const std::vector<RootFactor>& factors);

// Same normals as Delta, offsets (n+1) a - 1.
LatticePolytope predicted_np_of_mu(const LatticePolytope& delta);

// {(n+1) v + sum of B_v}.
std::vector<Exponent> predicted_mu_vertices(const LatticePolytope& delta,
                                            const std::map<Exponent, std::vector<Exponent>>& vertex_bases);

Laurent initial_part(const Laurent& p, const NormalCone& sigma);

struct FactorizationCheck {
    Laurent lhs;
    Laurent rhs;
    bool equal = false;
};

// init_tau(mu(p)) against mu(init_tau(p)) * p|_{F'} for a facet normal tau of NP(p).
FactorizationCheck check_initial_factorization(const Laurent& p, const Exponent& tau);

// Cone version: sigma spanned by facet normals rays; compares init_sigma(mu(p)) with
// mu(init_sigma(p)) * prod_i p|_{F^(i)}, F^(i) the adjacent polytope of F_sigma inside G_i.
FactorizationCheck check_initial_factorization(const Laurent& p, const std::vector<Exponent>& rays);

}  // namespace toricgec

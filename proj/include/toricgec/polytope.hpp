#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "toricgec/laurent.hpp"
#include "toricgec/lattice.hpp"

namespace toricgec {

// <u, x> >= -a. For a lower-dimensional polytope u and x are chart coordinates.
struct Facet {
    Exponent u;
    std::int64_t a = 0;
    bool operator==(const Facet& o) const { return u == o.u && a == o.a; }
    bool operator<(const Facet& o) const { return u != o.u ? u < o.u : a < o.a; }
};

class LatticePolytope {
public:
    LatticePolytope() = default;

    std::size_t ambient_rank() const { return chart_.ambient_rank(); }
    std::size_t dim() const { return chart_.rank(); }
    bool full_dimensional() const { return dim() == ambient_rank(); }

    const std::vector<Exponent>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }
    // Affine span chart; identity with zero base when full-dimensional.
    const LatticeChart& chart() const { return chart_; }
    // Sorted vertex indices lying on facet k.
    const std::vector<std::size_t>& facet_vertices(std::size_t k) const { return facet_vertices_.at(k); }

    bool contains(const Exponent& x) const;
    // Height <u_k, x> + a_k of x over facet k (chart coordinates for lower-dimensional polytopes).
    std::int64_t facet_height(std::size_t k, const Exponent& x) const;
    std::vector<Exponent> lattice_points() const;

    bool operator==(const LatticePolytope& o) const {
        return vertices_ == o.vertices_ && facets_ == o.facets_ && chart_.base() == o.chart_.base() &&
               chart_.basis() == o.chart_.basis();
    }

    friend LatticePolytope hull(const std::vector<Exponent>& points);
    friend LatticePolytope polytope_from_inequalities(const std::vector<Facet>& facets, std::size_t n);

private:
    void finish(std::vector<Exponent> chart_coords_of_points, const std::vector<Exponent>& ambient_points,
                std::vector<Facet> facets);

    std::vector<Exponent> vertices_;
    std::vector<Facet> facets_;
    LatticeChart chart_;
    std::vector<std::vector<std::size_t>> facet_vertices_;
};

// Exact convex hull; lower-dimensional inputs are handled in their difference-lattice chart.
LatticePolytope hull(const std::vector<Exponent>& points);
// Full-dimensional lattice polytope {x : <u, x> >= -a}; throws if unbounded, empty or non-lattice.
LatticePolytope polytope_from_inequalities(const std::vector<Facet>& facets, std::size_t n);

struct Face {
    std::shared_ptr<const LatticePolytope> parent;
    std::vector<std::size_t> active;      // sorted indices of parent facets containing the face
    std::size_t dim = 0;
    std::vector<std::size_t> vertex_ids;  // sorted indices into parent->vertices()
    std::vector<Exponent> vertices;
    std::vector<Exponent> points;         // lattice points of the face (ambient)
    LatticeChart chart;                   // base = first vertex, basis of the face's difference lattice

    // The face as a full-dimensional polytope in its own chart.
    LatticePolytope chart_polytope() const;
};

std::vector<Face> faces(const LatticePolytope& P, int d);
Face face_from_vertex_ids(const std::shared_ptr<const LatticePolytope>& parent, std::vector<std::size_t> ids);
// The face cut out by forcing the given facets to be tight; nullopt when it is empty.
std::optional<Face> face_from_active(const std::shared_ptr<const LatticePolytope>& parent,
                                     const std::vector<std::size_t>& tight);

struct NormalCone {
    std::vector<Exponent> rays;
};

NormalCone normal_cone(const Face& F);

// Elements y of C with <u, x - y> >= 0 for all generators u and all x in C.
std::vector<Exponent> min_weight_subset(const std::vector<Exponent>& C, const NormalCone& sigma);
std::vector<Exponent> min_weight_subset(const std::vector<Exponent>& C, const Exponent& ray);

// Lattice points of P at height exactly 1 over facet k.
std::vector<Exponent> adjacent_polytope(const LatticePolytope& P, std::size_t facet_index);

std::int64_t lattice_length(const std::vector<Exponent>& points);

bool is_reflexive(const LatticePolytope& P);

struct UnimodularSupport {
    bool ok = false;
    std::map<Exponent, std::vector<Exponent>> vertex_bases;
    std::string reason;
};

UnimodularSupport unimodular_support(const std::vector<Exponent>& S);

// Restriction of p to F, translated to the chart base and written in chart coordinates.
Laurent face_chart_polynomial(const Laurent& p, const Face& F);

// Affine unimodular map x -> A x + t with A(P) + t = Q, for full-dimensional polygons.
struct AffineMap {
    IntMatrix A;
    Exponent t;
    Exponent apply(const Exponent& x) const;
};
std::optional<AffineMap> polygon_equivalence(const LatticePolytope& P, const LatticePolytope& Q);

// The reflexive hexagon -1 <= x, y and -1 <= x + y <= 1.
LatticePolytope standard_hexagon();

}  // namespace toricgec

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "toricgec/laurent.hpp"
#include "toricgec/polytope.hpp"

namespace toricgec {

class NotUnimodular : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class Verdict { holds, fails, inconclusive };

std::string to_string(Verdict v);

struct Witness {
    std::string test;  // divisibility | one-dim | edge-shape | edge-ratio | hexagon | einstein
    std::vector<Exponent> face_vertices;
    std::vector<std::size_t> face_active;
    std::size_t face_dim = 0;
    nlohmann::json data;
};

struct TraceEntry {
    std::size_t dim = 0;
    std::vector<std::size_t> active;
    std::vector<Exponent> vertices;
    std::string test;
    std::string outcome;
};

struct ObstructionReport {
    Verdict verdict = Verdict::inconclusive;
    std::optional<Witness> witness;
    std::vector<TraceEntry> trace;
};

// Decides mu(p) | p^k at k = max(1, total degree of the monomial-normalized mu(p)).
ObstructionReport gec_check(const Laurent& p);

struct EinsteinResult {
    bool holds = false;
    std::optional<Rat> c;
    std::optional<Exponent> m;
    std::size_t n = 0;     // rank of M_p
    unsigned a = 0, b = 0; // mu * p^a compared with c x^m p^b
};

// Without lambda: mu(p) == p^n. With lambda: mu(p) p^a == c x^m p^b, a - b = lambda - (n + 1).
EinsteinResult einstein_check(const Laurent& p, const std::optional<Rat>& lambda);

struct NormalForm1D {
    Rat c;
    std::int64_t m = 0;
    Rat xi;          // zero when nu = 0
    unsigned nu = 0;
};

struct Classify1D {
    bool in_hypothesis = false;  // c_{m+1} and c_{m'-1} nonzero (or p a monomial)
    bool is_gec = false;
    std::optional<NormalForm1D> normal_form;
};

// Is p = c x^m (x + xi)^nu with xi rational?
Classify1D classify_1d(const Laurent& p);

struct EdgeShape {
    bool ok = false;
    std::optional<Rat> xi;
    std::int64_t edge_length = 0;
    std::int64_t adjacent_length = -1;  // -1 when the adjacent segment has no lattice points
    Classify1D edge;
    std::optional<Classify1D> adjacent;
};

// p bivariate with full-dimensional NP(p); facet_index names the edge among hull(supp p) facets.
EdgeShape edge_shape_test(const Laurent& p, std::size_t facet_index);

struct EdgeRatioEntry {
    Exponent from, to;  // edge endpoints
    std::int64_t length = 0;
    std::int64_t adjacent_length = -1;
    Rat ratio;
};

struct EdgeRatio {
    bool ok = false;
    bool applicable = true;  // false when some adjacent segment has no lattice points
    std::vector<EdgeRatioEntry> edges;
};

EdgeRatio edge_ratio_test(const LatticePolytope& polygon);
EdgeRatio edge_ratio_test(const Laurent& p);

// p supported on the reflexive hexagon, center optional.
ObstructionReport hexagon_obstruction(const Laurent& p);

// The tests face_descent applies to a single face; fails or inconclusive.
ObstructionReport face_test(const Face& F, const std::optional<Laurent>& p);

ObstructionReport face_descent(const LatticePolytope& delta, const std::optional<Laurent>& p, int d_max = 2);

// The hexagon q = u^-1 v^-1 (u + v)(u + 1)(v + 1).
Laurent hexagon_q();

}  // namespace toricgec

#include "toricgec/polytope.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace toricgec {

namespace {

using IntVec = std::vector<Int>;

class BitSet {
public:
    explicit BitSet(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
    void set(std::size_t i) { words_[i / 64] |= std::uint64_t(1) << (i % 64); }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
    BitSet operator&(const BitSet& o) const {
        BitSet r = *this;
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
        return r;
    }
    bool subset_of(const BitSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

private:
    std::vector<std::uint64_t> words_;
};

Int inner(const IntVec& a, const IntVec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void make_primitive(IntVec& v) {
    Int g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
        for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

// Extreme rays of the pointed cone {y : A_i . y >= 0} by the double description method.
std::vector<IntVec> extreme_rays(const std::vector<IntVec>& A, std::size_t D) {
    const std::size_t m = A.size();
    // greedily pick D independent rows
    std::vector<std::size_t> basis_rows;
    std::vector<std::vector<Rat>> echelon;
    std::vector<std::size_t> pivots;
    for (std::size_t i = 0; i < m && basis_rows.size() < D; ++i) {
        std::vector<Rat> row(A[i].begin(), A[i].end());
        for (std::size_t k = 0; k < echelon.size(); ++k) {
            if (row[pivots[k]] == 0) continue;
            Rat f = row[pivots[k]] / echelon[k][pivots[k]];
            for (std::size_t j = 0; j < D; ++j) row[j] -= f * echelon[k][j];
        }
        auto it = std::find_if(row.begin(), row.end(), [](const Rat& v) { return v != 0; });
        if (it == row.end()) continue;
        pivots.push_back(static_cast<std::size_t>(it - row.begin()));
        echelon.push_back(std::move(row));
        basis_rows.push_back(i);
    }
    if (basis_rows.size() < D) throw std::domain_error("cone is not pointed");

    // initial simplicial cone: rays are the columns of the inverse of the chosen rows
    std::vector<std::vector<Rat>> aug(D, std::vector<Rat>(2 * D));
    for (std::size_t i = 0; i < D; ++i) {
        for (std::size_t j = 0; j < D; ++j) aug[i][j] = A[basis_rows[i]][j];
        aug[i][D + i] = 1;
    }
    for (std::size_t c = 0; c < D; ++c) {
        std::size_t p = c;
        while (aug[p][c] == 0) ++p;
        std::swap(aug[p], aug[c]);
        Rat inv = 1 / aug[c][c];
        for (auto& v : aug[c]) v *= inv;
        for (std::size_t i = 0; i < D; ++i) {
            if (i == c || aug[i][c] == 0) continue;
            Rat f = aug[i][c];
            for (std::size_t j = 0; j < 2 * D; ++j) aug[i][j] -= f * aug[c][j];
        }
    }
    struct Ray {
        IntVec y;
        BitSet zero;
    };
    std::vector<Ray> rays;
    std::vector<bool> processed(m, false);
    for (auto i : basis_rows) processed[i] = true;
    for (std::size_t k = 0; k < D; ++k) {
        Int l = 1;
        for (std::size_t i = 0; i < D; ++i) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), aug[i][D + k].get_den_mpz_t());
        IntVec y(D);
        for (std::size_t i = 0; i < D; ++i) {
            Rat v = aug[i][D + k] * Rat(l);
            y[i] = v.get_num();
        }
        make_primitive(y);
        Ray r{y, BitSet(m)};
        for (std::size_t i = 0; i < D; ++i)
            if (i != k) r.zero.set(basis_rows[i]);
        rays.push_back(std::move(r));
    }

    for (std::size_t i = 0; i < m; ++i) {
        if (processed[i]) continue;
        processed[i] = true;
        std::vector<Int> val(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            val[r] = inner(A[i], rays[r].y);
            int s = sgn(val[r]);
            if (s > 0) pos.push_back(r);
            else if (s < 0) neg.push_back(r);
        }
        if (neg.empty()) {
            for (std::size_t r = 0; r < rays.size(); ++r)
                if (val[r] == 0) rays[r].zero.set(i);
            continue;
        }
        std::vector<Ray> next;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            if (val[r] < 0) continue;
            Ray kept = rays[r];
            if (val[r] == 0) kept.zero.set(i);
            next.push_back(std::move(kept));
        }
        for (auto p : pos)
            for (auto q : neg) {
                BitSet common = rays[p].zero & rays[q].zero;
                if (common.count() + 2 < D) continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
                    if (r != p && r != q && common.subset_of(rays[r].zero)) adjacent = false;
                if (!adjacent) continue;
                IntVec y(D);
                for (std::size_t j = 0; j < D; ++j) y[j] = val[p] * rays[q].y[j] - val[q] * rays[p].y[j];
                make_primitive(y);
                common.set(i);
                next.push_back(Ray{std::move(y), std::move(common)});
            }
        rays = std::move(next);
    }
    std::vector<IntVec> out;
    for (auto& r : rays) out.push_back(std::move(r.y));
    return out;
}

Exponent to_exponent(const IntVec& v, std::size_t from, std::size_t to) {
    Exponent e;
    for (std::size_t i = from; i < to; ++i) e.push_back(to_i64(v[i]));
    return e;
}

// Facets of the hull of full-dimensional points given in Z^d.
std::vector<Facet> facets_of_points(const std::vector<Exponent>& pts, std::size_t d) {
    std::vector<IntVec> A;
    for (const auto& x : pts) {
        IntVec row(d + 1);
        for (std::size_t j = 0; j < d; ++j) row[j] = static_cast<long>(x[j]);
        row[d] = 1;
        A.push_back(std::move(row));
    }
    std::vector<Facet> out;
    for (const auto& y : extreme_rays(A, d + 1)) out.push_back(Facet{to_exponent(y, 0, d), to_i64(y[d])});
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t height(const Facet& f, const Exponent& c) { return checked_add(dot(f.u, c), f.a); }

}  // namespace

void LatticePolytope::finish(std::vector<Exponent> coords, const std::vector<Exponent>& ambient,
                             std::vector<Facet> facets) {
    facets_ = std::move(facets);
    const std::size_t d = dim();
    std::vector<std::pair<Exponent, Exponent>> verts;  // (ambient, chart)
    for (std::size_t i = 0; i < coords.size(); ++i) {
        std::vector<Exponent> tight;
        for (const auto& f : facets_)
            if (height(f, coords[i]) == 0) tight.push_back(f.u);
        bool vertex = d == 0 || (tight.size() >= d && rank(IntMatrix::from_rows(tight, d)) == d);
        if (vertex) verts.emplace_back(ambient[i], coords[i]);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    vertices_.clear();
    for (const auto& v : verts) vertices_.push_back(v.first);
    facet_vertices_.assign(facets_.size(), {});
    for (std::size_t k = 0; k < facets_.size(); ++k)
        for (std::size_t i = 0; i < verts.size(); ++i)
            if (height(facets_[k], verts[i].second) == 0) facet_vertices_[k].push_back(i);
}

LatticePolytope hull(const std::vector<Exponent>& input) {
    if (input.empty()) throw std::invalid_argument("hull: empty point set");
    std::vector<Exponent> pts(input);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts[0].size();
    for (const auto& p : pts)
        if (p.size() != n) throw std::invalid_argument("hull: mixed point lengths");

    LatticePolytope P;
    LatticeBasis lb = difference_lattice_basis(pts);
    if (lb.rank == n)
        P.chart_ = LatticeChart(Exponent(n, 0), IntMatrix::identity(n));
    else
        P.chart_ = LatticeChart(pts[0], lb.basis);
    std::vector<Exponent> coords;
    for (const auto& p : pts) coords.push_back(P.chart_.coords(p));
    std::vector<Facet> facets;
    if (lb.rank > 0) facets = facets_of_points(coords, lb.rank);
    P.finish(std::move(coords), pts, std::move(facets));
    return P;
}

LatticePolytope polytope_from_inequalities(const std::vector<Facet>& facets, std::size_t n) {
    std::vector<IntVec> A;
    for (const auto& f : facets) {
        if (f.u.size() != n) throw std::invalid_argument("inequality length mismatch");
        IntVec row(n + 1);
        for (std::size_t j = 0; j < n; ++j) row[j] = static_cast<long>(f.u[j]);
        row[n] = static_cast<long>(f.a);
        A.push_back(std::move(row));
    }
    IntVec t(n + 1, Int(0));
    t[n] = 1;
    A.push_back(std::move(t));
    std::vector<Exponent> verts;
    for (const auto& y : extreme_rays(A, n + 1)) {
        if (y[n] <= 0) throw std::domain_error("polytope_from_inequalities: unbounded region");
        Exponent v(n);
        for (std::size_t j = 0; j < n; ++j) {
            if (!mpz_divisible_p(y[j].get_mpz_t(), y[n].get_mpz_t()))
                throw std::domain_error("polytope_from_inequalities: vertex is not a lattice point");
            v[j] = to_i64(Int(y[j] / y[n]));
        }
        verts.push_back(std::move(v));
    }
    if (verts.empty()) throw std::domain_error("polytope_from_inequalities: empty region");
    return hull(verts);
}

bool LatticePolytope::contains(const Exponent& x) const {
    if (!chart_.contains(x)) return false;
    Exponent c = chart_.coords(x);
    return std::all_of(facets_.begin(), facets_.end(), [&](const Facet& f) { return height(f, c) >= 0; });
}

std::int64_t LatticePolytope::facet_height(std::size_t k, const Exponent& x) const {
    return height(facets_.at(k), chart_.coords(x));
}

std::vector<Exponent> LatticePolytope::lattice_points() const {
    const std::size_t d = dim();
    std::vector<Exponent> coords;
    for (const auto& v : vertices_) coords.push_back(chart_.coords(v));
    Exponent lo = coords[0], hi = coords[0];
    for (const auto& c : coords)
        for (std::size_t i = 0; i < d; ++i) {
            lo[i] = std::min(lo[i], c[i]);
            hi[i] = std::max(hi[i], c[i]);
        }
    std::vector<Exponent> out;
    Exponent c = lo;
    for (;;) {
        if (std::all_of(facets_.begin(), facets_.end(), [&](const Facet& f) { return height(f, c) >= 0; }))
            out.push_back(chart_.point(c));
        std::size_t i = 0;
        while (i < d && c[i] == hi[i]) {
            c[i] = lo[i];
            ++i;
        }
        if (i == d) break;
        ++c[i];
    }
    std::sort(out.begin(), out.end());
    return out;
}

LatticePolytope Face::chart_polytope() const {
    std::vector<Exponent> coords;
    for (const auto& v : vertices) coords.push_back(chart.coords(v));
    return hull(coords);
}

Face face_from_vertex_ids(const std::shared_ptr<const LatticePolytope>& parent, std::vector<std::size_t> ids) {
    std::sort(ids.begin(), ids.end());
    Face F;
    F.parent = parent;
    F.vertex_ids = ids;
    for (auto i : ids) F.vertices.push_back(parent->vertices().at(i));
    for (std::size_t k = 0; k < parent->facets().size(); ++k) {
        const auto& fv = parent->facet_vertices(k);
        if (std::includes(fv.begin(), fv.end(), ids.begin(), ids.end())) F.active.push_back(k);
    }
    F.chart = LatticeChart::of_points(F.vertices);
    F.dim = F.chart.rank();
    LatticePolytope local = F.chart_polytope();
    for (const auto& c : local.lattice_points()) F.points.push_back(F.chart.point(c));
    std::sort(F.points.begin(), F.points.end());
    return F;
}

std::optional<Face> face_from_active(const std::shared_ptr<const LatticePolytope>& parent,
                                     const std::vector<std::size_t>& tight) {
    std::vector<std::size_t> ids(parent->vertices().size());
    std::iota(ids.begin(), ids.end(), 0);
    for (auto k : tight) {
        const auto& fv = parent->facet_vertices(k);
        std::vector<std::size_t> next;
        std::set_intersection(ids.begin(), ids.end(), fv.begin(), fv.end(), std::back_inserter(next));
        ids = std::move(next);
    }
    if (ids.empty()) return std::nullopt;
    return face_from_vertex_ids(parent, ids);
}

std::vector<Face> faces(const LatticePolytope& P, int d) {
    if (d < 0 || d > static_cast<int>(P.dim())) throw std::out_of_range("faces: dimension out of range");
    auto parent = std::make_shared<const LatticePolytope>(P);
    std::vector<std::size_t> all(P.vertices().size());
    std::iota(all.begin(), all.end(), 0);
    std::set<std::vector<std::size_t>> level{all};
    for (int j = static_cast<int>(P.dim()); j > d; --j) {
        std::set<std::vector<std::size_t>> next;
        for (const auto& S : level) {
            // facets of the face S are the inclusion-maximal proper traces of the parent facets
            std::set<std::vector<std::size_t>> traces;
            for (std::size_t k = 0; k < P.facets().size(); ++k) {
                const auto& fv = P.facet_vertices(k);
                std::vector<std::size_t> t;
                std::set_intersection(S.begin(), S.end(), fv.begin(), fv.end(), std::back_inserter(t));
                if (!t.empty() && t.size() < S.size()) traces.insert(std::move(t));
            }
            for (const auto& t : traces) {
                bool maximal = true;
                for (const auto& o : traces)
                    if (o.size() > t.size() && std::includes(o.begin(), o.end(), t.begin(), t.end())) {
                        maximal = false;
                        break;
                    }
                if (maximal) next.insert(t);
            }
        }
        level = std::move(next);
    }
    std::vector<Face> out;
    for (const auto& S : level) out.push_back(face_from_vertex_ids(parent, S));
    std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) { return a.active < b.active; });
    return out;
}

NormalCone normal_cone(const Face& F) {
    if (!F.parent->full_dimensional()) throw std::invalid_argument("normal_cone: parent is not full-dimensional");
    NormalCone c;
    for (auto k : F.active) c.rays.push_back(F.parent->facets()[k].u);
    return c;
}

std::vector<Exponent> min_weight_subset(const std::vector<Exponent>& C, const NormalCone& sigma) {
    if (C.empty()) throw std::invalid_argument("min_weight_subset: empty set");
    std::vector<Exponent> out;
    std::vector<std::int64_t> minima;
    for (const auto& u : sigma.rays) {
        std::int64_t m = dot(u, C[0]);
        for (const auto& x : C) m = std::min(m, dot(u, x));
        minima.push_back(m);
    }
    for (const auto& y : C) {
        bool keep = true;
        for (std::size_t i = 0; i < sigma.rays.size() && keep; ++i) keep = dot(sigma.rays[i], y) == minima[i];
        if (keep) out.push_back(y);
    }
    return out;
}

std::vector<Exponent> min_weight_subset(const std::vector<Exponent>& C, const Exponent& ray) {
    return min_weight_subset(C, NormalCone{{ray}});
}

std::vector<Exponent> adjacent_polytope(const LatticePolytope& P, std::size_t facet_index) {
    if (facet_index >= P.facets().size()) throw std::invalid_argument("adjacent_polytope: not a facet");
    std::vector<Exponent> out;
    for (const auto& x : P.lattice_points())
        if (P.facet_height(facet_index, x) == 1) out.push_back(x);
    return out;
}

std::int64_t lattice_length(const std::vector<Exponent>& points) {
    if (points.empty()) throw std::invalid_argument("lattice_length: empty segment");
    auto [lo, hi] = std::minmax_element(points.begin(), points.end());
    Exponent d = sub(*hi, *lo);
    if (is_zero(d)) return 0;
    Exponent dir = primitive(d);
    for (const auto& p : points) {
        Exponent e = sub(p, *lo);
        // e must be a multiple of dir
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = i + 1; j < e.size(); ++j)
                if (checked_mul(e[i], dir[j]) != checked_mul(e[j], dir[i]))
                    throw std::invalid_argument("lattice_length: points are not collinear");
    }
    return gcd_entries(d);
}

bool is_reflexive(const LatticePolytope& P) {
    if (!P.full_dimensional()) throw std::invalid_argument("is_reflexive: polytope is not full-dimensional");
    return std::all_of(P.facets().begin(), P.facets().end(), [](const Facet& f) { return f.a == 1; });
}

UnimodularSupport unimodular_support(const std::vector<Exponent>& S) {
    UnimodularSupport out;
    LatticePolytope P = hull(S);
    std::set<Exponent> pts(S.begin(), S.end());
    const std::size_t d = P.dim();
    if (d == 0) {
        out.ok = true;
        out.vertex_bases[P.vertices()[0]] = {};
        return out;
    }
    std::vector<Face> edges = faces(P, 1);
    for (std::size_t vi = 0; vi < P.vertices().size(); ++vi) {
        const Exponent& v = P.vertices()[vi];
        std::vector<Exponent> dirs;
        for (const auto& e : edges) {
            if (!std::binary_search(e.vertex_ids.begin(), e.vertex_ids.end(), vi)) continue;
            const Exponent& w = e.vertices[0] == v ? e.vertices[1] : e.vertices[0];
            Exponent step = primitive(sub(w, v));
            if (!pts.count(add(v, step))) {
                out.reason = "no support point at lattice distance 1 from vertex " + to_string(v) + " along " +
                             to_string(step);
                return out;
            }
            dirs.push_back(step);
        }
        if (dirs.size() != d) {
            out.reason = "vertex " + to_string(v) + " is not simple";
            return out;
        }
        IntMatrix M(d, d);
        for (std::size_t i = 0; i < d; ++i) {
            Exponent c = P.chart().vector_coords(dirs[i]);
            for (std::size_t j = 0; j < d; ++j) M(i, j) = static_cast<long>(c[j]);
        }
        if (abs(determinant(M)) != 1) {
            out.reason = "edge directions at vertex " + to_string(v) + " do not form a lattice basis";
            return out;
        }
        std::sort(dirs.begin(), dirs.end());
        out.vertex_bases[v] = dirs;
    }
    out.ok = true;
    return out;
}

Laurent face_chart_polynomial(const Laurent& p, const Face& F) {
    if (p.is_zero()) throw std::invalid_argument("face_chart_polynomial: zero polynomial");
    const auto& parent = *F.parent;
    for (const auto& e : p.support())
        if (!parent.contains(e)) throw std::invalid_argument("face_chart_polynomial: F is not a face of NP(p)");
    for (const auto& v : parent.vertices())
        if (p.coeff(v) == 0) throw std::invalid_argument("face_chart_polynomial: F is not a face of NP(p)");
    Laurent r(F.dim);
    std::set<Exponent> on(F.points.begin(), F.points.end());
    for (const auto& [e, c] : p.terms())
        if (on.count(e)) r.add_term(F.chart.coords(e), c);
    return r;
}

Exponent AffineMap::apply(const Exponent& x) const {
    Exponent y = t;
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) y[i] = checked_add(y[i], checked_mul(to_i64(A(i, j)), x[j]));
    return y;
}

namespace {

// Vertices of a polygon in cyclic order.
std::vector<Exponent> cyclic_vertices(const LatticePolytope& P) {
    std::vector<Exponent> order;
    const auto& V = P.vertices();
    std::vector<std::vector<std::size_t>> nbrs(V.size());
    for (std::size_t k = 0; k < P.facets().size(); ++k) {
        const auto& fv = P.facet_vertices(k);
        nbrs[fv[0]].push_back(fv[1]);
        nbrs[fv[1]].push_back(fv[0]);
    }
    std::size_t prev = V.size(), cur = 0;
    for (std::size_t step = 0; step < V.size(); ++step) {
        order.push_back(V[cur]);
        std::size_t nxt = nbrs[cur][0] != prev ? nbrs[cur][0] : nbrs[cur][1];
        prev = cur;
        cur = nxt;
    }
    return order;
}

}  // namespace

std::optional<AffineMap> polygon_equivalence(const LatticePolytope& P, const LatticePolytope& Q) {
    if (P.dim() != 2 || Q.dim() != 2 || !P.full_dimensional() || !Q.full_dimensional())
        throw std::invalid_argument("polygon_equivalence: expects full-dimensional polygons");
    if (P.vertices().size() != Q.vertices().size()) return std::nullopt;
    auto cp = cyclic_vertices(P), cq = cyclic_vertices(Q);
    const std::size_t k = cp.size();
    std::set<Exponent> target(Q.vertices().begin(), Q.vertices().end());
    Exponent q0 = cq[0];
    Exponent e1 = primitive(sub(cq[1], q0)), e2 = primitive(sub(cq[k - 1], q0));
    for (std::size_t i = 0; i < k; ++i)
        for (int orient = 0; orient < 2; ++orient) {
            Exponent p0 = cp[i];
            Exponent a = cp[(i + 1) % k], b = cp[(i + k - 1) % k];
            if (orient) std::swap(a, b);
            Exponent d1 = primitive(sub(a, p0)), d2 = primitive(sub(b, p0));
            // A d1 = e1, A d2 = e2 with det(d1 d2) = +-1 for an integral inverse
            std::int64_t det = d1[0] * d2[1] - d1[1] * d2[0];
            if (det != 1 && det != -1) continue;
            // inverse of [d1 d2] (columns) is (1/det) [[d2y, -d2x], [-d1y, d1x]]
            std::int64_t inv[2][2] = {{d2[1] * det, -d2[0] * det}, {-d1[1] * det, d1[0] * det}};
            IntMatrix A(2, 2);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    A(r, c) = static_cast<long>(e1[r] * inv[0][c] + e2[r] * inv[1][c]);
            if (abs(determinant(A)) != 1) continue;
            AffineMap f{A, Exponent{0, 0}};
            Exponent img = f.apply(p0);
            f.t = sub(q0, img);
            bool same = true;
            for (const auto& v : P.vertices())
                if (!target.count(f.apply(v))) {
                    same = false;
                    break;
                }
            if (same) return f;
        }
    return std::nullopt;
}

LatticePolytope standard_hexagon() {
    return hull({{0, -1}, {1, -1}, {1, 0}, {0, 1}, {-1, 1}, {-1, 0}});
}

}  // namespace toricgec

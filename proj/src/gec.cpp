#include "toricgec/gec.hpp"

#include <algorithm>
#include <set>

#include "toricgec/io.hpp"
#include "toricgec/monge_ampere.hpp"
#include "toricgec/parallel.hpp"

namespace toricgec {

using nlohmann::json;

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "gec-holds";
        case Verdict::fails: return "gec-fails";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

namespace {

void require_unimodular(const Laurent& p) {
    auto us = unimodular_support(p.support());
    if (!us.ok) throw NotUnimodular("support is not unimodular: " + us.reason);
}

Rat rat_pow(Rat b, unsigned e) {
    Rat r = 1;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

Int binomial(unsigned n, unsigned k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

json normal_form_json(const Classify1D& c) {
    json j{{"in_hypothesis", c.in_hypothesis}, {"is_gec", c.is_gec}};
    if (c.normal_form) {
        const auto& f = *c.normal_form;
        j["normal_form"] = {{"c", rat_string(f.c)}, {"m", f.m}, {"xi", rat_string(f.xi)}, {"nu", f.nu}};
    }
    return j;
}

}  // namespace

Laurent hexagon_q() {
    return Laurent::from_terms(2, {{{0, -1}, 1},
                                   {{1, -1}, 1},
                                   {{-1, 0}, 1},
                                   {{0, 0}, 2},
                                   {{1, 0}, 1},
                                   {{-1, 1}, 1},
                                   {{0, 1}, 1}});
}

ObstructionReport gec_check(const Laurent& p) {
    if (p.is_zero()) throw std::invalid_argument("gec_check: zero polynomial");
    require_unimodular(p);
    MuResult m = mu(p);
    std::int64_t kstar = total_degree(monomial_normalize(m.mu).q);
    unsigned kappa = static_cast<unsigned>(std::max<std::int64_t>(1, kstar));
    bool holds = divides(m.mu, pow(p, kappa));

    ObstructionReport r;
    r.verdict = holds ? Verdict::holds : Verdict::fails;
    Witness w;
    w.test = "divisibility";
    w.face_vertices = hull(p.support()).vertices();
    w.face_dim = m.rank_r;
    w.data = {{"kappa", kappa}, {"mu", to_json(m.mu)}, {"divides", holds}};
    r.witness = std::move(w);
    return r;
}

EinsteinResult einstein_check(const Laurent& p, const std::optional<Rat>& lambda) {
    if (p.is_zero()) throw std::invalid_argument("einstein_check: zero polynomial");
    require_unimodular(p);
    MuResult m = mu(p);
    EinsteinResult out;
    out.n = m.rank_r;
    if (!lambda) {
        out.holds = m.mu == pow(p, static_cast<unsigned>(out.n));
        if (out.holds) {
            out.c = Rat(1);
            out.m = Exponent(p.rank(), 0);
        }
        return out;
    }
    Rat diff = *lambda - Rat(static_cast<long>(out.n + 1));
    if (diff.get_den() != 1) throw std::domain_error("einstein_check: lambda - (n + 1) is not an integer");
    long d = to_i64(diff.get_num());
    out.a = static_cast<unsigned>(std::max(0L, d));
    out.b = static_cast<unsigned>(std::max(0L, -d));
    Laurent lhs = m.mu * pow(p, out.a);
    Laurent rhs = pow(p, out.b);
    auto lead = [](const Laurent& f) {
        return *std::max_element(f.terms().begin(), f.terms().end(),
                                 [](const auto& x, const auto& y) { return grlex_less(x.first, y.first); });
    };
    auto [el, cl] = lead(lhs);
    auto [er, cr] = lead(rhs);
    Rat c = cl / cr;
    Exponent shift = sub(el, er);
    out.holds = lhs == rhs.times_monomial(c, shift);
    if (out.holds) {
        out.c = c;
        out.m = shift;
    }
    return out;
}

Classify1D classify_1d(const Laurent& p) {
    if (p.is_zero()) throw std::invalid_argument("classify_1d: zero polynomial");
    if (p.rank() != 1) throw std::invalid_argument("classify_1d: expects a univariate polynomial");
    Classify1D out;
    const std::int64_t m = p.terms().begin()->first[0];
    const std::int64_t mp = p.terms().rbegin()->first[0];
    const Rat c = p.terms().rbegin()->second;
    if (m == mp) {
        out.in_hypothesis = out.is_gec = true;
        out.normal_form = NormalForm1D{c, m, Rat(0), 0};
        return out;
    }
    out.in_hypothesis = p.coeff({m + 1}) != 0 && p.coeff({mp - 1}) != 0;
    if (!out.in_hypothesis) return out;
    const auto nu = static_cast<unsigned>(mp - m);
    Rat xi = p.coeff({mp - 1}) / (Rat(nu) * c);
    for (unsigned i = 0; i <= nu; ++i)
        if (p.coeff({m + static_cast<std::int64_t>(i)}) != c * Rat(binomial(nu, i)) * rat_pow(xi, nu - i)) return out;
    out.is_gec = true;
    out.normal_form = NormalForm1D{c, m, xi, nu};
    return out;
}

namespace {

// Points of a lattice segment as a univariate polynomial along the direction a, starting at base.
Laurent along(const Laurent& p, const std::vector<Exponent>& pts, const Exponent& base, const Exponent& a) {
    Laurent f(1);
    std::int64_t aa = dot(a, a);
    for (const auto& x : pts) {
        Rat c = p.coeff(x);
        if (c != 0) f.add_term({dot(a, sub(x, base)) / aa}, c);
    }
    return f;
}

}  // namespace

EdgeShape edge_shape_test(const Laurent& p, std::size_t facet_index) {
    if (p.rank() != 2) throw std::invalid_argument("edge_shape_test: expects a bivariate polynomial");
    LatticePolytope P = hull(p.support());
    if (!P.full_dimensional()) throw std::invalid_argument("edge_shape_test: NP(p) is not a polygon");
    if (facet_index >= P.facets().size()) throw std::invalid_argument("edge_shape_test: not an edge of NP(p)");
    const auto& fv = P.facet_vertices(facet_index);
    const Exponent v0 = P.vertices()[fv[0]], v1 = P.vertices()[fv[1]];
    const Exponent a = primitive(sub(v1, v0));
    EdgeShape out;
    out.edge_length = lattice_length({v0, v1});
    std::vector<Exponent> edge_pts;
    for (std::int64_t t = 0; t <= out.edge_length; ++t) edge_pts.push_back(add(v0, scale(t, a)));
    out.edge = classify_1d(along(p, edge_pts, v0, a));
    bool edge_ok = out.edge.is_gec && out.edge.normal_form->nu == out.edge_length;
    if (edge_ok) out.xi = out.edge.normal_form->xi;

    std::vector<Exponent> adj = adjacent_polytope(P, facet_index);
    if (adj.empty()) {
        out.ok = edge_ok;
        return out;
    }
    out.adjacent_length = lattice_length(adj);
    if (out.adjacent_length == 0) {
        out.ok = edge_ok;
        return out;
    }
    auto w0 = *std::min_element(adj.begin(), adj.end(),
                                [&](const Exponent& x, const Exponent& y) { return dot(a, x) < dot(a, y); });
    Laurent g = along(p, adj, w0, a);
    if (g.is_zero()) {
        out.ok = edge_ok;
        return out;
    }
    out.adjacent = classify_1d(g);
    const auto& ad = *out.adjacent;
    out.ok = edge_ok && ad.is_gec && ad.normal_form->nu == out.adjacent_length && ad.normal_form->xi == *out.xi;
    return out;
}

EdgeRatio edge_ratio_test(const LatticePolytope& polygon) {
    if (polygon.dim() != 2) throw std::invalid_argument("edge_ratio_test: degenerate polygon");
    const LatticeChart& chart = polygon.chart();
    LatticePolytope Q = polygon;
    if (!polygon.full_dimensional()) {
        std::vector<Exponent> coords;
        for (const auto& v : polygon.vertices()) coords.push_back(chart.coords(v));
        Q = hull(coords);
    }
    auto back = [&](const Exponent& c) { return polygon.full_dimensional() ? c : chart.point(c); };
    EdgeRatio out;
    for (std::size_t k = 0; k < Q.facets().size(); ++k) {
        const auto& fv = Q.facet_vertices(k);
        EdgeRatioEntry e;
        e.from = back(Q.vertices()[fv[0]]);
        e.to = back(Q.vertices()[fv[1]]);
        e.length = lattice_length({Q.vertices()[fv[0]], Q.vertices()[fv[1]]});
        auto adj = adjacent_polytope(Q, k);
        if (adj.empty()) {
            out.applicable = false;
        } else {
            e.adjacent_length = lattice_length(adj);
            e.ratio = Rat(e.adjacent_length) / Rat(e.length);
        }
        out.edges.push_back(std::move(e));
    }
    out.ok = out.applicable;
    for (const auto& e : out.edges)
        if (e.ratio != out.edges[0].ratio) out.ok = false;
    return out;
}

EdgeRatio edge_ratio_test(const Laurent& p) {
    if (p.is_zero()) throw std::invalid_argument("edge_ratio_test: zero polynomial");
    return edge_ratio_test(hull(p.support()));
}

namespace {

json edge_ratio_json(const EdgeRatio& er) {
    json edges = json::array();
    for (const auto& e : er.edges)
        edges.push_back({{"from", e.from},
                         {"to", e.to},
                         {"length", e.length},
                         {"adjacent_length", e.adjacent_length},
                         {"ratio", rat_string(e.ratio)}});
    json j{{"edges", edges}};
    // two edges through a common vertex with different ratios
    for (std::size_t i = 0; i < er.edges.size(); ++i)
        for (std::size_t k = i + 1; k < er.edges.size(); ++k) {
            const auto& a = er.edges[i];
            const auto& b = er.edges[k];
            if (a.ratio == b.ratio) continue;
            std::optional<Exponent> common;
            if (a.from == b.from || a.from == b.to) common = a.from;
            if (a.to == b.from || a.to == b.to) common = a.to;
            if (common) {
                j["vertex"] = *common;
                j["ratios"] = {rat_string(a.ratio), rat_string(b.ratio)};
                return j;
            }
        }
    return j;
}

struct OverlapPoint {
    Exponent point;
    std::vector<std::string> labels;
    std::vector<Rat> values;
};

}  // namespace

ObstructionReport hexagon_obstruction(const Laurent& p) {
    if (p.rank() != 2) throw std::invalid_argument("hexagon_obstruction: expects a bivariate polynomial");
    const std::set<Exponent> hex{{0, -1}, {1, -1}, {-1, 0}, {0, 0}, {1, 0}, {-1, 1}, {0, 1}};
    for (const auto& e : p.support())
        if (!hex.count(e)) throw std::invalid_argument("hexagon_obstruction: support leaves the hexagon");
    for (const auto& e : hex)
        if (e != Exponent{0, 0} && p.coeff(e) == 0)
            throw std::invalid_argument("hexagon_obstruction: a hexagon vertex is missing from the support");

    ObstructionReport r;
    r.verdict = Verdict::fails;
    LatticePolytope P = hull(p.support());
    for (std::size_t k = 0; k < P.facets().size(); ++k) {
        EdgeShape es = edge_shape_test(p, k);
        const auto& fv = P.facet_vertices(k);
        r.trace.push_back(TraceEntry{1, {k}, {P.vertices()[fv[0]], P.vertices()[fv[1]]}, "edge-shape",
                                     es.ok ? "ok" : "fails"});
    }

    auto a = [&](std::int64_t x, std::int64_t y) { return p.coeff({x, y}); };
    // edge and adjacent-segment parameters, read off the hexagon boundary
    const Rat c1 = a(1, -1), xi1 = a(0, -1) / c1;
    const Rat c2 = a(1, 0), xi2 = a(1, -1) / c2;
    const Rat c3 = a(0, 1), xi3 = a(1, 0) / c3;
    const Rat c4 = a(0, 1), c5 = a(-1, 1), c6 = a(-1, 0);
    const Rat d1 = a(1, 0), d2 = a(0, 1), d3 = a(-1, 1);  // c'_1, c'_2, c'_3

    std::vector<OverlapPoint> system{
        {{0, -1}, {"c1*xi1", "c'2*xi2^2", "c6*xi3"}, {c1 * xi1, d2 * xi2 * xi2, c6 * xi3}},
        {{1, -1}, {"c1", "c2*xi2", "c'3*xi3^2"}, {c1, c2 * xi2, d3 * xi3 * xi3}},
        {{-1, 0}, {"c'1*xi1^2", "c5*xi2", "c6"}, {d1 * xi1 * xi1, c5 * xi2, c6}},
        {{0, 0}, {"2*c'1*xi1", "2*c'2*xi2", "2*c'3*xi3"}, {2 * d1 * xi1, 2 * d2 * xi2, 2 * d3 * xi3}},
        {{1, 0}, {"c'1", "c2", "c3*xi3"}, {d1, c2, c3 * xi3}},
        {{-1, 1}, {"c4*xi1", "c5", "c'3"}, {c4 * xi1, c5, d3}},
        {{0, 1}, {"c4", "c'2", "c3"}, {c4, d2, c3}},
    };
    json params{{"c1", rat_string(c1)}, {"c2", rat_string(c2)}, {"c3", rat_string(c3)},
                {"c4", rat_string(c4)}, {"c5", rat_string(c5)}, {"c6", rat_string(c6)},
                {"c'1", rat_string(d1)}, {"c'2", rat_string(d2)}, {"c'3", rat_string(d3)},
                {"xi1", rat_string(xi1)}, {"xi2", rat_string(xi2)}, {"xi3", rat_string(xi3)}};

    Witness w;
    w.test = "hexagon";
    w.face_vertices = P.vertices();
    w.face_dim = 2;
    auto violated = [&](const OverlapPoint& op, const std::string& lhs, const Rat& lv, const std::string& rhs,
                        const Rat& rv) {
        w.data = {{"stage", "overlap"},
                  {"point", op.point},
                  {"equation", lhs + " = " + rhs},
                  {"values", {rat_string(lv), rat_string(rv)}},
                  {"parameters", params}};
        r.witness = w;
        return r;
    };
    for (const auto& op : system)
        for (std::size_t i = 0; i + 1 < op.values.size(); ++i)
            if (op.values[i] != op.values[i + 1])
                return violated(op, op.labels[i], op.values[i], op.labels[i + 1], op.values[i + 1]);
    for (const auto& op : system)
        if (op.values[0] != p.coeff(op.point))
            return violated(op, op.labels[0], op.values[0], "coefficient", p.coeff(op.point));

    const Rat rho1 = c5, rho2 = xi2, rho3 = c3;
    Laurent q = substitute_monomial(p, IntMatrix::identity(2), {rho1 / rho3, rho2}) * (1 / (rho2 * rho3));
    if (q != hexagon_q()) throw std::logic_error("hexagon_obstruction: reduction did not produce q");
    ObstructionReport qr = gec_check(q);
    if (qr.verdict != Verdict::fails) throw std::logic_error("hexagon_obstruction: q unexpectedly satisfies GEC");
    Laurent mq = mu(q).mu;
    Laurent quadratic =
        parse_expression("x^2*y + x*y^2 + x^2 + 6*x*y + y^2 + x + y", std::size_t{2});
    w.data = {{"stage", "reduction"},
              {"rho", {rat_string(rho1), rat_string(rho2), rat_string(rho3)}},
              {"q", to_json(q)},
              {"mu_q", to_json(mq)},
              {"quadratic_factor_divides_mu", divides(quadratic, mq)},
              {"kappa", qr.witness->data["kappa"]},
              {"mu_divides_q_power", false},
              {"parameters", params}};
    r.witness = w;
    return r;
}

namespace {

struct FaceResult {
    bool fails = false;
    Witness witness;
    TraceEntry trace;
};

Witness face_witness(const Face& F, const std::string& test, json data) {
    Witness w;
    w.test = test;
    w.face_vertices = F.vertices;
    w.face_active = F.active;
    w.face_dim = F.dim;
    w.data = std::move(data);
    return w;
}

FaceResult evaluate_face(const Face& F, const std::optional<Laurent>& p, bool whole) {
    FaceResult res;
    res.trace = TraceEntry{F.dim, F.active, F.vertices, "", "pass"};
    auto fail = [&](const std::string& test, json data) {
        res.fails = true;
        res.trace.test = test;
        res.trace.outcome = "fails";
        res.witness = face_witness(F, test, std::move(data));
        return res;
    };
    std::optional<Laurent> f;
    if (p) f = face_chart_polynomial(*p, F);

    if (F.dim == 1 && f && !whole) {
        res.trace.test = "one-dim";
        Classify1D c = classify_1d(*f);
        if (c.in_hypothesis && !c.is_gec) return fail("one-dim", normal_form_json(c));
        return res;
    }
    if (F.dim == 2) {
        LatticePolytope Q = F.chart_polytope();
        if (f) {
            res.trace.test = "edge-shape";
            for (std::size_t k = 0; k < Q.facets().size(); ++k) {
                EdgeShape es = edge_shape_test(*f, k);
                if (!es.ok) {
                    const auto& fv = Q.facet_vertices(k);
                    json d{{"edge", {F.chart.point(Q.vertices()[fv[0]]), F.chart.point(Q.vertices()[fv[1]])}},
                           {"edge_length", es.edge_length},
                           {"adjacent_length", es.adjacent_length},
                           {"edge_shape", normal_form_json(es.edge)}};
                    if (es.adjacent) d["adjacent_shape"] = normal_form_json(*es.adjacent);
                    return fail("edge-shape", d);
                }
            }
        }
        res.trace.test = "edge-ratio";
        EdgeRatio er = edge_ratio_test(Q);
        if (er.applicable && !er.ok) {
            // report edges in ambient coordinates
            for (auto& e : er.edges) {
                e.from = F.chart.point(e.from);
                e.to = F.chart.point(e.to);
            }
            return fail("edge-ratio", edge_ratio_json(er));
        }
        res.trace.test = "hexagon";
        if (auto iso = polygon_equivalence(Q, standard_hexagon())) {
            json d{{"chart_vertices", Q.vertices()}};
            if (f) {
                Laurent g = substitute_monomial(*f, iso->A, {1, 1}).times_monomial(1, iso->t);
                ObstructionReport hr = hexagon_obstruction(g);
                d["hexagon"] = hr.witness->data;
            }
            return fail("hexagon", d);
        }
    }
    if (f && (F.dim >= 3 || whole || F.dim == 2)) {
        res.trace.test = "divisibility";
        try {
            ObstructionReport gr = gec_check(*f);
            if (gr.verdict == Verdict::fails) return fail("divisibility", gr.witness->data);
        } catch (const NotUnimodular&) {
            res.trace.outcome = "skipped";
        }
    }
    return res;
}

}  // namespace

ObstructionReport face_test(const Face& F, const std::optional<Laurent>& p) {
    FaceResult res = evaluate_face(F, p, F.dim == F.parent->dim());
    ObstructionReport r;
    r.trace.push_back(res.trace);
    if (res.fails) {
        r.verdict = Verdict::fails;
        r.witness = std::move(res.witness);
    }
    return r;
}

ObstructionReport face_descent(const LatticePolytope& delta, const std::optional<Laurent>& p, int d_max) {
    if (!delta.full_dimensional()) throw std::invalid_argument("face_descent: polytope is not full-dimensional");
    if (d_max < 1) throw std::invalid_argument("face_descent: d_max must be positive");
    if (p) {
        if (p->is_zero()) throw std::invalid_argument("face_descent: zero polynomial");
        if (hull(p->support()).vertices() != delta.vertices())
            throw std::invalid_argument("face_descent: NP(p) differs from the polytope");
        require_unimodular(*p);
    }
    const int top = std::min<int>(d_max, static_cast<int>(delta.dim()));
    std::vector<Face> order;
    // without a polynomial no test applies to edges
    for (int d = p ? 1 : 2; d <= top; ++d) {
        auto fs = faces(delta, d);
        order.insert(order.end(), fs.begin(), fs.end());
    }

    ObstructionReport report;
    const std::size_t batch = std::max<std::size_t>(8, 4 * worker_count());
    for (std::size_t start = 0; start < order.size(); start += batch) {
        const std::size_t end = std::min(order.size(), start + batch);
        std::vector<FaceResult> results(end - start);
        parallel_for(end - start, [&](std::size_t i) {
            const Face& F = order[start + i];
            results[i] = evaluate_face(F, p, F.dim == delta.dim());
        });
        for (auto& res : results) {
            report.trace.push_back(res.trace);
            if (res.fails) {
                report.verdict = Verdict::fails;
                report.witness = std::move(res.witness);
                return report;
            }
        }
    }
    if (p && top == static_cast<int>(delta.dim())) {
        report.verdict = Verdict::holds;
        Witness w;
        w.test = "divisibility";
        w.face_vertices = delta.vertices();
        w.face_dim = delta.dim();
        w.data = gec_check(*p).witness->data;
        report.witness = std::move(w);
    }
    return report;
}

}  // namespace toricgec

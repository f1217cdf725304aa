#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "toricgec/fano.hpp"
#include "toricgec/gec.hpp"
#include "toricgec/io.hpp"
#include "toricgec/monge_ampere.hpp"

using namespace toricgec;
using nlohmann::json;

namespace {

struct Input {
    std::string expr;
    std::string inline_json;
    std::string file;
};

struct Output {
    bool json = false;
    std::string out;
};

void add_input(CLI::App* cmd, Input& in) {
    auto* e = cmd->add_option("-e,--expr", in.expr, "polynomial expression or alias (hexagon-q, rem7, fs:n)");
    auto* j = cmd->add_option("-j,--json-input", in.inline_json, "inline JSON document");
    auto* f = cmd->add_option("-f,--file", in.file, "JSON file");
    e->excludes(j)->excludes(f);
    j->excludes(f);
}

void add_output(CLI::App* cmd, Output& out) {
    cmd->add_flag("--json", out.json, "print JSON");
    cmd->add_option("--out", out.out, "also write JSON to FILE");
}

json read_json(const Input& in) {
    if (!in.inline_json.empty()) return json::parse(in.inline_json);
    std::ifstream f(in.file);
    if (!f) throw std::invalid_argument("cannot open " + in.file);
    return json::parse(f);
}

Laurent read_polynomial(const Input& in) {
    if (!in.expr.empty()) {
        if (auto named = named_polynomial(in.expr)) return *named;
        return parse_expression(in.expr);
    }
    if (!in.inline_json.empty() || !in.file.empty()) return laurent_from_json(read_json(in));
    throw std::invalid_argument("no input given; use -e, -j or -f");
}

LatticePolytope read_polytope(const Input& in) {
    if (!in.inline_json.empty() || !in.file.empty()) return polytope_from_json(read_json(in));
    if (!in.expr.empty()) return hull(read_polynomial(in).support());
    throw std::invalid_argument("no input given; use -e, -j or -f");
}

void emit(const Output& out, const json& j, const std::string& text) {
    if (!out.out.empty()) {
        std::ofstream f(out.out);
        if (!f) throw std::invalid_argument("cannot write " + out.out);
        f << j.dump(2) << "\n";
    }
    if (out.json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

std::string points_text(const std::vector<Exponent>& pts) {
    std::string s;
    for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? " " : "") + to_string(pts[i]);
    return s;
}

std::string report_text(const ObstructionReport& r) {
    std::ostringstream o;
    o << to_string(r.verdict) << "\n";
    if (r.witness) {
        const auto& w = *r.witness;
        o << "test: " << w.test << "\n";
        o << "face: dim " << w.face_dim << " vertices " << points_text(w.face_vertices) << "\n";
        if (w.data.contains("ratios"))
            o << "ratios: " << w.data["ratios"][0].get<std::string>() << " " << w.data["ratios"][1].get<std::string>()
              << " at " << w.data["vertex"].dump() << "\n";
    }
    return o.str();
}

int verdict_code(Verdict v) { return v == Verdict::holds ? 0 : v == Verdict::fails ? 1 : 2; }

int cmd_mu(const Input& in, const Output& out) {
    Laurent p = read_polynomial(in);
    MuResult m = mu(p);
    json j{{"input", to_json(p)}, {"mu", to_json(m.mu)}, {"rank", m.rank_r}};
    std::ostringstream t;
    t << format_expression(m.mu) << "\n";
    LatticePolytope np = hull(p.support());
    if (np.full_dimensional() && unimodular_support(p.support()).ok) {
        LatticePolytope predicted = predicted_np_of_mu(np);
        LatticePolytope actual = hull(m.mu.support());
        bool match = predicted.vertices() == actual.vertices();
        j["newton_polytope"] = {{"predicted", to_json(predicted)}, {"computed", to_json(actual)}, {"match", match}};
        t << "newton polytope: " << (match ? "matches prediction" : "differs from prediction") << "\n";
    } else {
        j["newton_polytope"] = nullptr;
        t << "newton polytope: no prediction (support not full-dimensional or not unimodular)\n";
    }
    emit(out, j, t.str());
    return 0;
}

int cmd_gec(const Input& in, const Output& out) {
    Laurent p = read_polynomial(in);
    ObstructionReport r = gec_check(p);
    LatticePolytope np = hull(p.support());
    if (r.verdict == Verdict::fails && np.full_dimensional()) {
        // a face-level certificate is more informative than the bare divisibility failure
        ObstructionReport d = face_descent(np, p, static_cast<int>(np.dim()));
        if (d.verdict == Verdict::fails) r.witness = d.witness;
        r.trace = d.trace;
    }
    emit(out, to_json(r), report_text(r));
    return verdict_code(r.verdict);
}

int cmd_einstein(const Input& in, const Output& out, const std::string& lambda) {
    Laurent p = read_polynomial(in);
    std::optional<Rat> l;
    if (!lambda.empty()) l = make_rat(lambda);
    EinsteinResult r = einstein_check(p, l);
    std::ostringstream t;
    t << (r.holds ? "holds" : "fails") << "\n";
    if (r.c) t << "c: " << rat_string(*r.c) << "\n";
    if (r.m) t << "m: " << to_string(*r.m) << "\n";
    emit(out, to_json(r), t.str());
    return r.holds ? 0 : 1;
}

int cmd_family(const std::string& spec_text, bool descend, bool strict, const Output& out) {
    FamilySpec spec = FamilySpec::parse(spec_text);
    LatticePolytope delta = anticanonical_polytope(spec);
    json j{{"family", spec.to_string()},
           {"dimension", spec.dimension()},
           {"rays", rays(spec)},
           {"vertex_count", delta.vertices().size()},
           {"facet_count", delta.facets().size()},
           {"reflexive", is_reflexive(delta)}};
    std::ostringstream t;
    t << spec.to_string() << ": dimension " << spec.dimension() << ", " << delta.vertices().size() << " vertices, "
      << delta.facets().size() << " facets\n";
    int code = 0;
    if (descend) {
        ObstructionReport r = face_descent(delta, std::nullopt, 2);
        j["report"] = to_json(r);
        t << report_text(r);
        if (auto nf = obstructing_face(spec)) {
            ObstructionReport fr = face_test(nf->face, std::nullopt);
            j["named_face"] = {{"shape", nf->shape},
                               {"plane", {nf->plane_i, nf->plane_j}},
                               {"vertices", nf->face.vertices},
                               {"projection_matches_model", nf->projection.vertices() == nf->plane_model.vertices()},
                               {"report", to_json(fr)}};
            t << "named face (" << nf->shape << ", plane " << nf->plane_i + 1 << "," << nf->plane_j + 1
              << "): " << to_string(fr.verdict);
            if (fr.witness) t << " by " << fr.witness->test;
            t << "\n";
            if (fr.witness && fr.witness->data.contains("ratios"))
                t << "named face ratios: " << fr.witness->data["ratios"][0].get<std::string>() << " "
                  << fr.witness->data["ratios"][1].get<std::string>() << "\n";
        }
        code = r.verdict == Verdict::fails ? 1 : 0;
        if (strict && r.verdict == Verdict::inconclusive) code = 2;
    }
    emit(out, j, t.str());
    return code;
}

int cmd_polytope_info(const Input& in, const Output& out) {
    LatticePolytope P = read_polytope(in);
    json j = to_json(P);
    j["reflexive"] = is_reflexive(P);
    std::ostringstream t;
    t << "vertices: " << points_text(P.vertices()) << "\n";
    t << "facets:";
    for (const auto& f : P.facets()) t << " " << to_string(f.u) << ">=" << -f.a;
    t << "\n";
    t << "reflexive: " << (is_reflexive(P) ? "true" : "false") << "\n";
    json counts = json::array();
    t << "faces:";
    for (int d = 0; d <= static_cast<int>(P.dim()); ++d) {
        auto n = faces(P, d).size();
        counts.push_back(n);
        t << " " << n;
    }
    t << "\n";
    j["face_counts"] = counts;
    if (P.dim() == 2) {
        EdgeRatio er = edge_ratio_test(P);
        json ratios = json::array();
        t << "edges: " << er.edges.size() << "\n";
        t << "ratios:";
        for (const auto& e : er.edges) {
            ratios.push_back({{"from", e.from}, {"to", e.to}, {"length", e.length},
                              {"adjacent_length", e.adjacent_length}, {"ratio", rat_string(e.ratio)}});
            t << " " << rat_string(e.ratio);
        }
        t << "\n";
        j["edge_ratios"] = ratios;
    }
    emit(out, j, t.str());
    return 0;
}

int cmd_descent(const Input& in, const Output& out, int d_max, bool polytope_only, bool strict) {
    std::optional<Laurent> p;
    LatticePolytope delta;
    if (!polytope_only) {
        p = read_polynomial(in);
        delta = hull(p->support());
    } else {
        delta = read_polytope(in);
    }
    ObstructionReport r = face_descent(delta, p, d_max);
    emit(out, to_json(r), report_text(r));
    if (r.verdict == Verdict::inconclusive) return strict ? 2 : 0;
    return verdict_code(r.verdict);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monge-Ampere polynomials and the generalized Einstein condition on toric data"};
    app.require_subcommand(1);

    Input in;
    Output out;
    std::string lambda, spec;
    bool descend = false, polytope_only = false, strict = false;
    int d_max = 2;

    auto* mu_cmd = app.add_subcommand("mu", "compute mu(p)");
    add_input(mu_cmd, in);
    add_output(mu_cmd, out);

    auto* gec_cmd = app.add_subcommand("gec", "decide whether mu(p) divides a power of p");
    add_input(gec_cmd, in);
    add_output(gec_cmd, out);

    auto* ein_cmd = app.add_subcommand("einstein", "test mu(p) against c x^m p^(lambda-1)");
    add_input(ein_cmd, in);
    add_output(ein_cmd, out);
    ein_cmd->add_option("--lambda", lambda, "rational lambda");

    auto* fam_cmd = app.add_subcommand("family", "anticanonical polytope of a toric Fano family");
    fam_cmd->add_option("spec", spec, "V:k=2, S:m=3,k=1, X:m=2,k=0, W:m=2, NP1, NP2, P:n=3, Prod:P1^k")->required();
    fam_cmd->add_flag("--descend", descend, "run the polytope-only face descent");
    fam_cmd->add_flag("--strict", strict, "exit 2 when the sweep is inconclusive");
    add_output(fam_cmd, out);

    auto* info_cmd = app.add_subcommand("polytope-info", "vertices, facets, reflexivity, faces, edge ratios");
    add_input(info_cmd, in);
    add_output(info_cmd, out);

    auto* desc_cmd = app.add_subcommand("descent", "face descent on a polynomial or a polytope");
    add_input(desc_cmd, in);
    add_output(desc_cmd, out);
    desc_cmd->add_option("--dmax", d_max, "largest face dimension to test");
    desc_cmd->add_flag("--strict", strict, "exit 2 when the descent is inconclusive");
    desc_cmd->add_flag("--polytope", polytope_only, "read a polytope and run without coefficients");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*mu_cmd) return cmd_mu(in, out);
        if (*gec_cmd) return cmd_gec(in, out);
        if (*ein_cmd) return cmd_einstein(in, out, lambda);
        if (*fam_cmd) return cmd_family(spec, descend, strict, out);
        if (*info_cmd) return cmd_polytope_info(in, out);
        if (*desc_cmd) return cmd_descent(in, out, d_max, polytope_only, strict);
    } catch (const NotUnimodular& e) {
        std::cerr << "not-unimodular: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

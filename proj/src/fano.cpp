#include "toricgec/fano.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <stdexcept>

namespace toricgec {

namespace {

Exponent unit(std::size_t n, std::size_t i, std::int64_t s = 1) {
    Exponent e(n, 0);
    e[i] = s;
    return e;
}

void check_ranges(const FamilySpec& s) {
    auto bad = [&](const std::string& why) { throw std::invalid_argument("family " + s.to_string() + ": " + why); };
    switch (s.tag) {
        case FamilyTag::V:
            if (s.k < 1) bad("needs k >= 1");
            break;
        case FamilyTag::S:
            if (s.k < 1 || s.k > s.m) bad("needs 1 <= k <= m");
            break;
        case FamilyTag::X:
            if (s.m < 1 || s.k < 0 || s.k > s.m) bad("needs m >= 1 and 0 <= k <= m");
            break;
        case FamilyTag::W:
            if (s.m < 1) bad("needs m >= 1");
            break;
        case FamilyTag::Pn:
            if (s.n < 1) bad("needs n >= 1");
            break;
        case FamilyTag::Product:
            if (s.k < 1) bad("needs at least one factor");
            break;
        case FamilyTag::NP1:
        case FamilyTag::NP2:
            break;
    }
}

}  // namespace

FamilySpec FamilySpec::parse(const std::string& text) {
    FamilySpec s;
    if (text == "NP1" || text == "NP2") {
        s.tag = text == "NP1" ? FamilyTag::NP1 : FamilyTag::NP2;
        return s;
    }
    std::smatch mt;
    if (std::regex_match(text, mt, std::regex(R"(Prod:P1\^(\d+))"))) {
        s.tag = FamilyTag::Product;
        s.k = std::stoi(mt[1]);
        check_ranges(s);
        return s;
    }
    if (!std::regex_match(text, mt, std::regex(R"(([VSXWP]):(.*))")))
        throw std::invalid_argument("unknown family spec '" + text + "'");
    const std::map<std::string, FamilyTag> tags{
        {"V", FamilyTag::V}, {"S", FamilyTag::S}, {"X", FamilyTag::X}, {"W", FamilyTag::W}, {"P", FamilyTag::Pn}};
    s.tag = tags.at(mt[1]);
    const std::map<FamilyTag, std::vector<std::string>> wanted{{FamilyTag::V, {"k"}},
                                                               {FamilyTag::S, {"m", "k"}},
                                                               {FamilyTag::X, {"m", "k"}},
                                                               {FamilyTag::W, {"m"}},
                                                               {FamilyTag::Pn, {"n"}}};
    std::map<std::string, int> params;
    const std::string body = mt[2];
    const std::regex kv(R"(([kmn])=(\d+))");
    std::size_t pos = 0;
    while (pos <= body.size()) {
        std::size_t comma = body.find(',', pos);
        std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::smatch im;
        if (!std::regex_match(item, im, kv)) throw std::invalid_argument("bad parameter '" + item + "' in '" + text + "'");
        if (!params.emplace(im[1], std::stoi(im[2])).second)
            throw std::invalid_argument("repeated parameter in '" + text + "'");
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    const auto& need = wanted.at(s.tag);
    if (params.size() != need.size()) throw std::invalid_argument("wrong parameters in '" + text + "'");
    for (const auto& key : need) {
        auto it = params.find(key);
        if (it == params.end()) throw std::invalid_argument("missing parameter " + key + " in '" + text + "'");
        (key == "k" ? s.k : key == "m" ? s.m : s.n) = it->second;
    }
    check_ranges(s);
    return s;
}

std::string FamilySpec::to_string() const {
    switch (tag) {
        case FamilyTag::V: return "V:k=" + std::to_string(k);
        case FamilyTag::S: return "S:m=" + std::to_string(m) + ",k=" + std::to_string(k);
        case FamilyTag::X: return "X:m=" + std::to_string(m) + ",k=" + std::to_string(k);
        case FamilyTag::W: return "W:m=" + std::to_string(m);
        case FamilyTag::NP1: return "NP1";
        case FamilyTag::NP2: return "NP2";
        case FamilyTag::Pn: return "P:n=" + std::to_string(n);
        case FamilyTag::Product: return "Prod:P1^" + std::to_string(k);
    }
    return "";
}

std::size_t FamilySpec::dimension() const {
    switch (tag) {
        case FamilyTag::V: return 2 * static_cast<std::size_t>(k);
        case FamilyTag::S: return 2 * static_cast<std::size_t>(m) + 1;
        case FamilyTag::X: return 2 * static_cast<std::size_t>(m) + 2;
        case FamilyTag::W: return 2 * static_cast<std::size_t>(m);
        case FamilyTag::NP1: return 7;
        case FamilyTag::NP2: return 8;
        case FamilyTag::Pn: return static_cast<std::size_t>(n);
        case FamilyTag::Product: return static_cast<std::size_t>(k);
    }
    return 0;
}

std::vector<Exponent> rays(const FamilySpec& spec) {
    check_ranges(spec);
    const std::size_t d = spec.dimension();
    std::vector<Exponent> out;
    auto sum_of = [&](std::size_t from, std::size_t to, std::int64_t s) {
        Exponent e(d, 0);
        for (std::size_t i = from; i < to; ++i) e[i] = s;
        return e;
    };
    const auto m = static_cast<std::size_t>(spec.m);
    switch (spec.tag) {
        case FamilyTag::V:
            for (std::size_t i = 0; i < d; ++i) {
                out.push_back(unit(d, i));
                out.push_back(unit(d, i, -1));
            }
            out.push_back(sum_of(0, d, 1));
            out.push_back(sum_of(0, d, -1));
            break;
        case FamilyTag::S: {
            for (std::size_t i = 0; i < 2 * m; ++i) out.push_back(unit(d, i));
            out.push_back(unit(d, 2 * m));
            out.push_back(unit(d, 2 * m, -1));
            Exponent a = sum_of(0, m, -1);
            a[2 * m] = -spec.k;
            Exponent b = sum_of(m, 2 * m, -1);
            b[2 * m] = spec.k;
            out.push_back(a);
            out.push_back(b);
            break;
        }
        case FamilyTag::X: {
            for (std::size_t i = 0; i < 2 * m; ++i) out.push_back(unit(d, i));
            for (std::size_t i : {2 * m, 2 * m + 1}) {
                out.push_back(unit(d, i));
                out.push_back(unit(d, i, -1));
            }
            out.push_back(sum_of(2 * m, 2 * m + 2, 1));
            out.push_back(sum_of(2 * m, 2 * m + 2, -1));
            Exponent a = sum_of(0, m, -1);
            a[2 * m] = spec.k;
            Exponent b = sum_of(m, 2 * m, -1);
            b[2 * m] = -spec.k;
            out.push_back(a);
            out.push_back(b);
            break;
        }
        case FamilyTag::W:
            for (std::size_t i = 0; i < 2 * m; ++i) out.push_back(unit(d, i));
            for (std::size_t i = 0; i < m; ++i) out.push_back(add(unit(d, i), unit(d, m + i)));
            out.push_back(sum_of(0, m, -1));
            out.push_back(sum_of(m, 2 * m, -1));
            out.push_back(sum_of(0, 2 * m, -1));
            break;
        case FamilyTag::NP1:
            for (std::size_t i = 0; i < 6; ++i) out.push_back(unit(d, i));
            out.push_back(unit(d, 6));
            out.push_back(unit(d, 6, -1));
            for (std::size_t i = 0; i < 3; ++i) out.push_back(add(unit(d, i, -1), unit(d, 6, -1)));
            out.push_back({0, 0, 0, -1, -1, -1, 2});
            break;
        case FamilyTag::NP2:
            for (std::size_t i = 0; i < 6; ++i) out.push_back(unit(d, i));
            for (std::size_t i : {6, 7}) {
                out.push_back(unit(d, i));
                out.push_back(unit(d, i, -1));
            }
            out.push_back(add(unit(d, 6), unit(d, 7, -1)));
            out.push_back(add(unit(d, 6, -1), unit(d, 7)));
            for (std::size_t i = 0; i < 3; ++i) out.push_back(add(unit(d, i, -1), unit(d, 7, -1)));
            out.push_back({0, 0, 0, -1, -1, -1, 0, 2});
            break;
        case FamilyTag::Pn:
            for (std::size_t i = 0; i < d; ++i) out.push_back(unit(d, i));
            out.push_back(sum_of(0, d, -1));
            break;
        case FamilyTag::Product:
            for (std::size_t i = 0; i < d; ++i) {
                out.push_back(unit(d, i));
                out.push_back(unit(d, i, -1));
            }
            break;
    }
    return out;
}

LatticePolytope anticanonical_polytope(const FamilySpec& spec) {
    std::vector<Facet> ineq;
    for (const auto& u : rays(spec)) ineq.push_back(Facet{u, 1});
    LatticePolytope P = polytope_from_inequalities(ineq, spec.dimension());
    if (!P.full_dimensional() || !is_reflexive(P))
        throw std::logic_error("anticanonical polytope of " + spec.to_string() + " is not reflexive");
    return P;
}

namespace {

LatticePolytope model_from(const std::vector<std::pair<Exponent, std::int64_t>>& rows) {
    std::vector<Facet> f;
    for (const auto& [u, a] : rows) f.push_back(Facet{u, a});
    return polytope_from_inequalities(f, 2);
}

}  // namespace

std::optional<NamedFace> obstructing_face(const FamilySpec& spec) {
    check_ranges(spec);
    if (spec.is_positive_control()) return std::nullopt;
    const std::size_t d = spec.dimension();
    const auto m = static_cast<std::int64_t>(spec.m);
    std::vector<std::pair<std::size_t, std::int64_t>> fixed;
    NamedFace out;
    switch (spec.tag) {
        case FamilyTag::V:
            for (std::size_t i = 3; i <= d; ++i) fixed.emplace_back(i - 1, i % 2 == 0 ? 1 : -1);
            out.plane_i = 0;
            out.plane_j = 1;
            out.shape = "hexagon";
            out.plane_model = standard_hexagon();
            break;
        case FamilyTag::S:
            for (std::int64_t i = 0; i < m; ++i) fixed.emplace_back(i, -1);
            for (std::int64_t i = m; i < 2 * m - 1; ++i) fixed.emplace_back(i, -1);
            out.plane_i = 2 * m - 1;
            out.plane_j = 2 * m;
            out.shape = "trapezoid";
            out.plane_model = model_from({{{1, 0}, 1}, {{-1, spec.k}, m}, {{0, 1}, 1}, {{0, -1}, 1}});
            break;
        case FamilyTag::X:
            for (std::int64_t i = 0; i < 2 * m; ++i) fixed.emplace_back(i, -1);
            out.plane_i = 2 * m;
            out.plane_j = 2 * m + 1;
            out.shape = "hexagon";
            out.plane_model = standard_hexagon();
            break;
        case FamilyTag::W:
            for (std::int64_t i = 0; i < m - 1; ++i) {
                fixed.emplace_back(i, -1);
                fixed.emplace_back(m + i, 0);
            }
            out.plane_i = m - 1;
            out.plane_j = 2 * m - 1;
            out.shape = "hexagon";
            out.plane_model = model_from(
                {{{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}, {{-1, 0}, m}, {{-1, -1}, m}, {{0, -1}, 1}});
            break;
        case FamilyTag::NP1:
            for (std::size_t i = 1; i <= 5; ++i) fixed.emplace_back(i, -1);
            out.plane_i = 0;
            out.plane_j = 6;
            out.shape = "trapezoid";
            out.plane_model = model_from({{{1, 0}, 1}, {{0, 1}, 1}, {{0, -1}, 1}, {{-1, -1}, 1}});
            break;
        case FamilyTag::NP2:
            for (std::size_t i = 0; i <= 5; ++i) fixed.emplace_back(i, -1);
            out.plane_i = 6;
            out.plane_j = 7;
            out.shape = "hexagon";
            out.plane_model = model_from(
                {{{1, 0}, 1}, {{-1, 0}, 1}, {{0, 1}, 1}, {{0, -1}, 1}, {{1, -1}, 1}, {{-1, 1}, 1}});
            break;
        default:
            return std::nullopt;
    }
    auto P = std::make_shared<const LatticePolytope>(anticanonical_polytope(spec));
    std::vector<std::size_t> ids;
    for (std::size_t v = 0; v < P->vertices().size(); ++v) {
        const auto& x = P->vertices()[v];
        if (std::all_of(fixed.begin(), fixed.end(), [&](const auto& f) { return x[f.first] == f.second; }))
            ids.push_back(v);
    }
    if (ids.empty()) throw std::logic_error("no vertex of " + spec.to_string() + " lies on the named face");
    out.face = face_from_vertex_ids(P, ids);
    if (out.face.dim != 2) throw std::logic_error("named face of " + spec.to_string() + " is not two-dimensional");
    std::vector<Exponent> proj;
    for (const auto& x : out.face.vertices) proj.push_back({x[out.plane_i], x[out.plane_j]});
    out.projection = hull(proj);
    return out;
}

ControlWitness positive_control_witness(const FamilySpec& spec) {
    check_ranges(spec);
    const std::size_t d = spec.dimension();
    if (spec.tag == FamilyTag::Pn) {
        Laurent p = Laurent::constant(d, 1);
        for (std::size_t i = 0; i < d; ++i) p += Laurent::variable(d, i);
        return {p, Rat(static_cast<long>(d + 1))};
    }
    if (spec.tag == FamilyTag::Product) {
        Laurent p = Laurent::constant(d, 1);
        for (std::size_t i = 0; i < d; ++i) p = p * (Laurent::constant(d, 1) + Laurent::variable(d, i));
        return {p, Rat(2)};
    }
    throw std::invalid_argument("family " + spec.to_string() + " has no bundled witness");
}

}  // namespace toricgec

#include "toricgec/io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace toricgec {

using nlohmann::json;

std::string rat_string(const Rat& q) { return q.get_str(); }

namespace {

Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) return make_rat(j.get<std::string>());
    throw std::invalid_argument("coefficient must be an integer or a rational string");
}

json exponent_list(const std::vector<Exponent>& v) {
    json a = json::array();
    for (const auto& e : v) a.push_back(e);
    return a;
}

}  // namespace

json to_json(const Laurent& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) terms.push_back({{"e", e}, {"c", rat_string(c)}});
    return {{"rank", p.rank()}, {"terms", terms}};
}

Laurent laurent_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rank") || !j.contains("terms"))
        throw std::invalid_argument("polynomial JSON needs \"rank\" and \"terms\"");
    const auto n = j.at("rank").get<std::size_t>();
    Laurent p(n);
    for (const auto& t : j.at("terms")) {
        auto e = t.at("e").get<Exponent>();
        if (e.size() != n) throw std::invalid_argument("exponent length differs from rank");
        p.add_term(e, rat_from_json(t.at("c")));
    }
    return p;
}

json to_json(const LatticePolytope& P) {
    json facets = json::array();
    for (const auto& f : P.facets()) facets.push_back({{"u", f.u}, {"a", f.a}});
    json j{{"rank", P.ambient_rank()}, {"dim", P.dim()}, {"vertices", exponent_list(P.vertices())}, {"facets", facets}};
    if (!P.full_dimensional()) {
        std::vector<Exponent> rows;
        for (std::size_t i = 0; i < P.chart().basis().rows(); ++i) rows.push_back(P.chart().basis().row_exponent(i));
        j["chart"] = {{"base", P.chart().base()}, {"basis", exponent_list(rows)}};
    }
    return j;
}

LatticePolytope polytope_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vertices")) throw std::invalid_argument("polytope JSON needs \"vertices\"");
    auto pts = j.at("vertices").get<std::vector<Exponent>>();
    if (pts.empty()) throw std::invalid_argument("polytope JSON has no vertices");
    const std::size_t n = j.contains("rank") ? j.at("rank").get<std::size_t>() : pts[0].size();
    for (const auto& v : pts)
        if (v.size() != n) throw std::invalid_argument("vertex length differs from rank");
    return hull(pts);
}

json to_json(const ObstructionReport& r) {
    json j{{"verdict", to_string(r.verdict)}};
    if (r.witness) {
        const auto& w = *r.witness;
        j["witness"] = {{"test", w.test},
                        {"face_dim", w.face_dim},
                        {"face_vertices", exponent_list(w.face_vertices)},
                        {"face_active", w.face_active},
                        {"data", w.data}};
    }
    json trace = json::array();
    for (const auto& t : r.trace)
        trace.push_back({{"dim", t.dim},
                         {"active", t.active},
                         {"vertices", exponent_list(t.vertices)},
                         {"test", t.test},
                         {"outcome", t.outcome}});
    j["trace"] = trace;
    return j;
}

json to_json(const EinsteinResult& r) {
    json j{{"holds", r.holds}, {"n", r.n}, {"a", r.a}, {"b", r.b}};
    if (r.c) j["c"] = rat_string(*r.c);
    if (r.m) j["m"] = *r.m;
    return j;
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Laurent parse(std::optional<std::size_t> rank) {
        // first pass learns the largest variable index so every subterm shares one rank
        max_index_ = 0;
        scan_variables();
        if (rank) {
            if (used_ && max_index_ >= *rank) throw std::invalid_argument("variable index exceeds the rank");
            rank_ = *rank;
        } else {
            rank_ = used_ ? max_index_ + 1 : 1;
        }
        pos_ = 0;
        Laurent p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("parse error at position " + std::to_string(pos_) + ": " + what);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    void scan_variables() {
        for (std::size_t i = 0; i < s_.size(); ++i) {
            char c = s_[i];
            if (c != 'x' && c != 'y' && c != 'z') continue;
            std::size_t idx = c == 'x' ? 0 : c == 'y' ? 1 : 2;
            if (c == 'x' && i + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i + 1]))) {
                std::size_t j = i + 1;
                while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
                idx = std::stoul(s_.substr(i + 1, j - i - 1));
                if (idx == 0) throw std::invalid_argument("variables are numbered from x1");
                idx -= 1;
                i = j - 1;
            }
            used_ = true;
            max_index_ = std::max(max_index_, idx);
        }
    }

    Laurent expr() {
        skip();
        Laurent acc(rank_);
        bool first = true;
        while (true) {
            skip();
            int sign = 1;
            if (peek('+') || peek('-')) {
                sign = s_[pos_] == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                break;
            }
            Laurent t = term();
            acc += sign < 0 ? -t : t;
            first = false;
        }
        return acc;
    }

    bool starts_factor() {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return c == '(' || c == 'x' || c == 'y' || c == 'z' || std::isdigit(static_cast<unsigned char>(c));
    }

    Laurent term() {
        Laurent acc = power();
        while (true) {
            if (peek('*')) {
                ++pos_;
                acc = acc * power();
            } else if (peek('/')) {
                ++pos_;
                Laurent d = power();
                if (d.is_zero()) fail("division by zero");
                auto q = divide_exact(acc, d);
                if (!q) fail("division is not exact");
                acc = *q;
            } else if (starts_factor()) {
                acc = acc * power();
            } else {
                return acc;
            }
        }
    }

    Laurent power() {
        Laurent base = atom();
        if (!peek('^')) return base;
        ++pos_;
        skip();
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
            neg = s_[pos_] == '-';
            ++pos_;
        }
        Int e = integer();
        if (e > 100000) fail("exponent too large");
        const auto k = static_cast<unsigned>(e.get_ui());
        if (!neg) return pow(base, k);
        if (!base.is_monomial()) fail("negative power of a non-monomial");
        const auto& [m, c] = *base.terms().begin();
        Rat inv = 1 / c;
        Rat coeff = 1;
        for (unsigned i = 0; i < k; ++i) coeff *= inv;
        return Laurent::monomial(coeff, scale(-static_cast<std::int64_t>(k), m));
    }

    Int integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        return Int(s_.substr(start, pos_ - start));
    }

    Laurent atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Laurent inner = expr();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return Laurent::constant(rank_, Rat(integer()));
        if (c == 'x' || c == 'y' || c == 'z') {
            ++pos_;
            std::size_t idx = c == 'x' ? 0 : c == 'y' ? 1 : 2;
            if (c == 'x' && pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                idx = static_cast<std::size_t>(integer().get_ui()) - 1;
            return Laurent::variable(rank_, idx);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    std::size_t rank_ = 0;
    std::size_t max_index_ = 0;
    bool used_ = false;
};

std::string variable_name(std::size_t rank, std::size_t i) {
    if (rank <= 3) return std::string(1, "xyz"[i]);
    return "x" + std::to_string(i + 1);
}

}  // namespace

Laurent parse_expression(const std::string& text, std::optional<std::size_t> rank) {
    return Parser(text).parse(rank);
}

std::string format_expression(const Laurent& p) {
    if (p.is_zero()) return "0";
    std::vector<std::pair<Exponent, Rat>> terms(p.terms().begin(), p.terms().end());
    // absolute degree ascending, then x before y
    auto key = [](const Exponent& e) {
        std::int64_t d = 0;
        for (auto v : e) d += v < 0 ? -v : v;
        return d;
    };
    std::sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
        const auto da = key(a.first), db = key(b.first);
        return da != db ? da < db : b.first < a.first;
    });
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms) {
        Rat mag = abs(c);
        if (c < 0)
            out << '-';
        else if (!first)
            out << '+';
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += '*';
            mono += variable_name(p.rank(), i);
            if (e[i] != 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty()) {
            out << rat_string(mag);
        } else if (mag == 1) {
            out << mono;
        } else if (mag.get_den() == 1) {
            out << rat_string(mag) << mono;
        } else {
            out << rat_string(mag) << '*' << mono;
        }
    }
    return out.str();
}

std::optional<Laurent> named_polynomial(const std::string& name) {
    if (name == "hexagon-q") return hexagon_q();
    if (name == "rem7") return parse_expression("2+2x-x^2+2x^3+2x^4");
    if (name.rfind("fs:", 0) == 0) {
        std::size_t n = 0;
        try {
            std::size_t used = 0;
            n = std::stoul(name.substr(3), &used);
            if (used != name.size() - 3) return std::nullopt;
        } catch (const std::exception&) {
            return std::nullopt;
        }
        if (n == 0) throw std::invalid_argument("fs:n needs n >= 1");
        Laurent p = Laurent::constant(n, 1);
        for (std::size_t i = 0; i < n; ++i) p += Laurent::variable(n, i);
        return p;
    }
    return std::nullopt;
}

}  // namespace toricgec

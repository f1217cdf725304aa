#include "toricgec/laurent.hpp"

#include <algorithm>
#include <stdexcept>

namespace toricgec {

namespace {

void require_same_rank(const Laurent& p, const Laurent& q) {
    if (p.rank() != q.rank()) throw std::invalid_argument("Laurent rank mismatch");
}

struct GrlexLess {
    bool operator()(const Exponent& a, const Exponent& b) const { return grlex_less(a, b); }
};

bool componentwise_le(const Exponent& a, const Exponent& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Rat rat_pow(const Rat& base, std::int64_t e) {
    Rat r = 1;
    Rat b = e < 0 ? Rat(1 / base) : base;
    std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

}  // namespace

Laurent Laurent::constant(std::size_t rank, const Rat& c) {
    Laurent p(rank);
    p.add_term(Exponent(rank, 0), c);
    return p;
}

Laurent Laurent::monomial(const Rat& c, const Exponent& e) {
    Laurent p(e.size());
    p.add_term(e, c);
    return p;
}

Laurent Laurent::variable(std::size_t rank, std::size_t i) {
    if (i >= rank) throw std::invalid_argument("variable index out of range");
    Exponent e(rank, 0);
    e[i] = 1;
    return monomial(1, e);
}

Laurent Laurent::from_terms(std::size_t rank, const std::vector<std::pair<Exponent, Rat>>& terms) {
    Laurent p(rank);
    for (const auto& [e, c] : terms) p.add_term(e, c);
    return p;
}

Rat Laurent::coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
}

std::vector<Exponent> Laurent::support() const {
    std::vector<Exponent> s;
    s.reserve(terms_.size());
    for (const auto& t : terms_) s.push_back(t.first);
    return s;
}

void Laurent::add_term(const Exponent& e, Rat c) {
    if (e.size() != rank_) throw std::invalid_argument("exponent length does not match Laurent rank");
    c.canonicalize();
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Laurent Laurent::operator+(const Laurent& q) const {
    require_same_rank(*this, q);
    Laurent r = *this;
    for (const auto& [e, c] : q.terms_) r.add_term(e, c);
    return r;
}

Laurent& Laurent::operator+=(const Laurent& q) {
    require_same_rank(*this, q);
    for (const auto& [e, c] : q.terms_) add_term(e, c);
    return *this;
}

Laurent Laurent::operator-() const {
    Laurent r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

Laurent Laurent::operator-(const Laurent& q) const { return *this + (-q); }

Laurent Laurent::operator*(const Laurent& q) const {
    require_same_rank(*this, q);
    Laurent r(rank_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : q.terms_) r.add_term(add(e1, e2), c1 * c2);
    return r;
}

Laurent Laurent::operator*(const Rat& c) const {
    if (c == 0) return Laurent(rank_);
    Laurent r = *this;
    for (auto& t : r.terms_) t.second *= c;
    return r;
}

Laurent Laurent::times_monomial(const Rat& c, const Exponent& m) const {
    if (m.size() != rank_) throw std::invalid_argument("monomial length mismatch");
    Laurent r(rank_);
    if (c == 0) return r;
    for (const auto& [e, a] : terms_) r.terms_.emplace_hint(r.terms_.end(), add(e, m), a * c);
    return r;
}

Laurent add(const Laurent& p, const Laurent& q) { return p + q; }
Laurent mul(const Laurent& p, const Laurent& q) { return p * q; }

Laurent pow(const Laurent& p, unsigned k) {
    Laurent result = Laurent::constant(p.rank(), 1);
    Laurent base = p;
    while (k) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

Laurent restrict(const Laurent& p, const std::function<bool(const Exponent&)>& keep) {
    Laurent r(p.rank());
    for (const auto& [e, c] : p.terms())
        if (keep(e)) r.add_term(e, c);
    return r;
}

Laurent restrict(const Laurent& p, const std::set<Exponent>& S) {
    return restrict(p, [&](const Exponent& e) { return S.count(e) > 0; });
}

Laurent restrict(const Laurent& p, const std::vector<Exponent>& S) {
    return restrict(p, std::set<Exponent>(S.begin(), S.end()));
}

Normalized monomial_normalize(const Laurent& p) {
    if (p.is_zero()) throw std::invalid_argument("monomial_normalize: zero polynomial");
    Exponent lo = p.terms().begin()->first;
    for (const auto& t : p.terms())
        for (std::size_t i = 0; i < lo.size(); ++i) lo[i] = std::min(lo[i], t.first[i]);
    Normalized out{p.times_monomial(1, scale(-1, lo)), MonomialShift{1, lo}};
    return out;
}

bool grlex_less(const Exponent& a, const Exponent& b) {
    std::int64_t da = 0, db = 0;
    for (auto v : a) da = checked_add(da, v);
    for (auto v : b) db = checked_add(db, v);
    if (da != db) return da < db;
    return a < b;
}

std::int64_t total_degree(const Laurent& p) {
    if (p.is_zero()) throw std::invalid_argument("total_degree: zero polynomial");
    std::int64_t d = 0;
    bool first = true;
    for (const auto& t : p.terms()) {
        std::int64_t s = 0;
        for (auto v : t.first) s = checked_add(s, v);
        if (first || s > d) d = s;
        first = false;
    }
    return d;
}

namespace {

// Division of polynomials with nonnegative exponents by a single divisor under grlex.
std::optional<Laurent> polynomial_divide(const Laurent& f, const Laurent& g) {
    const std::size_t n = f.rank();
    std::map<Exponent, Rat, GrlexLess> rem(f.terms().begin(), f.terms().end());
    std::vector<std::pair<Exponent, Rat>> gterms(g.terms().begin(), g.terms().end());
    auto lead = std::max_element(gterms.begin(), gterms.end(),
                                 [](const auto& a, const auto& b) { return grlex_less(a.first, b.first); });
    const Exponent lt = lead->first;
    const Rat lc = lead->second;
    Laurent quotient(n);
    while (!rem.empty()) {
        auto top = std::prev(rem.end());
        if (!componentwise_le(lt, top->first)) return std::nullopt;
        Exponent shift = sub(top->first, lt);
        Rat factor = top->second / lc;
        quotient.add_term(shift, factor);
        for (const auto& [e, c] : gterms) {
            Exponent x = add(e, shift);
            auto [it, inserted] = rem.try_emplace(x, -factor * c);
            if (!inserted) {
                it->second -= factor * c;
                if (it->second == 0) rem.erase(it);
            }
        }
    }
    return quotient;
}

}  // namespace

std::optional<Laurent> divide_exact(const Laurent& f, const Laurent& g) {
    require_same_rank(f, g);
    if (g.is_zero()) throw std::invalid_argument("divide_exact: zero divisor");
    if (f.is_zero()) return Laurent(f.rank());
    Normalized nf = monomial_normalize(f);
    Normalized ng = monomial_normalize(g);
    auto q = polynomial_divide(nf.q, ng.q);
    if (!q) return std::nullopt;
    return q->times_monomial(1, sub(nf.shift.exponent, ng.shift.exponent));
}

bool divides(const Laurent& g, const Laurent& f) {
    if (g.is_zero()) throw std::invalid_argument("divides: zero divisor");
    return divide_exact(f, g).has_value();
}

Laurent substitute_monomial(const Laurent& p, const IntMatrix& map, const std::vector<Rat>& scalars) {
    const std::size_t n = p.rank();
    if (map.cols() != n || scalars.size() != n)
        throw std::invalid_argument("substitute_monomial: dimension mismatch");
    for (const auto& s : scalars)
        if (s == 0) throw std::invalid_argument("substitute_monomial: zero scalar");
    const std::size_t k = map.rows();
    std::vector<Exponent> columns(n, Exponent(k));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) columns[i][j] = to_i64(map(j, i));
    Laurent r(k);
    for (const auto& [e, c] : p.terms()) {
        Exponent y(k, 0);
        Rat coeff = c;
        for (std::size_t i = 0; i < n; ++i) {
            if (e[i] == 0) continue;
            y = add(y, scale(e[i], columns[i]));
            coeff *= rat_pow(scalars[i], e[i]);
        }
        r.add_term(y, coeff);
    }
    return r;
}

}  // namespace toricgec

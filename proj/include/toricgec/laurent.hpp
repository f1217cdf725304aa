#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "toricgec/lattice.hpp"

namespace toricgec {

// Sparse Laurent polynomial over Q in n variables. No zero coefficients are stored.
class Laurent {
public:
    using TermMap = std::map<Exponent, Rat>;

    explicit Laurent(std::size_t rank = 0) : rank_(rank) {}
    static Laurent constant(std::size_t rank, const Rat& c);
    static Laurent monomial(const Rat& c, const Exponent& e);
    static Laurent variable(std::size_t rank, std::size_t i);
    static Laurent from_terms(std::size_t rank, const std::vector<std::pair<Exponent, Rat>>& terms);

    std::size_t rank() const { return rank_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    Rat coeff(const Exponent& e) const;
    std::vector<Exponent> support() const;

    // Adds c * x^e, dropping the term if it cancels.
    void add_term(const Exponent& e, Rat c);

    Laurent operator+(const Laurent& q) const;
    Laurent operator-(const Laurent& q) const;
    Laurent operator-() const;
    Laurent operator*(const Laurent& q) const;
    Laurent operator*(const Rat& c) const;
    Laurent& operator+=(const Laurent& q);
    bool operator==(const Laurent& q) const { return rank_ == q.rank_ && terms_ == q.terms_; }
    bool operator!=(const Laurent& q) const { return !(*this == q); }

    // Multiplication by c * x^m.
    Laurent times_monomial(const Rat& c, const Exponent& m) const;

private:
    std::size_t rank_;
    TermMap terms_;
};

Laurent add(const Laurent& p, const Laurent& q);
Laurent mul(const Laurent& p, const Laurent& q);
Laurent pow(const Laurent& p, unsigned k);

Laurent restrict(const Laurent& p, const std::function<bool(const Exponent&)>& keep);
Laurent restrict(const Laurent& p, const std::set<Exponent>& S);
Laurent restrict(const Laurent& p, const std::vector<Exponent>& S);

struct MonomialShift {
    Rat scalar{1};
    Exponent exponent;
};

struct Normalized {
    Laurent q;
    MonomialShift shift;
};

// p = shift * q with q having nonnegative exponents and 0 attained in each coordinate.
Normalized monomial_normalize(const Laurent& p);

// Graded lexicographic comparison: total degree first, then lexicographic.
bool grlex_less(const Exponent& a, const Exponent& b);
std::int64_t total_degree(const Laurent& p);

// Exact quotient f / g in the Laurent ring, if it exists.
std::optional<Laurent> divide_exact(const Laurent& f, const Laurent& g);
// True iff f = g*h for a Laurent polynomial h.
bool divides(const Laurent& g, const Laurent& f);

// x_i -> scalars[i] * y^{column i of map}; map is (new rank) x (old rank).
Laurent substitute_monomial(const Laurent& p, const IntMatrix& map, const std::vector<Rat>& scalars);

}  // namespace toricgec

#ifndef KRH_MULTIPOLY_HPP
#define KRH_MULTIPOLY_HPP

#include "krh/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace krh {

// Monomial in edge variables, stored sparsely as sorted (variable, exponent)
// pairs with positive exponents.
class Monomial {
public:
    std::vector<std::pair<int, int>> factors;

    Monomial() = default;
    static Monomial var(int v, int e = 1) {
        Monomial m;
        if (e != 0) m.factors.push_back({v, e});
        return m;
    }

    bool is_unit() const { return factors.empty(); }
    int total_degree() const {
        int d = 0;
        for (auto& [v, e] : factors) d += e;
        return d;
    }
    int exponent(int v) const {
        for (auto& [w, e] : factors)
            if (w == v) return e;
        return 0;
    }

    Monomial operator*(const Monomial& o) const;
    // divisibility test and exact quotient
    bool divides(const Monomial& o) const;  // *this | o
    Monomial quotient_of(const Monomial& o) const;  // o / *this

    // lexicographic monomial order (earlier variables dominate), so that the
    // map's last element is a genuine leading term: LT(m1*m2) = LT(m1)*LT(m2)
    bool operator<(const Monomial& o) const {
        auto a = factors.begin(), b = o.factors.begin();
        while (a != factors.end() && b != o.factors.end()) {
            if (a->first < b->first) return false;  // *this has the earlier variable
            if (b->first < a->first) return true;
            if (a->second != b->second) return a->second < b->second;
            ++a, ++b;
        }
        return a == factors.end() && b != o.factors.end();
    }
    bool operator==(const Monomial& o) const { return factors == o.factors; }

    std::string str() const;
};

// Sparse multivariate polynomial over Q.  Variables are global integer ids;
// every variable has q-degree 2.
class MultiPoly {
public:
    std::map<Monomial, Rational> terms;

    MultiPoly() = default;
    MultiPoly(long c) { if (c != 0) terms[Monomial()] = Rational(c); }
    explicit MultiPoly(const Rational& c) { if (!c.is_zero()) terms[Monomial()] = c; }
    static MultiPoly var(int v) { return monomial(Monomial::var(v), Rational(1)); }
    static MultiPoly monomial(const Monomial& m, const Rational& c) {
        MultiPoly p;
        if (!c.is_zero()) p.terms[m] = c;
        return p;
    }

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const {
        return terms.empty() || (terms.size() == 1 && terms.begin()->first.is_unit());
    }
    Rational constant_term() const {
        auto it = terms.find(Monomial());
        return it == terms.end() ? Rational(0) : it->second;
    }

    void add_term(const Monomial& m, const Rational& c);

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly scaled(const Rational& c) const;
    bool operator==(const MultiPoly& o) const { return terms == o.terms; }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    // Simultaneous substitution of variables by polynomials.  The assignment
    // map must be acyclic (no substituted variable may reappear in any image;
    // checked, error on violation).
    MultiPoly substitute(const std::map<int, MultiPoly>& assignments) const;
    // substitution without the acyclicity guard (still one simultaneous pass)
    MultiPoly substitute_sim(const std::map<int, MultiPoly>& assignments) const;

    // Exact division; throws if d does not divide *this in the polynomial ring.
    MultiPoly divide_exact(const MultiPoly& d) const;

    // q-grading: 2 * total exponent; -1 for inhomogeneous, throws on zero.
    bool is_homogeneous() const;
    int q_degree() const;
    int max_total_degree() const;

    // variable ids occurring in the polynomial
    std::vector<int> variables() const;
    int degree_in(int v) const;

    // coefficient of v^e viewed as polynomial in v (a MultiPoly in the rest)
    MultiPoly coefficient_of(int v, int e) const;

    std::string str() const;
};

} // namespace krh

#endif

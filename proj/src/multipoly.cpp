#include "krh/multipoly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace krh {

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    auto a = factors.begin(), b = o.factors.begin();
    while (a != factors.end() || b != o.factors.end()) {
        if (b == o.factors.end() || (a != factors.end() && a->first < b->first)) {
            r.factors.push_back(*a++);
        } else if (a == factors.end() || b->first < a->first) {
            r.factors.push_back(*b++);
        } else {
            r.factors.push_back({a->first, a->second + b->second});
            ++a, ++b;
        }
    }
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    for (auto& [v, e] : factors)
        if (o.exponent(v) < e) return false;
    return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
    Monomial r;
    for (auto& [v, e] : o.factors) {
        int d = e - exponent(v);
        if (d < 0) throw error("Monomial: non-divisible quotient");
        if (d > 0) r.factors.push_back({v, d});
    }
    return r;
}

std::string Monomial::str() const {
    if (factors.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (auto& [v, e] : factors) {
        if (!first) os << "*";
        first = false;
        os << "X" << v;
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

void MultiPoly::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
        terms[m] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    MultiPoly r = *this;
    for (auto& [m, c] : o.terms) r.add_term(m, c);
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    for (auto& [m, c] : o.terms) add_term(m, c);
    return *this;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    MultiPoly r = *this;
    for (auto& [m, c] : o.terms) r.add_term(m, -c);
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    MultiPoly r;
    for (auto& [m1, c1] : terms)
        for (auto& [m2, c2] : o.terms) r.add_term(m1 * m2, c1 * c2);
    return r;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r;
    for (auto& [m, c] : terms) r.terms[m] = -c;
    return r;
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
    MultiPoly r;
    if (c.is_zero()) return r;
    for (auto& [m, k] : terms) r.terms[m] = k * c;
    return r;
}

MultiPoly MultiPoly::substitute(const std::map<int, MultiPoly>& assignments) const {
    for (auto& [v, img] : assignments)
        for (int w : img.variables())
            if (assignments.count(w)) throw error("MultiPoly: cyclic substitution");
    return substitute_sim(assignments);
}

MultiPoly MultiPoly::substitute_sim(const std::map<int, MultiPoly>& assignments) const {
    if (assignments.empty()) return *this;
    MultiPoly r;
    for (auto& [m, c] : terms) {
        MultiPoly t(c);
        for (auto& [v, e] : m.factors) {
            auto it = assignments.find(v);
            MultiPoly base = (it == assignments.end()) ? MultiPoly::var(v) : it->second;
            for (int i = 0; i < e; ++i) t = t * base;
        }
        r += t;
    }
    return r;
}

MultiPoly MultiPoly::divide_exact(const MultiPoly& d) const {
    if (d.is_zero()) throw error("MultiPoly: division by zero polynomial");
    MultiPoly rem = *this, quot;
    auto lead = d.terms.rbegin();
    while (!rem.is_zero()) {
        auto lt = rem.terms.rbegin();
        if (!lead->first.divides(lt->first))
            throw error("MultiPoly: non-exact division");
        Monomial q = lead->first.quotient_of(lt->first);
        Rational c = lt->second / lead->second;
        quot.add_term(q, c);
        rem = rem - d * MultiPoly::monomial(q, c);
    }
    return quot;
}

bool MultiPoly::is_homogeneous() const {
    if (terms.empty()) return true;
    int d = terms.begin()->first.total_degree();
    for (auto& [m, c] : terms)
        if (m.total_degree() != d) return false;
    return true;
}

int MultiPoly::q_degree() const {
    if (terms.empty()) throw error("MultiPoly: q_degree of zero");
    if (!is_homogeneous()) return -1;
    return 2 * terms.begin()->first.total_degree();
}

int MultiPoly::max_total_degree() const {
    int d = 0;
    for (auto& [m, c] : terms) d = std::max(d, m.total_degree());
    return d;
}

std::vector<int> MultiPoly::variables() const {
    std::set<int> vs;
    for (auto& [m, c] : terms)
        for (auto& [v, e] : m.factors) vs.insert(v);
    return std::vector<int>(vs.begin(), vs.end());
}

int MultiPoly::degree_in(int v) const {
    int d = 0;
    for (auto& [m, c] : terms) d = std::max(d, m.exponent(v));
    return d;
}

MultiPoly MultiPoly::coefficient_of(int v, int e) const {
    MultiPoly r;
    for (auto& [m, c] : terms) {
        if (m.exponent(v) != e) continue;
        Monomial rest;
        for (auto& [w, f] : m.factors)
            if (w != v) rest.factors.push_back({w, f});
        r.add_term(rest, c);
    }
    return r;
}

std::string MultiPoly::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        Rational c = it->second;
        if (!first) {
            os << (c.sign() < 0 ? " - " : " + ");
            if (c.sign() < 0) c = -c;
        }
        first = false;
        if (it->first.is_unit()) {
            os << c.str();
        } else {
            if (!c.is_one()) os << c.str() << "*";
            os << it->first.str();
        }
    }
    return os.str();
}

} // namespace krh

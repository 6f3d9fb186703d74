#ifndef KRH_LAURENT_HPP
#define KRH_LAURENT_HPP

#include "krh/rational.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace krh {

// One-variable Laurent polynomial, exponent -> coefficient.
class Laurent1 {
public:
    std::map<int, Rational> terms;

    Laurent1() = default;
    static Laurent1 monomial(int e, const Rational& c) {
        Laurent1 p;
        if (!c.is_zero()) p.terms[e] = c;
        return p;
    }

    bool is_zero() const { return terms.empty(); }
    void add_term(int e, const Rational& c) {
        if (c.is_zero()) return;
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms[e] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    Laurent1 operator+(const Laurent1& o) const {
        Laurent1 r = *this;
        for (auto& [e, c] : o.terms) r.add_term(e, c);
        return r;
    }
    Laurent1 operator-(const Laurent1& o) const {
        Laurent1 r = *this;
        for (auto& [e, c] : o.terms) r.add_term(e, -c);
        return r;
    }
    Laurent1 operator*(const Laurent1& o) const {
        Laurent1 r;
        for (auto& [e1, c1] : terms)
            for (auto& [e2, c2] : o.terms) r.add_term(e1 + e2, c1 * c2);
        return r;
    }
    bool operator==(const Laurent1& o) const { return terms == o.terms; }

    std::string str(const std::string& var = "q") const;
};

// Two-variable Laurent polynomial in (a, q).
class Laurent2 {
public:
    // key: (a-exponent, q-exponent)
    std::map<std::pair<int, int>, Rational> terms;

    Laurent2() = default;
    static Laurent2 constant(const Rational& c) { return monomial(0, 0, c); }
    static Laurent2 monomial(int ea, int eq, const Rational& c) {
        Laurent2 p;
        if (!c.is_zero()) p.terms[{ea, eq}] = c;
        return p;
    }

    bool is_zero() const { return terms.empty(); }
    void add_term(int ea, int eq, const Rational& c) {
        if (c.is_zero()) return;
        auto key = std::make_pair(ea, eq);
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms[key] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    Laurent2 operator+(const Laurent2& o) const {
        Laurent2 r = *this;
        for (auto& [k, c] : o.terms) r.add_term(k.first, k.second, c);
        return r;
    }
    Laurent2 operator-(const Laurent2& o) const {
        Laurent2 r = *this;
        for (auto& [k, c] : o.terms) r.add_term(k.first, k.second, -c);
        return r;
    }
    Laurent2 operator*(const Laurent2& o) const {
        Laurent2 r;
        for (auto& [k1, c1] : terms)
            for (auto& [k2, c2] : o.terms)
                r.add_term(k1.first + k2.first, k1.second + k2.second, c1 * c2);
        return r;
    }
    Laurent2 operator-() const {
        Laurent2 r;
        for (auto& [k, c] : terms) r.terms[k] = -c;
        return r;
    }
    bool operator==(const Laurent2& o) const { return terms == o.terms; }

    // Exact division; throws if the quotient does not exist.
    Laurent2 divide_exact(const Laurent2& d) const;

    // Substitute a = q^N.
    Laurent1 specialize_a(int N) const {
        Laurent1 r;
        for (auto& [k, c] : terms) r.add_term(N * k.first + k.second, c);
        return r;
    }

    // Mirror image: (a, q) -> (a^-1, q^-1).
    Laurent2 invert_vars() const {
        Laurent2 r;
        for (auto& [k, c] : terms) r.terms[{-k.first, -k.second}] = c;
        return r;
    }

    int q_min() const;
    int q_max() const;
    std::string str() const;
};

// a - a^-1 and q - q^-1
Laurent2 a_minus_ainv();
Laurent2 q_minus_qinv();

// Two-variable Laurent polynomial divided by an explicit power of (q - q^-1).
// Kept normalized: denom_power is minimal.
class Laurent2Frac {
public:
    Laurent2 num;
    int denom_power = 0;

    Laurent2Frac() = default;
    Laurent2Frac(Laurent2 n, int dp) : num(std::move(n)), denom_power(dp) { normalize(); }
    static Laurent2Frac from_poly(Laurent2 p) { return Laurent2Frac(std::move(p), 0); }
    static Laurent2Frac one() { return from_poly(Laurent2::constant(Rational(1))); }

    bool is_zero() const { return num.is_zero(); }
    bool is_poly() const { return denom_power == 0; }

    // The unknot value (a - a^-1)/(q - q^-1).
    static Laurent2Frac circle();

    Laurent2Frac operator+(const Laurent2Frac& o) const;
    Laurent2Frac operator-(const Laurent2Frac& o) const;
    Laurent2Frac operator*(const Laurent2Frac& o) const;
    Laurent2Frac operator-() const { return Laurent2Frac(-num, denom_power); }
    bool operator==(const Laurent2Frac& o) const {
        return denom_power == o.denom_power && num == o.num;
    }

    // Multiply by (a q^-1)^e etc.
    Laurent2Frac scale(int ea, int eq, const Rational& c) const {
        Laurent2Frac r = *this;
        r.num = r.num * Laurent2::monomial(ea, eq, c);
        r.normalize();
        return r;
    }

    // Exact division by another fraction; throws when not exact.
    Laurent2Frac divide_exact(const Laurent2Frac& o) const;

    // Ascending q-power series expansion of num/(q-q^-1)^denom_power,
    // with all q-exponents <= q_hi.  Uses 1/(q-q^-1) = -q * sum q^{2m}.
    Laurent2 series_up_to(int q_hi) const;

    std::string str() const;

private:
    void normalize();
};

// Evaluation at a = 1, q = sqrt(-1) over Q[i]; used for link determinants.
struct GaussQ {
    Rational re, im;
};
GaussQ eval_at_a1_qi(const Laurent2& p);

} // namespace krh

#endif

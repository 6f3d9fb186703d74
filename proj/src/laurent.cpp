#include "krh/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace krh {

std::string Laurent1::str(const std::string& var) const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : terms) {
        Rational a = c;
        if (!first) {
            os << (a.sign() < 0 ? " - " : " + ");
            if (a.sign() < 0) a = -a;
        }
        first = false;
        bool unit = a.is_one() && e != 0;
        if (!unit) os << a.str();
        if (e != 0) {
            if (!unit) os << "*";
            os << var;
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

namespace {

// Long division by the lexicographically leading term of d.  Exact quotients
// always terminate this way; a quotient term escaping the exponent box of
// num/d signals non-divisibility.
bool try_divide(const Laurent2& num, const Laurent2& d, Laurent2& quot) {
    quot = Laurent2();
    if (num.is_zero()) return true;
    int a_lo = 0, a_hi = 0, q_lo = 0, q_hi = 0, da_lo = 0, da_hi = 0, dq_lo = 0, dq_hi = 0;
    bool first = true;
    for (auto& [k, c] : num.terms) {
        if (first) { a_lo = a_hi = k.first; q_lo = q_hi = k.second; first = false; }
        a_lo = std::min(a_lo, k.first); a_hi = std::max(a_hi, k.first);
        q_lo = std::min(q_lo, k.second); q_hi = std::max(q_hi, k.second);
    }
    first = true;
    for (auto& [k, c] : d.terms) {
        if (first) { da_lo = da_hi = k.first; dq_lo = dq_hi = k.second; first = false; }
        da_lo = std::min(da_lo, k.first); da_hi = std::max(da_hi, k.first);
        dq_lo = std::min(dq_lo, k.second); dq_hi = std::max(dq_hi, k.second);
    }
    Laurent2 rem = num;
    auto lead = d.terms.rbegin();
    while (!rem.is_zero()) {
        auto lt = rem.terms.rbegin();
        int ea = lt->first.first - lead->first.first;
        int eq = lt->first.second - lead->first.second;
        // in an exact division the quotient support is confined to this box
        if (ea < a_lo - da_lo || ea > a_hi - da_hi || eq < q_lo - dq_lo || eq > q_hi - dq_hi)
            return false;
        Rational c = lt->second / lead->second;
        quot.add_term(ea, eq, c);
        rem = rem - d * Laurent2::monomial(ea, eq, c);
    }
    return true;
}

} // namespace

Laurent2 Laurent2::divide_exact(const Laurent2& d) const {
    if (d.is_zero()) throw error("Laurent2: division by zero polynomial");
    Laurent2 quot;
    if (!try_divide(*this, d, quot)) throw error("Laurent2: non-exact division");
    return quot;
}

int Laurent2::q_min() const {
    if (terms.empty()) throw error("Laurent2: q_min of zero polynomial");
    int m = terms.begin()->first.second;
    for (auto& [k, c] : terms) m = std::min(m, k.second);
    return m;
}

int Laurent2::q_max() const {
    if (terms.empty()) throw error("Laurent2: q_max of zero polynomial");
    int m = terms.begin()->first.second;
    for (auto& [k, c] : terms) m = std::max(m, k.second);
    return m;
}

std::string Laurent2::str() const {
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
        int ea = it->first.first, eq = it->first.second;
        bool unit = c.is_one() && (ea != 0 || eq != 0);
        if (!unit) os << c.str();
        if (ea != 0) {
            if (!unit) os << "*";
            os << "a";
            if (ea != 1) os << "^" << ea;
            unit = false;
        }
        if (eq != 0) {
            if (!unit) os << "*";
            os << "q";
            if (eq != 1) os << "^" << eq;
        }
    }
    return os.str();
}

Laurent2 a_minus_ainv() {
    Laurent2 p;
    p.add_term(1, 0, Rational(1));
    p.add_term(-1, 0, Rational(-1));
    return p;
}

Laurent2 q_minus_qinv() {
    Laurent2 p;
    p.add_term(0, 1, Rational(1));
    p.add_term(0, -1, Rational(-1));
    return p;
}

Laurent2Frac Laurent2Frac::circle() { return Laurent2Frac(a_minus_ainv(), 1); }

void Laurent2Frac::normalize() {
    if (num.is_zero()) {
        denom_power = 0;
        return;
    }
    const Laurent2 d = q_minus_qinv();
    while (denom_power > 0) {
        Laurent2 quot;
        if (!try_divide(num, d, quot)) break;
        num = quot;
        --denom_power;
    }
}

Laurent2Frac Laurent2Frac::operator+(const Laurent2Frac& o) const {
    int dp = std::max(denom_power, o.denom_power);
    const Laurent2 d = q_minus_qinv();
    Laurent2 n1 = num, n2 = o.num;
    for (int i = denom_power; i < dp; ++i) n1 = n1 * d;
    for (int i = o.denom_power; i < dp; ++i) n2 = n2 * d;
    return Laurent2Frac(n1 + n2, dp);
}

Laurent2Frac Laurent2Frac::operator-(const Laurent2Frac& o) const { return *this + (-o); }

Laurent2Frac Laurent2Frac::operator*(const Laurent2Frac& o) const {
    return Laurent2Frac(num * o.num, denom_power + o.denom_power);
}

Laurent2Frac Laurent2Frac::divide_exact(const Laurent2Frac& o) const {
    if (o.is_zero()) throw error("Laurent2Frac: division by zero");
    if (is_zero()) return Laurent2Frac();
    // (n1/d^e1) / (n2/d^e2) = (n1/n2) * d^(e2-e1)
    Laurent2 n = num.divide_exact(o.num);
    int e = denom_power - o.denom_power;
    if (e <= 0) {
        const Laurent2 d = q_minus_qinv();
        for (int i = 0; i < -e; ++i) n = n * d;
        return Laurent2Frac(n, 0);
    }
    return Laurent2Frac(n, e);
}

Laurent2 Laurent2Frac::series_up_to(int q_hi) const {
    // 1/(q - q^-1) = -q (1 + q^2 + q^4 + ...)
    Laurent2 r = num;
    for (int i = 0; i < denom_power; ++i) {
        Laurent2 next;
        for (auto& [k, c] : r.terms) {
            for (int e = k.second + 1; e <= q_hi; e += 2) next.add_term(k.first, e, -c);
        }
        r = next;
    }
    Laurent2 cut;
    for (auto& [k, c] : r.terms)
        if (k.second <= q_hi) cut.terms[k] = c;
    return cut;
}

std::string Laurent2Frac::str() const {
    if (denom_power == 0) return num.str();
    std::ostringstream os;
    os << "(" << num.str() << ") / (q - q^-1)^" << denom_power;
    return os.str();
}

GaussQ eval_at_a1_qi(const Laurent2& p) {
    GaussQ z{Rational(0), Rational(0)};
    for (auto& [k, c] : p.terms) {
        // i^eq cycles with period 4
        int e = ((k.second % 4) + 4) % 4;
        switch (e) {
            case 0: z.re += c; break;
            case 1: z.im += c; break;
            case 2: z.re -= c; break;
            case 3: z.im -= c; break;
        }
    }
    return z;
}

} // namespace krh

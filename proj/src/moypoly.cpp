#include "krh/moypoly.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace krh {

namespace {

Laurent2Frac ratio_circle() { return Laurent2Frac(a_minus_ainv(), 1); }

// (a q^-1 - a^-1 q)/(q - q^-1), the MOY I factor
Laurent2Frac ratio_theta() {
    Laurent2 n;
    n.add_term(1, -1, Rational(1));
    n.add_term(-1, 1, Rational(-1));
    return Laurent2Frac(n, 1);
}

Laurent2Frac ratio_bigon() {
    Laurent2 n;
    n.add_term(0, 1, Rational(1));
    n.add_term(0, -1, Rational(1));
    return Laurent2Frac::from_poly(n);
}

class GraphPolyEngine {
public:
    Laurent2Frac eval(const ColumnWord& g) {
        if (g.strands == 0) return Laurent2Frac::one();
        auto key = g.canonical_key();
        {
            std::lock_guard<std::mutex> lk(mu_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        Laurent2Frac r = compute(g);
        std::lock_guard<std::mutex> lk(mu_);
        memo_.emplace(std::move(key), r);
        return r;
    }

private:
    Laurent2Frac compute(const ColumnWord& g) {
        MoyMove m = find_moy_move(g);
        switch (m.type) {
            case MoyMove::O:
                return ratio_circle() * eval(delete_strand(g, m.strand, {}));
            case MoyMove::I:
                return ratio_theta() * eval(delete_strand(g, m.strand, m.positions));
            case MoyMove::II: {
                int c = g.columns[m.positions[0]];
                return ratio_bigon() * eval(replace_positions(g, m.positions, {c}));
            }
            case MoyMove::III: {
                int c1 = g.columns[m.positions[0]];  // c+1
                int c = c1 - 1;
                Laurent2Frac a = eval(replace_positions(g, m.positions, {c, c1, c}));
                Laurent2Frac b = eval(replace_positions(g, m.positions, {c1}));
                Laurent2Frac d = eval(replace_positions(g, m.positions, {c}));
                return a + b - d;
            }
            default:
                throw error("graph_homfly: no MOY move found (not a braid graph closure?)");
        }
    }

    std::mutex mu_;
    std::map<std::vector<int>, Laurent2Frac> memo_;
};

GraphPolyEngine& engine() {
    static GraphPolyEngine e;
    return e;
}

} // namespace

GraphPoly graph_homfly(const ColumnWord& g) {
    GraphPoly r;
    r.strands = g.strands;
    r.value = engine().eval(g);
    if (r.value.denom_power > g.strands)
        throw error("graph_homfly: denominator exceeds strand count");
    return r;
}

LinkPoly link_homfly_moy(const BraidWord& w) {
    auto states = moy_states(w);
    Laurent2Frac sum;
    for (auto& st : states) {
        Rational sgn((st.weight % 2 == 0) ? 1 : -1);
        Laurent2Frac term = graph_homfly(st.graph).value;
        sum = sum + term.scale(0, st.weight, sgn);
    }
    int wr = w.writhe();
    LinkPoly out;
    out.unreduced = sum.scale(wr, -wr, Rational(1));
    out.reduced = out.unreduced.divide_exact(ratio_circle());
    return out;
}

LinkPoly link_homfly_moy(const TangleDiagram& d) {
    if (d.braid_strands == 0) throw error("link_homfly_moy: need a braid closure");
    BraidWord w;
    w.strands = d.braid_strands;
    size_t ci = 0;
    for (auto& v : d.vertices) {
        if (!v.is_crossing()) continue;
        if (v.kind != Vertex::crossing_pos && v.kind != Vertex::crossing_neg)
            throw error("link_homfly_moy: ordinary crossings only");
        w.letters.push_back({d.braid_columns[ci++],
                             v.kind == Vertex::crossing_pos ? BraidLetter::positive
                                                            : BraidLetter::negative});
    }
    return link_homfly_moy(w);
}

// ---------------------------------------------------------------------------
// Skein oracle

namespace {

struct SkeinEngine {
    std::mutex mu;
    std::map<std::string, Laurent2Frac> memo;
    Laurent2Frac eval(BraidWord w, int depth);
};

// remove cyclically adjacent sigma sigma^-1 pairs; true if anything changed
bool cancel_inverse_pair(BraidWord& w) {
    const int n = static_cast<int>(w.letters.size());
    for (int t = 0; t < n && n >= 2; ++t) {
        int u = (t + 1) % n;
        auto &a = w.letters[t], &b = w.letters[u];
        if (a.column == b.column &&
            ((a.kind == BraidLetter::positive && b.kind == BraidLetter::negative) ||
             (a.kind == BraidLetter::negative && b.kind == BraidLetter::positive))) {
            BraidWord r;
            r.strands = w.strands;
            for (int s = 0; s < n; ++s)
                if (s != t && s != u) r.letters.push_back(w.letters[s]);
            w = r;
            return true;
        }
    }
    return false;
}

// Markov destabilization at either boundary column when used exactly once
bool destabilize(BraidWord& w) {
    if (w.strands < 2) return false;
    for (int side = 0; side < 2; ++side) {
        int col = side == 0 ? w.strands - 1 : 1;
        int count = 0, pos = -1;
        for (int t = 0; t < static_cast<int>(w.letters.size()); ++t)
            if (w.letters[t].column == col) {
                ++count;
                pos = t;
            }
        if (count != 1) continue;
        BraidWord r;
        r.strands = w.strands - 1;
        for (int t = 0; t < static_cast<int>(w.letters.size()); ++t) {
            if (t == pos) continue;
            BraidLetter l = w.letters[t];
            if (side == 1) --l.column;
            r.letters.push_back(l);
        }
        w = r;
        return true;
    }
    return false;
}

// split at an unused column: closure is a disjoint union
bool split_unused(const BraidWord& w, BraidWord& left, BraidWord& right) {
    for (int c = 1; c < w.strands; ++c) {
        bool used = false;
        for (auto& l : w.letters)
            if (l.column == c) used = true;
        if (used) continue;
        left.strands = c;
        right.strands = w.strands - c;
        left.letters.clear();
        right.letters.clear();
        for (auto l : w.letters) {
            if (l.column < c) {
                left.letters.push_back(l);
            } else {
                l.column -= c;
                right.letters.push_back(l);
            }
        }
        return true;
    }
    return false;
}

// first-encounter times of the two strand passes through each letter;
// pass 0 enters at the left position (column), pass 1 at the right
std::vector<std::array<long, 2>> trace_passes(const BraidWord& w) {
    const int n = static_cast<int>(w.letters.size());
    std::vector<std::array<long, 2>> times(n, {-1, -1});
    std::vector<bool> bottom_seen(w.strands, false);
    long clock = 0;
    for (int s0 = 0; s0 < w.strands; ++s0) {
        if (bottom_seen[s0]) continue;
        int pos = s0;
        do {
            bottom_seen[pos] = true;
            for (int t = 0; t < n; ++t) {
                int c = w.letters[t].column - 1;
                if (pos == c) {
                    times[t][0] = clock++;
                    pos = c + 1;
                } else if (pos == c + 1) {
                    times[t][1] = clock++;
                    pos = c;
                }
            }
        } while (!bottom_seen[pos]);
    }
    return times;
}

Laurent2Frac SkeinEngine::eval(BraidWord w, int depth) {
    if (depth > 512) throw error("link_homfly_skein: recursion depth exceeded");
    if (!w.ordinary()) throw error("link_homfly_skein: ordinary crossings only");

    for (bool changed = true; changed;) {
        changed = cancel_inverse_pair(w) || destabilize(w);
    }
    BraidWord left, right;
    if (split_unused(w, left, right))
        return eval(left, depth + 1) * eval(right, depth + 1) * ratio_circle();
    if (w.letters.empty()) {
        // split_unused has peeled off circles, so at most one strand remains
        return Laurent2Frac::one();
    }

    std::string key = w.format();
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }

    // descending test: the over strand should be the first-visited one
    auto times = trace_passes(w);
    int bad = -1;
    long bad_clock = 0;
    for (int t = 0; t < static_cast<int>(w.letters.size()); ++t) {
        int over = (w.letters[t].kind == BraidLetter::positive) ? 0 : 1;
        if (times[t][over] > times[t][1 - over]) {
            long first = std::min(times[t][0], times[t][1]);
            if (bad < 0 || first < bad_clock) {
                bad = t;
                bad_clock = first;
            }
        }
    }

    Laurent2Frac result;
    if (bad < 0) {
        // descending closure: an unlink
        int comps = w.link_components();
        result = Laurent2Frac::one();
        for (int i = 1; i < comps; ++i) result = result * ratio_circle();
    } else {
        BraidWord switched = w;
        BraidWord smoothed = w;
        smoothed.letters.erase(smoothed.letters.begin() + bad);
        const Laurent2Frac z = Laurent2Frac::from_poly(q_minus_qinv());
        if (w.letters[bad].kind == BraidLetter::positive) {
            // P(L+) = a^2 P(L-) - a (q - q^-1) P(L0)
            switched.letters[bad].kind = BraidLetter::negative;
            result = eval(switched, depth + 1).scale(2, 0, Rational(1)) -
                     (eval(smoothed, depth + 1) * z).scale(1, 0, Rational(1));
        } else {
            // P(L-) = a^-2 P(L+) + a^-1 (q - q^-1) P(L0)
            switched.letters[bad].kind = BraidLetter::positive;
            result = eval(switched, depth + 1).scale(-2, 0, Rational(1)) +
                     (eval(smoothed, depth + 1) * z).scale(-1, 0, Rational(1));
        }
    }

    std::lock_guard<std::mutex> lk(mu);
    memo.emplace(std::move(key), result);
    return result;
}

SkeinEngine& skein_engine() {
    static SkeinEngine e;
    return e;
}

} // namespace

Laurent2Frac link_homfly_skein(const BraidWord& w) { return skein_engine().eval(w, 0); }

std::pair<int, int> q_support_window(const Laurent2& p, int pad) {
    if (p.is_zero()) throw error("q_support_window: zero polynomial");
    if (pad < 0) throw error("q_support_window: negative pad");
    return {p.q_min() - 2 * pad, p.q_max() + 2 * pad};
}

long link_determinant(const Laurent2& reduced_p) {
    GaussQ z = eval_at_a1_qi(reduced_p);
    Rational m = z.re.is_zero() ? z.im : z.re;
    if (!(z.re.is_zero() || z.im.is_zero()) || m.den() != 1)
        throw error("link_determinant: unexpected evaluation");
    Int n = m.num();
    Int a = n < 0 ? Int(-n) : n;
    return a.get_si();
}

} // namespace krh

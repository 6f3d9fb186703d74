#include "krh/invariants.hpp"

#include "json.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace krh {

GradedShift reduced_shift(int w, int b) { return {-w + b - 1, w + b - 1, w - b + 1}; }
GradedShift middle_shift(int w, int b) { return {-w + b, w + b - 1, w - b + 1}; }
GradedShift unreduced_shift(int w, int b) { return {-w + b, w + b, w - b}; }

DegreeWindow default_window(const Laurent2& p, int pad) {
    auto [lo, hi] = q_support_window(p, pad);
    return {lo, hi};
}

namespace {

TripleGradedDims shift_dims(const TripleGradedDims& dims, const GradedShift& s) {
    TripleGradedDims out;
    for (auto& [t, d] : dims) out[{t.i + s.i, t.j + s.j, t.k + s.k}] = d;
    return out;
}

bool truncation_flag(const TripleGradedDims& dims, const DegreeWindow& w) {
    for (auto& [t, d] : dims)
        if (t.i >= w.q_max - 2 || t.i <= w.q_min + 2) return true;
    return false;
}

int pick_marked_edge(const Options& opt) { return opt.marked_edge > 0 ? opt.marked_edge : 1; }

HomologyResult run_double(const BraidWord& w, Variant variant, const Options& opt,
                          const GradedShift& shift) {
    TangleDiagram d = close_braid(w);
    LinkPoly poly = link_homfly_moy(w);
    DegreeWindow window = default_window(poly.reduced.num, opt.pad);

    AssembleOptions aopt;
    aopt.variant = variant;
    if (variant == Variant::reduced_edge) aopt.marked_edge = pick_marked_edge(opt);
    auto ac = assemble(d, ParamPoly{}, aopt);

    int raw_hi = window.q_max - shift.i;
    DoubleHomologyEngine engine(ac.complex, raw_hi + 2, opt.exec);
    HomologyResult res;
    res.writhe = w.writhe();
    res.strands = w.strands;
    res.window = window;
    res.dims = shift_dims(engine.dims(raw_hi), shift);
    res.window_truncated = truncation_flag(res.dims, window);
    return res;
}

} // namespace

HomologyResult homfly_homology(const BraidWord& w, const Options& opt) {
    return run_double(w, Variant::reduced_edge, opt, reduced_shift(w.writhe(), w.strands));
}

HomologyResult middle_homology(const BraidWord& w, const Options& opt) {
    return run_double(w, Variant::middle, opt, middle_shift(w.writhe(), w.strands));
}

HomologyResult unreduced_homology(const BraidWord& w, const Options& opt) {
    return run_double(w, Variant::unreduced, opt, unreduced_shift(w.writhe(), w.strands));
}

SlnResult sln_homology(const BraidWord& w, int N, bool reduced, const Options& opt) {
    if (N < 1) throw error("sln_homology: N >= 1 required");
    TangleDiagram d = close_braid(w);
    LinkPoly poly = link_homfly_moy(w);
    int wr = w.writhe();

    // target window for the shifted polynomial grading
    Laurent1 spec;
    if (reduced && poly.reduced.is_poly()) {
        spec = poly.reduced.num.specialize_a(N);
    } else {
        // series for the unreduced/link case: support bounded below
        spec = poly.unreduced.series_up_to(poly.unreduced.num.q_max() + 2 * N + 2)
                   .specialize_a(N);
    }
    int spec_lo = spec.terms.empty() ? 0 : spec.terms.begin()->first;
    int spec_hi = spec.terms.empty() ? 0 : spec.terms.rbegin()->first;
    int target_hi = spec_hi + 2 * opt.pad * std::max(1, N);
    int target_lo = spec_lo - 2 * opt.pad;

    AssembleOptions aopt;
    aopt.variant = reduced ? Variant::reduced_edge : Variant::unreduced;
    if (reduced) aopt.marked_edge = pick_marked_edge(opt);
    auto ac = assemble(d, param_x_pow(N + 1), aopt);

    int j_lo = 0;
    for (auto& g : ac.complex.gens) j_lo = std::min(j_lo, g.j);
    int grN_raw_hi = target_hi - (N - 1) * wr;
    int q_hi = grN_raw_hi + (N - 1) * (-j_lo) / 2 + (N + 1);
    TotalHomologyEngine engine(ac.complex, N, q_hi, opt.exec);

    SlnResult res;
    res.N = N;
    for (auto& [key, dim] : engine.dims()) {
        int I = key.first + (N - 1) * wr;
        if (I > target_hi) continue;
        res.dims[{I, key.second / 2}] += dim;
    }
    for (auto& [key, dim] : res.dims)
        if (key.first >= target_hi - 2 || key.first <= target_lo + 2) res.window_truncated = true;
    return res;
}

Laurent2 chi_of_dims(const TripleGradedDims& dims) {
    Laurent2 chi;
    for (auto& [t, d] : dims) {
        int e = (t.k - t.j) / 2;
        Rational sgn((e % 2 == 0) ? d : -d);
        chi.add_term(t.j, t.i, sgn);
    }
    return chi;
}

Laurent1 chi_of_sln(const BigradedDims& dims) {
    Laurent1 chi;
    for (auto& [key, d] : dims) {
        Rational sgn((key.second % 2 == 0) ? d : -d);
        chi.add_term(key.first, sgn);
    }
    return chi;
}

bool euler_check(const TripleGradedDims& dims, const Laurent2& P) {
    return chi_of_dims(dims) == P;
}

bool euler_check_series(const TripleGradedDims& dims, const Laurent2Frac& P, int q_lo, int q_hi) {
    Laurent2 chi = chi_of_dims(dims);
    Laurent2 series = P.series_up_to(q_hi);
    auto clamp = [&](const Laurent2& p) {
        Laurent2 r;
        for (auto& [key, c] : p.terms)
            if (key.second >= q_lo && key.second <= q_hi) r.terms[key] = c;
        return r;
    };
    return clamp(chi) == clamp(series);
}

ThinnessVerdict delta_thinness(const TripleGradedDims& dims, int sigma) {
    ThinnessVerdict v;
    v.sigma = sigma;
    for (auto& [t, d] : dims) v.delta_support[t.i + t.j + t.k] += d;
    v.thin = v.delta_support.size() == 1 && v.delta_support.count(sigma) == 1;
    return v;
}

// ---------------------------------------------------------------------------
// signature

namespace {

int sym_signature(std::vector<std::vector<Rational>> s) {
    int n = static_cast<int>(s.size());
    std::vector<bool> done(n, false);
    int sig = 0;
    for (;;) {
        int piv = -1;
        for (int i = 0; i < n && piv < 0; ++i)
            if (!done[i] && !s[i][i].is_zero()) piv = i;
        if (piv < 0) {
            int a = -1, b = -1;
            for (int i = 0; i < n && a < 0; ++i) {
                if (done[i]) continue;
                for (int j = i + 1; j < n && a < 0; ++j)
                    if (!done[j] && !s[i][j].is_zero()) {
                        a = i;
                        b = j;
                    }
            }
            if (a < 0) return sig;  // remaining block is zero
            // congruence: row/col a += row/col b, making s[a][a] = 2 s[a][b]
            for (int k = 0; k < n; ++k)
                if (!done[k]) s[a][k] += s[b][k];
            for (int k = 0; k < n; ++k)
                if (!done[k]) s[k][a] += s[k][b];
            continue;
        }
        sig += s[piv][piv].sign();
        for (int k = 0; k < n; ++k) {
            if (done[k] || k == piv) continue;
            Rational f = s[k][piv] / s[piv][piv];
            if (f.is_zero()) continue;
            for (int l = 0; l < n; ++l)
                if (!done[l] && l != piv) s[k][l] -= f * s[piv][l];
            for (int l = 0; l < n; ++l)
                if (!done[l] && l != piv) s[l][piv] = Rational(0);
        }
        done[piv] = true;
    }
}

} // namespace

int signature(const BraidWord& w) {
    if (w.link_components() != 1) throw error("signature: knots only");
    if (!w.ordinary()) throw error("signature: ordinary crossings only");
    // Seifert surface from disks and bands; loops between consecutive bands
    struct Loop {
        int col, p1, e1, p2, e2;
    };
    std::map<int, std::vector<std::pair<int, int>>> cols;  // column -> (position, sign)
    for (int t = 0; t < static_cast<int>(w.letters.size()); ++t)
        cols[w.letters[t].column].push_back(
            {t, w.letters[t].kind == BraidLetter::positive ? 1 : -1});
    std::vector<Loop> loops;
    for (auto& [c, lst] : cols)
        for (size_t r = 0; r + 1 < lst.size(); ++r)
            loops.push_back({c, lst[r].first, lst[r].second, lst[r + 1].first, lst[r + 1].second});
    int n = static_cast<int>(loops.size());
    std::vector<std::vector<Rational>> v(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) v[i][i] = Rational(-(loops[i].e1 + loops[i].e2), 2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const Loop &a = loops[i], &b = loops[j];
            if (a.col == b.col && a.p2 == b.p1) {
                // consecutive loops sharing the band at a.p2
                if (a.e2 > 0)
                    v[i][j] += Rational(1);
                else
                    v[j][i] += Rational(-1);
            }
            if (b.col == a.col + 1) {
                bool in1 = a.p1 < b.p1 && b.p1 < a.p2;
                bool in2 = a.p1 < b.p2 && b.p2 < a.p2;
                if (in1 != in2) {
                    if (in1)
                        v[j][i] += Rational(1);  // p1 < q1 < p2 < q2
                    else
                        v[j][i] += Rational(-1);  // q1 < p1 < q2 < p2
                }
            }
        }
    std::vector<std::vector<Rational>> s(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s[i][j] = v[i][j] + v[j][i];
    // paper convention: positive knots have positive signature
    return -sym_signature(std::move(s));
}

// ---------------------------------------------------------------------------
// stabilization

TripleGradedDims regrade_to_sln(const TripleGradedDims& dims, int N) {
    TripleGradedDims out;
    for (auto& [t, d] : dims) out[{t.i + N * t.j, (t.k - t.j) / 2, 0}] += d;
    return out;
}

BigradedDims regraded_bigraded(const TripleGradedDims& dims, int N) {
    BigradedDims out;
    for (auto& [t, d] : dims) out[{t.i + N * t.j, (t.k - t.j) / 2}] += d;
    return out;
}

int stabilization(const BraidWord& w, int n_max, const Options& opt) {
    HomologyResult h = homfly_homology(w, opt);
    int n0 = 0;
    for (int N = 1; N <= n_max; ++N) {
        SlnResult s = sln_homology(w, N, true, opt);
        bool match = s.dims == regraded_bigraded(h.dims, N);
        if (match) {
            if (n0 == 0) n0 = N;
        } else {
            n0 = 0;
        }
    }
    return n0;
}

// ---------------------------------------------------------------------------
// totally reduced homology and the skein sequence

TotallyReducedResult totally_reduced(const BraidWord& w, int edge_i, int edge_j, int N,
                                     const Options& opt) {
    TangleDiagram d = close_braid(w);
    auto comp = d.link_component_of_edge();
    if (d.link_components() != 2) throw error("totally_reduced: need a 2-component link");
    if (comp[edge_i] == comp[edge_j])
        throw error("totally_reduced: edges must lie on distinct components");
    int wr = w.writhe();

    LinkPoly poly = link_homfly_moy(w);
    Laurent1 spec = poly.reduced.series_up_to(poly.reduced.num.q_max() + 4 * N).specialize_a(N);
    int spec_hi = spec.terms.empty() ? 0 : spec.terms.rbegin()->first;
    int target_hi = spec_hi + 2 * opt.pad * std::max(1, N) + 4;

    AssembleOptions aopt;
    aopt.variant = Variant::reduced_edge;
    aopt.marked_edge = edge_i;
    auto ac = assemble(d, param_x_pow(N + 1), aopt);
    int j_lo = 0;
    for (auto& g : ac.complex.gens) j_lo = std::min(j_lo, g.j);
    int grN_raw_hi = target_hi - (N - 1) * wr;
    int q_hi = grN_raw_hi + (N - 1) * (-j_lo) / 2 + (N + 1) + 2;
    TotalHomologyEngine engine(ac.complex, N, q_hi, opt.exec);

    PolyMat xj = edge_multiplication(ac, edge_j);
    auto endo = engine.induced_endo(xj, 2, 0);
    auto hdims = engine.dims();

    const int m = 2 * N - 4;
    auto fold = [m](int delta) { return m == 0 ? delta : ((delta % m) + m) % m; };

    TotallyReducedResult res;
    for (auto& [key, dim] : hdims) {
        int I = key.first + (N - 1) * wr;
        int J = key.second / 2;
        int delta = fold(I + 2 * J);
        auto mit = endo.find(key);
        long rank_out = 0;
        if (mit != endo.end()) rank_out = rank_of(mit->second);
        long kerdim = dim - rank_out;
        std::pair<int, int> prev{key.first - 2, key.second};
        long rank_in = 0;
        auto pit = endo.find(prev);
        if (pit != endo.end()) rank_in = rank_of(pit->second);
        long cokdim = dim - rank_in;
        if (kerdim > 0) res.dims[{I + 1, delta}] += kerdim;
        if (cokdim > 0) res.dims[{I - 1, delta}] += cokdim;
    }
    for (auto& [key, dim] : res.dims) res.total += dim;
    return res;
}

namespace {

// exactness bookkeeping: dims around each orbit must admit non-negative ranks
bool les_closes(const std::map<std::pair<int, int>, long>& a,
                const std::map<std::pair<int, int>, long>& b,
                const std::map<std::pair<int, int>, long>& c, int N, int fold_m,
                std::string& detail) {
    // sequence: A(q, d) -> B(q+N, d+1) -> C(q+2N, d+2) -> A(q, d+2) -> ...
    auto get = [](const std::map<std::pair<int, int>, long>& mp, int q, int dd) {
        auto it = mp.find({q, dd});
        return it == mp.end() ? 0L : it->second;
    };
    std::set<std::pair<int, int>> orbits;  // (q of A-slot, delta parity anchor)
    int dmin = 0, dmax = 0;
    bool any = false;
    auto note = [&](int q, int dd, int role) {
        // normalize to the A-slot coordinates
        int qa = q, da = dd;
        if (role == 1) {
            qa = q - N;
            da = dd - 1;
        }
        if (role == 2) {
            qa = q - 2 * N;
            da = dd - 2;
        }
        orbits.insert({qa, fold_m == 0 ? ((da % 2) + 2) % 2 : 0});
        if (!any) {
            dmin = dmax = da;
            any = true;
        }
        dmin = std::min(dmin, da);
        dmax = std::max(dmax, da);
    };
    for (auto& [k, v] : a) note(k.first, k.second, 0);
    for (auto& [k, v] : b) note(k.first, k.second, 1);
    for (auto& [k, v] : c) note(k.first, k.second, 2);
    if (!any) return true;

    if (fold_m != 0) {
        // cyclic orbits: brute-force the starting rank
        for (auto& [qa, unused] : orbits) {
            for (int d0 = 0; d0 < fold_m; ++d0) {
                std::vector<long> dims;
                int steps = 3 * fold_m / 2;
                for (int t = 0; t < steps; ++t) {
                    int dd = (d0 + 2 * (t / 3)) % fold_m;
                    int role = t % 3;
                    if (role == 0) dims.push_back(get(a, qa, dd));
                    if (role == 1) dims.push_back(get(b, qa + N, (dd + 1) % fold_m));
                    if (role == 2) dims.push_back(get(c, qa + 2 * N, (dd + 2) % fold_m));
                }
                long total = 0;
                for (long dnn : dims) total += dnn;
                if (total == 0) continue;
                bool ok = false;
                for (long r0 = 0; r0 <= *std::max_element(dims.begin(), dims.end()); ++r0) {
                    long r = r0;
                    bool feas = true;
                    for (long dnn : dims) {
                        r = dnn - r;
                        if (r < 0) {
                            feas = false;
                            break;
                        }
                    }
                    if (feas && r == r0) {
                        ok = true;
                        break;
                    }
                }
                if (!ok) {
                    detail = "cyclic orbit fails";
                    return false;
                }
            }
        }
        return true;
    }

    for (auto& [qa, par] : orbits) {
        long r = 0;
        for (int dd = dmin - 2; dd <= dmax + 2; ++dd) {
            if (((dd % 2) + 2) % 2 != par) continue;
            std::vector<std::pair<long, const char*>> slots;
            slots.push_back({get(a, qa, dd), "A"});
            slots.push_back({get(b, qa + N, dd + 1), "B"});
            slots.push_back({get(c, qa + 2 * N, dd + 2), "C"});
            for (auto& [dim, label] : slots) {
                r = dim - r;
                if (r < 0) {
                    std::ostringstream os;
                    os << "orbit q=" << qa << " fails at " << label << " delta=" << dd;
                    detail = os.str();
                    return false;
                }
            }
        }
        if (r != 0) {
            std::ostringstream os;
            os << "orbit q=" << qa << " does not terminate";
            detail = os.str();
            return false;
        }
    }
    return true;
}

} // namespace

SkeinCheckResult skein_triple_check(const BraidWord& plus, const BraidWord& minus,
                                    const BraidWord& zero, int N, const Options& opt) {
    // validate the triple shape
    if (plus.strands != minus.strands || plus.strands != zero.strands)
        throw error("skein_triple_check: strand counts differ");
    if (plus.letters.size() != minus.letters.size() ||
        zero.letters.size() + 1 != plus.letters.size())
        throw error("skein_triple_check: inconsistent word lengths");
    int site = -1;
    for (size_t t = 0; t < plus.letters.size(); ++t) {
        if (plus.letters[t] == minus.letters[t]) continue;
        if (site >= 0 || plus.letters[t].column != minus.letters[t].column ||
            plus.letters[t].kind != BraidLetter::positive ||
            minus.letters[t].kind != BraidLetter::negative)
            throw error("skein_triple_check: words do not form a skein triple");
        site = static_cast<int>(t);
    }
    if (site < 0) throw error("skein_triple_check: no crossing difference");
    BraidWord smoothed = plus;
    smoothed.letters.erase(smoothed.letters.begin() + site);
    if (!(smoothed == zero)) throw error("skein_triple_check: zero word mismatch");

    SlnResult hp = sln_homology(plus, N, true, opt);
    SlnResult hm = sln_homology(minus, N, true, opt);

    // edges of L0 at the smoothed site: lowest edges of its two components
    TangleDiagram d0 = close_braid(zero);
    if (d0.link_components() != 2)
        throw error("skein_triple_check: L0 must have two components");
    auto comp = d0.link_component_of_edge();
    int e1 = 0, e2 = 0;
    for (int e = 1; e <= d0.num_edges && (e1 == 0 || e2 == 0); ++e) {
        if (comp[e] == 0 && e1 == 0) e1 = e;
        if (comp[e] == 1 && e2 == 0) e2 = e;
    }
    TotallyReducedResult tr = totally_reduced(zero, e1, e2, N, opt);

    const int m = 2 * N - 4;
    auto fold = [m](int delta) { return m == 0 ? delta : ((delta % m) + m) % m; };
    std::map<std::pair<int, int>, long> A, B, C;
    for (auto& [k, v] : hm.dims) A[{k.first, fold(k.first + 2 * k.second)}] += v;
    for (auto& [k, v] : tr.dims) B[k] += v;
    for (auto& [k, v] : hp.dims) C[{k.first, fold(k.first + 2 * k.second)}] += v;

    SkeinCheckResult res;
    res.closes = les_closes(A, B, C, N, m, res.detail);
    return res;
}

// ---------------------------------------------------------------------------
// corpus and reports

const std::vector<std::pair<std::string, std::string>>& corpus_words() {
    static const std::vector<std::pair<std::string, std::string>> corpus{
        {"unknot", "b=1;"},
        {"trefoil", "b=2; w=1 1 1"},
        {"figure8", "b=3; w=1 -2 1 -2"},
        {"5_1", "b=2; w=1 1 1 1 1"},
        {"5_2", "b=3; w=1 1 1 2 -1 2"},
        {"hopf", "b=2; w=1 1"},
        {"unlink2", "b=2;"},
        {"trefoil#trefoil", "b=3; w=1 1 1 2 2 2"},
        {"trefoil#figure8", "b=4; w=1 1 1 2 -3 2 -3"},
    };
    return corpus;
}

InvariantReport full_report(const std::string& name, const BraidWord& w,
                            const ReportOptions& ropt) {
    InvariantReport r;
    r.link = name;
    r.braid = w.format();
    r.writhe = w.writhe();
    r.strands = w.strands;
    LinkPoly poly = link_homfly_moy(w);
    r.reduced_poly = poly.reduced;

    HomologyResult h = homfly_homology(w, ropt.base);
    r.homfly_dims = h.dims;
    r.window = h.window;
    r.window_truncated = h.window_truncated;
    if (poly.reduced.is_poly() && !h.window_truncated)
        r.euler_ok = euler_check(h.dims, poly.reduced.num);
    else
        r.euler_ok = euler_check_series(h.dims, poly.reduced, h.window.q_min + 4,
                                        h.window.q_max - 4);

    if (w.link_components() == 1) {
        r.sigma = signature(w);
        r.thin = delta_thinness(h.dims, *r.sigma).thin;
    }
    if (ropt.with_sl2) r.sl2_dims = sln_homology(w, 2, true, ropt.base).dims;
    if (ropt.with_stabilization)
        r.stabilization_n0 = stabilization(w, ropt.stabilization_n_max, ropt.base);
    return r;
}

std::string report_json(const InvariantReport& r) {
    nlohmann::ordered_json j;
    j["link"] = r.link;
    j["braid"] = r.braid;
    j["writhe"] = r.writhe;
    j["strands"] = r.strands;
    nlohmann::ordered_json poly;
    poly["denom_power"] = r.reduced_poly.denom_power;
    auto terms = nlohmann::ordered_json::array();
    for (auto& [k, c] : r.reduced_poly.num.terms)
        terms.push_back({k.first, k.second, c.str()});
    poly["terms"] = terms;
    j["poly"] = poly;
    auto dims = nlohmann::ordered_json::array();
    for (auto& [t, d] : r.homfly_dims) dims.push_back({t.i, t.j, t.k, d});
    j["homfly_dims"] = dims;
    if (r.sl2_dims) {
        auto s = nlohmann::ordered_json::array();
        for (auto& [k, d] : *r.sl2_dims) s.push_back({k.first, k.second, d});
        j["sl2_dims"] = s;
    }
    if (r.sigma) j["signature"] = *r.sigma;
    if (r.thin) j["thin"] = *r.thin;
    if (r.stabilization_n0) j["stabilization_N0"] = *r.stabilization_n0;
    j["euler_ok"] = r.euler_ok;
    j["window"] = {r.window.q_min, r.window.q_max};
    j["window_truncated"] = r.window_truncated;
    return j.dump(2);
}

InvariantReport report_from_json(const std::string& text) {
    auto j = nlohmann::ordered_json::parse(text);
    InvariantReport r;
    r.link = j.at("link").get<std::string>();
    r.braid = j.at("braid").get<std::string>();
    r.writhe = j.at("writhe").get<int>();
    r.strands = j.at("strands").get<int>();
    r.reduced_poly.denom_power = j.at("poly").at("denom_power").get<int>();
    for (auto& t : j.at("poly").at("terms")) {
        mpq_class q(t[2].get<std::string>());
        r.reduced_poly.num.add_term(t[0].get<int>(), t[1].get<int>(), Rational(q));
    }
    for (auto& t : j.at("homfly_dims"))
        r.homfly_dims[{t[0].get<int>(), t[1].get<int>(), t[2].get<int>()}] = t[3].get<long>();
    if (j.contains("sl2_dims")) {
        BigradedDims s;
        for (auto& t : j.at("sl2_dims"))
            s[{t[0].get<int>(), t[1].get<int>()}] = t[2].get<long>();
        r.sl2_dims = s;
    }
    if (j.contains("signature")) r.sigma = j.at("signature").get<int>();
    if (j.contains("thin")) r.thin = j.at("thin").get<bool>();
    if (j.contains("stabilization_N0")) r.stabilization_n0 = j.at("stabilization_N0").get<int>();
    r.euler_ok = j.at("euler_ok").get<bool>();
    r.window = {j.at("window")[0].get<int>(), j.at("window")[1].get<int>()};
    r.window_truncated = j.at("window_truncated").get<bool>();
    return r;
}

bool reports_equal(const InvariantReport& a, const InvariantReport& b) {
    return report_json(a) == report_json(b);
}

std::string render_dots(const TripleGradedDims& dims, int sigma_hint) {
    if (dims.empty()) return "(empty)\n";
    int i_lo = dims.begin()->first.i, i_hi = i_lo, j_lo = dims.begin()->first.j, j_hi = j_lo;
    std::set<int> deltas;
    for (auto& [t, d] : dims) {
        i_lo = std::min(i_lo, t.i);
        i_hi = std::max(i_hi, t.i);
        j_lo = std::min(j_lo, t.j);
        j_hi = std::max(j_hi, t.j);
        deltas.insert(t.i + t.j + t.k);
    }
    std::vector<std::string> glyphs{"●", "○", "◆", "◇"};
    std::map<int, std::string> glyph_of;
    int gi = 0;
    if (deltas.count(sigma_hint)) glyph_of[sigma_hint] = glyphs[gi++];
    for (int d : deltas)
        if (!glyph_of.count(d)) glyph_of[d] = glyphs[std::min<int>(gi++, glyphs.size() - 1)];
    std::ostringstream os;
    for (int j = j_hi; j >= j_lo; j -= 2) {
        os << (j >= 0 ? " " : "") << j << "\t";
        for (int i = i_lo; i <= i_hi; i += 2) {
            long total = 0;
            std::set<int> cell_deltas;
            for (auto& [t, d] : dims)
                if (t.i == i && t.j == j) {
                    total += d;
                    cell_deltas.insert(t.i + t.j + t.k);
                }
            if (total == 0)
                os << " .";
            else if (total == 1)
                os << " " << glyph_of[*cell_deltas.begin()];
            else
                os << " " << total;
        }
        os << "\n";
    }
    os << "j/i\t";
    for (int i = i_lo; i <= i_hi; i += 2) os << (i < 0 ? "" : " ") << i;
    os << "\n";
    for (auto& [d, g] : glyph_of) os << g << " : delta = " << d << "\n";
    return os.str();
}

} // namespace krh

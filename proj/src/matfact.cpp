#include "krh/matfact.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace krh {

ParamPoly param_x_pow(int n) {
    ParamPoly p(n + 1, Rational(0));
    p[n] = Rational(1);
    return p;
}

ParamPoly param_derivative(const ParamPoly& p) {
    ParamPoly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long>(i)));
    return d;
}

MultiPoly param_apply(const ParamPoly& p, const MultiPoly& arg) {
    MultiPoly r;
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * arg + MultiPoly(*it);
    return r;
}

bool param_is_monomial(const ParamPoly& p, int* degree) {
    int d = -1;
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i].is_zero()) continue;
        if (d >= 0) return false;
        d = static_cast<int>(i);
    }
    if (d < 0) return false;
    if (degree) *degree = d;
    return true;
}

// ---------------------------------------------------------------------------
// PolyMat

void PolyMat::set(int r, int c, MultiPoly p) {
    if (p.is_zero())
        e_.erase({r, c});
    else
        e_[{r, c}] = std::move(p);
}

void PolyMat::add(int r, int c, const MultiPoly& p) {
    if (p.is_zero()) return;
    auto key = std::make_pair(r, c);
    auto it = e_.find(key);
    if (it == e_.end()) {
        e_[key] = p;
    } else {
        it->second += p;
        if (it->second.is_zero()) e_.erase(it);
    }
}

MultiPoly PolyMat::get(int r, int c) const {
    auto it = e_.find({r, c});
    return it == e_.end() ? MultiPoly() : it->second;
}

PolyMat PolyMat::operator*(const PolyMat& o) const {
    if (cols_ != o.rows_) throw error("PolyMat: dimension mismatch");
    PolyMat r(rows_, o.cols_);
    for (auto& [rc, p] : e_)
        for (auto& [rc2, q] : o.e_)
            if (rc.second == rc2.first) r.add(rc.first, rc2.second, p * q);
    return r;
}

PolyMat PolyMat::operator+(const PolyMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw error("PolyMat: dimension mismatch");
    PolyMat r = *this;
    for (auto& [rc, p] : o.e_) r.add(rc.first, rc.second, p);
    return r;
}

PolyMat PolyMat::scaled(const Rational& c) const {
    PolyMat r(rows_, cols_);
    if (c.is_zero()) return r;
    for (auto& [rc, p] : e_) r.e_[rc] = p.scaled(c);
    return r;
}

PolyMat PolyMat::transform(const std::function<MultiPoly(const MultiPoly&)>& f) const {
    PolyMat r(rows_, cols_);
    for (auto& [rc, p] : e_) {
        MultiPoly q = f(p);
        if (!q.is_zero()) r.e_[rc] = std::move(q);
    }
    return r;
}

PolyMat PolyMat::scalar(int n, const MultiPoly& p) {
    PolyMat r(n, n);
    if (!p.is_zero())
        for (int i = 0; i < n; ++i) r.e_[{i, i}] = p;
    return r;
}

// ---------------------------------------------------------------------------
// verify_mf

namespace {

std::optional<std::pair<int, int>> first_entry(const PolyMat& m) {
    if (m.entries().empty()) return std::nullopt;
    return m.entries().begin()->first;
}

} // namespace

MFReport verify_mf(const MFComplex& c) {
    MFReport rep;
    const int n = c.rank();
    auto record = [&](bool ok, const PolyMat& witness, const char* name) {
        if (!ok && rep.failed_identity.empty()) {
            rep.failed_identity = name;
            rep.first_failure = first_entry(witness);
        }
        return ok;
    };

    PolyMat pp = c.d_plus * c.d_plus;
    rep.dplus_sq = record(pp.is_zero(), pp, "d_plus^2");
    PolyMat mm = c.d_minus * c.d_minus;
    rep.dminus_sq = record(mm.is_zero(), mm, "d_minus^2");
    PolyMat anti = c.d_plus * c.d_minus + c.d_minus * c.d_plus;
    PolyMat target = PolyMat::scalar(n, c.potential);
    PolyMat diff = anti + target.scaled(Rational(-1));
    rep.potential_id = record(diff.is_zero(), diff, "d+d- + d-d+ = w");
    PolyMat vv = c.d_vert * c.d_vert;
    rep.dvert_sq = record(vv.is_zero(), vv, "d_vert^2");

    Rational sgn(c.dv_sign_adjusted ? 1 : -1);
    PolyMat vp = c.d_vert * c.d_plus + (c.d_plus * c.d_vert).scaled(sgn);
    rep.dvert_plus = record(vp.is_zero(), vp, "d_vert vs d_plus");
    PolyMat vm = c.d_vert * c.d_minus + (c.d_minus * c.d_vert).scaled(sgn);
    rep.dvert_minus = record(vm.is_zero(), vm, "d_vert vs d_minus");
    return rep;
}

// ---------------------------------------------------------------------------
// local factors

MFComplex local_factor(LocalKind kind, int ei, int ej, int ek, int el, const ParamPoly& p) {
    std::set<int> labels{ei, ej, ek, el};
    if (labels.size() != 4) throw error("local_factor: edges must be distinct");

    MultiPoly xi = MultiPoly::var(ei), xj = MultiPoly::var(ej), xk = MultiPoly::var(ek);
    // local relator X_k + X_l = X_i + X_j eliminates X_l
    MultiPoly xl = xi + xj - xk;
    MultiPoly w = param_apply(p, xk) + param_apply(p, xl) - param_apply(p, xi) - param_apply(p, xj);
    MultiPoly u = xk - xi;
    MultiPoly uv = (xk - xi) * (xk - xj);
    MultiPoly p_i = w.is_zero() ? MultiPoly() : w.divide_exact(u);
    MultiPoly p_ij = w.is_zero() ? MultiPoly() : -(w.divide_exact(uv));

    MFComplex c;
    c.ring_vars = {ei, ej, ek};
    std::sort(c.ring_vars.begin(), c.ring_vars.end());
    c.potential = w;

    switch (kind) {
        case LocalKind::singular:
            c.gens = {{1, -2, 0}, {-1, 0, 0}};
            c.d_plus = PolyMat(2, 2);
            c.d_minus = PolyMat(2, 2);
            c.d_vert = PolyMat(2, 2);
            c.d_plus.set(1, 0, -uv);
            c.d_minus.set(0, 1, p_ij);
            break;
        case LocalKind::split:
            c.gens = {{0, -2, 0}, {0, 0, 0}};
            c.d_plus = PolyMat(2, 2);
            c.d_minus = PolyMat(2, 2);
            c.d_vert = PolyMat(2, 2);
            c.d_plus.set(1, 0, u);
            c.d_minus.set(0, 1, p_i);
            break;
        case LocalKind::positive:
            // gens: a = R{0,-2,0}, b = R{0,0,0}, c2 = R{2,-2,-2}, e = R{0,0,-2}
            c.gens = {{0, -2, 0}, {0, 0, 0}, {2, -2, -2}, {0, 0, -2}};
            c.d_plus = PolyMat(4, 4);
            c.d_minus = PolyMat(4, 4);
            c.d_vert = PolyMat(4, 4);
            c.d_plus.set(1, 0, u);
            c.d_plus.set(3, 2, -uv);
            c.d_minus.set(0, 1, p_i);
            c.d_minus.set(2, 3, p_ij);
            c.d_vert.set(0, 2, xj - xk);
            c.d_vert.set(1, 3, MultiPoly(1));
            break;
        case LocalKind::negative:
            // gens: a = R{0,-2,2}, b = R{-2,0,2}, c2 = R{0,-2,0}, e = R{0,0,0}
            c.gens = {{0, -2, 2}, {-2, 0, 2}, {0, -2, 0}, {0, 0, 0}};
            c.d_plus = PolyMat(4, 4);
            c.d_minus = PolyMat(4, 4);
            c.d_vert = PolyMat(4, 4);
            c.d_plus.set(1, 0, -uv);
            c.d_plus.set(3, 2, u);
            c.d_minus.set(0, 1, p_ij);
            c.d_minus.set(2, 3, p_i);
            c.d_vert.set(0, 2, MultiPoly(1));
            c.d_vert.set(1, 3, xj - xk);
            break;
    }
    return c;
}

MFComplex unreduced_factor(int edge, const ParamPoly& p) {
    MFComplex c;
    c.ring_vars = {edge};
    c.gens = {{0, -2, 0}, {0, 0, 0}};
    c.d_plus = PolyMat(2, 2);
    c.d_minus = PolyMat(2, 2);
    c.d_vert = PolyMat(2, 2);
    c.d_minus.set(0, 1, param_apply(param_derivative(p), MultiPoly::var(edge)));
    return c;
}

// ---------------------------------------------------------------------------
// tensor

namespace {

MFComplex tensor_impl(const MFComplex& a, const MFComplex& b, bool signs_on_first) {
    if (a.dv_sign_adjusted || b.dv_sign_adjusted)
        throw error("tensor: factors must use the raw sign convention");
    MFComplex c;
    std::set<int> vars(a.ring_vars.begin(), a.ring_vars.end());
    vars.insert(b.ring_vars.begin(), b.ring_vars.end());
    c.ring_vars.assign(vars.begin(), vars.end());
    const int na = a.rank(), nb = b.rank();
    c.gens.reserve(static_cast<size_t>(na) * nb);
    for (int ia = 0; ia < na; ++ia)
        for (int ib = 0; ib < nb; ++ib) c.gens.push_back(a.gens[ia] + b.gens[ib]);
    auto idx = [nb](int ia, int ib) { return ia * nb + ib; };
    const int n = na * nb;
    c.d_plus = PolyMat(n, n);
    c.d_minus = PolyMat(n, n);
    c.d_vert = PolyMat(n, n);

    auto fill = [&](const PolyMat& da, const PolyMat& db, PolyMat& dc, bool vertical) {
        for (auto& [rc, poly] : da.entries())
            for (int ib = 0; ib < nb; ++ib) {
                Rational s(1);
                if (signs_on_first) {
                    int deg = vertical ? b.gr_v(ib) : b.gr_h(ib);
                    if (deg & 1) s = Rational(-1);
                }
                dc.add(idx(rc.first, ib), idx(rc.second, ib), poly.scaled(s));
            }
        for (auto& [rc, poly] : db.entries())
            for (int ia = 0; ia < na; ++ia) {
                Rational s(1);
                if (!signs_on_first) {
                    int deg = vertical ? a.gr_v(ia) : a.gr_h(ia);
                    if (deg & 1) s = Rational(-1);
                }
                dc.add(idx(ia, rc.first), idx(ia, rc.second), poly.scaled(s));
            }
    };
    fill(a.d_plus, b.d_plus, c.d_plus, false);
    fill(a.d_minus, b.d_minus, c.d_minus, false);
    fill(a.d_vert, b.d_vert, c.d_vert, true);
    c.potential = a.potential + b.potential;
    return c;
}

} // namespace

MFComplex tensor(const MFComplex& a, const MFComplex& b) { return tensor_impl(a, b, false); }
MFComplex tensor_alt(const MFComplex& a, const MFComplex& b) { return tensor_impl(a, b, true); }

MFComplex adjust_dv_sign(const MFComplex& c) {
    if (c.dv_sign_adjusted) return c;
    MFComplex r = c;
    PolyMat dv(c.rank(), c.rank());
    for (auto& [rc, poly] : c.d_vert.entries()) {
        Rational s((c.gr_h(rc.second) & 1) ? -1 : 1);
        dv.set(rc.first, rc.second, poly.scaled(s));
    }
    r.d_vert = dv;
    r.dv_sign_adjusted = true;
    return r;
}

// ---------------------------------------------------------------------------
// Koszul matrices

MultiPoly KoszulMatrix::potential() const {
    MultiPoly w;
    for (auto& [a, b] : rows) w += a * b;
    return w;
}

KoszulMatrix row_operation(const KoszulMatrix& k, int i, int j, const MultiPoly& c) {
    if (i == j) throw error("row_operation: i = j");
    if (i < 0 || j < 0 || i >= static_cast<int>(k.rows.size()) ||
        j >= static_cast<int>(k.rows.size()))
        throw error("row_operation: index out of range");
    KoszulMatrix r = k;
    r.rows[i].first = k.rows[i].first + c * k.rows[j].first;
    r.rows[j].second = k.rows[j].second - c * k.rows[i].second;
    return r;
}

namespace {

// reduce modulo the monic relation b = x^d + lower (in the variable x)
MultiPoly reduce_mod_monic(const MultiPoly& p, const MultiPoly& lower, int x, int d) {
    MultiPoly r = p;
    for (;;) {
        int m = r.degree_in(x);
        if (m < d) return r;
        MultiPoly top = r.coefficient_of(x, m);  // no x left in top
        MultiPoly xm_lower = MultiPoly::monomial(Monomial::var(x, m - d), Rational(1));
        // x^m = x^{m-d} * (x^d) == -x^{m-d} * lower (mod b)
        r = r - top * MultiPoly::monomial(Monomial::var(x, m), Rational(1)) -
            top * xm_lower * lower;
    }
}

} // namespace

KoszulMatrix exclude_variable(const KoszulMatrix& k, int row, int x) {
    if (row < 0 || row >= static_cast<int>(k.rows.size()))
        throw error("exclude_variable: bad row");
    const MultiPoly& b = k.rows[row].second;
    int d = b.degree_in(x);
    if (d < 1) throw error("exclude_variable: b_r has no positive x-degree");
    MultiPoly lead = b.coefficient_of(x, d);
    if (!(lead.is_constant() && lead.constant_term().is_one()))
        throw error("exclude_variable: b_r not monic in x");
    MultiPoly lower = b - MultiPoly::monomial(Monomial::var(x, d), Rational(1));

    KoszulMatrix r;
    for (int t = 0; t < static_cast<int>(k.rows.size()); ++t) {
        if (t == row) continue;
        auto [a, bb] = k.rows[t];
        if (d == 1) {
            std::map<int, MultiPoly> sub{{x, -lower}};
            r.rows.push_back({a.substitute(sub), bb.substitute(sub)});
        } else {
            r.rows.push_back({reduce_mod_monic(a, lower, x, d), reduce_mod_monic(bb, lower, x, d)});
        }
    }
    return r;
}

MFComplex koszul_complex(const KoszulMatrix& k) {
    MFComplex c;
    c.gens = {{0, 0, 0}};
    c.d_plus = PolyMat(1, 1);
    c.d_minus = PolyMat(1, 1);
    c.d_vert = PolyMat(1, 1);
    bool first = true;
    for (auto& [a, b] : k.rows) {
        MFComplex s;
        std::set<int> vars;
        for (int v : a.variables()) vars.insert(v);
        for (int v : b.variables()) vars.insert(v);
        s.ring_vars.assign(vars.begin(), vars.end());
        s.gens = {{0, -2, 0}, {0, 0, 0}};
        s.d_plus = PolyMat(2, 2);
        s.d_minus = PolyMat(2, 2);
        s.d_vert = PolyMat(2, 2);
        s.d_plus.set(1, 0, b);
        s.d_minus.set(0, 1, a);
        s.potential = a * b;
        c = first ? s : tensor(c, s);
        first = false;
    }
    return c;
}

MFComplex twist(const MFComplex& c, const PolyMat& h) {
    int lo = 0, hi = 0;
    bool first = true;
    for (auto& g : c.gens) {
        int v = g.j / 2;
        if (first) lo = hi = v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        first = false;
    }
    if (!first && hi - lo > 2) throw error("twist: support exceeds three horizontal degrees");
    if (!h.entries().empty() && hi - lo != 2)
        throw error("twist: need support in three adjacent horizontal degrees");
    for (auto& [rc, poly] : h.entries())
        if (!(c.gr_h(rc.second) == hi && c.gr_h(rc.first) == lo))
            throw error("twist: H must map top horizontal degree to bottom");
    MFComplex r = c;
    r.d_minus = c.d_minus + c.d_plus * h + (h * c.d_plus).scaled(Rational(-1));
    return r;
}

// ---------------------------------------------------------------------------
// assembly

namespace {

EdgeRingPresentation impose_zero(const EdgeRingPresentation& pres, const MultiPoly& expr) {
    MultiPoly e = pres.to_free(expr);
    if (e.is_zero()) throw error("impose_zero: relation already holds");
    auto vars = e.variables();
    int v = vars.back();
    Rational c = e.coefficient_of(v, 1).constant_term();
    MultiPoly image = MultiPoly::var(v) - e.scaled(Rational(1) / c);
    std::map<int, MultiPoly> rule{{v, image}};
    EdgeRingPresentation out;
    for (auto& [w, img] : pres.eliminated) out.eliminated[w] = img.substitute(rule);
    out.eliminated[v] = image;
    for (int f : pres.free_vars)
        if (f != v) out.free_vars.push_back(f);
    return out;
}

bool translation_invariant(const MultiPoly& p, const std::vector<int>& vars) {
    const int t = 0;  // edge labels start at 1
    std::map<int, MultiPoly> shift;
    for (int v : vars) shift[v] = MultiPoly::var(v) + MultiPoly::var(t);
    return p.substitute_sim(shift) == p;
}

} // namespace

AssembledComplex assemble(const TangleDiagram& d, const ParamPoly& p, const AssembleOptions& opt) {
    AssembledComplex out;
    out.diagram = d;
    EdgeRingPresentation pres = edge_ring(d);

    if (opt.variant == Variant::reduced_edge) {
        if (opt.marked_edge < 1 || opt.marked_edge > d.num_edges)
            throw error("assemble: reduced_edge needs a marked edge");
        pres = impose_zero(pres, MultiPoly::var(opt.marked_edge));
    }
    if (opt.variant == Variant::reduced_global) {
        for (auto& c : p)
            if (!c.is_zero()) throw error("assemble: reduced_global requires p = 0");
    }

    auto map_entry = [&pres](const MultiPoly& q) { return pres.to_free(q); };

    MFComplex total;
    total.gens = {{0, 0, 0}};
    total.d_plus = PolyMat(1, 1);
    total.d_minus = PolyMat(1, 1);
    total.d_vert = PolyMat(1, 1);

    auto mul = [&](const MFComplex& f) {
        MFComplex g = f;
        g.d_plus = f.d_plus.transform(map_entry);
        g.d_minus = f.d_minus.transform(map_entry);
        g.d_vert = f.d_vert.transform(map_entry);
        g.potential = map_entry(f.potential);
        g.ring_vars = pres.free_vars;
        total = opt.alt_tensor_signs ? tensor_alt(total, g) : tensor(total, g);
    };

    for (auto& v : d.vertices) {
        if (!v.is_crossing()) continue;
        LocalKind kind;
        switch (v.kind) {
            case Vertex::crossing_pos: kind = LocalKind::positive; break;
            case Vertex::crossing_neg: kind = LocalKind::negative; break;
            case Vertex::crossing_sing: kind = LocalKind::singular; break;
            case Vertex::crossing_split: kind = LocalKind::split; break;
            default: throw error("assemble: unexpected vertex");
        }
        mul(local_factor(kind, v.in[0], v.in[1], v.out[0], v.out[1], p));
    }

    if (opt.variant == Variant::unreduced || opt.variant == Variant::reduced_edge) {
        // one unreduced factor per graph component; the reduced variant skips
        // the component carrying the marked edge (Sec. 2.10 shape)
        auto [comp, closed_count] = d.graph_components();
        int ncomp = 0;
        for (int e = 1; e <= d.num_edges; ++e) ncomp = std::max(ncomp, comp[e] + 1);
        int skip = opt.variant == Variant::reduced_edge ? comp[opt.marked_edge] : -1;
        std::vector<int> marks = opt.marks;
        if (marks.empty()) {
            for (int c = 0; c < ncomp; ++c) {
                if (c == skip) continue;
                for (int e = 1; e <= d.num_edges; ++e)
                    if (comp[e] == c) {
                        marks.push_back(e);
                        break;
                    }
            }
        }
        int expect = ncomp - (skip >= 0 ? 1 : 0);
        if (static_cast<int>(marks.size()) != expect)
            throw error("assemble: need one marked edge per unreduced component");
        std::vector<bool> seen(ncomp, false);
        for (int m : marks) {
            if (m < 1 || m > d.num_edges || seen[comp[m]] || comp[m] == skip)
                throw error("assemble: bad unreduced marks");
            seen[comp[m]] = true;
            mul(unreduced_factor(m, p));
        }
    }

    if (opt.variant == Variant::reduced_global) {
        // entries must lie in the reduced ring (translation invariant), then
        // the last free variable realizes R(D) = R_r(D)[x]
        for (auto* m : {&total.d_plus, &total.d_vert})
            for (auto& [rc, poly] : m->entries())
                if (!translation_invariant(poly, pres.free_vars))
                    throw error("assemble: entry not in the reduced ring");
        if (!total.d_minus.is_zero()) throw error("assemble: reduced_global with nonzero d_minus");
        if (pres.free_vars.empty()) throw error("assemble: no free variable to reduce");
        int last = pres.free_vars.back();
        std::map<int, MultiPoly> kill{{last, MultiPoly()}};
        auto cut = [&kill](const MultiPoly& q) { return q.substitute(kill); };
        total.d_plus = total.d_plus.transform(cut);
        total.d_vert = total.d_vert.transform(cut);
        total.potential = cut(total.potential);
        pres.eliminated[last] = MultiPoly();
        pres.free_vars.pop_back();
    }

    total.ring_vars = pres.free_vars;
    total = adjust_dv_sign(total);

    if (d.closed() && !total.potential.is_zero())
        throw error("assemble: nonzero potential on a closed diagram");

    out.complex = std::move(total);
    out.ring = std::move(pres);
    return out;
}

PolyMat edge_multiplication(const AssembledComplex& ac, int edge) {
    return PolyMat::scalar(ac.complex.rank(), ac.ring.edge_var(edge));
}

std::string dump_complex_json(const MFComplex& c) {
    std::ostringstream os;
    os << "{\"rank\":" << c.rank() << ",\"gens\":[";
    for (int i = 0; i < c.rank(); ++i) {
        if (i) os << ",";
        os << "[" << c.gens[i].i << "," << c.gens[i].j << "," << c.gens[i].k << "]";
    }
    os << "],\"potential\":\"" << c.potential.str() << "\"";
    auto dump = [&os](const char* name, const PolyMat& m) {
        os << ",\"" << name << "\":[";
        bool first = true;
        for (auto& [rc, p] : m.entries()) {
            if (!first) os << ",";
            first = false;
            os << "[" << rc.first << "," << rc.second << ",\"" << p.str() << "\"]";
        }
        os << "]";
    };
    dump("d_plus", c.d_plus);
    dump("d_minus", c.d_minus);
    dump("d_vert", c.d_vert);
    os << "}";
    return os.str();
}

} // namespace krh

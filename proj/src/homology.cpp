#include "krh/homology.hpp"

#include <algorithm>
#include <set>

#ifdef KRH_HAVE_OPENMP
#include <omp.h>
#endif

namespace krh {

namespace {

template <typename F>
void par_for(Exec exec, int n, F&& f) {
#ifdef KRH_HAVE_OPENMP
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
#endif
    (void)exec;
    for (int i = 0; i < n; ++i) f(i);
}

SparseMatQ mat_from_columns(int rows, const std::vector<SparseVecQ>& cols) {
    SparseMatQ m(rows, static_cast<int>(cols.size()));
    for (int c = 0; c < static_cast<int>(cols.size()); ++c)
        for (auto& [r, v] : cols[c]) m.set(r, c, v);
    return m;
}

SparseVecQ mat_column(const SparseMatQ& m, int c) {
    SparseVecQ out;
    for (int r = 0; r < m.rows(); ++r) {
        Rational v = m.get(r, c);
        if (!v.is_zero()) out.push_back({r, v});
    }
    return out;
}

// y = M x via row iteration
SparseVecQ mat_apply(const SparseMatQ& m, const SparseVecQ& x) {
    SparseVecQ y;
    for (int r = 0; r < m.rows(); ++r) {
        Rational acc(0);
        auto it = x.begin();
        for (auto& [c, v] : m.row(r)) {
            while (it != x.end() && it->first < c) ++it;
            if (it == x.end()) break;
            if (it->first == c) acc += v * it->second;
        }
        if (!acc.is_zero()) y.push_back({r, acc});
    }
    return y;
}

} // namespace

// ---------------------------------------------------------------------------
// monomial enumeration

static void monomials_rec(const std::vector<int>& vars, size_t pos, int remaining, Monomial& cur,
                          std::vector<Monomial>& out) {
    if (pos + 1 == vars.size()) {
        Monomial m = cur;
        if (remaining > 0) m.factors.push_back({vars[pos], remaining});
        std::sort(m.factors.begin(), m.factors.end());
        out.push_back(std::move(m));
        return;
    }
    for (int e = 0; e <= remaining; ++e) {
        Monomial save = cur;
        if (e > 0) cur.factors.push_back({vars[pos], e});
        monomials_rec(vars, pos + 1, remaining - e, cur, out);
        cur = save;
    }
}

std::vector<Monomial> monomials_of_degree(const std::vector<int>& vars, int degree, bool reversed) {
    std::vector<Monomial> out;
    if (degree < 0) return out;
    if (vars.empty()) {
        if (degree == 0) out.push_back(Monomial());
        return out;
    }
    Monomial cur;
    monomials_rec(vars, 0, degree, cur, out);
    if (reversed) std::reverse(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// ChainSlicer

const ChainSlicer::Space ChainSlicer::empty_{};

ChainSlicer::ChainSlicer(const MFComplex& c, int q_hi, bool reversed) : c_(&c), q_hi_(q_hi) {
    bool first = true;
    for (auto& g : c.gens) {
        if (first) {
            q_lo_ = g.i;
            j_lo_ = j_hi_ = g.j;
            k_lo_ = k_hi_ = g.k;
            first = false;
        }
        q_lo_ = std::min(q_lo_, g.i);
        j_lo_ = std::min(j_lo_, g.j);
        j_hi_ = std::max(j_hi_, g.j);
        k_lo_ = std::min(k_lo_, g.k);
        k_hi_ = std::max(k_hi_, g.k);
    }
    // degree caches per generator
    std::map<int, std::vector<Monomial>> mono_cache;
    for (int gi = 0; gi < c.rank(); ++gi) {
        const GradedShift& g = c.gens[gi];
        for (int q = g.i; q <= q_hi_; q += 2) {
            int deg = (q - g.i) / 2;
            auto it = mono_cache.find(deg);
            if (it == mono_cache.end())
                it = mono_cache.emplace(deg, monomials_of_degree(c.ring_vars, deg, reversed)).first;
            Space& sp = slices_[{q, g.j, g.k}];
            for (auto& m : it->second) sp.basis.push_back({gi, m});
        }
    }
    for (auto& [key, sp] : slices_) {
        std::sort(sp.basis.begin(), sp.basis.end());
        if (reversed) std::reverse(sp.basis.begin(), sp.basis.end());
        for (int i = 0; i < sp.dim(); ++i) sp.index[sp.basis[i]] = i;
    }
}

const ChainSlicer::Space& ChainSlicer::slice(const SliceKey& s) const {
    auto it = slices_.find(s);
    return it == slices_.end() ? empty_ : it->second;
}

std::vector<SliceKey> ChainSlicer::keys() const {
    std::vector<SliceKey> ks;
    ks.reserve(slices_.size());
    for (auto& [k, v] : slices_) ks.push_back(k);
    return ks;
}

SparseMatQ ChainSlicer::op_matrix(const PolyMat& op, const SliceKey& from,
                                  const SliceKey& to) const {
    const Space& src = slice(from);
    const Space& dst = slice(to);
    SparseMatQ m(dst.dim(), src.dim());
    if (src.dim() == 0 || dst.dim() == 0) return m;
    for (int ci = 0; ci < src.dim(); ++ci) {
        auto& [g, mono] = src.basis[ci];
        for (auto& [rc, poly] : op.entries()) {
            if (rc.second != g) continue;
            for (auto& [pm, coeff] : poly.terms) {
                auto it = dst.index.find({rc.first, mono * pm});
                if (it != dst.index.end()) m.add_to(it->second, ci, coeff);
            }
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// PositiveHomology

PositiveHomology::PositiveHomology(const MFComplex& c, int q_hi, Exec exec, bool reversed)
    : slicer_(c, q_hi, reversed) {
    auto keys = slicer_.keys();
    const GradedShift step{2, 2, 0};
    std::vector<RankKernelImage> rki(keys.size());
    std::vector<bool> have(keys.size(), false);
    par_for(exec, static_cast<int>(keys.size()), [&](int i) {
        const SliceKey& s = keys[i];
        if (s.q + 2 > slicer_.q_hi()) return;
        SliceKey t{s.q + step.i, s.j + step.j, s.k + step.k};
        rki[i] = rank_kernel_image(slicer_.op_matrix(c.d_plus, s, t));
        have[i] = true;
    });
    std::map<SliceKey, int> pos;
    for (int i = 0; i < static_cast<int>(keys.size()); ++i) pos[keys[i]] = i;
    for (int i = 0; i < static_cast<int>(keys.size()); ++i) {
        if (!have[i]) continue;
        const SliceKey& s = keys[i];
        SliceData& sd = data_[s];
        sd.image = RrefBasis(slicer_.slice_dim(s));
        SliceKey prev{s.q - step.i, s.j - step.j, s.k - step.k};
        auto pit = pos.find(prev);
        if (pit != pos.end() && have[pit->second])
            for (auto& col : rki[pit->second].image) sd.image.insert(col);
        sd.hom = QuotientCoords(&sd.image, static_cast<int>(slicer_.slice_dim(s)));
        for (auto& kvec : rki[i].kernel) sd.hom.offer(kvec);
    }
}

long PositiveHomology::dim(const SliceKey& s) const {
    auto it = data_.find(s);
    if (it == data_.end()) {
        if (slicer_.slice_dim(s) == 0) return 0;
        if (!complete(s)) throw error("PositiveHomology: slice beyond window");
        return 0;
    }
    return it->second.hom.dim();
}

std::map<SliceKey, long> PositiveHomology::dims() const {
    std::map<SliceKey, long> out;
    for (auto& [s, sd] : data_)
        if (sd.hom.dim() > 0) out[s] = sd.hom.dim();
    return out;
}

SparseVecQ PositiveHomology::chain_of(const SliceKey& s, int index) const {
    return data_.at(s).hom.basis_cycles().at(index);
}

SparseVecQ PositiveHomology::hom_coords(const SliceKey& s, const SparseVecQ& chain) const {
    auto it = data_.find(s);
    if (it == data_.end()) {
        if (sv_is_zero(chain)) return {};
        throw error("PositiveHomology: coords on missing slice");
    }
    return it->second.hom.coords(chain);
}

SparseMatQ PositiveHomology::induced(const PolyMat& op, const SliceKey& from,
                                     const SliceKey& to) const {
    long n = dim(from), m = dim(to);
    SparseMatQ out(static_cast<int>(m), static_cast<int>(n));
    if (n == 0) return out;
    SparseMatQ chain_op = slicer_.op_matrix(op, from, to);
    for (int c = 0; c < n; ++c) {
        SparseVecQ img = mat_apply(chain_op, chain_of(from, c));
        for (auto& [r, v] : hom_coords(to, img)) out.set(r, c, v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// DoubleHomologyEngine

DoubleHomologyEngine::DoubleHomologyEngine(const MFComplex& c, int q_hi, Exec exec, bool reversed)
    : h1_(c, q_hi, exec, reversed) {
    auto hdims = h1_.dims();
    std::vector<SliceKey> keys;
    for (auto& [s, d] : hdims) keys.push_back(s);
    // induced d_v between consecutive vertical slices
    std::vector<SparseMatQ> mats(keys.size());
    par_for(exec, static_cast<int>(keys.size()), [&](int i) {
        const SliceKey& s = keys[i];
        SliceKey t{s.q, s.j, s.k + 2};
        mats[i] = h1_.induced(c.d_vert, s, t);
    });
    for (size_t i = 0; i < keys.size(); ++i) dv_[keys[i]] = std::move(mats[i]);

    std::vector<RankKernelImage> rki(keys.size());
    par_for(exec, static_cast<int>(keys.size()), [&](int i) {
        rki[i] = rank_kernel_image(dv_.at(keys[i]));
    });
    std::map<SliceKey, int> pos;
    for (int i = 0; i < static_cast<int>(keys.size()); ++i) pos[keys[i]] = i;
    for (int i = 0; i < static_cast<int>(keys.size()); ++i) {
        const SliceKey& s = keys[i];
        auto& img = images_storage_.emplace_back(static_cast<int>(h1_.dim(s)));
        SliceKey prev{s.q, s.j, s.k - 2};
        auto pit = pos.find(prev);
        if (pit != pos.end())
            for (auto& col : rki[pit->second].image) img.insert(col);
        QuotientCoords qc(&img, static_cast<int>(h1_.dim(s)));
        for (auto& kvec : rki[i].kernel) qc.offer(kvec);
        level2_[s] = std::move(qc);
    }
}

long DoubleHomologyEngine::dim(const SliceKey& s) const {
    auto it = level2_.find(s);
    if (it != level2_.end()) return it->second.dim();
    // zero H1 means zero H2; otherwise the slice was never computed
    if (h1_.dim(s) == 0) return 0;
    throw error("DoubleHomologyEngine: slice missing");
}

TripleGradedDims DoubleHomologyEngine::dims(int q_report_hi) const {
    TripleGradedDims out;
    for (auto& [s, qc] : level2_) {
        if (s.q > q_report_hi || qc.dim() == 0) continue;
        out[{s.q, s.j, s.k}] = qc.dim();
    }
    return out;
}

SparseVecQ DoubleHomologyEngine::class_chain(const SliceKey& s, int index) const {
    const QuotientCoords& qc = level2_.at(s);
    SparseVecQ h1vec = qc.basis_cycles().at(index);
    SparseVecQ chain;
    for (auto& [h1idx, coeff] : h1vec)
        chain = sv_axpy(chain, coeff, h1_.chain_of(s, h1idx));
    return chain;
}

std::map<Triple, SparseMatQ> DoubleHomologyEngine::induced_endo(const PolyMat& op,
                                                                const GradedShift& opdeg) const {
    std::map<Triple, SparseMatQ> out;
    for (auto& [s, qc] : level2_) {
        if (qc.dim() == 0) continue;
        SliceKey t{s.q + opdeg.i, s.j + opdeg.j, s.k + opdeg.k};
        long tdim = 0;
        auto tit = level2_.find(t);
        if (tit != level2_.end()) tdim = tit->second.dim();
        SparseMatQ m(static_cast<int>(tdim), qc.dim());
        SparseMatQ chain_op = h1_.chains().op_matrix(op, s, t);
        for (int ci = 0; ci < qc.dim(); ++ci) {
            SparseVecQ img = mat_apply(chain_op, class_chain(s, ci));
            SparseVecQ h1c = h1_.hom_coords(t, img);
            if (sv_is_zero(h1c)) continue;
            if (tit == level2_.end()) throw error("induced_endo: image hits missing slice");
            for (auto& [r, v] : tit->second.coords(h1c)) m.set(r, ci, v);
        }
        out[{s.q, s.j, s.k}] = std::move(m);
    }
    return out;
}

std::map<Triple, SparseMatQ> DoubleHomologyEngine::d1_matrices(const PolyMat& dminus,
                                                               const GradedShift& opdeg) const {
    return induced_endo(dminus, opdeg);
}

// ---------------------------------------------------------------------------
// TotalHomologyEngine

TotalHomologyEngine::TotalHomologyEngine(const MFComplex& c, int N, int q_hi, Exec exec)
    : n_(N), slicer_(c, q_hi, false), dplus_(&c.d_plus), dminus_(&c.d_minus) {
    for (auto& s : slicer_.keys()) {
        int grN = s.q + (N - 1) * s.j / 2;
        Merged& m = merged_[{grN, s.k}];
        m.parts.push_back(s);
    }
    for (auto& [mk, m] : merged_) {
        std::sort(m.parts.begin(), m.parts.end(),
                  [](const SliceKey& a, const SliceKey& b) { return a.j < b.j; });
        m.offsets.resize(m.parts.size());
        int off = 0;
        for (size_t i = 0; i < m.parts.size(); ++i) {
            m.offsets[i] = off;
            off += static_cast<int>(slicer_.slice_dim(m.parts[i]));
        }
        m.dim = off;
    }
    int j_lo = slicer_.j_range().first;
    const int dtot_deg = N + 1;
    // the merged space at gr_N is fully enumerated iff grN + (N-1)|j_lo|/2 <= q_hi
    grN_valid_hi_ = q_hi - (N - 1) * (-j_lo) / 2 - dtot_deg;

    std::vector<MKey> keys;
    for (auto& [mk, m] : merged_)
        if (mk.first <= grN_valid_hi_) keys.push_back(mk);

    std::vector<RankKernelImage> rki(keys.size());
    par_for(exec, static_cast<int>(keys.size()), [&](int i) {
        const MKey& mk = keys[i];
        MKey tk{mk.first + dtot_deg, mk.second};
        SparseMatQ m = merged_matrix({{dplus_, GradedShift{2, 2, 0}},
                                      {dminus_, GradedShift{2 * n_, -2, 0}}},
                                     mk, tk);
        rki[i] = rank_kernel_image(m);
    });
    std::map<MKey, int> pos;
    for (int i = 0; i < static_cast<int>(keys.size()); ++i) pos[keys[i]] = i;
    for (int i = 0; i < static_cast<int>(keys.size()); ++i) {
        const MKey& mk = keys[i];
        auto& img = images_storage_.emplace_back(merged(mk).dim);
        MKey prev{mk.first - dtot_deg, mk.second};
        auto pit = pos.find(prev);
        if (pit != pos.end())
            for (auto& col : rki[pit->second].image) img.insert(col);
        QuotientCoords qc(&img, merged(mk).dim);
        for (auto& kvec : rki[i].kernel) qc.offer(kvec);
        h1_[mk] = std::move(qc);
    }

    // induced d_v on the d_tot homology
    std::vector<MKey> hkeys;
    for (auto& [mk, qc] : h1_) hkeys.push_back(mk);
    std::vector<SparseMatQ> mats(hkeys.size());
    par_for(exec, static_cast<int>(hkeys.size()), [&](int i) {
        const MKey& mk = hkeys[i];
        MKey tk{mk.first, mk.second + 2};
        const QuotientCoords& src = h1_.at(mk);
        SparseMatQ chain_op = merged_matrix({{&slicer_.complex().d_vert, GradedShift{0, 0, 2}}},
                                            mk, tk);
        auto tit = h1_.find(tk);
        long tdim = tit == h1_.end() ? 0 : tit->second.dim();
        SparseMatQ m(static_cast<int>(tdim), src.dim());
        for (int ci = 0; ci < src.dim(); ++ci) {
            SparseVecQ img = mat_apply(chain_op, src.basis_cycles()[ci]);
            if (sv_is_zero(img)) continue;
            if (tit == h1_.end()) throw error("TotalHomology: d_v image out of range");
            for (auto& [r, v] : tit->second.coords(img)) m.set(r, ci, v);
        }
        mats[i] = std::move(m);
    });
    for (size_t i = 0; i < hkeys.size(); ++i) dv_[hkeys[i]] = std::move(mats[i]);

    std::vector<RankKernelImage> rki2(hkeys.size());
    par_for(exec, static_cast<int>(hkeys.size()), [&](int i) {
        rki2[i] = rank_kernel_image(dv_.at(hkeys[i]));
    });
    std::map<MKey, int> pos2;
    for (int i = 0; i < static_cast<int>(hkeys.size()); ++i) pos2[hkeys[i]] = i;
    for (int i = 0; i < static_cast<int>(hkeys.size()); ++i) {
        const MKey& mk = hkeys[i];
        auto& img = images_storage_.emplace_back(static_cast<int>(h1_.at(mk).dim()));
        MKey prev{mk.first, mk.second - 2};
        auto pit = pos2.find(prev);
        if (pit != pos2.end())
            for (auto& col : rki2[pit->second].image) img.insert(col);
        QuotientCoords qc(&img, static_cast<int>(h1_.at(mk).dim()));
        for (auto& kvec : rki2[i].kernel) qc.offer(kvec);
        level2_[mk] = std::move(qc);
    }
}

const TotalHomologyEngine::Merged& TotalHomologyEngine::merged(const MKey& m) const {
    static const Merged empty{};
    auto it = merged_.find(m);
    return it == merged_.end() ? empty : it->second;
}

SparseMatQ TotalHomologyEngine::merged_matrix(
    const std::vector<std::pair<const PolyMat*, GradedShift>>& ops, const MKey& from,
    const MKey& to) const {
    const Merged& src = merged(from);
    const Merged& dst = merged(to);
    SparseMatQ m(dst.dim, src.dim);
    for (size_t si = 0; si < src.parts.size(); ++si) {
        const SliceKey& s = src.parts[si];
        for (auto& [op, deg] : ops) {
            SliceKey t{s.q + deg.i, s.j + deg.j, s.k + deg.k};
            auto ti = std::find(dst.parts.begin(), dst.parts.end(), t);
            if (ti == dst.parts.end()) continue;
            int toff = dst.offsets[ti - dst.parts.begin()];
            SparseMatQ block = slicer_.op_matrix(*op, s, t);
            for (int r = 0; r < block.rows(); ++r)
                for (auto& [cc, v] : block.row(r))
                    m.add_to(toff + r, src.offsets[si] + cc, v);
        }
    }
    return m;
}

BigradedDims TotalHomologyEngine::dims() const {
    BigradedDims out;
    for (auto& [mk, qc] : level2_) {
        if (mk.first > grN_valid_hi_ || qc.dim() == 0) continue;
        out[mk] += qc.dim();
    }
    return out;
}

SparseVecQ TotalHomologyEngine::class_chain(const MKey& m, int index) const {
    const QuotientCoords& qc = level2_.at(m);
    SparseVecQ h1vec = qc.basis_cycles().at(index);
    SparseVecQ chain;
    for (auto& [idx, coeff] : h1vec) chain = sv_axpy(chain, coeff, h1_.at(m).basis_cycles()[idx]);
    return chain;
}

std::map<std::pair<int, int>, SparseMatQ> TotalHomologyEngine::induced_endo(const PolyMat& op,
                                                                            int d_grN,
                                                                            int d_k) const {
    std::map<MKey, SparseMatQ> out;
    for (auto& [mk, qc] : level2_) {
        if (qc.dim() == 0) continue;
        MKey tk{mk.first + d_grN, mk.second + d_k};
        auto tit = level2_.find(tk);
        long tdim = tit == level2_.end() ? 0 : tit->second.dim();
        SparseMatQ m(static_cast<int>(tdim), qc.dim());
        // grading of op as a triple acting on slices: q-degree d_grN (j,k fixed)
        SparseMatQ chain_op = merged_matrix({{&op, GradedShift{d_grN, 0, d_k}}}, mk, tk);
        for (int ci = 0; ci < qc.dim(); ++ci) {
            SparseVecQ img = mat_apply(chain_op, class_chain(mk, ci));
            if (sv_is_zero(img)) continue;
            if (tit == level2_.end() || h1_.find(tk) == h1_.end())
                throw error("TotalHomology: endo image out of range");
            SparseVecQ h1c = h1_.at(tk).coords(img);
            if (sv_is_zero(h1c)) continue;
            for (auto& [r, v] : tit->second.coords(h1c)) m.set(r, ci, v);
        }
        out[mk] = std::move(m);
    }
    return out;
}

// ---------------------------------------------------------------------------
// total homology of (C, d_+ + d_v)

BigradedDims total_homology_plus_vert(const MFComplex& c, int gr_lo, int gr_hi, Exec exec) {
    ChainSlicer slicer(c, gr_hi, false);
    BigradedDims out;
    auto [j_lo, j_hi] = slicer.j_range();
    auto [k_lo, k_hi] = slicer.k_range();
    std::vector<int> grs;
    for (int gr = gr_lo; gr <= gr_hi; ++gr) grs.push_back(gr);
    std::vector<BigradedDims> parts(grs.size());
    par_for(exec, static_cast<int>(grs.size()), [&](int gi) {
        int gr = grs[gi];
        // columns n = (j+k)/2; V_n = sum of slices (gr + j, j, 2n - j)
        auto column = [&](int n) {
            std::vector<SliceKey> parts_keys;
            for (int j = j_lo; j <= j_hi; j += 2) {
                int k = 2 * n - j;
                if (k < k_lo || k > k_hi) continue;
                SliceKey s{gr + j, j, k};
                if (slicer.slice_dim(s) > 0) parts_keys.push_back(s);
            }
            return parts_keys;
        };
        auto dim_of = [&](const std::vector<SliceKey>& ks) {
            int d = 0;
            for (auto& s : ks) d += static_cast<int>(slicer.slice_dim(s));
            return d;
        };
        int n_lo = (j_lo + k_lo) / 2 - 1, n_hi = (j_hi + k_hi) / 2 + 1;
        std::map<int, std::vector<SliceKey>> cols;
        for (int n = n_lo; n <= n_hi; ++n) cols[n] = column(n);
        std::map<int, SparseMatQ> mats;
        for (int n = n_lo; n < n_hi; ++n) {
            auto& src = cols[n];
            auto& dst = cols[n + 1];
            std::vector<int> soff(src.size()), doff(dst.size());
            int off = 0;
            for (size_t i = 0; i < src.size(); ++i) {
                soff[i] = off;
                off += static_cast<int>(slicer.slice_dim(src[i]));
            }
            int offd = 0;
            for (size_t i = 0; i < dst.size(); ++i) {
                doff[i] = offd;
                offd += static_cast<int>(slicer.slice_dim(dst[i]));
            }
            SparseMatQ m(offd, off);
            for (size_t i = 0; i < src.size(); ++i) {
                const SliceKey& s = src[i];
                for (auto& [op, deg] :
                     std::vector<std::pair<const PolyMat*, GradedShift>>{
                         {&c.d_plus, {2, 2, 0}}, {&c.d_vert, {0, 0, 2}}}) {
                    SliceKey t{s.q + deg.i, s.j + deg.j, s.k + deg.k};
                    auto ti = std::find(dst.begin(), dst.end(), t);
                    if (ti == dst.end()) continue;
                    SparseMatQ block = slicer.op_matrix(*op, s, t);
                    int toff = doff[ti - dst.begin()];
                    for (int r = 0; r < block.rows(); ++r)
                        for (auto& [cc, v] : block.row(r)) m.add_to(toff + r, soff[i] + cc, v);
                }
            }
            mats[n] = std::move(m);
        }
        for (int n = n_lo + 1; n < n_hi; ++n) {
            long d = dim_of(cols[n]);
            if (d == 0) continue;
            long rank_out = rank_of(mats[n]);
            long rank_in = rank_of(mats[n - 1]);
            long h = d - rank_out - rank_in;
            if (h > 0) parts[gi][{n, gr}] = h;
        }
    });
    for (auto& p : parts)
        for (auto& [key, v] : p) out[key] += v;
    return out;
}

// ---------------------------------------------------------------------------
// filtered pages

namespace {

struct ColumnData {
    std::vector<int> filt_of;     // per coordinate
    std::vector<int> filts;       // distinct filtrations, ascending
    int dim = 0;
    int coords_le(int s) const {  // number of coordinates with filt <= s
        int c = 0;
        for (int f : filt_of) c += (f <= s);
        return c;
    }
};

// echelon over coordinates ordered by (filt desc, idx asc), with originals
struct HighFirstEchelon {
    std::vector<int> remap;  // coord -> order position
    struct Row {
        SparseVecQ red;   // in remapped coords, sorted
        SparseVecQ orig;  // original coords
        int pivot_filt;
    };
    std::vector<Row> rows;
    const ColumnData* col;

    explicit HighFirstEchelon(const ColumnData& cd) : col(&cd) {
        std::vector<int> order(cd.dim);
        for (int i = 0; i < cd.dim; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return cd.filt_of[a] > cd.filt_of[b];
        });
        remap.resize(cd.dim);
        for (int p = 0; p < cd.dim; ++p) remap[order[p]] = p;
    }

    void insert(const SparseVecQ& v_orig) {
        SparseVecQ red;
        for (auto& [i, x] : v_orig) red.push_back({remap[i], x});
        std::sort(red.begin(), red.end());
        SparseVecQ orig = v_orig;
        for (auto& row : rows) {
            if (red.empty()) break;
            if (row.red.empty()) continue;
            if (red.front().first == row.red.front().first) {
                Rational f = red.front().second / row.red.front().second;
                red = sv_axpy(red, -f, row.red);
                orig = sv_axpy(orig, -f, row.orig);
            }
        }
        // repeat until no leading collision (rows sorted by pivot)
        bool changed = true;
        while (changed && !red.empty()) {
            changed = false;
            for (auto& row : rows) {
                if (red.empty()) break;
                if (!row.red.empty() && red.front().first == row.red.front().first) {
                    Rational f = red.front().second / row.red.front().second;
                    red = sv_axpy(red, -f, row.red);
                    orig = sv_axpy(orig, -f, row.orig);
                    changed = true;
                }
            }
        }
        if (red.empty()) return;
        int coord = red.front().first;
        // recover original coordinate of the pivot
        int orig_coord = -1;
        for (int i = 0; i < col->dim; ++i)
            if (remap[i] == coord) {
                orig_coord = i;
                break;
            }
        rows.push_back({std::move(red), std::move(orig), col->filt_of[orig_coord]});
        std::sort(rows.begin(), rows.end(),
                  [](const Row& a, const Row& b) { return a.red.front().first < b.red.front().first; });
    }
};

} // namespace

std::vector<std::map<std::pair<int, int>, PageCell>> filtered_pages(const FilteredBlocks& fb,
                                                                    int max_page) {
    // assemble per-column coordinate data
    std::map<int, ColumnData> cols;
    for (auto& [n, blocks] : fb.cols) {
        ColumnData cd;
        for (auto& [s, d] : blocks) {
            for (int i = 0; i < d; ++i) cd.filt_of.push_back(s);
            if (d > 0) cd.filts.push_back(s);
        }
        cd.dim = static_cast<int>(cd.filt_of.size());
        cols[n] = std::move(cd);
    }
    int s_lo = 0, s_hi = 0;
    bool first = true;
    for (auto& [n, cd] : cols)
        for (int f : cd.filts) {
            if (first) s_lo = s_hi = f;
            s_lo = std::min(s_lo, f);
            s_hi = std::max(s_hi, f);
            first = false;
        }
    if (first) return std::vector<std::map<std::pair<int, int>, PageCell>>(max_page + 1);

    auto get_d = [&](int n) -> const SparseMatQ* {
        auto it = fb.d.find(n);
        return it == fb.d.end() ? nullptr : &it->second;
    };

    // Z_r^s per column: kernel of (project beyond F_{s-r}) o d restricted to F_s
    auto zspace = [&](int n, int r, int s) -> std::vector<SparseVecQ> {
        auto cit = cols.find(n);
        if (cit == cols.end()) return {};
        const ColumnData& cd = cit->second;
        std::vector<int> cset;
        for (int i = 0; i < cd.dim; ++i)
            if (cd.filt_of[i] <= s) cset.push_back(i);
        if (cset.empty()) return {};
        const SparseMatQ* D = get_d(n);
        std::vector<int> rset;
        const ColumnData* tcd = nullptr;
        if (D) {
            auto tit = cols.find(n + 1);
            if (tit != cols.end()) {
                tcd = &tit->second;
                for (int i = 0; i < tcd->dim; ++i)
                    if (tcd->filt_of[i] > s - r) rset.push_back(i);
            }
        }
        SparseMatQ sub(static_cast<int>(rset.size()), static_cast<int>(cset.size()));
        if (D && !rset.empty()) {
            std::vector<int> rpos(tcd->dim, -1);
            for (size_t i = 0; i < rset.size(); ++i) rpos[rset[i]] = static_cast<int>(i);
            for (size_t ci = 0; ci < cset.size(); ++ci) {
                for (auto& [rr, v] : mat_column(*D, cset[ci]))
                    if (rpos[rr] >= 0) sub.set(rpos[rr], static_cast<int>(ci), v);
            }
        }
        auto rk = rank_kernel_image(sub);
        std::vector<SparseVecQ> out;
        for (auto& kv : rk.kernel) {
            SparseVecQ v;
            for (auto& [ci, x] : kv) v.push_back({cset[ci], x});
            std::sort(v.begin(), v.end());
            out.push_back(std::move(v));
        }
        return out;
    };

    // boundary echelons: for column n, image of d from column n-1 processed in
    // ascending source filtration; snapshot after each source filtration u
    std::map<int, std::map<int, std::vector<std::pair<int, SparseVecQ>>>> bsnap;
    for (auto& [n, cd] : cols) {
        auto pit = cols.find(n - 1);
        const SparseMatQ* D = get_d(n - 1);
        std::map<int, std::vector<std::pair<int, SparseVecQ>>> snaps;
        HighFirstEchelon ech(cd);
        if (pit != cols.end() && D) {
            const ColumnData& src = pit->second;
            std::vector<int> order(src.dim);
            for (int i = 0; i < src.dim; ++i) order[i] = i;
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
                return src.filt_of[a] < src.filt_of[b];
            });
            size_t oi = 0;
            for (int u = s_lo; u <= s_hi; ++u) {
                while (oi < order.size() && src.filt_of[order[oi]] <= u) {
                    ech.insert(mat_column(*D, order[oi]));
                    ++oi;
                }
                std::vector<std::pair<int, SparseVecQ>> rows;
                for (auto& row : ech.rows) rows.push_back({row.pivot_filt, row.orig});
                snaps[u] = std::move(rows);
            }
        }
        bsnap[n] = std::move(snaps);
    }
    auto bspace = [&](int n, int r, int s) -> std::vector<SparseVecQ> {
        // F_s intersect d(F_{s+r})
        auto nit = bsnap.find(n);
        if (nit == bsnap.end() || nit->second.empty()) return {};
        int u = std::clamp(s + r, s_lo, s_hi);
        if (s + r < s_lo) return {};
        auto& rows = nit->second.at(u);
        std::vector<SparseVecQ> out;
        for (auto& [pf, v] : rows)
            if (pf <= s) out.push_back(v);
        return out;
    };

    auto span_dim = [&](int n, const std::vector<const std::vector<SparseVecQ>*>& sets) {
        auto cit = cols.find(n);
        if (cit == cols.end()) return 0;
        RrefBasis b(cit->second.dim);
        for (auto* set : sets)
            for (auto& v : *set) b.insert(v);
        return b.dim();
    };

    std::vector<std::map<std::pair<int, int>, PageCell>> pages(max_page + 1);
    for (auto& [n, cd] : cols) {
        // cache Z spaces for r = 0..max_page+1 (index shifted by 1 for r = -1)
        std::map<std::pair<int, int>, std::vector<SparseVecQ>> zcache;
        auto Z = [&](int r, int s) -> const std::vector<SparseVecQ>& {
            auto key = std::make_pair(r, s);
            auto it = zcache.find(key);
            if (it == zcache.end()) it = zcache.emplace(key, zspace(n, std::max(r, 0), s)).first;
            return it->second;
        };
        for (int r = 0; r <= max_page; ++r) {
            for (int s = s_lo; s <= s_hi; ++s) {
                auto& zr = Z(r, s);
                if (zr.empty() && cd.coords_le(s) == 0) continue;
                auto zprev = (s - 1 < s_lo) ? std::vector<SparseVecQ>{} : Z(r - 1, s - 1);
                auto b = bspace(n, r - 1, s);
                int denom = span_dim(n, {&zprev, &b});
                int dim = span_dim(n, {&zr}) - denom;
                if (dim < 0) throw error("filtered_pages: negative dimension");
                auto& znext = Z(r + 1, s);
                int kerdim = span_dim(n, {&znext, &zprev}) - denom;
                int rank = dim - kerdim;
                if (rank < 0) throw error("filtered_pages: negative rank");
                if (dim > 0 || rank > 0) {
                    pages[r][{n, s}].dim = dim;
                    pages[r][{n, s}].drank = rank;
                }
            }
        }
    }
    return pages;
}

// ---------------------------------------------------------------------------
// spectral sequences

namespace {

std::vector<PageData> assemble_pages(
    const std::vector<std::pair<int, std::vector<std::map<std::pair<int, int>, PageCell>>>>& runs,
    int max_page, const std::function<Triple(int gr, int n, int s)>& grading) {
    std::vector<PageData> out(max_page + 1);
    for (int r = 0; r <= max_page; ++r) {
        out[r].page = r;
        for (auto& [gr, pages] : runs) {
            if (r >= static_cast<int>(pages.size())) continue;
            for (auto& [ns, cell] : pages[r]) {
                Triple t = grading(gr, ns.first, ns.second);
                if (cell.dim > 0) out[r].dims[t] += cell.dim;
                if (cell.drank > 0) out[r].d_ranks[t] += cell.drank;
            }
        }
    }
    // converged once every later page has no differentials
    for (int r = max_page; r >= 0; --r) {
        bool later_ok = (r == max_page) ? out[r].d_ranks.empty()
                                        : (out[r + 1].converged && out[r].d_ranks.empty());
        out[r].converged = later_ok;
    }
    return out;
}

} // namespace

std::vector<PageData> ek_sequence_N(const MFComplex& reduced, int N, int grN_lo, int grN_hi,
                                    int max_page, Exec exec) {
    // q needed: gr'_N - 2N h for h in [j_lo/2, j_hi/2], plus 2 for H+ closure
    ChainSlicer probe(reduced, 0, false);
    int j_lo = probe.j_range().first;
    int q_hi = grN_hi + 2 * N * (-j_lo) / 2 + 4;
    PositiveHomology h1(reduced, q_hi, exec);
    auto [k_lo, k_hi] = h1.chains().k_range();
    int j_hi = h1.chains().j_range().second;

    std::vector<int> grs;
    for (int g = grN_lo; g <= grN_hi; ++g) grs.push_back(g);
    std::vector<std::vector<std::map<std::pair<int, int>, PageCell>>> results(grs.size());
    par_for(exec, static_cast<int>(grs.size()), [&](int gi) {
        int gr = grs[gi];
        FilteredBlocks fb;
        for (int n = (k_lo - j_hi) / 2 - 1; n <= (k_hi - j_lo) / 2 + 1; ++n) {
            std::vector<std::pair<int, int>> blocks;
            for (int h = j_lo / 2; h <= j_hi / 2; ++h) {
                int v = n + h;
                if (2 * v < k_lo || 2 * v > k_hi) continue;
                SliceKey s{gr - 2 * N * h, 2 * h, 2 * v};
                long d = h1.dim(s);
                if (d > 0) blocks.push_back({h, static_cast<int>(d)});
            }
            if (!blocks.empty()) fb.cols[n] = blocks;
        }
        // differentials between consecutive columns
        for (auto it = fb.cols.begin(); it != fb.cols.end(); ++it) {
            int n = it->first;
            auto jt = fb.cols.find(n + 1);
            if (jt == fb.cols.end()) continue;
            auto& src = it->second;
            auto& dst = jt->second;
            int sd = 0, dd = 0;
            for (auto& [s, d] : src) sd += d;
            for (auto& [s, d] : dst) dd += d;
            SparseMatQ m(dd, sd);
            int soff = 0;
            for (auto& [h, d] : src) {
                int v = n + h;
                SliceKey from{gr - 2 * N * h, 2 * h, 2 * v};
                // d_v^*: same h; d_-^*: h-1
                for (auto& [dh, op] : std::vector<std::pair<int, const PolyMat*>>{
                         {0, &reduced.d_vert}, {-1, &reduced.d_minus}}) {
                    int th = h + dh;
                    int tv = (n + 1) + th;
                    SliceKey to{gr - 2 * N * th, 2 * th, 2 * tv};
                    int toff = 0;
                    bool found = false;
                    for (auto& [s2, d2] : dst) {
                        if (s2 == th) {
                            found = true;
                            break;
                        }
                        toff += d2;
                    }
                    if (!found) continue;
                    SparseMatQ block = h1.induced(*op, from, to);
                    for (int r = 0; r < block.rows(); ++r)
                        for (auto& [cc, v2] : block.row(r)) m.add_to(toff + r, soff + cc, v2);
                }
                soff += d;
            }
            fb.d[n] = std::move(m);
        }
        results[gi] = filtered_pages(fb, max_page);
    });
    std::vector<std::pair<int, std::vector<std::map<std::pair<int, int>, PageCell>>>> runs;
    for (size_t i = 0; i < grs.size(); ++i) runs.push_back({grs[i], std::move(results[i])});
    return assemble_pages(runs, max_page, [N](int gr, int n, int s) {
        return Triple{gr - 2 * N * s, 2 * s, 2 * (n + s)};
    });
}

std::vector<PageData> ek_sequence_minus1(const MFComplex& reduced0, int gr_lo, int gr_hi,
                                         int max_page, Exec exec) {
    ChainSlicer probe(reduced0, 0, false);
    int j_lo = probe.j_range().first, j_hi = probe.j_range().second;
    int q_hi = gr_hi + j_hi + 2;
    ChainSlicer slicer(reduced0, q_hi, false);
    auto [k_lo, k_hi] = slicer.k_range();

    std::vector<int> grs;
    for (int g = gr_lo; g <= gr_hi; ++g) grs.push_back(g);
    std::vector<std::vector<std::map<std::pair<int, int>, PageCell>>> results(grs.size());
    par_for(exec, static_cast<int>(grs.size()), [&](int gi) {
        int gr = grs[gi];
        FilteredBlocks fb;
        // columns n = gr_+ = h + v; filtration s = -v
        for (int n = j_lo / 2 + k_lo / 2 - 1; n <= j_hi / 2 + k_hi / 2 + 1; ++n) {
            std::vector<std::pair<int, int>> blocks;  // (s = -v, dim), ascending s
            for (int v = k_hi / 2; v >= k_lo / 2; --v) {
                int h = n - v;
                if (2 * h < j_lo || 2 * h > j_hi) continue;
                SliceKey s{gr + 2 * h, 2 * h, 2 * v};
                long d = slicer.slice_dim(s);
                if (d > 0) blocks.push_back({-v, static_cast<int>(d)});
            }
            if (!blocks.empty()) fb.cols[n] = blocks;
        }
        for (auto it = fb.cols.begin(); it != fb.cols.end(); ++it) {
            int n = it->first;
            auto jt = fb.cols.find(n + 1);
            if (jt == fb.cols.end()) continue;
            auto& src = it->second;
            auto& dst = jt->second;
            int sd = 0, dd = 0;
            for (auto& [s, d] : src) sd += d;
            for (auto& [s, d] : dst) dd += d;
            SparseMatQ m(dd, sd);
            int soff = 0;
            for (auto& [s, d] : src) {
                int v = -s;
                int h = n - v;
                SliceKey from{gr + 2 * h, 2 * h, 2 * v};
                for (auto& [dv, op] : std::vector<std::pair<int, const PolyMat*>>{
                         {0, &reduced0.d_plus}, {1, &reduced0.d_vert}}) {
                    int tv = v + dv;
                    int ts = -tv;
                    SliceKey to{gr + 2 * (n + 1 - tv), 2 * (n + 1 - tv), 2 * tv};
                    int toff = 0;
                    bool found = false;
                    for (auto& [s2, d2] : dst) {
                        if (s2 == ts) {
                            found = true;
                            break;
                        }
                        toff += d2;
                    }
                    if (!found) continue;
                    SparseMatQ block = slicer.op_matrix(*op, from, to);
                    for (int r = 0; r < block.rows(); ++r)
                        for (auto& [cc, v2] : block.row(r)) m.add_to(toff + r, soff + cc, v2);
                }
                soff += d;
            }
            fb.d[n] = std::move(m);
        }
        results[gi] = filtered_pages(fb, max_page);
    });
    std::vector<std::pair<int, std::vector<std::map<std::pair<int, int>, PageCell>>>> runs;
    for (size_t i = 0; i < grs.size(); ++i) runs.push_back({grs[i], std::move(results[i])});
    return assemble_pages(runs, max_page, [](int gr, int n, int s) {
        int v = -s, h = n + s;
        return Triple{gr + 2 * h, 2 * h, 2 * v};
    });
}

std::vector<PageData> ek_sequence_general(const MFComplex& reduced, const ParamPoly& p,
                                          DegreeWindow window, int max_page, Exec exec) {
    (void)p;
    PositiveHomology h1(reduced, window.q_max + 2, exec);
    auto [j_lo, j_hi] = h1.chains().j_range();
    auto [k_lo, k_hi] = h1.chains().k_range();
    FilteredBlocks fb;
    // blocks merge all q in the window; only (gr_h, gr_v) are tracked
    std::map<std::pair<int, int>, std::vector<SliceKey>> members;
    for (int h = j_lo / 2; h <= j_hi / 2; ++h)
        for (int v = k_lo / 2; v <= k_hi / 2; ++v) {
            std::vector<SliceKey> ks;
            for (int q = window.q_min; q <= window.q_max; ++q) {
                SliceKey s{q, 2 * h, 2 * v};
                if (h1.dim(s) > 0) ks.push_back(s);
            }
            members[{h, v}] = std::move(ks);
        }
    auto block_dim = [&](int h, int v) {
        long d = 0;
        for (auto& s : members[{h, v}]) d += h1.dim(s);
        return d;
    };
    for (int n = (k_lo - j_hi) / 2 - 1; n <= (k_hi - j_lo) / 2 + 1; ++n) {
        std::vector<std::pair<int, int>> blocks;
        for (int h = j_lo / 2; h <= j_hi / 2; ++h) {
            int v = n + h;
            if (2 * v < k_lo || 2 * v > k_hi) continue;
            long d = block_dim(h, v);
            if (d > 0) blocks.push_back({h, static_cast<int>(d)});
        }
        if (!blocks.empty()) fb.cols[n] = blocks;
    }
    for (auto it = fb.cols.begin(); it != fb.cols.end(); ++it) {
        int n = it->first;
        auto jt = fb.cols.find(n + 1);
        if (jt == fb.cols.end()) continue;
        int sd = 0, dd = 0;
        for (auto& [s, d] : it->second) sd += d;
        for (auto& [s, d] : jt->second) dd += d;
        SparseMatQ m(dd, sd);
        int soff = 0;
        for (auto& [h, d] : it->second) {
            int v = n + h;
            auto& srcs = members[{h, v}];
            std::map<SliceKey, int> srcoff;
            int o = soff;
            for (auto& s : srcs) {
                srcoff[s] = o;
                o += static_cast<int>(h1.dim(s));
            }
            for (auto& [dh, op] : std::vector<std::pair<int, const PolyMat*>>{
                     {0, &reduced.d_vert}, {-1, &reduced.d_minus}}) {
                int th = h + dh, tv = n + 1 + th;
                if (2 * tv < k_lo || 2 * tv > k_hi) continue;
                int toff0 = 0;
                bool found = false;
                for (auto& [s2, d2] : jt->second) {
                    if (s2 == th) {
                        found = true;
                        break;
                    }
                    toff0 += d2;
                }
                if (!found) continue;
                auto& dsts = members[{th, tv}];
                std::map<SliceKey, int> dstoff;
                int od = toff0;
                for (auto& t : dsts) {
                    dstoff[t] = od;
                    od += static_cast<int>(h1.dim(t));
                }
                for (auto& s : srcs)
                    for (auto& t : dsts) {
                        SparseMatQ block = h1.induced(*op, s, t);
                        if (block.is_zero()) continue;
                        for (int r = 0; r < block.rows(); ++r)
                            for (auto& [cc, v2] : block.row(r))
                                m.add_to(dstoff[t] + r, srcoff[s] + cc, v2);
                    }
            }
            soff += d;
        }
        fb.d[n] = std::move(m);
    }
    auto pages = filtered_pages(fb, max_page);
    std::vector<std::pair<int, std::vector<std::map<std::pair<int, int>, PageCell>>>> runs;
    runs.push_back({0, std::move(pages)});
    return assemble_pages(runs, max_page, [](int, int n, int s) {
        return Triple{0, 2 * s, 2 * (n + s)};
    });
}

} // namespace krh

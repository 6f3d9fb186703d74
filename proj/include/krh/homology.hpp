#ifndef KRH_HOMOLOGY_HPP
#define KRH_HOMOLOGY_HPP

#include "krh/matfact.hpp"
#include "krh/sparsemat.hpp"

#include <compare>
#include <deque>
#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace krh {

struct DegreeWindow {
    int q_min = 0, q_max = 0;
};

// triple grading (i, j, k) = (q, 2 gr_h, 2 gr_v)
struct Triple {
    int i = 0, j = 0, k = 0;
    auto operator<=>(const Triple&) const = default;
};
using TripleGradedDims = std::map<Triple, long>;
using BigradedDims = std::map<std::pair<int, int>, long>;

enum class Exec { serial, parallel };

struct SliceKey {
    int q = 0, j = 0, k = 0;
    auto operator<=>(const SliceKey&) const = default;
};

std::vector<Monomial> monomials_of_degree(const std::vector<int>& vars, int degree,
                                          bool reversed = false);

// Chain bases of the graded slices of a free complex, q enumerated up to q_hi.
class ChainSlicer {
public:
    ChainSlicer() = default;
    ChainSlicer(const MFComplex& c, int q_hi, bool reversed = false);

    struct Space {
        std::vector<std::pair<int, Monomial>> basis;
        std::map<std::pair<int, Monomial>, int> index;
        int dim() const { return static_cast<int>(basis.size()); }
    };

    const Space& slice(const SliceKey& s) const;
    long slice_dim(const SliceKey& s) const { return slice(s).dim(); }
    std::vector<SliceKey> keys() const;
    int q_hi() const { return q_hi_; }
    int q_lo() const { return q_lo_; }
    std::pair<int, int> j_range() const { return {j_lo_, j_hi_}; }
    std::pair<int, int> k_range() const { return {k_lo_, k_hi_}; }
    const MFComplex& complex() const { return *c_; }

    // matrix block of op from one slice to another
    SparseMatQ op_matrix(const PolyMat& op, const SliceKey& from, const SliceKey& to) const;

private:
    const MFComplex* c_ = nullptr;
    int q_hi_ = 0, q_lo_ = 0, j_lo_ = 0, j_hi_ = 0, k_lo_ = 0, k_hi_ = 0;
    std::map<SliceKey, Space> slices_;
    static const Space empty_;
};

// Positive homology H(C, d_+) slice by slice, with representative cycles.
class PositiveHomology {
public:
    PositiveHomology(const MFComplex& c, int q_hi, Exec exec, bool reversed = false);

    const ChainSlicer& chains() const { return slicer_; }
    bool complete(const SliceKey& s) const { return s.q + 2 <= slicer_.q_hi(); }
    long dim(const SliceKey& s) const;
    std::map<SliceKey, long> dims() const;

    SparseVecQ chain_of(const SliceKey& s, int index) const;
    SparseVecQ hom_coords(const SliceKey& s, const SparseVecQ& chain) const;
    // induced matrix of op on homology, from slice to slice
    SparseMatQ induced(const PolyMat& op, const SliceKey& from, const SliceKey& to) const;

private:
    struct SliceData {
        RrefBasis image;
        QuotientCoords hom;
    };
    ChainSlicer slicer_;
    std::map<SliceKey, SliceData> data_;
};

// H(H(C, d_+), d_v^*) with induced endomorphisms.
class DoubleHomologyEngine {
public:
    DoubleHomologyEngine(const MFComplex& c, int q_hi, Exec exec, bool reversed = false);

    const PositiveHomology& level1() const { return h1_; }
    bool complete(const SliceKey& s) const { return h1_.complete(s); }
    long dim(const SliceKey& s) const;
    TripleGradedDims dims(int q_report_hi) const;

    // induced endomorphism on the double homology; opdeg its grading degree
    std::map<Triple, SparseMatQ> induced_endo(const PolyMat& op, const GradedShift& opdeg) const;
    // matrix of the first spectral differential d_1 for the given d_minus
    std::map<Triple, SparseMatQ> d1_matrices(const PolyMat& dminus, const GradedShift& opdeg) const;

private:
    SparseVecQ class_chain(const SliceKey& s, int index) const;
    PositiveHomology h1_;
    std::map<SliceKey, SparseMatQ> dv_;          // induced d_v^*: s -> s + (0,0,2)
    std::deque<RrefBasis> images_storage_;
    std::map<SliceKey, QuotientCoords> level2_;  // over level-1 coordinates
};

// H(H(C, d_tot), d_v^*) for p = x^{N+1}; slices merged along gr_N = q + (N-1) gr_h.
class TotalHomologyEngine {
public:
    TotalHomologyEngine(const MFComplex& c, int N, int q_hi, Exec exec);

    // (gr_N, k) -> dim over the gr_N values that the window certifies
    BigradedDims dims() const;
    int grN_valid_hi() const { return grN_valid_hi_; }

    // induced endomorphism (e.g. multiplication by an edge variable);
    // d_grN is its gr_N-degree, d_k its k-degree
    std::map<std::pair<int, int>, SparseMatQ> induced_endo(const PolyMat& op, int d_grN,
                                                           int d_k) const;

private:
    struct Merged {
        std::vector<SliceKey> parts;
        std::vector<int> offsets;
        int dim = 0;
    };
    using MKey = std::pair<int, int>;  // (gr_N, k)

    const Merged& merged(const MKey& m) const;
    SparseMatQ merged_matrix(const std::vector<std::pair<const PolyMat*, GradedShift>>& ops,
                             const MKey& from, const MKey& to) const;
    SparseVecQ class_chain(const MKey& m, int index) const;

    int n_ = 0;
    ChainSlicer slicer_;
    std::map<MKey, Merged> merged_;
    std::deque<RrefBasis> images_storage_;
    std::map<MKey, QuotientCoords> h1_;
    std::map<MKey, SparseMatQ> dv_;
    std::map<MKey, QuotientCoords> level2_;
    int grN_valid_hi_ = 0;
    const PolyMat* dplus_ = nullptr;
    const PolyMat* dminus_ = nullptr;
};

// Total homology of (C, d_+ + d_v) graded by (gr_+, gr'_-1) = ((j+k)/2, q - j);
// exact per gr'_-1 line.
BigradedDims total_homology_plus_vert(const MFComplex& c, int gr_lo, int gr_hi, Exec exec);

// ---------------------------------------------------------------------------
// Spectral sequences

struct PageData {
    int page = 0;
    TripleGradedDims dims;     // raw complex gradings
    TripleGradedDims d_ranks;  // rank of d_page leaving each degree
    bool converged = false;    // all later differentials vanish
};

// E_k(p) for p = x^{N+1} on the reduced complex: filtration by gr_h on
// (H+_p, d_v^* + d_-^*).  Exact per gr'_N = q + 2N gr_h; pages are reported
// for gr'_N in [lo, hi].
std::vector<PageData> ek_sequence_N(const MFComplex& reduced, int N, int grN_lo, int grN_hi,
                                    int max_page, Exec exec);

// E_k(-1): filtration on (C, d_+ + d_v) with E_1 = H(C, d_+), E_2 = H(L).
// Exact per gr'_-1 = q - 2 gr_h in [lo, hi].
std::vector<PageData> ek_sequence_minus1(const MFComplex& reduced0, int gr_lo, int gr_hi,
                                         int max_page, Exec exec);

// general p: q-window truncated variant; classes keyed by (0, j, k) only
std::vector<PageData> ek_sequence_general(const MFComplex& reduced, const ParamPoly& p,
                                          DegreeWindow window, int max_page, Exec exec);

// ---------------------------------------------------------------------------
// generic filtered-complex page machinery (exposed for tests)

struct FilteredBlocks {
    // column n: blocks (filtration s, dim), ascending in s
    std::map<int, std::vector<std::pair<int, int>>> cols;
    std::map<int, SparseMatQ> d;  // V_n -> V_{n+1}; drops filtration by >= 0
};

struct PageCell {
    long dim = 0;
    long drank = 0;
};

// pages[r] maps (n, s) -> cell, r = 0..max_page
std::vector<std::map<std::pair<int, int>, PageCell>> filtered_pages(const FilteredBlocks& fb,
                                                                    int max_page);

} // namespace krh

#endif

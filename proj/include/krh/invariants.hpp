#ifndef KRH_INVARIANTS_HPP
#define KRH_INVARIANTS_HPP

#include "krh/homology.hpp"
#include "krh/moypoly.hpp"

#include <optional>
#include <string>

namespace krh {

// global grading shifts (Sec. 2.7-2.8)
GradedShift reduced_shift(int w, int b);
GradedShift middle_shift(int w, int b);
GradedShift unreduced_shift(int w, int b);

struct Options {
    int pad = 3;
    Exec exec = Exec::parallel;
    int marked_edge = 0;  // 0: lowest edge
};

struct HomologyResult {
    TripleGradedDims dims;  // global shifts applied
    DegreeWindow window;    // reporting window, shifted coordinates
    bool window_truncated = false;
    int writhe = 0, strands = 0;
};

DegreeWindow default_window(const Laurent2& reduced_poly_num, int pad);

HomologyResult homfly_homology(const BraidWord& w, const Options& opt = {});
HomologyResult middle_homology(const BraidWord& w, const Options& opt = {});
HomologyResult unreduced_homology(const BraidWord& w, const Options& opt = {});

struct SlnResult {
    BigradedDims dims;  // (I, J) = (gr_N shifted, gr_v)
    bool window_truncated = false;
    int N = 0;
};

SlnResult sln_homology(const BraidWord& w, int N, bool reduced, const Options& opt = {});

// exact polynomial identity chi(dims) = P within the window support
bool euler_check(const TripleGradedDims& dims, const Laurent2& P);
// series version for unreduced homologies of links: compare ascending series
// coefficients for q in [q_lo, q_hi]
bool euler_check_series(const TripleGradedDims& dims, const Laurent2Frac& P, int q_lo, int q_hi);

Laurent2 chi_of_dims(const TripleGradedDims& dims);
Laurent1 chi_of_sln(const BigradedDims& dims);

struct ThinnessVerdict {
    bool thin = false;
    std::map<int, long> delta_support;
    int sigma = 0;
};
ThinnessVerdict delta_thinness(const TripleGradedDims& dims, int sigma);

// Seifert-matrix signature, sign fixed so positive knots are positive
int signature(const BraidWord& w);

// smallest N0 <= n_max with H_N equal to the regraded HOMFLY homology for all
// N in [N0, n_max]; 0 when none
int stabilization(const BraidWord& w, int n_max, const Options& opt = {});

TripleGradedDims regrade_to_sln(const TripleGradedDims& dims, int N);  // keys (I, J, 0)
BigradedDims regraded_bigraded(const TripleGradedDims& dims, int N);

struct TotallyReducedResult {
    BigradedDims dims;  // (q, delta) with delta = I + 2J (mod 2N-4 folded in)
    long total = 0;
};
TotallyReducedResult totally_reduced(const BraidWord& w, int edge_i, int edge_j, int N,
                                     const Options& opt = {});

struct SkeinCheckResult {
    bool closes = false;
    std::string detail;
};
// the three words must agree except for one crossing: positive in `plus`,
// negative in `minus`, absent in `zero`
SkeinCheckResult skein_triple_check(const BraidWord& plus, const BraidWord& minus,
                                    const BraidWord& zero, int N, const Options& opt = {});

// ---------------------------------------------------------------------------
// corpus and reports

const std::vector<std::pair<std::string, std::string>>& corpus_words();

struct InvariantReport {
    std::string link;
    std::string braid;
    int writhe = 0, strands = 0;
    Laurent2Frac reduced_poly;
    TripleGradedDims homfly_dims;
    std::optional<BigradedDims> sl2_dims;
    std::optional<int> sigma;
    std::optional<bool> thin;
    std::optional<int> stabilization_n0;
    bool euler_ok = false;
    bool window_truncated = false;
    DegreeWindow window;
};

struct ReportOptions {
    Options base;
    bool with_sl2 = true;
    bool with_stabilization = false;
    int stabilization_n_max = 3;
};

InvariantReport full_report(const std::string& name, const BraidWord& w,
                            const ReportOptions& opt = {});
std::string report_json(const InvariantReport& r);
InvariantReport report_from_json(const std::string& text);
bool reports_equal(const InvariantReport& a, const InvariantReport& b);

std::string render_dots(const TripleGradedDims& dims, int sigma_hint);

} // namespace krh

#endif

#ifndef KRH_MATFACT_HPP
#define KRH_MATFACT_HPP

#include "krh/diagram.hpp"
#include "krh/multipoly.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace krh {

// Parameter polynomial p(x) as dense coefficients, p[i] the coefficient of x^i.
using ParamPoly = std::vector<Rational>;

ParamPoly param_x_pow(int n);               // x^n
ParamPoly param_derivative(const ParamPoly& p);
MultiPoly param_apply(const ParamPoly& p, const MultiPoly& arg);
bool param_is_monomial(const ParamPoly& p, int* degree = nullptr);

// Grading shift triple (i, j, k) = (q, 2 gr_h, 2 gr_v).
struct GradedShift {
    int i = 0, j = 0, k = 0;
    GradedShift operator+(const GradedShift& o) const { return {i + o.i, j + o.j, k + o.k}; }
    bool operator==(const GradedShift&) const = default;
};

// Sparse matrix with polynomial entries.
class PolyMat {
public:
    PolyMat() = default;
    PolyMat(int rows, int cols) : rows_(rows), cols_(cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    void set(int r, int c, MultiPoly p);
    void add(int r, int c, const MultiPoly& p);
    MultiPoly get(int r, int c) const;
    const std::map<std::pair<int, int>, MultiPoly>& entries() const { return e_; }
    bool is_zero() const { return e_.empty(); }

    PolyMat operator*(const PolyMat& o) const;
    PolyMat operator+(const PolyMat& o) const;
    PolyMat scaled(const Rational& c) const;
    bool operator==(const PolyMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }

    PolyMat transform(const std::function<MultiPoly(const MultiPoly&)>& f) const;
    static PolyMat scalar(int n, const MultiPoly& p);  // p * Id_n

private:
    int rows_ = 0, cols_ = 0;
    std::map<std::pair<int, int>, MultiPoly> e_;
};

// Z-graded complex of matrix factorizations: free module with generators
// carrying grading shifts and three sparse polynomial differentials.
struct MFComplex {
    std::vector<int> ring_vars;         // polynomial generators of the base ring
    std::vector<GradedShift> gens;
    PolyMat d_plus, d_minus, d_vert;
    MultiPoly potential;
    // false: d_v commutes with d_+- (raw local/tensor convention);
    // true: d_v was rescaled by (-1)^{gr_h} and anticommutes
    bool dv_sign_adjusted = false;

    int rank() const { return static_cast<int>(gens.size()); }
    int gr_h(int gen) const { return gens[gen].j / 2; }
    int gr_v(int gen) const { return gens[gen].k / 2; }
};

struct MFReport {
    bool dplus_sq = false, dminus_sq = false, potential_id = false;
    bool dvert_sq = false, dvert_plus = false, dvert_minus = false;
    std::optional<std::pair<int, int>> first_failure;
    std::string failed_identity;
    bool all_ok() const {
        return dplus_sq && dminus_sq && potential_id && dvert_sq && dvert_plus && dvert_minus;
    }
};

// Check d+^2 = d-^2 = 0, d+d- + d-d+ = w Id, d_v^2 = 0 and the (anti)commutation
// of d_v with d+- under the complex's sign convention.  Report-only.
MFReport verify_mf(const MFComplex& c);

enum class LocalKind { singular, positive, negative, split };

// Local KR factor of an elementary tangle on edges (i, j, k, l), over the
// local ring with X_l eliminated.  Entries use the edge labels as variables.
MFComplex local_factor(LocalKind kind, int ei, int ej, int ek, int el, const ParamPoly& p);

// Unreduced factor U_p(i) on a marked edge.
MFComplex unreduced_factor(int edge, const ParamPoly& p);

// Tensor product over the common base ring; Koszul signs on the second factor.
MFComplex tensor(const MFComplex& a, const MFComplex& b);

// Multiply d_v by (-1)^{gr_h}, switching to the anticommuting convention.
MFComplex adjust_dv_sign(const MFComplex& c);

// Alternate tensor sign rule (signs on the first factor); used to check that
// the convention choice does not affect homology.
MFComplex tensor_alt(const MFComplex& a, const MFComplex& b);

// ---------------------------------------------------------------------------
// Koszul matrices

struct KoszulMatrix {
    std::vector<std::pair<MultiPoly, MultiPoly>> rows;
    MultiPoly potential() const;
};

KoszulMatrix row_operation(const KoszulMatrix& k, int i, int j, const MultiPoly& c);

// Exclude variable x using row r whose b-entry is monic in x; other entries
// are reduced modulo b_r (degree-1: substitution; higher: power reduction).
KoszulMatrix exclude_variable(const KoszulMatrix& k, int row, int x);

MFComplex koszul_complex(const KoszulMatrix& k);

// d_-(H) = d_- + d_+ H - H d_+ on a complex supported in three adjacent
// horizontal degrees; H maps the top degree to the bottom one.
MFComplex twist(const MFComplex& c, const PolyMat& h);

// ---------------------------------------------------------------------------
// Global complexes

enum class Variant { middle, reduced_global, reduced_edge, unreduced };

struct AssembleOptions {
    Variant variant = Variant::middle;
    int marked_edge = 0;             // reduced_edge
    std::vector<int> marks;          // unreduced: one edge per graph component (auto if empty)
    bool alt_tensor_signs = false;   // convention experiment
};

struct AssembledComplex {
    MFComplex complex;
    EdgeRingPresentation ring;  // presentation the entries are written in
    TangleDiagram diagram;
};

AssembledComplex assemble(const TangleDiagram& d, const ParamPoly& p, const AssembleOptions& opt);

// convenience: multiplication by an edge variable as an endomorphism
PolyMat edge_multiplication(const AssembledComplex& ac, int edge);

std::string dump_complex_json(const MFComplex& c);

} // namespace krh

#endif

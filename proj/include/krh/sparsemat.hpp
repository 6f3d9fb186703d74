#ifndef KRH_SPARSEMAT_HPP
#define KRH_SPARSEMAT_HPP

#include "krh/rational.hpp"

#include <utility>
#include <vector>

namespace krh {

// Sparse vector over Q, entries sorted by index, no stored zeros.
using SparseVecQ = std::vector<std::pair<int, Rational>>;

SparseVecQ sv_add(const SparseVecQ& a, const SparseVecQ& b);
SparseVecQ sv_axpy(const SparseVecQ& a, const Rational& c, const SparseVecQ& b);  // a + c*b
SparseVecQ sv_scale(const SparseVecQ& a, const Rational& c);
bool sv_is_zero(const SparseVecQ& a);

// Sparse matrix over Q with row-major storage.
class SparseMatQ {
public:
    SparseMatQ() = default;
    SparseMatQ(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void set(int r, int c, const Rational& v);
    Rational get(int r, int c) const;
    const SparseVecQ& row(int r) const { return data_[r]; }
    void add_to(int r, int c, const Rational& v);

    long nnz() const;
    bool is_zero() const;

    SparseVecQ apply(const SparseVecQ& x) const;           // M * x
    SparseMatQ operator*(const SparseMatQ& o) const;
    SparseMatQ operator+(const SparseMatQ& o) const;
    SparseMatQ scaled(const Rational& c) const;
    bool operator==(const SparseMatQ& o) const;

    SparseMatQ transposed() const;
    SparseMatQ permuted(const std::vector<int>& row_perm, const std::vector<int>& col_perm) const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<SparseVecQ> data_;
};

struct RankKernelImage {
    int rank = 0;
    std::vector<SparseVecQ> kernel;          // basis of the null space (length = cols each)
    std::vector<SparseVecQ> image;           // original pivot columns (length = rows each)
    std::vector<std::pair<int, int>> pivots;  // (row, col) in elimination order
};

// Exact rank / kernel / image via fraction-free (Bareiss) elimination on the
// integer-scaled rows, sparse pivoting by least fill-in, back-substitution
// over Q for the kernel.
RankKernelImage rank_kernel_image(const SparseMatQ& M);

int rank_of(const SparseMatQ& M);

// Reduced-row-echelon basis of a subspace of Q^n; supports membership tests,
// reduction mod the subspace and dimension queries.
class RrefBasis {
public:
    explicit RrefBasis(int ambient = 0) : ambient_(ambient) {}

    int ambient() const { return ambient_; }
    int dim() const { return static_cast<int>(rows_.size()); }

    SparseVecQ reduce(SparseVecQ v) const;
    bool insert(SparseVecQ v);  // true if the dimension grew
    bool contains(const SparseVecQ& v) const { return sv_is_zero(reduce(v)); }

    const std::vector<SparseVecQ>& rows() const { return rows_; }

private:
    int ambient_;
    std::vector<SparseVecQ> rows_;  // rref rows, pivot entry 1
    std::vector<int> pivots_;       // pivot column of each row
    int row_of_pivot(int col) const;
};

// Coordinates on a quotient space span(cycles)/image: picks a maximal subset
// of the given cycles independent mod image and expresses further vectors in
// that basis.
class QuotientCoords {
public:
    QuotientCoords() = default;
    QuotientCoords(const RrefBasis* image, int ambient) : image_(image), ambient_(ambient) {}

    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<SparseVecQ>& basis_cycles() const { return basis_; }

    // offer a cycle as a potential basis vector
    bool offer(const SparseVecQ& cycle);
    // coordinates of z in the chosen basis, modulo image; throws if z is not
    // in span(basis) + image
    SparseVecQ coords(const SparseVecQ& z) const;

private:
    const RrefBasis* image_ = nullptr;
    int ambient_ = 0;
    std::vector<SparseVecQ> basis_;      // chosen representative cycles
    std::vector<SparseVecQ> red_rows_;   // reduced forms, echelon with pivot 1
    std::vector<SparseVecQ> coord_rows_; // combination of basis_ giving each red row
    std::vector<int> pivots_;
};

} // namespace krh

#endif

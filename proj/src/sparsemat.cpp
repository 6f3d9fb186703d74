#include "krh/sparsemat.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace krh {

SparseVecQ sv_axpy(const SparseVecQ& a, const Rational& c, const SparseVecQ& b) {
    if (c.is_zero()) return a;
    SparseVecQ r;
    r.reserve(a.size() + b.size());
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() || j != b.end()) {
        if (j == b.end() || (i != a.end() && i->first < j->first)) {
            r.push_back(*i++);
        } else if (i == a.end() || j->first < i->first) {
            r.push_back({j->first, c * j->second});
            ++j;
        } else {
            Rational v = i->second + c * j->second;
            if (!v.is_zero()) r.push_back({i->first, v});
            ++i, ++j;
        }
    }
    return r;
}

SparseVecQ sv_add(const SparseVecQ& a, const SparseVecQ& b) { return sv_axpy(a, Rational(1), b); }

SparseVecQ sv_scale(const SparseVecQ& a, const Rational& c) {
    SparseVecQ r;
    if (c.is_zero()) return r;
    r.reserve(a.size());
    for (auto& [i, v] : a) r.push_back({i, c * v});
    return r;
}

bool sv_is_zero(const SparseVecQ& a) { return a.empty(); }

void SparseMatQ::set(int r, int c, const Rational& v) {
    auto& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& p, int col) { return p.first < col; });
    if (it != row.end() && it->first == c) {
        if (v.is_zero())
            row.erase(it);
        else
            it->second = v;
    } else if (!v.is_zero()) {
        row.insert(it, {c, v});
    }
}

void SparseMatQ::add_to(int r, int c, const Rational& v) {
    if (v.is_zero()) return;
    set(r, c, get(r, c) + v);
}

Rational SparseMatQ::get(int r, int c) const {
    const auto& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& p, int col) { return p.first < col; });
    if (it != row.end() && it->first == c) return it->second;
    return Rational(0);
}

long SparseMatQ::nnz() const {
    long n = 0;
    for (auto& row : data_) n += static_cast<long>(row.size());
    return n;
}

bool SparseMatQ::is_zero() const { return nnz() == 0; }

SparseVecQ SparseMatQ::apply(const SparseVecQ& x) const {
    std::map<int, Rational> acc;
    for (auto& [c, xc] : x) {
        // column access: walk rows; cheaper to transpose for heavy use, but
        // slice matrices are small and short-lived
        for (int r = 0; r < rows_; ++r) {
            Rational v = get(r, c);
            if (v.is_zero()) continue;
            auto it = acc.find(r);
            if (it == acc.end())
                acc[r] = v * xc;
            else {
                it->second += v * xc;
            }
        }
    }
    SparseVecQ out;
    for (auto& [r, v] : acc)
        if (!v.is_zero()) out.push_back({r, v});
    return out;
}

SparseMatQ SparseMatQ::operator*(const SparseMatQ& o) const {
    if (cols_ != o.rows()) throw error("SparseMatQ: dimension mismatch in product");
    SparseMatQ r(rows_, o.cols());
    for (int i = 0; i < rows_; ++i) {
        std::map<int, Rational> acc;
        for (auto& [k, v] : data_[i])
            for (auto& [j, w] : o.data_[k]) {
                auto it = acc.find(j);
                if (it == acc.end())
                    acc[j] = v * w;
                else
                    it->second += v * w;
            }
        for (auto& [j, v] : acc)
            if (!v.is_zero()) r.data_[i].push_back({j, v});
    }
    return r;
}

SparseMatQ SparseMatQ::operator+(const SparseMatQ& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw error("SparseMatQ: dimension mismatch in sum");
    SparseMatQ r(rows_, cols_);
    for (int i = 0; i < rows_; ++i) r.data_[i] = sv_add(data_[i], o.data_[i]);
    return r;
}

SparseMatQ SparseMatQ::scaled(const Rational& c) const {
    SparseMatQ r(rows_, cols_);
    for (int i = 0; i < rows_; ++i) r.data_[i] = sv_scale(data_[i], c);
    return r;
}

bool SparseMatQ::operator==(const SparseMatQ& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

SparseMatQ SparseMatQ::transposed() const {
    SparseMatQ r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (auto& [j, v] : data_[i]) r.data_[j].push_back({i, v});
    return r;
}

SparseMatQ SparseMatQ::permuted(const std::vector<int>& row_perm,
                                const std::vector<int>& col_perm) const {
    SparseMatQ r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (auto& [j, v] : data_[i]) r.set(row_perm[i], col_perm[j], v);
    return r;
}

namespace {

using IRow = std::map<int, Int>;

Int row_gcd(const IRow& r) {
    Int g = 0;
    for (auto& [c, v] : r) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

} // namespace

RankKernelImage rank_kernel_image(const SparseMatQ& M) {
    RankKernelImage out;
    const int nr = M.rows(), nc = M.cols();

    // scale rows to integers
    std::vector<IRow> rows(nr);
    for (int i = 0; i < nr; ++i) {
        Int l = 1;
        for (auto& [c, v] : M.row(i)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.den().get_mpz_t());
        for (auto& [c, v] : M.row(i)) rows[i][c] = v.num() * (l / v.den());
    }

    std::vector<bool> row_done(nr, false);
    std::vector<bool> col_done(nc, false);
    std::vector<int> col_count(nc, 0);
    for (int i = 0; i < nr; ++i)
        for (auto& [c, v] : rows[i]) ++col_count[c];

    // echelon rows in elimination order, as (pivot row index, pivot col)
    std::vector<std::pair<int, int>> pivots;
    Int prev_pivot = 1;

    for (;;) {
        // Markowitz-style pivot: minimize (nnz(row)-1)*(nnz(col)-1)
        long best_score = -1;
        int br = -1, bc = -1;
        for (int i = 0; i < nr; ++i) {
            if (row_done[i] || rows[i].empty()) continue;
            long rw = static_cast<long>(rows[i].size()) - 1;
            for (auto& [c, v] : rows[i]) {
                if (col_done[c]) continue;
                long score = rw * (col_count[c] - 1);
                if (best_score < 0 || score < best_score ||
                    (score == best_score && (i < br || (i == br && c < bc)))) {
                    best_score = score;
                    br = i;
                    bc = c;
                }
            }
        }
        if (br < 0) break;

        Int pivot = rows[br][bc];
        for (int i = 0; i < nr; ++i) {
            if (i == br || row_done[i] || rows[i].empty()) continue;
            auto it = rows[i].find(bc);
            Int f = (it == rows[i].end()) ? Int(0) : it->second;
            // fraction-free update: row_i = (pivot*row_i - f*row_br) / prev_pivot.
            // Rows with f = 0 still get the pivot/prev_pivot rescale; skipping it
            // would break the exact divisibility of later steps.
            IRow nrow;
            auto a = rows[i].begin();
            auto b = rows[br].begin();
            while (a != rows[i].end() || (f != 0 && b != rows[br].end())) {
                int ca = (a != rows[i].end()) ? a->first : nc;
                int cb = (f != 0 && b != rows[br].end()) ? b->first : nc;
                int c = std::min(ca, cb);
                Int v = 0;
                if (ca == c) v += pivot * a++->second;
                if (cb == c) v -= f * b++->second;
                if (v != 0) {
                    Int q;
                    mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), prev_pivot.get_mpz_t());
                    nrow[c] = q;
                }
            }
            for (auto& [c, v] : rows[i])
                if (!nrow.count(c)) --col_count[c];
            for (auto& [c, v] : nrow)
                if (!rows[i].count(c)) ++col_count[c];
            rows[i] = std::move(nrow);
        }
        row_done[br] = true;
        col_done[bc] = true;
        pivots.push_back({br, bc});
        prev_pivot = pivot;
    }

    out.rank = static_cast<int>(pivots.size());
    out.pivots = pivots;

    // image basis: original pivot columns
    for (auto& [r, c] : pivots) {
        SparseVecQ col;
        for (int i = 0; i < nr; ++i) {
            Rational v = M.get(i, c);
            if (!v.is_zero()) col.push_back({i, v});
        }
        out.image.push_back(std::move(col));
    }

    // kernel by back substitution over Q
    std::set<int> pivot_cols;
    for (auto& [r, c] : pivots) pivot_cols.insert(c);
    for (int f = 0; f < nc; ++f) {
        if (pivot_cols.count(f)) continue;
        std::map<int, Rational> x;
        x[f] = Rational(1);
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
            auto& [pr, pc] = *it;
            Rational s(0);
            for (auto& [c, v] : rows[pr]) {
                if (c == pc) continue;
                auto xv = x.find(c);
                if (xv != x.end()) s += Rational(v) * xv->second;
            }
            if (!s.is_zero()) x[pc] = -s / Rational(rows[pr][pc]);
        }
        SparseVecQ vec;
        for (auto& [c, v] : x)
            if (!v.is_zero()) vec.push_back({c, v});
        out.kernel.push_back(std::move(vec));
    }

    return out;
}

int rank_of(const SparseMatQ& M) { return rank_kernel_image(M).rank; }

int RrefBasis::row_of_pivot(int col) const {
    for (size_t i = 0; i < pivots_.size(); ++i)
        if (pivots_[i] == col) return static_cast<int>(i);
    return -1;
}

SparseVecQ RrefBasis::reduce(SparseVecQ v) const {
    // rref rows have zeros at the other pivot columns, so a single sweep works
    for (size_t k = 0; k < v.size();) {
        int r = row_of_pivot(v[k].first);
        if (r < 0) {
            ++k;
            continue;
        }
        Rational c = v[k].second;
        v = sv_axpy(v, -c, rows_[r]);
        // restart scan at the same position: entries before k are non-pivot cols
    }
    return v;
}

bool RrefBasis::insert(SparseVecQ v) {
    v = reduce(std::move(v));
    if (sv_is_zero(v)) return false;
    int pc = v.front().first;
    Rational lead = v.front().second;
    v = sv_scale(v, Rational(1) / lead);
    // clear the new pivot column from existing rows
    for (size_t i = 0; i < rows_.size(); ++i) {
        Rational c(0);
        for (auto& [col, val] : rows_[i])
            if (col == pc) {
                c = val;
                break;
            }
        if (!c.is_zero()) rows_[i] = sv_axpy(rows_[i], -c, v);
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(pc);
    return true;
}

bool QuotientCoords::offer(const SparseVecQ& cycle) {
    SparseVecQ v = image_ ? image_->reduce(cycle) : cycle;
    SparseVecQ c;
    // reduce against existing rows, tracking coordinates
    for (size_t i = 0; i < red_rows_.size(); ++i) {
        Rational f(0);
        for (auto& [col, val] : v)
            if (col == pivots_[i]) {
                f = val;
                break;
            }
        if (!f.is_zero()) {
            v = sv_axpy(v, -f, red_rows_[i]);
            c = sv_axpy(c, -f, coord_rows_[i]);
        }
    }
    if (sv_is_zero(v)) return false;
    int idx = static_cast<int>(basis_.size());
    c = sv_axpy(c, Rational(1), SparseVecQ{{idx, Rational(1)}});
    Rational lead = v.front().second;
    v = sv_scale(v, Rational(1) / lead);
    c = sv_scale(c, Rational(1) / lead);
    basis_.push_back(cycle);
    pivots_.push_back(v.front().first);
    red_rows_.push_back(std::move(v));
    coord_rows_.push_back(std::move(c));
    return true;
}

SparseVecQ QuotientCoords::coords(const SparseVecQ& z) const {
    SparseVecQ v = image_ ? image_->reduce(z) : z;
    SparseVecQ c;
    bool progress = true;
    while (progress && !sv_is_zero(v)) {
        progress = false;
        for (size_t i = 0; i < red_rows_.size(); ++i) {
            Rational f(0);
            for (auto& [col, val] : v)
                if (col == pivots_[i]) {
                    f = val;
                    break;
                }
            if (!f.is_zero()) {
                v = sv_axpy(v, -f, red_rows_[i]);
                c = sv_axpy(c, f, coord_rows_[i]);
                progress = true;
            }
        }
    }
    if (!sv_is_zero(v)) throw error("QuotientCoords: vector not in span");
    return c;
}

} // namespace krh

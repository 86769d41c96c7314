#pragma once
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "semiinf/scalar.hpp"

namespace semiinf {

// sorted by index, no explicit zeros
using SparseVec = std::vector<std::pair<int, Scalar>>;

class Accum {
public:
    void add(int i, const Scalar& v);
    void add_mul(int i, const Scalar& a, const Scalar& b);
    void add_vec(const Scalar& a, const SparseVec& v);
    SparseVec take();
    bool empty() const { return m_.empty(); }

private:
    std::unordered_map<int, Scalar> m_;
};

SparseVec sv_scale(const Scalar& a, const SparseVec& v);
SparseVec sv_add(const SparseVec& x, const SparseVec& y, const Scalar& b = Scalar(1));  // x + b*y
SparseVec sv_conj(const SparseVec& v);
Scalar sv_get(const SparseVec& v, int i);
Scalar sv_dot(const SparseVec& x, const SparseVec& y);  // sum x_i y_i (no conjugation)

// column-major sparse matrix
struct SparseMat {
    int rows = 0, cols = 0;
    std::vector<SparseVec> col;

    SparseMat() = default;
    SparseMat(int r, int c) : rows(r), cols(c), col(c) {}
    static SparseMat identity(int n, const Scalar& s = Scalar(1));
    bool is_zero() const;
    size_t nnz() const;
    SparseVec apply(const SparseVec& v) const;
    Scalar at(int r, int c) const { return sv_get(col[c], r); }
    std::vector<SparseVec> row_vectors() const;
};

SparseMat mat_mul(const SparseMat& a, const SparseMat& b);
SparseMat mat_add(const SparseMat& a, const SparseMat& b, const Scalar& s = Scalar(1));  // a + s*b
SparseMat mat_scale(const Scalar& s, const SparseMat& a);
SparseMat mat_adjoint(const SparseMat& a);  // conjugate transpose
SparseMat mat_transpose(const SparseMat& a);
bool mat_equal(const SparseMat& a, const SparseMat& b);
// rows [r0, r0+nr) x cols [c0, c0+nc)
SparseMat mat_block(const SparseMat& a, int r0, int nr, int c0, int nc);
// first differing entry, for failure witnesses
std::string mat_diff_witness(const SparseMat& a, const SparseMat& b);

// Reduced row echelon form of a growing set of vectors in a space of fixed dimension.
class Echelon {
public:
    explicit Echelon(int dim = 0) : dim_(dim) {}
    bool insert(SparseVec v);  // true if v was independent
    SparseVec reduce(const SparseVec& v) const;
    bool in_span(const SparseVec& v) const { return reduce(v).empty(); }
    int rank() const { return static_cast<int>(rows_.size()); }
    int dim() const { return dim_; }
    // coordinates of v (assumed in span) w.r.t. rows(): v[pivot_j]
    std::vector<Scalar> coords(const SparseVec& v) const;
    const std::vector<SparseVec>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return piv_; }
    // basis of the null space of the matrix whose rows were inserted
    std::vector<SparseVec> kernel() const;

private:
    int dim_;
    std::vector<SparseVec> rows_;
    std::vector<int> piv_;
    std::unordered_map<int, int> piv_row_;
    std::unordered_map<int, std::vector<int>> col_rows_;  // column -> rows touching it (superset)
};

int rank_of(const std::vector<SparseVec>& vecs, int dim);
int rank_of(const SparseMat& m);
// null space of m, vectors of length m.cols
std::vector<SparseVec> kernel_of(const SparseMat& m);
// null space of a vertical stack of matrices sharing a column space
std::vector<SparseVec> kernel_of_stack(const std::vector<const SparseMat*>& ms, int cols);
// basis of span{U} cap span{V}
std::vector<SparseVec> intersect_spans(const std::vector<SparseVec>& u, const std::vector<SparseVec>& v, int dim);
// image of m restricted to given input vectors
std::vector<SparseVec> apply_all(const SparseMat& m, const std::vector<SparseVec>& vs);
// matrix whose columns are vs
SparseMat from_columns(const std::vector<SparseVec>& vs, int dim);

// Hermitian form helpers; G is a Hermitian matrix, <x|y> = x^H G y
Scalar herm(const SparseMat& g, const SparseVec& x, const SparseVec& y);
// exact LDL^H test; on failure fills `why`
bool is_positive_definite(const SparseMat& g, std::string* why = nullptr);
bool is_hermitian(const SparseMat& g);
std::vector<SparseVec> gram_schmidt(const SparseMat& g, const std::vector<SparseVec>& vs);

// polynomials over Q(i), coefficient k is x^k
using Poly = std::vector<Scalar>;
Poly poly_trim(Poly p);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_divmod(const Poly& a, const Poly& b, Poly* rem);
Poly poly_gcd(Poly a, Poly b);
Poly poly_deriv(const Poly& p);
Scalar poly_eval(const Poly& p, const Scalar& x);
std::string poly_str(const Poly& p);
SparseVec poly_apply(const Poly& p, const SparseMat& m, const SparseVec& v);
// a polynomial annihilating m (product of Krylov minimal polynomials), seeded
Poly annihilating_poly(const SparseMat& m, unsigned seed);
// square-free part
Poly poly_squarefree(const Poly& p);
// rational roots of a polynomial with rational coefficients; remaining factor in *rest
std::vector<mpq_class> rational_roots(const Poly& p, Poly* rest);

}  // namespace semiinf

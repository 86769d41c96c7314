#pragma once
#include <string>
#include <vector>

#include "semiinf/complex.hpp"

namespace semiinf {

// Operators of the Kaehler package as matrices on relative coordinates.
struct KahlerOps {
    SparseMat qp, qm;    // full differentials
    SparseMat qbp, qbm;  // their adjoints
    SparseMat Qp, Qm;    // R-degree +1/2 parts
    SparseMat Sp, Sm;    // R-degree -1/2 parts
    SparseMat Qbp, Qbm;  // adjoints of the +1/2 parts
    SparseMat lap;       // [Q+, Qbar+]
    SparseMat pi, L, Lam;
    SparseMat gram;
};

// subset: generators of one summand (per-summand package); Lefschetz operators are always the full ones
KahlerOps assemble_kahler(const RelativeComplex& rc, const std::vector<int>* subset = nullptr);

struct Identity {
    std::string name;
    bool pass = true;
    std::string witness;
};

// square-zero, Hodge, adjoint, Lefschetz and Laplacian-invariance relations as exact matrix identities
std::vector<Identity> kahler_identities(const RelativeComplex& rc, const KahlerOps& k);
// [Q^a, Qbar_b] = 1/2 delta Delta on the R-degree +1/2 parts
std::vector<Identity> pva_kahler_identities(const RelativeComplex& rc, const KahlerOps& k);

// relative indices of a grade slice
std::vector<int> slice(const RelativeComplex& rc, int h2, int d);
std::vector<int> slice_h(const RelativeComplex& rc, int h2);
std::vector<int> h_values(const RelativeComplex& rc);
std::vector<int> d_values(const RelativeComplex& rc, int h2);

struct HodgeRow {
    int h2 = 0, d = 0;
    long chain = 0, harmonic = 0;
    long im_qp = 0, im_qbp = 0, im_qm = 0, im_qbm = 0;
    long h_qm = 0, h_qp = 0;
    bool decomposition = true;  // chain = harmonic + im Q + im Qbar for both signs
    bool orthogonal = true;     // the three summands are mutually orthogonal
    bool cohomology = true;     // H(Q-) = H(Q+) = ker Delta
    std::string witness;
};
HodgeRow hodge_row(const RelativeComplex& rc, const KahlerOps& k, int h2, int d);
// sum over d of (-1)^d dim, for chains and for H(Q-)
std::pair<long, long> euler_characteristic(const RelativeComplex& rc, const KahlerOps& k, int h2);
// harmonic basis of one (h, d) slice, relative coordinates
std::vector<SparseVec> harmonic_basis(const RelativeComplex& rc, const KahlerOps& k, int h2, int d);
// representatives of H(Q-) at (h, d): harmonic vectors
std::vector<SparseVec> cohomology_basis(const RelativeComplex& rc, const KahlerOps& k, int h2, int d);

struct QuartetGroup {
    std::string delta;  // exact eigenvalue of Delta, or the irreducible factor when irrational
    bool rational = true;
    std::vector<int> bottom_d;  // d of each bottom vector
    long count = 0;
};
struct QuartetReport {
    int h2 = 0;
    long chain = 0, harmonic = 0, quartets = 0;
    std::vector<QuartetGroup> groups;
    bool pass = true;  // 4 * quartets + harmonic = chain, orthogonality and positivity
    std::string witness;
};
QuartetReport quartet_decompose(const RelativeComplex& rc, const KahlerOps& k, int h2);

struct DdcRow {
    int h2 = 0, d = 0;
    long closed_exact_minus = 0, im_qmqp = 0;  // dim(im Q- n ker Q+ n ker Q-), rank Q-Q+
    long closed_exact_plus = 0;                // dim(im Q+ n ker Q- n ker Q+)
    long symmetric_quotient = 0, h_qm = 0;
    bool pass = true;
};
DdcRow ddc_row(const RelativeComplex& rc, const KahlerOps& k, int h2, int d);

struct FormalityRow {
    int h2 = 0, d = 0;
    long h_qm = 0, h_ker = 0, h_qp = 0;
    long induced_nonzero = 0;  // classes of H(Q+) at d+1 whose image under Q- is not Q+-exact
    bool pass = true;
};
FormalityRow formality_row(const RelativeComplex& rc, const KahlerOps& k, int h2, int d);

struct Usp2Report {
    int h2 = 0;
    long harmonic = 0;
    bool preserved = true, brackets = true, pi_degree = true;
    std::vector<std::vector<std::string>> pi, L, Lambda;  // matrices on the harmonic basis (when small)
    std::string witness;
};
Usp2Report usp2_on_cohomology(const RelativeComplex& rc, const KahlerOps& k, int h2);

struct IteratedRow {
    int h2 = 0, d = 0;
    std::vector<long> stages;  // dims after each summand
    long total = 0;            // dim H(Q-)
    bool pass = true;
};
// groups: generator index sets of the summands, in order
std::vector<IteratedRow> iterated_cohomology(const RelativeComplex& rc, const std::vector<std::vector<int>>& groups,
                                             std::string* witness = nullptr);

}  // namespace semiinf

#pragma once
#include <map>
#include <string>
#include <vector>

#include "semiinf/complex.hpp"
#include "semiinf/hodge.hpp"

namespace semiinf {

// Y+ modes x^{[p]}_n and Y- modes x^{[p-1]}_n (n >= 0) of a field mode x_n with R-degree p
struct GrModes {
    ModeOp plus, minus;
};
GrModes gr_modes(const ModeOp& xn, int p2, int n);

// h >= R + |d|/2 on every state
CheckResult check_bps(const FockSpace& sp);

using HlElem = std::vector<Term>;

// Hall-Littlewood ring of free matter: polynomials in q_{-1} and eta^-_{-1}
class HlRing {
public:
    // degree_max bounds 2R (number of generators); throws ValidationError on a BPS violation
    HlRing(const FieldContent& fc, int degree_max);

    const FieldContent& fields() const { return *fc_; }
    int degree_max() const { return deg_; }
    const FockSpace& space() const { return *sp_; }
    // basis per (2R, d)
    const std::map<std::pair<int, int>, std::vector<Monomial>>& basis() const { return basis_; }
    std::vector<Key> generators() const;

    HlElem product(const HlElem& x, const HlElem& y) const;
    // leading zero-mode action, bidegree (-1, 0)
    HlElem bracket(const HlElem& x, const HlElem& y) const;
    static HlElem mono(const Monomial& m, const Scalar& c = Scalar(1)) { return {{m, c}}; }
    bool contains(const HlElem& x) const;  // every monomial is an HL basis element

private:
    const FieldContent* fc_;
    int deg_;
    std::unique_ptr<FockSpace> sp_;
    std::map<std::pair<int, int>, std::vector<Monomial>> basis_;
};

HlElem hl_add(const HlElem& a, const HlElem& b, const Scalar& s = Scalar(1));

struct KoszulRow {
    int p = 0, g = 0;  // polynomial degree in bosons, ghost number (count of eta^-)
    long chain = 0, invariant = 0, cohomology = 0;
    int R2() const { return p + g; }
    int d() const { return -g; }
};
struct KoszulResult {
    std::vector<KoszulRow> rows;
    int kappa = 0;            // {mu_X, mu_Y} = kappa f_XY^Z mu_Z
    bool equivariant = true;  // the differential commutes with the G action
    std::string witness;
};
// (Sym V (x) wedge g)^G with eta^{-A} -> -K^{AB} mu_B; rows with p + g <= degree_max
KoszulResult koszul_reduction(const LieAlgebraData& g, const Mat& omega, const std::vector<Mat>& T, int degree_max);
KoszulResult koszul_reduction(const System& sys, int degree_max);

// dims of harmonic HL states of the BRST complex, keyed by (2R, d), 2R <= degree_max
std::map<std::pair<int, int>, long> hl_brst_dims(const RelativeComplex& rc, const KahlerOps& k, int degree_max);

}  // namespace semiinf

#pragma once
#include <string>
#include <vector>

#include "semiinf/fock.hpp"
#include "semiinf/operators.hpp"

namespace semiinf {

// rho(q^a) = phase_b * Omega_ab q^b on boson block b; rho(eta^a) = -i Omega_ba eta^b on fermion blocks
struct Conjugation {
    std::vector<Scalar> boson_phase;  // indexed by block id; default -1
    static Conjugation standard(const FieldContent& fc);
};

// anti-linear rho applied to c * mono
std::vector<Term> rho(const FieldContent& fc, const Conjugation& cj, const Monomial& mono, const Scalar& c = Scalar(1));
std::vector<Term> rho_all(const FieldContent& fc, const Conjugation& cj, const std::vector<Term>& v);
// invariant bilinear form on monomials, by transposing modes
Scalar bilinear(const FieldContent& fc, const Monomial& u, const Monomial& v);
// monomials v with (u, v) possibly nonzero
std::vector<Monomial> partner_monomials(const FieldContent& fc, const Monomial& u);
// <m|m> predicted by the mode adjoint table: prod of multiplicity factorials and fermion mode numbers
Scalar monomial_norm(const FieldContent& fc, const Monomial& m);

// Gram matrix <x|y> = ((sigma rho) x, y) of one (h,R,d) block, local indices, row = x
SparseMat gram_block(const FockSpace& sp, const Conjugation& cj, int block);
// diagonal norms from the adjoint table, over the whole space
std::vector<Scalar> adjoint_table_norms(const FockSpace& sp);

struct CheckResult {
    std::string name;
    bool pass = true;
    long checked = 0;
    std::string witness;
    void fail(const std::string& w) {
        if (pass) witness = w;
        pass = false;
    }
};

CheckResult check_spin_statistics(const FockSpace& sp);
// rho^2 = (-1)^{2R} on every basis state
CheckResult check_quaternionic(const FockSpace& sp, const Conjugation& cj);
// every Gram block Hermitian, positive definite, and equal to the adjoint-table diagonal
CheckResult check_gram(const FockSpace& sp, const Conjugation& cj, std::vector<std::string>* blocks_report = nullptr);
// G M^dag = M^H G for the table adjoint on the operator's domain
CheckResult check_adjoint(const ModeOp& op, const FockSpace& sp);
// x^{[p']}_n = 0 for p' < -p (and goodness x^{[p]}_n = 0 for n >= 0) for an operator coming from a state of R = p
CheckResult check_shortening(const SpaceOp& op, const FockSpace& sp, int p2, bool nonneg_mode);
// sl(2) triple generated by Omega on Sb (Sp(2) action commutes with rho up to the stated rule)
CheckResult check_shortening_suite(const FockSpace& sp, const GaugeData* gd);

}  // namespace semiinf

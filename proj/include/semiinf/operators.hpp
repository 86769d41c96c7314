#pragma once
#include <map>
#include <string>
#include <vector>

#include "semiinf/fock.hpp"
#include "semiinf/lie.hpp"

namespace semiinf {

// Normal-ordered product of modes, leftmost first; applied right to left.
struct OpTerm {
    Scalar c;
    std::vector<Mode> modes;
};

// A finite sum of normal-ordered mode monomials acting on a truncated Fock space.
class ModeOp {
public:
    ModeOp() = default;
    ModeOp(const FieldContent& fc, std::string name, int hmax2) : fc_(&fc), name_(std::move(name)), hmax2_(hmax2) {}

    // Adds c * :modes:, reordering into creators-left form with the Koszul sign.
    // Terms that cannot act below hmax2 are dropped.
    void add(const Scalar& c, std::vector<Mode> modes);
    void add(const ModeOp& o, const Scalar& s = Scalar(1));
    // fix the weight shift and parity before any term survives truncation
    void declare(int dh2, bool odd);
    void finalize();

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    const std::vector<OpTerm>& terms() const { return terms_; }
    const FieldContent& fields() const { return *fc_; }
    int hmax2() const { return hmax2_; }
    int dh2() const { return dh2_; }
    bool odd() const { return odd_; }
    bool empty() const { return terms_.empty(); }

    // result of applying to one basis monomial (merged)
    std::vector<Term> apply(const Monomial& m, const Scalar& c = Scalar(1)) const;
    // R-degree components: keep terms with (#creators - #annihilators) == dr2
    ModeOp r_component(int dr2) const;
    // formal adjoint from the mode adjoint table
    ModeOp adjoint() const;

private:
    const FieldContent* fc_ = nullptr;
    std::string name_;
    int hmax2_ = 0;
    int dh2_ = 0;
    bool odd_ = false;
    bool have_dh_ = false;
    std::map<std::vector<std::pair<int, int>>, size_t> pos_;
    std::vector<OpTerm> terms_;
    // term index by creation key matched by the first-applied annihilator
    std::unordered_map<Key, std::vector<int>> by_key_;
    std::vector<int> always_;
    bool finalized_ = false;
};

// adjoint of a single mode: (x^s_n)^dagger = sum coeff * x^t_{n'}
std::vector<std::pair<Scalar, Mode>> mode_adjoint(const FieldContent& fc, const Mode& m);

// Matrix of an operator on a truncated space; columns with h2 > dom2 are not computed.
struct SpaceOp {
    SparseMat m;
    int dh2 = 0;
    int dom2 = 0;
    bool odd = false;
    std::string name;
};

SpaceOp build(const ModeOp& op, const FockSpace& sp);
SpaceOp compose(const SpaceOp& a, const SpaceOp& b);
// [a, b} with the sign fixed by parities
SpaceOp bracket(const SpaceOp& a, const SpaceOp& b);
SpaceOp op_add(const SpaceOp& a, const SpaceOp& b, const Scalar& s = Scalar(1));
SpaceOp op_scale(const Scalar& s, const SpaceOp& a);
SpaceOp scalar_op(const FockSpace& sp, const Scalar& s);
// zero outside columns with h2 <= dom2
SpaceOp restrict_dom(const SpaceOp& a, const FockSpace& sp, int dom2);
bool op_equal(const SpaceOp& a, const SpaceOp& b, const FockSpace& sp, std::string* witness = nullptr);
// R-degree shift of each matrix entry
std::map<int, SpaceOp> split_by_R(const SpaceOp& a, const FockSpace& sp);

// --- standard fields ---
ModeOp single_mode(const FieldContent& fc, const Mode& m, int hmax2);
// J_{A,n} = 1/2 (Omega T_A)_{ab} sum_k :q^a_k q^b_{n-1-k}: on boson block b
ModeOp current_mode(const FieldContent& fc, int block, const Mat& T, int n, int hmax2);
// R-degree p component of a matter current, p in {-1, 0, 1}
ModeOp current_mode_R(const FieldContent& fc, int block, const Mat& T, int n, int p, int hmax2);
ModeOp virasoro_mode(const FieldContent& fc, int n, int hmax2);  // sum over all blocks
ModeOp virasoro_mode_block(const FieldContent& fc, int block, int n, int hmax2);

struct GaugeData {
    const LieAlgebraData* g = nullptr;
    // matter currents: (boson block, T_A list)
    std::vector<std::pair<int, std::vector<Mat>>> matter;
    int ghost_block = -1;
};

ModeOp ghost_species_mode(const FieldContent& fc, const GaugeData& gd, int alpha, int A, int n, int hmax2);
ModeOp matter_current(const FieldContent& fc, const GaugeData& gd, int A, int n, int hmax2, int rdeg = 99);
ModeOp ghost_current0(const FieldContent& fc, const GaugeData& gd, int A, int hmax2);
ModeOp total_current0(const FieldContent& fc, const GaugeData& gd, int A, int hmax2);
// sign = +1 for Q^+, -1 for Q^-; optional subset of generators (iterated cohomology)
ModeOp brst_q(const FieldContent& fc, const GaugeData& gd, int sign, int hmax2, const std::vector<int>* subset = nullptr);
// explicit R-degree +1/2 (Q) and -1/2 (S) parts
ModeOp brst_q_explicit(const FieldContent& fc, const GaugeData& gd, int sign, int hmax2);
ModeOp brst_s_explicit(const FieldContent& fc, const GaugeData& gd, int sign, int hmax2);
ModeOp lefschetz_pi(const FieldContent& fc, const GaugeData& gd, int hmax2);
ModeOp lefschetz_L(const FieldContent& fc, const GaugeData& gd, int hmax2);
ModeOp lefschetz_Lambda(const FieldContent& fc, const GaugeData& gd, int hmax2);

// <0| a b |0> coefficient
Scalar vacuum_expectation(const ModeOp& a, const ModeOp& b);
// k_AB from <0| J_{A,1} J_{B,-1} |0>
Mat extract_level(const FieldContent& fc, const GaugeData& gd);
// c from 2 <0| L_2 L_{-2} |0>
Scalar extract_central_charge(const FieldContent& fc);

}  // namespace semiinf

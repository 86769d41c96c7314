#pragma once
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "semiinf/config.hpp"
#include "semiinf/fock.hpp"
#include "semiinf/operators.hpp"
#include "semiinf/unitarity.hpp"

namespace semiinf {

// Free fields of a config: matter blocks followed by the ghost block when gauged.
struct System {
    Config cfg;
    FieldContent fc;
    GaugeData gd;
    Conjugation cj;
    CriticalityReport crit;
    std::vector<int> boson_blocks;  // field block ids of charged boson blocks
    int hmax2 = 0;
    bool gauged() const { return gd.ghost_block >= 0; }
    const LieAlgebraData& g() const { return cfg.g; }
};

// require_critical: throw ValidationError unless Tr_V = 2 Tr_ad (overridden by allow_non_critical)
std::unique_ptr<System> make_system(const Config& cfg, bool require_critical = true);

// (i) J_{A,-1}|0> has R = 1, (ii) J^{[1]}_{A,n} = 0 for n >= 0, (iii) rho(J_A) = -K^{AB} J_B
std::vector<CheckResult> verify_good_action(const System& sys);

// Relative semi-infinite complex: states of the zero-mode-free Fock space killed by J^tot_{A,0}.
class RelativeComplex {
public:
    struct Block {
        Grade g;
        int fock_block;
        int offset;                    // first relative index
        std::vector<SparseVec> basis;  // local coordinates in the Fock block
        std::vector<int> free_cols;    // basis[j] is 1 at free_cols[j] and 0 at the other free columns
    };

    RelativeComplex(const System& sys, const FockSpace& sp);
    // from stored blocks (cache); the blocks must refer to sp
    RelativeComplex(const System& sys, const FockSpace& sp, std::vector<Block> blocks);

    const FockSpace& space() const { return *sp_; }
    const System& system() const { return *sys_; }
    int size() const { return size_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    int find_block(const Grade& g) const;
    int block_of(int rel_index) const;
    // relative vector -> Fock coordinates
    SparseVec lift(const SparseVec& v) const;
    // Fock vector lying in the complex -> relative coordinates; throws if it does not
    SparseVec project(const SparseVec& fock) const;
    // matrix of an operator preserving the complex; only source blocks with h2 <= op.dom2
    SparseMat restrict(const SpaceOp& op) const;
    // Hermitian form on relative coordinates (block diagonal)
    SparseMat gram() const;
    std::vector<CharacterTerm> character() const;

private:
    const System* sys_;
    const FockSpace* sp_;
    std::vector<Block> blocks_;
    std::vector<int> fock_to_rel_;  // Fock block -> relative block or -1
    int size_ = 0;
};

// cache format: grades, Fock block ids and basis vectors as rational strings
nlohmann::ordered_json complex_to_json(const RelativeComplex& rc, const std::string& config_hash);
// nullptr when the stored hash or Fock layout does not match
std::unique_ptr<RelativeComplex> complex_from_json(const System& sys, const FockSpace& sp, const nlohmann::json& j,
                                                   const std::string& config_hash);

}  // namespace semiinf

#pragma once
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "semiinf/lie.hpp"
#include "semiinf/linalg.hpp"

namespace semiinf {

enum class Family : uint8_t { Boson = 0, Fermion = 1 };

struct Species {
    Family fam;
    int block;
    int local;
    int d;  // cohomological charge
    std::string label;
};

struct FieldBlock {
    std::string name;
    Family fam;
    bool ghost = false;
    int first = 0, size = 0;
    Mat omega;      // lower Omega_ab
    Mat omega_inv;  // upper Omega^ab, appears in brackets
};

// Free-field content: symplectic bosons Sb[V] and symplectic fermions Sf[C^2 (x) U].
class FieldContent {
public:
    int add_boson_block(const std::string& name, const Mat& omega, const std::vector<int>& d = {});
    // species ordered (+,A) for A in U then (-,A); Omega_{(aA)(bB)} = eps_ab K_AB, eps_{+-} = -1
    int add_fermion_block(const std::string& name, const Mat& metric, bool ghost,
                          const std::vector<std::string>& labels = {});

    const std::vector<Species>& species() const { return species_; }
    const std::vector<FieldBlock>& blocks() const { return blocks_; }
    int nspecies() const { return species_.size(); }
    // upper Omega^{st}, zero across blocks
    Scalar omega_up(int s, int t) const;
    Scalar omega_low(int s, int t) const;
    // nonzero Omega^{st} partners of s
    const std::vector<std::pair<int, Scalar>>& partners(int s) const { return partners_[s]; }
    int ghost_block() const;  // -1 if none

private:
    std::vector<Species> species_;
    std::vector<FieldBlock> blocks_;
    std::vector<std::vector<std::pair<int, Scalar>>> partners_;
    void rebuild_partners(int b);
};

// A mode x^s_n. Bosons: creation iff n <= -1, weight of q_n is -n-1/2.
// Fermions: creation iff n <= -1, weight of eta_n is -n; eta_0 acts as zero.
struct Mode {
    int s;
    int n;
    bool operator==(const Mode& o) const { return s == o.s && n == o.n; }
};

// Creation modes packed as [family:1][4095-2h:12][species:16]; monomials keep them sorted.
using Key = uint32_t;
using Monomial = std::vector<Key>;

Key make_key(Family fam, int w2, int s);
inline Family key_family(Key k) { return static_cast<Family>(k >> 28); }
inline int key_w2(Key k) { return 4095 - static_cast<int>((k >> 16) & 0xFFF); }
inline int key_species(Key k) { return static_cast<int>(k & 0xFFFF); }

bool mode_is_creation(const Mode& m);
int mode_dh2(const FieldContent& fc, const Mode& m);  // 2 * weight shift
Key creation_key(const FieldContent& fc, const Mode& m);
Mode key_mode(const FieldContent& fc, Key k);

struct MonoHash {
    size_t operator()(const Monomial& m) const noexcept {
        uint64_t h = 1469598103934665603ull;
        for (Key k : m) { h ^= k; h *= 1099511628211ull; }
        return static_cast<size_t>(h);
    }
};

struct Term {
    Monomial mono;
    Scalar c;
};

// x^s_n applied to c*mono; appends results
void apply_mode(const FieldContent& fc, const Mode& m, const Monomial& mono, const Scalar& c, std::vector<Term>& out);

struct Grade {
    int h2, R2, d;
    bool operator<(const Grade& o) const {
        if (h2 != o.h2) return h2 < o.h2;
        if (R2 != o.R2) return R2 < o.R2;
        return d < o.d;
    }
    bool operator==(const Grade& o) const { return h2 == o.h2 && R2 == o.R2 && d == o.d; }
};

Grade grade_of(const FieldContent& fc, const Monomial& m);
std::string monomial_str(const FieldContent& fc, const Monomial& m);
// sum terms with equal monomials, drop zeros; sorted by monomial
std::vector<Term> merge_terms(std::vector<Term> v);

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Truncated Fock space: all monomials with h <= h_max, grouped in (h, R, d) blocks.
class FockSpace {
public:
    struct Block {
        Grade g;
        int offset, size;
    };
    // allow(key) filters creation modes; budget bounds the state count
    FockSpace(const FieldContent& fc, int hmax2, long budget = 4000000,
              const std::function<bool(Key)>& allow = nullptr);

    const FieldContent& fields() const { return *fc_; }
    int hmax2() const { return hmax2_; }
    int size() const { return states_.size(); }
    const Monomial& state(int i) const { return states_[i]; }
    int index_of(const Monomial& m) const;  // -1 if absent
    const std::vector<Block>& blocks() const { return blocks_; }
    int block_of_state(int i) const { return state_block_[i]; }
    int find_block(const Grade& g) const;  // -1 if absent
    // state index range with given h
    std::pair<int, int> h_range(int h2) const;
    std::string monomial_str(const Monomial& m) const;

private:
    const FieldContent* fc_;
    int hmax2_;
    std::vector<Monomial> states_;
    std::unordered_map<Monomial, int, MonoHash> index_;
    std::vector<Block> blocks_;
    std::map<Grade, int> block_index_;
    std::vector<int> state_block_;
};

struct CharacterTerm {
    Grade g;
    long dim;
};
std::vector<CharacterTerm> character_terms(const FockSpace& sp);
std::string character_string(const std::vector<CharacterTerm>& terms);

}  // namespace semiinf

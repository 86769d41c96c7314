#pragma once
#include <stdexcept>
#include <string>
#include <vector>

#include "semiinf/linalg.hpp"
#include "semiinf/scalar.hpp"

namespace semiinf {

using Mat = std::vector<std::vector<Scalar>>;

Mat mat_zero(int r, int c);
Mat mat_identity(int n);
Mat dmul(const Mat& a, const Mat& b);
Mat dadd(const Mat& a, const Mat& b, const Scalar& s = Scalar(1));
Mat dconj(const Mat& a);
Mat dtranspose(const Mat& a);
Mat dinverse(const Mat& a);  // throws on singular
Scalar dtrace(const Mat& a);
bool dis_zero(const Mat& a);
Mat kron(const Mat& a, const Mat& b);

// Structured validation failure; `where` names the violated index tuple.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LieFactor {
    std::vector<int> idx;
    bool abelian = false;
    std::string name;
    std::string preset;  // "sl2", "sl3", "u1" when built from a preset
};

struct LieAlgebraData {
    int dim = 0;
    std::vector<std::string> labels;
    std::vector<Scalar> f;  // f[(A*dim+B)*dim+C] = f_AB^C
    Mat K, Kinv;
    std::vector<LieFactor> factors;
    std::string name;

    const Scalar& fabc(int a, int b, int c) const { return f[(static_cast<size_t>(a) * dim + b) * dim + c]; }
    Scalar& fabc(int a, int b, int c) { return f[(static_cast<size_t>(a) * dim + b) * dim + c]; }
    // f_ABC = f_AB^D K_DC
    Scalar f_low(int a, int b, int c) const;
    Mat ad(int a) const;  // (ad_A)^C_B = f_AB^C, as matrix [C][B]
    Mat killing() const;  // Tr_ad(ad_A ad_B)
    // conj(K) K == 1, needed by the Hermitian structure on ghosts
    bool unitary_compatible() const;
};

void validate(const LieAlgebraData& g);  // throws ValidationError
LieAlgebraData lie_from_matrices(const std::vector<Mat>& basis, const std::vector<std::string>& labels,
                                 const std::string& name);
LieAlgebraData lie_preset(const std::string& name);  // "sl2", "u1", "sl3", "sl2+u1", ...
LieAlgebraData lie_direct_sum(const std::vector<LieAlgebraData>& parts);
void detect_factors(LieAlgebraData& g);
// per simple factor, h^v with Tr_ad = 2 h^v K; abelian factors give 0
std::vector<mpq_class> dual_coxeter(const LieAlgebraData& g);
// defining-representation matrices of a preset simple factor
std::vector<Mat> preset_fundamental(const std::string& name);

struct SymplecticRep {
    int n = 0;
    Mat omega;      // Omega_ab
    Mat omega_inv;  // Omega^ab
    std::vector<Mat> T;  // T_A, acting as (T_A)^a_b
};

void validate(const SymplecticRep& rep, const LieAlgebraData& g);

struct CriticalityReport {
    struct FactorCheck {
        std::string factor;
        bool abelian;
        bool pass;
        std::string lhs_trace, rhs_trace;  // sample entry
    };
    std::vector<FactorCheck> factors;
    bool mixed_pass = true;
    bool pass = true;
    std::string witness;
};

// Tr_V(T_A T_B) == 2 Tr_ad(T_A T_B) for all A, B
CriticalityReport check_twice_critical(const LieAlgebraData& g, const SymplecticRep& rep);

}  // namespace semiinf

#pragma once
#include <vector>

#include "semiinf/operators.hpp"
#include "semiinf/unitarity.hpp"

namespace semiinf {

// Exact mode-algebra identities as matrices on sp:
// [q^a_n, q^b_m] = Omega^{ab} delta_{n+m+1}, {eta^a_n, eta^b_m} = n Omega^{ab} delta_{n+m},
// [J_{A,n}, J_{B,m}] = f_AB^C J_{C,n+m} + n k_AB delta_{n+m} (gd != nullptr),
// [L_n, L_m] = (n-m) L_{n+m} + c/12 (n^3 - n) delta_{n+m}
std::vector<CheckResult> verify_mode_algebra(const FockSpace& sp, const GaugeData* gd);

}  // namespace semiinf

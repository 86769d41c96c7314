#include <map>
#include <tuple>

#include "doctest.h"
#include "semiinf/complex.hpp"

using namespace semiinf;

namespace {
using Key3 = std::tuple<int, int, int>;  // (2h, 2R, d)

// generating function of the free-field Fock space, truncated at 2h <= hmax2
std::map<Key3, long> dp_dims(const FieldContent& fc, int hmax2) {
    std::map<Key3, long> poly = {{{0, 0, 0}, 1}};
    for (auto& s : fc.species()) {
        if (s.fam == Family::Boson) {
            for (int w2 = 1; w2 <= hmax2; w2 += 2) {
                // geometric series in one mode
                std::map<Key3, long> next;
                for (auto& [k, c] : poly)
                    for (int j = 0; std::get<0>(k) + j * w2 <= hmax2; ++j)
                        next[{std::get<0>(k) + j * w2, std::get<1>(k) + j, std::get<2>(k) + j * s.d}] += c;
                poly = std::move(next);
            }
        } else {
            for (int w2 = 2; w2 <= hmax2; w2 += 2) {
                std::map<Key3, long> next;
                for (auto& [k, c] : poly) {
                    next[k] += c;
                    if (std::get<0>(k) + w2 <= hmax2) next[{std::get<0>(k) + w2, std::get<1>(k) + 1, std::get<2>(k) + s.d}] += c;
                }
                poly = std::move(next);
            }
        }
    }
    return poly;
}

std::map<Key3, long> enumerated(const FockSpace& sp) {
    std::map<Key3, long> out;
    for (auto& b : sp.blocks()) out[{b.g.h2, b.g.R2, b.g.d}] = b.size;
    return out;
}
}  // namespace

TEST_CASE("Fock enumeration matches the generating-function count") {
    Config c = load_config(std::string(SEMIINF_CONFIG_DIR) + "/cfg_nf4.json");
    auto sys = make_system(c);
    FockSpace sp(sys->fc, 4);
    CHECK(enumerated(sp) == dp_dims(sys->fc, 4));
    FieldContent mixed;
    mixed.add_boson_block("q", {{0, 1}, {-1, 0}});
    mixed.add_fermion_block("eta", lie_preset("sl2").K, false);
    FockSpace sp2(mixed, 6);
    CHECK(enumerated(sp2) == dp_dims(mixed, 6));
}

TEST_CASE("sl2 invariants in Sym^2(C^16) number 28") {
    // independent of the Fock machinery: act with T_A on quadratic monomials x_a x_b
    LieAlgebraData g = lie_preset("sl2");
    auto fund = preset_fundamental("sl2");
    int n = 16;
    std::vector<std::pair<int, int>> mon;
    std::map<std::pair<int, int>, int> pos;
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            pos[{a, b}] = mon.size();
            mon.push_back({a, b});
        }
    std::vector<SparseMat> act;
    for (int A = 0; A < 3; ++A) {
        Mat t = kron(fund[A], mat_identity(8));
        SparseMat m(mon.size(), mon.size());
        for (size_t j = 0; j < mon.size(); ++j) {
            auto [a, b] = mon[j];
            Accum acc;
            // T(x_a x_b) = (T x_a) x_b + x_a (T x_b), with T x_a = sum_c t[c][a] x_c
            for (int c2 = 0; c2 < n; ++c2) {
                if (!t[c2][a].is_zero()) acc.add(pos[{std::min(c2, b), std::max(c2, b)}], t[c2][a]);
                if (!t[c2][b].is_zero()) acc.add(pos[{std::min(a, c2), std::max(a, c2)}], t[c2][b]);
            }
            m.col[j] = acc.take();
        }
        act.push_back(std::move(m));
    }
    std::vector<const SparseMat*> ptrs = {&act[0], &act[1], &act[2]};
    long inv = kernel_of_stack(ptrs, mon.size()).size();
    CHECK(mon.size() == 136);
    CHECK(inv == 28);
    (void)g;
}

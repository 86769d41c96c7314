#include "doctest.h"
#include "semiinf/fock.hpp"
#include "semiinf/operators.hpp"

using namespace semiinf;

namespace {
Mat eps() { return {{0, 1}, {-1, 0}}; }

FieldContent sb_c2() {
    FieldContent fc;
    fc.add_boson_block("q", eps());
    return fc;
}

FieldContent sf_c2(const Mat& metric) {
    FieldContent fc;
    fc.add_fermion_block("eta", metric, false);
    return fc;
}
}  // namespace

TEST_CASE("Sb[C^2] character up to h=1/2") {
    FieldContent fc = sb_c2();
    FockSpace sp(fc, 1);
    CHECK(character_string(character_terms(sp)) == "1 + 2·q^{1/2}t^{1/2}");
}

TEST_CASE("Sf[C^2 x u1] character up to h=1") {
    FieldContent fc = sf_c2({{1}});
    FockSpace sp(fc, 2);
    CHECK(character_string(character_terms(sp)) == "1 + q t^{1/2} z + q t^{1/2} z^{-1}");
}

TEST_CASE("boson zero mode contracts with creation mode") {
    FieldContent fc = sb_c2();
    std::vector<Term> out;
    apply_mode(fc, Mode{1, -1}, {}, Scalar(1), out);
    REQUIRE(out.size() == 1);
    std::vector<Term> out2;
    apply_mode(fc, Mode{0, 0}, out[0].mono, Scalar(1), out2);
    REQUIRE(out2.size() == 1);
    CHECK(out2[0].mono.empty());
    CHECK(out2[0].c == fc.omega_up(0, 1));
}

TEST_CASE("central charges of free fields") {
    CHECK(extract_central_charge(sb_c2()) == Scalar(-1));
    CHECK(extract_central_charge(sf_c2({{1}})) == Scalar(-2));
    Mat k = lie_preset("sl2").K;
    CHECK(extract_central_charge(sf_c2(k)) == Scalar(-6));
}

TEST_CASE("L_0 is the weight on Sb[C^2] and Sf[C^2 x sl2] up to h=3") {
    for (int which = 0; which < 2; ++which) {
        FieldContent fc = which == 0 ? sb_c2() : sf_c2(lie_preset("sl2").K);
        FockSpace sp(fc, 6);
        SpaceOp l0 = build(virasoro_mode(fc, 0, 6), sp);
        for (int j = 0; j < sp.size(); ++j) {
            int h2 = sp.blocks()[sp.block_of_state(j)].g.h2;
            SparseVec expect;
            if (h2) expect = {{j, Scalar::frac(h2, 2)}};
            CHECK(l0.m.col[j] == expect);
        }
    }
}

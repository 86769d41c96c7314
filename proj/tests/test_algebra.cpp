#include "doctest.h"
#include "semiinf/algebra.hpp"
#include "semiinf/complex.hpp"

using namespace semiinf;

namespace {
void all_pass(const std::vector<CheckResult>& rs) {
    for (auto& r : rs) {
        CHECK_MESSAGE(r.pass, r.name << ": " << r.witness);
        CHECK(r.checked > 0);
    }
}
}  // namespace

TEST_CASE("mode algebra of one boson pair up to h=3") {
    FieldContent fc;
    fc.add_boson_block("q", Mat{{Scalar(0), Scalar(1)}, {Scalar(-1), Scalar(0)}});
    FockSpace sp(fc, 6);
    all_pass(verify_mode_algebra(sp, nullptr));
}

TEST_CASE("mode algebra of Sf[C^2 x sl2] up to h=3") {
    FieldContent fc;
    fc.add_fermion_block("eta", lie_preset("sl2").K, false);
    FockSpace sp(fc, 6);
    all_pass(verify_mode_algebra(sp, nullptr));
}

TEST_CASE("mode algebra of NF4 with ghosts up to h=3/2") {
    auto sys = make_system(load_config(std::string(SEMIINF_CONFIG_DIR) + "/cfg_nf4.json"));
    FockSpace sp(sys->fc, 3);
    auto rs = verify_mode_algebra(sp, &sys->gd);
    REQUIRE(rs.size() == 4);
    CHECK(rs[2].checked == 3 * 3 * 9);
    all_pass(rs);
}

TEST_CASE("a wrong pairing is caught") {
    FieldContent fc;
    fc.add_boson_block("q", Mat{{Scalar(0), Scalar(1)}, {Scalar(-1), Scalar(0)}});
    FockSpace sp(fc, 2);
    SpaceOp a = build(single_mode(fc, Mode{0, 0}, 2), sp), b = build(single_mode(fc, Mode{1, -1}, 2), sp);
    std::string w;
    CHECK_FALSE(op_equal(bracket(a, b), scalar_op(sp, Scalar(1)), sp, &w));
    CHECK(op_equal(bracket(a, b), scalar_op(sp, Scalar(-1)), sp));
}

TEST_CASE("operators truncated away keep their weight shift") {
    FieldContent fc;
    fc.add_boson_block("q", Mat{{Scalar(0), Scalar(1)}, {Scalar(-1), Scalar(0)}});
    FockSpace sp(fc, 2);
    ModeOp lm1 = virasoro_mode(fc, -1, 2);
    CHECK(lm1.empty());
    CHECK(lm1.dh2() == 2);
    all_pass(verify_mode_algebra(sp, nullptr));
}

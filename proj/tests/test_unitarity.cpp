#include "doctest.h"
#include "semiinf/operators.hpp"
#include "semiinf/unitarity.hpp"

using namespace semiinf;

namespace {
Mat eps() { return {{0, 1}, {-1, 0}}; }

FieldContent mixed() {
    FieldContent fc;
    fc.add_boson_block("q", eps());
    fc.add_fermion_block("eta", lie_preset("sl2").K, false);
    return fc;
}
}  // namespace

TEST_CASE("Gram from the bilinear form matches the adjoint table") {
    FieldContent fc = mixed();
    FockSpace sp(fc, 4);
    auto cj = Conjugation::standard(fc);
    auto r = check_gram(sp, cj);
    CHECK_MESSAGE(r.pass, r.witness);
    CHECK(r.checked == static_cast<long>(sp.blocks().size()));
}

TEST_CASE("spin-statistics and rho^2 on mixed free fields") {
    FieldContent fc = mixed();
    FockSpace sp(fc, 5);
    auto ss = check_spin_statistics(sp);
    CHECK_MESSAGE(ss.pass, ss.witness);
    auto q = check_quaternionic(sp, Conjugation::standard(fc));
    CHECK_MESSAGE(q.pass, q.witness);
}

TEST_CASE("boson norm of q_{-1}^2 is 2 times Omega squared") {
    FieldContent fc;
    fc.add_boson_block("q", eps());
    FockSpace sp(fc, 2);
    auto cj = Conjugation::standard(fc);
    int b = sp.find_block(Grade{2, 2, 0});
    REQUIRE(b >= 0);
    SparseMat g = gram_block(sp, cj, b);
    // q1^2, q1 q2, q2^2 with norms 2, 1, 2
    REQUIRE(g.rows == 3);
    CHECK(g.at(0, 0) == Scalar(2));
    CHECK(g.at(1, 1) == Scalar(1));
    CHECK(g.at(2, 2) == Scalar(2));
    CHECK(g.nnz() == 3);
}

TEST_CASE("flipping the boson conjugation phase breaks positivity") {
    FieldContent fc;
    fc.add_boson_block("q", eps());
    FockSpace sp(fc, 2);
    auto cj = Conjugation::standard(fc);
    cj.boson_phase[0] = Scalar(1);
    auto r = check_gram(sp, cj);
    CHECK_FALSE(r.pass);
    CHECK(r.witness.find("not positive definite") != std::string::npos);
}

TEST_CASE("mode adjoints are consistent with the Gram matrix") {
    FieldContent fc = mixed();
    FockSpace sp(fc, 4);
    for (int s = 0; s < fc.nspecies(); ++s)
        for (int n = -2; n <= 2; ++n) {
            auto r = check_adjoint(single_mode(fc, Mode{s, n}, 4), sp);
            CHECK_MESSAGE(r.pass, r.witness);
        }
    for (int n = -2; n <= 2; ++n) {
        auto r = check_adjoint(virasoro_mode(fc, n, 4), sp);
        CHECK_MESSAGE(r.pass, r.witness);
    }
}

TEST_CASE("R-components of L_n are adjoint up to the sigma sign") {
    FieldContent fc = mixed();
    FockSpace sp(fc, 4);
    for (int n = 0; n <= 2; ++n)
        for (int r = -1; r <= 1; ++r) {
            SpaceOp a = build(virasoro_mode(fc, n, 4).r_component(2 * r).adjoint(), sp);
            SpaceOp b = op_scale(Scalar(r % 2 ? -1 : 1), build(virasoro_mode(fc, -n, 4).r_component(-2 * r), sp));
            std::string w;
            CHECK_MESSAGE(op_equal(a, b, sp, &w), w);
        }
}

TEST_CASE("shortening of modes and Virasoro") {
    FieldContent fc = mixed();
    FockSpace sp(fc, 4);
    auto r = check_shortening_suite(sp, nullptr);
    CHECK_MESSAGE(r.pass, r.witness);
}

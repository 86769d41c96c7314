#include "doctest.h"
#include "semiinf/complex.hpp"

using namespace semiinf;

namespace {
Config nf4(int hmax2) {
    Config c = load_config(std::string(SEMIINF_CONFIG_DIR) + "/cfg_nf4.json");
    c.hmax2 = hmax2;
    return c;
}

bool same(const SparseMat& a, const SparseMat& b, std::string* w = nullptr) {
    if (mat_equal(a, b)) return true;
    if (w) *w = mat_diff_witness(a, b);
    return false;
}

SparseMat anti(const SparseMat& a, const SparseMat& b) { return mat_add(mat_mul(a, b), mat_mul(b, a)); }
SparseMat comm(const SparseMat& a, const SparseMat& b) { return mat_add(mat_mul(a, b), mat_mul(b, a), Scalar(-1)); }
}  // namespace

TEST_CASE("NF4 is twice critical and three flavors are not") {
    auto sys = make_system(nf4(2));
    CHECK(sys->crit.pass);
    Config bad = load_config(std::string(SEMIINF_CONFIG_DIR) + "/fail_not_critical.json");
    CHECK_THROWS_AS(make_system(bad), ValidationError);
    bad.allow_non_critical = true;
    CHECK_FALSE(make_system(bad)->crit.pass);
}

TEST_CASE("NF4 level is -4K and total central charge is -14") {
    auto sys = make_system(nf4(2));
    Mat k = extract_level(sys->fc, sys->gd);
    const Mat& K = sys->g().K;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) CHECK(k[a][b] == Scalar(-4) * K[a][b]);
    CHECK(extract_central_charge(sys->fc) == Scalar(-14));
}

TEST_CASE("total current zero modes close on the Lie algebra") {
    auto sys = make_system(nf4(2));
    FockSpace sp(sys->fc, 2);
    const auto& g = sys->g();
    std::vector<SparseMat> j;
    for (int A = 0; A < 3; ++A) j.push_back(build(total_current0(sys->fc, sys->gd, A, 2), sp).m);
    for (int A = 0; A < 3; ++A)
        for (int B = 0; B < 3; ++B) {
            SparseMat rhs(sp.size(), sp.size());
            for (int C = 0; C < 3; ++C) rhs = mat_add(rhs, j[C], g.fabc(A, B, C));
            std::string w;
            CHECK_MESSAGE(same(comm(j[A], j[B]), rhs, &w), w);
        }
}

TEST_CASE("relative complex of NF4 at h=1 has 28 states") {
    auto sys = make_system(nf4(2));
    FockSpace sp(sys->fc, 2);
    RelativeComplex rc(*sys, sp);
    long h1 = 0;
    for (auto& b : rc.blocks())
        if (b.g.h2 == 2) h1 += b.basis.size();
    CHECK(h1 == 28);
    int b = rc.find_block(Grade{2, 2, 0});
    REQUIRE(b >= 0);
    CHECK(rc.blocks()[b].basis.size() == 28);
}

TEST_CASE("BRST differentials on the NF4 relative complex") {
    auto sys = make_system(nf4(4));
    FockSpace sp(sys->fc, 4);
    RelativeComplex rc(*sys, sp);
    SparseMat qp = rc.restrict(build(brst_q(sys->fc, sys->gd, +1, 4), sp));
    SparseMat qm = rc.restrict(build(brst_q(sys->fc, sys->gd, -1, 4), sp));
    std::string w;
    CHECK_MESSAGE(mat_equal(mat_mul(qp, qp), SparseMat(rc.size(), rc.size())), "Q+ squared");
    CHECK_MESSAGE(mat_equal(mat_mul(qm, qm), SparseMat(rc.size(), rc.size())), "Q- squared");
    CHECK_MESSAGE(mat_equal(anti(qp, qm), SparseMat(rc.size(), rc.size())), "Q+ Q- anticommute");
    CHECK_FALSE(qp.is_zero());
    CHECK_FALSE(qm.is_zero());

    SUBCASE("explicit R-degree split matches the generic differential") {
        for (int s : {+1, -1}) {
            ModeOp q = brst_q(sys->fc, sys->gd, s, 4);
            SparseMat up = rc.restrict(build(q.r_component(1), sp));
            SparseMat dn = rc.restrict(build(q.r_component(-1), sp));
            SparseMat eq = rc.restrict(build(brst_q_explicit(sys->fc, sys->gd, s, 4), sp));
            SparseMat es = rc.restrict(build(brst_s_explicit(sys->fc, sys->gd, s, 4), sp));
            CHECK_MESSAGE(same(up, eq, &w), "Q part, sign ", s, ": ", w);
            CHECK_MESSAGE(same(dn, es, &w), "S part, sign ", s, ": ", w);
        }
    }
}

TEST_CASE("explicit R-degree split on the pure ghost sector up to h=3") {
    Config c;
    c.gauged = true;
    c.g = lie_preset("sl2");
    c.hmax2 = 6;
    c.allow_non_critical = true;
    auto sys = make_system(c);
    FockSpace sp(sys->fc, 6);
    for (int s : {+1, -1}) {
        ModeOp q = brst_q(sys->fc, sys->gd, s, 6);
        std::string w;
        CHECK_MESSAGE(op_equal(build(q.r_component(1), sp), build(brst_q_explicit(sys->fc, sys->gd, s, 6), sp), sp, &w), w);
        CHECK_MESSAGE(op_equal(build(q.r_component(-1), sp), build(brst_s_explicit(sys->fc, sys->gd, s, 6), sp), sp, &w), w);
        CHECK(q.r_component(1).terms().size() > 0);
    }
}

TEST_CASE("good action holds for NF4 and fails (iii) for a twisted conjugation") {
    for (auto& r : verify_good_action(*make_system(nf4(2)))) CHECK_MESSAGE(r.pass, r.name << ": " << r.witness);
    auto triv = verify_good_action(*make_system(load_config(std::string(SEMIINF_CONFIG_DIR) + "/cfg_triv.json")));
    for (auto& r : triv) CHECK(r.pass);
    auto bad = verify_good_action(*make_system(load_config(std::string(SEMIINF_CONFIG_DIR) + "/fail_bad_action.json")));
    CHECK(bad[0].pass);
    CHECK(bad[1].pass);
    CHECK_FALSE(bad[2].pass);
    CHECK(bad[2].witness.find("rho(") != std::string::npos);
}

TEST_CASE("SU(3) with six hypermultiplets is twice critical") {
    auto sys = make_system(load_config(std::string(SEMIINF_CONFIG_DIR) + "/cfg_sl3_nf6.json"));
    CHECK(sys->crit.pass);
    // the rational Chevalley basis cannot satisfy (iii) literally
    auto good = verify_good_action(*sys);
    CHECK(good[0].pass);
    CHECK(good[1].pass);
    CHECK_FALSE(good[2].pass);
    FockSpace sp(sys->fc, 2);
    RelativeComplex rc(*sys, sp);
    long h1 = 0, h_half = 0;
    for (auto& b : rc.blocks()) {
        if (b.g.h2 == 1) h_half += b.basis.size();
        if (b.g.h2 == 2) h1 += b.basis.size();
    }
    CHECK(h_half == 0);
    CHECK(h1 == 36);
}

#include "doctest.h"
#include "semiinf/hodge.hpp"

using namespace semiinf;

namespace {
Config cfg(const char* name, int hmax2) {
    Config c = load_config(std::string(SEMIINF_CONFIG_DIR) + "/" + name);
    c.hmax2 = hmax2;
    return c;
}

struct Fixture {
    std::unique_ptr<System> sys;
    std::unique_ptr<FockSpace> sp;
    std::unique_ptr<RelativeComplex> rc;
    KahlerOps k;
    Fixture(const char* name, int hmax2) {
        sys = make_system(cfg(name, hmax2));
        sp = std::make_unique<FockSpace>(sys->fc, hmax2);
        rc = std::make_unique<RelativeComplex>(*sys, *sp);
        k = assemble_kahler(*rc);
    }
};

Fixture& nf4() {
    static Fixture f("cfg_nf4.json", 4);
    return f;
}
}  // namespace

TEST_CASE("NF4 relative dims at h=2 split by d") {
    auto& f = nf4();
    CHECK(slice(*f.rc, 4, 0).size() == 401);
    CHECK(slice(*f.rc, 4, 1).size() == 36);
    CHECK(slice(*f.rc, 4, -1).size() == 36);
    CHECK(slice_h(*f.rc, 1).empty());
    CHECK(slice_h(*f.rc, 3).empty());
}

TEST_CASE("Kaehler package identities on NF4 up to h=2") {
    auto& f = nf4();
    for (auto& id : kahler_identities(*f.rc, f.k)) CHECK_MESSAGE(id.pass, id.name, ": ", id.witness);
    for (auto& id : pva_kahler_identities(*f.rc, f.k)) CHECK_MESSAGE(id.pass, id.name, ": ", id.witness);
    CHECK_FALSE(f.k.lap.is_zero());
}

TEST_CASE("Hodge rows on NF4 up to h=2") {
    auto& f = nf4();
    for (int h2 : h_values(*f.rc))
        for (int d : d_values(*f.rc, h2)) {
            HodgeRow r = hodge_row(*f.rc, f.k, h2, d);
            CHECK_MESSAGE(r.decomposition, r.witness);
            CHECK_MESSAGE(r.orthogonal, r.witness);
            CHECK_MESSAGE(r.cohomology, r.witness);
        }
    HodgeRow r = hodge_row(*f.rc, f.k, 2, 0);
    CHECK(r.chain == 28);
    CHECK(r.harmonic == 28);
    CHECK(r.h_qm == 28);
    auto e = euler_characteristic(*f.rc, f.k, 4);
    CHECK(e.first == e.second);
}

TEST_CASE("quartets on NF4 up to h=2") {
    auto& f = nf4();
    for (int h2 : h_values(*f.rc)) {
        QuartetReport q = quartet_decompose(*f.rc, f.k, h2);
        CHECK_MESSAGE(q.pass, q.witness);
        CHECK((q.chain - q.harmonic) % 4 == 0);
    }
    QuartetReport q = quartet_decompose(*f.rc, f.k, 4);
    CHECK(q.quartets > 0);
}

TEST_CASE("Q-Q+ lemma, symmetric quotient and formality on NF4 up to h=2") {
    auto& f = nf4();
    for (int h2 : h_values(*f.rc))
        for (int d : d_values(*f.rc, h2)) {
            DdcRow r = ddc_row(*f.rc, f.k, h2, d);
            CHECK(r.pass);
            FormalityRow fr = formality_row(*f.rc, f.k, h2, d);
            CHECK(fr.pass);
            CHECK(fr.induced_nonzero == 0);
        }
}

TEST_CASE("USp(2) on NF4 cohomology") {
    auto& f = nf4();
    for (int h2 : h_values(*f.rc)) {
        Usp2Report u = usp2_on_cohomology(*f.rc, f.k, h2);
        CHECK_MESSAGE(u.preserved, u.witness);
        CHECK_MESSAGE(u.brackets, u.witness);
        CHECK_MESSAGE(u.pi_degree, u.witness);
    }
    Usp2Report u = usp2_on_cohomology(*f.rc, f.k, 2);
    CHECK(u.harmonic == 28);
}

TEST_CASE("trivial config: zero differential, cohomology is the whole space") {
    Fixture f("cfg_triv.json", 4);
    CHECK(f.k.qp.is_zero());
    CHECK(f.k.qm.is_zero());
    CHECK(f.k.lap.is_zero());
    CHECK(f.rc->size() == f.sp->size());
    for (int h2 : h_values(*f.rc))
        for (int d : d_values(*f.rc, h2)) {
            HodgeRow r = hodge_row(*f.rc, f.k, h2, d);
            CHECK(r.h_qm == r.chain);
            CHECK(quartet_decompose(*f.rc, f.k, h2).quartets == 0);
        }
}

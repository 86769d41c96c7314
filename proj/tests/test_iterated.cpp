#include "doctest.h"
#include "semiinf/hodge.hpp"

using namespace semiinf;

namespace {
std::map<std::pair<int, int>, long> total_dims(const char* name, int hmax2) {
    Config c = load_config(std::string(SEMIINF_CONFIG_DIR) + "/" + name);
    c.hmax2 = hmax2;
    auto sys = make_system(c);
    FockSpace sp(sys->fc, hmax2);
    RelativeComplex rc(*sys, sp);
    KahlerOps k = assemble_kahler(rc);
    std::map<std::pair<int, int>, long> out;
    for (int h2 : h_values(rc))
        for (int d : d_values(rc, h2)) out[{h2, d}] = hodge_row(rc, k, h2, d).h_qm;
    return out;
}
}  // namespace

TEST_CASE("iterated cohomology of two decoupled NF4 copies up to h=1") {
    Config c = load_config(std::string(SEMIINF_CONFIG_DIR) + "/cfg_nf4_x2.json");
    c.hmax2 = 2;
    auto sys = make_system(c);
    FockSpace sp(sys->fc, 2);
    RelativeComplex rc(*sys, sp);
    std::vector<std::vector<int>> groups;
    for (auto& f : sys->g().factors) groups.push_back(f.idx);
    REQUIRE(groups.size() == 2);
    std::string w;
    auto rows = iterated_cohomology(rc, groups, &w);
    auto single = total_dims("cfg_nf4.json", 2);
    for (auto& r : rows) {
        CHECK_MESSAGE(r.pass, w);
        CHECK(r.stages.size() == 2);
        // Kuenneth: sum over splittings of (h, d)
        long prod = 0;
        for (auto& [g1, a] : single)
            for (auto& [g2, b] : single)
                if (g1.first + g2.first == r.h2 && g1.second + g2.second == r.d) prod += a * b;
        CHECK(r.total == prod);
        CHECK(r.stages.back() == prod);
    }
    bool saw = false;
    for (auto& r : rows)
        if (r.h2 == 2 && r.d == 0) {
            CHECK(r.total == 56);
            saw = true;
        }
    CHECK(saw);
}

TEST_CASE("iterated cohomology rejects a partition that is not a direct sum") {
    Config c = load_config(std::string(SEMIINF_CONFIG_DIR) + "/cfg_nf4.json");
    c.hmax2 = 2;
    auto sys = make_system(c);
    FockSpace sp(sys->fc, 2);
    RelativeComplex rc(*sys, sp);
    CHECK_THROWS_AS(iterated_cohomology(rc, {{0}, {1, 2}}), ValidationError);
    CHECK_THROWS_AS(iterated_cohomology(rc, {{0, 1}}), ValidationError);
}

TEST_CASE("u1 + u1 with trivial matter: iterated equals chain dims") {
    Config c;
    c.gauged = true;
    c.g = lie_preset("u1+u1");
    c.hmax2 = 4;
    auto sys = make_system(c);
    FockSpace sp(sys->fc, 4);
    RelativeComplex rc(*sys, sp);
    CHECK(rc.size() == sp.size());
    auto rows = iterated_cohomology(rc, {{0}, {1}});
    for (auto& r : rows) {
        CHECK(r.pass);
        CHECK(r.total == static_cast<long>(slice(rc, r.h2, r.d).size()));
    }
}

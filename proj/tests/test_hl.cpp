#include "doctest.h"
#include "semiinf/hl.hpp"

using namespace semiinf;

namespace {
Mat eps(int n) {
    Mat m = mat_zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        m[i][n + i] = Scalar(1);
        m[n + i][i] = Scalar(-1);
    }
    return m;
}

Config cfg(const char* name, int hmax2) {
    Config c = load_config(std::string(SEMIINF_CONFIG_DIR) + "/" + name);
    c.hmax2 = hmax2;
    return c;
}

HlElem gen(const HlRing& r, int i) { return HlRing::mono({r.generators()[i]}); }

bool same(const HlElem& a, const HlElem& b) { return hl_add(a, b, Scalar(-1)).empty(); }
}  // namespace

TEST_CASE("HL ring of one boson pair") {
    FieldContent fc;
    fc.add_boson_block("q", eps(1));
    HlRing r(fc, 3);
    CHECK(r.basis().at({1, 0}).size() == 2);
    CHECK(r.basis().at({2, 0}).size() == 3);
    CHECK(r.basis().at({3, 0}).size() == 4);
    auto x = gen(r, 0), y = gen(r, 1);
    // {q^a, q^b} = Omega^{ab} on the vacuum
    Mat up = dinverse(eps(1));
    int a = key_species(r.generators()[0]), b = key_species(r.generators()[1]);
    CHECK(same(r.bracket(x, y), HlRing::mono({}, up[a][b])));
    CHECK(same(r.bracket(y, x), HlRing::mono({}, up[b][a])));
    CHECK(same(r.product(x, y), r.product(y, x)));
    CHECK(r.contains(r.product(r.product(x, x), y)));
}

TEST_CASE("HL ring of a single symplectic fermion") {
    FieldContent fc;
    fc.add_fermion_block("eta", Mat{{Scalar(1)}}, false);
    HlRing r(fc, 2);
    CHECK(r.basis().at({0, 0}).size() == 1);
    CHECK(r.basis().at({1, -1}).size() == 1);
    CHECK(r.basis().count({2, -2}) == 0);
    auto e = gen(r, 0);
    CHECK(r.product(e, e).empty());
    CHECK(r.bracket(e, e).empty());
}

TEST_CASE("HL bracket is Poisson on mixed generators") {
    FieldContent fc;
    fc.add_boson_block("q", eps(2));
    fc.add_fermion_block("eta", eps(1), false);
    HlRing r(fc, 4);
    int ng = r.generators().size();
    std::vector<HlElem> even, all;
    for (int i = 0; i < ng; ++i) {
        all.push_back(gen(r, i));
        if (key_family(r.generators()[i]) == Family::Boson) even.push_back(gen(r, i));
    }
    // quadratic even elements
    std::vector<HlElem> quad;
    for (size_t i = 0; i < even.size(); ++i)
        for (size_t j = i; j < even.size(); ++j) quad.push_back(r.product(even[i], even[j]));
    long checked = 0;
    for (auto& x : quad)
        for (auto& y : quad)
            for (auto& z : all) {
                HlElem lhs = r.bracket(x, r.bracket(y, z));
                HlElem rhs = hl_add(r.bracket(r.bracket(x, y), z), r.bracket(y, r.bracket(x, z)));
                CHECK(same(lhs, rhs));
                ++checked;
            }
    for (auto& x : even)
        for (auto& y : quad)
            for (auto& z : all) {
                HlElem lhs = r.bracket(x, r.product(y, z));
                HlElem rhs = hl_add(r.product(r.bracket(x, y), z), r.product(y, r.bracket(x, z)));
                CHECK(same(lhs, rhs));
                CHECK(same(r.bracket(r.product(x, y), z), hl_add(r.product(x, r.bracket(y, z)), r.product(y, r.bracket(x, z)))));
            }
    CHECK(checked > 0);
}

TEST_CASE("Y- of the current zero mode is the bracket with the moment map") {
    auto sys = make_system(cfg("cfg_nf4.json", 2));
    HlRing r(sys->fc, 2);
    auto& [blk, Ts] = sys->gd.matter[0];
    for (int A = 0; A < 3; ++A) {
        ModeOp jm1 = current_mode(sys->fc, blk, Ts[A], -1, 4);
        ModeOp j0 = current_mode(sys->fc, blk, Ts[A], 0, 4);
        auto g = gr_modes(j0, 2, 0);
        CHECK(g.plus.empty());
        HlElem mu = jm1.apply({});
        CHECK(r.contains(mu));
        for (int R2 = 1; R2 <= 2; ++R2)
            for (auto& m : r.basis().at({R2, 0})) CHECK(same(g.minus.apply(m), r.bracket(mu, HlRing::mono(m))));
    }
}

TEST_CASE("Koszul reduction with trivial matter") {
    auto sys = make_system(cfg("cfg_triv.json", 2));
    auto k = koszul_reduction(*sys, 2);
    CHECK(k.equivariant);
    REQUIRE(k.rows.size() == 2);
    CHECK(k.rows[0].cohomology == 1);
    CHECK(k.rows[1].g == 1);
    CHECK(k.rows[1].cohomology == 1);
}

TEST_CASE("Koszul reduction of NF4 matches BRST harmonic HL states") {
    auto sys = make_system(cfg("cfg_nf4.json", 4));
    auto k = koszul_reduction(*sys, 4);
    CHECK_MESSAGE(k.equivariant, k.witness);
    CHECK(k.kappa != 0);
    std::map<std::pair<int, int>, long> kz;
    for (auto& row : k.rows) {
        if (row.p == 2 && row.g == 0) CHECK(row.cohomology == 28);
        if (row.p == 4 && row.g == 0) CHECK(row.cohomology == 300);
        if (row.p == 2 && row.g == 1) CHECK(row.invariant == 36);
        if (row.g > 0) CHECK(row.cohomology == 0);
        if (row.p + 2 * row.g <= 4) kz[{row.R2(), row.d()}] = row.cohomology;
    }
    FockSpace sp(sys->fc, 4);
    RelativeComplex rc(*sys, sp);
    auto kahler = assemble_kahler(rc);
    auto brst = hl_brst_dims(rc, kahler, 4);
    for (auto& [key, v] : kz) {
        long b = brst.count(key) ? brst.at(key) : 0;
        CHECK_MESSAGE(b == v, "(2R,d)=(" << key.first << "," << key.second << ")");
    }
    for (auto& [key, v] : brst)
        if (!kz.count(key)) CHECK_MESSAGE(v == 0, "(2R,d)=(" << key.first << "," << key.second << ")");
}

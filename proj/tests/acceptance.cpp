// One line per acceptance criterion; exit status 0 iff all pass.
#include <functional>
#include <iostream>
#include <map>

#include "semiinf/algebra.hpp"
#include "semiinf/complex.hpp"
#include "semiinf/hl.hpp"
#include "semiinf/hodge.hpp"
#include "semiinf/workbench.hpp"

using namespace semiinf;

namespace {
Config cfg(const std::string& name, int hmax2 = -1) {
    Config c = load_config(std::string(SEMIINF_CONFIG_DIR) + "/" + name);
    if (hmax2 >= 0) {
        c.hmax2 = hmax2;
        c.source["h_max"] = half_str(hmax2);
    }
    return c;
}

struct Built {
    std::unique_ptr<System> sys;
    std::unique_ptr<FockSpace> sp;
    std::unique_ptr<RelativeComplex> rc;
    KahlerOps k;
    explicit Built(Config c) {
        sys = make_system(c);
        sp = std::make_unique<FockSpace>(sys->fc, c.hmax2);
        rc = std::make_unique<RelativeComplex>(*sys, *sp);
        k = assemble_kahler(*rc);
    }
    std::vector<std::pair<int, int>> hd() const {
        std::vector<std::pair<int, int>> out;
        for (int h2 : h_values(*rc))
            for (int d : d_values(*rc, h2)) out.push_back({h2, d});
        return out;
    }
};

struct Line {
    bool pass = true;
    std::string detail;
    void need(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

int failures = 0;
void report(int n, const std::string& title, const std::function<void(Line&)>& body) {
    Line l;
    try {
        body(l);
    } catch (const std::exception& e) {
        l.need(false, std::string("exception: ") + e.what());
    }
    std::cout << (l.pass ? "PASS" : "FAIL") << "  " << n << ". " << title;
    if (!l.detail.empty()) std::cout << "  [" << l.detail << "]";
    std::cout << std::endl;
    if (!l.pass) ++failures;
}

void all_checks(Line& l, const std::vector<CheckResult>& rs, const std::string& where) {
    for (auto& r : rs) l.need(r.pass, where + " " + r.name + ": " + r.witness);
}

// dim of g-invariants in Sym^p(V), by acting with T_A on degree-p monomials
long sym_invariants(const std::vector<Mat>& T, int n, int p) {
    std::vector<std::vector<int>> mons;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == p) {
            mons.push_back(cur);
            return;
        }
        for (int v = start; v < n; ++v) {
            cur.push_back(v);
            rec(v);
            cur.pop_back();
        }
    };
    rec(0);
    std::map<std::vector<int>, int> pos;
    for (size_t i = 0; i < mons.size(); ++i) pos[mons[i]] = i;
    std::vector<SparseMat> act;
    for (auto& t : T) {
        SparseMat m(mons.size(), mons.size());
        for (size_t j = 0; j < mons.size(); ++j) {
            Accum acc;
            for (int slot = 0; slot < p; ++slot)
                for (int c = 0; c < n; ++c) {
                    const Scalar& x = t[c][mons[j][slot]];
                    if (x.is_zero()) continue;
                    std::vector<int> img = mons[j];
                    img[slot] = c;
                    std::sort(img.begin(), img.end());
                    acc.add(pos.at(img), x);
                }
            m.col[j] = acc.take();
        }
        act.push_back(std::move(m));
    }
    std::vector<const SparseMat*> ptrs;
    for (auto& m : act) ptrs.push_back(&m);
    return kernel_of_stack(ptrs, mons.size()).size();
}
}  // namespace

int main() {
    std::unique_ptr<Built> nf4, nf4_ext;
    auto base = [&]() -> Built& {
        if (!nf4) nf4 = std::make_unique<Built>(cfg("cfg_nf4.json", 3));
        return *nf4;
    };
    // h = 2 is where Q first acts nontrivially on NF4
    auto ext = [&]() -> Built& {
        if (!nf4_ext) nf4_ext = std::make_unique<Built>(cfg("cfg_nf4.json", 4));
        return *nf4_ext;
    };

    report(1, "mode algebra: boson, fermion, affine and Virasoro brackets exact", [&](Line& l) {
        Built& b = base();
        all_checks(l, verify_mode_algebra(*b.sp, &b.sys->gd), "NF4 h<=3/2");
        auto sb = make_system(cfg("cfg_sb_c2.json", 6), false);
        all_checks(l, verify_mode_algebra(FockSpace(sb->fc, 6), nullptr), "Sb[C^2] h<=3");
        auto sf = make_system(cfg("cfg_sf_sl2.json", 6), false);
        all_checks(l, verify_mode_algebra(FockSpace(sf->fc, 6), nullptr), "Sf[C^2 x sl2] h<=3");
    });

    report(2, "level -4K and central charge -14 on NF4", [&](Line& l) {
        Built& b = base();
        Mat k = extract_level(b.sys->fc, b.sys->gd);
        const Mat& K = b.sys->g().K;
        for (int a = 0; a < 3; ++a)
            for (int c = 0; c < 3; ++c) l.need(k[a][c] == Scalar(-4) * K[a][c], "level entry " + k[a][c].str());
        Scalar cc = extract_central_charge(b.sys->fc);
        l.need(cc == Scalar(-14), "c = " + cc.str());
        l.need(b.sys->crit.pass, "not twice critical");
    });

    report(3, "graded unitarity on NF4 up to h=3/2", [&](Line& l) {
        Built& b = base();
        l.need(check_spin_statistics(*b.sp).pass, "spin-statistics");
        l.need(check_quaternionic(*b.sp, b.sys->cj).pass, "rho^2 = s");
        auto g = check_gram(*b.sp, b.sys->cj);
        l.need(g.pass && g.checked == static_cast<long>(b.sp->blocks().size()), "Gram: " + g.witness);
        auto s = check_shortening_suite(*b.sp, &b.sys->gd);
        l.need(s.pass, "shortening: " + s.witness);
        l.need(check_gram(FockSpace(b.sys->fc, 4), b.sys->cj).pass, "Gram at h=2");
    });

    report(4, "Kaehler package identities exact on NF4 (h<=3/2, and h=2)", [&](Line& l) {
        for (Built* b : {&base(), &ext()})
            for (auto& id : kahler_identities(*b->rc, b->k)) l.need(id.pass, id.name + ": " + id.witness);
        l.need(!ext().k.lap.is_zero(), "Laplacian vanishes at h=2");
    });

    report(5, "Hodge decompositions and quartets per (h,d)", [&](Line& l) {
        for (Built* b : {&base(), &ext()}) {
            for (auto [h2, d] : b->hd()) {
                auto r = hodge_row(*b->rc, b->k, h2, d);
                l.need(r.decomposition && r.orthogonal && r.cohomology, "hodge row " + r.witness);
                l.need(r.chain == r.harmonic + r.im_qp + r.im_qbp, "dimension count");
                l.need(r.h_qm == r.harmonic && r.h_qp == r.harmonic, "H(Q-) = H(Q+) = ker Delta");
            }
            for (int h2 : h_values(*b->rc)) {
                auto q = quartet_decompose(*b->rc, b->k, h2);
                l.need(q.pass && (q.chain - q.harmonic) % 4 == 0, "quartets " + q.witness);
            }
        }
    });

    report(6, "Q-Q+ lemma and symmetric quotient per grade", [&](Line& l) {
        for (Built* b : {&base(), &ext()})
            for (auto [h2, d] : b->hd()) {
                auto r = ddc_row(*b->rc, b->k, h2, d);
                l.need(r.pass && r.closed_exact_minus == r.im_qmqp && r.symmetric_quotient == r.h_qm,
                       "(h,d)=(" + half_str(h2) + "," + std::to_string(d) + ")");
            }
    });

    report(7, "dim H at (h,d)=(1,0) on NF4 is 28, equal to the sl2-invariant count in Sym^2(C^16)", [&](Line& l) {
        Built& b = base();
        long h10 = hodge_row(*b.rc, b.k, 2, 0).h_qm;
        auto& [blk, T] = b.sys->gd.matter[0];
        long oracle = sym_invariants(T, b.sys->fc.blocks()[blk].size, 2);
        l.need(h10 == 28 && oracle == 28, "H=" + std::to_string(h10) + " oracle=" + std::to_string(oracle));
    });

    report(8, "formality: dimension columns agree and induced Q- on H(Q+) is zero", [&](Line& l) {
        for (Built* b : {&base(), &ext()})
            for (auto [h2, d] : b->hd()) {
                auto r = formality_row(*b->rc, b->k, h2, d);
                l.need(r.pass && r.h_qm == r.h_ker && r.h_ker == r.h_qp && r.induced_nonzero == 0,
                       "(h,d)=(" + half_str(h2) + "," + std::to_string(d) + ")");
            }
    });

    report(9, "iterated cohomology of sl2+sl2 double NF4 up to h=1", [&](Line& l) {
        Built dbl(cfg("cfg_nf4_x2.json", 2));
        std::vector<std::vector<int>> groups;
        for (auto& f : dbl.sys->g().factors) groups.push_back(f.idx);
        std::string w;
        auto rows = iterated_cohomology(*dbl.rc, groups, &w);
        Built single(cfg("cfg_nf4.json", 2));
        std::map<std::pair<int, int>, long> one;
        for (auto [h2, d] : single.hd()) one[{h2, d}] = hodge_row(*single.rc, single.k, h2, d).h_qm;
        long total = 0;
        for (auto& r : rows) {
            l.need(r.pass && !r.stages.empty() && r.stages.back() == r.total, "stage mismatch " + w);
            long prod = 0;
            for (auto& [k1, v1] : one)
                for (auto& [k2, v2] : one)
                    if (k1.first + k2.first == r.h2 && k1.second + k2.second == r.d) prod += v1 * v2;
            l.need(prod == r.total, "Kunneth at (h,d)=(" + half_str(r.h2) + "," + std::to_string(r.d) + ")");
            total += r.h2 == 2 ? r.total : 0;
        }
        l.need(total == 56, "h=1 total " + std::to_string(total));
    });

    report(10, "PVA relation, Koszul degree<=2 against invariant counts and BRST HL dims", [&](Line& l) {
        Built& b = ext();
        for (auto& id : pva_kahler_identities(*b.rc, b.k)) l.need(id.pass, id.name);
        auto kz = koszul_reduction(*b.sys, 2);
        l.need(kz.equivariant, kz.witness);
        auto& [blk, T] = b.sys->gd.matter[0];
        int n = b.sys->fc.blocks()[blk].size;
        auto brst = hl_brst_dims(*b.rc, b.k, 2);
        for (auto& r : kz.rows) {
            if (r.g == 0) l.need(r.cohomology == sym_invariants(T, n, r.p), "Koszul p=" + std::to_string(r.p));
            long bd = brst.count({r.R2(), r.d()}) ? brst.at({r.R2(), r.d()}) : 0;
            l.need(bd == r.cohomology, "BRST HL at (2R,d)=(" + std::to_string(r.R2()) + "," + std::to_string(r.d()) + ")");
        }
    });

    report(11, "verify --all is byte-identical across runs", [&](Line& l) {
        Request req;
        req.command = "verify";
        req.suite = "all";
        Config c = cfg("cfg_nf4.json");
        auto a = run_command(c, req), b = run_command(c, req);
        req.jobs = 2;
        auto p = run_command(c, req);
        l.need(a.exit_code == 0, "verify --all failed");
        l.need(a.json.dump(2) == b.json.dump(2) && a.json.dump(2) == p.json.dump(2), "reports differ");
    });

    std::cout << (failures ? "FAILED " : "ALL PASS ") << 11 - failures << "/11" << std::endl;
    return failures ? 1 : 0;
}

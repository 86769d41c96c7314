#include "semiinf/workbench.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "semiinf/algebra.hpp"
#include "semiinf/complex.hpp"
#include "semiinf/hl.hpp"
#include "semiinf/hodge.hpp"

namespace semiinf {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

// results land at their index, so the reduce order never depends on scheduling
template <class T>
std::vector<T> parallel_map(int n, int jobs, const std::function<T(int)>& f) {
    std::vector<T> out(n);
    jobs = std::max(1, std::min(jobs, n));
    if (jobs == 1) {
        for (int i = 0; i < n; ++i) out[i] = f(i);
        return out;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errs(jobs);
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&, t] {
            try {
                for (int i = next++; i < n; i = next++) out[i] = f(i);
            } catch (...) {
                errs[t] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

struct Session {
    const Config& cfg;
    const Request& req;
    std::string hash;
    std::unique_ptr<System> sys;
    std::unique_ptr<FockSpace> sp;
    std::unique_ptr<RelativeComplex> rc;
    std::unique_ptr<KahlerOps> k;
    bool cache_hit = false;

    Session(const Config& c, const Request& r) : cfg(c), req(r), hash(config_hash(c)) {}

    System& system() {
        if (!sys) sys = make_system(cfg);
        return *sys;
    }
    FockSpace& space() {
        if (!sp) sp = std::make_unique<FockSpace>(system().fc, cfg.hmax2);
        return *sp;
    }
    fs::path cache_file() const { return fs::path(req.cache_dir) / (hash + ".complex.json"); }
    RelativeComplex& complex() {
        if (rc) return *rc;
        if (!req.cache_dir.empty() && fs::exists(cache_file())) {
            std::ifstream in(cache_file());
            nlohmann::json j;
            try {
                in >> j;
                rc = complex_from_json(system(), space(), j, hash);
            } catch (const std::exception&) {
                rc = nullptr;
            }
            cache_hit = rc != nullptr;
        }
        if (!rc) {
            rc = std::make_unique<RelativeComplex>(system(), space());
            store();
        }
        return *rc;
    }
    void store() {
        if (req.cache_dir.empty()) return;
        fs::create_directories(req.cache_dir);
        fs::path tmp = cache_file();
        tmp += ".tmp";
        {
            std::ofstream out(tmp);
            out << complex_to_json(*rc, hash).dump() << "\n";
        }
        fs::rename(tmp, cache_file());
    }
    // ghost adjoints come from the mode table, which needs conj(K) K = 1
    bool hermitian_ghosts() { return !system().cfg.gauged || system().g().unitary_compatible(); }
    KahlerOps& kahler() {
        if (!hermitian_ghosts())
            throw ValidationError("gauge algebra basis has conj(K) K != 1: no Hermitian structure on the ghosts, Kaehler operators unavailable");
        if (!k) k = std::make_unique<KahlerOps>(assemble_kahler(complex()));
        return *k;
    }
    // (h, d) pairs of the relative complex in order
    std::vector<std::pair<int, int>> hd() {
        std::vector<std::pair<int, int>> out;
        for (int h2 : h_values(complex()))
            for (int d : d_values(complex(), h2)) out.push_back({h2, d});
        return out;
    }
};

struct Checks {
    ojson list = ojson::array();
    bool pass = true;
    bool witnesses = false;
    std::vector<std::vector<std::string>> rows;

    void add(const std::string& suite, const std::string& name, bool ok, long checked, const std::string& witness) {
        ojson j;
        j["suite"] = suite;
        j["name"] = name;
        j["pass"] = ok;
        if (checked >= 0) j["checked"] = checked;
        if (!ok || witnesses) j["witness"] = witness;
        list.push_back(j);
        pass = pass && ok;
        rows.push_back({suite, name, ok ? "pass" : "fail", checked >= 0 ? std::to_string(checked) : ""});
    }
    void add(const std::string& suite, const CheckResult& r) { add(suite, r.name, r.pass, r.checked, r.witness); }
    void add(const std::string& suite, const Identity& r) { add(suite, r.name, r.pass, -1, r.witness); }
};

std::string grade_tag(int h2, int d) { return "(h,d)=(" + half_str(h2) + "," + std::to_string(d) + ")"; }

void suite_algebra(Session& s, Checks& c) {
    const char* S = "algebra";
    System& sys = s.system();
    {
        CheckResult r{"Lie algebra: Jacobi identity and invariant form"};
        r.checked = sys.g().dim;
        try {
            if (sys.cfg.gauged) validate(sys.g());
        } catch (const std::exception& e) {
            r.fail(e.what());
        }
        c.add(S, r);
    }
    if (sys.cfg.gauged) {
        c.add(S, "twice critical: Tr_V = 2 Tr_ad", sys.crit.pass, sys.crit.factors.size(), sys.crit.witness);
        Mat k = extract_level(sys.fc, sys.gd);
        Mat want = sys.g().killing();
        CheckResult r{"matter level is -2h^v K"};
        for (int a = 0; a < sys.g().dim; ++a)
            for (int b = 0; b < sys.g().dim; ++b) {
                ++r.checked;
                if (k[a][b] != -want[a][b])
                    r.fail("level entry (" + sys.g().labels[a] + "," + sys.g().labels[b] + ") is " + k[a][b].str() + ", expected " +
                           (-want[a][b]).str());
            }
        c.add(S, r);
    }
    {
        long nb = 0, nf = 0;
        for (auto& sp : sys.fc.species()) (sp.fam == Family::Boson ? nb : nf) += 1;
        Scalar cc = extract_central_charge(sys.fc);
        Scalar want = Scalar::frac(-nb, 2) - Scalar(nf);
        c.add(S, "central charge is " + want.str(), cc == want, 1, "extracted " + cc.str());
    }
    for (auto& r : verify_mode_algebra(s.space(), sys.cfg.gauged ? &sys.gd : nullptr)) c.add(S, r);
}

void suite_unitarity(Session& s, Checks& c) {
    const char* S = "unitarity";
    System& sys = s.system();
    FockSpace& sp = s.space();
    c.add(S, "ghost metric satisfies conj(K) K = 1", s.hermitian_ghosts(), 1, "gauge algebra basis is not unitary for K");
    c.add(S, check_spin_statistics(sp));
    c.add(S, check_quaternionic(sp, sys.cj));
    c.add(S, check_gram(sp, sys.cj));
    CheckResult adj{"mode adjoints agree with the Gram form"};
    int H = sp.hmax2();
    for (int sidx = 0; sidx < sys.fc.nspecies(); ++sidx)
        for (int n = -(H + 1) / 2; n <= (H + 1) / 2; ++n) {
            auto r = check_adjoint(single_mode(sys.fc, Mode{sidx, n}, H), sp);
            adj.checked += r.checked;
            if (!r.pass) adj.fail(r.witness);
        }
    for (int n = -2; n <= 2; ++n) {
        auto r = check_adjoint(virasoro_mode(sys.fc, n, H), sp);
        adj.checked += r.checked;
        if (!r.pass) adj.fail(r.witness);
    }
    c.add(S, adj);
    c.add(S, check_shortening_suite(sp, sys.cfg.gauged ? &sys.gd : nullptr));
    if (sys.cfg.gauged)
        for (auto& r : verify_good_action(sys)) c.add(S, r);
}

void suite_brst(Session& s, Checks& c) {
    const char* S = "brst";
    System& sys = s.system();
    if (!sys.cfg.gauged) return;
    FockSpace& sp = s.space();
    int H = sp.hmax2();
    const auto& g = sys.g();
    std::vector<SpaceOp> j;
    for (int A = 0; A < g.dim; ++A) j.push_back(build(total_current0(sys.fc, sys.gd, A, H), sp));
    CheckResult clo{"total current zero modes close on g"};
    for (int A = 0; A < g.dim; ++A)
        for (int B = 0; B < g.dim; ++B) {
            SpaceOp rhs = op_scale(Scalar(0), j[0]);
            for (int C = 0; C < g.dim; ++C)
                if (!g.fabc(A, B, C).is_zero()) rhs = op_add(rhs, j[C], g.fabc(A, B, C));
            ++clo.checked;
            std::string w;
            if (!op_equal(bracket(j[A], j[B]), rhs, sp, &w)) clo.fail(w);
        }
    c.add(S, clo);
    SpaceOp qp = build(brst_q(sys.fc, sys.gd, +1, H), sp), qm = build(brst_q(sys.fc, sys.gd, -1, H), sp);
    for (int sign : {+1, -1}) {
        SpaceOp split = op_add(build(brst_q_explicit(sys.fc, sys.gd, sign, H), sp), build(brst_s_explicit(sys.fc, sys.gd, sign, H), sp));
        std::string w;
        bool ok = op_equal(sign > 0 ? qp : qm, split, sp, &w);
        c.add(S, std::string("explicit split Q") + (sign > 0 ? "+" : "-") + " = Q_{1/2} + S", ok, sp.size(), w);
    }
    CheckResult inv{"Q+ and Q- preserve the relative complex"};
    RelativeComplex& rc = s.complex();
    try {
        inv.checked = rc.size();
        rc.restrict(qp);
        rc.restrict(qm);
    } catch (const std::exception& e) {
        inv.fail(e.what());
    }
    c.add(S, inv);
    if (!inv.pass) return;
    SparseMat rp = rc.restrict(qp), rm = rc.restrict(qm);
    SparseMat z(rc.size(), rc.size());
    auto zero = [&](const std::string& name, const SparseMat& a) {
        bool ok = mat_equal(a, z);
        c.add(S, name, ok, rc.size(), ok ? "" : mat_diff_witness(a, z));
    };
    zero("(Q+)^2 = 0 on the relative complex", mat_mul(rp, rp));
    zero("(Q-)^2 = 0 on the relative complex", mat_mul(rm, rm));
    zero("[Q+, Q-] = 0 on the relative complex", mat_add(mat_mul(rp, rm), mat_mul(rm, rp)));
}

void suite_hodge(Session& s, Checks& c) {
    const char* S = "hodge";
    if (!s.system().cfg.gauged) return;
    if (!s.hermitian_ghosts()) {
        c.add(S, "Kaehler package available", false, -1, "gauge algebra basis has conj(K) K != 1");
        return;
    }
    RelativeComplex& rc = s.complex();
    KahlerOps& k = s.kahler();
    for (auto& id : kahler_identities(rc, k)) c.add(S, id);
    for (auto& id : pva_kahler_identities(rc, k)) c.add("pva", id);
    auto hd = s.hd();
    struct Row {
        HodgeRow h;
        DdcRow ddc;
        FormalityRow f;
    };
    auto rows = parallel_map<Row>(hd.size(), s.req.jobs, [&](int i) {
        auto [h2, d] = hd[i];
        return Row{hodge_row(rc, k, h2, d), ddc_row(rc, k, h2, d), formality_row(rc, k, h2, d)};
    });
    CheckResult dec{"Hodge decomposition per (h,d)"}, orth{"Hodge summands orthogonal"}, coh{"H(Q-) = H(Q+) = ker Delta"},
        ddc{"Q-Q+ lemma and symmetric quotient"}, form{"formality dims and induced Q- = 0"};
    for (size_t i = 0; i < hd.size(); ++i) {
        auto& r = rows[i];
        std::string tag = grade_tag(hd[i].first, hd[i].second);
        for (auto* x : {&dec, &orth, &coh, &ddc, &form}) ++x->checked;
        if (!r.h.decomposition) dec.fail(tag + " " + r.h.witness);
        if (!r.h.orthogonal) orth.fail(tag + " " + r.h.witness);
        if (!r.h.cohomology) coh.fail(tag + " " + r.h.witness);
        if (!r.ddc.pass) ddc.fail(tag + " closed-exact " + std::to_string(r.ddc.closed_exact_minus) + " vs rank Q-Q+ " + std::to_string(r.ddc.im_qmqp));
        if (!r.f.pass)
            form.fail(tag + " dims " + std::to_string(r.f.h_qm) + "/" + std::to_string(r.f.h_ker) + "/" + std::to_string(r.f.h_qp) +
                      ", induced nonzero " + std::to_string(r.f.induced_nonzero));
    }
    for (auto* x : {&dec, &orth, &coh, &ddc, &form}) c.add(S, *x);
    auto hs = h_values(rc);
    auto quart = parallel_map<QuartetReport>(hs.size(), s.req.jobs, [&](int i) { return quartet_decompose(rc, k, hs[i]); });
    CheckResult q{"quartet decomposition"};
    for (auto& r : quart) {
        ++q.checked;
        if (!r.pass) q.fail("h=" + half_str(r.h2) + " " + r.witness);
    }
    c.add(S, q);
    CheckResult u{"USp(2) acts on cohomology"};
    for (int h2 : hs) {
        auto r = usp2_on_cohomology(rc, k, h2);
        ++u.checked;
        if (!(r.preserved && r.brackets && r.pi_degree)) u.fail("h=" + half_str(h2) + " " + r.witness);
    }
    c.add(S, u);
}

ojson envelope(Session& s, const std::string& command) {
    ojson j;
    j["schema_version"] = kSchemaVersion;
    j["code_version"] = kCodeVersion;
    j["command"] = command;
    j["config"] = {{"name", s.cfg.name}, {"hash", s.hash}};
    j["h_max"] = half_str(s.cfg.hmax2);
    return j;
}

// cohomology dims per (h, R, d) block: ker Delta on the block (Delta preserves R)
std::vector<std::pair<Grade, long>> cohomology_blocks(Session& s) {
    RelativeComplex& rc = s.complex();
    std::vector<std::pair<Grade, long>> out;
    if (!s.system().cfg.gauged) {
        for (auto& b : rc.blocks()) out.push_back({b.g, static_cast<long>(b.basis.size())});
        return out;
    }
    KahlerOps& k = s.kahler();
    auto dims = parallel_map<long>(rc.blocks().size(), s.req.jobs, [&](int i) {
        auto& b = rc.blocks()[i];
        SparseMat sub(rc.size(), b.basis.size());
        for (size_t j = 0; j < b.basis.size(); ++j) sub.col[j] = k.lap.col[b.offset + j];
        return static_cast<long>(kernel_of(sub).size());
    });
    for (size_t i = 0; i < rc.blocks().size(); ++i)
        if (dims[i]) out.push_back({rc.blocks()[i].g, dims[i]});
    return out;
}

void grade_table(Report& rep, const std::vector<std::pair<Grade, long>>& rows, const char* key) {
    ojson t = ojson::array();
    rep.csv_header = {"h", "R", "d", "dim"};
    for (auto& [g, dim] : rows) {
        t.push_back({{"h", half_str(g.h2)}, {"R", half_str(g.R2)}, {"d", g.d}, {"dim", dim}});
        rep.csv_rows.push_back({half_str(g.h2), half_str(g.R2), std::to_string(g.d), std::to_string(dim)});
    }
    rep.json[key] = t;
}

Report cmd_verify(Session& s) {
    Report rep;
    rep.json = envelope(s, "verify");
    rep.json["suite"] = s.req.suite;
    Checks c;
    c.witnesses = s.req.emit_witnesses || s.cfg.emit_witnesses;
    const std::string& su = s.req.suite;
    if (su != "all" && su != "algebra" && su != "unitarity" && su != "brst" && su != "hodge")
        throw std::invalid_argument("unknown suite '" + su + "'");
    if (su == "all" || su == "algebra") suite_algebra(s, c);
    if (su == "all" || su == "unitarity") suite_unitarity(s, c);
    if (su == "all" || su == "brst") suite_brst(s, c);
    if (su == "all" || su == "hodge") suite_hodge(s, c);
    rep.json["status"] = c.pass ? "pass" : "fail";
    rep.json["checks"] = c.list;
    rep.csv_header = {"suite", "name", "status", "checked"};
    rep.csv_rows = c.rows;
    rep.exit_code = c.pass ? 0 : 1;
    return rep;
}

Report cmd_basis(Session& s) {
    Report rep;
    rep.json = envelope(s, "basis");
    std::vector<std::pair<Grade, long>> rows;
    for (auto& b : s.complex().blocks()) rows.push_back({b.g, static_cast<long>(b.basis.size())});
    rep.json["status"] = "pass";
    rep.json["fock_dim"] = s.space().size();
    rep.json["relative_dim"] = s.complex().size();
    grade_table(rep, rows, "blocks");
    return rep;
}

Report cmd_complex_build(Session& s) {
    Report rep;
    rep.json = envelope(s, "complex build");
    RelativeComplex& rc = s.complex();
    rep.json["status"] = "pass";
    rep.json["fock_dim"] = s.space().size();
    rep.json["relative_dim"] = rc.size();
    rep.json["cache"] = s.req.cache_dir.empty() ? "disabled" : (s.cache_hit ? "hit" : "stored");
    std::vector<std::pair<Grade, long>> rows;
    for (auto& b : rc.blocks()) rows.push_back({b.g, static_cast<long>(b.basis.size())});
    grade_table(rep, rows, "blocks");
    return rep;
}

Report cmd_cohomology(Session& s) {
    Report rep;
    rep.json = envelope(s, "cohomology");
    auto rows = cohomology_blocks(s);
    rep.json["status"] = "pass";
    grade_table(rep, rows, "cohomology");
    if (s.system().cfg.gauged) {
        ojson eu = ojson::array();
        for (int h2 : h_values(s.complex())) {
            auto [chain, coh] = euler_characteristic(s.complex(), s.kahler(), h2);
            eu.push_back({{"h", half_str(h2)}, {"chain", chain}, {"cohomology", coh}});
            if (chain != coh) {
                rep.json["status"] = "fail";
                rep.exit_code = 1;
            }
        }
        rep.json["euler"] = eu;
    }
    return rep;
}

Report cmd_hodge(Session& s) {
    Report rep;
    rep.json = envelope(s, "hodge");
    bool ok = true;
    ojson t = ojson::array();
    rep.csv_header = {"h", "d", "chain", "harmonic", "im_Q+", "im_Qbar+", "im_Q-", "im_Qbar-", "H_Q-", "H_Q+", "pass"};
    if (s.system().cfg.gauged) {
        auto hd = s.hd();
        auto rows = parallel_map<HodgeRow>(hd.size(), s.req.jobs, [&](int i) { return hodge_row(s.complex(), s.kahler(), hd[i].first, hd[i].second); });
        for (auto& r : rows) {
            bool p = r.decomposition && r.orthogonal && r.cohomology;
            ok = ok && p;
            ojson j = {{"h", half_str(r.h2)}, {"d", r.d}, {"chain", r.chain}, {"harmonic", r.harmonic},
                       {"im_Q+", r.im_qp}, {"im_Qbar+", r.im_qbp}, {"im_Q-", r.im_qm}, {"im_Qbar-", r.im_qbm},
                       {"H_Q-", r.h_qm}, {"H_Q+", r.h_qp}, {"pass", p}};
            if (!p || s.req.emit_witnesses) j["witness"] = r.witness;
            t.push_back(j);
            rep.csv_rows.push_back({half_str(r.h2), std::to_string(r.d), std::to_string(r.chain), std::to_string(r.harmonic),
                                    std::to_string(r.im_qp), std::to_string(r.im_qbp), std::to_string(r.im_qm),
                                    std::to_string(r.im_qbm), std::to_string(r.h_qm), std::to_string(r.h_qp), p ? "pass" : "fail"});
        }
    }
    rep.json["status"] = ok ? "pass" : "fail";
    rep.json["rows"] = t;
    rep.exit_code = ok ? 0 : 1;
    return rep;
}

Report cmd_quartets(Session& s) {
    Report rep;
    rep.json = envelope(s, "quartets");
    bool ok = true;
    ojson t = ojson::array();
    rep.csv_header = {"h", "chain", "harmonic", "quartets", "pass"};
    if (s.system().cfg.gauged) {
        auto hs = h_values(s.complex());
        auto rows = parallel_map<QuartetReport>(hs.size(), s.req.jobs, [&](int i) { return quartet_decompose(s.complex(), s.kahler(), hs[i]); });
        for (auto& r : rows) {
            ok = ok && r.pass;
            ojson groups = ojson::array();
            for (auto& g : r.groups)
                groups.push_back({{"delta", g.delta}, {"rational", g.rational}, {"count", g.count}, {"bottom_d", g.bottom_d}});
            ojson j = {{"h", half_str(r.h2)}, {"chain", r.chain}, {"harmonic", r.harmonic}, {"quartets", r.quartets},
                       {"groups", groups}, {"pass", r.pass}};
            if (!r.pass || s.req.emit_witnesses) j["witness"] = r.witness;
            t.push_back(j);
            rep.csv_rows.push_back({half_str(r.h2), std::to_string(r.chain), std::to_string(r.harmonic), std::to_string(r.quartets),
                                    r.pass ? "pass" : "fail"});
        }
    }
    rep.json["status"] = ok ? "pass" : "fail";
    rep.json["rows"] = t;
    rep.exit_code = ok ? 0 : 1;
    return rep;
}

Report cmd_formality(Session& s) {
    Report rep;
    rep.json = envelope(s, "formality");
    bool ok = true;
    ojson t = ojson::array();
    rep.csv_header = {"h", "d", "H_Q-", "H_kerQ+", "H_Q+", "induced_nonzero", "pass"};
    if (s.system().cfg.gauged) {
        auto hd = s.hd();
        auto rows = parallel_map<FormalityRow>(hd.size(), s.req.jobs, [&](int i) { return formality_row(s.complex(), s.kahler(), hd[i].first, hd[i].second); });
        for (auto& r : rows) {
            ok = ok && r.pass;
            t.push_back({{"h", half_str(r.h2)}, {"d", r.d}, {"H_Q-", r.h_qm}, {"H_kerQ+", r.h_ker}, {"H_Q+", r.h_qp},
                         {"induced_nonzero", r.induced_nonzero}, {"pass", r.pass}});
            rep.csv_rows.push_back({half_str(r.h2), std::to_string(r.d), std::to_string(r.h_qm), std::to_string(r.h_ker),
                                    std::to_string(r.h_qp), std::to_string(r.induced_nonzero), r.pass ? "pass" : "fail"});
        }
    }
    rep.json["status"] = ok ? "pass" : "fail";
    rep.json["rows"] = t;
    rep.exit_code = ok ? 0 : 1;
    return rep;
}

Report cmd_iterated(Session& s) {
    Report rep;
    rep.json = envelope(s, "iterated");
    bool ok = true;
    ojson t = ojson::array();
    ojson groups = ojson::array();
    rep.csv_header = {"h", "d", "stages", "total", "pass"};
    std::string w;
    if (s.system().cfg.gauged) {
        std::vector<std::vector<int>> gs;
        for (auto& f : s.system().g().factors) {
            gs.push_back(f.idx);
            groups.push_back({{"name", f.name}, {"generators", f.idx}});
        }
        for (auto& r : iterated_cohomology(s.complex(), gs, &w)) {
            ok = ok && r.pass;
            t.push_back({{"h", half_str(r.h2)}, {"d", r.d}, {"stages", r.stages}, {"total", r.total}, {"pass", r.pass}});
            std::string st;
            for (long x : r.stages) st += (st.empty() ? "" : "/") + std::to_string(x);
            rep.csv_rows.push_back({half_str(r.h2), std::to_string(r.d), st, std::to_string(r.total), r.pass ? "pass" : "fail"});
        }
    }
    rep.json["status"] = ok ? "pass" : "fail";
    rep.json["groups"] = groups;
    rep.json["rows"] = t;
    if (!ok || s.req.emit_witnesses) rep.json["witness"] = w;
    rep.exit_code = ok ? 0 : 1;
    return rep;
}

Report cmd_hl_ring(Session& s) {
    Report rep;
    rep.json = envelope(s, "hl-ring");
    int deg = s.req.hl_degree >= 0 ? s.req.hl_degree : s.cfg.hl_degree_max;
    rep.json["degree_max"] = deg;
    System& sys = s.system();
    bool ok = true;
    HlRing ring(sys.fc, deg);
    ojson basis = ojson::array();
    for (auto& [key, v] : ring.basis()) basis.push_back({{"R", half_str(key.first)}, {"d", key.second}, {"dim", v.size()}});
    rep.json["matter_hl_basis"] = basis;
    rep.csv_header = {"p", "g", "R", "d", "chain", "invariant", "cohomology", "brst"};
    if (sys.cfg.gauged) {
        KoszulResult kz = koszul_reduction(sys, deg);
        ok = ok && kz.equivariant;
        std::map<std::pair<int, int>, long> brst;
        if (deg > 0) brst = hl_brst_dims(s.complex(), s.kahler(), deg);
        ojson rows = ojson::array();
        for (auto& r : kz.rows) {
            ojson j = {{"p", r.p}, {"g", r.g}, {"R", half_str(r.R2())}, {"d", r.d()}, {"chain", r.chain},
                       {"invariant", r.invariant}, {"cohomology", r.cohomology}};
            std::string bcol;
            // the BRST side is only known for blocks inside the weight cutoff
            if (r.p + 2 * r.g <= s.cfg.hmax2) {
                auto it = brst.find({r.R2(), r.d()});
                long b = it == brst.end() ? 0 : it->second;
                j["brst"] = b;
                bcol = std::to_string(b);
                if (b != r.cohomology) ok = false;
            }
            rows.push_back(j);
            rep.csv_rows.push_back({std::to_string(r.p), std::to_string(r.g), half_str(r.R2()), std::to_string(r.d()),
                                    std::to_string(r.chain), std::to_string(r.invariant), std::to_string(r.cohomology), bcol});
        }
        rep.json["moment_map_sign"] = kz.kappa;
        rep.json["equivariant"] = kz.equivariant;
        rep.json["koszul"] = rows;
        if (!kz.equivariant) rep.json["witness"] = kz.witness;
    }
    rep.json["status"] = ok ? "pass" : "fail";
    rep.exit_code = ok ? 0 : 1;
    return rep;
}

Report cmd_character(Session& s) {
    Report rep;
    rep.json = envelope(s, "character");
    auto fock = character_terms(s.space());
    auto rel = s.complex().character();
    rep.json["status"] = "pass";
    rep.json["fock"] = character_string(fock);
    rep.json["relative"] = character_string(rel);
    std::vector<std::pair<Grade, long>> rows;
    for (auto& t : rel) rows.push_back({t.g, t.dim});
    grade_table(rep, rows, "relative_terms");
    return rep;
}

}  // namespace

Report run_command(const Config& cfg, const Request& req) {
    Session s(cfg, req);
    const std::string& c = req.command;
    if (c == "verify") return cmd_verify(s);
    if (c == "basis") return cmd_basis(s);
    if (c == "complex-build") return cmd_complex_build(s);
    if (c == "cohomology") return cmd_cohomology(s);
    if (c == "hodge") return cmd_hodge(s);
    if (c == "quartets") return cmd_quartets(s);
    if (c == "formality") return cmd_formality(s);
    if (c == "iterated") return cmd_iterated(s);
    if (c == "hl-ring") return cmd_hl_ring(s);
    if (c == "character") return cmd_character(s);
    throw std::invalid_argument("unknown command '" + c + "'");
}

std::string csv_text(const Report& r) {
    auto cell = [](const std::string& x) {
        if (x.find_first_of(",\"\n") == std::string::npos) return x;
        std::string o = "\"";
        for (char ch : x) {
            if (ch == '"') o += '"';
            o += ch;
        }
        return o + "\"";
    };
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& v) {
        for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << cell(v[i]);
        os << "\n";
    };
    line(r.csv_header);
    for (auto& row : r.csv_rows) line(row);
    return os.str();
}

}  // namespace semiinf

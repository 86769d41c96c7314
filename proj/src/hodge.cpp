#include "semiinf/hodge.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace semiinf {

namespace {

SparseMat mul(const SparseMat& a, const SparseMat& b) { return mat_mul(a, b); }
SparseMat anti(const SparseMat& a, const SparseMat& b) { return mat_add(mat_mul(a, b), mat_mul(b, a)); }
SparseMat comm(const SparseMat& a, const SparseMat& b) { return mat_add(mat_mul(a, b), mat_mul(b, a), Scalar(-1)); }
SparseMat zero_like(const SparseMat& a) { return SparseMat(a.rows, a.cols); }

Identity ident(const std::string& name, const SparseMat& lhs, const SparseMat& rhs) {
    Identity r{name};
    if (!mat_equal(lhs, rhs)) {
        r.pass = false;
        r.witness = mat_diff_witness(lhs, rhs);
    }
    return r;
}

// A^dag = B  <=>  G A = B^H G
Identity adjoint_ident(const std::string& name, const SparseMat& g, const SparseMat& a, const SparseMat& b) {
    return ident(name, mul(g, a), mul(mat_adjoint(b), g));
}

std::vector<SparseVec> images(const SparseMat& m, const std::vector<int>& idx) {
    std::vector<SparseVec> out;
    for (int i : idx)
        if (!m.col[i].empty()) out.push_back(m.col[i]);
    return out;
}

std::vector<SparseVec> units(const std::vector<int>& idx) {
    std::vector<SparseVec> out;
    for (int i : idx) out.push_back({{i, Scalar(1)}});
    return out;
}

// kernel of the stacked maps restricted to span(ws), as vectors in the ambient space
std::vector<SparseVec> kernel_in_span(const std::vector<const SparseMat*>& ms, const std::vector<SparseVec>& ws) {
    if (ws.empty()) return {};
    std::vector<SparseMat> subs;
    for (auto* m : ms) {
        SparseMat s(m->rows, ws.size());
        for (size_t j = 0; j < ws.size(); ++j) s.col[j] = m->apply(ws[j]);
        subs.push_back(std::move(s));
    }
    std::vector<const SparseMat*> ptrs;
    for (auto& s : subs) ptrs.push_back(&s);
    std::vector<SparseVec> out;
    for (auto& c : kernel_of_stack(ptrs, ws.size())) {
        Accum acc;
        for (auto& [j, x] : c) acc.add_vec(x, ws[j]);
        out.push_back(acc.take());
    }
    return out;
}

std::vector<SparseVec> kernel_on(const std::vector<const SparseMat*>& ms, const std::vector<int>& idx) {
    return kernel_in_span(ms, units(idx));
}

long rank(const std::vector<SparseVec>& vs, int n) { return vs.empty() ? 0 : rank_of(vs, n); }

// first index of a nonzero vector decides its slice
int d_of(const RelativeComplex& rc, const SparseVec& v) { return rc.blocks()[rc.block_of(v.front().first)].g.d; }

std::string sstr(const Scalar& s) { return s.str(); }

}  // namespace

KahlerOps assemble_kahler(const RelativeComplex& rc, const std::vector<int>* subset) {
    KahlerOps k;
    int n = rc.size();
    const System& sys = rc.system();
    const FockSpace& sp = rc.space();
    k.gram = rc.gram();
    if (!sys.gauged()) {
        SparseMat z(n, n);
        k.qp = k.qm = k.qbp = k.qbm = k.Qp = k.Qm = k.Sp = k.Sm = k.Qbp = k.Qbm = k.lap = k.pi = k.L = k.Lam = z;
        return k;
    }
    int h = sp.hmax2();
    auto R = [&](const ModeOp& o) { return rc.restrict(build(o, sp)); };
    ModeOp qp = brst_q(sys.fc, sys.gd, +1, h, subset);
    ModeOp qm = brst_q(sys.fc, sys.gd, -1, h, subset);
    k.qp = R(qp);
    k.qm = R(qm);
    k.qbp = R(qp.adjoint());
    k.qbm = R(qm.adjoint());
    ModeOp Qp = qp.r_component(1), Qm = qm.r_component(1);
    k.Qp = R(Qp);
    k.Qm = R(Qm);
    k.Sp = R(qp.r_component(-1));
    k.Sm = R(qm.r_component(-1));
    k.Qbp = R(Qp.adjoint());
    k.Qbm = R(Qm.adjoint());
    k.lap = anti(k.qp, k.qbp);
    k.pi = R(lefschetz_pi(sys.fc, sys.gd, h));
    k.L = R(lefschetz_L(sys.fc, sys.gd, h));
    k.Lam = R(lefschetz_Lambda(sys.fc, sys.gd, h));
    return k;
}

std::vector<Identity> kahler_identities(const RelativeComplex& rc, const KahlerOps& k) {
    std::vector<Identity> out;
    SparseMat z = zero_like(k.qp);
    const SparseMat& g = k.gram;
    out.push_back(ident("(Q+)^2 = 0", mul(k.qp, k.qp), z));
    out.push_back(ident("(Q-)^2 = 0", mul(k.qm, k.qm), z));
    out.push_back(ident("[Q+, Q-] = 0", anti(k.qp, k.qm), z));
    out.push_back(ident("(Qbar+)^2 = 0", mul(k.qbp, k.qbp), z));
    out.push_back(ident("(Qbar-)^2 = 0", mul(k.qbm, k.qbm), z));
    out.push_back(ident("[Qbar+, Qbar-] = 0", anti(k.qbp, k.qbm), z));
    out.push_back(adjoint_ident("Qbar+ is the Gram adjoint of Q+", g, k.qp, k.qbp));
    out.push_back(adjoint_ident("Qbar- is the Gram adjoint of Q-", g, k.qm, k.qbm));
    out.push_back(ident("[Q-, Qbar-] = [Q+, Qbar+]", anti(k.qm, k.qbm), k.lap));
    out.push_back(ident("[Q+, Qbar-] = 0", anti(k.qp, k.qbm), z));
    out.push_back(ident("[Q-, Qbar+] = 0", anti(k.qm, k.qbp), z));

    out.push_back(ident("Q+ = Q+_{1/2} + S+", k.qp, mat_add(k.Qp, k.Sp)));
    out.push_back(ident("Q- = Q-_{1/2} + S-", k.qm, mat_add(k.Qm, k.Sm)));
    out.push_back(ident("(Q+_{1/2})^2 = 0", mul(k.Qp, k.Qp), z));
    out.push_back(ident("(Q-_{1/2})^2 = 0", mul(k.Qm, k.Qm), z));
    out.push_back(ident("(S+)^2 = 0", mul(k.Sp, k.Sp), z));
    out.push_back(ident("(S-)^2 = 0", mul(k.Sm, k.Sm), z));
    out.push_back(ident("[Q+_{1/2}, S+] = 0", anti(k.Qp, k.Sp), z));
    out.push_back(ident("[Q-_{1/2}, S-] = 0", anti(k.Qm, k.Sm), z));
    out.push_back(ident("[Q+_{1/2}, Q-_{1/2}] = 0", anti(k.Qp, k.Qm), z));
    out.push_back(ident("[S+, S-] = 0", anti(k.Sp, k.Sm), z));
    out.push_back(ident("[Q+_{1/2}, S-] = -[Q-_{1/2}, S+]", anti(k.Qp, k.Sm), mat_scale(Scalar(-1), anti(k.Qm, k.Sp))));
    // sign forced by K = +trace form: (S^a)^dag = -e_ab Q^b and (Q^a)^dag = e_ab S^b with e_{+-} = +1
    out.push_back(adjoint_ident("(S+)^dag = -Q-_{1/2}", g, k.Sp, mat_scale(Scalar(-1), k.Qm)));
    out.push_back(adjoint_ident("(S-)^dag = Q+_{1/2}", g, k.Sm, k.Qp));
    out.push_back(adjoint_ident("(Q+_{1/2})^dag = S-", g, k.Qp, k.Sm));
    out.push_back(adjoint_ident("(Q-_{1/2})^dag = -S+", g, k.Qm, mat_scale(Scalar(-1), k.Sp)));

    out.push_back(ident("[L, Lambda] = Pi", comm(k.L, k.Lam), k.pi));
    out.push_back(ident("[Pi, L] = 2L", comm(k.pi, k.L), mat_scale(Scalar(2), k.L)));
    out.push_back(ident("[Pi, Lambda] = -2 Lambda", comm(k.pi, k.Lam), mat_scale(Scalar(-2), k.Lam)));
    out.push_back(adjoint_ident("Pi^dag = Pi", g, k.pi, k.pi));
    out.push_back(adjoint_ident("L^dag = Lambda", g, k.L, k.Lam));
    out.push_back(ident("[Pi, Q+] = -Q+", comm(k.pi, k.qp), mat_scale(Scalar(-1), k.qp)));
    out.push_back(ident("[Pi, Q-] = Q-", comm(k.pi, k.qm), k.qm));
    out.push_back(ident("[L, Q+] = Q-", comm(k.L, k.qp), k.qm));
    out.push_back(ident("[Lambda, Q-] = Q+", comm(k.Lam, k.qm), k.qp));
    out.push_back(ident("[L, Q-] = 0", comm(k.L, k.qm), z));
    out.push_back(ident("[Lambda, Q+] = 0", comm(k.Lam, k.qp), z));
    out.push_back(ident("[Pi, Qbar+] = Qbar+", comm(k.pi, k.qbp), k.qbp));
    out.push_back(ident("[Pi, Qbar-] = -Qbar-", comm(k.pi, k.qbm), mat_scale(Scalar(-1), k.qbm)));
    out.push_back(ident("[L, Qbar-] = -Qbar+", comm(k.L, k.qbm), mat_scale(Scalar(-1), k.qbp)));
    out.push_back(ident("[Lambda, Qbar+] = -Qbar-", comm(k.Lam, k.qbp), mat_scale(Scalar(-1), k.qbm)));
    out.push_back(ident("[L, Qbar+] = 0", comm(k.L, k.qbp), z));
    out.push_back(ident("[Lambda, Qbar-] = 0", comm(k.Lam, k.qbm), z));
    out.push_back(ident("[Delta, Pi] = 0", comm(k.lap, k.pi), z));
    out.push_back(ident("[Delta, L] = 0", comm(k.lap, k.L), z));
    out.push_back(ident("[Delta, Lambda] = 0", comm(k.lap, k.Lam), z));

    // Pi = -d on every relative basis vector
    SparseMat pid(rc.size(), rc.size());
    for (auto& b : rc.blocks())
        for (size_t j = 0; j < b.basis.size(); ++j)
            if (b.g.d != 0 && rc.system().gauged()) pid.col[b.offset + j] = {{static_cast<int>(b.offset + j), Scalar(-b.g.d)}};
    out.push_back(ident("Pi = -d", k.pi, pid));

    out.push_back(adjoint_ident("Delta is self-adjoint", g, k.lap, k.lap));
    Identity pos{"<x|Delta x> = |Q+x|^2 + |Qbar+x|^2 on basis vectors"};
    for (int i = 0; i < rc.size() && pos.pass; ++i) {
        SparseVec e = {{i, Scalar(1)}};
        Scalar lhs = herm(g, e, k.lap.col[i]);
        Scalar rhs = herm(g, k.qp.col[i], k.qp.col[i]) + herm(g, k.qbp.col[i], k.qbp.col[i]);
        if (lhs != rhs) {
            pos.pass = false;
            pos.witness = "basis vector " + std::to_string(i) + ": " + lhs.str() + " vs " + rhs.str();
        }
    }
    out.push_back(pos);
    return out;
}

std::vector<Identity> pva_kahler_identities(const RelativeComplex&, const KahlerOps& k) {
    std::vector<Identity> out;
    SparseMat z = zero_like(k.qp);
    SparseMat half = mat_scale(Scalar::frac(1, 2), k.lap);
    out.push_back(adjoint_ident("Qbar_{1/2,+} is the Gram adjoint of Q+_{1/2}", k.gram, k.Qp, k.Qbp));
    out.push_back(adjoint_ident("Qbar_{1/2,-} is the Gram adjoint of Q-_{1/2}", k.gram, k.Qm, k.Qbm));
    out.push_back(ident("Qbar_{1/2,+} = S-", k.Qbp, k.Sm));
    out.push_back(ident("Qbar_{1/2,-} = -S+", k.Qbm, mat_scale(Scalar(-1), k.Sp)));
    out.push_back(ident("[Q+, Qbar+] = Delta/2", anti(k.Qp, k.Qbp), half));
    out.push_back(ident("[Q-, Qbar-] = Delta/2", anti(k.Qm, k.Qbm), half));
    out.push_back(ident("[Q+, Qbar-] = 0", anti(k.Qp, k.Qbm), z));
    out.push_back(ident("[Q-, Qbar+] = 0", anti(k.Qm, k.Qbp), z));
    out.push_back(ident("[Q+, Q-] = 0", anti(k.Qp, k.Qm), z));
    out.push_back(ident("[Qbar+, Qbar-] = 0", anti(k.Qbp, k.Qbm), z));
    return out;
}

std::vector<int> slice(const RelativeComplex& rc, int h2, int d) {
    std::vector<int> out;
    for (auto& b : rc.blocks())
        if (b.g.h2 == h2 && b.g.d == d)
            for (size_t j = 0; j < b.basis.size(); ++j) out.push_back(b.offset + j);
    return out;
}

std::vector<int> slice_h(const RelativeComplex& rc, int h2) {
    std::vector<int> out;
    for (auto& b : rc.blocks())
        if (b.g.h2 == h2)
            for (size_t j = 0; j < b.basis.size(); ++j) out.push_back(b.offset + j);
    return out;
}

std::vector<int> h_values(const RelativeComplex& rc) {
    std::set<int> s;
    for (auto& b : rc.blocks()) s.insert(b.g.h2);
    return {s.begin(), s.end()};
}

std::vector<int> d_values(const RelativeComplex& rc, int h2) {
    std::set<int> s;
    for (auto& b : rc.blocks())
        if (b.g.h2 == h2) s.insert(b.g.d);
    return {s.begin(), s.end()};
}

std::vector<SparseVec> harmonic_basis(const RelativeComplex& rc, const KahlerOps& k, int h2, int d) {
    return kernel_on({&k.lap}, slice(rc, h2, d));
}

std::vector<SparseVec> cohomology_basis(const RelativeComplex& rc, const KahlerOps& k, int h2, int d) {
    return harmonic_basis(rc, k, h2, d);
}

HodgeRow hodge_row(const RelativeComplex& rc, const KahlerOps& k, int h2, int d) {
    HodgeRow r;
    r.h2 = h2;
    r.d = d;
    int n = rc.size();
    auto idx = slice(rc, h2, d);
    auto up = slice(rc, h2, d + 1), dn = slice(rc, h2, d - 1);
    r.chain = idx.size();
    auto harm = kernel_on({&k.lap}, idx);
    r.harmonic = harm.size();
    auto iqp = images(k.qp, dn), iqbp = images(k.qbp, up), iqm = images(k.qm, up), iqbm = images(k.qbm, dn);
    r.im_qp = rank(iqp, n);
    r.im_qbp = rank(iqbp, n);
    r.im_qm = rank(iqm, n);
    r.im_qbm = rank(iqbm, n);
    r.h_qm = static_cast<long>(kernel_on({&k.qm}, idx).size()) - r.im_qm;
    r.h_qp = static_cast<long>(kernel_on({&k.qp}, idx).size()) - r.im_qp;
    r.decomposition = r.chain == r.harmonic + r.im_qp + r.im_qbp && r.chain == r.harmonic + r.im_qm + r.im_qbm;
    r.cohomology = r.h_qm == r.harmonic && r.h_qp == r.harmonic;
    auto orth = [&](const std::vector<SparseVec>& a, const std::vector<SparseVec>& b, const char* what) {
        for (auto& y : b) {
            SparseVec gy = k.gram.apply(y);
            for (auto& x : a)
                if (!sv_dot(sv_conj(x), gy).is_zero()) {
                    if (r.orthogonal) r.witness = std::string("summands not orthogonal: ") + what;
                    r.orthogonal = false;
                    return;
                }
        }
    };
    orth(harm, iqp, "ker Delta vs im Q+");
    orth(harm, iqbp, "ker Delta vs im Qbar+");
    orth(iqp, iqbp, "im Q+ vs im Qbar+");
    orth(harm, iqm, "ker Delta vs im Q-");
    orth(harm, iqbm, "ker Delta vs im Qbar-");
    orth(iqm, iqbm, "im Q- vs im Qbar-");
    if (!r.decomposition && r.witness.empty()) r.witness = "dim chain != dim ker Delta + rank Q + rank Qbar";
    if (!r.cohomology && r.witness.empty()) r.witness = "dim H(Q) != dim ker Delta";
    return r;
}

std::pair<long, long> euler_characteristic(const RelativeComplex& rc, const KahlerOps& k, int h2) {
    long c = 0, h = 0;
    for (int d : d_values(rc, h2)) {
        HodgeRow r = hodge_row(rc, k, h2, d);
        long s = (d % 2) ? -1 : 1;
        c += s * r.chain;
        h += s * r.h_qm;
    }
    return {c, h};
}

QuartetReport quartet_decompose(const RelativeComplex& rc, const KahlerOps& k, int h2) {
    QuartetReport rep;
    rep.h2 = h2;
    int n = rc.size();
    std::vector<SparseVec> all;  // every quartet vector and harmonic vector
    auto fail = [&](const std::string& w) {
        if (rep.pass) rep.witness = w;
        rep.pass = false;
    };
    for (int d : d_values(rc, h2)) {
        auto idx = slice(rc, h2, d);
        rep.chain += idx.size();
        auto harm = kernel_on({&k.lap}, idx);
        rep.harmonic += harm.size();
        for (auto& v : harm) all.push_back(v);
        auto low = kernel_on({&k.qbp, &k.qbm}, idx);
        // bottoms: orthogonal complement of the harmonic space inside ker Qbar+ n ker Qbar-
        SparseMat cons(harm.size(), low.size());
        for (size_t i = 0; i < low.size(); ++i) {
            SparseVec gl = k.gram.apply(low[i]);
            Accum col;
            for (size_t j = 0; j < harm.size(); ++j) col.add(j, sv_dot(sv_conj(harm[j]), gl));
            cons.col[i] = col.take();
        }
        std::vector<SparseVec> bottoms;
        for (auto& c : kernel_of(cons)) {
            Accum acc;
            for (auto& [i, x] : c) acc.add_vec(x, low[i]);
            bottoms.push_back(acc.take());
        }
        if (bottoms.empty()) continue;
        Echelon eb(n);
        for (auto& v : bottoms) eb.insert(v);
        const auto& rows = eb.rows();
        int m = rows.size();
        SparseMat dm(m, m);
        for (int j = 0; j < m; ++j) {
            SparseVec img = k.lap.apply(rows[j]);
            if (!eb.in_span(img)) {
                fail("Delta does not preserve the bottom space at d=" + std::to_string(d));
                return rep;
            }
            auto co = eb.coords(img);
            for (int i = 0; i < m; ++i)
                if (!co[i].is_zero()) dm.col[j].emplace_back(i, co[i]);
        }
        Poly p = poly_squarefree(annihilating_poly(dm, 1u));
        Poly rest;
        auto roots = rational_roots(p, &rest);
        auto lift = [&](const SparseVec& c) {
            Accum acc;
            for (auto& [i, x] : c) acc.add_vec(x, rows[i]);
            return acc.take();
        };
        auto emit_quartets = [&](const std::vector<SparseVec>& bots, QuartetGroup& grp) {
            for (auto& x : bots) {
                SparseVec a = k.qm.apply(x), b = k.qp.apply(x), c = k.qm.apply(b);
                std::vector<SparseVec> q = {x, a, b, c};
                for (int s = 0; s < 4; ++s) {
                    if (q[s].empty()) fail("quartet member vanishes at d=" + std::to_string(d));
                    for (int t = 0; t < 4; ++t) {
                        Scalar v = herm(k.gram, q[s], q[t]);
                        if (s == t && !(v.is_real() && v.re > 0)) fail("quartet Gram not positive at d=" + std::to_string(d));
                        if (s != t && !v.is_zero()) fail("quartet members not orthogonal at d=" + std::to_string(d));
                    }
                }
                for (auto& v : q) all.push_back(v);
                grp.bottom_d.push_back(d);
                ++grp.count;
            }
        };
        long found = 0;
        for (auto& r : roots) {
            Scalar delta{r};
            if (r <= 0) fail("non-positive eigenvalue of Delta on non-harmonic states");
            SparseMat shifted = mat_add(dm, SparseMat::identity(m, delta), Scalar(-1));
            std::vector<SparseVec> eig;
            for (auto& c : kernel_of(shifted)) eig.push_back(lift(c));
            eig = gram_schmidt(k.gram, eig);
            for (auto& x : eig)
                if (herm(k.gram, x, k.lap.apply(x)) != delta * herm(k.gram, x, x)) fail("<x|Delta x> != delta |x|^2");
            QuartetGroup grp;
            grp.delta = delta.str();
            emit_quartets(eig, grp);
            found += grp.count;
            rep.quartets += grp.count;
            rep.groups.push_back(std::move(grp));
        }
        if (poly_trim(rest).size() > 1) {
            std::vector<SparseVec> inv;
            SparseMat rm(m, m);
            for (int j = 0; j < m; ++j) rm.col[j] = poly_apply(rest, dm, {{j, Scalar(1)}});
            for (auto& c : kernel_of(rm)) inv.push_back(lift(c));
            QuartetGroup grp;
            grp.rational = false;
            grp.delta = poly_str(rest);
            // an invariant block: quartet bottoms need not be orthogonal to each other here
            for (auto& x : inv) {
                all.push_back(x);
                all.push_back(k.qm.apply(x));
                all.push_back(k.qp.apply(x));
                all.push_back(k.qm.apply(k.qp.apply(x)));
                grp.bottom_d.push_back(d);
                ++grp.count;
            }
            found += grp.count;
            rep.quartets += grp.count;
            rep.groups.push_back(std::move(grp));
        }
        if (found != m) fail("eigenspaces of Delta do not exhaust the bottom space at d=" + std::to_string(d));
    }
    std::sort(rep.groups.begin(), rep.groups.end(), [](const QuartetGroup& a, const QuartetGroup& b) {
        if (a.rational != b.rational) return a.rational;
        return a.delta < b.delta;
    });
    // merge groups with the same eigenvalue across d
    std::vector<QuartetGroup> merged;
    for (auto& g : rep.groups) {
        if (!merged.empty() && merged.back().delta == g.delta && merged.back().rational == g.rational) {
            merged.back().count += g.count;
            merged.back().bottom_d.insert(merged.back().bottom_d.end(), g.bottom_d.begin(), g.bottom_d.end());
        } else {
            merged.push_back(g);
        }
    }
    rep.groups = std::move(merged);
    if (4 * rep.quartets + rep.harmonic != rep.chain) fail("4 * quartets + harmonic != chain");
    if (rank(all, n) != rep.chain) fail("quartets and harmonic states do not span the chain space");
    return rep;
}

DdcRow ddc_row(const RelativeComplex& rc, const KahlerOps& k, int h2, int d) {
    DdcRow r;
    r.h2 = h2;
    r.d = d;
    int n = rc.size();
    auto idx = slice(rc, h2, d);
    auto kqp = kernel_on({&k.qp}, idx), kqm = kernel_on({&k.qm}, idx);
    auto iqm = images(k.qm, slice(rc, h2, d + 1)), iqp = images(k.qp, slice(rc, h2, d - 1));
    r.closed_exact_minus = intersect_spans(intersect_spans(iqm, kqp, n), kqm, n).size();
    r.closed_exact_plus = intersect_spans(intersect_spans(iqp, kqm, n), kqp, n).size();
    SparseMat qmqp = mat_mul(k.qm, k.qp);
    r.im_qmqp = rank(images(qmqp, idx), n);
    long both = kernel_on({&k.qp, &k.qm}, idx).size();
    r.symmetric_quotient = both - r.im_qmqp;
    r.h_qm = static_cast<long>(kqm.size()) - rank(iqm, n);
    r.pass = r.closed_exact_minus == r.im_qmqp && r.closed_exact_plus == r.im_qmqp && r.symmetric_quotient == r.h_qm;
    return r;
}

FormalityRow formality_row(const RelativeComplex& rc, const KahlerOps& k, int h2, int d) {
    FormalityRow r;
    r.h2 = h2;
    r.d = d;
    int n = rc.size();
    auto idx = slice(rc, h2, d), up = slice(rc, h2, d + 1), dn = slice(rc, h2, d - 1);
    auto kqm = kernel_on({&k.qm}, idx), kqp = kernel_on({&k.qp}, idx);
    auto iqm = images(k.qm, up), iqp = images(k.qp, dn);
    r.h_qm = static_cast<long>(kqm.size()) - rank(iqm, n);
    r.h_qp = static_cast<long>(kqp.size()) - rank(iqp, n);
    auto zboth = kernel_on({&k.qp, &k.qm}, idx);
    auto kqp_up = kernel_on({&k.qp}, up);
    auto bnd = apply_all(k.qm, kqp_up);
    r.h_ker = static_cast<long>(zboth.size()) - rank(bnd, n);
    // Q- on H(Q+): classes at d+1 mapped outside im Q+ at d
    Echelon e(n);
    for (auto& v : iqp) e.insert(v);
    for (auto& v : bnd)
        if (!e.reduce(v).empty()) ++r.induced_nonzero;
    r.pass = r.h_qm == r.h_ker && r.h_ker == r.h_qp && r.induced_nonzero == 0;
    return r;
}

Usp2Report usp2_on_cohomology(const RelativeComplex& rc, const KahlerOps& k, int h2) {
    Usp2Report rep;
    rep.h2 = h2;
    int n = rc.size();
    Echelon e(n);
    for (int d : d_values(rc, h2))
        for (auto& v : harmonic_basis(rc, k, h2, d)) e.insert(v);
    const auto& rows = e.rows();
    int m = rows.size();
    rep.harmonic = m;
    auto restrict_to = [&](const SparseMat& op, const char* name) {
        SparseMat out(m, m);
        for (int j = 0; j < m; ++j) {
            SparseVec img = op.apply(rows[j]);
            if (!e.in_span(img)) {
                rep.preserved = false;
                if (rep.witness.empty()) rep.witness = std::string(name) + " leaves the harmonic space";
                continue;
            }
            auto co = e.coords(img);
            for (int i = 0; i < m; ++i)
                if (!co[i].is_zero()) out.col[j].emplace_back(i, co[i]);
        }
        return out;
    };
    SparseMat pi = restrict_to(k.pi, "Pi"), L = restrict_to(k.L, "L"), Lam = restrict_to(k.Lam, "Lambda");
    rep.brackets = mat_equal(comm(L, Lam), pi) && mat_equal(comm(pi, L), mat_scale(Scalar(2), L)) &&
                   mat_equal(comm(pi, Lam), mat_scale(Scalar(-2), Lam));
    if (!rep.brackets && rep.witness.empty()) rep.witness = "restricted triple does not close into sl(2)";
    for (int j = 0; j < m; ++j) {
        int d = d_of(rc, rows[j]);
        if (pi.col[j] != SparseVec{} && !(pi.col[j].size() == 1 && pi.col[j][0].first == j && pi.col[j][0].second == Scalar(-d)))
            rep.pi_degree = false;
        if (pi.col[j].empty() && d != 0) rep.pi_degree = false;
    }
    if (!rep.pi_degree && rep.witness.empty()) rep.witness = "Pi eigenvalue differs from -d on a class";
    if (m <= 12) {
        auto dense = [&](const SparseMat& a) {
            std::vector<std::vector<std::string>> out(m, std::vector<std::string>(m));
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) out[i][j] = sstr(a.at(i, j));
            return out;
        };
        rep.pi = dense(pi);
        rep.L = dense(L);
        rep.Lambda = dense(Lam);
    }
    return rep;
}

std::vector<IteratedRow> iterated_cohomology(const RelativeComplex& rc, const std::vector<std::vector<int>>& groups,
                                             std::string* witness) {
    const System& sys = rc.system();
    const FockSpace& sp = rc.space();
    int n = rc.size();
    int h = sp.hmax2();
    auto note = [&](const std::string& w) {
        if (witness && witness->empty()) *witness = w;
    };
    // partition must be closed under the bracket
    if (sys.gauged()) {
        std::vector<int> owner(sys.g().dim, -1);
        for (size_t a = 0; a < groups.size(); ++a)
            for (int A : groups[a]) {
                if (A < 0 || A >= sys.g().dim || owner[A] >= 0) throw ValidationError("partition does not cover the generators once each");
                owner[A] = a;
            }
        for (int A = 0; A < sys.g().dim; ++A) {
            if (owner[A] < 0) throw ValidationError("partition does not cover the generators once each");
            for (int B = 0; B < sys.g().dim; ++B)
                for (int C = 0; C < sys.g().dim; ++C)
                    if (owner[A] != owner[B] && !sys.g().fabc(A, B, C).is_zero())
                        throw ValidationError("partition is not a direct sum decomposition");
        }
    }
    std::vector<SparseMat> q, qb;
    SparseMat qm_total(n, n);
    for (auto& grp : groups) {
        if (!sys.gauged()) {
            q.emplace_back(n, n);
            qb.emplace_back(n, n);
            continue;
        }
        ModeOp op = brst_q(sys.fc, sys.gd, -1, h, &grp);
        q.push_back(rc.restrict(build(op, sp)));
        qb.push_back(rc.restrict(build(op.adjoint(), sp)));
        qm_total = mat_add(qm_total, q.back());
    }
    std::vector<IteratedRow> rows;
    for (int h2 : h_values(rc)) {
        auto ds = d_values(rc, h2);
        std::map<int, std::vector<SparseVec>> w;
        for (int d : ds) w[d] = units(slice(rc, h2, d));
        std::map<int, IteratedRow> out;
        for (int d : ds) {
            out[d].h2 = h2;
            out[d].d = d;
        }
        for (size_t a = 0; a < q.size(); ++a) {
            std::map<int, std::vector<SparseVec>> next;
            for (int d : ds) {
                auto ker = kernel_in_span({&q[a]}, w[d]);
                auto im = apply_all(q[a], w.count(d + 1) ? w[d + 1] : std::vector<SparseVec>{});
                Echelon ew(n);
                for (auto& v : w[d]) ew.insert(v);
                for (auto& v : im)
                    if (!ew.in_span(v)) {
                        note("summand differential leaves the previous stage at d=" + std::to_string(d));
                        out[d].pass = false;
                        break;
                    }
                long dim = static_cast<long>(ker.size()) - rank(im, n);
                out[d].stages.push_back(dim);
                next[d] = kernel_in_span({&q[a], &qb[a]}, w[d]);
                if (static_cast<long>(next[d].size()) != dim) {
                    note("stage harmonic space differs from stage cohomology at d=" + std::to_string(d));
                    out[d].pass = false;
                }
            }
            w = std::move(next);
        }
        for (int d : ds) {
            auto idx = slice(rc, h2, d);
            long total = static_cast<long>(kernel_on({&qm_total}, idx).size()) - rank(images(qm_total, slice(rc, h2, d + 1)), n);
            IteratedRow& r = out[d];
            r.total = total;
            if (r.stages.empty() || r.stages.back() != total) {
                r.pass = false;
                note("iterated dims differ from total dims at d=" + std::to_string(d));
            }
            rows.push_back(r);
        }
    }
    return rows;
}

}  // namespace semiinf

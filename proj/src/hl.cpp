#include "semiinf/hl.hpp"

#include <algorithm>
#include <functional>

namespace semiinf {

GrModes gr_modes(const ModeOp& xn, int p2, int n) {
    GrModes g;
    g.plus = xn.r_component(p2);
    g.minus = n >= 0 ? xn.r_component(p2 - 2) : ModeOp(xn.fields(), xn.name() + "^-", xn.hmax2());
    g.plus.finalize();
    g.minus.finalize();
    return g;
}

CheckResult check_bps(const FockSpace& sp) {
    CheckResult r{"BPS bound"};
    for (auto& b : sp.blocks()) {
        ++r.checked;
        if (b.g.h2 < b.g.R2 + std::abs(b.g.d))
            r.fail("state violates h >= R + |d|/2 at (h,R,d)=(" + half_str(b.g.h2) + "," + half_str(b.g.R2) + "," +
                   std::to_string(b.g.d) + ")");
    }
    return r;
}

namespace {
bool hl_key(const FieldContent& fc, Key k) {
    const Species& s = fc.species()[key_species(k)];
    if (key_family(k) == Family::Boson) return key_w2(k) == 1;
    return key_w2(k) == 2 && s.d == -1 && !fc.blocks()[s.block].ghost;
}
}  // namespace

HlElem hl_add(const HlElem& a, const HlElem& b, const Scalar& s) {
    std::vector<Term> v = a;
    for (auto& t : b) v.push_back({t.mono, s * t.c});
    return merge_terms(std::move(v));
}

HlRing::HlRing(const FieldContent& fc, int degree_max) : fc_(&fc), deg_(degree_max) {
    FockSpace full(fc, std::max(2, 2 * degree_max));
    auto bps = check_bps(full);
    if (!bps.pass) throw ValidationError(bps.witness);
    sp_ = std::make_unique<FockSpace>(fc, 2 * degree_max, 4000000, [&](Key k) { return hl_key(fc, k); });
    for (auto& b : sp_->blocks()) {
        if (b.g.R2 > degree_max) continue;
        if (b.g.h2 != b.g.R2 - b.g.d) throw ValidationError("HL generator does not saturate the BPS bound");
        auto& v = basis_[{b.g.R2, b.g.d}];
        for (int i = 0; i < b.size; ++i) v.push_back(sp_->state(b.offset + i));
    }
}

std::vector<Key> HlRing::generators() const {
    std::vector<Key> out;
    for (auto& [k, v] : basis_)
        if (k.first == 1)
            for (auto& m : v) out.push_back(m[0]);
    return out;
}

HlElem HlRing::product(const HlElem& x, const HlElem& y) const {
    std::vector<Term> acc;
    for (auto& a : x) {
        std::vector<Term> cur;
        for (auto& b : y) cur.push_back({b.mono, a.c * b.c});
        for (int i = static_cast<int>(a.mono.size()) - 1; i >= 0; --i) {
            std::vector<Term> next;
            Mode m = key_mode(*fc_, a.mono[i]);
            for (auto& t : cur) apply_mode(*fc_, m, t.mono, t.c, next);
            cur = std::move(next);
        }
        for (auto& t : cur) acc.push_back(std::move(t));
    }
    return merge_terms(std::move(acc));
}

HlElem HlRing::bracket(const HlElem& x, const HlElem& y) const {
    std::vector<Term> acc;
    for (auto& a : x)
        for (size_t i = 0; i < a.mono.size(); ++i) {
            if (key_family(a.mono[i]) != Family::Boson) continue;
            Mode m = key_mode(*fc_, a.mono[i]);
            std::vector<Term> contracted;
            for (auto& b : y) apply_mode(*fc_, Mode{m.s, 0}, b.mono, a.c * b.c, contracted);
            Monomial rest = a.mono;
            rest.erase(rest.begin() + i);
            for (auto& t : product(mono(rest), merge_terms(std::move(contracted)))) acc.push_back(std::move(t));
        }
    return merge_terms(std::move(acc));
}

bool HlRing::contains(const HlElem& x) const {
    for (auto& t : x) {
        if (sp_->index_of(t.mono) < 0) return false;
        for (Key k : t.mono)
            if (!hl_key(*fc_, k)) return false;
    }
    return true;
}

// ---- Koszul model ----

namespace {
// monomial: sorted bosons (0..n-1, repeats) then strictly increasing fermions (n..n+m-1)
using KMono = std::vector<int>;
using KPoly = std::map<KMono, Scalar>;

struct Koszul {
    int n, m;
    Mat omega_up;
    std::vector<KPoly> mu;                     // moment maps, quadratic in bosons
    std::vector<std::vector<KPoly>> bos_act;   // [X][c] image of q^c under X
    std::vector<Mat> gh_act;                   // [X][A][D]: X eta^A = sum_D gh[A][D] eta^D
    std::map<std::pair<int, int>, std::vector<KMono>> basis;
    std::map<std::pair<int, int>, std::map<KMono, int>> index;

    bool is_f(int v) const { return v >= n; }

    static void add(KPoly& p, const KMono& k, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = p.find(k);
        if (it == p.end()) p.emplace(k, c);
        else {
            it->second += c;
            if (it->second.is_zero()) p.erase(it);
        }
    }

    // monomial with fermion slot i replaced by fermion v; returns sign 0 if repeated
    int replace_fermion(const KMono& k, size_t i, int v, KMono& out) const {
        out = k;
        out.erase(out.begin() + i);
        size_t nb = 0;
        while (nb < out.size() && !is_f(out[nb])) ++nb;
        // fermions in out from nb; original position of slot i among fermions
        int from = static_cast<int>(i - nb);
        size_t pos = nb;
        while (pos < out.size() && out[pos] < v) ++pos;
        if (pos < out.size() && out[pos] == v) return 0;
        int to = static_cast<int>(pos - nb);
        out.insert(out.begin() + pos, v);
        return ((from - to) % 2 == 0) ? 1 : -1;
    }

    KMono times_bosons(const KMono& k, const KMono& b) const {
        KMono out;
        size_t nb = 0;
        while (nb < k.size() && !is_f(k[nb])) ++nb;
        out.assign(k.begin(), k.begin() + nb);
        out.insert(out.end(), b.begin(), b.end());
        std::sort(out.begin(), out.end());
        out.insert(out.end(), k.begin() + nb, k.end());
        return out;
    }

    KPoly act(int X, const KMono& k) const {
        KPoly out;
        for (size_t i = 0; i < k.size(); ++i) {
            if (!is_f(k[i])) {
                KMono rest = k;
                rest.erase(rest.begin() + i);
                for (auto& [b, c] : bos_act[X][k[i]]) add(out, times_bosons(rest, b), c);
            } else {
                int A = k[i] - n;
                for (int D = 0; D < m; ++D) {
                    const Scalar& c = gh_act[X][A][D];
                    if (c.is_zero()) continue;
                    KMono o;
                    int s = replace_fermion(k, i, n + D, o);
                    if (s) add(out, o, s > 0 ? c : -c);
                }
            }
        }
        return out;
    }

    KPoly diff(const KMono& k) const {
        KPoly out;
        size_t nb = 0;
        while (nb < k.size() && !is_f(k[nb])) ++nb;
        for (size_t i = nb; i < k.size(); ++i) {
            int A = k[i] - n;
            KMono rest = k;
            rest.erase(rest.begin() + i);
            Scalar sign = ((i - nb) % 2) ? Scalar(-1) : Scalar(1);
            // eta^A -> -K^{AB} mu_B
            for (int B = 0; B < m; ++B) {
                Scalar c = -kinv[A][B];
                if (c.is_zero()) continue;
                for (auto& [b, x] : mu[B]) add(out, times_bosons(rest, b), sign * c * x);
            }
        }
        return out;
    }

    Mat kinv;

    void enumerate(int p, int g) {
        auto key = std::make_pair(p, g);
        if (basis.count(key)) return;
        std::vector<KMono> out;
        KMono cur;
        std::function<void(int, int)> bos = [&](int start, int left) {
            if (left == 0) {
                std::function<void(int, int)> fer = [&](int s2, int l2) {
                    if (l2 == 0) {
                        out.push_back(cur);
                        return;
                    }
                    for (int v = s2; v < m; ++v) {
                        cur.push_back(n + v);
                        fer(v + 1, l2 - 1);
                        cur.pop_back();
                    }
                };
                fer(0, g);
                return;
            }
            for (int v = start; v < n; ++v) {
                cur.push_back(v);
                bos(v, left - 1);
                cur.pop_back();
            }
        };
        bos(0, p);
        auto& idx = index[key];
        for (size_t i = 0; i < out.size(); ++i) idx[out[i]] = i;
        basis[key] = std::move(out);
    }

    SparseVec vec(const KPoly& p, int pp, int g) {
        enumerate(pp, g);
        Accum acc;
        auto& idx = index[{pp, g}];
        for (auto& [k, c] : p) acc.add(idx.at(k), c);
        return acc.take();
    }
};
}  // namespace

KoszulResult koszul_reduction(const LieAlgebraData& g, const Mat& omega, const std::vector<Mat>& T, int degree_max) {
    KoszulResult res;
    Koszul kz;
    kz.n = omega.size();
    kz.m = g.dim;
    kz.kinv = g.Kinv;
    if (kz.n) kz.omega_up = dinverse(omega);
    // mu_X = 1/2 (Omega T_X)_{ab} q^a q^b
    for (int X = 0; X < g.dim; ++X) {
        KPoly mu;
        if (kz.n) {
            Mat ot = dmul(omega, T[X]);
            for (int a = 0; a < kz.n; ++a)
                for (int b = 0; b < kz.n; ++b)
                    if (!ot[a][b].is_zero()) Koszul::add(mu, KMono{std::min(a, b), std::max(a, b)}, Scalar::frac(1, 2) * ot[a][b]);
        }
        kz.mu.push_back(mu);
    }
    // X q^c = {mu_X, q^c} = sum_{a} d_a mu_X Omega^{ac}
    kz.bos_act.assign(g.dim, std::vector<KPoly>(kz.n));
    for (int X = 0; X < g.dim; ++X)
        for (auto& [k, c] : kz.mu[X])
            for (int s = 0; s < 2; ++s) {
                int a = k[s], other = k[1 - s];
                for (int cc = 0; cc < kz.n; ++cc) {
                    const Scalar& w = kz.omega_up[a][cc];
                    if (!w.is_zero()) Koszul::add(kz.bos_act[X][cc], KMono{other}, c * w);
                }
            }
    // moment map sign: {mu_X, mu_Y} = kappa f_XY^Z mu_Z
    auto pb_mu = [&](int X, int Y) {
        KPoly out;
        for (auto& [k, c] : kz.mu[Y])
            for (int s = 0; s < 2; ++s)
                for (auto& [b, x] : kz.bos_act[X][k[s]]) {
                    KMono mm = {k[1 - s], b[0]};
                    std::sort(mm.begin(), mm.end());
                    Koszul::add(out, mm, c * x);
                }
        return out;
    };
    res.kappa = 1;
    if (kz.n) {
        for (int kap : {1, -1}) {
            bool ok = true;
            for (int X = 0; X < g.dim && ok; ++X)
                for (int Y = 0; Y < g.dim && ok; ++Y) {
                    KPoly lhs = pb_mu(X, Y), rhs;
                    for (int Z = 0; Z < g.dim; ++Z)
                        for (auto& [k, c] : kz.mu[Z]) Koszul::add(rhs, k, Scalar(kap) * g.fabc(X, Y, Z) * c);
                    ok = lhs == rhs;
                }
            if (ok) {
                res.kappa = kap;
                break;
            }
            if (kap == -1) {
                res.kappa = 0;
                res.equivariant = false;
                res.witness = "moment map is not equivariant";
                return res;
            }
        }
    }
    // coadjoint action matched to the moment map: X eta^A = kappa sum K^{AB} f_XB^C K_CD eta^D
    kz.gh_act.assign(g.dim, mat_zero(g.dim, g.dim));
    for (int X = 0; X < g.dim; ++X)
        for (int A = 0; A < g.dim; ++A)
            for (int D = 0; D < g.dim; ++D) {
                Scalar s;
                for (int B = 0; B < g.dim; ++B)
                    for (int C = 0; C < g.dim; ++C) s += g.Kinv[A][B] * g.fabc(X, B, C) * g.K[C][D];
                kz.gh_act[X][A][D] = Scalar(res.kappa) * s;
            }

    std::map<std::pair<int, int>, std::vector<SparseVec>> inv;
    auto invariants = [&](int p, int gg) -> std::vector<SparseVec>& {
        auto key = std::make_pair(p, gg);
        auto it = inv.find(key);
        if (it != inv.end()) return it->second;
        kz.enumerate(p, gg);
        const auto& B = kz.basis[key];
        std::vector<SparseMat> acts;
        for (int X = 0; X < g.dim; ++X) {
            SparseMat a(B.size(), B.size());
            for (size_t j = 0; j < B.size(); ++j) a.col[j] = kz.vec(kz.act(X, B[j]), p, gg);
            acts.push_back(std::move(a));
        }
        std::vector<const SparseMat*> ptrs;
        for (auto& a : acts) ptrs.push_back(&a);
        std::vector<SparseVec> ker;
        if (ptrs.empty()) {
            for (size_t j = 0; j < B.size(); ++j) ker.push_back({{static_cast<int>(j), Scalar(1)}});
        } else {
            ker = kernel_of_stack(ptrs, B.size());
        }
        return inv[key] = ker;
    };
    auto diff_vec = [&](const SparseVec& v, int p, int gg) {
        KPoly out;
        const auto& B = kz.basis[{p, gg}];
        for (auto& [j, c] : v)
            for (auto& [k, x] : kz.diff(B[j])) Koszul::add(out, k, c * x);
        return kz.vec(out, p + 2, gg - 1);
    };
    for (int D = 0; D <= degree_max; ++D)
        for (int gg = 0; gg <= std::min(D, g.dim); ++gg) {
            int p = D - gg;
            if (p > 0 && kz.n == 0) continue;
            KoszulRow row;
            row.p = p;
            row.g = gg;
            kz.enumerate(p, gg);
            row.chain = kz.basis[{p, gg}].size();
            auto& I = invariants(p, gg);
            row.invariant = I.size();
            long ker = row.invariant;
            if (gg > 0) {
                kz.enumerate(p + 2, gg - 1);
                SparseMat dm(kz.basis[{p + 2, gg - 1}].size(), I.size());
                for (size_t j = 0; j < I.size(); ++j) dm.col[j] = diff_vec(I[j], p, gg);
                ker = kernel_of(dm).size();
            }
            long im = 0;
            if (p >= 2 && gg + 1 <= g.dim) {
                auto& I2 = invariants(p - 2, gg + 1);
                std::vector<SparseVec> imgs;
                for (auto& v : I2) imgs.push_back(diff_vec(v, p - 2, gg + 1));
                im = imgs.empty() ? 0 : rank_of(imgs, row.chain);
            }
            row.cohomology = ker - im;
            res.rows.push_back(row);
        }
    // equivariance of the differential on the chains that were built
    for (auto& [key, B] : kz.basis) {
        auto [p, gg] = key;
        if (gg == 0 || p + gg > degree_max) continue;
        for (size_t j = 0; j < B.size() && res.equivariant; ++j)
            for (int X = 0; X < g.dim; ++X) {
                KPoly a, b;
                for (auto& [k, c] : kz.diff(B[j]))
                    for (auto& [k2, c2] : kz.act(X, k)) Koszul::add(a, k2, c * c2);
                for (auto& [k, c] : kz.act(X, B[j]))
                    for (auto& [k2, c2] : kz.diff(k)) Koszul::add(b, k2, c * c2);
                if (a != b) {
                    res.equivariant = false;
                    res.witness = "differential is not G-equivariant at (p,g)=(" + std::to_string(p) + "," + std::to_string(gg) + ")";
                    break;
                }
            }
    }
    return res;
}

KoszulResult koszul_reduction(const System& sys, int degree_max) {
    if (!sys.cfg.gauged) throw ValidationError("Koszul reduction needs a gauge algebra");
    const auto& g = sys.g();
    int n = 0;
    for (int b : sys.boson_blocks) n += sys.fc.blocks()[b].size;
    Mat om = mat_zero(n, n);
    std::vector<Mat> T(g.dim, mat_zero(n, n));
    int off = 0;
    for (auto& [b, Ts] : sys.gd.matter) {
        const FieldBlock& fb = sys.fc.blocks()[b];
        for (int i = 0; i < fb.size; ++i)
            for (int j = 0; j < fb.size; ++j) {
                om[off + i][off + j] = fb.omega[i][j];
                for (int A = 0; A < g.dim; ++A) T[A][off + i][off + j] = Ts[A][i][j];
            }
        off += fb.size;
    }
    return koszul_reduction(g, om, T, degree_max);
}

std::map<std::pair<int, int>, long> hl_brst_dims(const RelativeComplex& rc, const KahlerOps& k, int degree_max) {
    std::map<std::pair<int, int>, long> out;
    for (auto& b : rc.blocks()) {
        if (b.g.d > 0 || b.g.h2 != b.g.R2 - b.g.d || b.g.R2 > degree_max) continue;
        std::vector<int> idx;
        for (size_t j = 0; j < b.basis.size(); ++j) idx.push_back(b.offset + j);
        SparseMat sub(rc.size(), idx.size());
        for (size_t j = 0; j < idx.size(); ++j) sub.col[j] = k.lap.col[idx[j]];
        out[{b.g.R2, b.g.d}] = kernel_of(sub).size();
    }
    return out;
}

}  // namespace semiinf

#include "semiinf/operators.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace semiinf {

namespace {
bool is_fermion(const FieldContent& fc, const Mode& m) { return fc.species()[m.s].fam == Family::Fermion; }

// ordering used for normal ordering: creators (by key) then annihilators (by species, n)
bool mode_less(const FieldContent& fc, const Mode& a, const Mode& b) {
    bool ca = mode_is_creation(a), cb = mode_is_creation(b);
    if (ca != cb) return ca;
    if (ca) return creation_key(fc, a) < creation_key(fc, b);
    if (a.s != b.s) return a.s < b.s;
    return a.n < b.n;
}
}  // namespace

void ModeOp::add(const Scalar& c, std::vector<Mode> modes) {
    if (c.is_zero()) return;
    const FieldContent& fc = *fc_;
    int cre = 0, ann = 0, dh = 0, nf = 0;
    bool zero_mode = false;
    for (auto& m : modes) {
        if (is_fermion(fc, m)) {
            ++nf;
            if (m.n == 0) zero_mode = true;
        }
        int d = mode_dh2(fc, m);
        dh += d;
        if (d > 0) cre += d;
        else ann -= d;
    }
    // the grading is recorded even for dropped terms, so a truncated-away operator keeps its weight shift
    if (!have_dh_) {
        dh2_ = dh;
        odd_ = nf % 2;
        have_dh_ = true;
    } else if (dh != dh2_ || (nf % 2) != odd_) {
        throw std::logic_error("inhomogeneous operator " + name_);
    }
    if (zero_mode || cre > hmax2_ || ann > hmax2_) return;
    // insertion sort with Koszul sign
    bool neg = false;
    for (size_t i = 1; i < modes.size(); ++i)
        for (size_t j = i; j > 0 && mode_less(fc, modes[j], modes[j - 1]); --j) {
            if (is_fermion(fc, modes[j]) && is_fermion(fc, modes[j - 1])) neg = !neg;
            std::swap(modes[j], modes[j - 1]);
        }
    for (size_t i = 1; i < modes.size(); ++i)
        if (modes[i] == modes[i - 1] && is_fermion(fc, modes[i])) return;
    std::vector<std::pair<int, int>> key;
    for (auto& m : modes) key.emplace_back(m.s, m.n);
    auto it = pos_.find(key);
    Scalar cc = neg ? -c : c;
    if (it == pos_.end()) {
        pos_[key] = terms_.size();
        terms_.push_back({cc, std::move(modes)});
    } else {
        terms_[it->second].c += cc;
    }
    finalized_ = false;
}

void ModeOp::add(const ModeOp& o, const Scalar& s) {
    if (o.have_dh_) declare(o.dh2_, o.odd_);
    for (auto& t : o.terms_) add(s * t.c, t.modes);
}

void ModeOp::declare(int dh2, bool odd) {
    if (!have_dh_) {
        dh2_ = dh2;
        odd_ = odd;
        have_dh_ = true;
    } else if (dh2 != dh2_ || odd != odd_) {
        throw std::logic_error("inhomogeneous operator " + name_);
    }
}

void ModeOp::finalize() {
    std::vector<OpTerm> kept;
    for (auto& t : terms_)
        if (!t.c.is_zero()) kept.push_back(t);
    terms_ = std::move(kept);
    pos_.clear();
    for (size_t i = 0; i < terms_.size(); ++i) {
        std::vector<std::pair<int, int>> key;
        for (auto& m : terms_[i].modes) key.emplace_back(m.s, m.n);
        pos_[key] = i;
    }
    by_key_.clear();
    always_.clear();
    const FieldContent& fc = *fc_;
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].modes.empty() || mode_is_creation(terms_[i].modes.back())) {
            always_.push_back(i);
            continue;
        }
        auto& last = terms_[i].modes.back();
        bool boson = !is_fermion(fc, last);
        for (auto& [t, om] : fc.partners(last.s)) {
            Key k = boson ? make_key(Family::Boson, 2 * last.n + 1, t) : make_key(Family::Fermion, 2 * last.n, t);
            by_key_[k].push_back(i);
        }
    }
    finalized_ = true;
}

std::vector<Term> ModeOp::apply(const Monomial& m, const Scalar& c) const {
    if (!finalized_) throw std::logic_error("operator " + name_ + " not finalized");
    std::vector<int> cand = always_;
    for (size_t i = 0; i < m.size(); ++i) {
        if (i > 0 && m[i] == m[i - 1]) continue;
        auto it = by_key_.find(m[i]);
        if (it != by_key_.end()) cand.insert(cand.end(), it->second.begin(), it->second.end());
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::unordered_map<Monomial, Scalar, MonoHash> acc;
    std::vector<Term> cur, nxt;
    for (int ti : cand) {
        const OpTerm& t = terms_[ti];
        cur.clear();
        cur.push_back({m, c * t.c});
        for (int k = static_cast<int>(t.modes.size()) - 1; k >= 0 && !cur.empty(); --k) {
            nxt.clear();
            for (auto& x : cur) apply_mode(*fc_, t.modes[k], x.mono, x.c, nxt);
            std::swap(cur, nxt);
        }
        for (auto& x : cur) {
            auto it = acc.find(x.mono);
            if (it == acc.end()) acc.emplace(std::move(x.mono), std::move(x.c));
            else it->second += x.c;
        }
    }
    std::vector<Term> out;
    for (auto& [mono, v] : acc)
        if (!v.is_zero()) out.push_back({mono, v});
    return out;
}

ModeOp ModeOp::r_component(int dr2) const {
    ModeOp r(*fc_, name_ + "[" + std::to_string(dr2) + "]", hmax2_);
    for (auto& t : terms_) {
        int k = 0;
        for (auto& m : t.modes) k += mode_is_creation(m) ? 1 : -1;
        if (k == dr2) r.add(t.c, t.modes);
    }
    r.dh2_ = dh2_;
    r.odd_ = odd_;
    r.have_dh_ = true;
    r.finalize();
    return r;
}

std::vector<std::pair<Scalar, Mode>> mode_adjoint(const FieldContent& fc, const Mode& m) {
    const Species& sp = fc.species()[m.s];
    const FieldBlock& b = fc.blocks()[sp.block];
    std::vector<std::pair<Scalar, Mode>> out;
    bool boson = sp.fam == Family::Boson;
    int n2 = boson ? -m.n - 1 : -m.n;
    Scalar sign = mode_is_creation(m) ? Scalar(1) : Scalar(-1);
    if (!boson && m.n == 0) return out;
    for (int t = 0; t < b.size; ++t) {
        const Scalar& om = b.omega[sp.local][t];
        if (!om.is_zero()) out.push_back({sign * om, Mode{b.first + t, n2}});
    }
    return out;
}

ModeOp ModeOp::adjoint() const {
    ModeOp r(*fc_, name_ + "^dag", hmax2_);
    for (auto& t : terms_) {
        // reversed product of mode adjoints, conjugated coefficient
        std::vector<std::pair<Scalar, std::vector<Mode>>> parts = {{t.c.conj(), {}}};
        for (int k = static_cast<int>(t.modes.size()) - 1; k >= 0; --k) {
            auto adj = mode_adjoint(*fc_, t.modes[k]);
            std::vector<std::pair<Scalar, std::vector<Mode>>> next;
            for (auto& [c, ms] : parts)
                for (auto& [a, md] : adj) {
                    auto ms2 = ms;
                    ms2.push_back(md);
                    next.push_back({c * a, std::move(ms2)});
                }
            parts = std::move(next);
        }
        for (auto& [c, ms] : parts) r.add(c, ms);
    }
    r.finalize();
    return r;
}

// ---- matrices ----

SpaceOp build(const ModeOp& op, const FockSpace& sp) {
    SpaceOp r;
    r.dh2 = op.dh2();
    r.odd = op.odd();
    r.name = op.name();
    r.dom2 = sp.hmax2() - std::max(0, op.dh2());
    r.m = SparseMat(sp.size(), sp.size());
    for (int j = 0; j < sp.size(); ++j) {
        if (sp.blocks()[sp.block_of_state(j)].g.h2 > r.dom2) continue;
        auto img = op.apply(sp.state(j));
        SparseVec col;
        col.reserve(img.size());
        for (auto& t : img) {
            int i = sp.index_of(t.mono);
            if (i < 0) throw std::logic_error(op.name() + " leaves the truncated space at " + sp.monomial_str(t.mono));
            col.emplace_back(i, std::move(t.c));
        }
        std::sort(col.begin(), col.end(), [](auto& a, auto& b) { return a.first < b.first; });
        r.m.col[j] = std::move(col);
    }
    return r;
}

SpaceOp restrict_dom(const SpaceOp& a, const FockSpace& sp, int dom2) {
    SpaceOp r = a;
    r.dom2 = std::min(a.dom2, dom2);
    for (int j = 0; j < sp.size(); ++j)
        if (sp.blocks()[sp.block_of_state(j)].g.h2 > r.dom2) r.m.col[j].clear();
    return r;
}

SpaceOp compose(const SpaceOp& a, const SpaceOp& b) {
    SpaceOp r;
    r.m = mat_mul(a.m, b.m);
    r.dh2 = a.dh2 + b.dh2;
    r.dom2 = std::min(b.dom2, a.dom2 - b.dh2);
    r.odd = a.odd != b.odd;
    r.name = a.name + "*" + b.name;
    return r;
}

SpaceOp op_add(const SpaceOp& a, const SpaceOp& b, const Scalar& s) {
    SpaceOp r;
    r.m = mat_add(a.m, b.m, s);
    r.dh2 = a.dh2;
    r.dom2 = std::min(a.dom2, b.dom2);
    r.odd = a.odd;
    r.name = a.name + "+" + b.name;
    return r;
}

SpaceOp op_scale(const Scalar& s, const SpaceOp& a) {
    SpaceOp r = a;
    r.m = mat_scale(s, a.m);
    return r;
}

SpaceOp bracket(const SpaceOp& a, const SpaceOp& b) {
    SpaceOp ab = compose(a, b), ba = compose(b, a);
    Scalar s = (a.odd && b.odd) ? Scalar(1) : Scalar(-1);
    SpaceOp r = op_add(ab, ba, s);
    r.name = "[" + a.name + "," + b.name + "]";
    return r;
}

SpaceOp scalar_op(const FockSpace& sp, const Scalar& s) {
    SpaceOp r;
    r.m = SparseMat::identity(sp.size(), s);
    r.dom2 = sp.hmax2();
    r.name = s.str();
    return r;
}

bool op_equal(const SpaceOp& a, const SpaceOp& b, const FockSpace& sp, std::string* witness) {
    int dom = std::min(a.dom2, b.dom2);
    for (int j = 0; j < sp.size(); ++j) {
        if (sp.blocks()[sp.block_of_state(j)].g.h2 > dom) continue;
        if (a.m.col[j] != b.m.col[j]) {
            if (witness) {
                SparseVec d = sv_add(a.m.col[j], b.m.col[j], Scalar(-1));
                *witness = "on " + sp.monomial_str(sp.state(j)) + ": component " + sp.monomial_str(sp.state(d[0].first)) +
                           " is " + sv_get(a.m.col[j], d[0].first).str() + " vs " + sv_get(b.m.col[j], d[0].first).str();
            }
            return false;
        }
    }
    return true;
}

std::map<int, SpaceOp> split_by_R(const SpaceOp& a, const FockSpace& sp) {
    std::map<int, SpaceOp> out;
    for (int j = 0; j < a.m.cols; ++j) {
        int r0 = sp.blocks()[sp.block_of_state(j)].g.R2;
        for (auto& [i, x] : a.m.col[j]) {
            int dr = sp.blocks()[sp.block_of_state(i)].g.R2 - r0;
            auto it = out.find(dr);
            if (it == out.end()) {
                SpaceOp z = a;
                z.m = SparseMat(a.m.rows, a.m.cols);
                z.name = a.name + "[" + std::to_string(dr) + "]";
                it = out.emplace(dr, std::move(z)).first;
            }
            it->second.m.col[j].emplace_back(i, x);
        }
    }
    return out;
}

// ---- standard fields ----

namespace {
std::pair<int, int> boson_range(int hmax2) {
    // q_k with |2h| = |-2k-1| <= hmax2
    int lo = -(hmax2 + 1) / 2, hi = (hmax2 - 1) / 2;
    return {lo, hi};
}
}  // namespace

ModeOp single_mode(const FieldContent& fc, const Mode& m, int hmax2) {
    ModeOp op(fc, fc.species()[m.s].label + "_{" + std::to_string(m.n) + "}", hmax2);
    op.add(Scalar(1), {m});
    op.finalize();
    return op;
}

ModeOp current_mode(const FieldContent& fc, int block, const Mat& T, int n, int hmax2) {
    const FieldBlock& b = fc.blocks()[block];
    Mat M = dmul(b.omega, T);
    ModeOp op(fc, "J_{" + std::to_string(n) + "}", hmax2);
    op.declare(-2 * n, false);
    auto [lo, hi] = boson_range(hmax2);
    Scalar half = Scalar::frac(1, 2);
    for (int a = 0; a < b.size; ++a)
        for (int c = 0; c < b.size; ++c) {
            if (M[a][c].is_zero()) continue;
            Scalar coef = half * M[a][c];
            for (int k = lo; k <= hi; ++k) {
                int l = n - 1 - k;
                if (l < lo || l > hi) continue;
                op.add(coef, {Mode{b.first + a, k}, Mode{b.first + c, l}});
            }
        }
    op.finalize();
    return op;
}

ModeOp current_mode_R(const FieldContent& fc, int block, const Mat& T, int n, int p, int hmax2) {
    return current_mode(fc, block, T, n, hmax2).r_component(2 * p);
}

ModeOp virasoro_mode_block(const FieldContent& fc, int block, int n, int hmax2) {
    const FieldBlock& b = fc.blocks()[block];
    ModeOp op(fc, "L_{" + std::to_string(n) + "}", hmax2);
    op.declare(-2 * n, false);
    Scalar half = Scalar::frac(1, 2);
    for (int a = 0; a < b.size; ++a)
        for (int c = 0; c < b.size; ++c) {
            const Scalar& om = b.omega[a][c];
            if (om.is_zero()) continue;
            if (b.fam == Family::Boson) {
                // 1/2 Omega_ab sum_l (-l-1) :q^b_{n-1-l} q^a_l:
                auto [lo, hi] = boson_range(hmax2);
                for (int l = lo; l <= hi; ++l) {
                    int k = n - 1 - l;
                    if (k < lo || k > hi || l == -1) continue;
                    op.add(half * om * Scalar(-l - 1), {Mode{b.first + c, k}, Mode{b.first + a, l}});
                }
            } else {
                // 1/2 Omega_ab sum_k :eta^a_k eta^b_{n-k}:
                int lim = hmax2 / 2;
                for (int k = -lim; k <= lim; ++k) {
                    int l = n - k;
                    if (k == 0 || l == 0 || l < -lim || l > lim) continue;
                    op.add(half * om, {Mode{b.first + a, k}, Mode{b.first + c, l}});
                }
            }
        }
    op.finalize();
    return op;
}

ModeOp virasoro_mode(const FieldContent& fc, int n, int hmax2) {
    ModeOp op(fc, "L_{" + std::to_string(n) + "}", hmax2);
    for (size_t b = 0; b < fc.blocks().size(); ++b) op.add(virasoro_mode_block(fc, b, n, hmax2));
    op.finalize();
    return op;
}

namespace {
Mode gmode(const FieldContent& fc, const GaugeData& gd, int alpha, int A, int n) {
    const FieldBlock& b = fc.blocks()[gd.ghost_block];
    return Mode{b.first + alpha * gd.g->dim + A, n};
}
// alpha index: 0 = plus, 1 = minus
int aidx(int sign) { return sign > 0 ? 0 : 1; }
}  // namespace

ModeOp ghost_species_mode(const FieldContent& fc, const GaugeData& gd, int alpha, int A, int n, int hmax2) {
    return single_mode(fc, gmode(fc, gd, alpha, A, n), hmax2);
}

ModeOp matter_current(const FieldContent& fc, const GaugeData& gd, int A, int n, int hmax2, int rdeg) {
    ModeOp op(fc, "J_" + gd.g->labels[A] + "," + std::to_string(n), hmax2);
    for (auto& [blk, T] : gd.matter) {
        ModeOp j = current_mode(fc, blk, T[A], n, hmax2);
        if (rdeg != 99) j = j.r_component(2 * rdeg);
        op.add(j);
    }
    op.finalize();
    return op;
}

ModeOp ghost_current0(const FieldContent& fc, const GaugeData& gd, int A, int hmax2) {
    const LieAlgebraData& g = *gd.g;
    ModeOp op(fc, "Jgh_" + g.labels[A] + ",0", hmax2);
    int lim = hmax2 / 2;
    for (int B = 0; B < g.dim; ++B)
        for (int C = 0; C < g.dim; ++C) {
            Scalar f = g.f_low(A, B, C);
            if (f.is_zero()) continue;
            for (int n = -lim; n <= lim; ++n) {
                if (n == 0) continue;
                op.add(f * Scalar::frac(1, n), {gmode(fc, gd, 1, B, n), gmode(fc, gd, 0, C, -n)});
            }
        }
    op.finalize();
    return op;
}

ModeOp total_current0(const FieldContent& fc, const GaugeData& gd, int A, int hmax2) {
    ModeOp op(fc, "Jtot_" + gd.g->labels[A] + ",0", hmax2);
    op.add(matter_current(fc, gd, A, 0, hmax2));
    if (gd.ghost_block >= 0) op.add(ghost_current0(fc, gd, A, hmax2));
    op.finalize();
    return op;
}

ModeOp brst_q(const FieldContent& fc, const GaugeData& gd, int sign, int hmax2, const std::vector<int>* subset) {
    const LieAlgebraData& g = *gd.g;
    ModeOp op(fc, sign > 0 ? "Q+" : "Q-", hmax2);
    int lim = hmax2 / 2;
    int a = aidx(sign), b = aidx(-sign);
    std::vector<int> gens;
    if (subset) gens = *subset;
    else
        for (int A = 0; A < g.dim; ++A) gens.push_back(A);
    for (int A : gens)
        for (int n = -lim; n <= lim; ++n) {
            if (n == 0) continue;
            ModeOp j = matter_current(fc, gd, A, n, hmax2);
            Mode e = gmode(fc, gd, a, A, -n);
            for (auto& t : j.terms()) {
                std::vector<Mode> ms = {e};
                ms.insert(ms.end(), t.modes.begin(), t.modes.end());
                op.add(t.c * Scalar::frac(1, n), ms);
            }
        }
    for (int A : gens)
        for (int B = 0; B < g.dim; ++B)
            for (int C = 0; C < g.dim; ++C) {
                Scalar f = g.f_low(A, B, C);
                if (f.is_zero()) continue;
                for (int n = -lim; n <= lim; ++n)
                    for (int m = -lim; m <= lim; ++m) {
                        if (n == 0 || m == 0 || m == n) continue;
                        if (std::abs(n - m) > lim) continue;
                        op.add(f * Scalar::frac(1, 2 * m * n),
                               {gmode(fc, gd, a, A, -n), gmode(fc, gd, a, B, m), gmode(fc, gd, b, C, n - m)});
                    }
            }
    op.finalize();
    return op;
}

ModeOp brst_q_explicit(const FieldContent& fc, const GaugeData& gd, int sign, int hmax2) {
    const LieAlgebraData& g = *gd.g;
    ModeOp op(fc, sign > 0 ? "Qx+" : "Qx-", hmax2);
    int lim = hmax2 / 2;
    int a = aidx(sign), b = aidx(-sign);
    for (int A = 0; A < g.dim; ++A)
        for (int n = 1; n <= lim; ++n) {
            Scalar inv = Scalar::frac(1, n);
            ModeOp jc1 = matter_current(fc, gd, A, n, hmax2, 0);
            for (auto& t : jc1.terms()) {
                std::vector<Mode> ms = {gmode(fc, gd, a, A, -n)};
                ms.insert(ms.end(), t.modes.begin(), t.modes.end());
                op.add(inv * t.c, ms);
            }
            ModeOp jc2 = matter_current(fc, gd, A, -n, hmax2, 1);
            for (auto& t : jc2.terms()) {
                std::vector<Mode> ms = t.modes;
                ms.push_back(gmode(fc, gd, a, A, n));
                op.add(-inv * t.c, ms);
            }
        }
    for (int A = 0; A < g.dim; ++A)
        for (int B = 0; B < g.dim; ++B)
            for (int C = 0; C < g.dim; ++C) {
                Scalar f = g.f_low(A, B, C);
                if (f.is_zero()) continue;
                for (int n = 1; n <= lim; ++n)
                    for (int m = 1; m + n <= lim; ++m) {
                        op.add(f * Scalar::frac(1, n * (m + n)),
                               {gmode(fc, gd, a, A, -n), gmode(fc, gd, b, B, -m), gmode(fc, gd, a, C, n + m)});
                        op.add(-f * Scalar::frac(1, 2 * m * n),
                               {gmode(fc, gd, a, A, -n), gmode(fc, gd, a, B, -m), gmode(fc, gd, b, C, n + m)});
                    }
            }
    op.finalize();
    return op;
}

ModeOp brst_s_explicit(const FieldContent& fc, const GaugeData& gd, int sign, int hmax2) {
    const LieAlgebraData& g = *gd.g;
    ModeOp op(fc, sign > 0 ? "Sx+" : "Sx-", hmax2);
    int lim = hmax2 / 2;
    int a = aidx(sign), b = aidx(-sign);
    for (int A = 0; A < g.dim; ++A)
        for (int n = 1; n <= lim; ++n) {
            Scalar inv = Scalar::frac(1, n);
            ModeOp jc3 = matter_current(fc, gd, A, n, hmax2, -1);
            for (auto& t : jc3.terms()) {
                std::vector<Mode> ms = {gmode(fc, gd, a, A, -n)};
                ms.insert(ms.end(), t.modes.begin(), t.modes.end());
                op.add(inv * t.c, ms);
            }
            ModeOp jc4 = matter_current(fc, gd, A, -n, hmax2, 0);
            for (auto& t : jc4.terms()) {
                std::vector<Mode> ms = t.modes;
                ms.push_back(gmode(fc, gd, a, A, n));
                op.add(-inv * t.c, ms);
            }
        }
    for (int A = 0; A < g.dim; ++A)
        for (int B = 0; B < g.dim; ++B)
            for (int C = 0; C < g.dim; ++C) {
                Scalar f = g.f_low(A, B, C);
                if (f.is_zero()) continue;
                for (int n = 1; n <= lim; ++n)
                    for (int m = 1; m + n <= lim; ++m) {
                        op.add(f * Scalar::frac(1, m * (m + n)),
                               {gmode(fc, gd, a, A, -n - m), gmode(fc, gd, b, B, n), gmode(fc, gd, a, C, m)});
                        op.add(-f * Scalar::frac(1, 2 * m * n),
                               {gmode(fc, gd, b, A, -n - m), gmode(fc, gd, a, B, n), gmode(fc, gd, a, C, m)});
                    }
            }
    op.finalize();
    return op;
}

namespace {
ModeOp ghost_bilinear(const FieldContent& fc, const GaugeData& gd, const std::string& name, int hmax2,
                      const std::vector<std::tuple<int, int, int>>& parts) {
    const LieAlgebraData& g = *gd.g;
    ModeOp op(fc, name, hmax2);
    int lim = hmax2 / 2;
    for (auto& [sgn, al, be] : parts)
        for (int A = 0; A < g.dim; ++A)
            for (int B = 0; B < g.dim; ++B) {
                if (g.K[A][B].is_zero()) continue;
                for (int n = 1; n <= lim; ++n)
                    op.add(Scalar(sgn) * Scalar::frac(1, n) * g.K[A][B], {gmode(fc, gd, al, A, -n), gmode(fc, gd, be, B, n)});
            }
    op.finalize();
    return op;
}
}  // namespace

ModeOp lefschetz_pi(const FieldContent& fc, const GaugeData& gd, int hmax2) {
    return ghost_bilinear(fc, gd, "Pi", hmax2, {{1, 1, 0}, {1, 0, 1}});
}
ModeOp lefschetz_L(const FieldContent& fc, const GaugeData& gd, int hmax2) {
    return ghost_bilinear(fc, gd, "L", hmax2, {{-1, 1, 1}});
}
ModeOp lefschetz_Lambda(const FieldContent& fc, const GaugeData& gd, int hmax2) {
    return ghost_bilinear(fc, gd, "Lambda", hmax2, {{1, 0, 0}});
}

Scalar vacuum_expectation(const ModeOp& a, const ModeOp& b) {
    Scalar s;
    for (auto& t : b.apply({}))
        for (auto& u : a.apply(t.mono, t.c))
            if (u.mono.empty()) s += u.c;
    return s;
}

Mat extract_level(const FieldContent& fc, const GaugeData& gd) {
    int n = gd.g->dim;
    Mat k = mat_zero(n, n);
    std::vector<ModeOp> up, down;
    for (int A = 0; A < n; ++A) {
        up.push_back(matter_current(fc, gd, A, 1, 2));
        down.push_back(matter_current(fc, gd, A, -1, 2));
    }
    for (int A = 0; A < n; ++A)
        for (int B = 0; B < n; ++B) k[A][B] = vacuum_expectation(up[A], down[B]);
    return k;
}

Scalar extract_central_charge(const FieldContent& fc) {
    return Scalar(2) * vacuum_expectation(virasoro_mode(fc, 2, 4), virasoro_mode(fc, -2, 4));
}

}  // namespace semiinf

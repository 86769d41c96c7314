#include "semiinf/unitarity.hpp"

#include <algorithm>
#include <functional>

namespace semiinf {

Conjugation Conjugation::standard(const FieldContent& fc) {
    Conjugation c;
    c.boson_phase.assign(fc.blocks().size(), Scalar(-1));
    return c;
}

namespace {
bool odd_key(Key k) { return key_family(k) == Family::Fermion; }

void add_into(std::vector<Term>& acc, std::vector<Term>& more) {
    for (auto& t : more) acc.push_back(std::move(t));
}

std::vector<Term> merge(std::vector<Term> v) {
    std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.mono < b.mono; });
    std::vector<Term> out;
    for (auto& t : v) {
        if (!out.empty() && out.back().mono == t.mono) out.back().c += t.c;
        else out.push_back(std::move(t));
    }
    std::vector<Term> kept;
    for (auto& t : out)
        if (!t.c.is_zero()) kept.push_back(std::move(t));
    return kept;
}
}  // namespace

std::vector<Term> rho(const FieldContent& fc, const Conjugation& cj, const Monomial& mono, const Scalar& c) {
    // rho(x_n y) = (-1)^{|x||y|} rho(x)_n rho(y), built from the right
    std::vector<Term> cur = {{Monomial{}, c.conj()}};
    int odd_right = 0;
    for (int i = static_cast<int>(mono.size()) - 1; i >= 0; --i) {
        Key k = mono[i];
        Mode m = key_mode(fc, k);
        const Species& sp = fc.species()[m.s];
        const FieldBlock& b = fc.blocks()[sp.block];
        bool odd = odd_key(k);
        Scalar sign = (odd && odd_right % 2) ? Scalar(-1) : Scalar(1);
        std::vector<Term> next;
        for (int t = 0; t < b.size; ++t) {
            Scalar coef;
            if (sp.fam == Family::Boson) coef = cj.boson_phase[sp.block] * b.omega[sp.local][t];
            else coef = Scalar(0, -1) * b.omega[t][sp.local];
            if (coef.is_zero()) continue;
            for (auto& x : cur) apply_mode(fc, Mode{b.first + t, m.n}, x.mono, x.c * coef * sign, next);
        }
        cur = merge(std::move(next));
        if (odd) ++odd_right;
    }
    return cur;
}

std::vector<Term> rho_all(const FieldContent& fc, const Conjugation& cj, const std::vector<Term>& v) {
    std::vector<Term> acc;
    for (auto& t : v) {
        auto r = rho(fc, cj, t.mono, t.c);
        add_into(acc, r);
    }
    return merge(std::move(acc));
}

Scalar bilinear(const FieldContent& fc, const Monomial& u, const Monomial& v) {
    // (a_n u', w) = (-1)^{|a||u'|} e^{i pi h_a} (u', a_{2h-2-n} w)
    std::vector<Term> cur = {{v, Scalar(1)}};
    int n_odd = 0;
    for (Key k : u) n_odd += odd_key(k);
    int odd_rest = n_odd;
    for (size_t i = 0; i < u.size() && !cur.empty(); ++i) {
        Key k = u[i];
        Mode m = key_mode(fc, k);
        bool odd = odd_key(k);
        if (odd) --odd_rest;
        Scalar f;
        Mode t;
        if (fc.species()[m.s].fam == Family::Boson) {
            f = Scalar(0, 1);
            t = Mode{m.s, -1 - m.n};
        } else {
            f = Scalar(-1);
            t = Mode{m.s, -m.n};
        }
        if (odd && odd_rest % 2) f = -f;
        std::vector<Term> next;
        for (auto& x : cur) apply_mode(fc, t, x.mono, x.c * f, next);
        cur = merge(std::move(next));
    }
    Scalar s;
    for (auto& x : cur)
        if (x.mono.empty()) s += x.c;
    return s;
}

std::vector<Monomial> partner_monomials(const FieldContent& fc, const Monomial& u) {
    std::vector<Monomial> out = {{}};
    for (Key k : u) {
        int s = key_species(k), w2 = key_w2(k);
        std::vector<Monomial> next;
        for (auto& partial : out)
            for (auto& [t, om] : fc.partners(s)) {
                Monomial m = partial;
                m.push_back(make_key(key_family(k), w2, t));
                next.push_back(std::move(m));
            }
        out = std::move(next);
    }
    for (auto& m : out) std::sort(m.begin(), m.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Scalar monomial_norm(const FieldContent& fc, const Monomial& m) {
    mpz_class n = 1;
    size_t i = 0;
    while (i < m.size()) {
        size_t j = i;
        while (j < m.size() && m[j] == m[i]) ++j;
        if (key_family(m[i]) == Family::Boson) {
            mpz_class f;
            mpz_fac_ui(f.get_mpz_t(), j - i);
            n *= f;
        } else {
            n *= key_w2(m[i]) / 2;
        }
        i = j;
    }
    (void)fc;
    return Scalar(mpq_class(n));
}

SparseMat gram_block(const FockSpace& sp, const Conjugation& cj, int block) {
    const FieldContent& fc = sp.fields();
    auto& b = sp.blocks()[block];
    SparseMat g(b.size, b.size);
    std::vector<Accum> rows(b.size);
    for (int x = 0; x < b.size; ++x) {
        const Monomial& mx = sp.state(b.offset + x);
        Scalar sigma = i_pow(b.g.R2);
        for (auto& u : rho(fc, cj, mx, Scalar(1))) {
            for (auto& v : partner_monomials(fc, u.mono)) {
                int iv = sp.index_of(v);
                if (iv < b.offset || iv >= b.offset + b.size) continue;
                Scalar val = bilinear(fc, u.mono, v);
                if (!val.is_zero()) rows[x].add(iv - b.offset, sigma * u.c * val);
            }
        }
    }
    // stored column-major: G(x, y) at col y
    for (int x = 0; x < b.size; ++x)
        for (auto& [y, v] : rows[x].take()) g.col[y].emplace_back(x, v);
    for (auto& c : g.col) std::sort(c.begin(), c.end(), [](auto& a, auto& bb) { return a.first < bb.first; });
    return g;
}

std::vector<Scalar> adjoint_table_norms(const FockSpace& sp) {
    std::vector<Scalar> out;
    out.reserve(sp.size());
    for (int i = 0; i < sp.size(); ++i) out.push_back(monomial_norm(sp.fields(), sp.state(i)));
    return out;
}

CheckResult check_spin_statistics(const FockSpace& sp) {
    CheckResult r{"spin-statistics"};
    for (int i = 0; i < sp.size(); ++i) {
        auto& g = sp.blocks()[sp.block_of_state(i)].g;
        int nf = 0;
        for (Key k : sp.state(i)) nf += odd_key(k);
        ++r.checked;
        if ((nf % 2) != ((g.h2 + g.R2) % 2 + 2) % 2) r.fail("parity mismatch at " + sp.monomial_str(sp.state(i)));
    }
    return r;
}

CheckResult check_quaternionic(const FockSpace& sp, const Conjugation& cj) {
    CheckResult r{"quaternionic rho^2 = s"};
    const FieldContent& fc = sp.fields();
    for (int i = 0; i < sp.size(); ++i) {
        auto& g = sp.blocks()[sp.block_of_state(i)].g;
        auto once = rho(fc, cj, sp.state(i));
        auto twice = rho_all(fc, cj, once);
        Scalar s = (g.R2 % 2) ? Scalar(-1) : Scalar(1);
        ++r.checked;
        if (twice.size() != 1 || twice[0].mono != sp.state(i) || twice[0].c != s)
            r.fail("rho^2 != (-1)^{2R} on " + sp.monomial_str(sp.state(i)));
    }
    return r;
}

CheckResult check_gram(const FockSpace& sp, const Conjugation& cj, std::vector<std::string>* blocks_report) {
    CheckResult r{"gram positivity"};
    for (size_t bi = 0; bi < sp.blocks().size(); ++bi) {
        auto& b = sp.blocks()[bi];
        SparseMat g = gram_block(sp, cj, bi);
        SparseMat diag(b.size, b.size);
        for (int x = 0; x < b.size; ++x) diag.col[x] = {{x, monomial_norm(sp.fields(), sp.state(b.offset + x))}};
        std::string why;
        bool pd = is_positive_definite(g, &why);
        bool table = mat_equal(g, diag);
        ++r.checked;
        std::string tag = "(h,R,d)=(" + half_str(b.g.h2) + "," + half_str(b.g.R2) + "," + std::to_string(b.g.d) + ")";
        if (!pd) r.fail("Gram block " + tag + " not positive definite: " + why);
        else if (!table) r.fail("Gram block " + tag + " differs from adjoint table: " + mat_diff_witness(g, diag));
        if (blocks_report) blocks_report->push_back(tag + (pd && table ? " ok" : " FAIL"));
    }
    return r;
}

CheckResult check_adjoint(const ModeOp& op, const FockSpace& sp) {
    CheckResult r{"adjoint of " + op.name()};
    SpaceOp m = build(op, sp);
    SpaceOp md = build(op.adjoint(), sp);
    auto norms = adjoint_table_norms(sp);
    // <x| M y> = <M^dag x| y>  <=>  N_x M_xy = conj(Mdag_yx) N_y
    int dom = std::min(m.dom2, md.dom2);
    // only pairs where both sides are computed: y in dom of M, x in dom of M^dag
    for (int y = 0; y < sp.size(); ++y) {
        if (sp.blocks()[sp.block_of_state(y)].g.h2 > m.dom2) continue;
        for (auto& [x, v] : m.m.col[y]) {
            if (sp.blocks()[sp.block_of_state(x)].g.h2 > md.dom2) continue;
            Scalar lhs = norms[x] * v;
            Scalar rhs = sv_get(md.m.col[x], y).conj() * norms[y];
            ++r.checked;
            if (lhs != rhs) r.fail("<x|M y> != <M^dag x|y> for x=" + sp.monomial_str(sp.state(x)) + ", y=" + sp.monomial_str(sp.state(y)));
        }
    }
    // entries of M^dag must be matched too
    for (int x = 0; x < sp.size(); ++x) {
        if (sp.blocks()[sp.block_of_state(x)].g.h2 > md.dom2) continue;
        for (auto& [y, v] : md.m.col[x]) {
            if (sp.blocks()[sp.block_of_state(y)].g.h2 > m.dom2) continue;
            if (sv_get(m.m.col[y], x).is_zero()) {
                ++r.checked;
                r.fail("M^dag has an entry with no partner in M at y=" + sp.monomial_str(sp.state(y)));
            }
        }
    }
    (void)dom;
    return r;
}

CheckResult check_shortening(const SpaceOp& op, const FockSpace& sp, int p2, bool nonneg_mode) {
    CheckResult r{"shortening of " + op.name};
    for (auto& [dr, part] : split_by_R(op, sp)) {
        ++r.checked;
        if (dr < -p2 && !part.m.is_zero()) r.fail(op.name + " has a component of R-degree " + half_str(dr) + " below -p");
        if (nonneg_mode && dr == p2 && !part.m.is_zero())
            r.fail(op.name + " has a leading component on a nonnegative mode");
    }
    return r;
}

CheckResult check_shortening_suite(const FockSpace& sp, const GaugeData* gd) {
    CheckResult r{"shortening"};
    const FieldContent& fc = sp.fields();
    int h2 = sp.hmax2();
    auto merge_res = [&](const CheckResult& c) {
        r.checked += c.checked;
        if (!c.pass) r.fail(c.witness);
    };
    for (int s = 0; s < fc.nspecies(); ++s) {
        bool boson = fc.species()[s].fam == Family::Boson;
        int lim = boson ? (h2 + 1) / 2 : h2 / 2;
        for (int n = -lim; n <= lim; ++n) merge_res(check_shortening(build(single_mode(fc, Mode{s, n}, h2), sp), sp, 1, n >= 0));
    }
    for (int n = -2; n <= 2; ++n) merge_res(check_shortening(build(virasoro_mode(fc, n, h2), sp), sp, 2, false));
    if (gd && gd->g)
        for (int A = 0; A < gd->g->dim; ++A)
            for (int n = -2; n <= 2; ++n)
                merge_res(check_shortening(build(matter_current(fc, *gd, A, n, h2), sp), sp, 2, n >= 0));
    return r;
}

}  // namespace semiinf

#include "semiinf/complex.hpp"

#include <algorithm>

namespace semiinf {

std::unique_ptr<System> make_system(const Config& cfg, bool require_critical) {
    auto sys = std::make_unique<System>();
    sys->cfg = cfg;
    sys->hmax2 = cfg.hmax2;
    sys->gd.g = cfg.gauged ? &sys->cfg.g : nullptr;
    std::vector<Scalar> phases;
    SymplecticRep total;
    for (auto& mb : sys->cfg.matter) {
        if (mb.kind == "symplectic_boson") {
            int b = sys->fc.add_boson_block(mb.name, mb.omega, mb.d);
            phases.resize(sys->fc.blocks().size(), Scalar(-1));
            phases[b] = mb.conjugation_phase;
            if (cfg.gauged) {
                sys->gd.matter.emplace_back(b, mb.T);
                sys->boson_blocks.push_back(b);
                int n0 = total.n, n = mb.omega.size();
                Mat om = mat_zero(n0 + n, n0 + n);
                for (int i = 0; i < n0; ++i)
                    for (int j = 0; j < n0; ++j) om[i][j] = total.omega[i][j];
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) om[n0 + i][n0 + j] = mb.omega[i][j];
                total.omega = om;
                total.T.resize(cfg.g.dim);
                for (int A = 0; A < cfg.g.dim; ++A) {
                    Mat t = mat_zero(n0 + n, n0 + n);
                    for (int i = 0; i < n0; ++i)
                        for (int j = 0; j < n0; ++j) t[i][j] = total.T[A].empty() ? Scalar(0) : total.T[A][i][j];
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j) t[n0 + i][n0 + j] = mb.T[A][i][j];
                    total.T[A] = t;
                }
                total.n = n0 + n;
            }
        } else if (mb.kind == "symplectic_fermion") {
            sys->fc.add_fermion_block(mb.name, mb.metric, false);
            phases.resize(sys->fc.blocks().size(), Scalar(-1));
        }
    }
    if (cfg.gauged) {
        sys->gd.ghost_block = sys->fc.add_fermion_block("eta", cfg.g.K, true, cfg.g.labels);
        phases.resize(sys->fc.blocks().size(), Scalar(-1));
        if (total.n == 0) {
            total.T.assign(cfg.g.dim, Mat{});
        } else {
            total.omega_inv = dinverse(total.omega);
        }
        sys->crit = check_twice_critical(cfg.g, total);
        if (require_critical && !cfg.allow_non_critical && !sys->crit.pass)
            throw ValidationError("matter is not twice critical: " + sys->crit.witness);
    }
    sys->cj.boson_phase = phases;
    return sys;
}

RelativeComplex::RelativeComplex(const System& sys, const FockSpace& sp) : sys_(&sys), sp_(&sp) {
    fock_to_rel_.assign(sp.blocks().size(), -1);
    std::vector<SpaceOp> j0;
    if (sys.gauged())
        for (int A = 0; A < sys.g().dim; ++A) j0.push_back(build(total_current0(sys.fc, sys.gd, A, sp.hmax2()), sp));
    for (size_t fb = 0; fb < sp.blocks().size(); ++fb) {
        auto& b = sp.blocks()[fb];
        Block rb;
        rb.g = b.g;
        rb.fock_block = fb;
        rb.offset = size_;
        if (j0.empty()) {
            for (int i = 0; i < b.size; ++i) {
                rb.basis.push_back({{i, Scalar(1)}});
                rb.free_cols.push_back(i);
            }
        } else {
            std::vector<SparseMat> parts;
            for (auto& op : j0) parts.push_back(mat_block(op.m, b.offset, b.size, b.offset, b.size));
            // generators acting diagonally exclude every column with a nonzero diagonal entry
            std::vector<char> alive(b.size, 1);
            std::vector<const SparseMat*> rest;
            for (auto& m : parts) {
                bool diag = true;
                for (int c = 0; c < b.size && diag; ++c)
                    for (auto& [r, v] : m.col[c])
                        if (r != c) { diag = false; break; }
                if (!diag) {
                    rest.push_back(&m);
                    continue;
                }
                for (int c = 0; c < b.size; ++c)
                    if (!sv_get(m.col[c], c).is_zero()) alive[c] = 0;
            }
            std::vector<int> cols;
            std::vector<int> local(b.size, -1);
            for (int c = 0; c < b.size; ++c)
                if (alive[c]) {
                    local[c] = cols.size();
                    cols.push_back(c);
                }
            Echelon ech(cols.size());
            for (auto* m : rest)
                for (auto& row : m->row_vectors()) {
                    SparseVec r;
                    for (auto& [c, v] : row)
                        if (local[c] >= 0) r.emplace_back(local[c], v);
                    // a row touching dead columns: those coordinates are zero in the kernel anyway
                    if (!r.empty()) ech.insert(std::move(r));
                }
            std::vector<char> piv(cols.size(), 0);
            for (int p : ech.pivots()) piv[p] = 1;
            for (auto& k : ech.kernel()) {
                SparseVec v;
                for (auto& [i, x] : k) v.emplace_back(cols[i], x);
                rb.basis.push_back(std::move(v));
            }
            for (size_t i = 0; i < cols.size(); ++i)
                if (!piv[i]) rb.free_cols.push_back(cols[i]);
        }
        if (rb.basis.empty()) continue;
        size_ += rb.basis.size();
        fock_to_rel_[fb] = blocks_.size();
        blocks_.push_back(std::move(rb));
    }
}

RelativeComplex::RelativeComplex(const System& sys, const FockSpace& sp, std::vector<Block> blocks)
    : sys_(&sys), sp_(&sp), blocks_(std::move(blocks)) {
    fock_to_rel_.assign(sp.blocks().size(), -1);
    for (size_t i = 0; i < blocks_.size(); ++i) {
        Block& b = blocks_[i];
        if (b.fock_block < 0 || b.fock_block >= static_cast<int>(sp.blocks().size()) || !(sp.blocks()[b.fock_block].g == b.g))
            throw std::invalid_argument("stored block does not match the Fock space");
        b.offset = size_;
        size_ += b.basis.size();
        fock_to_rel_[b.fock_block] = i;
    }
}

int RelativeComplex::find_block(const Grade& g) const {
    int fb = sp_->find_block(g);
    return fb < 0 ? -1 : fock_to_rel_[fb];
}

int RelativeComplex::block_of(int rel_index) const {
    auto it = std::upper_bound(blocks_.begin(), blocks_.end(), rel_index,
                               [](int x, const Block& b) { return x < b.offset; });
    return static_cast<int>(it - blocks_.begin()) - 1;
}

SparseVec RelativeComplex::lift(const SparseVec& v) const {
    Accum acc;
    for (auto& [i, c] : v) {
        const Block& b = blocks_[block_of(i)];
        int off = sp_->blocks()[b.fock_block].offset;
        for (auto& [j, x] : b.basis[i - b.offset]) acc.add(off + j, c * x);
    }
    return acc.take();
}

SparseVec RelativeComplex::project(const SparseVec& fock) const {
    Accum acc;
    // group entries by Fock block
    size_t i = 0;
    while (i < fock.size()) {
        int fb = sp_->block_of_state(fock[i].first);
        int off = sp_->blocks()[fb].offset;
        SparseVec loc;
        while (i < fock.size() && sp_->block_of_state(fock[i].first) == fb) {
            loc.emplace_back(fock[i].first - off, fock[i].second);
            ++i;
        }
        int rb = fock_to_rel_[fb];
        if (rb < 0) throw std::runtime_error("vector leaves the relative complex");
        const Block& b = blocks_[rb];
        SparseVec coords;
        for (size_t j = 0; j < b.free_cols.size(); ++j) {
            Scalar c = sv_get(loc, b.free_cols[j]);
            if (!c.is_zero()) coords.emplace_back(j, c);
        }
        Accum rec;
        for (auto& [j, c] : coords) rec.add_vec(c, b.basis[j]);
        if (sv_add(rec.take(), loc, Scalar(-1)).size() != 0)
            throw std::runtime_error("vector leaves the relative complex");
        for (auto& [j, c] : coords) acc.add(b.offset + j, c);
    }
    return acc.take();
}

SparseMat RelativeComplex::restrict(const SpaceOp& op) const {
    SparseMat out(size_, size_);
    for (auto& b : blocks_) {
        if (b.g.h2 > op.dom2) continue;
        int off = sp_->blocks()[b.fock_block].offset;
        for (size_t j = 0; j < b.basis.size(); ++j) {
            SparseVec v;
            for (auto& [i, x] : b.basis[j]) v.emplace_back(off + i, x);
            SparseVec img = op.m.apply(v);
            out.col[b.offset + j] = project(img);
        }
    }
    return out;
}

SparseMat RelativeComplex::gram() const {
    SparseMat g(size_, size_);
    for (auto& b : blocks_) {
        int off = sp_->blocks()[b.fock_block].offset;
        std::vector<Scalar> w;
        for (int i = 0; i < sp_->blocks()[b.fock_block].size; ++i)
            w.push_back(monomial_norm(sp_->fields(), sp_->state(off + i)));
        int n = b.basis.size();
        for (int y = 0; y < n; ++y) {
            Accum col;
            for (int x = 0; x < n; ++x) {
                // <b_x|b_y> = sum conj(b_x) w b_y
                Scalar s;
                auto& bx = b.basis[x];
                auto& by = b.basis[y];
                size_t p = 0, q = 0;
                while (p < bx.size() && q < by.size()) {
                    if (bx[p].first < by[q].first) ++p;
                    else if (by[q].first < bx[p].first) ++q;
                    else {
                        s += bx[p].second.conj() * w[bx[p].first] * by[q].second;
                        ++p, ++q;
                    }
                }
                if (!s.is_zero()) col.add(b.offset + x, s);
            }
            g.col[b.offset + y] = col.take();
        }
    }
    return g;
}

std::vector<CharacterTerm> RelativeComplex::character() const {
    std::vector<CharacterTerm> out;
    for (auto& b : blocks_) out.push_back({b.g, static_cast<long>(b.basis.size())});
    return out;
}

namespace {
std::vector<Term> current_state(const System& sys, int A) {
    std::vector<Term> out;
    for (auto& [blk, Ts] : sys.gd.matter)
        for (auto& t : current_mode(sys.fc, blk, Ts[A], -1, 2).apply({})) out.push_back(t);
    return merge_terms(std::move(out));
}
}  // namespace

std::vector<CheckResult> verify_good_action(const System& sys) {
    std::vector<CheckResult> out;
    CheckResult r1{"good action (i): J_{A,-1}|0> in R=1"}, r2{"good action (ii): J^{[1]}_{A,n>=0} = 0"},
        r3{"good action (iii): rho(J_A) = -K^{AB} J_B"};
    if (!sys.gauged()) {
        out = {r1, r2, r3};
        return out;
    }
    const auto& g = sys.g();
    std::vector<std::vector<Term>> J;
    for (int A = 0; A < g.dim; ++A) J.push_back(current_state(sys, A));
    for (int A = 0; A < g.dim; ++A) {
        for (auto& t : J[A]) {
            ++r1.checked;
            Grade gr = grade_of(sys.fc, t.mono);
            if (gr.R2 != 2 || gr.h2 != 2) r1.fail(g.labels[A] + "_{-1}|0> has a component with 2R=" + std::to_string(gr.R2));
        }
        for (auto& [blk, Ts] : sys.gd.matter)
            for (int n = 0; n <= std::max(2, sys.hmax2); ++n) {
                ++r2.checked;
                if (!current_mode(sys.fc, blk, Ts[A], n, sys.hmax2).r_component(2).empty())
                    r2.fail(g.labels[A] + "_" + std::to_string(n) + " has an R-raising part");
            }
        std::vector<Term> lhs = rho_all(sys.fc, sys.cj, J[A]);
        std::vector<Term> rhs;
        for (int B = 0; B < g.dim; ++B)
            if (!g.Kinv[A][B].is_zero())
                for (auto& t : J[B]) rhs.push_back({t.mono, -g.Kinv[A][B] * t.c});
        for (auto& t : rhs) lhs.push_back({t.mono, -t.c});
        lhs = merge_terms(std::move(lhs));
        ++r3.checked;
        if (!lhs.empty()) r3.fail("rho(" + g.labels[A] + ") differs from -K^{AB} J_B at " + monomial_str(sys.fc, lhs[0].mono));
    }
    out = {r1, r2, r3};
    return out;
}

nlohmann::ordered_json complex_to_json(const RelativeComplex& rc, const std::string& config_hash) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "relative_complex";
    j["config_hash"] = config_hash;
    j["h_max"] = half_str(rc.space().hmax2());
    j["fock_size"] = rc.space().size();
    auto& blocks = j["blocks"] = nlohmann::ordered_json::array();
    for (auto& b : rc.blocks()) {
        nlohmann::ordered_json jb;
        jb["h"] = half_str(b.g.h2);
        jb["R"] = half_str(b.g.R2);
        jb["d"] = b.g.d;
        jb["fock_block"] = b.fock_block;
        auto& basis = jb["basis"] = nlohmann::ordered_json::array();
        for (auto& v : b.basis) {
            nlohmann::ordered_json jv = nlohmann::ordered_json::array();
            for (auto& [i, x] : v) jv.push_back({i, x.str()});
            basis.push_back(jv);
        }
        jb["free_cols"] = b.free_cols;
        blocks.push_back(jb);
    }
    return j;
}

std::unique_ptr<RelativeComplex> complex_from_json(const System& sys, const FockSpace& sp, const nlohmann::json& j,
                                                   const std::string& config_hash) {
    try {
        if (j.at("schema_version") != kSchemaVersion || j.at("config_hash") != config_hash ||
            j.at("h_max") != half_str(sp.hmax2()) || j.at("fock_size") != sp.size())
            return nullptr;
        std::vector<RelativeComplex::Block> blocks;
        for (auto& jb : j.at("blocks")) {
            RelativeComplex::Block b;
            b.g = Grade{parse_half(jb.at("h")), parse_half(jb.at("R")), jb.at("d").get<int>()};
            b.fock_block = jb.at("fock_block");
            b.offset = 0;
            for (auto& jv : jb.at("basis")) {
                SparseVec v;
                for (auto& e : jv) v.emplace_back(e.at(0).get<int>(), Scalar::parse(e.at(1).get<std::string>()));
                b.basis.push_back(std::move(v));
            }
            b.free_cols = jb.at("free_cols").get<std::vector<int>>();
            blocks.push_back(std::move(b));
        }
        return std::make_unique<RelativeComplex>(sys, sp, std::move(blocks));
    } catch (const std::exception&) {
        return nullptr;
    }
}

}  // namespace semiinf

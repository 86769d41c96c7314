#include "semiinf/fock.hpp"

#include <algorithm>
#include <sstream>

namespace semiinf {

int FieldContent::add_boson_block(const std::string& name, const Mat& omega, const std::vector<int>& d) {
    FieldBlock b;
    b.name = name;
    b.fam = Family::Boson;
    b.first = species_.size();
    b.size = omega.size();
    b.omega = omega;
    b.omega_inv = dinverse(omega);
    int id = blocks_.size();
    for (int a = 0; a < b.size; ++a)
        species_.push_back({Family::Boson, id, a, d.empty() ? 0 : d[a], name + std::to_string(a + 1)});
    blocks_.push_back(std::move(b));
    rebuild_partners(id);
    return id;
}

int FieldContent::add_fermion_block(const std::string& name, const Mat& metric, bool ghost,
                                    const std::vector<std::string>& labels) {
    int m = metric.size();
    FieldBlock b;
    b.name = name;
    b.fam = Family::Fermion;
    b.ghost = ghost;
    b.first = species_.size();
    b.size = 2 * m;
    b.omega = mat_zero(2 * m, 2 * m);
    for (int A = 0; A < m; ++A)
        for (int B = 0; B < m; ++B) {
            b.omega[A][m + B] = -metric[A][B];
            b.omega[m + A][B] = metric[A][B];
        }
    b.omega_inv = dinverse(b.omega);
    int id = blocks_.size();
    for (int s = 0; s < 2; ++s)
        for (int A = 0; A < m; ++A) {
            std::string lab = labels.empty() ? std::to_string(A + 1) : labels[A];
            species_.push_back({Family::Fermion, id, s * m + A, s == 0 ? 1 : -1, name + (s == 0 ? "+" : "-") + lab});
        }
    blocks_.push_back(std::move(b));
    rebuild_partners(id);
    return id;
}

void FieldContent::rebuild_partners(int bi) {
    partners_.resize(species_.size());
    auto& b = blocks_[bi];
    for (int a = 0; a < b.size; ++a) {
        auto& p = partners_[b.first + a];
        p.clear();
        for (int c = 0; c < b.size; ++c)
            if (!b.omega_inv[a][c].is_zero()) p.emplace_back(b.first + c, b.omega_inv[a][c]);
    }
}

Scalar FieldContent::omega_up(int s, int t) const {
    if (species_[s].block != species_[t].block) return Scalar();
    auto& b = blocks_[species_[s].block];
    return b.omega_inv[s - b.first][t - b.first];
}

Scalar FieldContent::omega_low(int s, int t) const {
    if (species_[s].block != species_[t].block) return Scalar();
    auto& b = blocks_[species_[s].block];
    return b.omega[s - b.first][t - b.first];
}

int FieldContent::ghost_block() const {
    for (size_t i = 0; i < blocks_.size(); ++i)
        if (blocks_[i].ghost) return i;
    return -1;
}

Key make_key(Family fam, int w2, int s) {
    return (static_cast<Key>(fam) << 28) | (static_cast<Key>(4095 - w2) << 16) | static_cast<Key>(s);
}

bool mode_is_creation(const Mode& m) { return m.n <= -1; }

int mode_dh2(const FieldContent& fc, const Mode& m) {
    return fc.species()[m.s].fam == Family::Boson ? -2 * m.n - 1 : -2 * m.n;
}

Key creation_key(const FieldContent& fc, const Mode& m) {
    return make_key(fc.species()[m.s].fam, mode_dh2(fc, m), m.s);
}

Mode key_mode(const FieldContent& fc, Key k) {
    int s = key_species(k), w2 = key_w2(k);
    if (fc.species()[s].fam == Family::Boson) return {s, -(w2 + 1) / 2};
    return {s, -w2 / 2};
}

void apply_mode(const FieldContent& fc, const Mode& m, const Monomial& mono, const Scalar& c, std::vector<Term>& out) {
    const Species& sp = fc.species()[m.s];
    if (mode_is_creation(m)) {
        Key k = creation_key(fc, m);
        if (sp.fam == Family::Boson) {
            auto it = std::upper_bound(mono.begin(), mono.end(), k);
            Monomial r;
            r.reserve(mono.size() + 1);
            r.insert(r.end(), mono.begin(), it);
            r.push_back(k);
            r.insert(r.end(), it, mono.end());
            out.push_back({std::move(r), c});
        } else {
            auto it = std::lower_bound(mono.begin(), mono.end(), k);
            if (it != mono.end() && *it == k) return;
            auto first_f = std::lower_bound(mono.begin(), mono.end(), make_key(Family::Fermion, 4095, 0));
            long before = it - first_f;
            Monomial r;
            r.reserve(mono.size() + 1);
            r.insert(r.end(), mono.begin(), it);
            r.push_back(k);
            r.insert(r.end(), it, mono.end());
            out.push_back({std::move(r), (before % 2) ? -c : c});
        }
        return;
    }
    if (sp.fam == Family::Boson) {
        int w2 = 2 * m.n + 1;
        for (auto& [t, om] : fc.partners(m.s)) {
            Key k = make_key(Family::Boson, w2, t);
            auto lo = std::lower_bound(mono.begin(), mono.end(), k);
            if (lo == mono.end() || *lo != k) continue;
            auto hi = std::upper_bound(lo, mono.end(), k);
            long mult = hi - lo;
            Monomial r;
            r.reserve(mono.size() - 1);
            r.insert(r.end(), mono.begin(), lo);
            r.insert(r.end(), lo + 1, mono.end());
            out.push_back({std::move(r), c * om * Scalar(mult)});
        }
        return;
    }
    if (m.n == 0) return;
    int w2 = 2 * m.n;
    auto first_f = std::lower_bound(mono.begin(), mono.end(), make_key(Family::Fermion, 4095, 0));
    for (auto& [t, om] : fc.partners(m.s)) {
        Key k = make_key(Family::Fermion, w2, t);
        auto it = std::lower_bound(first_f, mono.end(), k);
        if (it == mono.end() || *it != k) continue;
        long before = it - first_f;
        Monomial r;
        r.reserve(mono.size() - 1);
        r.insert(r.end(), mono.begin(), it);
        r.insert(r.end(), it + 1, mono.end());
        Scalar coef = c * om * Scalar(static_cast<long>(m.n));
        out.push_back({std::move(r), (before % 2) ? -coef : coef});
    }
}

Grade grade_of(const FieldContent& fc, const Monomial& m) {
    Grade g{0, 0, 0};
    for (Key k : m) {
        g.h2 += key_w2(k);
        g.R2 += 1;
        g.d += fc.species()[key_species(k)].d;
    }
    return g;
}

FockSpace::FockSpace(const FieldContent& fc, int hmax2, long budget, const std::function<bool(Key)>& allow)
    : fc_(&fc), hmax2_(hmax2) {
    std::vector<Key> keys;
    for (int s = 0; s < fc.nspecies(); ++s) {
        bool boson = fc.species()[s].fam == Family::Boson;
        for (int w2 = boson ? 1 : 2; w2 <= hmax2; w2 += 2) {
            Key k = make_key(fc.species()[s].fam, w2, s);
            if (!allow || allow(k)) keys.push_back(k);
        }
    }
    std::sort(keys.begin(), keys.end());
    std::vector<Monomial> raw;
    Monomial cur;
    std::function<void(size_t, int)> dfs = [&](size_t start, int rem) {
        raw.push_back(cur);
        if (static_cast<long>(raw.size()) > budget) {
            Grade g = grade_of(fc, cur);
            throw ResourceError("state budget " + std::to_string(budget) + " exceeded while enumerating grade h=" +
                                half_str(g.h2) + " R=" + half_str(g.R2) + " d=" + std::to_string(g.d));
        }
        for (size_t j = start; j < keys.size(); ++j) {
            int w = key_w2(keys[j]);
            if (w > rem) continue;
            cur.push_back(keys[j]);
            dfs(key_family(keys[j]) == Family::Boson ? j : j + 1, rem - w);
            cur.pop_back();
        }
    };
    dfs(0, hmax2);
    std::vector<std::pair<Grade, int>> order;
    order.reserve(raw.size());
    for (size_t i = 0; i < raw.size(); ++i) order.push_back({grade_of(fc, raw[i]), static_cast<int>(i)});
    std::stable_sort(order.begin(), order.end(), [](auto& a, auto& b) { return a.first < b.first; });
    states_.reserve(raw.size());
    for (auto& [g, i] : order) {
        if (blocks_.empty() || !(blocks_.back().g == g)) {
            block_index_[g] = blocks_.size();
            blocks_.push_back({g, static_cast<int>(states_.size()), 0});
        }
        blocks_.back().size++;
        index_.emplace(raw[i], states_.size());
        state_block_.push_back(blocks_.size() - 1);
        states_.push_back(std::move(raw[i]));
    }
}

int FockSpace::index_of(const Monomial& m) const {
    auto it = index_.find(m);
    return it == index_.end() ? -1 : it->second;
}

int FockSpace::find_block(const Grade& g) const {
    auto it = block_index_.find(g);
    return it == block_index_.end() ? -1 : it->second;
}

std::pair<int, int> FockSpace::h_range(int h2) const {
    int lo = -1, hi = -1;
    for (auto& b : blocks_)
        if (b.g.h2 == h2) {
            if (lo < 0) lo = b.offset;
            hi = b.offset + b.size;
        }
    if (lo < 0) return {0, 0};
    return {lo, hi};
}

std::string monomial_str(const FieldContent& fc, const Monomial& m) {
    if (m.empty()) return "|0>";
    std::string s;
    for (Key k : m) {
        Mode md = key_mode(fc, k);
        if (!s.empty()) s += " ";
        s += fc.species()[md.s].label + "_{" + std::to_string(md.n) + "}";
    }
    return s + "|0>";
}

std::string FockSpace::monomial_str(const Monomial& m) const { return semiinf::monomial_str(*fc_, m); }

std::vector<Term> merge_terms(std::vector<Term> v) {
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

std::vector<CharacterTerm> character_terms(const FockSpace& sp) {
    std::vector<CharacterTerm> out;
    for (auto& b : sp.blocks()) out.push_back({b.g, b.size});
    return out;
}

namespace {
std::string power(const std::string& var, const std::string& e) {
    if (e == "1") return var;
    return var + "^{" + e + "}";
}
}  // namespace

std::string character_string(const std::vector<CharacterTerm>& terms0) {
    std::vector<CharacterTerm> terms;
    for (auto& t : terms0)
        if (t.dim != 0) terms.push_back(t);
    std::stable_sort(terms.begin(), terms.end(), [](auto& a, auto& b) {
        if (a.g.h2 != b.g.h2) return a.g.h2 < b.g.h2;
        if (a.g.R2 != b.g.R2) return a.g.R2 < b.g.R2;
        return a.g.d > b.g.d;
    });
    if (terms.empty()) return "0";
    std::string out;
    for (auto& t : terms) {
        std::string qp = t.g.h2 ? power("q", half_str(t.g.h2)) : "";
        std::string tp = t.g.R2 ? power("t", half_str(t.g.R2)) : "";
        std::string zp = t.g.d ? power("z", std::to_string(t.g.d)) : "";
        std::string mono = qp;
        if (!tp.empty()) mono += (qp == "q" ? " " : "") + tp;
        if (!zp.empty()) mono += (mono.empty() ? "" : " ") + zp;
        std::string term;
        if (mono.empty()) term = std::to_string(t.dim);
        else if (t.dim == 1) term = mono;
        else term = std::to_string(t.dim) + "·" + mono;
        if (!out.empty()) out += " + ";
        out += term;
    }
    return out;
}

}  // namespace semiinf

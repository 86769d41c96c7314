#include "semiinf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>
#include <stdexcept>

namespace semiinf {

void Accum::add(int i, const Scalar& v) {
    if (v.is_zero()) return;
    auto it = m_.find(i);
    if (it == m_.end()) m_.emplace(i, v);
    else it->second += v;
}

void Accum::add_mul(int i, const Scalar& a, const Scalar& b) {
    auto it = m_.find(i);
    if (it == m_.end()) m_.emplace(i, a * b);
    else it->second.add_mul(a, b);
}

void Accum::add_vec(const Scalar& a, const SparseVec& v) {
    for (auto& [i, x] : v) add_mul(i, a, x);
}

SparseVec Accum::take() {
    SparseVec out;
    out.reserve(m_.size());
    for (auto& [i, v] : m_)
        if (!v.is_zero()) out.emplace_back(i, std::move(v));
    m_.clear();
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.first < b.first; });
    return out;
}

SparseVec sv_scale(const Scalar& a, const SparseVec& v) {
    SparseVec out;
    if (a.is_zero()) return out;
    out.reserve(v.size());
    for (auto& [i, x] : v) out.emplace_back(i, a * x);
    return out;
}

SparseVec sv_add(const SparseVec& x, const SparseVec& y, const Scalar& b) {
    SparseVec out;
    out.reserve(x.size() + y.size());
    size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
            Scalar t = b * y[j].second;
            if (!t.is_zero()) out.emplace_back(y[j].first, std::move(t));
            ++j;
        } else {
            Scalar s = x[i].second;
            s.add_mul(b, y[j].second);
            if (!s.is_zero()) out.emplace_back(x[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    return out;
}

SparseVec sv_conj(const SparseVec& v) {
    SparseVec out;
    out.reserve(v.size());
    for (auto& [i, x] : v) out.emplace_back(i, x.conj());
    return out;
}

Scalar sv_get(const SparseVec& v, int i) {
    auto it = std::lower_bound(v.begin(), v.end(), i, [](auto& p, int k) { return p.first < k; });
    if (it != v.end() && it->first == i) return it->second;
    return Scalar();
}

Scalar sv_dot(const SparseVec& x, const SparseVec& y) {
    Scalar s;
    size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i].first < y[j].first) ++i;
        else if (y[j].first < x[i].first) ++j;
        else s.add_mul(x[i++].second, y[j++].second);
    }
    return s;
}

SparseMat SparseMat::identity(int n, const Scalar& s) {
    SparseMat m(n, n);
    if (!s.is_zero())
        for (int i = 0; i < n; ++i) m.col[i] = {{i, s}};
    return m;
}

bool SparseMat::is_zero() const {
    for (auto& c : col)
        if (!c.empty()) return false;
    return true;
}

size_t SparseMat::nnz() const {
    size_t n = 0;
    for (auto& c : col) n += c.size();
    return n;
}

SparseVec SparseMat::apply(const SparseVec& v) const {
    Accum acc;
    for (auto& [j, x] : v) acc.add_vec(x, col[j]);
    return acc.take();
}

std::vector<SparseVec> SparseMat::row_vectors() const {
    std::vector<SparseVec> r(rows);
    for (int j = 0; j < cols; ++j)
        for (auto& [i, x] : col[j]) r[i].emplace_back(j, x);
    return r;
}

SparseMat mat_mul(const SparseMat& a, const SparseMat& b) {
    if (a.cols != b.rows) throw std::invalid_argument("mat_mul shape mismatch");
    SparseMat c(a.rows, b.cols);
    for (int j = 0; j < b.cols; ++j) c.col[j] = a.apply(b.col[j]);
    return c;
}

SparseMat mat_add(const SparseMat& a, const SparseMat& b, const Scalar& s) {
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("mat_add shape mismatch");
    SparseMat c(a.rows, a.cols);
    for (int j = 0; j < a.cols; ++j) c.col[j] = sv_add(a.col[j], b.col[j], s);
    return c;
}

SparseMat mat_scale(const Scalar& s, const SparseMat& a) {
    SparseMat c(a.rows, a.cols);
    for (int j = 0; j < a.cols; ++j) c.col[j] = sv_scale(s, a.col[j]);
    return c;
}

SparseMat mat_transpose(const SparseMat& a) {
    SparseMat t(a.cols, a.rows);
    for (int j = 0; j < a.cols; ++j)
        for (auto& [i, x] : a.col[j]) t.col[i].emplace_back(j, x);
    return t;
}

SparseMat mat_adjoint(const SparseMat& a) {
    SparseMat t(a.cols, a.rows);
    for (int j = 0; j < a.cols; ++j)
        for (auto& [i, x] : a.col[j]) t.col[i].emplace_back(j, x.conj());
    return t;
}

bool mat_equal(const SparseMat& a, const SparseMat& b) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    for (int j = 0; j < a.cols; ++j)
        if (a.col[j] != b.col[j]) return false;
    return true;
}

SparseMat mat_block(const SparseMat& a, int r0, int nr, int c0, int nc) {
    SparseMat b(nr, nc);
    for (int j = 0; j < nc; ++j)
        for (auto& [i, x] : a.col[c0 + j])
            if (i >= r0 && i < r0 + nr) b.col[j].emplace_back(i - r0, x);
    return b;
}

std::string mat_diff_witness(const SparseMat& a, const SparseMat& b) {
    if (a.rows != b.rows || a.cols != b.cols) return "shape mismatch";
    for (int j = 0; j < a.cols; ++j) {
        SparseVec d = sv_add(a.col[j], b.col[j], Scalar(-1));
        if (!d.empty()) {
            std::ostringstream os;
            os << "entry (" << d[0].first << "," << j << "): " << sv_get(a.col[j], d[0].first) << " vs "
               << sv_get(b.col[j], d[0].first);
            return os.str();
        }
    }
    return "";
}

// ---- Echelon ----

SparseVec Echelon::reduce(const SparseVec& v) const {
    bool hit = false;
    for (auto& [c, x] : v)
        if (piv_row_.count(c)) { hit = true; break; }
    if (!hit) return v;
    Accum acc;
    for (auto& [c, x] : v) acc.add(c, x);
    for (auto& [c, x] : v) {
        auto it = piv_row_.find(c);
        if (it == piv_row_.end()) continue;
        acc.add_vec(-x, rows_[it->second]);
    }
    return acc.take();
}

bool Echelon::insert(SparseVec v) {
    SparseVec w = reduce(v);
    if (w.empty()) return false;
    int p = w[0].first;
    Scalar inv = w[0].second.inv();
    if (!inv.is_one())
        for (auto& e : w) e.second *= inv;
    // eliminate p from existing rows
    auto cr = col_rows_.find(p);
    if (cr != col_rows_.end()) {
        std::vector<int> touching = cr->second;
        for (int r : touching) {
            Scalar a = sv_get(rows_[r], p);
            if (a.is_zero()) continue;
            rows_[r] = sv_add(rows_[r], w, -a);
            for (auto& [c, x] : rows_[r]) {
                auto& lst = col_rows_[c];
                if (lst.empty() || lst.back() != r) lst.push_back(r);
            }
        }
    }
    int idx = static_cast<int>(rows_.size());
    for (auto& [c, x] : w) col_rows_[c].push_back(idx);
    rows_.push_back(std::move(w));
    piv_.push_back(p);
    piv_row_[p] = idx;
    return true;
}

std::vector<Scalar> Echelon::coords(const SparseVec& v) const {
    std::vector<Scalar> c(rows_.size());
    for (size_t j = 0; j < rows_.size(); ++j) c[j] = sv_get(v, piv_[j]);
    return c;
}

std::vector<SparseVec> Echelon::kernel() const {
    std::vector<SparseVec> out;
    for (int f = 0; f < dim_; ++f) {
        if (piv_row_.count(f)) continue;
        Accum acc;
        acc.add(f, Scalar(1));
        auto it = col_rows_.find(f);
        if (it != col_rows_.end()) {
            std::vector<int> rs = it->second;
            std::sort(rs.begin(), rs.end());
            rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
            for (int r : rs) {
                Scalar a = sv_get(rows_[r], f);
                if (!a.is_zero()) acc.add(piv_[r], -a);
            }
        }
        out.push_back(acc.take());
    }
    return out;
}

int rank_of(const std::vector<SparseVec>& vecs, int dim) {
    Echelon e(dim);
    for (auto& v : vecs) e.insert(v);
    return e.rank();
}

int rank_of(const SparseMat& m) {
    // eliminate along the smaller side
    if (m.rows < m.cols) return rank_of(m.row_vectors(), m.cols);
    return rank_of(m.col, m.rows);
}

std::vector<SparseVec> kernel_of(const SparseMat& m) {
    Echelon e(m.cols);
    for (auto& r : m.row_vectors()) e.insert(std::move(r));
    return e.kernel();
}

std::vector<SparseVec> kernel_of_stack(const std::vector<const SparseMat*>& ms, int cols) {
    Echelon e(cols);
    for (auto* m : ms) {
        if (m->cols != cols) throw std::invalid_argument("kernel_of_stack: column mismatch");
        for (auto& r : m->row_vectors()) e.insert(std::move(r));
    }
    return e.kernel();
}

SparseMat from_columns(const std::vector<SparseVec>& vs, int dim) {
    SparseMat m(dim, static_cast<int>(vs.size()));
    for (size_t j = 0; j < vs.size(); ++j) m.col[j] = vs[j];
    return m;
}

std::vector<SparseVec> intersect_spans(const std::vector<SparseVec>& u, const std::vector<SparseVec>& v, int dim) {
    if (u.empty() || v.empty()) return {};
    // kernel of [U | -V], then map through U
    int nu = static_cast<int>(u.size()), nv = static_cast<int>(v.size());
    SparseMat m(dim, nu + nv);
    for (int j = 0; j < nu; ++j) m.col[j] = u[j];
    for (int j = 0; j < nv; ++j) m.col[nu + j] = sv_scale(Scalar(-1), v[j]);
    Echelon img(dim);
    std::vector<SparseVec> out;
    for (auto& k : kernel_of(m)) {
        Accum acc;
        for (auto& [j, x] : k)
            if (j < nu) acc.add_vec(x, u[j]);
        SparseVec w = acc.take();
        if (img.insert(w)) out.push_back(std::move(w));
    }
    return out;
}

std::vector<SparseVec> apply_all(const SparseMat& m, const std::vector<SparseVec>& vs) {
    std::vector<SparseVec> out;
    out.reserve(vs.size());
    for (auto& v : vs) out.push_back(m.apply(v));
    return out;
}

Scalar herm(const SparseMat& g, const SparseVec& x, const SparseVec& y) {
    return sv_dot(sv_conj(x), g.apply(y));
}

bool is_hermitian(const SparseMat& g) { return mat_equal(g, mat_adjoint(g)); }

bool is_positive_definite(const SparseMat& g, std::string* why) {
    int n = g.rows;
    if (g.cols != n) throw std::invalid_argument("gram not square");
    if (!is_hermitian(g)) {
        if (why) *why = "not Hermitian: " + mat_diff_witness(g, mat_adjoint(g));
        return false;
    }
    // sparse rows, Gaussian elimination without pivoting
    std::vector<SparseVec> rows = g.row_vectors();
    for (int k = 0; k < n; ++k) {
        Scalar d = sv_get(rows[k], k);
        if (!d.is_real() || sgn(d.re) <= 0) {
            if (why) *why = "pivot " + std::to_string(k) + " = " + d.str();
            return false;
        }
        Scalar dinv = d.inv();
        // column k below the diagonal equals conj of row k entries
        for (auto& [i, x] : rows[k]) {
            if (i <= k) continue;
            Scalar l = x.conj() * dinv;
            rows[i] = sv_add(rows[i], rows[k], -l);
        }
    }
    return true;
}

std::vector<SparseVec> gram_schmidt(const SparseMat& g, const std::vector<SparseVec>& vs) {
    std::vector<SparseVec> us;
    std::vector<Scalar> norms;
    for (auto& v : vs) {
        SparseVec u = v;
        SparseVec gv = g.apply(v);
        for (size_t j = 0; j < us.size(); ++j) {
            Scalar c = sv_dot(sv_conj(us[j]), gv) / norms[j];
            if (!c.is_zero()) u = sv_add(u, us[j], -c);
        }
        Scalar nn = herm(g, u, u);
        if (nn.is_zero()) continue;
        us.push_back(std::move(u));
        norms.push_back(nn);
    }
    return us;
}

// ---- polynomials ----

Poly poly_trim(Poly p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j].add_mul(a[i], b[j]);
    return poly_trim(c);
}

Poly poly_divmod(const Poly& a, const Poly& b0, Poly* rem) {
    Poly b = poly_trim(b0);
    if (b.empty()) throw std::domain_error("poly division by zero");
    Poly r = poly_trim(a);
    if (r.size() < b.size()) {
        if (rem) *rem = r;
        return {};
    }
    Poly q(r.size() - b.size() + 1);
    Scalar lead_inv = b.back().inv();
    for (int k = static_cast<int>(q.size()) - 1; k >= 0; --k) {
        Scalar c = r[k + b.size() - 1] * lead_inv;
        q[k] = c;
        if (c.is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) r[k + j] -= c * b[j];
    }
    if (rem) *rem = poly_trim(r);
    return poly_trim(q);
}

static Poly poly_monic(Poly p) {
    p = poly_trim(p);
    if (p.empty()) return p;
    Scalar inv = p.back().inv();
    for (auto& c : p) c *= inv;
    return p;
}

Poly poly_gcd(Poly a, Poly b) {
    a = poly_trim(a);
    b = poly_trim(b);
    while (!b.empty()) {
        Poly r;
        poly_divmod(a, b, &r);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(a);
}

Poly poly_deriv(const Poly& p) {
    Poly d;
    for (size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Scalar(static_cast<long>(k)));
    return poly_trim(d);
}

Scalar poly_eval(const Poly& p, const Scalar& x) {
    Scalar s;
    for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k) s = s * x + p[k];
    return s;
}

std::string poly_str(const Poly& p0) {
    Poly p = poly_trim(p0);
    if (p.empty()) return "0";
    std::string out;
    for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k) {
        if (p[k].is_zero()) continue;
        std::string c = p[k].str();
        if (!p[k].is_real() && k > 0) c = "(" + c + ")";
        if (!out.empty()) out += (c[0] == '-' ? " - " : " + ");
        else if (c[0] == '-') out += "-";
        if (c[0] == '-') c = c.substr(1);
        if (k == 0) out += c;
        else {
            if (c != "1") out += c + "*";
            out += "x";
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

SparseVec poly_apply(const Poly& p, const SparseMat& m, const SparseVec& v) {
    SparseVec acc;
    for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k) {
        acc = m.apply(acc);
        acc = sv_add(acc, v, p[k]);
    }
    return acc;
}

namespace {
Poly krylov_minpoly(const SparseMat& m, const SparseVec& v) {
    int n = m.rows;
    Echelon e(n + n + 2);
    SparseVec cur = v;
    for (int k = 0; k <= n; ++k) {
        SparseVec aug = cur;
        aug.emplace_back(n + k, Scalar(1));
        SparseVec r = e.reduce(aug);
        if (r.empty() || r[0].first >= n) {
            Poly p(k + 1);
            for (auto& [i, x] : r) p[i - n] = x;
            return poly_monic(p);
        }
        e.insert(std::move(aug));
        cur = m.apply(cur);
    }
    throw std::logic_error("krylov sequence did not terminate");
}
}  // namespace

Poly annihilating_poly(const SparseMat& m, unsigned seed) {
    int n = m.rows;
    if (n == 0) return {Scalar(1)};
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(-5, 5);
    SparseVec v;
    for (int i = 0; i < n; ++i) {
        int x = dist(rng);
        if (x != 0) v.emplace_back(i, Scalar(x));
    }
    Poly p = v.empty() ? Poly{Scalar(1)} : krylov_minpoly(m, v);
    for (int j = 0; j < n; ++j) {
        SparseVec r = poly_apply(p, m, {{j, Scalar(1)}});
        if (r.empty()) continue;
        p = poly_mul(p, krylov_minpoly(m, r));
    }
    return p;
}

Poly poly_squarefree(const Poly& p) {
    Poly g = poly_gcd(p, poly_deriv(p));
    Poly r;
    return poly_monic(poly_divmod(p, g, &r));
}

namespace {
// continued-fraction convergents of a long double
std::vector<mpq_class> convergents(long double y, int maxn) {
    std::vector<mpq_class> out;
    mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;
    long double x = y;
    for (int it = 0; it < maxn; ++it) {
        long double a = std::floor(x);
        if (std::fabs(a) > 1e15L) break;
        mpz_class ai(static_cast<long>(a));
        mpz_class h2 = ai * h0 + h1, k2 = ai * k0 + k1;
        out.emplace_back(h2, k2);
        out.back().canonicalize();
        h1 = h0; h0 = h2; k1 = k0; k0 = k2;
        long double frac = x - a;
        if (frac < 1e-18L) break;
        x = 1.0L / frac;
        if (k0 > mpz_class("1000000000000")) break;
    }
    return out;
}
}  // namespace

std::vector<mpq_class> rational_roots(const Poly& p0, Poly* rest) {
    Poly p = poly_monic(p0);
    std::vector<mpq_class> roots;
    for (auto& c : p)
        if (!c.is_real()) {
            if (rest) *rest = p;
            return roots;
        }
    // zero roots
    while (p.size() > 1 && p[0].is_zero()) {
        roots.push_back(0);
        p.erase(p.begin());
    }
    bool found = true;
    while (found && p.size() > 1) {
        found = false;
        int deg = static_cast<int>(p.size()) - 1;
        std::vector<std::complex<long double>> coef(deg + 1);
        for (int k = 0; k <= deg; ++k) coef[k] = static_cast<long double>(p[k].re.get_d());
        // Durand-Kerner
        std::vector<std::complex<long double>> z(deg);
        std::complex<long double> seed(0.4L, 0.9L);
        long double bound = 1;
        for (int k = 0; k < deg; ++k) bound = std::max(bound, 1 + std::abs(coef[k]));
        for (int k = 0; k < deg; ++k) z[k] = bound * std::pow(seed, k);
        for (int it = 0; it < 2000; ++it) {
            long double delta = 0;
            for (int i = 0; i < deg; ++i) {
                std::complex<long double> num = coef[deg], den = 1;
                for (int k = deg - 1; k >= 0; --k) num = num * z[i] + coef[k];
                for (int j = 0; j < deg; ++j)
                    if (j != i) den *= (z[i] - z[j]);
                if (std::abs(den) == 0) den = 1e-30L;
                auto step = num / den;
                z[i] -= step;
                delta = std::max(delta, std::abs(step));
            }
            if (delta < 1e-24L) break;
        }
        for (auto& r : z) {
            if (std::fabs(r.imag()) > 1e-6L * std::max<long double>(1, std::abs(r))) continue;
            for (auto& cand : convergents(r.real(), 40)) {
                if (poly_eval(p, Scalar(cand)).is_zero()) {
                    Poly rem;
                    p = poly_divmod(p, {Scalar(-cand), Scalar(1)}, &rem);
                    roots.push_back(cand);
                    found = true;
                    break;
                }
            }
            if (found) break;
        }
    }
    std::sort(roots.begin(), roots.end());
    if (rest) *rest = p;
    return roots;
}

}  // namespace semiinf

#include "semiinf/lie.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace semiinf {

Mat mat_zero(int r, int c) { return Mat(r, std::vector<Scalar>(c)); }

Mat mat_identity(int n) {
    Mat m = mat_zero(n, n);
    for (int i = 0; i < n; ++i) m[i][i] = Scalar(1);
    return m;
}

Mat dmul(const Mat& a, const Mat& b) {
    int r = static_cast<int>(a.size()), k = b.size(), c = b.empty() ? 0 : b[0].size();
    Mat m = mat_zero(r, c);
    for (int i = 0; i < r; ++i)
        for (int l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (int j = 0; j < c; ++j)
                if (!b[l][j].is_zero()) m[i][j].add_mul(a[i][l], b[l][j]);
        }
    return m;
}

Mat dadd(const Mat& a, const Mat& b, const Scalar& s) {
    Mat m = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) m[i][j].add_mul(s, b[i][j]);
    return m;
}

Mat dconj(const Mat& a) {
    Mat m = a;
    for (auto& r : m)
        for (auto& x : r) x = x.conj();
    return m;
}

Mat dtranspose(const Mat& a) {
    if (a.empty()) return a;
    Mat m = mat_zero(a[0].size(), a.size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) m[j][i] = a[i][j];
    return m;
}

Mat dinverse(const Mat& a0) {
    int n = static_cast<int>(a0.size());
    Mat a = a0, inv = mat_identity(n);
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int r = c; r < n; ++r)
            if (!a[r][c].is_zero()) { p = r; break; }
        if (p < 0) throw ValidationError("matrix is singular");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        Scalar s = a[c][c].inv();
        for (int j = 0; j < n; ++j) { a[c][j] *= s; inv[c][j] *= s; }
        for (int r = 0; r < n; ++r) {
            if (r == c || a[r][c].is_zero()) continue;
            Scalar t = a[r][c];
            for (int j = 0; j < n; ++j) {
                a[r][j] -= t * a[c][j];
                inv[r][j] -= t * inv[c][j];
            }
        }
    }
    return inv;
}

Scalar dtrace(const Mat& a) {
    Scalar s;
    for (size_t i = 0; i < a.size(); ++i) s += a[i][i];
    return s;
}

bool dis_zero(const Mat& a) {
    for (auto& r : a)
        for (auto& x : r)
            if (!x.is_zero()) return false;
    return true;
}

Mat kron(const Mat& a, const Mat& b) {
    int ar = a.size(), ac = a.empty() ? 0 : a[0].size(), br = b.size(), bc = b.empty() ? 0 : b[0].size();
    Mat m = mat_zero(ar * br, ac * bc);
    for (int i = 0; i < ar; ++i)
        for (int j = 0; j < ac; ++j)
            if (!a[i][j].is_zero())
                for (int k = 0; k < br; ++k)
                    for (int l = 0; l < bc; ++l) m[i * br + k][j * bc + l] = a[i][j] * b[k][l];
    return m;
}

Scalar LieAlgebraData::f_low(int a, int b, int c) const {
    Scalar s;
    for (int d = 0; d < dim; ++d)
        if (!fabc(a, b, d).is_zero()) s.add_mul(fabc(a, b, d), K[d][c]);
    return s;
}

Mat LieAlgebraData::ad(int a) const {
    Mat m = mat_zero(dim, dim);
    for (int b = 0; b < dim; ++b)
        for (int c = 0; c < dim; ++c) m[c][b] = fabc(a, b, c);
    return m;
}

Mat LieAlgebraData::killing() const {
    std::vector<Mat> ads;
    for (int a = 0; a < dim; ++a) ads.push_back(ad(a));
    Mat k = mat_zero(dim, dim);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) k[a][b] = dtrace(dmul(ads[a], ads[b]));
    return k;
}

bool LieAlgebraData::unitary_compatible() const { return dmul(dconj(K), K) == mat_identity(dim); }

static std::string tup(std::initializer_list<int> xs) {
    std::string s = "(";
    bool first = true;
    for (int x : xs) {
        if (!first) s += ",";
        s += std::to_string(x);
        first = false;
    }
    return s + ")";
}

void validate(const LieAlgebraData& g) {
    int n = g.dim;
    if (n <= 0) throw ValidationError("Lie algebra dimension must be positive");
    if (static_cast<int>(g.f.size()) != n * n * n) throw ValidationError("structure constant array has wrong size");
    if (static_cast<int>(g.K.size()) != n) throw ValidationError("K has wrong size");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (g.fabc(a, b, c) != -g.fabc(b, a, c))
                    throw ValidationError("antisymmetry violated at " + tup({a, b, c}));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int e = 0; e < n; ++e) {
                    Scalar s;
                    for (int d = 0; d < n; ++d) {
                        s.add_mul(g.fabc(a, b, d), g.fabc(d, c, e));
                        s.add_mul(g.fabc(b, c, d), g.fabc(d, a, e));
                        s.add_mul(g.fabc(c, a, d), g.fabc(d, b, e));
                    }
                    if (!s.is_zero()) throw ValidationError("Jacobi violated at " + tup({a, b, c, e}));
                }
    for (int a = 0; a < n; ++a) {
        if (static_cast<int>(g.K[a].size()) != n) throw ValidationError("K has wrong size");
        for (int b = 0; b < n; ++b)
            if (g.K[a][b] != g.K[b][a]) throw ValidationError("K not symmetric at " + tup({a, b}));
    }
    try {
        dinverse(g.K);
    } catch (const ValidationError&) {
        throw ValidationError("K is degenerate");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (g.f_low(a, b, c) != -g.f_low(a, c, b))
                    throw ValidationError("K not invariant at " + tup({a, b, c}));
}

namespace {
std::vector<Scalar> flatten(const Mat& m) {
    std::vector<Scalar> v;
    for (auto& r : m)
        for (auto& x : r) v.push_back(x);
    return v;
}

SparseVec to_sparse(const std::vector<Scalar>& v) {
    SparseVec s;
    for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) s.emplace_back(static_cast<int>(i), v[i]);
    return s;
}
}  // namespace

LieAlgebraData lie_from_matrices(const std::vector<Mat>& basis, const std::vector<std::string>& labels,
                                 const std::string& name) {
    LieAlgebraData g;
    g.dim = basis.size();
    g.labels = labels;
    g.name = name;
    int n = g.dim;
    int flat = basis[0].size() * basis[0].size();
    Echelon e(flat + n);
    for (int j = 0; j < n; ++j) {
        SparseVec v = to_sparse(flatten(basis[j]));
        v.emplace_back(flat + j, Scalar(1));
        if (!e.insert(v)) throw ValidationError("basis matrices are linearly dependent");
    }
    g.f.assign(n * n * n, Scalar());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Mat c = dadd(dmul(basis[a], basis[b]), dmul(basis[b], basis[a]), Scalar(-1));
            SparseVec r = e.reduce(to_sparse(flatten(c)));
            if (!r.empty() && r[0].first < flat) throw ValidationError("basis not closed under bracket");
            for (auto& [i, x] : r) g.fabc(a, b, i - flat) = -x;
        }
    g.K = mat_zero(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g.K[a][b] = dtrace(dmul(basis[a], basis[b]));
    g.Kinv = dinverse(g.K);
    detect_factors(g);
    return g;
}

std::vector<Mat> preset_fundamental(const std::string& name) {
    if (name == "sl2") {
        Scalar ht = Scalar(mpq_class(1, 2), mpq_class(1, 2));  // (1+i)/2
        Mat e = {{0, 1}, {0, 0}};
        Mat h = {{ht, 0}, {0, -ht}};
        Mat f = {{0, 0}, {1, 0}};
        return {e, h, f};
    }
    if (name == "sl3") {
        auto E = [](int i, int j) {
            Mat m = mat_zero(3, 3);
            m[i][j] = Scalar(1);
            return m;
        };
        Mat h1 = dadd(E(0, 0), E(1, 1), Scalar(-1));
        Mat h2 = dadd(E(1, 1), E(2, 2), Scalar(-1));
        return {E(0, 1), E(1, 2), E(0, 2), h1, h2, E(1, 0), E(2, 1), E(2, 0)};
    }
    if (name == "u1") return {{{1, 0}, {0, -1}}};
    throw ValidationError("no defining representation for preset '" + name + "'");
}

LieAlgebraData lie_direct_sum(const std::vector<LieAlgebraData>& parts) {
    LieAlgebraData g;
    for (auto& p : parts) g.dim += p.dim;
    int n = g.dim;
    g.f.assign(n * n * n, Scalar());
    g.K = mat_zero(n, n);
    int off = 0;
    std::vector<std::string> names;
    for (auto& p : parts) {
        for (int a = 0; a < p.dim; ++a) {
            g.labels.push_back(p.labels[a] + (parts.size() > 1 ? "_" + std::to_string(names.size() + 1) : ""));
            for (int b = 0; b < p.dim; ++b) {
                g.K[off + a][off + b] = p.K[a][b];
                for (int c = 0; c < p.dim; ++c) g.fabc(off + a, off + b, off + c) = p.fabc(a, b, c);
            }
        }
        for (auto fac : p.factors) {
            for (auto& i : fac.idx) i += off;
            g.factors.push_back(fac);
        }
        names.push_back(p.name);
        off += p.dim;
    }
    g.name = names.empty() ? "" : names[0];
    for (size_t i = 1; i < names.size(); ++i) g.name += "+" + names[i];
    g.Kinv = dinverse(g.K);
    return g;
}

LieAlgebraData lie_preset(const std::string& name) {
    if (name.find('+') != std::string::npos) {
        std::vector<LieAlgebraData> parts;
        std::stringstream ss(name);
        std::string tok;
        while (std::getline(ss, tok, '+')) parts.push_back(lie_preset(tok));
        return lie_direct_sum(parts);
    }
    if (name == "sl2" || name == "sl3") {
        LieAlgebraData g = name == "sl2"
                               ? lie_from_matrices(preset_fundamental("sl2"), {"e", "ht", "f"}, "sl2")
                               : lie_from_matrices(preset_fundamental("sl3"), {"e1", "e2", "e3", "h1", "h2", "f1", "f2", "f3"}, "sl3");
        for (auto& fac : g.factors) fac.preset = name;
        return g;
    }
    if (name == "u1") {
        LieAlgebraData g;
        g.dim = 1;
        g.labels = {"u"};
        g.f = {Scalar()};
        g.K = {{Scalar(1)}};
        g.Kinv = g.K;
        g.name = "u1";
        detect_factors(g);
        g.factors[0].preset = "u1";
        return g;
    }
    throw ValidationError("unknown Lie algebra preset '" + name + "'");
}

void detect_factors(LieAlgebraData& g) {
    int n = g.dim;
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!g.K[a][b].is_zero()) unite(a, b);
            for (int c = 0; c < n; ++c)
                if (!g.fabc(a, b, c).is_zero()) { unite(a, b); unite(a, c); }
        }
    std::vector<int> roots;
    g.factors.clear();
    for (int a = 0; a < n; ++a) {
        int r = find(a);
        auto it = std::find(roots.begin(), roots.end(), r);
        if (it == roots.end()) {
            roots.push_back(r);
            g.factors.push_back({});
            g.factors.back().idx.push_back(a);
        } else {
            g.factors[it - roots.begin()].idx.push_back(a);
        }
    }
    for (auto& fac : g.factors) {
        fac.abelian = true;
        for (int a : fac.idx)
            for (int b : fac.idx)
                for (int c : fac.idx)
                    if (!g.fabc(a, b, c).is_zero()) fac.abelian = false;
        fac.name = (fac.abelian ? "abelian" : "simple") + std::string("[") + std::to_string(fac.idx.front()) + ".." +
                   std::to_string(fac.idx.back()) + "]";
    }
}

std::vector<mpq_class> dual_coxeter(const LieAlgebraData& g) {
    Mat kill = g.killing();
    std::vector<mpq_class> out;
    for (auto& fac : g.factors) {
        if (fac.abelian) {
            out.push_back(0);
            continue;
        }
        Scalar ratio;
        bool have = false;
        for (int a : fac.idx)
            for (int b : fac.idx) {
                if (g.K[a][b].is_zero()) {
                    if (!kill[a][b].is_zero()) throw ValidationError("Killing form not proportional to K at " + tup({a, b}));
                    continue;
                }
                Scalar r = kill[a][b] / (Scalar(2) * g.K[a][b]);
                if (!have) { ratio = r; have = true; }
                else if (r != ratio) throw ValidationError("Killing form not proportional to K at " + tup({a, b}));
            }
        if (!ratio.is_real()) throw ValidationError("dual Coxeter number is not rational");
        out.push_back(ratio.re);
    }
    return out;
}

void validate(const SymplecticRep& rep, const LieAlgebraData& g) {
    int n = rep.n;
    if (n % 2 != 0) throw ValidationError("symplectic dimension must be even");
    if (static_cast<int>(rep.omega.size()) != n) throw ValidationError("Omega has wrong size");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (rep.omega[a][b] != -rep.omega[b][a]) throw ValidationError("Omega not antisymmetric at " + tup({a, b}));
    if (static_cast<int>(rep.T.size()) != g.dim) throw ValidationError("need one representation matrix per generator");
    for (int A = 0; A < g.dim; ++A) {
        Mat m = dmul(rep.omega, rep.T[A]);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (m[a][b] != m[b][a])
                    throw ValidationError("T_" + std::to_string(A) + " does not preserve Omega at " + tup({a, b}));
    }
    for (int A = 0; A < g.dim; ++A)
        for (int B = 0; B < g.dim; ++B) {
            Mat c = dadd(dmul(rep.T[A], rep.T[B]), dmul(rep.T[B], rep.T[A]), Scalar(-1));
            for (int C = 0; C < g.dim; ++C) c = dadd(c, rep.T[C], -g.fabc(A, B, C));
            if (!dis_zero(c)) throw ValidationError("representation bracket violated at " + tup({A, B}));
        }
}

CriticalityReport check_twice_critical(const LieAlgebraData& g, const SymplecticRep& rep) {
    CriticalityReport r;
    Mat kill = g.killing();
    int n = g.dim;
    Mat tr = mat_zero(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) tr[a][b] = dtrace(dmul(rep.T[a], rep.T[b]));
    std::vector<int> owner(n);
    for (size_t k = 0; k < g.factors.size(); ++k)
        for (int a : g.factors[k].idx) owner[a] = k;
    for (size_t k = 0; k < g.factors.size(); ++k) {
        CriticalityReport::FactorCheck fc;
        fc.factor = g.factors[k].name;
        fc.abelian = g.factors[k].abelian;
        fc.pass = true;
        int a0 = g.factors[k].idx[0];
        int b0 = a0;
        for (int b : g.factors[k].idx)
            if (!g.K[a0][b].is_zero()) { b0 = b; break; }
        fc.lhs_trace = tr[a0][b0].str();
        fc.rhs_trace = (Scalar(2) * kill[a0][b0]).str();
        for (int a : g.factors[k].idx)
            for (int b : g.factors[k].idx)
                if (tr[a][b] != Scalar(2) * kill[a][b]) {
                    fc.pass = false;
                    if (r.witness.empty())
                        r.witness = "Tr_V(T_A T_B) = " + tr[a][b].str() + " but 2 Tr_ad = " +
                                    (Scalar(2) * kill[a][b]).str() + " at " + tup({a, b});
                }
        r.pass = r.pass && fc.pass;
        r.factors.push_back(fc);
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (owner[a] != owner[b] && !tr[a][b].is_zero()) {
                r.mixed_pass = false;
                if (r.witness.empty()) r.witness = "mixed trace nonzero at " + tup({a, b});
            }
    r.pass = r.pass && r.mixed_pass;
    return r;
}

}  // namespace semiinf

#include "semiinf/algebra.hpp"

namespace semiinf {

namespace {
void compare(CheckResult& r, const SpaceOp& lhs, const SpaceOp& rhs, const FockSpace& sp, const std::string& what) {
    ++r.checked;
    std::string w;
    if (!op_equal(lhs, rhs, sp, &w)) r.fail(what + " " + w);
}

SpaceOp zero_like(const FockSpace& sp, int dom2) {
    SpaceOp z = scalar_op(sp, Scalar(0));
    z.m = SparseMat(sp.size(), sp.size());
    z.dom2 = dom2;
    return z;
}
}  // namespace

std::vector<CheckResult> verify_mode_algebra(const FockSpace& sp, const GaugeData* gd) {
    const FieldContent& fc = sp.fields();
    int H = sp.hmax2();
    CheckResult rb{"boson brackets"}, rf{"fermion brackets"}, ra{"affine brackets"}, rv{"Virasoro brackets"};

    std::vector<std::pair<Mode, SpaceOp>> bos, fer;
    for (size_t s = 0; s < fc.species().size(); ++s) {
        bool boson = fc.species()[s].fam == Family::Boson;
        int lo = boson ? -(H + 1) / 2 : -H / 2, hi = boson ? (H - 1) / 2 : H / 2;
        for (int n = lo; n <= hi; ++n) {
            if (!boson && n == 0) continue;
            Mode m{static_cast<int>(s), n};
            (boson ? bos : fer).push_back({m, build(single_mode(fc, m, H), sp)});
        }
    }
    auto pairing = [&](const Mode& a, const Mode& b) {
        const Species& sa = fc.species()[a.s];
        const Species& sb = fc.species()[b.s];
        if (sa.block != sb.block) return Scalar(0);
        const FieldBlock& blk = fc.blocks()[sa.block];
        return blk.omega_inv[sa.local][sb.local];
    };
    for (auto& [ma, a] : bos)
        for (auto& [mb, b] : bos) {
            Scalar c = ma.n + mb.n + 1 == 0 ? pairing(ma, mb) : Scalar(0);
            compare(rb, bracket(a, b), op_scale(c, scalar_op(sp, Scalar(1))), sp,
                    "[" + fc.species()[ma.s].label + "_" + std::to_string(ma.n) + "," + fc.species()[mb.s].label + "_" +
                        std::to_string(mb.n) + "]");
        }
    for (auto& [ma, a] : fer)
        for (auto& [mb, b] : fer) {
            Scalar c = ma.n + mb.n == 0 ? Scalar(ma.n) * pairing(ma, mb) : Scalar(0);
            compare(rf, bracket(a, b), op_scale(c, scalar_op(sp, Scalar(1))), sp,
                    "{" + fc.species()[ma.s].label + "_" + std::to_string(ma.n) + "," + fc.species()[mb.s].label + "_" +
                        std::to_string(mb.n) + "}");
        }

    std::vector<CheckResult> out;
    if (!bos.empty()) out.push_back(rb);
    if (!fer.empty()) out.push_back(rf);
    if (gd && gd->g) {
        const LieAlgebraData& g = *gd->g;
        Mat k = extract_level(fc, *gd);
        int N = H / 2;
        std::map<std::pair<int, int>, SpaceOp> J;
        auto cur = [&](int A, int n) -> const SpaceOp& {
            auto it = J.find({A, n});
            if (it == J.end()) it = J.emplace(std::make_pair(A, n), build(matter_current(fc, *gd, A, n, H), sp)).first;
            return it->second;
        };
        for (int A = 0; A < g.dim; ++A)
            for (int B = 0; B < g.dim; ++B)
                for (int n = -N; n <= N; ++n)
                    for (int m = -N; m <= N; ++m) {
                        SpaceOp lhs = bracket(cur(A, n), cur(B, m));
                        SpaceOp rhs = zero_like(sp, H);
                        for (int C = 0; C < g.dim; ++C)
                            if (!g.fabc(A, B, C).is_zero()) rhs = op_add(rhs, cur(C, n + m), g.fabc(A, B, C));
                        if (n + m == 0 && n != 0) rhs = op_add(rhs, scalar_op(sp, Scalar(n) * k[A][B]));
                        compare(ra, lhs, rhs, sp,
                                "[" + g.labels[A] + "_" + std::to_string(n) + "," + g.labels[B] + "_" + std::to_string(m) + "]");
                    }
        out.push_back(ra);
    }

    Scalar c = extract_central_charge(fc);
    int N = H / 2;
    std::map<int, SpaceOp> L;
    auto vir = [&](int n) -> const SpaceOp& {
        auto it = L.find(n);
        if (it == L.end()) it = L.emplace(n, build(virasoro_mode(fc, n, H), sp)).first;
        return it->second;
    };
    for (int n = -N; n <= N; ++n)
        for (int m = -N; m <= N; ++m) {
            SpaceOp rhs = op_scale(Scalar(n - m), vir(n + m));
            if (n + m == 0) rhs = op_add(rhs, scalar_op(sp, c * Scalar::frac(n * n * n - n, 12)));
            compare(rv, bracket(vir(n), vir(m)), rhs, sp, "[L_" + std::to_string(n) + ",L_" + std::to_string(m) + "]");
        }
    out.push_back(rv);
    return out;
}

}  // namespace semiinf

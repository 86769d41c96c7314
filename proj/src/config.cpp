#include "semiinf/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace semiinf {

using nlohmann::json;

namespace {
std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (auto& x : v) s += (s.empty() ? "" : "; ") + x;
    return s;
}
}  // namespace

ConfigError::ConfigError(std::vector<std::string> p)
    : std::runtime_error("invalid config: " + join(p)), problems(std::move(p)) {}

Scalar json_scalar(const json& v, const std::string& where) {
    if (v.is_number_integer()) return Scalar(static_cast<long>(v.get<long long>()));
    if (v.is_string()) {
        try {
            return Scalar::parse(v.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw ConfigError({where + ": expected a rational string"});
}

json mat_json(const Mat& m) {
    json a = json::array();
    for (auto& r : m) {
        json row = json::array();
        for (auto& x : r) row.push_back(x.str());
        a.push_back(row);
    }
    return a;
}

namespace {

struct Ctx {
    std::vector<std::string> errs;
    void err(const std::string& path, const std::string& msg) { errs.push_back(path + ": " + msg); }
    void allowed(const json& obj, const std::string& path, std::set<std::string> keys) {
        for (auto& [k, v] : obj.items())
            if (!keys.count(k)) err(path + "/" + k, "unknown field");
    }
};

Mat parse_matrix(Ctx& cx, const json& j, const std::string& path, int rows = -1) {
    Mat m;
    if (!j.is_array()) {
        cx.err(path, "expected a matrix (array of arrays)");
        return m;
    }
    for (size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_array()) {
            cx.err(path + "/" + std::to_string(i), "expected an array");
            return {};
        }
        std::vector<Scalar> row;
        for (size_t k = 0; k < j[i].size(); ++k) {
            std::string p = path + "/" + std::to_string(i) + "/" + std::to_string(k);
            try {
                row.push_back(json_scalar(j[i][k], p));
            } catch (const ConfigError& e) {
                cx.errs.insert(cx.errs.end(), e.problems.begin(), e.problems.end());
                row.push_back(Scalar());
            }
        }
        if (!m.empty() && row.size() != m[0].size()) cx.err(path, "ragged matrix");
        m.push_back(row);
    }
    if (rows >= 0 && static_cast<int>(m.size()) != rows)
        cx.err(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(m.size()));
    if (!m.empty() && m.size() != m[0].size()) cx.err(path, "matrix must be square");
    return m;
}

LieAlgebraData parse_lie(Ctx& cx, const json& j, const std::string& path) {
    try {
        if (j.is_string()) return lie_preset(j.get<std::string>());
        if (!j.is_object()) {
            cx.err(path, "expected a preset name or object");
            return {};
        }
        cx.allowed(j, path, {"preset", "raw"});
        if (j.contains("preset")) return lie_preset(j["preset"].get<std::string>());
        if (!j.contains("raw")) {
            cx.err(path, "need 'preset' or 'raw'");
            return {};
        }
        const json& r = j["raw"];
        cx.allowed(r, path + "/raw", {"f", "K", "labels"});
        if (!r.contains("f") || !r.contains("K")) {
            cx.err(path + "/raw", "raw Lie data needs 'f' and 'K'");
            return {};
        }
        LieAlgebraData g;
        g.K = parse_matrix(cx, r["K"], path + "/raw/K");
        g.dim = g.K.size();
        const json& f = r["f"];
        if (!f.is_array() || static_cast<int>(f.size()) != g.dim) {
            cx.err(path + "/raw/f", "expected dim x dim x dim nested array");
            return {};
        }
        g.f.assign(g.dim * g.dim * g.dim, Scalar());
        for (int a = 0; a < g.dim; ++a) {
            Mat fa = parse_matrix(cx, f[a], path + "/raw/f/" + std::to_string(a), g.dim);
            if (!cx.errs.empty()) return {};
            for (int b = 0; b < g.dim; ++b)
                for (int c = 0; c < g.dim; ++c) g.fabc(a, b, c) = fa[b][c];
        }
        if (r.contains("labels")) g.labels = r["labels"].get<std::vector<std::string>>();
        else
            for (int a = 0; a < g.dim; ++a) g.labels.push_back("T" + std::to_string(a));
        g.name = "raw";
        if (!cx.errs.empty()) return {};
        validate(g);
        g.Kinv = dinverse(g.K);
        detect_factors(g);
        return g;
    } catch (const ValidationError& e) {
        cx.err(path, e.what());
    } catch (const json::exception& e) {
        cx.err(path, e.what());
    }
    return {};
}

Mat eps() { return {{0, 1}, {-1, 0}}; }

}  // namespace

Config parse_config(const json& j) {
    Ctx cx;
    Config c;
    if (!j.is_object()) throw ConfigError({": config must be a JSON object"});
    cx.allowed(j, "", {"schema_version", "name", "lie_algebra", "matter", "h_max", "hl_degree_max", "flags"});
    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
        j["schema_version"].get<int>() != kSchemaVersion)
        cx.err("/schema_version", "must be " + std::to_string(kSchemaVersion));
    c.name = j.value("name", std::string("unnamed"));
    if (j.contains("lie_algebra") && !j["lie_algebra"].is_null()) {
        c.g = parse_lie(cx, j["lie_algebra"], "/lie_algebra");
        c.gauged = cx.errs.empty();
    }
    if (!j.contains("h_max") || !j["h_max"].is_string()) {
        cx.err("/h_max", "required half-integer string");
    } else {
        try {
            mpq_class q(j["h_max"].get<std::string>());
            q.canonicalize();
            if (q < 0) cx.err("/h_max", "h_max must be ≥ 0");
            else c.hmax2 = parse_half(j["h_max"].get<std::string>());
        } catch (const std::exception&) {
            cx.err("/h_max", "not a half-integer");
        }
    }
    if (j.contains("hl_degree_max")) {
        if (!j["hl_degree_max"].is_number_integer() || j["hl_degree_max"].get<int>() < 0)
            cx.err("/hl_degree_max", "must be a nonnegative integer");
        else c.hl_degree_max = j["hl_degree_max"].get<int>();
    }
    if (j.contains("flags")) {
        const json& f = j["flags"];
        cx.allowed(f, "/flags", {"allow_non_critical", "emit_witnesses"});
        c.allow_non_critical = f.value("allow_non_critical", false);
        c.emit_witnesses = f.value("emit_witnesses", false);
    }
    std::set<std::string> names;
    if (j.contains("matter")) {
        if (!j["matter"].is_array()) cx.err("/matter", "expected an array");
        else
            for (size_t i = 0; i < j["matter"].size(); ++i) {
                const json& b = j["matter"][i];
                std::string p = "/matter/" + std::to_string(i);
                MatterBlockConfig mb;
                if (!b.is_object() || !b.contains("name") || !b.contains("kind")) {
                    cx.err(p, "block needs 'name' and 'kind'");
                    continue;
                }
                mb.name = b["name"].get<std::string>();
                mb.kind = b["kind"].get<std::string>();
                if (!names.insert(mb.name).second) cx.err(p + "/name", "duplicate block name '" + mb.name + "'");
                if (mb.kind == "trivial") {
                    cx.allowed(b, p, {"name", "kind"});
                } else if (mb.kind == "symplectic_boson") {
                    cx.allowed(b, p, {"name", "kind", "omega", "rep", "d", "conjugation_phase"});
                    if (!b.contains("omega")) {
                        cx.err(p + "/omega", "required");
                        continue;
                    }
                    const json& om = b["omega"];
                    if (om.is_object()) {
                        cx.allowed(om, p + "/omega", {"preset", "n"});
                        if (om.value("preset", std::string()) != "eps_x_id")
                            cx.err(p + "/omega/preset", "only 'eps_x_id' is known");
                        else mb.omega = kron(eps(), mat_identity(om.value("n", 1)));
                    } else {
                        mb.omega = parse_matrix(cx, om, p + "/omega");
                    }
                    int n = mb.omega.size();
                    if (b.contains("d")) {
                        mb.d = b["d"].get<std::vector<int>>();
                        if (static_cast<int>(mb.d.size()) != n) cx.err(p + "/d", "need one d-grade per boson");
                    }
                    if (b.contains("conjugation_phase"))
                        mb.conjugation_phase = json_scalar(b["conjugation_phase"], p + "/conjugation_phase");
                    int dim = c.gauged ? c.g.dim : 0;
                    mb.T.assign(dim, mat_zero(n, n));
                    if (b.contains("rep")) {
                        const json& r = b["rep"];
                        if (!c.gauged) {
                            cx.err(p + "/rep", "representation given but no Lie algebra");
                        } else if (r.contains("preset")) {
                            cx.allowed(r, p + "/rep", {"preset", "factor", "n"});
                            int fi = r.value("factor", 0), copies = r.value("n", 1);
                            bool hyper = r["preset"] == "hyper_x_id";
                            if (!hyper && r["preset"] != "fundamental_x_id")
                                cx.err(p + "/rep/preset", "known presets: 'fundamental_x_id', 'hyper_x_id'");
                            else if (fi < 0 || fi >= static_cast<int>(c.g.factors.size()) || c.g.factors[fi].preset.empty())
                                cx.err(p + "/rep/factor", "no preset factor with index " + std::to_string(fi));
                            else {
                                auto fund = preset_fundamental(c.g.factors[fi].preset);
                                int fd = fund[0].size() * (hyper ? 2 : 1);
                                if (fd * copies != n) cx.err(p + "/rep", "dimension mismatch with omega");
                                else
                                    for (size_t a = 0; a < c.g.factors[fi].idx.size(); ++a) {
                                        Mat t = fund[a];
                                        if (hyper) {
                                            // W + W*, paired by eps x id
                                            int w = t.size();
                                            Mat h = mat_zero(2 * w, 2 * w);
                                            for (int i = 0; i < w; ++i)
                                                for (int j = 0; j < w; ++j) {
                                                    h[i][j] = t[i][j];
                                                    h[w + i][w + j] = -t[j][i];
                                                }
                                            t = h;
                                        }
                                        mb.T[c.g.factors[fi].idx[a]] = kron(t, mat_identity(copies));
                                    }
                            }
                        } else if (r.contains("matrices")) {
                            cx.allowed(r, p + "/rep", {"matrices"});
                            if (!r["matrices"].is_array() || static_cast<int>(r["matrices"].size()) != dim)
                                cx.err(p + "/rep/matrices", "need one matrix per generator");
                            else
                                for (int a = 0; a < dim; ++a)
                                    mb.T[a] = parse_matrix(cx, r["matrices"][a], p + "/rep/matrices/" + std::to_string(a), n);
                        } else {
                            cx.err(p + "/rep", "need 'preset' or 'matrices'");
                        }
                    }
                    if (cx.errs.empty() && c.gauged) {
                        try {
                            SymplecticRep rep{n, mb.omega, dinverse(mb.omega), mb.T};
                            validate(rep, c.g);
                        } catch (const ValidationError& e) {
                            cx.err(p, e.what());
                        }
                    }
                } else if (mb.kind == "symplectic_fermion") {
                    cx.allowed(b, p, {"name", "kind", "metric"});
                    if (!b.contains("metric")) {
                        cx.err(p + "/metric", "required");
                        continue;
                    }
                    if (b["metric"].is_object()) {
                        cx.allowed(b["metric"], p + "/metric", {"preset"});
                        try {
                            mb.metric = lie_preset(b["metric"].value("preset", std::string())).K;
                        } catch (const ValidationError& e) {
                            cx.err(p + "/metric/preset", e.what());
                        }
                    } else {
                        mb.metric = parse_matrix(cx, b["metric"], p + "/metric");
                    }
                } else {
                    cx.err(p + "/kind", "unknown block kind '" + mb.kind + "'");
                }
                c.matter.push_back(std::move(mb));
            }
    }
    if (!cx.errs.empty()) throw ConfigError(cx.errs);
    c.source = j;
    return c;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({": cannot read '" + path + "'"});
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError({std::string(": parse error: ") + e.what()});
    }
    return parse_config(j);
}

std::string config_hash(const Config& c) {
    std::string s = c.source.dump() + "|" + kCodeVersion;
    uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

}  // namespace semiinf

#pragma once
#include <string>
#include <vector>

#include "json.hpp"
#include "semiinf/lie.hpp"

namespace semiinf {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kCodeVersion = "semiinf-0.3";

struct ConfigError : std::runtime_error {
    std::vector<std::string> problems;  // "JSON-pointer: message"
    explicit ConfigError(std::vector<std::string> p);
};

struct MatterBlockConfig {
    std::string name;
    std::string kind;  // symplectic_boson | symplectic_fermion | trivial
    Mat omega;         // bosons: lower Omega_ab
    std::vector<Mat> T;  // bosons: one matrix per generator (zero if uncharged)
    std::vector<int> d;
    Scalar conjugation_phase = Scalar(-1);  // rho(q^a) = phase * Omega_ab q^b
    Mat metric;                             // fermions: metric on U
};

struct Config {
    std::string name;
    bool gauged = false;
    LieAlgebraData g;
    std::vector<MatterBlockConfig> matter;
    int hmax2 = 0;
    int hl_degree_max = 2;
    bool allow_non_critical = false;
    bool emit_witnesses = false;
    nlohmann::json source;  // normalized input, for hashing
};

Config parse_config(const nlohmann::json& j);
Config load_config(const std::string& path);
// content hash of the normalized config plus code version
std::string config_hash(const Config& c);
// parse "p/q" or integer JSON into a Scalar
Scalar json_scalar(const nlohmann::json& v, const std::string& where);
nlohmann::json mat_json(const Mat& m);

}  // namespace semiinf

#pragma once
#include <string>
#include <vector>

#include "json.hpp"
#include "semiinf/config.hpp"

namespace semiinf {

// commands: basis, verify, complex-build, cohomology, hodge, quartets, formality, iterated, hl-ring, character
struct Request {
    std::string command;
    std::string suite = "all";  // verify: algebra | unitarity | brst | hodge | all
    int jobs = 1;
    bool emit_witnesses = false;
    std::string cache_dir;  // empty: no cache
    int hl_degree = -1;     // hl-ring; -1 takes the config value
};

struct Report {
    nlohmann::ordered_json json;
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;
    int exit_code = 0;  // 0 all checks pass, 1 a check failed
};

Report run_command(const Config& cfg, const Request& req);

std::string csv_text(const Report& r);

}  // namespace semiinf

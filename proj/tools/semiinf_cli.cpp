#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "semiinf/config.hpp"
#include "semiinf/fock.hpp"
#include "semiinf/workbench.hpp"

using namespace semiinf;
namespace fs = std::filesystem;

namespace {
struct Common {
    std::string config;
    std::string h_max;
    int jobs = 1;
    std::string out;
    std::string format = "json";
    bool witnesses = false;
    std::string cache;
    bool no_cache = false;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--config", c.config, "config JSON")->required()->check(CLI::ExistingFile);
    app->add_option("--h-max", c.h_max, "override h_max, e.g. 3/2");
    app->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
    app->add_option("--out", c.out, "report directory (stdout when absent)");
    app->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app->add_flag("--emit-witnesses", c.witnesses, "include witnesses for passing checks too");
    app->add_option("--cache", c.cache, "complex cache directory (default OUT/cache)");
    app->add_flag("--no-cache", c.no_cache, "do not read or write the complex cache");
}

int run(const Common& c, Request req, const std::string& file_stem) {
    Config cfg;
    try {
        nlohmann::json j;
        {
            std::ifstream in(c.config);
            j = nlohmann::json::parse(in);
        }
        if (!c.h_max.empty()) j["h_max"] = c.h_max;
        cfg = parse_config(j);
    } catch (const ConfigError& e) {
        std::cerr << "config error:\n";
        for (auto& p : e.problems) std::cerr << "  " << p << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    req.jobs = c.jobs;
    req.emit_witnesses = c.witnesses || cfg.emit_witnesses;
    if (!c.no_cache) req.cache_dir = !c.cache.empty() ? c.cache : (c.out.empty() ? "" : (fs::path(c.out) / "cache").string());

    Report rep;
    try {
        rep = run_command(cfg, req);
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        // a mathematical precondition failed; report it like a failed check
        rep.json = {{"schema_version", kSchemaVersion}, {"command", req.command}, {"config", {{"name", cfg.name}, {"hash", config_hash(cfg)}}},
                    {"status", "fail"}, {"witness", e.what()}};
        rep.exit_code = 1;
        std::cerr << "check failed: " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    std::string json = rep.json.dump(2) + "\n";
    if (c.out.empty()) {
        std::cout << (c.format == "csv" && !rep.csv_header.empty() ? csv_text(rep) : json);
    } else {
        fs::create_directories(c.out);
        std::ofstream(fs::path(c.out) / (file_stem + ".json")) << json;
        if (c.format == "csv" && !rep.csv_header.empty()) std::ofstream(fs::path(c.out) / (file_stem + ".csv")) << csv_text(rep);
        std::cout << file_stem << ": " << rep.json.value("status", std::string("fail")) << " -> "
                  << (fs::path(c.out) / (file_stem + ".json")).string() << "\n";
    }
    return rep.exit_code;
}
}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semi-infinite cohomology workbench"};
    app.require_subcommand(1);
    Common common;
    Request req;
    std::string stem;

    auto simple = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        add_common(sub, common);
        sub->callback([&, name] {
            req.command = name;
            stem = name;
        });
        return sub;
    };
    simple("basis", "tri-graded dimensions of the relative complex");
    auto* verify = app.add_subcommand("verify", "run invariant suites");
    add_common(verify, common);
    std::string suite = "all";
    bool all = false;
    verify->add_option("suite", suite, "algebra | unitarity | brst | hodge | all")
        ->check(CLI::IsMember({"algebra", "unitarity", "brst", "hodge", "all"}));
    verify->add_flag("--all", all, "every suite");
    verify->callback([&] {
        req.command = "verify";
        req.suite = all ? "all" : suite;
        stem = "verify-" + req.suite;
    });
    auto* complex = app.add_subcommand("complex", "relative complex");
    complex->require_subcommand(1);
    auto* build = complex->add_subcommand("build", "build the relative complex and store it in the cache");
    add_common(build, common);
    build->callback([&] {
        req.command = "complex-build";
        stem = "complex-build";
    });
    simple("cohomology", "dimensions of H(Q-) per (h,R,d)");
    simple("hodge", "Hodge decomposition per (h,d)");
    simple("quartets", "quartet decomposition per h");
    simple("formality", "formality dimension columns per (h,d)");
    simple("iterated", "iterated cohomology over the simple factors");
    auto* hl = simple("hl-ring", "Hall-Littlewood ring and its Koszul model");
    hl->add_option("--degree", req.hl_degree, "maximal 2R (default from config)");
    simple("character", "graded characters of the Fock space and the complex");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    return run(common, req, stem);
}

#include <cstdio>
#include <cstdlib>

#include <CLI11.hpp>

#include "cli_types.hpp"
#include "ranktwo/version.hpp"

namespace {

struct GlobalArgs {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

std::filesystem::path effective_outdir(const GlobalArgs& args) {
    if (!args.out_dir.empty()) return args.out_dir;
    if (const char* env = std::getenv("RANKTWO_OUT"); env && *env) return env;
    return ".";
}

/// Seed precedence: --seed flag, then RANKTWO_SEED, then the config value.
template <class Config>
void apply_seed_override(const GlobalArgs& args, Config& cfg, std::uint64_t& slot) {
    (void)cfg;
    if (args.seed_set) {
        slot = args.seed;
        return;
    }
    if (const char* env = std::getenv("RANKTWO_SEED"); env && *env) {
        slot = std::strtoull(env, nullptr, 10);
    }
}

void add_common_flags(CLI::App* cmd, GlobalArgs& args) {
    cmd->add_option("--config", args.config_path, "path to the JSON run config")->required();
    cmd->add_option("--out", args.out_dir, "output directory (default: $RANKTWO_OUT or cwd)");
    cmd->add_option("--seed", args.seed, "override the RNG seed")
        ->each([&args](const std::string&) { args.seed_set = true; });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rank-two Poisson structures for reduced rolling systems"};
    app.set_version_flag("--version", std::string("ranktwo ") + ranktwo::kVersion);
    app.require_subcommand(1);

    GlobalArgs args;
    CLI::App* simulate = app.add_subcommand("simulate", "integrate a system and write CSV + summary");
    CLI::App* verify = app.add_subcommand("verify", "run the invariant suite and write a report");
    CLI::App* casimir = app.add_subcommand("casimir", "Casimir values along a trajectory");
    CLI::App* rankscan = app.add_subcommand("rank-scan", "bivector rank at sampled points");
    for (CLI::App* cmd : {simulate, verify, casimir, rankscan}) add_common_flags(cmd, args);

    CLI11_PARSE(app, argc, argv);

    try {
        const auto j = rtcli::load_json_file(args.config_path);
        const auto outdir = effective_outdir(args);

        if (simulate->parsed()) {
            auto cfg = rtcli::parse_simulate(j);
            apply_seed_override(args, cfg, cfg.common.seed);
            return rtcli::run_simulate(cfg, outdir);
        }
        if (verify->parsed()) {
            auto cfg = rtcli::parse_verify(j);
            apply_seed_override(args, cfg, cfg.options.seed);
            return rtcli::run_verify(cfg, outdir);
        }
        if (casimir->parsed()) {
            auto cfg = rtcli::parse_casimir(j);
            apply_seed_override(args, cfg, cfg.common.seed);
            return rtcli::run_casimir(cfg, outdir);
        }
        auto cfg = rtcli::parse_rank_scan(j);
        apply_seed_override(args, cfg, cfg.common.seed);
        return rtcli::run_rank_scan(cfg, outdir);
    } catch (const ranktwo::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return rtcli::kExitConfigError;
    } catch (const ranktwo::ContractError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return rtcli::kExitConfigError;
    } catch (const ranktwo::Error& e) {
        std::fprintf(stderr, "runtime error: %s\n", e.what());
        return rtcli::kExitRuntimeError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "runtime error: %s\n", e.what());
        return rtcli::kExitRuntimeError;
    }
}

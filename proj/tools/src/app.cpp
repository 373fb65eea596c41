#include <chrono>
#include <filesystem>
#include <fstream>

#include "CLI11.hpp"

#include "wavetrap/error.hpp"
#include "wavetrap_cli/app.hpp"

#ifndef WAVETRAP_VERSION
#define WAVETRAP_VERSION "unknown"
#endif

namespace wavetrap::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    os << content;
    os.close();
    if (!os)
        throw std::runtime_error("cannot write " + path.string());
}

std::uint64_t parse_count(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(s, &used);
        if (used != s.size() || s.front() == '-')
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(std::string(what) + " must be a non-negative integer, got '" + s + "'");
    }
}

}  // namespace

void write_outputs(const std::string& dir, const std::string& command, const RunConfig& config,
                   const RunResult& result, double wall_seconds) {
    const fs::path root(dir);
    fs::create_directories(root);

    json meta;
    meta["command"] = command;
    meta["version"] = WAVETRAP_VERSION;
    meta["wall_seconds"] = wall_seconds;
    meta["config"] = to_json(config);
    meta["result"] = result.result;
    meta["notes"] = result.notes;

    // Stage everything first so a failure leaves no partial outputs behind.
    std::vector<std::pair<fs::path, fs::path>> staged;
    auto stage = [&](const std::string& name, const std::string& content) {
        const fs::path final_path = root / name;
        const fs::path tmp = root / ("." + name + ".tmp");
        write_file(tmp, content);
        staged.emplace_back(tmp, final_path);
    };
    try {
        for (const OutputFile& f : result.files) {
            stage(f.name, f.content);
            json m = meta;
            m["file"] = f.name;
            stage(f.name + ".meta.json", m.dump(2) + "\n");
        }
    } catch (...) {
        for (const auto& [tmp, _] : staged)
            fs::remove(tmp);
        throw;
    }
    for (const auto& [tmp, final_path] : staged)
        fs::rename(tmp, final_path);
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ray dynamics of trapped equatorial waves", "wavetrap"};
    app.set_version_flag("--version", WAVETRAP_VERSION);
    app.require_subcommand(1);

    std::string config_path, out_dir, threads, seed;
    app.add_option("-c,--config", config_path, "JSON run configuration")->envname("WAVETRAP_CONFIG");
    app.add_option("-o,--out", out_dir, "output directory")->envname("WAVETRAP_OUT");
    app.add_option("-j,--threads", threads, "worker threads")->envname("WAVETRAP_THREADS");
    app.add_option("--seed", seed, "random seed")->envname("WAVETRAP_SEED");
    for (const std::string& name : subcommands())
        app.add_subcommand(name)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    RunConfig config;
    try {
        if (!config_path.empty())
            config = load_config(config_path);
        if (!out_dir.empty())
            config.output_dir = out_dir;
        if (!threads.empty())
            config.threads = parse_count(threads, "threads");
        if (!seed.empty())
            config.seed = parse_count(seed, "seed");
        validate(config);
    } catch (const ConfigError& e) {
        err << "wavetrap: configuration error: " << e.what() << '\n';
        return 2;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        const RunResult result = run_command(command, config);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        write_outputs(config.output_dir, command, config, result, wall);
        out << command << ": " << result.result.dump() << '\n';
        for (const std::string& note : result.notes)
            err << "note: " << note << '\n';
        return 0;
    } catch (const ConfigError& e) {
        err << "wavetrap: configuration error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "wavetrap: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "wavetrap: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace wavetrap::cli

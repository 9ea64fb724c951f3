#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wildred/report.hpp"

namespace {

std::size_t thread_cap_from_env() {
    const char* env = std::getenv("WILDRED_THREADS");
    if (env == nullptr) return 1;
    try {
        const long v = std::stol(env);
        return v >= 1 ? static_cast<std::size_t>(v) : 1;
    } catch (const std::exception&) {
        throw wildred::validation_error("WILDRED_THREADS must be a positive integer");
    }
}

int dispatch(const std::string& command, const std::string& config_path,
             const std::optional<std::uint64_t>& seed, const std::optional<std::size_t>& samples,
             const std::optional<std::size_t>& grade, const std::string& out_path) {
    std::ifstream in(config_path);
    if (!in) throw wildred::validation_error("cannot open config file: " + config_path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw wildred::validation_error(std::string("config parse error: ") + e.what());
    }
    auto cfg = wildred::parse_config(doc);
    if (seed) cfg.options.seed = *seed;
    if (samples) cfg.options.samples = *samples;
    if (grade) cfg.options.grade_bound = *grade;

    const auto report = wildred::run_command(command, cfg, thread_cap_from_env());
    const std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw wildred::validation_error("cannot open output file: " + out_path);
        out << text;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic engine for wild genus-zero de Rham spaces"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples, grade;
    std::string command;
    for (const auto* name : {"classify", "flatness", "stability", "verma", "unfold", "rank", "full"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "Path to the JSON config document")->required();
        sub->add_option("--seed", seed, "Sampling seed override");
        sub->add_option("--samples", samples, "Sample count override");
        sub->add_option("--grade", grade, "Verma grade bound override");
        sub->add_option("--out", out_path, "Write the report here instead of stdout");
        sub->callback([&command, name] { command = name; });
    }

    CLI11_PARSE(app, argc, argv);
    try {
        return dispatch(command, config_path, seed, samples, grade, out_path);
    } catch (const wildred::invariant_violation& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return 4;
    } catch (const wildred::unsupported_error& e) {
        std::cerr << "unsupported configuration: " << e.what() << "\n";
        return 3;
    } catch (const wildred::validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}

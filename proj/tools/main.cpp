#include "necksim/cli.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{"Curvature flow simulator and estimate verification harness"};
    std::string configPath;
    std::vector<std::string> overrides;
    app.add_option("config", configPath, "Run configuration (key = value lines)")->required();
    app.add_option("--override", overrides, "Override a config key: key=value (repeatable)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : necksim::cli::kExitConfig;
    }
    return necksim::cli::run(configPath, overrides, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "awb/cli.hpp"

int main(int argc, char** argv) {
    // Logs (with timestamps) go to stderr; stdout carries only command output.
    spdlog::set_default_logger(spdlog::stderr_color_mt("awb"));
    std::vector<std::string> args(argv + 1, argv + argc);
    return awb::run_cli(args, std::cout, std::cerr);
}

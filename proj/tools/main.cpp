#include <cstdlib>
#include <iostream>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "cli.hpp"

int main(int argc, char** argv) {
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("LIFTZONOID_LOG")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
  // Diagnostics go to standard error so stdout carries only results.
  auto logger = spdlog::stderr_color_mt("liftzonoid");
  logger->set_level(spdlog::get_level());
  spdlog::set_default_logger(logger);
  return liftzonoid::cli::run(argc, argv, std::cout, std::cerr);
}

#include <iomanip>
#include <iostream>

#include "spinnet/cli.hpp"
#include "spinnet/error.hpp"

int main() {
  spinnet::cli::RunConfig config;
  config.corpus_dir = SPINNET_CORPUS_DIR;
  try {
    int failures = 0;
    double total = 0;
    for (const auto& c : spinnet::cli::verify_all(config)) {
      if (!c.passed) ++failures;
      total += c.seconds;
      std::cout << (c.passed ? "PASS" : "FAIL") << " [" << c.number << "] " << c.name << " (" << std::fixed
                << std::setprecision(2) << c.seconds << " s): " << c.measured.dump() << std::endl;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << " in "
              << total << " s" << std::endl;
    return failures == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cout << "FAIL corpus: " << e.what() << std::endl;
    return 1;
  }
}

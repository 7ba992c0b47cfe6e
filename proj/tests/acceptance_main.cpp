#include <iostream>

#include "ghostcheck/acceptance.hpp"

int main() {
  const auto results = ghostcheck::run_acceptance();
  ghostcheck::print_acceptance(std::cout, results, true);
  return ghostcheck::all_passed(results) ? 0 : 1;
}

#include <elimat/acceptance.hpp>

#include <iostream>

int main() {
  bool all = true;
  for (const auto& r : elimat::run_acceptance([](const elimat::CriterionResult& r) {
         std::cout << elimat::format_result(r) << std::endl;
       }))
    all = all && r.passed;
  std::cout << (all ? "all criteria passed" : "some criteria failed") << std::endl;
  return all ? 0 : 1;
}

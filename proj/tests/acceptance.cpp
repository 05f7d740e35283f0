// One line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <iostream>

#include "squeezelab/verify.hpp"

int main(int argc, char** argv) {
  using namespace squeezelab::verify;
  std::vector<std::string> only(argv + 1, argv + argc);
  const VerifyOptions opt;
  bool ok = true;
  std::size_t passed = 0, total = 0;
  for (const auto& e : battery()) {
    if (!only.empty() && std::find(only.begin(), only.end(), e.id) == only.end()) continue;
    const Criterion c = run_criterion(e, opt);
    std::cout << summary_line(c) << std::endl;
    for (const auto& k : c.checks)
      if (!k.passed) std::cout << "    failed: " << k.name << " = " << k.measured << " (bound " << k.bound << ")"
                               << (k.note.empty() ? "" : " " + k.note) << "\n";
    if (!c.error.empty()) std::cout << "    error: " << c.error << "\n";
    ok = ok && c.passed();
    passed += c.passed() ? 1 : 0;
    ++total;
  }
  std::cout << passed << "/" << total << " criteria passed" << std::endl;
  return ok ? 0 : 1;
}

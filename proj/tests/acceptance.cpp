// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.
#include <cstdio>
#include <exception>

#include "singosc4/io.hpp"
#include "singosc4/verify.hpp"

int main() {
  using namespace singosc4;
  VerifyConfig cfg;
  VerifyReport rep;
  try {
    rep = run_verify(cfg);
  } catch (const std::exception& e) {
    std::printf("FAIL harness: %s\n", e.what());
    return 1;
  }
  for (const auto& [info, pass] : rep.criterion_results()) {
    std::printf("%s %s %s\n", pass ? "PASS" : "FAIL", info.id.c_str(), info.title.c_str());
    for (const auto& c : rep.checks)
      if (c.criterion == info.id)
        std::printf("     %-44s %s %s %s\n", c.name.c_str(), format_double(c.measured).c_str(),
                    c.strict ? "<" : "<=", format_double(c.bound).c_str());
  }
  return rep.passed() ? 0 : 1;
}

// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <zsurf/verify.hpp>

#include <iostream>

int main() {
  int failed = 0;
  for (auto& c : zsurf::verify::criteria()) {
    auto r = zsurf::verify::run(c);
    failed += !r.pass;
    std::cout << zsurf::verify::line(r) << std::endl;
  }
  return failed ? 1 : 0;
}

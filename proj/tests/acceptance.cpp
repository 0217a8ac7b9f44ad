// One line per acceptance criterion; exit status 1 if any fails.

#include <uvqft/suites.hpp>

#include <cstdio>

int main(int argc, char** argv) {
  uvqft::CheckOptions o;
  if (argc > 1) o.seed = std::stoull(argv[1]);
  int index = 0, failed = 0;
  for (const auto& e : uvqft::suite_registry()) {
    if (e.criterion.empty()) continue;
    ++index;
    const auto r = e.run(o);
    if (!r.pass()) ++failed;
    std::printf("%s %2d %-14s %s [%s]\n", r.pass() ? "PASS" : "FAIL", index, e.name.c_str(), e.criterion.c_str(),
                r.summary().c_str());
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed ? 1 : 0;
}

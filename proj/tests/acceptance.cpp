#include <cstdlib>
#include <iostream>

#include "gmc/acceptance.hpp"

int main(int argc, char** argv) {
  gmc::acceptance::Options opt;
  opt.golden_dir = GMC_GOLDEN_DIR;
  if (const char* s = std::getenv("GMC_SEED")) opt.seed = std::strtoull(s, nullptr, 10);
  for (int i = 1; i < argc; ++i) opt.only.push_back(std::atoi(argv[i]));
  int failed = 0;
  gmc::acceptance::run(opt, [&](const gmc::acceptance::Result& r) {
    std::cout << gmc::acceptance::render(r) << std::endl;
    failed += !r.pass;
  });
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
  return failed ? 1 : 0;
}

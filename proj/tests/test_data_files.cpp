#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "pgrad/presentation.hpp"
#include "pgrad/verify.hpp"

using namespace pgrad;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("shipped presentation files parse and match the embedded corpus") {
  for (const std::string& name : corpus_names()) {
    std::string path = std::string(PGRAD_DATA_DIR) + "/" + name + ".grp";
    Presentation from_file = parse_presentation(slurp(path));
    CHECK(from_file == corpus_presentation(name));
  }
}

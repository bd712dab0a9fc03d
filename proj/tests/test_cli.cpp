#include "chebknot/cli.hpp"

#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = chebknot::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("poly subcommand") {
  CHECK(run({"poly", "T", "5"}).out == "0 5 0 -20 0 16\n");
  CHECK(run({"poly", "V", "4"}).out == "0 -4 0 8\n");
  CHECK(run({"poly", "M", "12"}).out == "1 0 -16 0 16\n");
  CHECK(run({"poly", "Pi", "2"}).out == "-1 -2 4\n");
  CHECK(run({"poly", "T", "5"}).code == 0);
}

TEST_CASE("factor subcommand") {
  CHECK(run({"factor", "T", "6"}).out == "-1 0 2\n1 0 -16 0 16\n");
  CHECK(run({"factor", "V", "4"}).out == "content: 4\n0 1\n-1 0 2\n");
}

TEST_CASE("invalid input exits with code 2") {
  CHECK(run({"poly", "X", "3"}).code == 2);
  CHECK(run({"poly", "T"}).code == 2);
  CHECK(run({"factor", "V", "1"}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("deterministic output") {
  CHECK(run({"poly", "M", "35"}).out == run({"poly", "M", "35"}).out);
}

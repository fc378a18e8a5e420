#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdlib>
#include <string>

#include "doctest.h"

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(RRTCUT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(run("simulate --n 1") == 2);
    CHECK(run("") == 2);
    CHECK(run("simulate") == 2);
    CHECK(run("simulate --n 5 --bogus") == 2);
    CHECK(run("simulate --n 5 --walk --coalescent") == 2);
    CHECK(run("simulate --n 5 --coalescent --jump zeta") == 2);
    CHECK(run("simulate --n 5 --process sideways") == 2);
    CHECK(run("exact --dist K --n 500") == 2);
    CHECK(run("exact --n 5") == 2);
    CHECK(run("verify --only nothing") == 2);
    CHECK(run("verify --mutate nothing") == 2);
    CHECK(run("cut-tree --tree 3,2") == 2);
}

TEST_CASE("successful commands exit with 0") {
    CHECK(run("--help") == 0);
    CHECK(run("--version") == 0);
    CHECK(run("simulate --process degree-biased --n 4 --trials 1000 --seed 7") == 0);
    CHECK(run("simulate --walk --jump zeta --n 4 --trials 1000 --format json") == 0);
    CHECK(run("exact --dist K --n 5") == 0);
    CHECK(run("exact --dominance --n-max 30") == 0);
    CHECK(run("exact --consistency --n 4") == 0);
    CHECK(run("rates --n 6") == 0);
    CHECK(run("cut-tree --n 10 --seed 2") == 0);
    CHECK(run("verify --list") == 0);
    CHECK(run("verify --only splitting") == 0);
}

TEST_CASE("a corrupted constant makes verify exit with 1") {
    CHECK(run("verify --only rates --mutate consistency") == 1);
    CHECK(run("verify --only enumeration --mutate cut-size") == 1);
}

TEST_CASE("output file option") {
    const std::string path = "rrtcut_cli_test_out.csv";
    CHECK(run("simulate --n 6 --trials 10 --out " + path) == 0);
    std::FILE* f = std::fopen(path.c_str(), "r");
    REQUIRE(f != nullptr);
    char line[256] = {0};
    CHECK(std::fgets(line, sizeof line, f) != nullptr);
    std::fclose(f);
    std::remove(path.c_str());
    CHECK(std::string(line).rfind("# rrtcut ", 0) == 0);
}

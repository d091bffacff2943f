// End-to-end checks of the installed CLI surface: subcommands, exit codes,
// CSV determinism (including across worker counts), and config/flag layering.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::string kTool = CBATH_TOOL_PATH;

int run_command(const std::string& command) {
    const int status = std::system(command.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream file(path);
    REQUIRE(file.good());
    std::ostringstream os;
    os << file.rdbuf();
    return os.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("run fig1 writes deterministic CSV") {
    TempFile a("cli_fig1_a.csv"), b("cli_fig1_b.csv"), c("cli_fig1_c.csv");
    const std::string base = kTool + " run --experiment fig1 --n-samples 41 --t-max 20";
    CHECK(run_command(base + " --out " + a.path + " > /dev/null") == 0);
    CHECK(run_command(base + " --out " + b.path + " > /dev/null") == 0);
    CHECK(run_command("CBATH_WORKERS=4 " + base + " --out " + c.path + " > /dev/null") == 0);

    const std::string first = slurp(a.path);
    CHECK(first == slurp(b.path));
    CHECK(first == slurp(c.path));  // worker count must not affect bytes
    CHECK(first.rfind("# experiment=fig1", 0) == 0);
}

TEST_CASE("run fig4 with worker parallelism stays deterministic") {
    TempFile a("cli_fig4_a.csv"), b("cli_fig4_b.csv");
    const std::string base =
        kTool + " run --experiment fig4 --n-list 1,2,4,8 --k-steps 2000";
    CHECK(run_command(base + " --out " + a.path + " > /dev/null") == 0);
    CHECK(run_command("CBATH_WORKERS=8 " + base + " --out " + b.path + " > /dev/null") == 0);
    CHECK(slurp(a.path) == slurp(b.path));
}

TEST_CASE("scan-nc reports the critical number") {
    TempFile out("cli_scan.txt");
    CHECK(run_command(kTool + " scan-nc --gamma0 0.05 --n-max 20 > " + out.path) == 0);
    const std::string text = slurp(out.path);
    CHECK(text.find("critical number floor(lambda/(2 gamma0)) + 1 = 11") != std::string::npos);
    CHECK(text.find("N = 11") != std::string::npos);
    CHECK(text.find("agreement: yes") != std::string::npos);

    CHECK(run_command(kTool + " scan-nc --gamma0 0.01 --n-max 20 > " + out.path) == 0);
    CHECK(slurp(out.path).find("none up to N = 20") != std::string::npos);
}

TEST_CASE("validate smoke grid exits 0") {
    CHECK(run_command(kTool + " validate --grid smoke > /dev/null") == 0);
}

TEST_CASE("config file with flag override") {
    TempFile cfg("cli_config.cfg"), out("cli_config_out.csv");
    {
        std::ofstream file(cfg.path);
        file << "experiment = fig1\n";
        file << "t-max = 10\n";
        file << "n-samples = 11\n";
        file << "n-list = 1,2\n";
    }
    CHECK(run_command(kTool + " run --config " + cfg.path + " --n-samples 21 --out " + out.path +
                      " > /dev/null") == 0);
    const std::string text = slurp(out.path);
    CHECK(text.find("n_samples=21") != std::string::npos);  // flag beat the file
    CHECK(text.find("t_max=10") != std::string::npos);      // file supplied the rest
}

TEST_CASE("exit codes: config errors give 2, numerical failures give 3") {
    CHECK(run_command(kTool + " run --experiment fig9 2> /dev/null") == 2);
    CHECK(run_command(kTool + " run --experiment fig1 --t-max -4 2> /dev/null") == 2);
    CHECK(run_command(kTool + " run 2> /dev/null") == 2);  // missing experiment
    CHECK(run_command(kTool + " bogus-subcommand 2> /dev/null") == 2);
    // a hopeless oracle step size trips the norm guard
    CHECK(run_command(kTool +
                      " validate --grid smoke --bath-dt 0.05 > /dev/null 2> /dev/null") == 3);
    CHECK(run_command(kTool + " --help > /dev/null") == 0);
}

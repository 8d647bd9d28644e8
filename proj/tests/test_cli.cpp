#include <catch2/catch.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "mq2_cli_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    fs::path out = scratch_dir() / ("out" + std::to_string(counter));
    fs::path err = scratch_dir() / ("err" + std::to_string(counter));
    ++counter;
    std::string cmd = std::string(MQ2_BIN) + " " + args + " > " + out.string() + " 2> " + err.string();
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

json run_json(const std::string& args, int expected_exit = 0) {
    auto r = run_cli(args + " --json");
    INFO(r.out << r.err);
    REQUIRE(r.exit_code == expected_exit);
    return json::parse(r.out);
}

const std::vector<std::string> kReportKeys = {"input",  "field",      "lambda",      "parity",
                                              "genus",  "splitting",  "assumptions", "errors"};

void check_schema(const json& j) {
    REQUIRE(j.is_object());
    REQUIRE(j.size() == kReportKeys.size());
    for (const auto& k : kReportKeys) REQUIRE(j.contains(k));
    REQUIRE(j["assumptions"].is_array());
    REQUIRE(j["errors"].is_array());
    REQUIRE(j["splitting"].is_array());
    // round trip
    REQUIRE(json::parse(j.dump()) == j);
}

} // namespace

TEST_CASE("lambda command") {
    auto j = run_json("lambda -r \"7,3,-1\"");
    check_schema(j);
    CHECK(j["lambda"]["lambda2"] == 3);
    CHECK(j["lambda"]["greenberg_assumed"] == true);
    CHECK(j["field"] == "-1,3,7");
    REQUIRE_FALSE(j["assumptions"].empty());

    CHECK(run_json("lambda -r \"-7\"")["lambda"]["lambda2"] == 1);
    CHECK(run_json("lambda -r \"-7\"")["assumptions"].empty());
    CHECK(run_json("lambda -r \"-1\"")["lambda"]["lambda2"] == 0);
    CHECK(run_json("lambda -r \"2,-11,33\"")["lambda"]["lambda2"] == 0);
}

TEST_CASE("lambda command with supplied real invariant") {
    auto j = run_json("lambda -r \"7,3,-1\" --lambda-plus 2");
    CHECK(j["lambda"]["lambda2"] == 5);
    CHECK(j["lambda"]["greenberg_assumed"] == false);
    REQUIRE_FALSE(j["assumptions"].empty());

    auto r = run_cli("lambda -r \"7,3,-1\" --no-assume-greenberg --json");
    CHECK(r.exit_code == 2);
}

TEST_CASE("lambda command error paths") {
    auto real = run_json("lambda -r \"3,5\"", 3);
    check_schema(real);
    REQUIRE(real["errors"].size() == 1);
    CHECK(real["errors"][0]["kind"] == "hypothesis");

    auto malformed = run_json("lambda -r \"3,x\"", 2);
    CHECK(malformed["errors"][0]["kind"] == "input");
    CHECK(run_cli("lambda -r \"0\"").exit_code == 2);
}

TEST_CASE("parity command") {
    auto j = run_json("parity -r \"2,-11,33\"");
    check_schema(j);
    CHECK(j["parity"]["verdict"] == "odd");
    CHECK(j["parity"]["matched_case"] == "4.5.3");

    CHECK(run_json("parity -r \"2,-5\"")["parity"]["verdict"] == "even_not_div4");
    CHECK(run_json("parity -r \"2,-7\"")["parity"]["verdict"] == "even");
    CHECK(run_json("parity -r \"2,3\"")["parity"]["matched_case"] == "4.2a");

    auto oos = run_json("parity -r \"7\"");
    CHECK(oos["parity"]["verdict"] == "out_of_scope");
}

TEST_CASE("genus command") {
    auto j = run_json("genus -r \"3,5\"");
    check_schema(j);
    CHECK(j["genus"]["narrow_field"] == "-1,3,5");
    CHECK(j["genus"]["genus_field"] == "3,5");
}

TEST_CASE("splitting command") {
    auto j = run_json("splitting -p 7 -n 0..5");
    check_schema(j);
    REQUIRE(j["splitting"].size() == 6);
    std::vector<int> g;
    for (const auto& row : j["splitting"]) {
        CHECK(row["e"] == 1);
        g.push_back(row["g"].get<int>());
    }
    CHECK(g == std::vector<int>{1, 2, 2, 2, 2, 2});

    auto with_d = run_json("splitting -p 3 -n 0..3 -d 5");
    CHECK(with_d["splitting"][0]["quadratic_steps"]["5"] == "inert");
    CHECK(with_d["splitting"][1]["quadratic_steps"]["5"] == "split");

    CHECK(run_cli("splitting -p 2 -n 0..3").exit_code == 2);
    CHECK(run_cli("splitting -p 7 -n 5..1").exit_code == 2);
}

TEST_CASE("verify command") {
    fs::path cfg = scratch_dir() / "tiny.cfg";
    {
        std::ofstream o(cfg);
        o << "suites = lambda_r0\nlambda_r0_bound = 60\n";
    }
    CHECK(run_cli("verify " + cfg.string()).exit_code == 0);

    fs::path faulty = scratch_dir() / "fault.cfg";
    {
        std::ofstream o(faulty);
        o << "suites = order_closed_form\nmax_prime = 60\nmax_level = 5\n"
          << "inject_fault = order_closed_form\n";
    }
    CHECK(run_cli("verify " + faulty.string()).exit_code == 1);

    fs::path empty = scratch_dir() / "empty.cfg";
    {
        std::ofstream o(empty);
        o << "suites =\n";
    }
    auto r = run_cli("verify " + empty.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("no suites") != std::string::npos);

    CHECK(run_cli("verify /nonexistent/nope.cfg").exit_code == 2);
}

TEST_CASE("sweep command determinism and format") {
    fs::path a = scratch_dir() / "a.csv";
    fs::path b = scratch_dir() / "b.csv";
    REQUIRE(run_cli("sweep --bound 20 --out " + a.string()).exit_code == 0);
    REQUIRE(run_cli("sweep --bound 20 --out " + b.string()).exit_code == 0);
    std::string ca = slurp(a), cb = slurp(b);
    REQUIRE(!ca.empty());
    CHECK(ca == cb);
    CHECK(ca.rfind("field,lambda2,parity,case,assumptions\n", 0) == 0);

    fs::path zero = scratch_dir() / "zero.csv";
    REQUIRE(run_cli("sweep --bound 0 --out " + zero.string()).exit_code == 0);
    CHECK(slurp(zero) == "field,lambda2,parity,case,assumptions\n");

    fs::path js = scratch_dir() / "rows.json";
    REQUIRE(run_cli("sweep --bound 20 --format json --out " + js.string()).exit_code == 0);
    auto rows = json::parse(slurp(js));
    REQUIRE(rows.is_array());
    REQUIRE(!rows.empty());
    for (const auto& row : rows) {
        REQUIRE(row.contains("field"));
        REQUIRE(row.contains("lambda2"));
        REQUIRE(row.contains("parity"));
    }

    CHECK(run_cli("sweep --bound 501 --out " + a.string()).exit_code == 2);
    CHECK(run_cli("sweep --bound 10 --format xml --out " + a.string()).exit_code == 2);
    CHECK(run_cli("sweep --bound 10 --out /nonexistent/dir/x.csv").exit_code == 2);
}

TEST_CASE("verify json output is deterministic") {
    fs::path cfg = scratch_dir() / "det.cfg";
    {
        std::ofstream o(cfg);
        o << "suites = lambda_r0, bqf_genus_parity\nlambda_r0_bound = 80\nbqf_bound = 300\n";
    }
    auto r1 = run_cli("verify " + cfg.string() + " --json");
    auto r2 = run_cli("verify " + cfg.string() + " --json");
    CHECK(r1.exit_code == 0);
    CHECK(r1.out == r2.out); // elapsed time lives only on stderr
    auto arr = json::parse(r1.out);
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 2);
    for (const auto& rep : arr) CHECK(rep["passed"] == true);
}

TEST_CASE("unknown arguments fail with the input exit code") {
    CHECK(run_cli("lambda").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);
}

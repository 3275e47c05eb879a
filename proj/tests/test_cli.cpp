#include "binexp/cli.hpp"
#include "binexp/intops.hpp"
#include "binexp/realops.hpp"
#include "binexp/trace.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

using namespace binexp;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("mul prints the product and the Rhind table") {
    const Run r = run_cli({"mul", "27", "23", "--trace", "text"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out == "621\n" + binexp::testing::read_fixture("rhind_27_23.v1.txt"));
    CHECK(r.err.empty());
    CHECK(run_cli({"mul", "27", "23"}).out == "621\n");
}

TEST_CASE("divmod prints quotient and remainder") {
    const Run r = run_cli({"divmod", "626", "27"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out == "23 5\n");
}

TEST_CASE("real subcommands") {
    const Run lg = run_cli({"log", "10", "2"});
    CHECK(lg.code == cli::kOk);
    CHECK(std::fabs(std::stod(lg.out) - 0.30102999566398119521) <= 1e-10);

    CHECK(run_cli({"briggs", "10"}).out == "53\n");
    const Run heron_chain = run_cli({"briggs", "10", "--sqrt-mode", "heron"});
    CHECK(heron_chain.code == cli::kOk);

    CHECK(run_cli({"sqrt", "4"}).out == "2\n");
    CHECK(run_cli({"sqrt", "2"}).out == format_real(heron_sqrt(2.0)) + "\n");
    CHECK(run_cli({"pow", "4", "1", "2"}).out == "2\n");
    CHECK(run_cli({"pow", "9", "--exp", "0.5"}).out == format_real(pow_real(9.0, 0.5)) + "\n");
    CHECK(run_cli({"pow", "2", "--exp", "1e1"}).code == cli::kOk);
    CHECK(run_cli({"sqrt", "2.5e-3"}).code == cli::kOk);
}

TEST_CASE("json trace is the sole output and matches the library log") {
    const Run r = run_cli({"log", "10", "2", "--trace", "json"});
    REQUIRE(r.code == cli::kOk);
    TraceLog lib;
    log_base(10.0, 2.0, {}, &lib);
    CHECK(trace_from_json(r.out) == lib);
    CHECK(r.out == to_json(lib) + "\n");

    const Run m = run_cli({"--trace", "json", "mul", "27", "23"});
    TraceLog mul;
    egyptian_mul(27, 23, &mul);
    CHECK(trace_from_json(m.out) == mul);
}

TEST_CASE("config flags reach the algorithms") {
    const Run faithful = run_cli({"sqrt", "1e6", "--paper-faithful", "--trace", "json"});
    CHECK(faithful.code == cli::kOk);
    const auto config = trace_from_json(faithful.out).config();
    const NamedValue mode{"heron_relative_mode", FieldValue{false}};
    CHECK(std::find(config.begin(), config.end(), mode) != config.end());
    CHECK(run_cli({"sqrt", "0.01", "--paper-faithful"}).code == cli::kOk);
    CHECK(run_cli({"sqrt", "1e10", "--max-iterations", "3"}).code == cli::kNonConvergence);

    const Run json = run_cli({"sqrt", "2", "--heron-eps", "1e-3", "--trace", "json"});
    const TraceLog log = trace_from_json(json.out);
    CHECK(log.config()[0].name == "heron_eps");
    CHECK(std::get<double>(log.config()[0].value) == 1e-3);
}

TEST_CASE("exit codes for computation errors") {
    CHECK(run_cli({"sqrt", "-1"}).code == cli::kDomain);
    CHECK(run_cli({"divmod", "5", "0"}).code == cli::kDomain);
    CHECK(run_cli({"log", "10", "20"}).code == cli::kDomain);
    CHECK(run_cli({"briggs", "1"}).code == cli::kDomain);
    CHECK(run_cli({"mul", "4294967296", "4294967296"}).code == cli::kOverflow);
    CHECK(run_cli({"divmod", "18446744073709551615", "1"}).code == cli::kOverflow);
    CHECK(run_cli({"pow", "1e200", "--exp", "4"}).code == cli::kOverflow);
}

TEST_CASE("usage errors name the offending operand or flag") {
    Run r = run_cli({"mul", "2.5", "3"});
    CHECK(r.code == cli::kUsage);
    CHECK(r.err.find("operand A") != std::string::npos);
    CHECK(r.out.empty());

    r = run_cli({"divmod", "7", "1e2"});
    CHECK(r.code == cli::kUsage);
    CHECK(r.err.find("operand D") != std::string::npos);

    r = run_cli({"mul", "1"});
    CHECK(r.code == cli::kUsage);

    r = run_cli({"pow", "2", "1"});
    CHECK(r.code == cli::kUsage);

    r = run_cli({"pow", "2", "1", "0"});
    CHECK(r.code == cli::kUsage);
    CHECK(r.err.find("operand Q") != std::string::npos);

    r = run_cli({"sqrt", "abc"});
    CHECK(r.code == cli::kUsage);

    r = run_cli({"sqrt", "2", "--trace", "yaml"});
    CHECK(r.code == cli::kUsage);
    CHECK(r.err.find("--trace") != std::string::npos);

    r = run_cli({"sqrt", "2", "--heron-eps", "0"});
    CHECK(r.code == cli::kUsage);
    CHECK(r.err.find("--heron-eps") != std::string::npos);

    r = run_cli({"mul", "2", "3", "--exp", "1"});
    CHECK(r.code == cli::kUsage);

    CHECK(run_cli({}).code == cli::kUsage);
    CHECK(run_cli({"frobnicate"}).code == cli::kUsage);
}

TEST_CASE("help goes to stdout with exit 0") {
    const Run r = run_cli({"--help"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("divmod") != std::string::npos);
}

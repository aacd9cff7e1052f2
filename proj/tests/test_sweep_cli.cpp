#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "relaylab/errors.hpp"
#include "relaylab/sweep.hpp"

using namespace relaylab;

TEST_SUITE("sweep_cli") {

namespace {
struct Run {
    int code;
    std::string out;
};

Run cli(const std::string& args) {
    const std::string cmd = std::string("\"") + RELAYLAB_CLI + "\" " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("relaylab_unit_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir / name;
}

sweep::SweepJob small_job() {
    sweep::SweepJob job;
    job.schemes = {"cutset", "df", "baf", "bspdf"};
    job.points = 9;
    return job;
}
}

TEST_CASE("rate subcommand") {
    const Run df = cli("rate --scheme df --g 3,3 --h 1,1");
    CHECK(df.code == 0);
    CHECK(df.out.find("rate: 1.000000 bits") != std::string::npos);

    const Run cut = cli("rate --scheme cutset --g 1,1 --h 1,1");
    CHECK(cut.code == 0);
    CHECK(cut.out.find("rate: 0.792481 bits") != std::string::npos);
    CHECK(cut.out.find("rho_star: 0") != std::string::npos);
    CHECK(cut.out.find("active_cut: S") != std::string::npos);

    CHECK(cli("rate --scheme bogus --g 1,1 --h 1,1").code == 2);
    CHECK(cli("rate --scheme df --g 1,1").code == 2);
    CHECK(cli("rate --scheme df --g 1,1 --h 1,1 --ps 0").code == 2);
}

TEST_CASE("powers and noise on the command line") {
    const Run a = cli("rate --scheme df --g 1,1 --h 2,2 --ps 3 --pr 0.5,0.5 --n0 0.5");
    const Run b = cli("rate --scheme df --g 6,6 --h 2,2");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("config file supplies options") {
    const auto cfg = scratch("rate.ini");
    std::ofstream(cfg) << "[rate]\nscheme=df\ng=[3,3]\nh=[1,1]\n";
    const Run r = cli("rate --config \"" + cfg.string() + "\"");
    CHECK(r.code == 0);
    CHECK(r.out.find("rate: 1.000000 bits") != std::string::npos);
}

TEST_CASE("ebit subcommand") {
    const Run r = cli("ebit --g 1 --h 1");
    CHECK(r.code == 0);
    CHECK(r.out.find("lower: 1.9605") != std::string::npos);
    CHECK(r.out.find("upper_df: 2.0794") != std::string::npos);
}

TEST_CASE("CSV layout") {
    const auto rows = sweep::run(small_job(), 2);
    CHECK(rows.size() == 36);
    std::ostringstream os;
    sweep::write_csv(os, rows);
    const std::string text = os.str();
    CHECK(text.rfind("x,scheme,y,params_json,boundary_flag\n", 0) == 0);

    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK((rows[i - 1].x < rows[i].x || (rows[i - 1].x == rows[i].x && rows[i - 1].scheme < rows[i].scheme)));
    }
    for (const auto& r : rows) CHECK(nlohmann::json::parse(r.params_json).is_object());

    std::istringstream is(text);
    const auto back = sweep::read_csv(is);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].x == rows[i].x);
        CHECK(back[i].y == rows[i].y);
        CHECK(back[i].scheme == rows[i].scheme);
        CHECK(back[i].params_json == rows[i].params_json);
        CHECK(back[i].boundary == rows[i].boundary);
    }
}

TEST_CASE("thread count does not change the rows") {
    auto job = small_job();
    job.schemes.push_back("ts_bspdf");
    std::ostringstream a, b;
    sweep::write_csv(a, sweep::run(job, 1));
    sweep::write_csv(b, sweep::run(job, 4));
    CHECK(a.str() == b.str());
}

TEST_CASE("figure presets") {
    const auto fig3 = sweep::figure_job("fig3", 7);
    CHECK(fig3.family == "sym2");
    CHECK(fig3.points == 81);
    CHECK(fig3.schemes.size() == 6);
    CHECK(sweep::figure_job("fig6", 7).schemes.size() == 9);
    CHECK(sweep::figure_job("fig8", 7).family == "energy");
    CHECK_THROWS_AS(sweep::figure_job("fig9", 7), DomainError);
}

TEST_CASE("job validation") {
    auto job = small_job();
    job.points = 0;
    CHECK_THROWS_AS(job.validate(), DomainError);
    job = small_job();
    job.schemes = {"tspdf"};
    job.family = "asym2";
    CHECK_THROWS_AS(job.validate(), DomainError);
    job = small_job();
    job.x_min = -1.0;
    CHECK_THROWS_AS(job.validate(), DomainError);
}

TEST_CASE("N-relay and energy sweeps") {
    sweep::SweepJob job;
    job.family = "symN";
    job.schemes = {"cutset_n4", "baf_n4", "bspdf_n4", "cutset_n2", "bspdf_n2"};
    job.points = 5;
    const auto rows = sweep::run(job, 2);
    CHECK(rows.size() == 25);
    CHECK(sweep::verify(rows).empty());

    sweep::SweepJob e;
    e.family = "energy";
    e.schemes = {"df", "bspdf"};
    e.points = 5;
    e.x_min = 0.1;
    e.x_max = 0.5;
    for (const auto& r : sweep::run(e, 1)) CHECK(r.y == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("verify subcommand") {
    const auto path = scratch("sweep.csv");
    const Run s = cli("sweep --family sym2 --schemes cutset,df,baf,bspdf --points 7 --log --out \"" + path.string() + "\"");
    REQUIRE(s.code == 0);
    const Run ok = cli("verify \"" + path.string() + "\"");
    CHECK(ok.code == 0);
    CHECK(ok.out.find("ok: 28 rows, 0 violations") != std::string::npos);

    std::ifstream in(path);
    auto rows = sweep::read_csv(in);
    for (auto& r : rows) {
        if (r.scheme == "baf") {
            r.y = 100.0;
            break;
        }
    }
    const auto bad = scratch("bad.csv");
    {
        std::ofstream out(bad, std::ios::binary);
        sweep::write_csv(out, rows);
    }
    const Run fail = cli("verify \"" + bad.string() + "\"");
    CHECK(fail.code == 1);
    CHECK(fail.out.find("violation: x=") != std::string::npos);
    CHECK(cli("verify /nonexistent/file.csv").code == 2);
    std::filesystem::remove_all(path.parent_path());
}

}

#include "daereach/benchmarks.hpp"
#include "daereach/errors.hpp"
#include "daereach/job.hpp"
#include "daereach/model_io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace daereach;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / ("daereach_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

void write_file(const fs::path& p, const std::string& text)
{
    std::ofstream(p, std::ios::binary) << text;
}

std::size_t count_lines(const fs::path& p)
{
    std::ifstream in(p);
    std::size_t n = 0;
    std::string line;
    while (std::getline(in, line)) ++n;
    return n;
}

nlohmann::json read_json(const fs::path& p)
{
    std::ifstream in(p);
    return nlohmann::json::parse(in);
}

const char* kSmallModel = R"({
  "n": 3,
  "m": 1,
  "E": {"sparse": [[0, 0, 1.0], [1, 1, 1.0]]},
  "A": [[-1, 0, 0], [0, -2, 1], [1, 1, -1]],
  "B": [[1], [0], [0]],
  "A_u": [[0]]
})";

}  // namespace

TEST_SUITE("model_io")
{
    TEST_CASE("builtin aliases")
    {
        const Benchmark rm = load_model("builtin:rotating-masses");
        CHECK(rm.system.n() == 4);
        CHECK(rm.system.m() == 2);
        const Benchmark st = load_model("builtin:stokes:3");
        CHECK(st.system.n() == 20);
        CHECK(st.system.m() == 1);
        CHECK(st.inputs.has_inputs());
        CHECK_THROWS_AS(load_model("builtin:stokes:x"), ParseError);
        CHECK_THROWS_AS(load_model("builtin:stokes:1"), ParseError);
        CHECK_THROWS_AS(load_model("builtin:unknown"), ParseError);
        CHECK_THROWS_AS(load_model("/nonexistent/model.json"), ParseError);
    }

    TEST_CASE("dense and sparse parsing")
    {
        const Benchmark b = parse_model(kSmallModel);
        CHECK(b.system.n() == 3);
        CHECK(b.system.E()(0, 0) == 1.0);
        CHECK(b.system.E()(2, 2) == 0.0);
        CHECK(b.system.A()(1, 2) == 1.0);
        CHECK(b.inputs.input_dynamics->rows() == 1);

        const Benchmark noinput = parse_model(R"({"n": 2, "E": [[1, 0], [0, 0]], "A": [[0, 1], [1, 0]]})");
        CHECK(noinput.system.m() == 0);
        CHECK_FALSE(noinput.inputs.has_inputs());

        const Benchmark sci = parse_model(R"({"n": 2, "E": [[1e0, 0], [0, 0]], "A": [[-2.5E-1, 1], [1, 0]]})");
        CHECK(sci.system.A()(0, 0) == -0.25);
    }

    TEST_CASE("parse diagnostics")
    {
        try {
            (void)parse_model("{\n  \"n\": 2,\n  \"E\": [[1, 0], [0, 0]],\n  \"A\": [[1, 0] [0, 1]]\n}", "bad.json");
            FAIL("syntax error accepted");
        } catch (const ParseError& e) {
            CHECK(e.line() == 4);
            CHECK(e.source() == "bad.json");
        }
        try {
            (void)parse_model(R"({"n": 2, "E": [[1, 0, 0], [0, 0, 0]], "A": [[1, 0], [0, 1]]})");
            FAIL("non-square E accepted");
        } catch (const ParseError& e) {
            CHECK(e.field() == "E");
        }
        try {
            (void)parse_model(R"({"n": 2, "E": [[1, 0], [0]], "A": [[1, 0], [0, 1]]})");
            FAIL("ragged E accepted");
        } catch (const ParseError& e) {
            CHECK(e.field() == "E");
        }
        try {
            (void)parse_model(R"({"n": 2, "E": [[1, 0], [0, 0]]})");
            FAIL("missing A accepted");
        } catch (const ParseError& e) {
            CHECK(e.field() == "A");
        }
        CHECK_THROWS_AS(parse_model(R"({"n": 2, "E": {"sparse": [[2, 0, 1]]}, "A": [[1, 0], [0, 1]]})"), ParseError);
        CHECK_THROWS_AS(parse_model(R"({"n": 2, "E": [[1, "x"], [0, 0]], "A": [[1, 0], [0, 1]]})"), ParseError);
        CHECK_THROWS_AS(parse_model(R"({"n": 2, "m": 1, "E": [[1, 0], [0, 0]], "A": [[1, 0], [0, 1]], "B": [[1], [0]], "A_u": [[0, 1]]})"),
                        ParseError);
        CHECK_THROWS_AS(parse_model(R"({"n": -2, "E": [], "A": []})"), ParseError);
        try {
            (void)parse_model(R"({"n": 2, "E": [[1, 0], [0, 1]], "A": [[1, 0], [0, 1]]})");
            FAIL("ODE accepted");
        } catch (const DaeError& e) {
            CHECK(e.kind() == ErrorKind::nonsingular_e);
        }
    }

    TEST_CASE("round trip is bit exact")
    {
        const fs::path dir = scratch_dir("roundtrip");
        std::mt19937_64 rng(31);
        std::normal_distribution<double> g(0.0, 1.0);
        Matrix e = Matrix::Zero(4, 4), a(4, 4), b(4, 2), au(2, 2);
        e.topLeftCorner(2, 2) << g(rng), g(rng), g(rng), g(rng);
        for (Index i = 0; i < 16; ++i) a(i) = g(rng) * 1e-7 + 1.0 / 3.0;
        for (Index i = 0; i < 8; ++i) b(i) = g(rng);
        au << 0.1, 1e300, -5e-324, 0;
        const Benchmark orig{DaeSystem(e, a, b), InputModel::dynamics(au)};
        for (const Benchmark& m : {orig, build_rotating_masses(), load_model("builtin:stokes:4")}) {
            save_model(m, (dir / "m.json").string());
            const Benchmark back = load_model((dir / "m.json").string());
            CHECK(back.system.E() == m.system.E());
            CHECK(back.system.A() == m.system.A());
            CHECK(back.system.B() == m.system.B());
            CHECK(*back.inputs.input_dynamics == *m.inputs.input_dynamics);
            CHECK(serialize_model(back) == serialize_model(m));
        }
    }

    TEST_CASE("initial star formats")
    {
        const Benchmark rm = build_rotating_masses();
        const AutonomousDae sys = to_autonomous(rm.system, rm.inputs);
        const StarSet exact = rotating_masses_initial_star();

        const StarSet full = parse_initial_star(
            R"({"V": [[0,0],[0,0],[0.513,0],[-0.513,0],[-0.616,0.447],[0.308,0.894]],
                "C": [[1,0],[-1,0],[0,1],[0,-1]], "d": [0.2,-0.1,1.2,-1.0]})",
            sys);
        CHECK(full.basis() == rotating_masses_rounded_basis());
        CHECK(full.d() == exact.d());

        const StarSet split = parse_initial_star(
            R"({"V": [[0,0],[0,0],[0.513,0],[-0.513,0]], "U0": [[-0.616,0.447],[0.308,0.894]],
                "lower": [0.1, 1.0], "upper": [0.2, 1.2]})",
            sys);
        CHECK(split.basis() == full.basis());

        const StarSet zero_inputs = parse_initial_star(R"({"V": [[1],[0],[0],[0]], "lower": [0], "upper": [1]})", sys);
        CHECK(zero_inputs.basis().bottomRows(2).isZero(0.0));

        const StarSet centered = parse_initial_star(
            R"({"center": [0,0,0,0,1,2], "generators": [[0],[0],[1],[-1],[0],[0]], "lower": [-1], "upper": [1]})",
            sys);
        CHECK(centered.num_generators() == 2);

        CHECK_THROWS_AS(parse_initial_star(R"({"V": [[1],[0],[0]], "lower": [0], "upper": [1]})", sys), ParseError);
        CHECK_THROWS_AS(parse_initial_star(R"({"V": [[1],[0],[0],[0]], "lower": [1], "upper": [0]})", sys),
                        ParseError);
        CHECK_THROWS_AS(parse_initial_star(R"({"V": [[1],[0],[0],[0]], "C": [[1, 2]], "d": [1]})", sys), ParseError);

        CHECK(load_initial_star("builtin:rotating-masses", sys, 0).basis() == exact.basis());
        const StarSet gen = load_initial_star("builtin:consistent:3", sys, 5);
        CHECK(gen.num_generators() == 3);
        CHECK(gen.basis() == load_initial_star("builtin:consistent:3", sys, 5).basis());
        CHECK_THROWS_AS(load_initial_star("builtin:nope", sys, 0), ParseError);
    }

    TEST_CASE("unsafe specs")
    {
        const UnsafeSpec u = parse_unsafe(R"({"G": [[0, 0, 1, 0]], "f": [-0.9]})");
        CHECK(u.G.cols() == 4);
        CHECK(u.f(0) == -0.9);
        CHECK(u.on_original_state);
        CHECK_FALSE(parse_unsafe(R"({"G": [[1]], "f": [1], "on_original_state": false})").on_original_state);
        CHECK_THROWS_AS(parse_unsafe(R"({"G": [[1, 0]], "f": [1, 2]})"), ParseError);
        CHECK(load_unsafe("builtin:rotating-masses-x4").f(0) == -1.0);
    }
}

TEST_SUITE("cli")
{
    TEST_CASE("double formatting round-trips")
    {
        std::mt19937_64 rng(1);
        std::uniform_int_distribution<std::uint64_t> bits;
        for (int i = 0; i < 2000; ++i) {
            double x;
            const std::uint64_t b = bits(rng);
            std::memcpy(&x, &b, sizeof x);
            if (!std::isfinite(x)) continue;
            const std::string s = format_double(x);
            double back = 0;
            std::from_chars(s.data(), s.data() + s.size(), back);
            CHECK(back == x);
        }
        CHECK(format_double(0.1) == "0.1");
    }

    TEST_CASE("config")
    {
        JobConfig cfg;
        CHECK(cfg.num_steps() == 1000);
        cfg.time_bound = 1.0;
        cfg.time_step = 0.3;
        CHECK(cfg.num_steps() == 3);
        cfg.time_step = 0.0;
        CHECK_THROWS_AS(cfg.num_steps(), DaeError);
        CHECK(parse_job_mode("check-consistency") == JobMode::check_consistency);
        CHECK_THROWS_AS(parse_job_mode("plot"), DaeError);
        CHECK(exit_code_for(ErrorKind::parse) == 2);
        CHECK(exit_code_for(ErrorKind::inconsistent_init) == 3);
        CHECK(exit_code_for(ErrorKind::index_too_high) == 4);
        CHECK(exit_code_for(ErrorKind::irregular_pencil) == 5);
        CHECK(exit_code_for(ErrorKind::numerical_failure) == 6);
    }

    TEST_CASE("index and decouple modes")
    {
        const fs::path dir = scratch_dir("modes");
        JobConfig cfg;
        cfg.output_dir = dir.string();
        cfg.mode = JobMode::index;
        std::ostringstream out, err;
        CHECK(run_job(cfg, out, err) == 0);
        CHECK(out.str() == "index: 2\n");

        cfg.mode = JobMode::decouple;
        CHECK(run_job(cfg, out, err) == 0);
        const nlohmann::json doc = read_json(dir / "decoupling.json");
        CHECK(doc["index"] == 2);
        CHECK(doc["N1"].size() == 6);
        CHECK(doc["gamma"].size() == 12);
    }

    TEST_CASE("verify writes verdict, trace and bounds")
    {
        const fs::path dir = scratch_dir("verify");
        JobConfig cfg;
        cfg.output_dir = dir.string();
        cfg.init_path = "builtin:rotating-masses";
        cfg.unsafe_path = "builtin:rotating-masses-m2";
        cfg.write_reach_csv = true;
        std::ostringstream out, err;
        REQUIRE(run_job(cfg, out, err) == 0);
        nlohmann::json v = read_json(dir / "verdict.json");
        CHECK(v["status"] == "unsafe");
        CHECK(v["first_unsafe_step"].is_number_integer());
        for (const char* key : {"decoupling", "reachable_set_computation", "checking_safety", "consistency"})
            CHECK(v["timings"].contains(key));
        CHECK(count_lines(dir / "trace.csv") == 1002);
        CHECK(count_lines(dir / "bounds.csv") == 1 + 1001 * 4);
        CHECK(count_lines(dir / "reach.csv") == 1 + 1001 * 6 * 2);
        std::ifstream trace(dir / "trace.csv");
        std::string header;
        std::getline(trace, header);
        CHECK(header == "time,x1,x2,x3,x4,u1,u2");

        // Deterministic apart from timings.
        const fs::path dir2 = scratch_dir("verify2");
        cfg.output_dir = dir2.string();
        REQUIRE(run_job(cfg, out, err) == 0);
        nlohmann::json v2 = read_json(dir2 / "verdict.json");
        v.erase("timings");
        v2.erase("timings");
        CHECK(v.dump() == v2.dump());

        cfg.unsafe_path = "builtin:rotating-masses-x4";
        cfg.output_dir = scratch_dir("verify3").string();
        cfg.write_bounds_csv = false;
        REQUIRE(run_job(cfg, out, err) == 0);
        CHECK(read_json(fs::path(cfg.output_dir) / "verdict.json")["status"] == "safe");
        CHECK(read_json(fs::path(cfg.output_dir) / "verdict.json")["first_unsafe_step"].is_null());
        CHECK_FALSE(fs::exists(fs::path(cfg.output_dir) / "trace.csv"));
    }

    TEST_CASE("error exit codes")
    {
        const fs::path dir = scratch_dir("errors");
        std::ostringstream out, err;
        JobConfig cfg;
        cfg.output_dir = dir.string();

        write_file(dir / "nonsquare.json", R"({"n": 2, "E": [[1, 0, 0], [0, 0, 0]], "A": [[1, 0], [0, 1]]})");
        cfg.model_path = (dir / "nonsquare.json").string();
        cfg.mode = JobMode::index;
        CHECK(run_job(cfg, out, err) == exit_code::parse);
        CHECK(read_json(dir / "error.json")["error"] == "parse");

        write_file(dir / "ode.json", R"({"n": 2, "E": [[1, 0], [0, 1]], "A": [[1, 0], [0, 1]]})");
        cfg.model_path = (dir / "ode.json").string();
        CHECK(run_job(cfg, out, err) == exit_code::nonsingular_e);

        write_file(dir / "irregular.json", R"({"n": 2, "E": [[1, 0], [0, 0]], "A": [[1, 0], [0, 0]]})");
        cfg.model_path = (dir / "irregular.json").string();
        CHECK(run_job(cfg, out, err) == exit_code::irregular);

        write_file(dir / "index4.json",
                   R"({"n": 5, "E": [[1,0,0,0,0],[0,0,1,0,0],[0,0,0,1,0],[0,0,0,0,1],[0,0,0,0,0]],
                       "A": [[-1,0,0,0,0],[0,1,0,0,0],[0,0,1,0,0],[0,0,0,1,0],[0,0,0,0,1]]})");
        cfg.model_path = (dir / "index4.json").string();
        CHECK(run_job(cfg, out, err) == exit_code::index_too_high);
        CHECK(read_json(dir / "error.json")["error"] == "index-too-high");

        cfg.model_path = "builtin:rotating-masses";
        cfg.mode = JobMode::check_consistency;
        write_file(dir / "perturbed.json",
                   R"({"V": [[0,0],[0,0],[1.513,0],[-0.513,0],[-0.616,0.447],[0.308,0.894]],
                       "C": [[1,0],[-1,0],[0,1],[0,-1]], "d": [0.2,-0.1,1.2,-1.0]})");
        cfg.init_path = (dir / "perturbed.json").string();
        CHECK(run_job(cfg, out, err) == exit_code::inconsistent_init);
        CHECK(read_json(dir / "error.json")["error"] == "inconsistent-init");
        cfg.mode = JobMode::verify;
        cfg.unsafe_path = "builtin:rotating-masses-m2";
        CHECK(run_job(cfg, out, err) == exit_code::inconsistent_init);

        cfg.init_path = "builtin:rotating-masses";
        cfg.unsafe_path.reset();
        CHECK(run_job(cfg, out, err) == exit_code::parse);
    }
}

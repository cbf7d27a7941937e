#include "daereach/job.hpp"

#include "daereach/consistency.hpp"
#include "daereach/decoupling.hpp"
#include "daereach/errors.hpp"
#include "daereach/model_io.hpp"
#include "daereach/safety.hpp"

#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace daereach {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json matrix_json(const Matrix& m)
{
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_json(const Vector& v)
{
    json out = json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

std::ofstream open_output(const JobConfig& cfg, const std::string& name)
{
    std::ofstream out(fs::path(cfg.output_dir) / name, std::ios::binary);
    if (!out) throw DaeError(ErrorKind::invalid_argument, "cannot write " + (fs::path(cfg.output_dir) / name).string());
    return out;
}

void write_json(const JobConfig& cfg, const std::string& name, const json& doc)
{
    open_output(cfg, name) << doc.dump(2) << "\n";
}

std::string state_header(Index n, Index m)
{
    std::string h;
    for (Index i = 1; i <= n; ++i) h += ",x" + std::to_string(i);
    for (Index i = 1; i <= m; ++i) h += ",u" + std::to_string(i);
    return h;
}

double step_time(const ReachSettings& s, int j) { return s.time_step * j; }

void write_trace(const JobConfig& cfg, const ReachResult& reach, const std::vector<Vector>& trace)
{
    std::ofstream out = open_output(cfg, "trace.csv");
    out << "time" << state_header(reach.n_orig, reach.m_orig) << "\n";
    for (std::size_t j = 0; j < trace.size(); ++j) {
        out << format_double(step_time(reach.settings, static_cast<int>(j)));
        for (Index i = 0; i < trace[j].size(); ++i) out << ',' << format_double(trace[j](i));
        out << "\n";
    }
}

void write_reach_csv(const JobConfig& cfg, const ReachResult& reach)
{
    std::ofstream out = open_output(cfg, "reach.csv");
    out << "step,time,row,column,value\n";
    for (std::size_t j = 0; j < reach.stars.size(); ++j) {
        const Matrix& v = reach.stars[j].basis();
        const std::string prefix =
            std::to_string(j) + "," + format_double(step_time(reach.settings, static_cast<int>(j))) + ",";
        for (Index r = 0; r < v.rows(); ++r) {
            for (Index c = 0; c < v.cols(); ++c) {
                out << prefix << r << ',' << c << ',' << format_double(v(r, c)) << "\n";
            }
        }
    }
}

void write_bounds_csv(const JobConfig& cfg, const ReachResult& reach)
{
    Matrix directions = cfg.directions_path ? load_directions(*cfg.directions_path)
                                            : Matrix(Matrix::Identity(reach.n_orig, reach.n_orig));
    const DirectionBounds b = direction_bounds(reach, directions, cfg.tol);
    std::ofstream out = open_output(cfg, "bounds.csv");
    out << "step,time,direction,lower,upper\n";
    for (std::size_t j = 0; j < b.lower.size(); ++j) {
        for (Index r = 0; r < b.lower[j].size(); ++r) {
            out << j << ',' << format_double(step_time(reach.settings, static_cast<int>(j))) << ',' << r << ','
                << format_double(b.lower[j](r)) << ',' << format_double(b.upper[j](r)) << "\n";
        }
    }
}

json decoupling_json(const DecoupledSystem& dec)
{
    json doc;
    doc["index"] = dec.mu;
    json q = json::array();
    for (const Matrix& m : dec.chain.Q) q.push_back(matrix_json(m));
    doc["Q"] = std::move(q);
    for (const auto& [i, m] : dec.N) doc["N" + std::to_string(i)] = matrix_json(m);
    for (const auto& [i, m] : dec.M) doc["M" + std::to_string(i)] = matrix_json(m);
    if (dec.L3) doc["L3"] = matrix_json(*dec.L3);
    if (dec.L4) doc["L4"] = matrix_json(*dec.L4);
    if (dec.Z4) doc["Z4"] = matrix_json(*dec.Z4);
    json proj;
    for (const auto& [i, m] : dec.subsystem_projectors) proj[std::to_string(i)] = matrix_json(m);
    doc["subsystem_projectors"] = std::move(proj);
    return doc;
}

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

StarSet require_init(const JobConfig& cfg, const AutonomousDae& sys)
{
    if (cfg.init_path.empty()) throw ParseError("<config>", "init", 0, "an initial set is required for this mode");
    return load_initial_star(cfg.init_path, sys, cfg.seed, cfg.tol);
}

int run_modes(const JobConfig& cfg, std::ostream& out)
{
    const Benchmark model = load_model(cfg.model_path);
    const AutonomousDae sys = to_autonomous(model.system, model.inputs);

    if (cfg.mode == JobMode::index) {
        const MatrixChain chain = compute_index_and_chain(sys, cfg.tol);
        out << "index: " << chain.mu << "\n";
        return exit_code::success;
    }
    if (cfg.mode == JobMode::decouple) {
        const DecoupledSystem dec = decouple_system(sys, cfg.tol);
        json doc = decoupling_json(dec);
        doc["gamma"] = matrix_json(build_consistent_matrix(dec));
        doc["psi"] = matrix_json(build_psi(dec));
        write_json(cfg, "decoupling.json", doc);
        out << "index: " << dec.mu << "\n";
        return exit_code::success;
    }

    const StarSet theta0 = require_init(cfg, sys);
    if (theta0.dim() != sys.dim()) {
        throw ParseError(cfg.init_path, "V", 0,
                         "initial basis has " + std::to_string(theta0.dim()) + " rows, system has " +
                             std::to_string(sys.dim()));
    }

    if (cfg.mode == JobMode::check_consistency) {
        const DecoupledSystem dec = decouple_system(sys, cfg.tol);
        const ConsistencyCertificate cert = check_initial_star(build_consistent_matrix(dec), theta0, cfg.tol);
        json doc = {{"consistent", cert.consistent},
                    {"max_residual", cert.max_residual},
                    {"worst_column", cert.worst_column},
                    {"worst_block", cert.worst_block}};
        write_json(cfg, "consistency.json", doc);
        if (!cert.consistent) throw InconsistentInitialSet(cert);
        out << "consistent (max residual " << format_double(cert.max_residual) << ")\n";
        return exit_code::success;
    }

    const ReachResult reach = compute_reach(sys, theta0, cfg.reach_settings(), cfg.tol);
    if (cfg.mode == JobMode::reach || cfg.write_reach_csv) write_reach_csv(cfg, reach);

    json doc;
    doc["index"] = reach.decoupled.mu;
    doc["time_step"] = reach.settings.time_step;
    doc["num_steps"] = reach.settings.num_steps;
    json timings = {{"decoupling", reach.timings.decoupling},
                    {"consistency", reach.timings.consistency},
                    {"reachable_set_computation", reach.timings.reach}};

    if (cfg.mode == JobMode::verify) {
        if (!cfg.unsafe_path) throw ParseError("<config>", "unsafe", 0, "verify mode needs an unsafe set");
        const UnsafeSpec unsafe = load_unsafe(*cfg.unsafe_path);
        const VerificationOutcome outcome = verify(reach, unsafe, cfg.tol);
        timings["checking_safety"] = outcome.seconds;
        const bool is_unsafe = outcome.status == SafetyStatus::unsafe;
        doc["status"] = is_unsafe ? "unsafe" : "safe";
        doc["first_unsafe_step"] = is_unsafe ? json(*outcome.first_unsafe_step) : json(nullptr);
        if (is_unsafe) {
            doc["first_unsafe_time"] = step_time(reach.settings, *outcome.first_unsafe_step);
            doc["alpha_feasible"] = vector_json(*outcome.alpha_feasible);
            write_trace(cfg, reach, *outcome.unsafe_trace);
        }
        out << "verdict: " << (is_unsafe ? "unsafe" : "safe");
        if (is_unsafe) out << " (first unsafe step " << *outcome.first_unsafe_step << ")";
        out << "\n";
    } else {
        out << "reach: " << reach.stars.size() << " stars\n";
    }
    doc["timings"] = std::move(timings);
    if (cfg.write_bounds_csv) write_bounds_csv(cfg, reach);
    write_json(cfg, cfg.mode == JobMode::verify ? "verdict.json" : "reach.json", doc);
    return exit_code::success;
}

}  // namespace

JobMode parse_job_mode(const std::string& text)
{
    if (text == "index") return JobMode::index;
    if (text == "decouple") return JobMode::decouple;
    if (text == "check-consistency") return JobMode::check_consistency;
    if (text == "reach") return JobMode::reach;
    if (text == "verify") return JobMode::verify;
    throw DaeError(ErrorKind::invalid_argument, "unknown mode '" + text + "'");
}

std::string_view job_mode_name(JobMode mode)
{
    switch (mode) {
    case JobMode::index: return "index";
    case JobMode::decouple: return "decouple";
    case JobMode::check_consistency: return "check-consistency";
    case JobMode::reach: return "reach";
    case JobMode::verify: return "verify";
    }
    return "?";
}

int JobConfig::num_steps() const
{
    if (!(time_step > 0.0) || !std::isfinite(time_step) || !(time_bound > 0.0) || !std::isfinite(time_bound)) {
        throw DaeError(ErrorKind::invalid_argument, "time step and time bound must be positive");
    }
    const double steps = std::round(time_bound / time_step);
    if (steps < 1.0 || steps > 1e8) throw DaeError(ErrorKind::invalid_argument, "T / h out of range");
    return static_cast<int>(steps);
}

ReachSettings JobConfig::reach_settings() const
{
    ReachSettings s;
    s.time_step = time_step;
    s.num_steps = num_steps();
    s.mode = propagation;
    s.abs_tol = abs_tol;
    s.rel_tol = rel_tol;
    s.validate();
    return s;
}

int exit_code_for(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::parse:
    case ErrorKind::dimension_mismatch:
    case ErrorKind::empty_predicate:
    case ErrorKind::unbounded_predicate: return exit_code::parse;
    case ErrorKind::inconsistent_init: return exit_code::inconsistent_init;
    case ErrorKind::index_too_high: return exit_code::index_too_high;
    case ErrorKind::irregular_pencil: return exit_code::irregular;
    case ErrorKind::numerical_failure:
    case ErrorKind::singular_matrix: return exit_code::numerical_failure;
    case ErrorKind::nonsingular_e: return exit_code::nonsingular_e;
    case ErrorKind::invalid_argument: return exit_code::other;
    }
    return exit_code::other;
}

int run_job(const JobConfig& cfg, std::ostream& out, std::ostream& err)
{
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    try {
        return run_modes(cfg, out);
    } catch (const DaeError& e) {
        const std::string cls(error_class_name(e.kind()));
        err << "error[" << cls << "]: " << e.what() << "\n";
        try {
            json doc = {{"error", cls}, {"message", e.what()}, {"mode", job_mode_name(cfg.mode)}};
            if (const auto* inc = dynamic_cast<const InconsistentInitialSet*>(&e)) {
                doc["max_residual"] = inc->certificate().max_residual;
                doc["worst_column"] = inc->certificate().worst_column;
                doc["worst_block"] = inc->certificate().worst_block;
            }
            write_json(cfg, "error.json", doc);
        } catch (const std::exception&) {
        }
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error[internal]: " << e.what() << "\n";
        return exit_code::other;
    }
}

std::string format_double(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

}  // namespace daereach

#pragma once

#include "daereach/matrix_kernel.hpp"
#include "daereach/reachability.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace daereach {

enum class JobMode { index, decouple, check_consistency, reach, verify };

JobMode parse_job_mode(const std::string& text);
std::string_view job_mode_name(JobMode mode);

struct JobConfig {
    std::string model_path = "builtin:rotating-masses";
    std::string init_path;
    std::optional<std::string> unsafe_path;
    std::optional<std::string> directions_path;
    double time_step = 0.01;
    double time_bound = 10.0;
    JobMode mode = JobMode::verify;
    std::string output_dir = ".";
    PropagationMode propagation = PropagationMode::transition_matrix;
    double abs_tol = 1e-12;
    double rel_tol = 1e-8;
    std::uint64_t seed = 0;
    TolerancePolicy tol;
    bool write_reach_csv = false;
    bool write_bounds_csv = true;

    /// N = round(T / h); throws invalid_argument when N < 1.
    int num_steps() const;
    ReachSettings reach_settings() const;
};

/// Exit codes of run_job.
namespace exit_code {
inline constexpr int success = 0;
inline constexpr int other = 1;
inline constexpr int parse = 2;
inline constexpr int inconsistent_init = 3;
inline constexpr int index_too_high = 4;
inline constexpr int irregular = 5;
inline constexpr int numerical_failure = 6;
inline constexpr int nonsingular_e = 7;
}  // namespace exit_code

int exit_code_for(ErrorKind kind);

/// Runs one job and writes its artifacts under cfg.output_dir. Human-readable
/// progress goes to `out`; failures print "error[<class>]: <message>" to `err`
/// and leave error.json in the output directory.
int run_job(const JobConfig& cfg, std::ostream& out, std::ostream& err);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

}  // namespace daereach

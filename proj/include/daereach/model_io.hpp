#pragma once

#include "daereach/model.hpp"
#include "daereach/safety.hpp"
#include "daereach/starset.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace daereach {

/// JSON model document:
///
///   { "n": 4, "m": 2, "E": ..., "A": ..., "B": ..., "A_u": ... }
///
/// Each matrix is either dense (array of rows) or sparse
/// ({"sparse": [[row, col, value], ...]}, 0-indexed, dimensions from n and m).
/// "m", "B" and "A_u" are optional; without "A_u" the inputs are taken as zero.
Benchmark parse_model(std::string_view text, const std::string& source = "<model>");

/// File path, or one of "builtin:rotating-masses", "builtin:stokes:<k>".
Benchmark load_model(const std::string& path_or_alias);

std::string serialize_model(const Benchmark& model);
void save_model(const Benchmark& model, const std::string& path);

/// Initial star document, over the autonomous state of `sys`:
///
///   { "V": ..., "C": ..., "d": [...] }
///
/// V has n+m rows, or n rows plus a "U0" block (m rows) for the inputs. The
/// predicate may be given as "lower"/"upper" boxes instead of C/d, and a
/// "center" vector may be supplied with "generators" instead of "V".
StarSet parse_initial_star(std::string_view text, const AutonomousDae& sys, const std::string& source = "<init>");

/// File path, or "builtin:rotating-masses", "builtin:rotating-masses-rounded",
/// "builtin:consistent:<k>" (k random columns projected onto the consistent space).
StarSet load_initial_star(const std::string& path_or_alias, const AutonomousDae& sys, std::uint64_t seed,
                          const TolerancePolicy& tol = {});

/// { "G": ..., "f": [...], "on_original_state": true }
UnsafeSpec parse_unsafe(std::string_view text, const std::string& source = "<unsafe>");

/// File path, or "builtin:rotating-masses-m2" / "builtin:rotating-masses-x4".
UnsafeSpec load_unsafe(const std::string& path_or_alias);

/// { "D": ... } direction matrix for bounds export.
Matrix load_directions(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace daereach

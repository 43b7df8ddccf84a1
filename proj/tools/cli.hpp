#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sczech/serialize.hpp"

namespace sczech::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Format { Json, Csv };

struct Tolerances {
  double dual_path = 1e-12;
  double structural = 1e-9;
  double compositional = 1e-7;
  double identity = 1e-6;
};

struct RunConfig {
  std::string command;
  i64 d_K = -7;
  Tolerances tol;
  std::optional<double> X;
  std::vector<double> x_grid;
  std::vector<double> r_values;
  int modes = 3;
  std::size_t bins = 32;
  unsigned jobs = 1;
  std::string out;
  Format format = Format::Json;
  std::string convention = "auto";
  std::optional<std::string> seed;  // SCZECH_SEED, recorded only

  void validate() const;
  /// Everything that determines the numbers; jobs and the output path are omitted.
  json to_json() const;
};

/// "a+b*w" syntax: a, b are optional signed integers, w (or the UTF-8 omega)
/// is the canonical generator.
QuadInt parse_quadint(const std::string& text);
std::string format_quadint(QuadInt z);
/// "x" or "x,y" (real and imaginary part).
cplx parse_complex(const std::string& text);

/// Flattens a JSON document into "path,value" CSV lines.
std::string flatten_csv(const json& j);

/// Runs the command line; returns the process exit code
/// (0 ok, 1 failed verification, 2 usage or domain error).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sczech::cli

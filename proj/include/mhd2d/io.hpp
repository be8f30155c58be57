// File formats: the key=value run config, sweep specs, the binary
// checkpoint and the diagnostics CSV.
//
// Config text: one `key = value` per line, `#` starts a comment, blank lines
// are ignored. Keys and defaults:
//
//   alpha, beta, nu, eta   required
//   n = 256, dt = 2.5e-4, t_end = 1, output_every = 40
//   integrator = ifrk4, seed = 0
//   init = orszag-tang | random-band (orszag-tang), amplitude = 1, band = 8
//
// A sweep spec is a config without alpha and beta plus the lists
// `alphas = a1, a2, ...` and `betas = b1, b2, ...`.

#ifndef MHD2D_IO_HPP_
#define MHD2D_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mhd2d/diagnostics.hpp"

namespace mhd2d {

/// Shortest decimal that reads back to the same double.
std::string format_double(double x);
/// Strict parse of a whole token; throws Error otherwise.
double parse_double(std::string_view token);

/// Throws Error with a "line N:" prefix on malformed lines, unknown or
/// duplicate keys, bad values and missing required keys; the parsed config
/// is validated.
SolverConfig parse_config_text(std::string_view text);
SolverConfig parse_config(const std::filesystem::path& path);
/// Every key, one per line, in a fixed order. parse_config_text inverts it
/// exactly.
std::string emit_config(const SolverConfig& config);

struct SweepPoint {
  SolverConfig config;
  Regime regime;
};

struct SweepSpec {
  std::vector<double> alphas;
  std::vector<double> betas;
  SolverConfig base;

  /// alphas x betas, alpha-major, each tagged by classify_regime.
  std::vector<SweepPoint> points() const;
};

SweepSpec parse_sweep_text(std::string_view text);
SweepSpec parse_sweep(const std::filesystem::path& path);

/// Little-endian: "MHD2", u32 version 1, u32 n, f64 t, alpha, beta, nu, eta,
/// then the n x n coefficients of w and then of j, row-major in wavenumber
/// index order, each as (re, im) f64.
struct Checkpoint {
  double alpha = 0.0;
  double beta = 0.0;
  double nu = 0.0;
  double eta = 0.0;
  MHDState state;
};

void write_checkpoint(const std::filesystem::path& path, const MHDState& state,
                      const SolverConfig& config);
Checkpoint read_checkpoint(const std::filesystem::path& path);

/// The diagnostics.csv header, without newline.
std::string csv_header();
std::string csv_row(const DiagnosticsRecord& r);
/// Parses a file produced from csv_header and csv_row. lgamma_b is not
/// stored and reads back as 0.
std::vector<DiagnosticsRecord> read_csv(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace mhd2d

#endif  // MHD2D_IO_HPP_

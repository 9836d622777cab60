#pragma once

// Batch verification suites over the testbed catalog.

#include "oklab/report.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace oklab::verify {

using okounkov::BodyCache;
using report::Report;
using toric::ToricVariety;

struct RunConfig {
    std::vector<std::string> testbeds;  // empty: every catalog entry
    std::optional<std::string> flag;
    std::int64_t m_max = 3;
    std::int64_t grid_den = 12;
    std::vector<Rat> grid = {Rat(1, 2), Rat(1), Rat(3, 2), Rat(2), Rat(3)};
    std::uint64_t seed = 0;
    std::size_t random_triples = 200;
    /// Flags per testbed in the additivity, slice and replay sweeps (0: all).
    std::size_t max_flags_surface = 0;
    std::size_t max_flags_threefold = 0;
    /// Pairs replayed per flag.
    std::size_t replay_pairs = 2;
    std::int64_t replay_den = 12;
    std::int64_t search_max_coeff = 2;
    std::string format = "json";
    std::string out;
    std::optional<std::filesystem::path> catalog;
};

/// Throws ConfigError on non-positive bounds or unknown format.
void validate(const RunConfig& cfg);
report::json to_json(const RunConfig& cfg);

std::vector<std::string> suite_names();

/// Flags used by the sweeps on x: the configured flag, or maximal cones in
/// listed order up to the per-dimension limit.
std::vector<toric::AdmissibleFlag> sweep_flags(const ToricVariety& x, const RunConfig& cfg);
std::vector<additivity::SweepSetup> setups(const ToricVariety& x, const RunConfig& cfg);

Report volume_suite(const ToricVariety& x, const RunConfig& cfg, BodyCache& cache);
Report additivity_suite(const ToricVariety& x, const RunConfig& cfg, BodyCache& cache);
Report slices_suite(const ToricVariety& x, const RunConfig& cfg, BodyCache& cache);
Report replay_suite(const ToricVariety& x, const RunConfig& cfg, BodyCache& cache);
Report prop14_suite(const ToricVariety& x, const RunConfig& cfg, BodyCache& cache);
Report cor13_suite(const ToricVariety& x, const RunConfig& cfg, BodyCache& cache);
Report lemma61_suite(const ToricVariety& x, const RunConfig& cfg, BodyCache& cache);
Report cor15_suite(const ToricVariety& x, const RunConfig& cfg, BodyCache& cache);
/// Independent of the testbeds: random polytope triples and derivative pairs.
Report lx_suite(const RunConfig& cfg);
Report search_report(const ToricVariety& x, const RunConfig& cfg, BodyCache& cache);

/// Runs a named suite on the selected testbeds. InclusionViolation
/// propagates; selector problems raise ConfigError.
Report run_suite(const std::string& suite, const toric::Catalog& catalog, const RunConfig& cfg,
                 BodyCache& cache = okounkov::default_cache());

/// Report skeleton with tool, version and config echo.
Report make_report(const RunConfig& cfg);

/// Resolves testbed selectors against the catalog.
std::vector<const ToricVariety*> select_testbeds(const toric::Catalog& catalog, const RunConfig& cfg);

}  // namespace oklab::verify

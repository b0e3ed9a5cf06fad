#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "core/descriptor.hpp"

namespace lefvar {

struct CheckRecord {
    std::string suite;
    std::string check;
    std::string detail;
    bool pass = false;
};

using RecordSink = std::function<void(const CheckRecord&)>;

/// SplitMix64: the fixed PRNG behind every seeded sample, so identical
/// descriptor + seed give identical reports on any platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [lo, hi].
    long range(long lo, long hi)
    {
        return lo + long(next() % std::uint64_t(hi - lo + 1));
    }

private:
    std::uint64_t state_;
};

Rational random_rational(SplitMix64& rng);
Scalar random_scalar(SplitMix64& rng);
Form<Scalar> random_combination(SplitMix64& rng, const std::vector<Form<Scalar>>& basis);

void run_sl2_suite(const Workspace& ws, std::uint64_t seed, const RecordSink& sink);
void run_hodge_suite(const Workspace& ws, std::uint64_t seed, const RecordSink& sink);
void run_torus_suite(const Workspace& ws, std::uint64_t seed, const RecordSink& sink);
void run_cones_suite(const Workspace& ws, std::uint64_t seed, const RecordSink& sink);

/// Runs the selected suite ("sl2", "hodge", "torus", "cones", "all") and
/// returns the number of failed checks.
int run_suites(const Workspace& ws, const std::string& suite,
               std::optional<std::uint64_t> seed_override, const RecordSink& sink);

std::string record_json_line(const CheckRecord& r);
std::string record_table_header();
std::string record_table_row(const CheckRecord& r);

} // namespace lefvar

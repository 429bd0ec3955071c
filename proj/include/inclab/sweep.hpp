#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "inclab/incidence.hpp"
#include "inclab/rational.hpp"

namespace inclab {

// One parameter grid. Which lists are read depends on the family:
//   elekes      primes x a x c
//   full_plane  primes
//   random      primes x sizes (m = n), or primes x m x n
//   cartesian   primes x a x b x n  (A = {0..a-1}, B = {0..b-1}, n random non-vertical lines)
struct FamilySpec {
  std::string family;
  std::vector<std::uint64_t> primes;
  std::vector<std::uint64_t> a, b, c, m, n, sizes;
};

struct SweepConfig {
  std::vector<FamilySpec> families;
  Rational constant{1};                // reads X << Y as X <= constant * Y
  std::uint64_t seed = 0;
  Engine engine = Engine::automatic;
  bool check_general = true;           // general incidence hypotheses
  bool check_cartesian = true;         // Cartesian-product hypotheses
  bool check_point_plane = true;       // point-plane hypotheses
  std::uint64_t energy_limit = 1u << 22;   // compute E only when |A| n is at most this
  std::uint64_t collinear_limit = 2048;    // compute k only when |A| n is at most this
  std::string csv_output;
  std::string json_output;
};

// {"seed": 1, "constant": "1", "engine": "auto",
//  "checks": ["general_incidence", "cartesian_product", "point_plane"],
//  "families": [{"family": "elekes", "p": [101], "a": [2, 3], "c": [1, 2]}, ...],
//  "output": {"csv": "sweep.csv", "json": "sweep.json"}}
// Throws Error{config_error} naming the bad field.
SweepConfig parse_sweep_config(std::string_view text);

struct SweepRecord {
  std::string family;
  std::string params;  // e.g. "a=2 c=1"
  std::uint64_t p = 0, m = 0, n = 0;
  std::optional<std::uint64_t> a, b;  // distinct x and y coordinates of P
  std::optional<std::uint64_t> I, E, k;
  std::optional<bool> hyp_general, hyp_cartesian, hyp_point_plane;
  std::optional<double> bound_table1, bound_comb, bound_vinh, ratio_main;
  std::optional<bool> within_comb;  // exact test of I against the unconditional bound
  std::string error;                // non-empty when the cell failed
};

// One record per cell in config order. A failing cell yields a record with error set; the
// sweep itself never aborts on cell failures. Deterministic for a fixed config.
std::vector<SweepRecord> run_sweep(const SweepConfig& config);

// Record for a single instance, as a sweep cell would produce it.
SweepRecord measure_instance(const Instance& inst, const std::string& family, const SweepConfig& config);

inline constexpr std::string_view kSweepCsvHeader =
    "family,p,m,n,a,b,I,E,k,hyp_1_2,hyp_1_3,hyp_1_4,bound_table1,bound_comb,bound_vinh,ratio_main";

std::string sweep_csv(const std::vector<SweepRecord>& records);
nlohmann::json sweep_json(const std::vector<SweepRecord>& records);
// Reads the CSV produced by sweep_csv. Throws Error{parse_error}.
std::vector<SweepRecord> parse_sweep_csv(std::string_view text);

// Numeric value of a CSV column for a record; nullopt when the field is empty.
// Throws Error{config_error} for unknown field names.
std::optional<double> record_value(const SweepRecord& r, std::string_view field);

}  // namespace inclab

#pragma once

// Reproducible experiment runs: configuration, random targets and pairs,
// width sweeps, length tables and Dehn lower-bound tables.

#include "omega/bs_dehn.hpp"
#include "omega/combing.hpp"
#include "omega/omega_model.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace omega {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct RunConfig {
  int p = 2;
  double B = 2.0;
  int radius = 3;
  double step = kDefaultStep;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  SceneWindow window{-64.0, 64.0, 8};
  double min_diameter = 0.0;

  /// Throws std::out_of_range for a composite p, B <= 1, step <= 0 or a
  /// negative radius.
  void validate() const;
  std::string canonical() const;
  /// 64-bit FNV-1a of canonical(), in hex.
  std::string hash() const;
};

/// Comment line heading every output file.
std::string provenance_header(const RunConfig& cfg, std::string_view experiment);

Scene build_scene(const OmegaModel& model, const RunConfig& cfg);

/// Uniform doubles from the raw 64-bit stream, so runs agree across
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

 private:
  std::mt19937_64 gen_;
};

/// Point at hyperbolic distance r from c in direction theta.
HPoint plane_offset(HPoint c, double r, double theta);

/// Random point over a tree vertex at model distance <= max_distance from
/// the basepoint, outside every scene horoball.  Throws std::runtime_error
/// after `tries` rejections.
OmegaPoint sample_target(Rng& rng, const HoroballIndex& index, double max_distance, int tries = 10000);

struct PointPair {
  OmegaPoint alpha1, alpha2;
};

/// Pairs at distance 1: half share the tree vertex with plane distance 1,
/// the rest sit over adjacent vertices with plane distance 1/2.
std::vector<PointPair> generate_pairs(Rng& rng, const HoroballIndex& index, std::size_t count,
                                      double max_distance, int tries = 10000);

struct WidthRow {
  std::size_t index = 0;
  WidthReport report;
  bool contained = true;
  std::vector<Interaction> log1, log2;
  bool pass = false;
};

struct WidthSweep {
  std::vector<WidthRow> rows;
  double max_oracle = 0.0;
  double max_measured = 0.0;
  double max_clean = 0.0;  // largest oracle width among clean one-plane pairs
  std::size_t clean_pairs = 0;
  bool pass = false;
};

/// Every sample outside every scene horoball.  Samples are tested with
/// the path's index; every `exact_every`-th sample and all samples next
/// to a logged interaction are retested with OmegaModel::in_horoball.
bool path_in_omega(const CombingPath& path, std::size_t exact_every = 16);

WidthSweep width_sweep(const HoroballIndex& index, const std::vector<PointPair>& pairs, double step,
                       unsigned threads = 0);
void write_width_csv(std::ostream& os, const RunConfig& cfg, const WidthSweep& sweep);

struct LengthRow {
  int n = 0;
  std::size_t samples = 0;
  double max_length = 0.0;  // L(n)
  double log_ratio = 0.0;   // log L(n) - n
  bool contained = true;
};

struct DeepRow {
  int k = 0;
  OmegaPoint target;
  double distance = 0.0;
  double length = 0.0;
  double log_ratio = 0.0;  // log(length / distance)
  double c = 0.0;          // distance - log_ratio
  bool contained = true;
};

struct LengthTable {
  std::vector<LengthRow> rows;
  std::vector<DeepRow> deep;
  double fitted_C = 0.0;  // max over n of L(n) e^{-n}
  double deep_c = 0.0;    // max over k of c
  double deep_slope = 0.0;  // least-squares slope of log_ratio against distance
  std::vector<std::vector<Interaction>> logs;
};

/// Empirical L(n) for n = 0..n_max from `samples` targets per n, and the
/// deep family (x, B p^-k) over the k-th ancestor of the base vertex.
LengthTable length_table(Rng& rng, const HoroballIndex& index, int n_max, std::size_t samples, int k_max,
                         double step);
void write_length_csv(std::ostream& os, const RunConfig& cfg, const LengthTable& table);

struct DehnRow {
  int k = 0;
  std::size_t word_length = 0;
  AreaResult area;
  RewriteCost rewrite;
  Integer expected_exponent = 0;  // n^k
  bool loop_closes = false;
  double loop_length = 0.0;
  double distortion = 0.0;
};

std::vector<DehnRow> dehn_table(int p, double B, int k_max, std::uint64_t budget = 1'000'000);
void write_dehn_csv(std::ostream& os, const RunConfig& cfg, const std::vector<DehnRow>& rows);

nlohmann::json to_json(const OmegaPoint& q);
OmegaPoint omega_point_from_json(const nlohmann::json& j, const BruhatTitsTree& tree);

}  // namespace omega

#pragma once

// The Baumslag-Solitar group BS(1,n) = <a, b | a b a^-1 = b^n>, n = p^2,
// realized on sigma_inf by a -> diag(p, 1/p) and b -> [[1,1],[0,1]].

#include "omega/omega_model.hpp"
#include "omega/psl2.hpp"
#include "omega/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace omega {

/// Letters a, b and their inverses A, B.
enum class BSLetter : std::int8_t { a = 1, A = -1, b = 2, B = -2 };

class BSWord {
 public:
  BSWord() = default;
  explicit BSWord(std::vector<BSLetter> letters) : letters_(std::move(letters)) {}
  /// Accepts a, b, A, B (capitals are inverses); whitespace is ignored.
  static BSWord parse(std::string_view text);

  const std::vector<BSLetter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  BSWord inverse() const;
  BSWord freely_reduced() const;
  BSWord operator+(const BSWord& o) const;
  std::string str() const;
  friend bool operator==(const BSWord&, const BSWord&) = default;

 private:
  std::vector<BSLetter> letters_;
};

/// The element a^-k b^m a^l with k, l >= 0 and n not dividing m when k, l > 0.
struct BSNormalForm {
  int k = 0;
  Integer m = 0;
  int l = 0;
  friend bool operator==(const BSNormalForm&, const BSNormalForm&) = default;
  bool is_identity() const { return k == 0 && m == 0 && l == 0; }
};

/// Throws std::out_of_range unless n >= 2.
BSNormalForm bs_normal_form(const BSWord& w, long n);
/// Right multiplication of a normal form by one letter.
BSNormalForm bs_multiply(BSNormalForm f, BSLetter x, long n);

GroupElement bs_word_matrix(const BSWord& w, int p);
GroupElement bs_normal_form_matrix(const BSNormalForm& f, int p);

/// a b a^-1 b^-n.
BSWord bs_relator(long n);
/// [a^k b a^-k, b] = a^k b a^-k b a^k b^-1 a^-k b^-1, length 4k + 4.
BSWord witness_loop(int k);

struct AreaResult {
  bool exact = false;
  Integer area = 0;         // valid when exact
  Integer lower_bound = 0;  // best certified bound otherwise
  std::uint64_t work = 0;   // dynamic-program cells visited
};

/// Minimal number of relator applications filling the loop w.  Every cell
/// carries two a-edges, so cells form a-corridors pairing the a-letters of
/// w without crossings; a corridor whose short side reads b^j has |j|
/// cells.  Minimizes over all such pairings by dynamic programming.
/// Throws std::domain_error when w is not trivial.
AreaResult area_oracle(const BSWord& w, long n, std::uint64_t budget = 1'000'000);

/// Breadth-first search over freely and cyclically reduced words, each
/// step inserting one cyclic conjugate of the relator or its inverse.
/// Returns the area when it is at most max_depth.
std::optional<int> area_by_search(const BSWord& w, long n, int max_depth, std::size_t max_length = 24,
                                  std::size_t max_states = 2'000'000);

struct RewriteCost {
  Integer exponent = 0;              // final power of b
  Integer relator_applications = 0;  // a b^j a^-1 -> b^{nj} costs |j|
};

/// Rewrites a^k b a^-k to a power of b innermost first.
RewriteCost rewriting_cost(int k, long n);

struct EmbeddedLoop {
  std::vector<OmegaPoint> points;
  double length = 0.0;          // sum of segment lengths
  double closure_error = 0.0;   // distance from last point to first
};

/// Traces w on sigma_inf from (0, B, t0): b steps run along the horocycle
/// (length 1/B), a steps climb two tree edges along sigma_inf (length
/// 1 + 2 log p).  Throws std::domain_error when w is not a loop.
EmbeddedLoop embed_loop_in_sigma(const BSWord& w, const OmegaModel& model, int samples_per_letter = 8);

struct DistortionCheck {
  double constant = 0.0;  // 2 log p
  double measured = 0.0;  // plane length of the projected unit tree segment
  double tree_length = 0.0;
};

/// Projects the unit tree segment t0 -> A t0 with frozen plane point and
/// measures the length of its image on sigma_inf.
DistortionCheck projection_distortion_check(int p, double B = 2.0, int samples = 64);

}  // namespace omega

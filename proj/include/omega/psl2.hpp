#pragma once

// Exact arithmetic in PSL_2(Z[1/p]).

#include "omega/hyp_plane.hpp"
#include "omega/padic_tree.hpp"
#include "omega/rational.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace omega {

/// Determinant-one matrix modulo +-I, stored with its first nonzero entry
/// positive.
class GroupElement {
 public:
  GroupElement();  // identity
  GroupElement(Rational a, Rational b, Rational c, Rational d);

  const Rational& a() const { return m_[0]; }
  const Rational& b() const { return m_[1]; }
  const Rational& c() const { return m_[2]; }
  const Rational& d() const { return m_[3]; }
  const RatMatrix& entries() const { return m_; }

  GroupElement operator*(const GroupElement& o) const;
  GroupElement inverse() const;
  bool is_identity() const;
  bool has_entries_in(int p) const;

  Mat2 to_real() const;
  std::string key() const;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  void canonicalize_sign();
  RatMatrix m_;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const;
};

GroupElement multiply(const GroupElement& x, const GroupElement& y);
GroupElement invert(const GroupElement& x);
bool is_identity(const GroupElement& x);

/// Generators of the standard set, in index order.
enum class Generator { S = 0, T = 1, A = 2 };

struct Letter {
  Generator gen;
  int exponent;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A word in S, T, A and their inverses.  Text form uses S,T,A for the
/// generators and s,t,a for their inverses.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  static Word parse(std::string_view text);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Word inverse() const;
  Word freely_reduced() const;
  Word operator+(const Word& o) const;
  std::string str() const;

 private:
  std::vector<Letter> letters_;
};

/// S = [[0,-1],[1,0]], T = [[1,1],[0,1]], A = [[p,0],[0,1/p]].
std::vector<GroupElement> generating_set(int p);
GroupElement generator_matrix(Generator g, int p);

GroupElement word_to_matrix(const Word& w, int p);
bool word_problem(const Word& w, int p);

/// Elements of word length <= radius in BFS order together with their
/// distance from the identity.
struct BallEntry {
  GroupElement element;
  int length;
};
std::vector<BallEntry> group_ball(int p, int radius);

nlohmann::json to_json(const GroupElement& g);
GroupElement group_element_from_json(const nlohmann::json& j);

}  // namespace omega

#include "omega/psl2.hpp"

#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace omega {

GroupElement::GroupElement() : m_{1, 0, 0, 1} {}

GroupElement::GroupElement(Rational a, Rational b, Rational c, Rational d)
    : m_{std::move(a), std::move(b), std::move(c), std::move(d)} {
  if (m_[0] * m_[3] - m_[1] * m_[2] != 1)
    throw std::invalid_argument("GroupElement: determinant must be 1");
  canonicalize_sign();
}

void GroupElement::canonicalize_sign() {
  for (const auto& e : m_) {
    if (e == 0) continue;
    if (e < 0)
      for (auto& x : m_) x = -x;
    return;
  }
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
  GroupElement r;
  r.m_ = {m_[0] * o.m_[0] + m_[1] * o.m_[2], m_[0] * o.m_[1] + m_[1] * o.m_[3],
          m_[2] * o.m_[0] + m_[3] * o.m_[2], m_[2] * o.m_[1] + m_[3] * o.m_[3]};
  r.canonicalize_sign();
  return r;
}

GroupElement GroupElement::inverse() const {
  GroupElement r;
  r.m_ = {m_[3], -m_[1], -m_[2], m_[0]};
  r.canonicalize_sign();
  return r;
}

bool GroupElement::is_identity() const {
  return m_[0] == 1 && m_[1] == 0 && m_[2] == 0 && m_[3] == 1;
}

bool GroupElement::has_entries_in(int p) const {
  for (const auto& e : m_)
    if (!in_localization(e, p)) return false;
  return true;
}

Mat2 GroupElement::to_real() const {
  return {to_double(m_[0]), to_double(m_[1]), to_double(m_[2]), to_double(m_[3])};
}

std::string GroupElement::key() const {
  return to_string(m_[0]) + "," + to_string(m_[1]) + "," + to_string(m_[2]) + "," + to_string(m_[3]);
}

std::size_t GroupElementHash::operator()(const GroupElement& g) const {
  return std::hash<std::string>{}(g.key());
}

GroupElement multiply(const GroupElement& x, const GroupElement& y) { return x * y; }
GroupElement invert(const GroupElement& x) { return x.inverse(); }
bool is_identity(const GroupElement& x) { return x.is_identity(); }

Word Word::parse(std::string_view text) {
  std::vector<Letter> letters;
  for (char ch : text) {
    switch (ch) {
      case 'S': letters.push_back({Generator::S, 1}); break;
      case 's': letters.push_back({Generator::S, -1}); break;
      case 'T': letters.push_back({Generator::T, 1}); break;
      case 't': letters.push_back({Generator::T, -1}); break;
      case 'A': letters.push_back({Generator::A, 1}); break;
      case 'a': letters.push_back({Generator::A, -1}); break;
      case ' ': break;
      default: throw std::invalid_argument(std::string("unknown generator letter '") + ch + "'");
    }
  }
  return Word(std::move(letters));
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) l.exponent = -l.exponent;
  return Word(std::move(out));
}

Word Word::freely_reduced() const {
  std::vector<Letter> out;
  for (const auto& l : letters_) {
    if (!out.empty() && out.back().gen == l.gen && out.back().exponent == -l.exponent)
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word(std::move(out));
}

Word Word::operator+(const Word& o) const {
  std::vector<Letter> out = letters_;
  out.insert(out.end(), o.letters_.begin(), o.letters_.end());
  return Word(std::move(out));
}

std::string Word::str() const {
  static constexpr char kUpper[] = {'S', 'T', 'A'};
  static constexpr char kLower[] = {'s', 't', 'a'};
  std::string s;
  for (const auto& l : letters_) {
    auto i = static_cast<std::size_t>(l.gen);
    s.push_back(l.exponent > 0 ? kUpper[i] : kLower[i]);
  }
  return s;
}

GroupElement generator_matrix(Generator g, int p) {
  switch (g) {
    case Generator::S: return GroupElement(0, -1, 1, 0);
    case Generator::T: return GroupElement(1, 1, 0, 1);
    case Generator::A: return GroupElement(p, 0, 0, Rational(1, p));
  }
  throw std::logic_error("unreachable");
}

std::vector<GroupElement> generating_set(int p) {
  if (!is_prime(p)) throw std::invalid_argument("generating_set: p must be prime");
  return {generator_matrix(Generator::S, p), generator_matrix(Generator::T, p),
          generator_matrix(Generator::A, p)};
}

GroupElement word_to_matrix(const Word& w, int p) {
  auto gens = generating_set(p);
  std::vector<GroupElement> invs;
  for (auto& g : gens) invs.push_back(g.inverse());
  GroupElement m;
  for (const auto& l : w.letters()) {
    auto i = static_cast<std::size_t>(l.gen);
    m = m * (l.exponent > 0 ? gens[i] : invs[i]);
  }
  return m;
}

bool word_problem(const Word& w, int p) { return word_to_matrix(w, p).is_identity(); }

std::vector<BallEntry> group_ball(int p, int radius) {
  std::vector<GroupElement> steps;
  for (auto& g : generating_set(p)) {
    steps.push_back(g);
    GroupElement inv = g.inverse();
    if (!(inv == g)) steps.push_back(inv);
  }
  std::vector<BallEntry> out{{GroupElement(), 0}};
  std::unordered_set<GroupElement, GroupElementHash> seen{GroupElement()};
  std::size_t frontier_begin = 0;
  for (int r = 1; r <= radius; ++r) {
    std::size_t frontier_end = out.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (const auto& s : steps) {
        GroupElement next = out[i].element * s;
        if (seen.insert(next).second) out.push_back({next, r});
      }
    }
    frontier_begin = frontier_end;
  }
  return out;
}

nlohmann::json to_json(const GroupElement& g) {
  return nlohmann::json::array({to_string(g.a()), to_string(g.b()), to_string(g.c()), to_string(g.d())});
}

GroupElement group_element_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 4) throw std::invalid_argument("matrix JSON must have 4 entries");
  return GroupElement(parse_rational(j[0].get<std::string>()), parse_rational(j[1].get<std::string>()),
                      parse_rational(j[2].get<std::string>()), parse_rational(j[3].get<std::string>()));
}

}  // namespace omega

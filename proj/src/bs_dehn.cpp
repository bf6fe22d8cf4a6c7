#include "omega/bs_dehn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace omega {

namespace {

BSLetter inverse_letter(BSLetter x) { return static_cast<BSLetter>(-static_cast<int>(x)); }

bool is_a(BSLetter x) { return x == BSLetter::a || x == BSLetter::A; }

void check_n(long n) {
  if (n < 2) throw std::out_of_range("BS(1,n) needs n >= 2");
}

}  // namespace

BSWord BSWord::parse(std::string_view text) {
  std::vector<BSLetter> out;
  for (char ch : text) {
    switch (ch) {
      case 'a': out.push_back(BSLetter::a); break;
      case 'A': out.push_back(BSLetter::A); break;
      case 'b': out.push_back(BSLetter::b); break;
      case 'B': out.push_back(BSLetter::B); break;
      case ' ': case '\t': case '\n': break;
      default: throw std::invalid_argument(std::string("unknown BS letter '") + ch + "'");
    }
  }
  return BSWord(std::move(out));
}

BSWord BSWord::inverse() const {
  std::vector<BSLetter> out(letters_.rbegin(), letters_.rend());
  for (BSLetter& x : out) x = inverse_letter(x);
  return BSWord(std::move(out));
}

BSWord BSWord::freely_reduced() const {
  std::vector<BSLetter> out;
  for (BSLetter x : letters_) {
    if (!out.empty() && out.back() == inverse_letter(x)) out.pop_back();
    else out.push_back(x);
  }
  return BSWord(std::move(out));
}

BSWord BSWord::operator+(const BSWord& o) const {
  std::vector<BSLetter> out = letters_;
  out.insert(out.end(), o.letters_.begin(), o.letters_.end());
  return BSWord(std::move(out));
}

std::string BSWord::str() const {
  std::string s;
  for (BSLetter x : letters_) {
    switch (x) {
      case BSLetter::a: s += 'a'; break;
      case BSLetter::A: s += 'A'; break;
      case BSLetter::b: s += 'b'; break;
      case BSLetter::B: s += 'B'; break;
    }
  }
  return s;
}

BSNormalForm bs_multiply(BSNormalForm f, BSLetter x, long n) {
  switch (x) {
    case BSLetter::b: f.m += pow(Integer(n), static_cast<unsigned>(f.l)); break;
    case BSLetter::B: f.m -= pow(Integer(n), static_cast<unsigned>(f.l)); break;
    case BSLetter::a: ++f.l; break;
    case BSLetter::A:
      if (f.l > 0) {
        --f.l;
      } else {
        ++f.k;
        f.m *= n;
      }
      break;
  }
  while (f.k > 0 && f.l > 0 && f.m % n == 0) {
    f.m /= n;
    --f.k;
    --f.l;
  }
  return f;
}

BSNormalForm bs_normal_form(const BSWord& w, long n) {
  check_n(n);
  BSNormalForm f;
  for (BSLetter x : w.letters()) f = bs_multiply(std::move(f), x, n);
  return f;
}

GroupElement bs_word_matrix(const BSWord& w, int p) {
  GroupElement A = generator_matrix(Generator::A, p), T = generator_matrix(Generator::T, p);
  GroupElement Ai = A.inverse(), Ti = T.inverse();
  GroupElement M;
  for (BSLetter x : w.letters()) {
    switch (x) {
      case BSLetter::a: M = M * A; break;
      case BSLetter::A: M = M * Ai; break;
      case BSLetter::b: M = M * T; break;
      case BSLetter::B: M = M * Ti; break;
    }
  }
  return M;
}

GroupElement bs_normal_form_matrix(const BSNormalForm& f, int p) {
  Rational pk = rational_power(p, f.k), pl = rational_power(p, f.l);
  GroupElement ak(1 / pk, 0, 0, pk);  // A^-k
  GroupElement bm(1, Rational(f.m), 0, 1);
  GroupElement al(pl, 0, 0, 1 / pl);
  return ak * bm * al;
}

BSWord bs_relator(long n) {
  check_n(n);
  return BSWord::parse("abA" + std::string(static_cast<std::size_t>(n), 'B'));
}

BSWord witness_loop(int k) {
  if (k < 1) throw std::out_of_range("witness_loop needs k >= 1");
  std::string ak(static_cast<std::size_t>(k), 'a'), Ak(static_cast<std::size_t>(k), 'A');
  return BSWord::parse(ak + "b" + Ak + "b" + ak + "B" + Ak + "B");
}

AreaResult area_oracle(const BSWord& w, long n, std::uint64_t budget) {
  check_n(n);
  if (!bs_normal_form(w, n).is_identity()) throw std::domain_error("area_oracle: word is not trivial");
  const auto& x = w.letters();
  const int N = static_cast<int>(x.size());
  AreaResult res;
  if (N == 0) {
    res.exact = true;
    return res;
  }
  std::uint64_t cells = static_cast<std::uint64_t>(N) * N * N;
  if (cells > budget) {
    res.work = 0;
    return res;
  }
  // power[i][j]: exponent of w[i..j) when it lies in <b>.
  std::vector<std::vector<std::optional<Integer>>> power(N + 1, std::vector<std::optional<Integer>>(N + 1));
  for (int i = 0; i <= N; ++i) {
    BSNormalForm f;
    power[i][i] = Integer(0);
    for (int j = i; j < N; ++j) {
      f = bs_multiply(std::move(f), x[j], n);
      if (f.k == 0 && f.l == 0) power[i][j + 1] = f.m;
    }
  }
  // cost[i][j]: least area filling w[i..j) against its power of b.
  std::vector<std::vector<std::optional<Integer>>> cost(N + 1, std::vector<std::optional<Integer>>(N + 1));
  for (int i = 0; i <= N; ++i) cost[i][i] = Integer(0);
  for (int len = 1; len <= N; ++len) {
    for (int i = 0; i + len <= N; ++i) {
      int j = i + len;
      if (!power[i][j]) continue;
      std::optional<Integer> best;
      if (!is_a(x[i])) {
        best = cost[i + 1][j];
      } else {
        for (int k = i + 1; k < j; ++k) {
          ++res.work;
          if (x[k] != inverse_letter(x[i]) || !power[i + 1][k] || !cost[i + 1][k] || !cost[k + 1][j]) continue;
          Integer inner = abs(*power[i + 1][k]);
          Integer corridor;
          if (x[i] == BSLetter::a) {
            corridor = inner;
          } else {
            if (inner % n != 0) continue;
            corridor = inner / n;
          }
          Integer c = *cost[i + 1][k] + corridor + *cost[k + 1][j];
          if (!best || c < *best) best = c;
        }
      }
      cost[i][j] = best;
    }
  }
  if (!cost[0][N]) throw std::logic_error("area_oracle: no corridor pairing for a trivial word");
  res.exact = true;
  res.area = *cost[0][N];
  res.lower_bound = res.area;
  return res;
}

namespace {

using Letters = std::vector<std::int8_t>;

Letters cyclic_reduce(Letters w) {
  Letters out;
  for (std::int8_t c : w) {
    if (!out.empty() && out.back() == -c) out.pop_back();
    else out.push_back(c);
  }
  std::size_t lo = 0, hi = out.size();
  while (hi - lo >= 2 && out[lo] == -out[hi - 1]) {
    ++lo;
    --hi;
  }
  return Letters(out.begin() + static_cast<long>(lo), out.begin() + static_cast<long>(hi));
}

Letters least_rotation(const Letters& w) {
  Letters best = w;
  for (std::size_t r = 1; r < w.size(); ++r) {
    Letters rot(w.begin() + static_cast<long>(r), w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + static_cast<long>(r));
    if (rot < best) best = rot;
  }
  return best;
}

std::string key_of(const Letters& w) { return std::string(w.begin(), w.end()); }

}  // namespace

std::optional<int> area_by_search(const BSWord& w, long n, int max_depth, std::size_t max_length,
                                  std::size_t max_states) {
  check_n(n);
  Letters start;
  for (BSLetter c : w.letters()) start.push_back(static_cast<std::int8_t>(c));
  start = least_rotation(cyclic_reduce(start));
  if (start.empty()) return 0;

  Letters r{static_cast<std::int8_t>(BSLetter::a), static_cast<std::int8_t>(BSLetter::b),
            static_cast<std::int8_t>(BSLetter::A)};
  for (long i = 0; i < n; ++i) r.push_back(static_cast<std::int8_t>(BSLetter::B));
  std::vector<Letters> relators;
  for (int sign : {1, -1}) {
    Letters base = r;
    if (sign < 0) {
      std::reverse(base.begin(), base.end());
      for (auto& c : base) c = static_cast<std::int8_t>(-c);
    }
    for (std::size_t k = 0; k < base.size(); ++k) {
      Letters rot(base.begin() + static_cast<long>(k), base.end());
      rot.insert(rot.end(), base.begin(), base.begin() + static_cast<long>(k));
      relators.push_back(rot);
    }
  }

  std::unordered_set<std::string> seen{key_of(start)};
  std::vector<Letters> frontier{start};
  for (int depth = 1; depth <= max_depth; ++depth) {
    std::vector<Letters> next;
    for (const Letters& u : frontier) {
      for (std::size_t pos = 0; pos <= u.size(); ++pos) {
        for (const Letters& rel : relators) {
          Letters v(u.begin(), u.begin() + static_cast<long>(pos));
          v.insert(v.end(), rel.begin(), rel.end());
          v.insert(v.end(), u.begin() + static_cast<long>(pos), u.end());
          v = cyclic_reduce(std::move(v));
          if (v.empty()) return depth;
          if (v.size() > max_length) continue;
          v = least_rotation(v);
          if (seen.insert(key_of(v)).second) {
            if (seen.size() > max_states) return std::nullopt;
            next.push_back(std::move(v));
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

RewriteCost rewriting_cost(int k, long n) {
  check_n(n);
  if (k < 0) throw std::out_of_range("rewriting_cost needs k >= 0");
  struct Syllable {
    char gen;
    Integer exp;
  };
  std::vector<Syllable> w{{'a', k}, {'b', 1}, {'a', -k}};
  RewriteCost cost;
  auto tidy = [&] {
    std::vector<Syllable> out;
    for (auto& s : w) {
      if (s.exp == 0) continue;
      if (!out.empty() && out.back().gen == s.gen) {
        out.back().exp += s.exp;
        if (out.back().exp == 0) out.pop_back();
      } else {
        out.push_back(s);
      }
    }
    w = std::move(out);
  };
  tidy();
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i + 2 < w.size(); ++i) {
      if (w[i].gen == 'a' && w[i].exp > 0 && w[i + 1].gen == 'b' && w[i + 2].gen == 'a' && w[i + 2].exp < 0) {
        // a b^j a^-1 -> b^{nj}, one relator per b.
        cost.relator_applications += abs(w[i + 1].exp);
        w[i].exp -= 1;
        w[i + 1].exp *= n;
        w[i + 2].exp += 1;
        tidy();
        changed = true;
        break;
      }
    }
  }
  if (w.size() != 1 || w[0].gen != 'b') throw std::logic_error("rewriting_cost: did not reach a power of b");
  cost.exponent = w[0].exp;
  return cost;
}

EmbeddedLoop embed_loop_in_sigma(const BSWord& w, const OmegaModel& model, int samples_per_letter) {
  int p = model.prime();
  if (!bs_word_matrix(w, p).is_identity()) throw std::domain_error("embed_loop_in_sigma: word is not a loop");
  if (samples_per_letter < 1) throw std::out_of_range("samples_per_letter must be positive");
  const BruhatTitsTree& tree = model.tree();
  double B = model.calibration();
  TreeVertex t0 = tree.base();
  TreeVertex t1 = tree.canonical(1, 0), t2 = tree.canonical(2, 0);
  GroupElement A = generator_matrix(Generator::A, p), T = generator_matrix(Generator::T, p);

  // Reference segments from (0, B, t0): along the horocycle, and up two
  // tree edges while staying on sigma_inf.
  auto horocyclic = [&](double s) { return OmegaPoint{{s, B}, TreePoint::vertex(t0)}; };
  auto climbing = [&](double s) {
    TreePoint t = s < 0.5 ? TreePoint{t0, t1, 2.0 * s} : TreePoint{t1, t2, 2.0 * s - 1.0};
    if (s >= 1.0) t = TreePoint::vertex(t2);
    return OmegaPoint{{0.0, model.sigma_inf_height(t)}, t};
  };

  EmbeddedLoop loop;
  GroupElement M;
  loop.points.push_back(horocyclic(0.0));
  double a_len = 1.0 + 2.0 * std::log(static_cast<double>(p));
  for (BSLetter x : w.letters()) {
    GroupElement base = M;
    bool forward = x == BSLetter::a || x == BSLetter::b;
    GroupElement step = x == BSLetter::a ? A : x == BSLetter::A ? A.inverse() : x == BSLetter::b ? T : T.inverse();
    M = M * step;
    // Inverse letters traverse the reference segment of M backwards.
    const GroupElement& frame = forward ? base : M;
    for (int i = 1; i <= samples_per_letter; ++i) {
      double s = static_cast<double>(i) / samples_per_letter;
      double u = forward ? s : 1.0 - s;
      OmegaPoint ref = is_a(x) ? climbing(u) : horocyclic(u);
      loop.points.push_back(model.eta_act(frame, ref));
    }
    loop.length += is_a(x) ? a_len : 1.0 / B;
  }
  loop.closure_error = model.distance(loop.points.front(), loop.points.back());
  return loop;
}

DistortionCheck projection_distortion_check(int p, double B, int samples) {
  OmegaModel model(p, B);
  const BruhatTitsTree& tree = model.tree();
  TreeVertex t0 = tree.base(), t1 = tree.canonical(1, 0), t2 = tree.canonical(2, 0);
  DistortionCheck out;
  out.constant = 2.0 * std::log(static_cast<double>(p));
  OmegaPoint prev = model.project_pi({{0.0, 1.0}, TreePoint::vertex(t0)});
  for (int i = 1; i <= samples; ++i) {
    double s = static_cast<double>(i) / samples;
    TreePoint t = s < 0.5 ? TreePoint{t0, t1, 2.0 * s} : TreePoint{t1, t2, 2.0 * s - 1.0};
    if (i == samples) t = TreePoint::vertex(t2);
    OmegaPoint q = model.project_pi({{0.0, 1.0}, t});
    out.measured += hyp_distance(prev.plane, q.plane);
    out.tree_length += tree.point_distance(prev.tree, q.tree);
    prev = q;
  }
  return out;
}

}  // namespace omega

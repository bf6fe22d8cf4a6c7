#include "omega/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace omega {

void RunConfig::validate() const {
  if (!is_prime(p)) throw std::out_of_range("p must be prime");
  if (!(B > 1.0) || !std::isfinite(B)) throw std::out_of_range("B must exceed 1");
  if (!(step > 0.0)) throw std::out_of_range("step must be positive");
  if (radius < 0) throw std::out_of_range("radius must be non-negative");
}

std::string RunConfig::canonical() const {
  std::ostringstream os;
  os << std::setprecision(15) << "p=" << p << ";B=" << B << ";radius=" << radius << ";step=" << step
     << ";seed=" << seed << ";window=" << window.x_min << ',' << window.x_max << ',' << window.tree_radius
     << ";min_diameter=" << min_diameter;
  return os.str();
}

std::string RunConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string provenance_header(const RunConfig& cfg, std::string_view experiment) {
  std::ostringstream os;
  os << "# omega " << kToolVersion << " experiment=" << experiment << " config=" << cfg.hash() << ' '
     << cfg.canonical();
  return os.str();
}

Scene build_scene(const OmegaModel& model, const RunConfig& cfg) {
  return model.enumerate_scene(cfg.radius, cfg.window, cfg.min_diameter);
}

HPoint plane_offset(HPoint c, double r, double theta) {
  // Rotate i e^r about i, then carry i to c.
  double ch = std::cos(theta / 2), sh = std::sin(theta / 2);
  HPoint z = mobius_apply(Mat2{ch, sh, -sh, ch}, HPoint{0.0, std::exp(r)});
  double s = std::sqrt(c.y);
  return mobius_apply(Mat2{s, c.x / s, 0.0, 1.0 / s}, z);
}

namespace {

bool outside(const HoroballIndex& index, const OmegaPoint& q) {
  std::vector<int> e = index.exponents(q.tree.as_vertex());
  return index.containing(q.plane, index.heights(e, e, 0.0)) < 0;
}

TreeVertex random_walk(Rng& rng, const BruhatTitsTree& tree, int steps) {
  TreeVertex cur = tree.base();
  std::optional<TreeVertex> prev;
  for (int i = 0; i < steps; ++i) {
    std::vector<TreeVertex> nb = tree.neighbors(cur);
    if (prev) nb.erase(std::remove(nb.begin(), nb.end(), *prev), nb.end());
    prev = cur;
    cur = nb[rng.below(nb.size())];
  }
  return cur;
}

}  // namespace

OmegaPoint sample_target(Rng& rng, const HoroballIndex& index, double max_distance, int tries) {
  const OmegaModel& model = index.model();
  int max_edges = static_cast<int>(std::floor(max_distance / kEdgeLength));
  for (int t = 0; t < tries; ++t) {
    int edges = static_cast<int>(rng.below(static_cast<std::size_t>(max_edges) + 1));
    TreeVertex v = random_walk(rng, model.tree(), edges);
    double r = (max_distance - edges * kEdgeLength) * rng.uniform();
    double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
    OmegaPoint q{plane_offset(model.basepoint().plane, r, theta), TreePoint::vertex(v)};
    if (outside(index, q)) return q;
  }
  throw std::runtime_error("sample_target: no target outside the horoballs after " + std::to_string(tries) +
                           " tries");
}

std::vector<PointPair> generate_pairs(Rng& rng, const HoroballIndex& index, std::size_t count,
                                      double max_distance, int tries) {
  const BruhatTitsTree& tree = index.model().tree();
  std::vector<PointPair> pairs;
  for (std::size_t i = 0; i < count; ++i) {
    bool done = false;
    for (int t = 0; t < tries && !done; ++t) {
      OmegaPoint a1 = sample_target(rng, index, max_distance - 1.0, tries);
      double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
      OmegaPoint a2;
      if (rng.uniform() < 0.5) {
        a2 = {plane_offset(a1.plane, 1.0, theta), a1.tree};
      } else {
        std::vector<TreeVertex> nb = tree.neighbors(a1.tree.as_vertex());
        a2 = {plane_offset(a1.plane, 1.0 - kEdgeLength, theta), TreePoint::vertex(nb[rng.below(nb.size())])};
      }
      if (outside(index, a2)) {
        pairs.push_back({a1, a2});
        done = true;
      }
    }
    if (!done) throw std::runtime_error("generate_pairs: retries exhausted");
  }
  return pairs;
}

bool path_in_omega(const CombingPath& path, std::size_t exact_every) {
  const HoroballIndex& index = path.index();
  const OmegaModel& model = index.model();
  std::unordered_map<std::string, std::vector<int>> cache;
  auto exps = [&](const TreeVertex& v) -> const std::vector<int>& {
    auto [it, fresh] = cache.try_emplace(v.key());
    if (fresh) it->second = index.exponents(v);
    return it->second;
  };
  std::vector<bool> exact(path.samples.size(), false);
  for (std::size_t i = 0; i < path.samples.size(); ++i) {
    if (exact_every > 0 && i % exact_every == 0) exact[i] = true;
    if (path.samples[i].horosphere >= 0) {
      exact[i] = true;
      if (i > 0) exact[i - 1] = true;
      if (i + 1 < path.samples.size()) exact[i + 1] = true;
    }
  }
  if (!path.samples.empty()) exact.back() = true;
  for (std::size_t i = 0; i < path.samples.size(); ++i) {
    const PathSample& s = path.samples[i];
    TreePoint t = path.tree_point(s.tree_s);
    const std::vector<int>& eu = exps(t.from);
    const std::vector<int>& ew = exps(t.to);
    if (index.containing(s.plane, index.heights(eu, ew, t.lambda)) >= 0) return false;
    if (exact[i]) {
      OmegaPoint q{s.plane, t};
      for (const Horosphere& h : index.scene().horospheres)
        if (model.in_horoball(q, h)) return false;
    }
  }
  return true;
}

WidthSweep width_sweep(const HoroballIndex& index, const std::vector<PointPair>& pairs, double step,
                       unsigned threads) {
  WidthSweep sweep;
  sweep.rows.resize(pairs.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, pairs.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < pairs.size();) {
      try {
        CombingPath a = combing_path(index, pairs[i].alpha1, step);
        CombingPath b = combing_path(index, pairs[i].alpha2, step);
        WidthRow& row = sweep.rows[i];
        row.index = i;
        row.report = async_width(a, b);
        row.contained = path_in_omega(a) && path_in_omega(b);
        row.log1 = a.log;
        row.log2 = b.log;
        const WidthReport& r = row.report;
        row.pass = row.contained && r.oracle <= r.bound + r.slack && r.oracle <= r.measured + r.slack &&
                   (!r.one_plane_clean || r.oracle <= 1.0 + r.slack);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  sweep.pass = true;
  for (const WidthRow& row : sweep.rows) {
    sweep.max_oracle = std::max(sweep.max_oracle, row.report.oracle);
    sweep.max_measured = std::max(sweep.max_measured, row.report.measured);
    if (row.report.one_plane_clean) {
      ++sweep.clean_pairs;
      sweep.max_clean = std::max(sweep.max_clean, row.report.oracle);
    }
    sweep.pass = sweep.pass && row.pass;
  }
  return sweep;
}

namespace {

std::string point_cells(const OmegaPoint& q) {
  std::ostringstream os;
  os << std::setprecision(12) << q.plane.x << ',' << q.plane.y << ',' << q.tree.as_vertex().key();
  return os.str();
}

}  // namespace

void write_width_csv(std::ostream& os, const RunConfig& cfg, const WidthSweep& sweep) {
  os << provenance_header(cfg, "width") << '\n';
  os << "pair,x1,y1,t1,x2,y2,t2,measured,oracle,bound,slack,one_plane_clean,windows,fallbacks,contained,pass\n";
  os << std::setprecision(12);
  for (const WidthRow& row : sweep.rows) {
    const WidthReport& r = row.report;
    os << row.index << ',' << point_cells(r.alpha1) << ',' << point_cells(r.alpha2) << ',' << r.measured << ','
       << r.oracle << ',' << r.bound << ',' << r.slack << ',' << r.one_plane_clean << ',' << r.cases.windows << ','
       << r.cases.fallbacks << ',' << row.contained << ',' << row.pass << '\n';
  }
  os << "# max_oracle=" << sweep.max_oracle << " max_measured=" << sweep.max_measured
     << " clean_pairs=" << sweep.clean_pairs << " max_clean=" << sweep.max_clean << " pass=" << sweep.pass << '\n';
}

LengthTable length_table(Rng& rng, const HoroballIndex& index, int n_max, std::size_t samples, int k_max,
                         double step) {
  const OmegaModel& model = index.model();
  LengthTable table;
  double best = 0.0;
  table.rows.push_back({0, 1, 0.0, -std::numeric_limits<double>::infinity(), true});
  for (int n = 1; n <= n_max; ++n) {
    LengthRow row{n, samples, 0.0, 0.0, true};
    for (std::size_t i = 0; i < samples; ++i) {
      CombingPath path = combing_path(index, sample_target(rng, index, n), step);
      best = std::max(best, path.length());
      row.contained = row.contained && path_in_omega(path);
      table.logs.push_back(path.log);
    }
    row.max_length = best;
    row.log_ratio = std::log(best) - n;
    table.fitted_C = std::max(table.fitted_C, std::exp(row.log_ratio));
    table.rows.push_back(row);
  }

  // Deep family: targets on sigma_inf over ancestors of the base vertex.
  const double x0 = (std::sqrt(5.0) - 1.0) / 2.0;
  TreeVertex v = model.tree().base();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int k = 1; k <= k_max; ++k) {
    v = model.tree().parent(v);
    double p = model.prime();
    OmegaPoint q{{x0, model.calibration() * std::pow(p, -k)}, TreePoint::vertex(v)};
    std::vector<int> e = index.exponents(v);
    std::vector<double> h = index.heights(e, e, 0.0);
    int inside = index.containing(q.plane, h);
    if (inside >= 0) q.plane = index.project(static_cast<std::size_t>(inside), q.plane, h[inside]);
    CombingPath path = combing_path(index, q, step);
    DeepRow row;
    row.k = k;
    row.target = q;
    row.distance = model.distance(model.basepoint(), q);
    row.length = path.length();
    row.log_ratio = std::log(row.length / row.distance);
    row.c = row.distance - row.log_ratio;
    row.contained = path_in_omega(path);
    table.logs.push_back(path.log);
    table.deep_c = k == 1 ? row.c : std::max(table.deep_c, row.c);
    sx += row.distance;
    sy += row.log_ratio;
    sxx += row.distance * row.distance;
    sxy += row.distance * row.log_ratio;
    table.deep.push_back(row);
  }
  double m = static_cast<double>(table.deep.size());
  if (m >= 2) table.deep_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return table;
}

void write_length_csv(std::ostream& os, const RunConfig& cfg, const LengthTable& table) {
  os << provenance_header(cfg, "lengths") << '\n';
  os << "kind,n,samples,length,log_ratio,c,contained\n";
  os << std::setprecision(12);
  for (const LengthRow& r : table.rows)
    os << "ball," << r.n << ',' << r.samples << ',' << r.max_length << ',' << r.log_ratio << ",," << r.contained
       << '\n';
  for (const DeepRow& r : table.deep)
    os << "deep," << r.distance << ",1," << r.length << ',' << r.log_ratio << ',' << r.c << ',' << r.contained
       << '\n';
  os << "# fitted_C=" << table.fitted_C << " deep_slope=" << table.deep_slope << " deep_c=" << table.deep_c << '\n';
}

std::vector<DehnRow> dehn_table(int p, double B, int k_max, std::uint64_t budget) {
  OmegaModel model(p, B);
  long n = static_cast<long>(p) * p;
  double L = projection_distortion_check(p, B).measured;
  std::vector<DehnRow> rows;
  for (int k = 1; k <= k_max; ++k) {
    BSWord w = witness_loop(k);
    DehnRow row;
    row.k = k;
    row.word_length = w.size();
    row.area = area_oracle(w, n, budget);
    row.rewrite = rewriting_cost(k, n);
    row.expected_exponent = pow(Integer(n), static_cast<unsigned>(k));
    EmbeddedLoop loop = embed_loop_in_sigma(w, model);
    row.loop_closes = loop.closure_error <= 1e-9;
    row.loop_length = loop.length;
    row.distortion = L;
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_dehn_csv(std::ostream& os, const RunConfig& cfg, const std::vector<DehnRow>& rows) {
  os << provenance_header(cfg, "dehn-lower") << '\n';
  os << "k,word_length,area,area_exact,rewrite_exponent,relator_applications,loop_length,loop_closes,distortion\n";
  os << std::setprecision(15);
  for (const DehnRow& r : rows) {
    os << r.k << ',' << r.word_length << ',' << (r.area.exact ? r.area.area : r.area.lower_bound) << ','
       << r.area.exact << ',' << r.rewrite.exponent << ',' << r.rewrite.relator_applications << ',' << r.loop_length
       << ',' << r.loop_closes << ',' << r.distortion << '\n';
  }
}

nlohmann::json to_json(const OmegaPoint& q) {
  if (!q.tree.is_vertex()) throw std::invalid_argument("only points over tree vertices are serialized");
  return {{"x", q.plane.x}, {"y", q.plane.y}, {"tree", to_json(q.tree.as_vertex())}};
}

OmegaPoint omega_point_from_json(const nlohmann::json& j, const BruhatTitsTree& tree) {
  TreeVertex v = vertex_from_json(j.at("tree"));
  return {HPoint{j.at("x").get<double>(), j.at("y").get<double>()}, TreePoint::vertex(tree.canonical(v.a, v.b))};
}

}  // namespace omega

// omega: experiment driver for the Omega_p model.

#include "omega/bs_dehn.hpp"
#include "omega/combing.hpp"
#include "omega/experiments.hpp"
#include "omega/omega_model.hpp"
#include "omega/psl2.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>

using namespace omega;

namespace {

struct Output {
  std::ofstream file;
  std::ostream* os = &std::cout;

  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
    os = &file;
  }
  std::ostream& operator*() { return *os; }
};

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("'" + path + "': " + e.what());
  }
}

// "x,y,a,b" with b a rational such as 3/4.
OmegaPoint parse_target(const std::string& text, const BruhatTitsTree& tree) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.size() != 4) throw std::invalid_argument("target must be x,y,a,b");
  int a = std::stoi(parts[2]);
  return {HPoint{std::stod(parts[0]), std::stod(parts[1])}, TreePoint::vertex(tree.canonical(a, parse_rational(parts[3])))};
}

struct Common {
  RunConfig cfg;
  std::string scene_file;
  std::string out = "-";

  void add(CLI::App* app, bool with_scene) {
    app->add_option("--p", cfg.p, "prime")->capture_default_str();
    app->add_option("--B", cfg.B, "horosphere calibration, > 1")->capture_default_str();
    app->add_option("--radius", cfg.radius, "word radius of the scene")->capture_default_str();
    app->add_option("--step", cfg.step, "sample spacing")->capture_default_str();
    app->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    app->add_option("--out", out, "output file, - for stdout")->capture_default_str();
    app->add_option("--min-diameter", cfg.min_diameter, "scene filter")->capture_default_str();
    app->add_option("--x-min", cfg.window.x_min, "scene window")->capture_default_str();
    app->add_option("--x-max", cfg.window.x_max, "scene window")->capture_default_str();
    app->add_option("--tree-radius", cfg.window.tree_radius, "scene window, in edges")->capture_default_str();
    if (with_scene) app->add_option("--scene", scene_file, "scene JSON (built from the flags when absent)");
  }

  Scene scene(const OmegaModel& model) {
    if (scene_file.empty()) return build_scene(model, cfg);
    Scene s = scene_from_json(read_json(scene_file));
    if (s.p != cfg.p) throw std::invalid_argument("scene file is for p = " + std::to_string(s.p));
    cfg.radius = s.radius;
    cfg.window = s.window;
    cfg.min_diameter = s.min_diameter;
    return s;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Experiments on the Omega_p model of PSL2(Z[1/p])"};
  app.require_subcommand(1);
  int status = 0;

  Common scene_opts;
  auto* scene_cmd = app.add_subcommand("scene", "write the horosphere scene as JSON");
  scene_opts.add(scene_cmd, false);
  scene_cmd->callback([&] {
    scene_opts.cfg.validate();
    OmegaModel model(scene_opts.cfg.p, scene_opts.cfg.B);
    Output out(scene_opts.out);
    *out << scene_to_json(build_scene(model, scene_opts.cfg)).dump(2) << '\n';
  });

  Common comb_opts;
  std::string target;
  auto* comb_cmd = app.add_subcommand("comb", "write the combing path to a target as CSV");
  comb_opts.add(comb_cmd, true);
  comb_cmd->add_option("--target", target, "x,y,a,b: plane point over tree vertex (a, b)")->required();
  comb_cmd->callback([&] {
    comb_opts.cfg.validate();
    OmegaModel model(comb_opts.cfg.p, comb_opts.cfg.B);
    Scene scene = comb_opts.scene(model);
    HoroballIndex index(model, scene);
    CombingPath path = combing_path(index, parse_target(target, model.tree()), comb_opts.cfg.step);
    bool ok = path_in_omega(path);
    Output out(comb_opts.out);
    *out << provenance_header(comb_opts.cfg, "comb") << '\n';
    for (const Interaction& i : path.log)
      *out << "# interaction base=" << i.base << " leg=" << i.leg << " enter=" << i.enter << " exit=" << i.exit << '\n';
    write_path_csv(*out, path);
    std::cerr << "length " << path.length() << ", " << path.samples.size() << " samples, contained " << ok << '\n';
    if (!ok) status = 1;
  });

  Common width_opts;
  std::string pairs_file;
  std::size_t n_pairs = 200;
  double max_distance = 8.0;
  unsigned threads = 0;
  auto* width_cmd = app.add_subcommand("width", "asynchronous width sweep over unit-distance pairs");
  width_opts.add(width_cmd, true);
  width_cmd->add_option("--pairs", pairs_file, "pairs JSON [{alpha1, alpha2}] (random pairs when absent)");
  width_cmd->add_option("--n-pairs", n_pairs, "number of random pairs")->capture_default_str();
  width_cmd->add_option("--max-distance", max_distance, "pairs stay within this distance")->capture_default_str();
  width_cmd->add_option("--threads", threads, "worker threads, 0 for all cores")->capture_default_str();
  width_cmd->callback([&] {
    width_opts.cfg.validate();
    OmegaModel model(width_opts.cfg.p, width_opts.cfg.B);
    Scene scene = width_opts.scene(model);
    HoroballIndex index(model, scene);
    std::vector<PointPair> pairs;
    if (pairs_file.empty()) {
      Rng rng(width_opts.cfg.seed);
      pairs = generate_pairs(rng, index, n_pairs, max_distance);
    } else {
      for (const auto& j : read_json(pairs_file))
        pairs.push_back({omega_point_from_json(j.at("alpha1"), model.tree()),
                         omega_point_from_json(j.at("alpha2"), model.tree())});
    }
    WidthSweep sweep = width_sweep(index, pairs, width_opts.cfg.step, threads);
    Output out(width_opts.out);
    write_width_csv(*out, width_opts.cfg, sweep);
    std::cerr << "max oracle width " << sweep.max_oracle << " (bound " << width_bound(width_opts.cfg.p) << " + "
              << 2 * width_opts.cfg.step << ")\n";
    if (!sweep.pass) status = 1;
  });

  Common len_opts;
  int n_max = 8, k_max = 10;
  std::size_t samples = 500;
  auto* len_cmd = app.add_subcommand("lengths", "empirical length function L(n) and the deep family");
  len_opts.add(len_cmd, true);
  len_cmd->add_option("--n-max", n_max, "largest n")->capture_default_str();
  len_cmd->add_option("--samples", samples, "targets per n")->capture_default_str();
  len_cmd->add_option("--k-max", k_max, "deep family size")->capture_default_str();
  len_cmd->callback([&] {
    len_opts.cfg.validate();
    OmegaModel model(len_opts.cfg.p, len_opts.cfg.B);
    Scene scene = len_opts.scene(model);
    HoroballIndex index(model, scene);
    Rng rng(len_opts.cfg.seed);
    LengthTable table = length_table(rng, index, n_max, samples, k_max, len_opts.cfg.step);
    Output out(len_opts.out);
    write_length_csv(*out, len_opts.cfg, table);
    bool ok = table.fitted_C <= 10.0 && table.deep_slope > 0.0;
    for (const auto& r : table.rows) ok = ok && r.contained;
    for (const auto& r : table.deep) ok = ok && r.contained;
    if (!ok) status = 1;
  });

  Common dehn_opts;
  int kmax = 8;
  auto* dehn_cmd = app.add_subcommand("dehn-lower", "witness loops, areas and rewriting costs in BS(1,p^2)");
  dehn_opts.add(dehn_cmd, false);
  dehn_cmd->add_option("--kmax", kmax, "largest k")->capture_default_str();
  dehn_cmd->callback([&] {
    dehn_opts.cfg.validate();
    std::vector<DehnRow> rows = dehn_table(dehn_opts.cfg.p, dehn_opts.cfg.B, kmax);
    Output out(dehn_opts.out);
    write_dehn_csv(*out, dehn_opts.cfg, rows);
    for (const DehnRow& r : rows)
      if (r.rewrite.exponent != r.expected_exponent || !r.loop_closes || (r.k <= 2 && !r.area.exact)) status = 1;
  });

  int wp_p = 2;
  std::string word;
  auto* wp_cmd = app.add_subcommand("wordproblem", "decide whether a word in S, T, A is trivial");
  wp_cmd->add_option("--p", wp_p, "prime")->capture_default_str();
  wp_cmd->add_option("--word", word, "letters S T A, lowercase for inverses")->required();
  wp_cmd->callback([&] {
    GroupElement g = word_to_matrix(Word::parse(word), wp_p);
    std::cout << (g.is_identity() ? "trivial" : "nontrivial") << ' ' << to_json(g).dump() << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "omega: " << e.what() << '\n';
    return 2;
  }
  return status;
}

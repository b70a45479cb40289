#include "prefdist/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "prefdist/clustering.hpp"
#include "prefdist/elicitation.hpp"
#include "prefdist/io.hpp"
#include "prefdist/partial_distance.hpp"
#include "prefdist/synth.hpp"

namespace prefdist {

namespace {

constexpr std::uint64_t kSubjectStream = 11;
constexpr std::uint64_t kSampleStream = 12;

struct RunConfig {
  Grid grid{};
  EstimatorConfig estimator{};
  std::string radius_mode = "adaptive";
  std::string start = "center";
  std::optional<std::uint64_t> seed;
  std::string out;
  bool serial = false;

  // distance / matrix
  std::string answers_a, answers_b, answers;
  std::string export_dir;
  // cluster
  std::string matrix_path;
  // sample
  std::string constraints_path;
  std::size_t sample_count = 100;
  // synth
  std::size_t count = 10;
  std::vector<std::string> families{"linear"};
  double noise = 0.0;
  std::string battery;
  std::size_t repeats = 1;
  std::string truth_path;
};

std::uint64_t resolve_seed(RunConfig& cfg, std::ostream& err) {
  if (!cfg.seed) {
    std::random_device rd;
    cfg.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    err << "no --seed given; using generated seed " << *cfg.seed << "\n";
  }
  cfg.estimator.seed = *cfg.seed;
  return *cfg.seed;
}

void finish_estimator(RunConfig& cfg) {
  if (cfg.radius_mode == "adaptive")
    cfg.estimator.radius_mode = RadiusMode::adaptive;
  else if (cfg.radius_mode == "fixed")
    cfg.estimator.radius_mode = RadiusMode::fixed_after_burn_in;
  else
    throw Error(ErrorKind::Parse, "--radius-mode must be adaptive or fixed");
  if (cfg.start == "center")
    cfg.estimator.start_mode = StartMode::chebyshev_center;
  else if (cfg.start == "vertex")
    cfg.estimator.start_mode = StartMode::random_vertex;
  else
    throw Error(ErrorKind::Parse, "--start must be center or vertex");
  cfg.estimator.validate();
}

Execution exec_of(const RunConfig& cfg) { return cfg.serial ? Execution::serial : Execution::parallel; }

std::string seed_header(std::uint64_t seed) { return "# seed=" + std::to_string(seed) + "\n"; }

void print_report(std::ostream& os, const std::string& id, const SubjectReport& r) {
  os << id << ": kept " << r.kept << "/" << r.answers << " CE equalities";
  if (!r.dropped_answers.empty()) {
    os << " (dropped answers:";
    for (std::size_t i : r.dropped_answers) os << ' ' << i;
    os << ")";
  }
  os << ", " << r.equalities << " equalities, " << r.inequalities << " inequalities, d=" << r.dimension
     << ", inradius=" << format_fixed(r.inradius, 6);
  if (r.promoted_equalities) os << ", promoted " << r.promoted_equalities << " implicit equalities";
  if (r.off_grid) os << ", off-grid answers " << r.off_grid;
  if (r.clamped) os << ", clamped answers " << r.clamped;
  os << "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  f << content;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void export_constraints(const RunConfig& cfg, const std::string& id, const ConstraintSystem& system) {
  if (cfg.export_dir.empty()) return;
  std::filesystem::create_directories(cfg.export_dir);
  write_file((std::filesystem::path(cfg.export_dir) / (id + ".json")).string(), write_constraint_json(system));
}

Subject single_subject(const std::string& path) {
  auto subjects = read_answers_csv_file(path);
  if (subjects.size() > 1) throw Error(ErrorKind::Parse, path + " holds more than one subject");
  if (subjects.empty()) return Subject{std::filesystem::path(path).stem().string(), {}};
  return subjects.front();
}

int cmd_distance(RunConfig& cfg, std::ostream& out, std::ostream& err) {
  finish_estimator(cfg);
  const std::uint64_t seed = resolve_seed(cfg, err);
  const OutcomeSpace space(cfg.grid);
  const Subject a = single_subject(cfg.answers_a);
  Subject b = single_subject(cfg.answers_b);
  if (b.id == a.id) b.id += "'";

  const Rng subjects = Rng(seed).substream(kSubjectStream);
  Rng ra = subjects.substream(0), rb = subjects.substream(1);
  const SubjectPolytope pa = build_subject_polytope(a, space, ra);
  const SubjectPolytope pb = build_subject_polytope(b, space, rb);
  print_report(out, a.id, pa.report);
  print_report(out, b.id, pb.report);
  export_constraints(cfg, a.id, pa.system);
  export_constraints(cfg, b.id, pb.system);

  const DistanceEstimate e = estimate_partial_distance(pa.polytope, pb.polytope, cfg.estimator, exec_of(cfg));
  out << "seed: " << seed << "\n";
  out << "distance: " << format_fixed(e.mean, 6) << " ± " << format_fixed(e.std_error, 6) << " (outer "
      << e.outer_samples << ", inner " << e.inner_samples << ")\n";
  return kExitOk;
}

std::string companion_path(const std::string& path, const std::string& suffix) {
  std::filesystem::path p(path);
  const std::string ext = p.has_extension() ? p.extension().string() : ".csv";
  return (p.parent_path() / (p.stem().string() + suffix + ext)).string();
}

int cmd_matrix(RunConfig& cfg, std::ostream& out, std::ostream& err) {
  finish_estimator(cfg);
  const std::uint64_t seed = resolve_seed(cfg, err);
  const OutcomeSpace space(cfg.grid);
  const auto subjects = read_answers_csv_file(cfg.answers);
  if (subjects.size() < 2) throw Error(ErrorKind::TooFewSubjects, "matrix needs at least two subjects");

  std::vector<SubjectPolytope> polys(subjects.size(), SubjectPolytope{base_system(space), {}, {}, {}});
  const Rng subject_root = Rng(seed).substream(kSubjectStream);
  for (std::size_t i = 0; i < subjects.size(); ++i) {
    Rng r = subject_root.substream(i);
    polys[i] = build_subject_polytope(subjects[i], space, r);
    print_report(err, subjects[i].id, polys[i].report);
    export_constraints(cfg, subjects[i].id, polys[i].system);
  }
  std::vector<NamedPolytope> named;
  for (std::size_t i = 0; i < subjects.size(); ++i) named.push_back({subjects[i].id, &polys[i].polytope});

  std::size_t last_pct = 0;
  const auto m = distance_matrix(named, cfg.estimator, exec_of(cfg), [&](std::size_t done, std::size_t total) {
    const std::size_t pct = 100 * done / total;
    if (pct / 10 != last_pct / 10 || done == total) {
      err << "pairs: " << done << "/" << total << "\n";
      last_pct = pct;
    }
  });

  const std::string path = cfg.out.empty() ? "matrix.csv" : cfg.out;
  std::ostringstream means, errors, self;
  means << seed_header(seed);
  errors << seed_header(seed);
  self << seed_header(seed);
  write_matrix_csv(means, m, false);
  write_matrix_csv(errors, m, true);
  write_self_distance_csv(self, m);
  write_file(path, means.str());
  write_file(companion_path(path, "_se"), errors.str());
  write_file(companion_path(path, "_self"), self.str());
  out << "wrote " << path << ", " << companion_path(path, "_se") << ", " << companion_path(path, "_self") << "\n";
  return kExitOk;
}

int cmd_cluster(RunConfig& cfg, std::ostream& out, std::ostream&) {
  std::ifstream in(cfg.matrix_path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + cfg.matrix_path);
  const MatrixCsv csv = read_matrix_csv(in);
  if (csv.ids.size() < 2) throw Error(ErrorKind::TooFewSubjects, "clustering needs at least two subjects");
  const Dendrogram d = average_linkage(csv.ids, csv.values);
  const std::string newick = export_dendrogram(d, DendrogramFormat::newick);
  const std::string json = export_dendrogram(d, DendrogramFormat::json);
  const std::string ascii = export_dendrogram(d, DendrogramFormat::ascii);
  if (!cfg.out.empty()) {
    write_file(cfg.out + ".nwk", newick + "\n");
    write_file(cfg.out + ".json", json);
    write_file(cfg.out + ".txt", ascii);
  }
  out << newick << "\n\n" << ascii << "\n" << json;
  return kExitOk;
}

int cmd_sample(RunConfig& cfg, std::ostream& out, std::ostream& err) {
  finish_estimator(cfg);
  const std::uint64_t seed = resolve_seed(cfg, err);
  ConstraintSystem system = read_constraint_json(read_file(cfg.constraints_path));
  ReducedPolytope poly = reduce(system);
  if (chebyshev_center(poly).degenerate && poly.dimension() > 0) poly = reduce(promote_implicit_equalities(system));
  const WalkTarget target = make_walk_target(poly, cfg.estimator);
  const WalkOptions walk = cfg.estimator.walk_options();

  std::ostringstream os;
  os << seed_header(seed);
  const std::size_t n = poly.utility_dimension();
  for (std::size_t i = 0; i < n; ++i) os << (i ? "," : "") << "u" << i;
  os << "\n";
  const Rng root = Rng(seed).substream(kSampleStream);
  for (std::size_t s = 0; s < cfg.sample_count; ++s) {
    Rng r = root.substream(s);
    const Eigen::VectorXd u = poly.utility(ball_walk_run(poly, target.start, walk, r));
    for (Eigen::Index i = 0; i < u.size(); ++i) os << (i ? "," : "") << format_fixed(u(i), 9);
    os << "\n";
  }
  if (cfg.out.empty())
    out << os.str();
  else
    write_file(cfg.out, os.str());
  return kExitOk;
}

int cmd_synth(RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = resolve_seed(cfg, err);
  SynthOptions o;
  o.count = cfg.count;
  o.families.clear();
  for (const auto& f : cfg.families) o.families.push_back(parse_family(f));
  o.noise = cfg.noise;
  o.seed = seed;
  o.grid = cfg.grid;
  if (!cfg.battery.empty()) o.battery = parse_battery(cfg.battery);
  o.repeats = cfg.repeats;
  const auto subjects = synthesize(o);

  std::ostringstream answers;
  answers << seed_header(seed);
  write_synth_answers_csv(answers, subjects);
  if (cfg.out.empty())
    out << answers.str();
  else
    write_file(cfg.out, answers.str());
  if (!cfg.truth_path.empty()) {
    std::ostringstream truth;
    truth << seed_header(seed);
    write_truth_csv(truth, subjects, cfg.grid);
    write_file(cfg.truth_path, truth.str());
  }
  return kExitOk;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::InvalidFamilyParameter:
    case ErrorKind::OffGrid:
    case ErrorKind::OutOfRange:
      return kExitParse;
    case ErrorKind::InfeasibleBase: return kExitInfeasibleBase;
    case ErrorKind::EmptyPolytope: return kExitEmptyPolytope;
    case ErrorKind::TooFewSubjects: return kExitTooFewSubjects;
    default: return kExitFailure;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Probabilistic distance between partially specified utility functions"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read option defaults from a TOML/INI file");

  app.add_option("--grid-min", cfg.grid.min_value, "Smallest outcome value")->capture_default_str();
  app.add_option("--grid-max", cfg.grid.max_value, "Largest outcome value")->capture_default_str();
  app.add_option("--grid-step", cfg.grid.granularity, "Outcome granularity")->capture_default_str();
  app.add_option("--outer", cfg.estimator.outer_samples, "Utility-function pairs per estimate")->capture_default_str();
  app.add_option("--inner", cfg.estimator.inner_samples, "Prospect pairs per utility pair")->capture_default_str();
  app.add_option("--walk-steps", cfg.estimator.walk_steps, "Ball-walk proposals per draw")->capture_default_str();
  app.add_option("--radius", cfg.estimator.initial_radius, "Initial ball radius")->capture_default_str();
  app.add_option("--radius-mode", cfg.radius_mode, "adaptive | fixed (frozen after burn-in)")->capture_default_str();
  app.add_option("--burn-in", cfg.estimator.burn_in_fraction, "Adaptive fraction of steps in fixed mode")
      ->capture_default_str();
  app.add_option("--start", cfg.start, "Walk start: center | vertex")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Random seed (generated and reported if omitted)");
  app.add_option("--out", cfg.out, "Output path");
  app.add_flag("--serial", cfg.serial, "Disable OpenMP parallelism");

  auto* distance = app.add_subcommand("distance", "Distance between two subjects' CE answer files");
  distance->add_option("answers_a", cfg.answers_a)->required();
  distance->add_option("answers_b", cfg.answers_b)->required();
  distance->add_option("--export-constraints", cfg.export_dir, "Write each subject's constraint JSON here");

  auto* matrix = app.add_subcommand("matrix", "Dissimilarity matrix for every subject in a CE answer file");
  matrix->add_option("answers", cfg.answers)->required();
  matrix->add_option("--export-constraints", cfg.export_dir, "Write each subject's constraint JSON here");

  auto* cluster = app.add_subcommand("cluster", "Average-linkage clustering of a matrix CSV");
  cluster->add_option("matrix", cfg.matrix_path)->required();

  auto* sample = app.add_subcommand("sample", "Dump utility vectors sampled from a constraint JSON file");
  sample->add_option("constraints", cfg.constraints_path)->required();
  sample->add_option("--count", cfg.sample_count, "Number of samples")->capture_default_str();

  auto* synth = app.add_subcommand("synth", "Generate synthetic CE answers");
  synth->add_option("--count", cfg.count, "Number of subjects")->capture_default_str();
  synth->add_option("--family", cfg.families, "linear | power:G[:G2] | exponential:R[:R2]; repeatable")
      ->capture_default_str();
  synth->add_option("--noise", cfg.noise, "CE noise standard deviation")->capture_default_str();
  synth->add_option("--battery", cfg.battery, "Gambles as low/high,...; default: built-in battery");
  synth->add_option("--repeats", cfg.repeats, "Responses per question")->capture_default_str();
  synth->add_option("--truth", cfg.truth_path, "Write ground-truth curves here");

  std::vector<std::string> argv_store{"prefdist"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*distance) return cmd_distance(cfg, out, err);
    if (*matrix) return cmd_matrix(cfg, out, err);
    if (*cluster) return cmd_cluster(cfg, out, err);
    if (*sample) return cmd_sample(cfg, out, err);
    if (*synth) return cmd_synth(cfg, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace prefdist

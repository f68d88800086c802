#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include <CLI11.hpp>

#include "dispersion/bounds.hpp"
#include "dispersion/certificate.hpp"
#include "dispersion/constructions.hpp"
#include "dispersion/engine.hpp"
#include "dispersion/errors.hpp"
#include "dispersion/point_io.hpp"

#ifndef DISPERSION_VERSION
#define DISPERSION_VERSION "unknown"
#endif

namespace dispersion::cli {
namespace {

// Bad flag value detected after CLI11 has accepted the command line.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t parse_uint(const std::string& flag, std::string_view text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw UsageError(flag + ": expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return v;
}

Scalar parse_scalar(const std::string& flag, const std::string& text) {
  try {
    return Scalar::parse(text);
  } catch (const dispersion::ParseError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (out.empty()) out.emplace_back();
  return out;
}

// "a:b", inclusive, a <= b.
std::vector<std::uint64_t> parse_range(const std::string& flag, const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw UsageError(flag + ": expected a range a:b, got '" + text + "'");
  const std::uint64_t a = parse_uint(flag, parts[0]);
  const std::uint64_t b = parse_uint(flag, parts[1]);
  if (a > b) throw UsageError(flag + ": empty range '" + text + "'");
  if (b - a >= 10'000'000) throw UsageError(flag + ": range '" + text + "' is too long");
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = a; v <= b; ++v) out.push_back(v);
  return out;
}

std::vector<Scalar> parse_scalar_list(const std::string& flag, const std::string& text) {
  std::vector<Scalar> out;
  for (const auto& tok : split(text, ',')) out.push_back(parse_scalar(flag, tok));
  return out;
}

std::vector<std::uint64_t> parse_uint_list(const std::string& flag, const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& tok : split(text, ',')) out.push_back(parse_uint(flag, tok));
  return out;
}

PointSet read_points(const std::string& path, std::size_t empty_dim, std::istream& in) {
  if (path == "-") return parse_points(in, empty_dim);
  std::ifstream file(path);
  if (!file) throw UsageError("cannot open point file '" + path + "'");
  return parse_points(file, empty_dim);
}

struct Flags {
  std::string output;
  unsigned threads = 1;
  std::uint64_t budget = kDefaultCandidateBudget;
  std::uint64_t family_budget = kDefaultFamilyBudget;
  std::uint64_t materialize_budget = kDefaultMaterializeBudget;
  std::optional<std::uint64_t> seed;

  // disp / certify
  std::string points = "-";
  std::size_t dim = 2;
  std::string format = "csv";
  std::uint64_t q = 0;

  // construct / experiment
  std::string r;
  std::size_t d = 2;
  std::uint64_t n = 0;
  std::string kind;

  // bounds
  std::optional<std::string> bounds_r;
  std::optional<std::uint64_t> bounds_n;
  std::string d_range;

  // experiments
  std::string r_list = "13/50,3/10,7/20,2/5,9/20,1/2,3/4";
  std::string d_list = "2,3";
  std::string seeds;
  std::uint64_t max_draws = 1'000'000;
};

class Runner {
 public:
  Runner(const std::vector<std::string>& args, std::istream& in, std::ostream& err)
      : args_(args), in_(in), err_(err) {}

  std::string result() const { return body_.str(); }

  void header(const std::vector<std::string>& extra = {}) {
    std::vector<std::string> lines{
        std::string("dispersion ") + DISPERSION_VERSION,
        "command: dispersion " + canonical_command(args_),
        "seed: " + (f.seed ? std::to_string(*f.seed) : f.seeds.empty() ? std::string("none") : f.seeds),
    };
    lines.insert(lines.end(), extra.begin(), extra.end());
    write_comment_header(body_, lines);
  }

  std::uint64_t require_seed() const {
    if (!f.seed) throw UsageError("--seed is required");
    return *f.seed;
  }

  EngineOptions engine_options() const {
    EngineOptions opt;
    opt.budget = f.budget;
    opt.threads = f.threads;
    return opt;
  }

  int disp() {
    const PointSet points = read_points(f.points, f.dim, in_);
    const DispersionResult res = dispersion_exact(points, engine_options());
    if (f.format == "text") {
      body_ << "points: " << points.size() << "\n"
            << "dimension: " << points.dim() << "\n"
            << "dispersion: " << res.value << "\n"
            << "witness: " << res.witness.str() << "\n"
            << "candidates_examined: " << res.stats.candidates_examined << "\n"
            << "pruned: " << res.stats.pruned << "\n";
      return kExitOk;
    }
    header();
    body_ << "n,d,value";
    for (std::size_t j = 1; j <= points.dim(); ++j) body_ << ",l" << j << ",u" << j;
    body_ << ",candidates_examined,pruned\n";
    body_ << points.size() << ',' << points.dim() << ',' << res.value;
    for (const auto& iv : res.witness.intervals()) body_ << ',' << iv.lo() << ',' << iv.hi();
    body_ << ',' << res.stats.candidates_examined << ',' << res.stats.pruned << '\n';
    return kExitOk;
  }

  int construct_diagonal() {
    const DiagonalParams params(parse_scalar("--r", f.r), f.d);
    const PointSet ps = diagonal_set(params);
    header({"construction: diagonal", "r: " + params.r().str(), "d: " + std::to_string(f.d),
            "n: " + std::to_string(ps.size())});
    write_points(body_, ps);
    return kExitOk;
  }

  int construct_random_grid() {
    GridParams p;
    p.q = f.q;
    p.d = f.d;
    p.n = f.n;
    p.seed = require_seed();
    p.budget = f.materialize_budget;
    const PointSet ps = random_grid_set(p);
    header({"construction: random-grid", "q: " + std::to_string(p.q), "d: " + std::to_string(p.d),
            "n: " + std::to_string(p.n)});
    write_points(body_, ps);
    return kExitOk;
  }

  int construct_baseline() {
    const BaselineKind kind = parse_baseline_kind(f.kind);
    const std::uint64_t seed = kind == BaselineKind::UniformRandom ? require_seed() : f.seed.value_or(0);
    const PointSet ps = baseline_set(kind, f.n, f.d, seed);
    header({"construction: baseline " + f.kind, "d: " + std::to_string(f.d), "n: " + std::to_string(f.n)});
    write_points(body_, ps);
    return kExitOk;
  }

  int certify() {
    if (f.q < 2) throw UsageError("--q must be at least 2");
    const PointSet points = read_points(f.points, f.dim, in_);
    CertificateOptions opt;
    opt.family_budget = f.family_budget;
    opt.threads = f.threads;
    const CertificateReport rep = certificate_check(points, f.q, opt);
    if (rep.warning) err_ << "warning: " << *rep.warning << '\n';
    header();
    body_ << "q,d,M,M_eff,family_size,holds,first_violation,patterns_checked\n";
    body_ << rep.q << ',' << rep.d << ',' << rep.M << ',' << rep.M_eff << ',' << rep.family_size << ','
          << (rep.holds ? "true" : "false") << ',' << (rep.first_violation ? '"' + rep.first_violation->str() + '"' : std::string("NA"))
          << ',' << rep.patterns_checked << '\n';
    return kExitOk;
  }

  int bounds() {
    if (f.bounds_r.has_value() == f.bounds_n.has_value()) throw UsageError("exactly one of --r and --n is required");
    const auto ds = parse_range("--d-range", f.d_range);
    const BoundsQuery query =
        f.bounds_r ? BoundsQuery(parse_scalar("--r", *f.bounds_r)) : BoundsQuery(*f.bounds_n);
    const auto rows = bounds_table(query, ds);
    header();
    body_ << bounds_csv_header() << '\n';
    for (const auto& row : rows) body_ << bounds_csv_row(row) << '\n';
    return kExitOk;
  }

  int thm1_sweep() {
    const auto rs = parse_scalar_list("--r-list", f.r_list);
    const auto ds = parse_uint_list("--d-list", f.d_list);
    std::vector<DiagonalParams> runs;
    for (const auto& r : rs) {
      for (auto d : ds) runs.emplace_back(r, d);  // validate everything before the first long run
    }
    header();
    body_ << "r,d,points,thm1_c,dispersion,pass,candidates_examined,pruned\n";
    bool all = true;
    for (const auto& params : runs) {
      const PointSet ps = diagonal_set(params);
      const DispersionResult res = dispersion_exact(ps, engine_options());
      const bool pass = res.value <= params.r() && mpz_class(ps.size()) <= thm1_constant(params.r()).value;
      all = all && pass;
      body_ << params.r() << ',' << params.d() << ',' << ps.size() << ',' << thm1_constant(params.r()).value << ','
            << res.value << ',' << (pass ? "true" : "false") << ',' << res.stats.candidates_examined << ','
            << res.stats.pruned << '\n';
    }
    return all ? kExitOk : kExitFailed;
  }

  std::vector<std::uint64_t> seed_range() const {
    if (f.seeds.empty()) throw UsageError("--seeds a:b is required");
    return parse_range("--seeds", f.seeds);
  }

  int certify_sweep() {
    if (f.q < 2) throw UsageError("--q must be at least 2");
    const auto seeds = seed_range();
    header();
    body_ << "seed,q,d,n_certified\n";
    std::uint64_t lo = UINT64_MAX;
    mpz_class sum = 0;
    for (auto s : seeds) {
      const std::uint64_t n = minimal_certified_n(f.q, f.d, s, f.max_draws, f.family_budget);
      lo = std::min(lo, n);
      sum += static_cast<unsigned long>(n);
      body_ << s << ',' << f.q << ',' << f.d << ',' << n << '\n';
    }
    body_ << "# min: " << lo << '\n'
          << "# mean: " << Scalar(mpq_class(sum, static_cast<unsigned long>(seeds.size()))) << '\n';
    return kExitOk;
  }

  int minimal_n() {
    if (f.q < 2) throw UsageError("--q must be at least 2");
    if (f.d < 2) throw UsageError("--d must be at least 2");
    const auto seeds = seed_range();
    std::uint64_t lo = UINT64_MAX;
    std::uint64_t hi = 0;
    mpz_class sum = 0;
    for (auto s : seeds) {
      const std::uint64_t n = minimal_certified_n(f.q, f.d, s, f.max_draws, f.family_budget);
      lo = std::min(lo, n);
      hi = std::max(hi, n);
      sum += static_cast<unsigned long>(n);
    }
    const mpz_class paper = paper_sample_size(f.q, f.d);
    header();
    body_ << "q,d,seeds,min_n,mean_n,max_n,paper_n\n";
    body_ << f.q << ',' << f.d << ',' << seeds.size() << ',' << lo << ','
          << Scalar(mpq_class(sum, static_cast<unsigned long>(seeds.size()))) << ',' << hi << ',' << paper
          << '\n';
    return kExitOk;
  }

  Flags f;

 private:
  const std::vector<std::string>& args_;
  std::istream& in_;
  std::ostream& err_;
  std::ostringstream body_;
};

}  // namespace

std::string canonical_command(const std::vector<std::string>& args) {
  std::string out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--threads" || a == "--output" || a == "-o") {
      ++i;
      continue;
    }
    if (a.rfind("--threads=", 0) == 0 || a.rfind("--output=", 0) == 0) continue;
    if (!out.empty()) out += ' ';
    out += a;
  }
  return out;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Runner runner(args, in, err);
  Flags& f = runner.f;

  CLI::App app{"Exact dispersion of point sets in the unit cube, constructions and certificates", "dispersion"};
  app.set_version_flag("--version", DISPERSION_VERSION);
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("-o,--output", f.output, "Write the result to this file instead of stdout");
  app.add_option("--threads", f.threads, "Worker threads (does not change any output)")->check(CLI::Range(1U, 1024U));

  auto add_seed = [&](CLI::App* sub, const char* help) { sub->add_option("--seed", f.seed, help); };

  auto* disp = app.add_subcommand("disp", "Exact dispersion of a point file");
  disp->add_option("points", f.points, "Point CSV file, '-' for stdin")->required();
  disp->add_option("--dim", f.dim, "Dimension used when the file has no points")->check(CLI::PositiveNumber);
  disp->add_option("--budget", f.budget, "Maximum number of candidate boxes");
  disp->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "text"}));

  auto* construct = app.add_subcommand("construct", "Generate a point set");
  construct->require_subcommand(1);
  auto* diag = construct->add_subcommand("diagonal", "Diagonal set for a volume r in (1/4,1)");
  diag->add_option("--r", f.r, "Volume as p/q or decimal")->required();
  diag->add_option("--d", f.d, "Dimension")->required();
  auto* grid = construct->add_subcommand("random-grid", "Uniform draws from the grid {1/q..(q-1)/q}^d");
  grid->add_option("--q", f.q, "Grid parameter")->required();
  grid->add_option("--d", f.d, "Dimension")->required();
  grid->add_option("--n", f.n, "Number of points")->required();
  grid->add_option("--budget", f.materialize_budget, "Maximum number of coordinates (n*d)");
  add_seed(grid, "Random seed (required)");
  auto* base = construct->add_subcommand("baseline", "Comparison sets");
  base->add_option("--kind", f.kind, "uniform-random or lattice")->required();
  base->add_option("--n", f.n, "Number of points")->required();
  base->add_option("--d", f.d, "Dimension")->required();
  add_seed(base, "Random seed (required for uniform-random)");

  auto* cert = app.add_subcommand("certify", "Check a point file against the covering family for q");
  cert->add_option("points", f.points, "Point CSV file, '-' for stdin")->required();
  cert->add_option("--q", f.q, "Grid parameter, at least 2")->required();
  cert->add_option("--dim", f.dim, "Dimension used when the file has no points")->check(CLI::PositiveNumber);
  cert->add_option("--family-budget", f.family_budget, "Warn above this many family boxes");

  auto* bnd = app.add_subcommand("bounds", "Closed-form bounds for a range of dimensions");
  auto* opt_r = bnd->add_option("--r", f.bounds_r, "Volume r in (0,1)");
  bnd->add_option("--n", f.bounds_n, "Number of points")->excludes(opt_r);
  bnd->add_option("--d-range", f.d_range, "Dimensions a:b")->required();

  auto* exp = app.add_subcommand("experiment", "Reproducible experiment sweeps");
  exp->require_subcommand(1);
  auto* sweep = exp->add_subcommand("thm1-sweep", "Diagonal sets against their target volume");
  sweep->add_option("--r-list", f.r_list, "Comma-separated volumes")->capture_default_str();
  sweep->add_option("--d-list", f.d_list, "Comma-separated dimensions")->capture_default_str();
  sweep->add_option("--budget", f.budget, "Maximum candidate boxes per instance");
  auto* csweep = exp->add_subcommand("certify-sweep", "Smallest certified random grid sample per seed");
  csweep->add_option("--q", f.q, "Grid parameter")->required();
  csweep->add_option("--d", f.d, "Dimension")->required();
  csweep->add_option("--seeds", f.seeds, "Seeds a:b")->required();
  csweep->add_option("--max-draws", f.max_draws, "Give up after this many points");
  csweep->add_option("--family-budget", f.family_budget, "Maximum covering family size");
  auto* mn = exp->add_subcommand("minimal-n", "Empirical certified sample size against the analytic one");
  mn->add_option("--q", f.q, "Grid parameter")->required();
  mn->add_option("--d", f.d, "Dimension")->required();
  mn->add_option("--seeds", f.seeds, "Seeds a:b")->required();
  mn->add_option("--max-draws", f.max_draws, "Give up after this many points");
  mn->add_option("--family-budget", f.family_budget, "Maximum covering family size");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitUsage;
  }

  int code = kExitOk;
  try {
    if (disp->parsed()) {
      code = runner.disp();
    } else if (diag->parsed()) {
      code = runner.construct_diagonal();
    } else if (grid->parsed()) {
      code = runner.construct_random_grid();
    } else if (base->parsed()) {
      code = runner.construct_baseline();
    } else if (cert->parsed()) {
      code = runner.certify();
    } else if (bnd->parsed()) {
      code = runner.bounds();
    } else if (sweep->parsed()) {
      code = runner.thm1_sweep();
    } else if (csweep->parsed()) {
      code = runner.certify_sweep();
    } else if (mn->parsed()) {
      code = runner.minimal_n();
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const dispersion::ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  }

  if (f.output.empty()) {
    out << runner.result();
  } else {
    std::ofstream file(f.output, std::ios::binary);
    file << runner.result();
    if (!file) {
      err << "error: cannot write '" << f.output << "'\n";
      return kExitUsage;
    }
  }
  return code;
}

}  // namespace dispersion::cli

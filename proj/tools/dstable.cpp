// Command-line front end. Every subcommand writes one fixed-header CSV table
// (or JSON lines with the same field names) and follows the exit-code
// contract 0 = success, 1 = check failed, 2 = usage or domain error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "dstable/citations.hpp"
#include "dstable/convergence.hpp"
#include "dstable/error.hpp"
#include "dstable/stability.hpp"

using namespace dstable;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Output

using Cell = std::variant<std::monostate, double, std::int64_t, std::uint64_t, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

std::string csv_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, double>) {
          if (std::isnan(v)) return "nan";
          if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.17g", v);
          return buf;
        } else if constexpr (std::is_same_v<T, std::string>) {
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string out = "\"";
          for (char ch : v) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
          return out + "\"";
        } else {
          return std::to_string(v);
        }
      },
      c);
}

nlohmann::ordered_json json_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
          return v;
        } else {
          return v;
        }
      },
      c);
}

std::string render(const Table& t, bool json) {
  std::ostringstream os;
  if (json) {
    for (const auto& row : t.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < t.header.size(); ++i) obj[t.header[i]] = json_cell(row[i]);
      os << obj.dump() << '\n';
    }
    return os.str();
  }
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
  return os.str();
}

struct OutputOptions {
  bool json = false;
  std::string out;
  bool serial = false;

  Exec exec() const { return serial ? Exec::serial : Exec::parallel; }
};

void emit(const Table& t, const OutputOptions& o) {
  const std::string text = render(t, o.json);
  if (o.out.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError("cannot open --out file '" + o.out + "'");
  f << text;
}

// ---------------------------------------------------------------------------
// Sweeps: "a..b", "a..b:step", "a..b:*factor", "x,y,z", fractions like "1/3".

double parse_number(const std::string& text) {
  const auto slash = text.find('/');
  std::size_t used = 0;
  try {
    if (slash != std::string::npos) {
      const double num = parse_number(text.substr(0, slash));
      const double den = parse_number(text.substr(slash + 1));
      if (den == 0.0) throw UsageError("zero denominator in '" + text + "'");
      return num / den;
    }
    const double v = std::stod(text, &used);
    if (used != text.size()) throw UsageError("not a number: '" + text + "'");
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("not a number: '" + text + "'");
  }
}

std::vector<double> parse_sweep(const std::string& spec) {
  std::vector<double> out;
  std::stringstream items(spec);
  std::string item;
  while (std::getline(items, item, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_number(item));
      continue;
    }
    const double lo = parse_number(item.substr(0, dots));
    std::string rest = item.substr(dots + 2);
    std::string step_text = "1";
    if (const auto colon = rest.find(':'); colon != std::string::npos) {
      step_text = rest.substr(colon + 1);
      rest = rest.substr(0, colon);
    }
    const double hi = parse_number(rest);
    const bool geometric = !step_text.empty() && step_text[0] == '*';
    const double step = parse_number(geometric ? step_text.substr(1) : step_text);
    if (geometric ? !(step > 1.0 && lo > 0.0) : !(step > 0.0))
      throw UsageError("range '" + item + "' does not advance");
    const double slack = 1e-9 * std::max(1.0, std::abs(hi));
    for (std::size_t i = 0;; ++i) {
      const double v = geometric ? lo * std::pow(step, static_cast<double>(i)) : lo + static_cast<double>(i) * step;
      if (v > hi + slack) break;
      out.push_back(v);
      if (out.size() > 10000000) throw UsageError("range '" + item + "' is too long");
    }
  }
  if (out.empty()) throw UsageError("empty sweep '" + spec + "'");
  return out;
}

std::vector<int> parse_int_sweep(const std::string& spec) {
  std::vector<int> out;
  for (double v : parse_sweep(spec)) {
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9 || r < 1 || r > 1e9) throw UsageError("'" + spec + "' must list positive integers");
    out.push_back(static_cast<int>(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Family parameters shared by several commands.

struct Params {
  std::string family;
  std::string thinning;
  double lambda = 1.0;
  double alpha = 0.5;
  double gamma = 1.0;
  double kappa = 0.0;
  int m = 1;
  double b = 0.0;
  double p = 0.5;
  double q = 0.5;
  double h = 1.0;
};

void add_family_params(CLI::App* cmd, Params& prm) {
  cmd->add_option("--lambda", prm.lambda, "scale lambda")->capture_default_str();
  cmd->add_option("--alpha", prm.alpha, "stability index alpha (svh, tempered)")->capture_default_str();
  cmd->add_option("--gamma", prm.gamma, "exponent gamma (example1, example2) or Gamma shape")->capture_default_str();
  cmd->add_option("--kappa", prm.kappa, "kappa (example1)")->capture_default_str();
  cmd->add_option("--m", prm.m, "lattice span m (example1)")->capture_default_str();
  cmd->add_option("--b", prm.b, "b (example2) or Gamma scale")->capture_default_str();
  cmd->add_option("--p", prm.p, "Sibuya index p (field)")->capture_default_str();
  cmd->add_option("--q", prm.q, "rejection probability q (field)")->capture_default_str();
  cmd->add_option("--h", prm.h, "tempering h (tempered)")->capture_default_str();
}

std::optional<PgfFamily> discrete_family(const Params& prm) {
  if (prm.family == "svh") return SvhStable{prm.lambda, prm.alpha};
  if (prm.family == "example1") return Example1{prm.lambda, prm.gamma, prm.kappa, prm.m};
  if (prm.family == "example2") return Example2{prm.lambda, prm.gamma, prm.b};
  if (prm.family == "field") return FieldCitations{prm.lambda, prm.p, prm.q};
  return std::nullopt;
}

std::optional<LaplaceFamily> laplace_family(const Params& prm) {
  if (prm.family == "gamma") return Gamma{prm.b, prm.gamma};
  if (prm.family == "tempered") return TemperedStable{prm.lambda, prm.alpha, prm.h};
  return std::nullopt;
}

ThinningFamily thinning_family(const std::string& name, const Params& prm) {
  if (name == "bernoulli") return Bernoulli{};
  if (name == "example1") return Example1Thin{prm.kappa, prm.m};
  if (name == "example2") return Example2Thin{prm.b};
  throw UsageError("unknown thinning '" + name + "'");
}

// The family's own normalizer.
ThinningFamily default_thinning(const Params& prm) {
  if (prm.family == "svh") return Bernoulli{};
  if (prm.family == "example1") return Example1Thin{prm.kappa, prm.m};
  if (prm.family == "example2") return Example2Thin{prm.b};
  return Example1Thin{1.0 - prm.q, 1};  // field
}

const std::vector<std::string> kDiscreteFamilies{"svh", "example1", "example2", "field"};
const std::vector<std::string> kLaplaceFamilies{"gamma", "tempered"};

// ---------------------------------------------------------------------------
// check-stability

struct StabilityArgs {
  Params prm;
  std::string n = "2..50";
  std::string pn;  // fixed p for every n; empty means solve for p(n)
  bool casual = false;
  double tol = 1e-10;
};

int run_check_stability(const StabilityArgs& a, const OutputOptions& o) {
  Table t{{"n", "p", "residual", "argmax"}, {}};
  const auto n_list = parse_int_sweep(a.n);
  bool ok = true;
  if (const auto lf = laplace_family(a.prm)) {
    if (!a.pn.empty()) throw UsageError("--pn applies to discrete families only");
    for (int n : n_list) {
      const auto r = casual_stability_residual(*lf, n, default_s_grid(), o.exec());
      ok = ok && r.sup_residual < a.tol;
      t.rows.push_back({std::int64_t{n}, std::monostate{}, r.sup_residual, r.argmax_point});
    }
  } else if (const auto df = discrete_family(a.prm)) {
    if (a.casual) throw UsageError("--casual needs --family gamma or tempered");
    const ThinningFamily thin = a.prm.thinning.empty() ? default_thinning(a.prm) : thinning_family(a.prm.thinning, a.prm);
    for (int n : n_list) {
      double p = 0.0;
      ResidualReport r;
      if (a.pn.empty()) {
        p = solve_pn(*df, thin, n, default_z_grid(), o.exec()).p;
      } else {
        p = parse_number(a.pn);
      }
      r = discrete_stability_residual(*df, thin, n, p, default_z_grid(), o.exec());
      ok = ok && r.sup_residual < a.tol;
      t.rows.push_back({std::int64_t{n}, p, r.sup_residual, r.argmax_point});
    }
  } else {
    throw UsageError("unknown family '" + a.prm.family + "'");
  }
  emit(t, o);
  if (!ok) std::cerr << "check-stability: residual at or above tolerance " << a.tol << '\n';
  return ok ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------
// check-pgf

struct PgfArgs {
  Params prm;
  std::string thinning = "example2";
  std::string p_list = "0.2,1/3,0.5";
  std::string kappa_list;
  std::string b_list;
  int n_max = 200;
  double radius = 0.0;  // 0: pick from the validation ladder
  double tol_neg = 1e-9;
};

int run_check_pgf(const PgfArgs& a, const OutputOptions& o) {
  Table t{{"thinning", "kappa", "m", "b", "p", "min_coefficient", "argmin_k", "certified_bound", "radius",
           "normalization_defect"},
          {}};
  if (a.n_max < 1) throw UsageError("--n-max must be >= 1");
  const auto ps = parse_sweep(a.p_list);
  const auto kappas = a.kappa_list.empty() ? std::vector<double>{a.prm.kappa} : parse_sweep(a.kappa_list);
  const auto bs = a.b_list.empty() ? std::vector<double>{a.prm.b} : parse_sweep(a.b_list);

  std::vector<std::pair<ThinningFamily, Cell>> laws;  // (family, parameter cells)
  if (a.thinning == "bernoulli") {
    laws.push_back({Bernoulli{}, {}});
  } else if (a.thinning == "example1") {
    for (double k : kappas) laws.push_back({Example1Thin{k, a.prm.m}, {}});
  } else if (a.thinning == "example2") {
    for (double b : bs) laws.push_back({Example2Thin{b}, {}});
  } else {
    throw UsageError("unknown thinning '" + a.thinning + "'");
  }
  // Admissibility is checked up front so a bad sweep fails before any output.
  for (const auto& [fam, unused] : laws)
    for (double p : ps) validate(fam, p);

  bool ok = true;
  std::string first_failure;
  for (const auto& [fam, unused] : laws) {
    for (double p : ps) {
      const auto pgf = as_function(fam, p);
      PgfValidation v;
      if (a.radius > 0.0) {
        v.table = extract_pmf(pgf, static_cast<std::size_t>(a.n_max), {a.radius, 0, 1e-6, o.exec()});
        v.min_coefficient = v.table.atoms.front().mass;
        for (const auto& atom : v.table.atoms)
          if (atom.mass < v.min_coefficient) {
            v.min_coefficient = atom.mass;
            v.negativity.argmax_point = static_cast<double>(atom.k);
          }
        v.normalization_defect = std::abs(radial_limit(pgf) - 1.0);
      } else {
        v = validate_pgf(pgf, static_cast<std::size_t>(a.n_max), 1e-6, o.exec());
      }
      const bool pass = v.min_coefficient >= -a.tol_neg;
      if (!pass && ok) first_failure = describe(fam) + " p=" + csv_cell(p);
      ok = ok && pass;
      Cell kappa, m, b;
      std::string name;
      if (const auto* e1 = std::get_if<Example1Thin>(&fam)) {
        name = "example1", kappa = e1->kappa, m = std::int64_t{e1->m};
      } else if (const auto* e2 = std::get_if<Example2Thin>(&fam)) {
        name = "example2", b = e2->b;
      } else {
        name = "bernoulli";
      }
      t.rows.push_back({name, kappa, m, b, p, v.min_coefficient,
                        static_cast<std::int64_t>(v.negativity.argmax_point), v.table.tol_neg, v.table.radius,
                        v.normalization_defect});
    }
  }
  emit(t, o);
  if (!ok) std::cerr << "check-pgf: negative coefficient below -" << a.tol_neg << " at " << first_failure << '\n';
  return ok ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------
// citations

struct CitationArgs {
  double lambda = 100.0;
  double p = 0.5;
  double q = 0.5;
  std::uint64_t seed = 0;
  int replicates = 1;
  bool tv_check = false;
  std::uint64_t tv_samples = 1000000;
  int n_max = 100;
  double tv_threshold = 8e-3;
};

int run_citations(const CitationArgs& a, const OutputOptions& o) {
  const FieldSim base{a.lambda, a.p, a.q, Seed{a.seed, 0}};
  validate(base);
  if (a.tv_check) {
    if (a.n_max < 1) throw UsageError("--n-max must be >= 1");
    const auto totals = sample_field_totals(base, a.tv_samples, o.exec());
    const PmfTable t = extract_pmf(FieldCitations{a.lambda, a.p, a.q}, static_cast<std::size_t>(a.n_max),
                                   {.radius = 0.9, .tolerance = 1e-6, .exec = o.exec()});
    std::vector<double> freq(t.atoms.size(), 0.0);
    for (auto x : totals.values)
      if (x < freq.size()) freq[x] += 1.0;
    double tv = 0.0;
    for (std::size_t k = 0; k < freq.size(); ++k)
      tv += std::abs(freq[k] / static_cast<double>(totals.values.size()) - t.atoms[k].mass);
    tv *= 0.5;
    const bool pass = tv < a.tv_threshold;
    emit(Table{{"lambda", "p", "q", "seed", "samples", "n_max", "tv", "threshold", "pass"},
               {{a.lambda, a.p, a.q, a.seed, a.tv_samples, std::int64_t{a.n_max}, tv, a.tv_threshold,
                 std::string(pass ? "true" : "false")}}},
         o);
    return pass ? kOk : kCheckFailed;
  }
  if (a.replicates < 1) throw UsageError("--replicates must be >= 1");
  Table t{{"replicate", "n_scientists", "total", "mean", "median", "mode", "tail_exponent_hat", "top_share"}, {}};
  for (int r = 0; r < a.replicates; ++r) {
    FieldSim cfg = base;
    cfg.seed = base.seed.child(static_cast<std::uint64_t>(r));
    const SimSummary s = simulate_field(cfg, o.exec());
    t.rows.push_back({std::int64_t{r}, s.n_scientists, s.total, s.mean, s.median, s.mode, s.tail_exponent_hat,
                      s.top_share});
  }
  emit(t, o);
  return kOk;
}

// ---------------------------------------------------------------------------
// converge

struct ConvergeArgs {
  Params prm;
  std::string h = "matched";
  double a = 2.0;
  std::string n = "2..256:*2";
};

LaplaceFunction candidate(const std::string& spec, const LaplaceFamily& family) {
  if (spec == "matched") return matched_exponential(family);
  if (spec == "self") return as_function(family);
  if (spec.rfind("exp:", 0) == 0) return exponential_transform(parse_number(spec.substr(4)));
  throw UsageError("unknown --candidate '" + spec + "' (matched, self or exp:<mean>)");
}

int run_converge(const ConvergeArgs& a, const OutputOptions& o) {
  const auto family = laplace_family(a.prm);
  if (!family) throw UsageError("converge needs --family gamma or tempered");
  const auto n_list = parse_int_sweep(a.n);
  const auto curve = convergence_curve(candidate(a.h, *family), *family, n_list, a.a, theorem_s_grid(), o.exec());
  for (const auto& w : curve.warnings) std::cerr << "warning: " << w << '\n';

  Table t{{"n", "condition_b", "sup_distance"}, {}};
  for (std::size_t i = 0; i < curve.points.size(); ++i)
    t.rows.push_back({std::int64_t{curve.points[i].n}, curve.condition_b[i], curve.points[i].sup_distance});
  emit(t, o);

  const std::size_t k = curve.points.size();
  for (std::size_t i = k >= 3 ? k - 2 : 1; i < k; ++i) {
    const auto& prev = curve.points[i - 1];
    const auto& cur = curve.points[i];
    // A distance already at rounding level counts as converged.
    if (!(cur.sup_distance < prev.sup_distance) && !(std::max(cur.sup_distance, prev.sup_distance) < 1e-12)) {
      std::cerr << "converge: sup distance not decreasing from n=" << prev.n << " (" << csv_cell(prev.sup_distance)
                << ") to n=" << cur.n << " (" << csv_cell(cur.sup_distance) << ")\n";
      return kCheckFailed;
    }
  }
  return kOk;
}

void add_common(CLI::App* cmd, OutputOptions& o) {
  cmd->set_help_flag("--help", "print this help and exit");  // frees -h/--h for tempering
  cmd->add_flag("--json", o.json, "one JSON object per line instead of CSV");
  cmd->add_option("--out", o.out, "write to this file instead of stdout");
  cmd->add_flag("--serial", o.serial, "run the serial reference kernels (same output)");
  cmd->add_option("--config", "flat key = value file; command-line flags win");
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

// Splices the --config file into argv as extra flags. Keys already given on
// the command line are skipped, so flags win; unknown keys then fail parsing
// like unknown flags.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read --config file '" + path + "'");
  auto given = [&](const std::string& key) {
    for (const auto& a : args)
      if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) return true;
    return false;
  };
  std::vector<std::string> extra;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    line = trim(line.substr(0, line.find_first_of("#;")));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.empty() || key == "config") throw UsageError(path + ":" + std::to_string(lineno) + ": bad key");
    if (given(key)) continue;
    if (value == "true") {
      extra.push_back("--" + key);
    } else if (value != "false") {
      extra.push_back("--" + key + "=" + value);
    }
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-stable and casual-stable distributions: checks, samplers and simulations"};
  app.require_subcommand(1);
  OutputOptions out;

  StabilityArgs stab;
  auto* cs = app.add_subcommand("check-stability", "stability residual over an n range");
  add_common(cs, out);
  add_family_params(cs, stab.prm);
  cs->add_option("--family", stab.prm.family, "svh, example1, example2, field, gamma or tempered")
      ->required()
      ->check(CLI::IsMember({"svh", "example1", "example2", "field", "gamma", "tempered"}));
  cs->add_option("--thinning", stab.prm.thinning, "bernoulli, example1 or example2 (default: the family's own)");
  cs->add_option("--n", stab.n, "n sweep, e.g. 2..50, 2..256:*2 or 2,3,5")->capture_default_str();
  cs->add_option("--pn", stab.pn, "use this p for every n instead of solving for p(n)");
  cs->add_flag("--solve-pn", "solve for p(n) (the default)");
  cs->add_flag("--casual", stab.casual, "Laplace-transform (casual) stability");
  cs->add_option("--tol", stab.tol, "residual tolerance")->capture_default_str();

  PgfArgs pgf;
  auto* cp = app.add_subcommand("check-pgf", "most negative p.m.f. coefficient of thinning laws");
  add_common(cp, out);
  add_family_params(cp, pgf.prm);
  cp->add_option("--thinning", pgf.thinning, "bernoulli, example1 or example2")
      ->capture_default_str()
      ->check(CLI::IsMember({"bernoulli", "example1", "example2"}));
  cp->add_option("--p-list", pgf.p_list, "thinning parameters p")->capture_default_str();
  cp->add_option("--kappa-list", pgf.kappa_list, "kappa sweep (example1; default --kappa)");
  cp->add_option("--b-list", pgf.b_list, "b sweep (example2; default --b)");
  cp->add_option("--n-max", pgf.n_max, "coefficients 0..n_max")->capture_default_str();
  cp->add_option("--radius", pgf.radius, "extraction radius (default: smallest certified bound)");
  cp->add_option("--tol-neg", pgf.tol_neg, "coefficients >= -tol_neg count as nonnegative")->capture_default_str();

  CitationArgs cit;
  auto* cc = app.add_subcommand("citations", "simulate the publication/citation model");
  add_common(cc, out);
  cc->add_option("--lambda", cit.lambda, "expected number of authors")->capture_default_str();
  cc->add_option("--p", cit.p, "Sibuya index p")->capture_default_str();
  cc->add_option("--q", cit.q, "rejection probability q")->capture_default_str();
  cc->add_option("--seed", cit.seed, "seed")->capture_default_str();
  cc->add_option("--replicates", cit.replicates, "independent fields")->capture_default_str();
  cc->add_flag("--tv-check", cit.tv_check, "compare sampled field totals with the extracted p.m.f.");
  cc->add_option("--tv-samples", cit.tv_samples, "field totals drawn for --tv-check")->capture_default_str();
  cc->add_option("--n-max", cit.n_max, "atoms 0..n_max compared by --tv-check")->capture_default_str();
  cc->add_option("--tv-threshold", cit.tv_threshold, "--tv-check fails at or above this")->capture_default_str();

  ConvergeArgs conv;
  auto* cv = app.add_subcommand("converge", "transform-domain convergence of normalized sums");
  add_common(cv, out);
  add_family_params(cv, conv.prm);
  cv->add_option("--family", conv.prm.family, "gamma or tempered")
      ->required()
      ->check(CLI::IsMember({"gamma", "tempered"}));
  cv->add_option("--candidate", conv.h, "candidate transform h: matched, self or exp:<mean>")->capture_default_str();
  cv->add_option("--a", conv.a, "exponent a of the theorem's conditions")->capture_default_str();
  cv->add_option("--n", conv.n, "n sweep")->capture_default_str();

  try {
    std::vector<std::string> args(argv, argv + argc);
    args = merge_config(std::move(args));
    // CLI11 takes the vector in reverse order, without the program name.
    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    app.parse(rev);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (cs->parsed()) return run_check_stability(stab, out);
    if (cp->parsed()) return run_check_pgf(pgf, out);
    if (cc->parsed()) return run_citations(cit, out);
    if (cv->parsed()) return run_converge(conv, out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kUsage;
}

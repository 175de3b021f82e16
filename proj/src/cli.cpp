#include "chord/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "chord/counting.hpp"
#include "chord/enumerate.hpp"
#include "chord/logexp.hpp"
#include "chord/sampling.hpp"
#include "chord/series.hpp"
#include "chord/verify.hpp"

namespace chord {
namespace {

using json = nlohmann::ordered_json;

// Validation failures raised after parsing; the message names the flag.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;
  std::string table, which, stat, suite, numeric, format, output;
  int n = 0, k = -1, order = 0, depth = 0;
  int lambda2 = 0, lambda3 = 0, n0 = 6;
  int shards = 1, bins = 0;
  std::uint64_t samples = 0, seed = 0;
  bool connected = false, allow_large = false, mean_only = false, timings = false;
};

// Approximate values: 12 significant digits.
double approx(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string approx_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string rational(const mpq_class& q) { return q.get_str(); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

json envelope(const RunConfig& cfg, json params, json results, bool approximate) {
  json j;
  j["command"] = cfg.command;
  j["params"] = std::move(params);
  j["results"] = std::move(results);
  j["approximate"] = approximate;
  return j;
}

struct Output {
  std::string text;
  int exit_code = kExitOk;
};

Output emit_json(const json& j) { return {j.dump(2) + "\n"}; }

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (cfg.format == f) return;
  std::string list;
  for (const char* f : allowed) list += (list.empty() ? "" : ", ") + std::string(f);
  throw UsageError("--format: '" + cfg.format + "' is not available for " + cfg.command +
                   " (expected " + list + ")");
}

// Accepts "p", "p/q" and plain decimals such as "0.25" or "-1.5".
mpq_class parse_rational(const std::string& token) {
  auto fail = [&] { throw UsageError("--numeric: '" + token + "' is not a rational or decimal"); };
  if (token.empty()) fail();
  mpq_class q;
  const auto dot = token.find('.');
  std::string digits = token;
  int scale_digits = 0;
  if (dot != std::string::npos) {
    if (token.find('/') != std::string::npos) fail();
    digits = token.substr(0, dot) + token.substr(dot + 1);
    scale_digits = static_cast<int>(token.size() - dot - 1);
  }
  if (q.set_str(digits, 10) != 0) fail();
  if (q.get_den() == 0) fail();
  q.canonicalize();
  if (scale_digits > 0) {
    mpz_class ten;
    mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(scale_digits));
    q /= ten;
  }
  return q;
}

// ---- count -----------------------------------------------------------------

RationalRow exact_row(const Statistic& statistic, int n) {
  return row_from_counts(exact_distribution(n, statistic).counts);
}

Output run_count(const RunConfig& cfg) {
  require_format(cfg, {"csv", "json"});
  json params = {{"table", cfg.table}, {"n", cfg.n}};
  json rows = json::array();
  std::ostringstream csv;
  std::string note;
  bool two_dim = false;
  bool rational_rows = false;

  auto add = [&](int n, int k, const std::string& value) {
    if (two_dim) {
      csv << n << ',' << k << ',' << value << '\n';
      rows.push_back({{"n", n}, {"k", k}, {"value", value}});
    } else {
      csv << n << ',' << value << '\n';
      rows.push_back({{"n", n}, {"value", value}});
    }
  };

  if (cfg.table == "c" || cfg.table == "a") {
    if (cfg.k >= 0) throw UsageError("--k: not used by --table " + cfg.table);
    if (cfg.table == "a" && cfg.n < 4) throw UsageError("--n: --table a needs N >= 4");
    const CountTable t = cfg.table == "c" ? c_table(cfg.n) : a_table(cfg.n);
    note = t.note;
    for (int n = 1; n <= cfg.n; ++n) add(n, 0, t.at(n).get_str());
  } else if (cfg.table == "b" || cfg.table == "o") {
    two_dim = true;
    const bool is_b = cfg.table == "b";
    const int max_k = cfg.k >= 0 ? cfg.k : (is_b ? cfg.n - 1 : cfg.n);
    if (!is_b && max_k < 1) throw UsageError("--k: --table o needs K >= 1 (block size)");
    params["k"] = max_k;
    const CountTable t = is_b ? b_table(cfg.n, max_k) : o_table(cfg.n, max_k);
    note = t.note;
    for (int n = 1; n <= cfg.n; ++n)
      for (int k = is_b ? 0 : 1; k <= max_k; ++k) add(n, k, t.at(n, k).get_str());
  } else {
    two_dim = true;
    rational_rows = true;
    const bool is_g = cfg.table == "g";
    if (cfg.k >= 0) throw UsageError("--k: not used by --table " + cfg.table);
    if (!cfg.mean_only && cfg.n > 400)
      throw UsageError("--n: exact " + cfg.table +
                       " rows are limited to N <= 400; use --mean-only for larger N");
    if (is_g) {
      if (cfg.n < 4) throw UsageError("--n: --table g needs N >= 4");
      const auto initial = g_initial_rows();
      note = "initial rows n = 1,2,3 from exact first_terminal distributions";
      if (cfg.mean_only) {
        two_dim = false;
        const mpq_class m = first_terminal_proxy(cfg.n, initial);
        add(cfg.n, 0, rational(m));
        rows.back()["approx"] = approx(m.get_d());
      } else {
        const RationalTable t = g_table(cfg.n, initial);
        for (int n = 1; n <= cfg.n; ++n) {
          const RationalRow& r = t.row(n);
          for (int k = r.min_k; k <= r.max_k(); ++k) add(n, k, rational(r.at(k)));
        }
      }
    } else {
      const Statistic initial_stat = Statistic::parse(cfg.stat.empty() ? "terminal_count" : cfg.stat);
      if (cfg.n0 < 1 || cfg.n0 + 1 > kEnumerationCap)
        throw UsageError("--n0: initial rows come from enumeration, need 1 <= n0 <= " +
                         std::to_string(kEnumerationCap - 1));
      if (cfg.n < cfg.n0 + 1) throw UsageError("--n: --table q needs N >= n0 + 1");
      params["lambda2"] = cfg.lambda2;
      params["lambda3"] = cfg.lambda3;
      params["n0"] = cfg.n0;
      params["initial_statistic"] = initial_stat.name();
      const RationalRow r0 = exact_row(initial_stat, cfg.n0);
      const RationalRow r1 = exact_row(initial_stat, cfg.n0 + 1);
      note = "initial rows from exact " + initial_stat.name() + " distributions at n0, n0+1";
      if (cfg.mean_only) {
        two_dim = false;
        const mpq_class m = q_row_mean(cfg.lambda2, cfg.lambda3, cfg.n0, cfg.n, r0, r1);
        add(cfg.n, 0, rational(m));
        rows.back()["approx"] = approx(m.get_d());
      } else {
        const RationalTable t = q_table(cfg.lambda2, cfg.lambda3, cfg.n0, cfg.n, r0, r1);
        for (int n = cfg.n0; n <= cfg.n; ++n) {
          const RationalRow& r = t.row(n);
          for (int k = r.min_k; k <= r.max_k(); ++k) add(n, k, rational(r.at(k)));
        }
      }
    }
    if (cfg.mean_only) params["mean_only"] = true;
  }

  if (cfg.format == "json") {
    json results = {{"note", note}, {"rows", rows}};
    return emit_json(envelope(cfg, params, results, false));
  }
  std::string header = two_dim ? "n,k,value\n" : (rational_rows ? "n,mean\n" : "n,value\n");
  return {header + csv.str()};
}

// ---- enumerate -------------------------------------------------------------

Output run_enumerate(const RunConfig& cfg) {
  require_format(cfg, {"csv", "json"});
  check_enumeration_size(cfg.n, cfg.allow_large);
  json params = {{"n", cfg.n}, {"connected", cfg.connected || !cfg.stat.empty()}};
  if (!cfg.stat.empty()) {
    const Statistic statistic = Statistic::parse(cfg.stat);
    params["stat"] = statistic.name();
    const ExactDistribution dist = exact_distribution(cfg.n, statistic, cfg.shards, cfg.allow_large);
    if (cfg.format == "csv") return {distribution_csv(dist)};
    json counts = json::object();
    for (const auto& [v, c] : dist.counts) counts[std::to_string(v)] = c.get_str();
    json results = {{"statistic", dist.statistic}, {"n", dist.n}, {"total", dist.total.get_str()},
                    {"counts", counts}};
    return emit_json(envelope(cfg, params, results, false));
  }
  std::ostringstream csv;
  csv << "diagram\n";
  json list = json::array();
  std::uint64_t count = 0;
  auto visit = [&](const ChordDiagram& d) {
    ++count;
    if (cfg.format == "csv") csv << format_diagram(d) << '\n';
    else list.push_back(format_diagram(d));
  };
  if (cfg.connected) {
    ConnectedStream s(cfg.n, cfg.allow_large);
    while (s.next()) visit(s.diagram());
  } else {
    MatchingStream s(cfg.n, cfg.allow_large);
    while (s.next()) visit(s.diagram());
  }
  if (cfg.format == "csv") return {csv.str()};
  return emit_json(envelope(cfg, params, {{"count", count}, {"diagrams", list}}, false));
}

// ---- series ----------------------------------------------------------------

json coefficient_list(const FormalSeries& s) {
  json out = json::array();
  for (const auto& c : s.coefficients()) out.push_back(rational(c));
  return out;
}

Output run_series(const RunConfig& cfg) {
  require_format(cfg, {"csv", "json"});
  json params = {{"which", cfg.which}, {"order", cfg.order}};
  std::vector<std::pair<std::string, FormalSeries>> parts;
  if (cfg.which == "B0") parts.emplace_back("coefficients", closed_form_B(0, cfg.order));
  else if (cfg.which == "B1") parts.emplace_back("coefficients", closed_form_B(1, cfg.order));
  else if (cfg.which == "B2") parts.emplace_back("coefficients", closed_form_B(2, cfg.order));
  else if (cfg.which == "A") parts.emplace_back("coefficients", closed_form_A(cfg.order));
  else if (cfg.which == "leading") parts.emplace_back("coefficients", leading_log(cfg.order));
  else if (cfg.which == "nll") parts.emplace_back("coefficients", next_to_leading(cfg.order));
  else {
    NextToNext nn = next_to_next(cfg.order);
    parts.emplace_back("f0 f2", std::move(nn.f0f2));
    parts.emplace_back("f1^2", std::move(nn.f1_sq));
  }
  if (cfg.format == "json") {
    json results = {{"order", cfg.order}, {"convention", convention_name(parts.front().second.convention())}};
    if (parts.size() == 1) {
      results["coefficients"] = coefficient_list(parts.front().second);
    } else {
      json by_monomial = json::object();
      for (const auto& [name, s] : parts) by_monomial[name] = coefficient_list(s);
      results["coefficients"] = by_monomial;
    }
    return emit_json(envelope(cfg, params, results, false));
  }
  std::ostringstream csv;
  csv << "n";
  for (const auto& [name, s] : parts) csv << ',' << (parts.size() == 1 ? "coefficient" : name);
  csv << '\n';
  for (int n = 0; n <= cfg.order; ++n) {
    csv << n;
    for (const auto& [name, s] : parts) csv << ',' << rational(s[n]);
    csv << '\n';
  }
  return {csv.str()};
}

// ---- logexp ----------------------------------------------------------------

Output run_logexp(const RunConfig& cfg) {
  require_format(cfg, {"csv", "json"});
  check_enumeration_size(cfg.order, false);
  std::vector<mpq_class> values;
  if (!cfg.numeric.empty()) {
    std::stringstream in(cfg.numeric);
    std::string token;
    while (std::getline(in, token, ',')) values.push_back(parse_rational(token));
  }
  const LogExpansionTable table = next_to_i_oracle(cfg.depth, cfg.order, cfg.shards);
  json params = {{"i", cfg.depth}, {"order", cfg.order}};
  if (!values.empty()) {
    json v = json::array();
    for (const auto& q : values) v.push_back(rational(q));
    params["numeric"] = v;
  }
  const int needed = cfg.order + 1;
  if (!values.empty() && static_cast<int>(values.size()) < std::min(needed, cfg.depth + 1))
    throw UsageError("--numeric: supply values for f0..f" + std::to_string(cfg.depth));

  json coefficients = json::array();
  std::ostringstream csv;
  csv << (values.empty() ? "l_power,x_power,monomial,coefficient\n" : "l_power,x_power,value\n");
  for (std::size_t j = 0; j < table.coefficients.size(); ++j) {
    const FPolynomial& p = table.coefficients[j];
    const int x_power = static_cast<int>(j) + cfg.depth;
    json entry = {{"l_power", j}, {"x_power", x_power}};
    if (values.empty()) {
      json terms = json::object();
      for (const auto& [e, c] : p.terms()) {
        terms[FPolynomial::monomial_name(e)] = rational(c);
        csv << j << ',' << x_power << ',' << csv_field(FPolynomial::monomial_name(e)) << ','
            << rational(c) << '\n';
      }
      entry["terms"] = terms;
    } else {
      const mpq_class v = p.evaluate(values);
      entry["value"] = rational(v);
      csv << j << ',' << x_power << ',' << rational(v) << '\n';
    }
    coefficients.push_back(entry);
  }
  if (cfg.format == "csv") return {csv.str()};
  json results = {{"depth", cfg.depth}, {"order", cfg.order}, {"coefficients", coefficients}};
  return emit_json(envelope(cfg, params, results, false));
}

// ---- sample ----------------------------------------------------------------

json stats_json(const SampleStats& s) {
  json hist = json::object();
  for (const auto& [v, c] : s.histogram) hist[std::to_string(v)] = c;
  return {{"n", s.n},
          {"statistic", s.statistic},
          {"samples", s.samples},
          {"mean", approx(s.mean)},
          {"variance", approx(s.variance)},
          {"std_error", approx(s.std_error)},
          {"skewness", approx(s.skewness)},
          {"histogram", hist},
          {"seed", s.seed},
          {"shards", s.shards},
          {"rng", s.rng},
          {"attempts", s.attempts}};
}

Output run_sample(const RunConfig& cfg) {
  require_format(cfg, {"csv", "json"});
  const Statistic statistic = Statistic::parse(cfg.stat);
  json params = {{"n", cfg.n},          {"stat", statistic.name()}, {"samples", cfg.samples},
                 {"seed", cfg.seed},    {"shards", cfg.shards}};
  if (cfg.bins > 0) {
    if (statistic.kind != StatisticKind::kFirstTerminal)
      throw UsageError("--bins: the density diagnostic needs --stat first_terminal");
    params["bins"] = cfg.bins;
    const FirstTerminalDensity d =
        first_terminal_density(cfg.n, cfg.samples, cfg.seed, cfg.bins, cfg.shards);
    if (cfg.format == "csv") {
      std::ostringstream csv;
      csv << "bin_mid,density,reference\n";
      for (const auto& b : d.bins)
        csv << approx_text(b.mid) << ',' << approx_text(b.density) << ',' << approx_text(b.reference) << '\n';
      return {csv.str()};
    }
    json bins = json::array();
    for (const auto& b : d.bins)
      bins.push_back({{"bin_mid", approx(b.mid)}, {"density", approx(b.density)},
                      {"reference", approx(b.reference)}});
    json results = stats_json(d.stats);
    results["mean_ratio"] = approx(d.mean_ratio);
    results["density"] = bins;
    return emit_json(envelope(cfg, params, results, true));
  }
  const SampleStats s = estimate(statistic, cfg.n, cfg.samples, cfg.seed, cfg.shards);
  if (cfg.format == "csv") {
    std::ostringstream csv;
    csv << "value,count\n";
    for (const auto& [v, c] : s.histogram) csv << v << ',' << c << '\n';
    return {csv.str()};
  }
  return emit_json(envelope(cfg, params, stats_json(s), true));
}

// ---- verify ----------------------------------------------------------------

Output run_verify(const RunConfig& cfg, std::ostream& err) {
  require_format(cfg, {"text", "json"});
  const Suite suite = parse_suite(cfg.suite);
  VerifyOptions options;
  options.shards = cfg.shards;
  if (cfg.format == "text" && cfg.output.empty())
    options.on_result = [&](const CheckResult& r) {
      err << (r.passed ? "PASS " : "FAIL ") << r.id << '\n' << std::flush;
    };
  const std::vector<CheckResult> results = run_suite(suite, options);
  bool all = true;
  for (const auto& r : results) all = all && r.passed;
  Output out;
  out.exit_code = all ? kExitOk : kExitVerification;
  if (cfg.format == "json") {
    json list = json::array();
    for (const auto& r : results) {
      json item = {{"criterion", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}};
      if (cfg.timings) item["seconds"] = approx(r.seconds);
      list.push_back(item);
    }
    json results_json = {{"suite", suite_name(suite)}, {"passed", all}, {"checks", list}};
    out.text = envelope(cfg, {{"suite", suite_name(suite)}}, results_json, true).dump(2) + "\n";
    return out;
  }
  std::ostringstream text;
  for (const auto& r : results) {
    text << (r.passed ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.title << "\n      " << r.detail;
    if (cfg.timings) text << " (" << approx_text(r.seconds) << " s)";
    text << '\n';
  }
  int passed = 0;
  for (const auto& r : results) passed += r.passed;
  text << passed << "/" << results.size() << " checks passed (suite " << suite_name(suite) << ")\n";
  out.text = text.str();
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Connected chord diagrams: counting, series, log expansions and sampling"};
  app.require_subcommand(1, 1);
  app.allow_extras(false);

  auto common = [&](CLI::App* sub, const std::string& default_format) {
    sub->add_option("--format", cfg.format, "Output format")->default_str(default_format);
    sub->add_option("--output", cfg.output, "Write to this file instead of standard output");
  };

  auto* count = app.add_subcommand("count", "Exact counting tables");
  count->add_option("--table", cfg.table, "c, b, o, a, g or q")
      ->required()
      ->check(CLI::IsMember({"c", "b", "o", "a", "g", "q"}));
  count->add_option("--n", cfg.n, "Largest n")->required()->check(CLI::Range(1, 100000));
  count->add_option("--k", cfg.k, "Largest k (b: b(C) >= n-k; o: terminal block size)")
      ->check(CLI::Range(0, 100000));
  auto* l2 = count->add_option("--lambda2", cfg.lambda2, "q: shift of the first branch");
  auto* l3 = count->add_option("--lambda3", cfg.lambda3, "q: shift of the second branch");
  count->add_option("--n0", cfg.n0, "q: first initial row")->check(CLI::Range(1, kEnumerationCap));
  count->add_option("--stat", cfg.stat, "q: statistic whose exact distributions seed the rows");
  count->add_flag("--mean-only", cfg.mean_only, "g, q: only the mean of row N, via the scalar recurrence");
  common(count, "csv");

  auto* enumerate = app.add_subcommand("enumerate", "Exhaustive enumeration");
  enumerate->add_option("--n", cfg.n, "Number of chords")->required()->check(CLI::Range(1, 1000));
  enumerate->add_flag("--connected", cfg.connected, "Only connected diagrams");
  enumerate->add_option("--stat", cfg.stat,
                        "Exact distribution of terminal_count, adjacent_pairs, first_terminal, "
                        "gap_count(L) or class over connected diagrams");
  enumerate->add_option("--shards", cfg.shards, "Worker threads")->check(CLI::Range(1, 256));
  enumerate->add_flag("--allow-large", cfg.allow_large, "Lift the n <= 9 cap");
  common(enumerate, "csv");

  auto* series = app.add_subcommand("series", "Generating-function expansions");
  series->add_option("--which", cfg.which, "B0, B1, B2, A, leading, nll or nnll")
      ->required()
      ->check(CLI::IsMember({"B0", "B1", "B2", "A", "leading", "nll", "nnll"}));
  series->add_option("--order", cfg.order, "Truncation order")->required()->check(CLI::Range(0, 2000));
  common(series, "json");

  auto* logexp = app.add_subcommand("logexp", "Next-to^i-leading log expansion by diagram sums");
  logexp->add_option("--i", cfg.depth, "Depth i")->required()->check(CLI::Range(0, kEnumerationCap));
  logexp->add_option("--order", cfg.order, "Largest number of chords")
      ->required()
      ->check(CLI::Range(1, kEnumerationCap));
  logexp->add_option("--numeric", cfg.numeric, "Substitute f0,f1,... (rationals or decimals)");
  logexp->add_option("--shards", cfg.shards, "Worker threads")->check(CLI::Range(1, 256));
  common(logexp, "json");

  auto* sample = app.add_subcommand("sample", "Uniform sampling of connected diagrams");
  sample->add_option("--n", cfg.n, "Number of chords")->required()->check(CLI::Range(1, 1000000));
  sample->add_option("--stat", cfg.stat, "Statistic")->required();
  sample->add_option("--samples", cfg.samples, "Sample count S")
      ->required()
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
  sample->add_option("--seed", cfg.seed, "Seed")->required();
  sample->add_option("--shards", cfg.shards, "Independent shards (threads)")->check(CLI::Range(1, 256));
  sample->add_option("--bins", cfg.bins, "Density diagnostic for first_terminal")->check(CLI::Range(2, 100000));
  common(sample, "json");

  auto* verify = app.add_subcommand("verify", "Cross-validation suites");
  verify->add_option("--suite", cfg.suite, "recurrences, series, asymptotics, sampler or all")
      ->required()
      ->check(CLI::IsMember({"recurrences", "series", "asymptotics", "sampler", "all"}));
  verify->add_option("--shards", cfg.shards, "Worker threads")->check(CLI::Range(1, 256));
  verify->add_flag("--timings", cfg.timings, "Report wall-clock time per check");
  common(verify, "text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::string where;
    if (!app.get_subcommands().empty()) where = app.get_subcommands().front()->get_name() + ": ";
    err << "error: " << where << e.what() << '\n';
    return kExitValidation;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();
  if (cfg.format.empty()) {
    if (cfg.command == "count" || cfg.command == "enumerate") cfg.format = "csv";
    else if (cfg.command == "verify") cfg.format = "text";
    else cfg.format = "json";
  }
  if (cfg.table == "q" && (l2->count() == 0 || l3->count() == 0)) {
    err << "error: count: --table q requires --lambda2 and --lambda3\n";
    return kExitValidation;
  }

  try {
    Output result;
    if (cfg.command == "count") result = run_count(cfg);
    else if (cfg.command == "enumerate") result = run_enumerate(cfg);
    else if (cfg.command == "series") result = run_series(cfg);
    else if (cfg.command == "logexp") result = run_logexp(cfg);
    else if (cfg.command == "sample") result = run_sample(cfg);
    else result = run_verify(cfg, err);

    if (cfg.output.empty()) {
      out << result.text;
    } else {
      std::ofstream file(cfg.output, std::ios::binary);
      if (!file) {
        err << "error: --output: cannot open '" << cfg.output << "' for writing\n";
        return kExitValidation;
      }
      file << result.text;
    }
    return result.exit_code;
  } catch (const std::invalid_argument& e) {
    err << "error: " << cfg.command << ": " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::domain_error& e) {
    err << "error: " << cfg.command << ": " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace chord

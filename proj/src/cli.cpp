#include "friablelab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "friablelab/characters.hpp"
#include "friablelab/dickman.hpp"
#include "friablelab/dispersion.hpp"
#include "friablelab/errors.hpp"
#include "friablelab/saddle.hpp"
#include "friablelab/smooth.hpp"
#include "friablelab/titchmarsh.hpp"

namespace friablelab::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr double kMaxX = 1e9;

enum class Kind { integer, count, real, text, real_list };

struct Key {
  const char* name;
  Kind kind;
  const char* def;  // nullptr: required; "": optional without default
  const char* help;
};

struct Report {
  json fields = json::object();
  std::vector<std::string> columns;  // non-empty: tabular CSV
  std::vector<std::vector<json>> rows;
};

class Params;
using Handler = std::function<Report(const Params&, const RunConfig&)>;

struct Command {
  const char* name;
  const char* help;
  std::vector<Key> keys;
  Handler handler;
};

const std::vector<Command>& command_table();

const Command& find_command(const std::string& name) {
  for (const auto& c : command_table()) {
    if (name == c.name) return c;
  }
  throw ConfigError("unknown command '" + name + "'");
}

class Params {
 public:
  Params(const Command& cmd, const std::map<std::string, std::string>& values)
      : cmd_(cmd), values_(values) {}

  bool has(const std::string& k) const {
    auto it = values_.find(k);
    return it != values_.end() && !it->second.empty();
  }
  const std::string& raw(const std::string& k) const {
    auto it = values_.find(k);
    if (it == values_.end() || it->second.empty()) {
      throw ConfigError(std::string(cmd_.name) + ": missing required key '" + k + "'");
    }
    return it->second;
  }
  double real(const std::string& k) const { return parse_real(k, raw(k)); }
  std::int64_t integer(const std::string& k) const { return parse_int(k, raw(k)); }
  std::uint64_t count(const std::string& k) const {
    const auto v = integer(k);
    if (v < 0) throw ConfigError("key '" + k + "' must be nonnegative");
    return static_cast<std::uint64_t>(v);
  }
  std::string text(const std::string& k) const { return raw(k); }
  std::vector<double> reals(const std::string& k) const {
    std::vector<double> out;
    std::stringstream ss(raw(k));
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real(k, item));
    return out;
  }

  static double parse_real(const std::string& k, const std::string& s) {
    double v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || !std::isfinite(v)) {
      throw ConfigError("key '" + k + "': '" + s + "' is not a finite real number");
    }
    return v;
  }
  static std::int64_t parse_int(const std::string& k, const std::string& s) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) {
      // Accept integral reals such as 1e5.
      const double d = parse_real(k, s);
      if (d != std::floor(d) || std::fabs(d) > 9e18) {
        throw ConfigError("key '" + k + "': '" + s + "' is not an integer");
      }
      return static_cast<std::int64_t>(d);
    }
    return v;
  }

 private:
  const Command& cmd_;
  const std::map<std::string, std::string>& values_;
};

FactorTable table_for(double limit) {
  if (!(limit <= static_cast<double>(kDefaultFactorCap))) {
    throw CapacityError("sieve limit " + std::to_string(limit) + " beyond cap " +
                        std::to_string(kDefaultFactorCap));
  }
  return FactorTable(std::max<std::uint64_t>(2, floor_count(limit)));
}

void check_x(double x) {
  if (!(x <= kMaxX)) throw CapacityError("x beyond the desk-scale cap 1e9");
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

// --- handlers --------------------------------------------------------------

Report do_psi(const Params& p, const RunConfig&) {
  const double x = p.real("x"), y = p.real("y");
  check_x(x);
  const std::string m = p.text("method");
  Report r;
  if (m == "scan") {
    r.fields["psi"] = psi(x, y, table_for(x), PsiMethod::scan);
  } else if (m == "recurrence") {
    r.fields["psi"] = psi(x, y, table_for(std::min(std::max(x, 2.0), std::max(y, 2.0))),
                          PsiMethod::recurrence);
  } else {
    throw ConfigError("method must be scan or recurrence");
  }
  return r;
}

Report do_rho(const Params& p, const RunConfig&) {
  const auto tab = build_rho_table(p.real("u_max"), p.real("step"),
                                   static_cast<int>(p.integer("order")));
  Report r;
  r.fields["rho"] = tab(p.real("u"));
  return r;
}

Report do_saddle(const Params& p, const RunConfig&) {
  const double x = p.real("x"), y = p.real("y");
  check_x(x);
  const double exact_limit = p.real("exact_limit");
  const bool exact = x <= exact_limit;
  const auto ft = table_for(std::max(y, exact ? x : 2.0));
  const auto s = saddle_alpha(x, y, ft);
  Report r;
  r.fields["alpha"] = s.alpha;
  r.fields["residual"] = s.residual;
  r.fields["iterations"] = s.iterations;
  r.fields["bracket"] = json::array({s.bracket_lo, s.bracket_hi});
  r.fields["zeta_y"] = zeta_y(s.alpha, y, ft);
  r.fields["phi2"] = phi2(s.alpha, y, ft);
  if (y <= x) {
    const auto h = ht_estimate(x, y, ft);
    r.fields["psi_tilde"] = h.psi_tilde;
    if (h.ratio) {
      r.fields["psi"] = *h.psi;
      r.fields["ratio"] = *h.ratio;
    }
  }
  return r;
}

Report do_lambda(const Params& p, const RunConfig&) {
  const double x = p.real("x"), y = p.real("y");
  check_x(x);
  const std::uint64_t m = p.count("m");
  if (m == 0) throw ConfigError("m must be positive");
  if (!(y >= 2 && y <= x)) throw DomainError("lambda needs 2 <= y <= x");
  const double u = std::log(x) / std::log(y);
  const auto ft = table_for(x);
  const auto tab = build_rho_table(std::min(200.0, std::ceil(u) + 1), p.real("step"));
  StieltjesOptions opt;
  opt.gauss_nodes = static_cast<int>(p.integer("gauss_nodes"));
  opt.subdivisions = static_cast<int>(p.integer("subdivisions"));
  Report r;
  const double lam = lambda_smooth(x, y, tab, opt);
  const auto ps = psi(x, y, ft);
  r.fields["u"] = u;
  r.fields["lambda"] = lam;
  r.fields["psi"] = ps;
  r.fields["ratio"] = lam / static_cast<double>(ps);
  r.fields["hildebrand_ratio"] = hildebrand_ratio(x, y, tab, ft);
  if (m > 1) {
    const double lm = lambda_m(x, y, m, tab, ft, opt);
    const auto pm = psi_coprime(x, y, m, ft);
    r.fields["lambda_m"] = lm;
    r.fields["psi_m"] = pm;
    r.fields["ratio_m"] = lm / static_cast<double>(pm);
  }
  return r;
}

Report do_progressions(const Params& p, const RunConfig& cfg) {
  const double x = p.real("x"), y = p.real("y");
  check_x(x);
  const std::string mode = p.text("mode");
  ProfileMode pm;
  if (mode == "fixed_a") {
    pm = ProfileMode::fixed_a;
  } else if (mode == "max_a") {
    pm = ProfileMode::max_a;
  } else {
    throw ConfigError("mode must be fixed_a or max_a");
  }
  const auto grid = p.reals("theta");
  const auto prof = error_profile(x, y, p.integer("a"), grid, pm, table_for(x), p.integer("a2"),
                                  cfg.threads);
  Report r;
  r.fields["psi"] = prof.psi;
  r.columns = {"theta", "Q", "sum_abs_E", "normalized"};
  for (const auto& row : prof.rows) r.rows.push_back({row.theta, row.Q, row.sum_abs_E, row.normalized});
  return r;
}

Report do_charsum(const Params& p, const RunConfig& cfg) {
  const double x = p.real("x");
  check_x(x);
  const auto rep = char_sum_smooth(x, p.real("y"), p.real("Q"), p.real("cutoff"), table_for(x),
                                   cfg.threads);
  Report r;
  r.fields["sum"] = rep.sum;
  r.fields["psi"] = rep.psi;
  r.fields["normalized"] = rep.normalized;
  r.fields["characters"] = rep.characters;
  return r;
}

Report do_kloosterman(const Params& p, const RunConfig&) {
  const std::uint64_t c = p.count("c");
  const auto b = p.integer("b");
  Report r;
  const auto k = kloosterman(p.integer("a"), b, c);
  r.fields["value"] = k.value;
  r.fields["weil_bound"] = k.weil_bound;
  r.fields["weil_ratio"] = k.weil_ratio;
  if (p.has("D")) {
    const double D = p.real("D");
    IncompleteVariant v;
    const std::string var = p.text("variant");
    if (var == "phi_weighted") {
      v.kind = IncompleteVariant::Kind::phi_weighted;
    } else if (var != "plain") {
      throw ConfigError("variant must be plain or phi_weighted");
    }
    v.k = p.count("k");
    v.l = p.count("l");
    const auto inc = incomplete_kloosterman(b, c, D, v, table_for(std::max(D, 2.0)));
    r.fields["incomplete"] = complex_json(inc.value);
    r.fields["incomplete_terms"] = inc.terms;
    r.fields["shape"] = inc.shape;
    r.fields["shape_ratio"] = inc.shape_ratio;
  }
  return r;
}

Report do_gauss(const Params& p, const RunConfig&) {
  const std::uint64_t rr = p.count("r");
  const auto g = character_group(rr);
  const auto i1 = p.count("chi1"), i2 = p.count("chi2");
  if (i1 >= g->size() || i2 >= g->size()) throw ConfigError("character index beyond phi(r)");
  const auto s = gauss_pair_sum(g->character(i1), g->character(i2), p.integer("h"), rr);
  Report r;
  r.fields["value"] = complex_json(s.value);
  r.fields["abs"] = std::abs(s.value);
  r.fields["conductor"] = s.conductor;
  r.fields["bound"] = s.bound;
  r.fields["bound_ratio"] = s.bound_ratio;
  return r;
}

Report do_largesieve(const Params& p, const RunConfig&) {
  const std::uint64_t Q = p.count("Q"), N = p.count("N"), M = p.count("M");
  const std::uint64_t trials = p.count("trials");
  std::mt19937_64 rng(p.count("seed"));
  Report r;
  bool all_ok = true;
  r.columns = {"trial", "lhs", "rhs", "ok"};
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto seq = random_unimodular(N, rng);
    const auto rep = large_sieve_check(Q, M, seq);
    all_ok = all_ok && rep.ok;
    r.rows.push_back({t, rep.lhs, rep.rhs, rep.ok});
  }
  r.fields["all_ok"] = all_ok;
  return r;
}

Report do_poisson(const Params& p, const RunConfig&) {
  const std::uint64_t q = p.count("q");
  const double H = p.has("H") ? p.real("H") : std::pow(static_cast<double>(q), 1.1);
  const auto rep = poisson_check(p.real("M"), q, p.integer("a"), H);
  Report r;
  r.fields["lhs"] = rep.lhs;
  r.fields["rhs"] = complex_json(rep.rhs);
  r.fields["abs_err"] = rep.abs_err;
  r.fields["H"] = rep.H;
  return r;
}

Report do_dispersion(const Params& p, const RunConfig&) {
  const auto M = p.count("M"), N = p.count("N"), L = p.count("L"), R = p.count("R");
  auto ts = random_triple(M, N, L, R, p.real("Q_chi"), p.integer("a1"), p.integer("a2"),
                          p.count("seed"));
  if (p.has("alpha_file")) ts.alpha = sequence_on_range(read_sequence_csv(p.text("alpha_file")), M, M);
  if (p.has("beta_file")) ts.beta = sequence_on_range(read_sequence_csv(p.text("beta_file")), N, N);
  if (p.has("lambda_file")) {
    ts.lambda = sequence_on_range(read_sequence_csv(p.text("lambda_file")), L, L);
  }
  const auto rep = dispersion_terms(ts);
  const auto id = variance_identity_check(ts);
  Report r;
  r.fields["S1"] = rep.S1;
  r.fields["S2"] = complex_json(rep.S2);
  r.fields["S3"] = rep.S3;
  r.fields["variance"] = rep.variance;
  r.fields["delta"] = rep.delta;
  r.fields["cs_bound"] = rep.cs_bound;
  r.fields["moduli"] = rep.moduli;
  r.fields["identity_rhs"] = id.rhs;
  r.fields["identity_abs_err"] = id.abs_err;
  return r;
}

Report do_titchmarsh(const Params& p, const RunConfig& cfg) {
  const double x = p.real("x"), y = p.real("y");
  check_x(x);
  if (!(y >= 2 && y <= x)) throw DomainError("titchmarsh needs 2 <= y <= x");
  const std::uint64_t cutoff = p.count("cutoff");
  const auto ft = table_for(std::max(x, static_cast<double>(cutoff)));
  const double u = std::log(x) / std::log(y);
  const auto tab = build_rho_table(std::min(200.0, std::max(20.0, std::ceil(u) + 1)));
  const auto consts = ft_constants(cutoff, ft);
  const auto rep = titchmarsh_report(x, y, tab, ft, consts, cfg.threads);
  Report r;
  r.fields["u"] = rep.u;
  r.fields["alpha"] = rep.alpha;
  r.fields["t_exact"] = rep.t_exact;
  r.fields["psi"] = rep.psi;
  r.fields["c_alpha"] = rep.c_alpha.value;
  r.fields["c_alpha_tail_bar"] = rep.c_alpha.tail_bar;
  r.fields["main_18"] = rep.main_18;
  r.fields["ratio_18"] = rep.ratio_18;
  r.fields["t0"] = rep.t0;
  r.fields["t1"] = rep.t1;
  r.fields["main_43"] = rep.main_43;
  r.fields["ratio_43"] = rep.ratio_43;
  r.fields["A0"] = consts.A0.value;
  r.fields["A1"] = consts.A1.value;
  return r;
}

Report do_lemma7(const Params& p, const RunConfig&) {
  const double y = p.real("y"), N1 = p.real("N1"), N2 = p.real("N2");
  Report r;
  r.columns = {"n", "n0", "n1", "n2"};
  if (p.has("n")) {
    const auto n = p.count("n");
    const auto ft = table_for(static_cast<double>(n));
    const auto t = canonical_triple(n, y, N1, N2, ft);
    r.rows.push_back({n, t.n0, t.n1, t.n2});
  } else {
    const double x = p.real("x");
    check_x(x);
    const auto ft = table_for(x);
    const auto lpf = ft.lpf();
    const double lo = y * N1 * N2;
    for (std::uint64_t n = 1; n <= floor_count(x); ++n) {
      if (!(static_cast<double>(n) > lo) || static_cast<double>(lpf[n]) > y) continue;
      const auto t = canonical_triple(n, y, N1, N2, ft);
      r.rows.push_back({n, t.n0, t.n1, t.n2});
    }
  }
  r.fields["count"] = r.rows.size();
  return r;
}

const std::vector<Command>& command_table() {
  static const std::vector<Command> table = {
      {"psi", "count y-smooth integers up to x",
       {{"x", Kind::real, nullptr, "upper bound"},
        {"y", Kind::real, nullptr, "smoothness bound"},
        {"method", Kind::text, "scan", "scan or recurrence"}},
       do_psi},
      {"rho", "Dickman function",
       {{"u", Kind::real, nullptr, "argument"},
        {"u_max", Kind::real, "20", "table range"},
        {"step", Kind::real, "0.00390625", "grid step (1/K)"},
        {"order", Kind::integer, "3", "interpolation order"}},
       do_rho},
      {"saddle", "saddle point, local factors and the Hildebrand-Tenenbaum estimate",
       {{"x", Kind::real, nullptr, ""},
        {"y", Kind::real, nullptr, ""},
        {"exact_limit", Kind::real, "1e7", "compare with exact Psi when x is at most this"}},
       do_saddle},
      {"lambda", "Lambda(x,y) and Lambda_m(x,y) against exact counts",
       {{"x", Kind::real, nullptr, ""},
        {"y", Kind::real, nullptr, ""},
        {"m", Kind::count, "1", "coprimality modulus"},
        {"step", Kind::real, "0.00390625", "Dickman grid step"},
        {"gauss_nodes", Kind::integer, "6", "Gauss-Legendre nodes per piece"},
        {"subdivisions", Kind::integer, "1", "pieces per smooth segment"}},
       do_lambda},
      {"progressions", "sum over q <= x^theta of |E(x,y;a,q)|",
       {{"x", Kind::real, nullptr, ""},
        {"y", Kind::real, nullptr, ""},
        {"a", Kind::integer, "1", "residue a1"},
        {"a2", Kind::integer, "1", "class is a1 * a2^-1 mod q"},
        {"theta", Kind::real_list, "0.3,0.5", "comma-separated exponents in (0,1)"},
        {"mode", Kind::text, "fixed_a", "fixed_a or max_a"}},
       do_progressions},
      {"charsum", "average of smooth character sums over small conductors",
       {{"x", Kind::real, nullptr, ""},
        {"y", Kind::real, nullptr, ""},
        {"Q", Kind::real, nullptr, "modulus bound"},
        {"cutoff", Kind::real, nullptr, "conductor bound x^eta"}},
       do_charsum},
      {"kloosterman", "Kloosterman sum, Weil ratio, optional incomplete sum",
       {{"a", Kind::integer, nullptr, ""},
        {"b", Kind::integer, nullptr, ""},
        {"c", Kind::count, nullptr, "modulus"},
        {"D", Kind::real, "", "length of the incomplete sum"},
        {"variant", Kind::text, "plain", "plain or phi_weighted"},
        {"k", Kind::count, "1", "phi_weighted coprimality parameter"},
        {"l", Kind::count, "1", "phi_weighted divisibility parameter"}},
       do_kloosterman},
      {"gauss", "Gauss-type pair sum with its bound",
       {{"r", Kind::count, nullptr, "modulus"},
        {"h", Kind::integer, "0", "frequency"},
        {"chi1", Kind::count, "0", "character index mod r"},
        {"chi2", Kind::count, "0", "character index mod r"}},
       do_gauss},
      {"largesieve", "large sieve inequality on random unimodular sequences",
       {{"Q", Kind::count, nullptr, ""},
        {"N", Kind::count, nullptr, "sequence length"},
        {"M", Kind::count, "0", "sequence starts at M+1"},
        {"trials", Kind::count, "1", ""},
        {"seed", Kind::count, "1", ""}},
       do_largesieve},
      {"poisson", "Poisson summation in a progression for the standard bump",
       {{"M", Kind::real, nullptr, "scale"},
        {"q", Kind::count, nullptr, "modulus"},
        {"a", Kind::integer, "0", "residue"},
        {"H", Kind::real, "", "frequency cutoff (default q^1.1)"}},
       do_poisson},
      {"dispersion", "dispersion terms, variance identity and Delta",
       {{"M", Kind::count, "8", ""},
        {"N", Kind::count, "8", ""},
        {"L", Kind::count, "8", ""},
        {"R", Kind::count, "5", ""},
        {"Q_chi", Kind::real, "3", "conductor cutoff"},
        {"a1", Kind::integer, "1", ""},
        {"a2", Kind::integer, "1", ""},
        {"seed", Kind::count, "1", "generator seed for sequences not read from files"},
        {"alpha_file", Kind::text, "", "CSV index,re,im"},
        {"beta_file", Kind::text, "", "CSV index,re,im"},
        {"lambda_file", Kind::text, "", "CSV index,re,im"}},
       do_dispersion},
      {"titchmarsh", "smooth Titchmarsh divisor sum against its main terms",
       {{"x", Kind::real, nullptr, ""},
        {"y", Kind::real, nullptr, ""},
        {"cutoff", Kind::count, "1000000", "prime cutoff of the Euler products"}},
       do_titchmarsh},
      {"lemma7", "canonical factorizations n = n0 n1 n2",
       {{"y", Kind::real, nullptr, ""},
        {"N1", Kind::real, nullptr, ""},
        {"N2", Kind::real, nullptr, ""},
        {"n", Kind::count, "", "single integer"},
        {"x", Kind::real, "", "enumerate smooth n up to x"}},
       do_lemma7},
  };
  return table;
}

json echo_config(const Command& cmd, const RunConfig& cfg) {
  json c = json::object();
  c["command"] = cfg.command;
  for (const auto& k : cmd.keys) {
    auto it = cfg.params.find(k.name);
    if (it == cfg.params.end() || it->second.empty()) continue;
    switch (k.kind) {
      case Kind::integer:
      case Kind::count:
        c[k.name] = Params::parse_int(k.name, it->second);
        break;
      case Kind::real:
        c[k.name] = Params::parse_real(k.name, it->second);
        break;
      case Kind::real_list: {
        json arr = json::array();
        std::stringstream ss(it->second);
        std::string item;
        while (std::getline(ss, item, ',')) arr.push_back(Params::parse_real(k.name, item));
        c[k.name] = arr;
        break;
      }
      case Kind::text:
        c[k.name] = it->second;
        break;
    }
  }
  if (!cfg.output.empty()) c["output"] = cfg.output;
  c["format"] = cfg.format == OutputFormat::json ? "json" : "csv";
  c["threads"] = cfg.threads;
  return c;
}

void check_finite(const json& j) {
  if (j.is_number_float() && !std::isfinite(j.get<double>())) {
    throw AccuracyError("non-finite value in report");
  }
  if (j.is_structured()) {
    for (const auto& e : j) check_finite(e);
  }
}

std::string cell(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string render(const Report& rep, const json& config, OutputFormat fmt) {
  if (fmt == OutputFormat::json) {
    json out = json::object();
    out["config"] = config;
    for (const auto& [k, v] : rep.fields.items()) out[k] = v;
    if (!rep.columns.empty()) {
      json rows = json::array();
      for (const auto& row : rep.rows) {
        json o = json::object();
        for (std::size_t i = 0; i < rep.columns.size(); ++i) o[rep.columns[i]] = row[i];
        rows.push_back(o);
      }
      out["rows"] = rows;
    }
    return out.dump(2) + "\n";
  }
  std::string s;
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + csv_field(cells[i]);
    s += "\r\n";
  };
  if (!rep.columns.empty()) {
    line(rep.columns);
    for (const auto& row : rep.rows) {
      std::vector<std::string> cells;
      for (const auto& v : row) cells.push_back(cell(v));
      line(cells);
    }
  } else {
    std::vector<std::string> head, vals;
    for (const auto& [k, v] : rep.fields.items()) {
      if (v.is_array() && v.size() == 2 && v[0].is_number()) {
        head.push_back(k + "_re");
        vals.push_back(cell(v[0]));
        head.push_back(k + "_im");
        vals.push_back(cell(v[1]));
      } else {
        head.push_back(k);
        vals.push_back(cell(v));
      }
    }
    line(head);
    line(vals);
  }
  return s;
}

unsigned parse_threads(const std::string& s, const char* what) {
  const auto v = Params::parse_int(what, s);
  if (v < 1 || v > 1024) throw ConfigError(std::string(what) + " must lie in [1, 1024]");
  return static_cast<unsigned>(v);
}

}  // namespace

std::vector<std::string> commands() {
  std::vector<std::string> out;
  for (const auto& c : command_table()) out.emplace_back(c.name);
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t lineno = 0;
  const auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string{};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    if (out.count(key)) throw ConfigError(path + ":" + std::to_string(lineno) + ": duplicate key " + key);
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

bool parse_command_line(int argc, const char* const* argv, RunConfig& cfg, std::ostream& out) {
  CLI::App app{"friablelab: experiments on smooth integers in arithmetic progressions"};
  app.name("friablelab");
  app.require_subcommand(1);
  std::map<std::string, std::map<std::string, std::string>> flag_values;
  std::map<std::string, std::map<std::string, CLI::Option*>> flag_opts;
  for (const auto& cmd : command_table()) {
    auto* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->set_help_flag("--help", "print this help message and exit");
    auto& vals = flag_values[cmd.name];
    auto& opts = flag_opts[cmd.name];
    for (const auto& k : cmd.keys) {
      std::string help = k.help;
      if (k.def && *k.def) help += std::string(help.empty() ? "" : " ") + "[default " + k.def + "]";
      if (!k.def) help += std::string(help.empty() ? "" : " ") + "(required)";
      opts[k.name] = sub->add_option(std::string("--") + k.name, vals[k.name], help);
    }
    opts["format"] = sub->add_option("--format", vals["format"], "json or csv [default json]");
    opts["output"] = sub->add_option("--output", vals["output"], "output file [default stdout]");
    opts["threads"] = sub->add_option("--threads", vals["threads"], "worker threads [default 1]");
    opts["config"] = sub->add_option("--config", vals["config"], "key=value file; flags win");
  }
  std::vector<std::string> args;
  for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, out);
    return false;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, out);
    return false;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }
  const auto* sub = app.get_subcommands().front();
  const Command& cmd = find_command(sub->get_name());
  cfg = RunConfig{};
  cfg.command = cmd.name;

  std::map<std::string, std::string> merged;
  for (const auto& k : cmd.keys) {
    if (k.def && *k.def) merged[k.name] = k.def;
  }
  merged["format"] = "json";
  merged["threads"] = "1";
  auto& vals = flag_values[cmd.name];
  auto& opts = flag_opts[cmd.name];
  if (opts["config"]->count()) {
    for (const auto& [key, v] : read_config_file(vals["config"])) {
      if (key == "config") throw ConfigError("config files cannot include other config files");
      if (!opts.count(key)) {
        throw ConfigError("unknown key '" + key + "' for command " + cmd.name);
      }
      merged[key] = v;
    }
  }
  for (const auto& [key, opt] : opts) {
    if (key != "config" && opt->count()) merged[key] = vals[key];
  }

  const std::string fmt = merged["format"];
  if (fmt == "json") {
    cfg.format = OutputFormat::json;
  } else if (fmt == "csv") {
    cfg.format = OutputFormat::csv;
  } else {
    throw ConfigError("format must be json or csv");
  }
  cfg.output = merged.count("output") ? merged["output"] : "";
  cfg.threads = parse_threads(merged["threads"], "threads");
  if (const char* env = std::getenv("FRIABLELAB_THREADS"); env && *env) {
    cfg.threads = parse_threads(env, "FRIABLELAB_THREADS");
  }
  merged.erase("format");
  merged.erase("output");
  merged.erase("threads");
  cfg.params = std::move(merged);
  return true;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const Command& cmd = find_command(cfg.command);
    for (const auto& [key, v] : cfg.params) {
      const bool known = std::any_of(cmd.keys.begin(), cmd.keys.end(),
                                     [&](const Key& k) { return key == k.name; });
      if (!known) throw ConfigError("unknown key '" + key + "' for command " + cmd.name);
    }
    const json config = echo_config(cmd, cfg);
    const Params params(cmd, cfg.params);
    const Report rep = cmd.handler(params, cfg);
    check_finite(rep.fields);
    for (const auto& row : rep.rows) {
      for (const auto& v : row) check_finite(v);
    }
    const std::string text = render(rep, config, cfg.format);
    if (cfg.output.empty()) {
      out << text;
    } else {
      std::ofstream f(cfg.output, std::ios::binary);
      if (!f) throw ConfigError("cannot write " + cfg.output);
      f << text;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "invalid parameters: " << e.what() << "\n";
    return kExitConfig;
  } catch (const CapacityError& e) {
    err << "capacity exceeded: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const AccuracyError& e) {
    err << "accuracy failure: " << e.what() << "\n";
    return kExitAccuracy;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    if (!parse_command_line(argc, argv, cfg, out)) return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  return run(cfg, out, err);
}

}  // namespace friablelab::cli

#include "addcount/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>

#include "addcount/cache.hpp"
#include "addcount/errors.hpp"
#include "addcount/extremal.hpp"
#include "addcount/fourier.hpp"
#include "addcount/json_io.hpp"
#include "addcount/pollard.hpp"

namespace addcount {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::int64_t parse_int(const std::string& tok) {
  std::int64_t v = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end || tok.empty()) throw std::invalid_argument("invalid integer '" + tok + "'");
  return v;
}

BigInt parse_big(const std::string& s) {
  const std::string t = trim(s);
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("invalid nonnegative integer '" + s + "'");
  }
  return BigInt(t);
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(static_cast<int>(parse_int(trim(tok))));
  if (out.empty()) throw std::invalid_argument("empty size list");
  return out;
}

}  // namespace

std::vector<std::int64_t> parse_set_literal(const std::string& text) {
  std::vector<std::int64_t> out;
  if (trim(text).empty()) return out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    const auto dots = tok.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_int(tok));
      continue;
    }
    const std::int64_t lo = parse_int(trim(tok.substr(0, dots)));
    const std::int64_t hi = parse_int(trim(tok.substr(dots + 2)));
    if (hi < lo) throw std::invalid_argument("empty range '" + tok + "'");
    if (hi - lo > 128) throw std::invalid_argument("range '" + tok + "' is longer than any subset of Z_p");
    for (std::int64_t x = lo; x <= hi; ++x) out.push_back(x);
  }
  return out;
}

namespace {

struct Output {
  Json result;
  std::optional<CsvTable> csv;
  std::string human;
  int status = kExitOk;
};

struct Globals {
  std::string format = "human";
  unsigned precision = kDefaultPrecisionBits;
  std::string cache_dir;
  bool no_cache = false;
  unsigned threads = 1;
  std::string recheck;
};

Json without_timing(Json j) {
  if (j.is_object()) {
    j.erase("elapsed_ms");
    for (auto& [key, value] : j.items()) value = without_timing(value);
  } else if (j.is_array()) {
    for (auto& e : j) e = without_timing(e);
  }
  return j;
}

class Session {
 public:
  Session(const Globals& g, std::ostream& err) : g_(g), err_(err) {
    if (g.no_cache) return;
    std::optional<std::filesystem::path> dir;
    if (!g.cache_dir.empty()) {
      dir = g.cache_dir;
    } else {
      dir = ResultCache::default_dir();
    }
    if (dir) cache_ = std::make_unique<ResultCache>(*dir);
  }

  const Globals& globals() const { return g_; }

  Json cached(const std::string& kind, const std::string& key, const std::function<Json()>& compute) {
    if (!cache_) return compute();
    if (auto hit = cache_->get(kind, key)) {
      if (!cache_->claim_spot_check()) return *hit;
      Json fresh = compute();
      if (without_timing(fresh) == without_timing(*hit)) return *hit;
      err_ << "warning: cache entry " << kind << " [" << key << "] failed its spot re-count; replaced\n";
      cache_->put(kind, key, fresh);
      return fresh;
    }
    Json fresh = compute();
    cache_->put(kind, key, fresh);
    return fresh;
  }

 private:
  const Globals& g_;
  std::ostream& err_;
  std::unique_ptr<ResultCache> cache_;
};

Subset parse_set(const PrimeContext& ctx, const std::string& text) {
  return make_subset(ctx, parse_set_literal(text));
}

std::vector<Subset> parse_sets(const PrimeContext& ctx, const std::vector<std::string>& texts) {
  std::vector<Subset> out;
  for (const auto& t : texts) out.push_back(parse_set(ctx, t));
  return out;
}

Json sets_json(const std::vector<Subset>& sets) {
  Json j = Json::array();
  for (const auto& s : sets) j.push_back(to_json(s));
  return j;
}

std::string verdict_human(const TheoremVerdict& v, bool verbose) {
  std::ostringstream os;
  os << v.theorem << " " << v.range << ": " << (v.holds() ? "holds" : "FAILS");
  if (v.threshold) os << " (threshold k* = " << *v.threshold << ")";
  os << "\n";
  for (const auto& pt : v.points) {
    if (!verbose && pt.status == PointStatus::Holds) continue;
    os << "  " << pt.label << ": " << to_string(pt.status) << " - " << pt.detail << "\n";
  }
  return os.str();
}

Output verdict_output(const TheoremVerdict& v, bool verbose) {
  Output o;
  o.result = to_json(v);
  o.csv = csv_table(v);
  o.human = verdict_human(v, verbose);
  o.status = v.holds() ? kExitOk : kExitFailed;
  return o;
}

Output verdict_output(const Json& j, bool verbose) {
  Output o;
  o.result = j;
  CsvTable t;
  t.header = {"theorem", "point", "status", "detail"};
  std::ostringstream os;
  os << j["theorem"].get<std::string>() << " " << j["range"].get<std::string>() << ": "
     << (j["verdict"] == "holds" ? "holds" : "FAILS");
  if (!j["threshold"].is_null()) os << " (threshold k* = " << j["threshold"].get<std::string>() << ")";
  os << "\n";
  for (const auto& pt : j["points"]) {
    t.rows.push_back({j["theorem"], pt["label"], pt["status"], pt["detail"]});
    if (!verbose && pt["status"] == "holds") continue;
    os << "  " << pt["label"].get<std::string>() << ": " << pt["status"].get<std::string>() << " - "
       << pt["detail"].get<std::string>() << "\n";
  }
  o.csv = t;
  o.human = os.str();
  o.status = j["verdict"] == "holds" ? kExitOk : kExitFailed;
  return o;
}

std::string search_human(const Json& r) {
  std::ostringstream os;
  os << (r["kind"] == "sk" ? "s_" + r["k"].get<std::string>() + "(" + std::to_string(r["sizes"][0].get<int>()) + ")"
                           : "s" + r["sizes"].dump())
     << " in Z_" << r["p"].get<int>() << " = " << r["min_value"].get<std::string>() << "\n";
  os << "extremal " << (r["kind"] == "sk" ? "orbits" : "A0") << ":";
  for (const auto& s : r["extremal_orbits"]) os << " " << s.dump();
  os << "\n";
  if (r.contains("extremal_classes")) {
    os << "minimising sets: " << r["extremal_set_count"].get<std::uint64_t>() << " in "
       << r["extremal_classes"].size() << " dilation classes\n";
  }
  return os.str();
}

CsvTable search_csv(const Json& r) {
  CsvTable t;
  t.header = {"kind", "p", "sizes", "k", "min_value", "method", "orbit_rep"};
  std::string sizes;
  for (const auto& s : r["sizes"]) sizes += (sizes.empty() ? "" : " ") + std::to_string(s.get<int>());
  for (const auto& o : r["extremal_orbits"]) {
    std::string rep;
    for (const auto& x : o) rep += (rep.empty() ? "" : " ") + std::to_string(x.get<int>());
    t.rows.push_back({r["kind"], std::to_string(r["p"].get<int>()), sizes, r["k"], r["min_value"], r["method"], rep});
  }
  return t;
}

void flatten(const Json& j, const std::string& path, CsvTable& t) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, t);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", t);
  } else {
    t.rows.push_back({path, j.is_string() ? j.get<std::string>() : j.dump()});
  }
}

void emit(const Globals& g, const std::vector<std::string>& args, const Output& o, std::ostream& out) {
  if (g.format == "json") {
    Json env;
    env["command"] = args;
    env["result"] = o.result;
    out << env.dump(2) << "\n";
  } else if (g.format == "csv") {
    if (o.csv) {
      write_csv(out, *o.csv);
    } else {
      CsvTable t;
      t.header = {"field", "value"};
      flatten(o.result, "", t);
      write_csv(out, t);
    }
  } else {
    out << o.human;
  }
}

std::string subset_list(const std::vector<Subset>& xs) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : " ") + to_string(x);
  return s;
}

// ---- subcommands -----------------------------------------------------------

Output cmd_count(int p, const std::string& k_text, const std::vector<std::string>& set_texts) {
  const PrimeContext ctx(p);
  const auto sets = parse_sets(ctx, set_texts);
  Output o;
  BigInt value;
  if (!k_text.empty()) {
    if (sets.size() != 1) throw std::invalid_argument("count --k takes exactly one --set");
    const BigInt k = parse_big(k_text);
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    value = s_k_count(ctx, sets[0], k);
    o.result["k"] = k.get_str();
  } else {
    if (sets.size() < 2) throw std::invalid_argument("count needs --k with one set, or sets A0 A1 ... Ak");
    value = s_count(ctx, sets[0], std::span<const Subset>(sets).subspan(1));
  }
  o.result["p"] = p;
  o.result["sets"] = sets_json(sets);
  o.result["value"] = value.get_str();
  o.human = value.get_str() + "\n";
  return o;
}

Output cmd_sigma(int p, const std::string& k_text, const std::vector<std::string>& set_texts) {
  const PrimeContext ctx(p);
  const auto sets = parse_sets(ctx, set_texts);
  if (sets.empty()) throw std::invalid_argument("sigma needs at least one --set");
  CountVector sigma;
  Output o;
  if (!k_text.empty()) {
    if (sets.size() != 1) throw std::invalid_argument("sigma --k takes exactly one --set");
    const BigInt k = parse_big(k_text);
    sigma = power_sigma(ctx, sets[0], k);
    o.result["k"] = k.get_str();
  } else {
    sigma = sigma_vector(ctx, sets);
  }
  o.result["p"] = p;
  o.result["sets"] = sets_json(sets);
  o.result["sigma"] = to_json(sigma);
  CsvTable t;
  t.header = {"x", "sigma"};
  std::ostringstream os;
  for (std::size_t x = 0; x < sigma.size(); ++x) {
    t.rows.push_back({std::to_string(x), sigma[x].get_str()});
    os << x << " " << sigma[x] << "\n";
  }
  o.csv = t;
  o.human = os.str();
  return o;
}

Output cmd_pollard(int p, const std::vector<std::string>& set_texts, std::optional<int> a0, std::optional<std::int64_t> r,
                   const std::string& A0_text) {
  const PrimeContext ctx(p);
  const auto sets = parse_sets(ctx, set_texts);
  if (sets.empty()) throw std::invalid_argument("pollard needs at least one --set");
  std::optional<Subset> A0;
  if (!A0_text.empty()) {
    A0 = parse_set(ctx, A0_text);
    if (a0 && *a0 != A0->size()) throw std::invalid_argument("--a0 disagrees with |--A0|");
    a0 = A0->size();
  }
  Output o;
  std::ostringstream hs;
  const CountVector sigma = sigma_vector(ctx, sets);
  const ThresholdProfile prof = threshold_profile(sigma);
  o.result["p"] = p;
  o.result["sets"] = sets_json(sets);
  o.result["sigma"] = to_json(sigma);
  o.result["profile"] = to_json(prof);
  hs << "n_r:";
  for (auto n : prof.n) hs << " " << n;
  hs << "\n";

  if (r) {
    const auto s = pollard_lhs_rhs(ctx, sets, *r);
    o.result["at_r"] = Json{{"r", *r}, {"lhs", s.lhs.get_str()}, {"rhs", s.rhs.get_str()}};
    hs << "r=" << *r << ": lhs " << s.lhs << " >= rhs " << s.rhs << "\n";
  }
  if (a0) {
    std::vector<int> sizes{*a0};
    for (const auto& s : sets) sizes.push_back(s.size());
    const std::int64_t r0 = critical_r0(ctx, sizes);
    o.result["a0"] = *a0;
    o.result["r0"] = r0;
    hs << "r0 = " << r0 << "\n";
    if (r0 >= 1) {
      const auto s = pollard_lhs_rhs(ctx, sets, r0);
      o.result["at_r0"] = Json{{"lhs", s.lhs.get_str()}, {"rhs", s.rhs.get_str()}, {"equality", s.lhs == s.rhs}};
      hs << "at r0: lhs " << s.lhs << ", rhs " << s.rhs << (s.lhs == s.rhs ? " (equality)" : " (strict)") << "\n";
    }
    if (sets.size() == 2) {
      Subset A1 = sets[0];
      Subset A2 = sets[1];
      if (A1.size() > A2.size()) std::swap(A1, A2);
      if (r0 >= 1 && r0 <= A1.size() && A2.size() < p) {
        const EqualityCase eq = classify_equality_k2(ctx, A1, A2, r0);
        o.result["equality_case"] = to_json(eq);
        hs << "equality case: " << to_string(eq.tag);
        if (eq.g) hs << " g=" << *eq.g;
        if (eq.d) hs << " d=" << *eq.d;
        if (eq.vosper_g) hs << " g=" << *eq.vosper_g;
        hs << "\n";
      }
    }
  }
  if (A0) {
    const auto c = check_extremality_conditions(ctx, *A0, sets);
    o.result["A0"] = to_json(*A0);
    o.result["conditions"] = to_json(c);
    hs << "A0 misses N_{r0+1}: " << c.misses_next_level << ", A0 u N_{r0} = Z_p: " << c.covers_group
       << ", Pollard equality: " << c.pollard_equality << " => " << (c.all() ? "extremal" : "not extremal") << "\n";
  }
  o.human = hs.str();
  return o;
}

Output cmd_spectrum(const Globals& g, int p, int a, int depth) {
  const PrimeContext ctx(p);
  const SpectralLevels lv = spectral_levels(ctx, a, depth, g.precision);
  Output o;
  o.result = to_json(lv);
  std::ostringstream hs;
  PrecisionScope scope(lv.precision_bits);
  hs << "p=" << p << " a=" << a << " (" << lv.precision_bits << " bits, err " << lv.err.str(3) << ")\n";
  for (std::size_t i = 0; i < lv.levels.size(); ++i) {
    hs << "m" << i + 1 << " = " << lv.levels[i].magnitude.str(20) << ":";
    for (const auto& at : lv.levels[i].attainers) hs << " " << to_string(at.rep);
    hs << "\n";
  }
  for (std::size_t i = 0; i < lv.gaps.size(); ++i) {
    hs << "gap m" << i + 1 << "-m" << i + 2 << " = " << lv.gaps[i].str(6) << " (" << Real(lv.gaps[i] / lv.err).str(3)
       << " x err)\n";
  }
  o.human = hs.str();
  return o;
}

Output cmd_dft(const Globals& g, int p, const std::string& set_text) {
  const PrimeContext ctx(p);
  const Subset A = parse_set(ctx, set_text);
  const FourierProfile prof = dft_indicator(ctx, A, g.precision);
  Output o;
  o.result = to_json(prof);
  o.result["rho"] = to_json(rho(prof));
  PrecisionScope scope(prof.precision_bits);
  CsvTable t;
  t.header = {"gamma", "magnitude", "arg", "arg_lattice", "arg_residual"};
  std::ostringstream hs;
  for (int gm = 0; gm < p; ++gm) {
    const auto& c = prof.coeffs[static_cast<std::size_t>(gm)];
    t.rows.push_back({std::to_string(gm), to_decimal(c.magnitude), to_decimal(c.arg.value(p)),
                      std::to_string(c.arg.lattice), to_decimal(c.arg.residual)});
    hs << gm << "  |c| = " << c.magnitude.str(20) << "  arg = " << c.arg.value(p).str(20) << "\n";
  }
  o.csv = t;
  o.human = hs.str();
  return o;
}

Output cmd_primary_image(const Globals& g, int p, const std::string& set_text) {
  const PrimeContext ctx(p);
  const Subset D = parse_set(ctx, set_text);
  const PrimaryImage img = primary_image(ctx, D, g.precision);
  const ProjectionScores sc = projection_scores(ctx, img.image, g.precision);
  Output o;
  o.result = to_json(img);
  o.result["order"] = sc.order;
  Json m1 = Json::array();
  for (const auto& m : sc.m1) m1.push_back(to_json(m));
  o.result["m1"] = m1;
  Json m2 = Json::array();
  for (const auto& m : sc.m2_candidates) m2.push_back(to_json(m));
  o.result["m2_candidates"] = m2;
  std::ostringstream hs;
  hs << "D_pri = " << to_string(img.image) << " = " << img.map.xi << "*D + " << img.map.eta << " (gamma " << img.gamma
     << ")\n";
  hs << "projection order:";
  for (int j : sc.order) hs << " " << j;
  hs << "\nM1: " << subset_list(sc.m1) << "\n";
  hs << "M2 candidates: " << subset_list(sc.m2_candidates) << "\n";
  o.human = hs.str();
  return o;
}

Output cmd_optimal_t(int p, int a, const std::string& k_text) {
  const PrimeContext ctx(p);
  const BigInt k = parse_big(k_text);
  const auto ts = optimal_t(ctx, a, k);
  Output o;
  o.result["p"] = p;
  o.result["a"] = a;
  o.result["k"] = k.get_str();
  o.result["translates"] = Json::array();
  std::ostringstream hs;
  CsvTable t;
  t.header = {"t", "theta_lattice", "interval", "s_k"};
  for (int tt : ts) {
    const int L = translate_angle_lattice(ctx, a, tt, k);
    const Subset I = interval(ctx, tt, a);
    const BigInt v = s_k_count(ctx, I, k);
    o.result["translates"].push_back(
        Json{{"t", tt}, {"theta_lattice", L}, {"interval", to_json(I)}, {"s_k", v.get_str()}});
    t.rows.push_back({std::to_string(tt), std::to_string(L), residues_field(I), v.get_str()});
    hs << "t = " << tt << ": theta_t = " << L << "*pi/" << p << ", s_k(" << to_string(I) << ") = " << v << "\n";
  }
  o.csv = t;
  o.human = hs.str();
  return o;
}

Output cmd_angle_check(const Globals& g, int p, std::optional<int> a) {
  const PrimeContext ctx(p);
  std::vector<int> as;
  if (a) {
    as.push_back(*a);
  } else {
    for (int x = 3; x <= p - 3; ++x) as.push_back(x);
  }
  Output o;
  o.result["p"] = p;
  o.result["checks"] = Json::array();
  CsvTable t;
  t.header = {"p", "a", "distance", "err", "off_lattice", "case_interval_holds", "pass"};
  std::ostringstream hs;
  bool all = true;
  for (int x : as) {
    const AngleCheck c = angle_check_punctured(ctx, x, g.precision);
    PrecisionScope scope(g.precision);
    o.result["checks"].push_back(to_json(c));
    t.rows.push_back({std::to_string(p), std::to_string(x), to_decimal(c.distance), to_decimal(c.err),
                      c.off_lattice ? "1" : "0", c.case_interval_holds ? "1" : "0", c.pass() ? "1" : "0"});
    hs << "a=" << x << ": distance " << c.distance.str(12) << " (err " << c.err.str(3) << "), "
       << (c.pass() ? "pass" : "FAIL") << "\n";
    all = all && c.pass();
  }
  o.result["pass"] = all;
  o.csv = t;
  o.human = hs.str();
  o.status = all ? kExitOk : kExitFailed;
  return o;
}

Output cmd_t_good(const Globals& g, int p, int a, std::int64_t t_min, std::int64_t t_max) {
  const PrimeContext ctx(p);
  const TGoodScan sc = t_good_scan(ctx, a, t_min, t_max, g.precision);
  Output o;
  {
    PrecisionScope scope(g.precision);
    o.result = to_json(sc);
  }
  CsvTable t;
  t.header = {"t", "s", "k", "predicted_sign", "cos_sign_matches"};
  std::ostringstream hs;
  for (const auto& pt : sc.points) {
    t.rows.push_back({std::to_string(pt.t), std::to_string(pt.s), pt.k.get_str(), std::to_string(pt.predicted_sign),
                      pt.cos_sign_matches ? "1" : "0"});
    hs << "t=" << pt.t << " s=" << pt.s << " k=" << pt.k << " sign " << (pt.predicted_sign > 0 ? "+" : "-")
       << (pt.cos_sign_matches ? "" : " (MISMATCH)") << "\n";
  }
  o.csv = t;
  o.human = hs.str();
  return o;
}

Output cmd_orbits(int p, int a) {
  const PrimeContext ctx(p);
  const OrbitCatalog cat = build_orbit_catalog(ctx, a);
  Output o;
  o.result = to_json(cat);
  o.csv = csv_table(cat);
  std::ostringstream hs;
  hs << "p=" << p << " a=" << a << ": " << cat.size() << " orbit" << (cat.size() == 1 ? "" : "s") << "\n";
  for (std::size_t i = 0; i < cat.size(); ++i) {
    hs << "  " << to_string(cat.reps[i]) << "  size " << cat.orbit_sizes[i] << "\n";
  }
  o.human = hs.str();
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact counting and minimisation of additive tuples in Z_p", "addcount"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "human"}));
  app.add_option("--precision", g.precision, "Working precision in bits")->check(CLI::Range(64u, kMaxPrecisionBits));
  app.add_option("--cache-dir", g.cache_dir, "Result cache directory (default $ADDCOUNT_CACHE_DIR)");
  app.add_flag("--no-cache", g.no_cache, "Ignore the result cache");
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");
  app.add_option("--recheck", g.recheck, "Re-run the request recorded in a JSON report and compare");

  int p = 0;
  int a = 0;
  std::string k_text;
  std::vector<std::string> sets;

  std::function<Output(Session&)> action;

  auto* count = app.add_subcommand("count", "s(A0; A1..Ak), or s_k(A) with --k");
  count->add_option("--p", p)->required();
  count->add_option("--k", k_text, "Number of summands for s_k");
  count->add_option("--set", sets, "Set literal, e.g. 0,1,3 or -1..12")->allow_extra_args(false)->required();
  count->callback([&] { action = [&](Session&) { return cmd_count(p, k_text, sets); }; });

  auto* sigma = app.add_subcommand("sigma", "sigma(x; A1..Ak), or the k-fold power of one set with --k");
  sigma->add_option("--p", p)->required();
  sigma->add_option("--k", k_text);
  sigma->add_option("--set", sets)->allow_extra_args(false)->required();
  sigma->callback([&] { action = [&](Session&) { return cmd_sigma(p, k_text, sets); }; });

  std::optional<int> a0;
  std::optional<std::int64_t> r;
  std::string A0_text;
  auto* pollard = app.add_subcommand("pollard", "Threshold profile, r0, Pollard sums and the k=2 equality case");
  pollard->add_option("--p", p)->required();
  pollard->add_option("--set", sets, "A1 .. Ak")->allow_extra_args(false)->required();
  pollard->add_option("--a0", a0, "Size of A0 (for r0)");
  pollard->add_option("--r", r, "Evaluate Pollard's sums at r")->check(CLI::PositiveNumber);
  pollard->add_option("--A0", A0_text, "A0, to test the extremality conditions");
  pollard->callback([&] { action = [&](Session&) { return cmd_pollard(p, sets, a0, r, A0_text); }; });

  int depth = 3;
  auto* spectrum = app.add_subcommand("spectrum", "Top spectral levels m1 > m2 > ... and their attaining orbits");
  spectrum->add_option("--p", p)->required();
  spectrum->add_option("--a", a)->required();
  spectrum->add_option("--depth", depth)->check(CLI::PositiveNumber);
  spectrum->callback([&] { action = [&](Session& s) { return cmd_spectrum(s.globals(), p, a, depth); }; });

  std::string set_text;
  auto* dft = app.add_subcommand("dft", "Fourier coefficients of an indicator");
  dft->add_option("--p", p)->required();
  dft->add_option("--set", set_text)->required();
  dft->callback([&] { action = [&](Session& s) { return cmd_dft(s.globals(), p, set_text); }; });

  auto* primary = app.add_subcommand("primary-image", "Primary image and projection ranking of a set");
  primary->add_option("--p", p)->required();
  primary->add_option("--set", set_text)->required();
  primary->callback([&] { action = [&](Session& s) { return cmd_primary_image(s.globals(), p, set_text); }; });

  auto* optt = app.add_subcommand("optimal-t", "Optimal translates of [a] for k != 1 (mod p)");
  optt->add_option("--p", p)->required();
  optt->add_option("--a", a)->required();
  optt->add_option("--k", k_text)->required();
  optt->callback([&] { action = [&](Session&) { return cmd_optimal_t(p, a, k_text); }; });

  std::optional<int> a_opt;
  auto* angle = app.add_subcommand("angle-check", "Argument of the punctured interval's first coefficient");
  angle->add_option("--p", p)->required();
  angle->add_option("--a", a_opt, "Default: every a in [3, p-3]");
  angle->callback([&] { action = [&](Session& s) { return cmd_angle_check(s.globals(), p, a_opt); }; });

  std::int64_t t_min = -10;
  std::int64_t t_max = 10;
  auto* tgood = app.add_subcommand("t-good", "t-good integers s and the predicted sign of cos(s p theta)");
  tgood->add_option("--p", p)->required();
  tgood->add_option("--a", a)->required();
  tgood->add_option("--t-min", t_min);
  tgood->add_option("--t-max", t_max);
  tgood->callback([&] { action = [&](Session& s) { return cmd_t_good(s.globals(), p, a, t_min, t_max); }; });

  std::string sizes_text;
  std::string mode_text = "full";
  bool raw = false;
  auto* minimize = app.add_subcommand("minimize", "Exact minimum of s_k(a) (--a --k) or s(a0..ak) (--sizes)");
  minimize->add_option("--p", p)->required();
  minimize->add_option("--a", a_opt);
  minimize->add_option("--k", k_text);
  minimize->add_option("--sizes", sizes_text, "a0,a1,...,ak");
  minimize->add_option("--mode", mode_text, "For --sizes")->check(CLI::IsMember({"full", "interval"}));
  minimize->add_flag("--raw", raw, "Enumerate every a-set instead of orbit representatives");
  minimize->callback([&] {
    action = [&](Session& s) {
      const PrimeContext ctx(p);
      Output o;
      if (!sizes_text.empty()) {
        if (a_opt || !k_text.empty()) throw std::invalid_argument("use either --sizes or --a with --k");
        const auto sizes = parse_sizes(sizes_text);
        std::string key = "p=" + std::to_string(p) + ";sizes=" + sizes_text + ";mode=" + mode_text;
        o.result = s.cached("minimize-s", key, [&] {
          return to_json(minimize_s_general(ctx, sizes, mode_text == "full" ? GeneralMode::Full : GeneralMode::IntervalOnly));
        });
      } else {
        if (!a_opt || k_text.empty()) throw std::invalid_argument("minimize needs --a and --k, or --sizes");
        const BigInt k = parse_big(k_text);
        std::string key = "p=" + std::to_string(p) + ";a=" + std::to_string(*a_opt) + ";k=" + k.get_str() +
                          ";mode=" + (raw ? "raw" : "orbits");
        o.result = s.cached("minimize-sk", key, [&] {
          SearchOptions opts;
          opts.method = raw ? SearchMethod::ExhaustiveRaw : SearchMethod::ExhaustiveOrbits;
          opts.threads = s.globals().threads;
          return to_json(minimize_sk(ctx, *a_opt, k, opts));
        });
      }
      o.csv = search_csv(o.result);
      o.human = search_human(o.result);
      return o;
    };
  });

  bool verbose = false;
  auto* verify = app.add_subcommand("verify", "Exact-count verification of a theorem");
  verify->require_subcommand(1);
  verify->add_flag("--verbose", verbose, "List every point, not only exceptions");

  std::optional<int> k_small;
  bool all_sizes = false;
  auto* thm1 = verify->add_subcommand("thm1", "Interval extremality (brute force vs intervals)");
  thm1->add_option("--p", p)->required();
  thm1->add_option("--k", k_small, "With --all-sizes");
  thm1->add_option("--sizes", sizes_text, "a0,a1,...,ak");
  thm1->add_flag("--all-sizes", all_sizes);
  thm1->callback([&] {
    action = [&](Session&) {
      const PrimeContext ctx(p);
      if (all_sizes) {
        if (!k_small || !sizes_text.empty()) throw std::invalid_argument("--all-sizes needs --k and no --sizes");
        return verdict_output(verify_thm_interval_extremal_all(ctx, *k_small), verbose);
      }
      if (sizes_text.empty()) throw std::invalid_argument("verify thm1 needs --sizes or --all-sizes");
      const auto sizes = parse_sizes(sizes_text);
      if (k_small && *k_small != static_cast<int>(sizes.size()) - 1) {
        throw std::invalid_argument("--k disagrees with the number of sizes");
      }
      return verdict_output(verify_thm_interval_extremal(ctx, sizes), verbose);
    };
  });

  std::string k_min_text = "2";
  std::string k_max_text = "500";
  auto* thm3 = verify->add_subcommand("thm3", "Extremal sets for k != 1 (mod p)");
  thm3->add_option("--p", p)->required();
  thm3->add_option("--a", a)->required();
  thm3->add_option("--k-min", k_min_text);
  thm3->add_option("--k-max", k_max_text);
  thm3->callback([&] {
    action = [&](Session& s) {
      const PrimeContext ctx(p);
      const BigInt kmin = parse_big(k_min_text);
      const BigInt kmax = parse_big(k_max_text);
      const std::string key = "p=" + std::to_string(p) + ";a=" + std::to_string(a) + ";k=" + kmin.get_str() + ".." +
                              kmax.get_str();
      const Json j = s.cached("verify-thm3", key, [&] {
        return to_json(verify_thm_knot1(ctx, a, kmin, kmax, s.globals().threads));
      });
      return verdict_output(j, verbose);
    };
  });

  std::int64_t s_min = 1;
  std::int64_t s_max = 50;
  auto* thm5 = verify->add_subcommand("thm5", "Extremal sets for k = sp+1");
  thm5->add_option("--p", p)->required();
  thm5->add_option("--a", a)->required();
  thm5->add_option("--s-min", s_min);
  thm5->add_option("--s-max", s_max);
  thm5->callback([&] {
    action = [&](Session& s) {
      const PrimeContext ctx(p);
      const std::string key = "p=" + std::to_string(p) + ";a=" + std::to_string(a) + ";s=" + std::to_string(s_min) +
                              ".." + std::to_string(s_max);
      const Json j = s.cached("verify-thm5", key, [&] {
        return to_json(verify_thm_k1(ctx, a, s_min, s_max, s.globals().threads));
      });
      return verdict_output(j, verbose);
    };
  });

  int p_max = 19;
  auto* cor7 = verify->add_subcommand("cor7", "Orbit counts for every prime up to --p-max");
  cor7->add_option("--p-max", p_max)->check(CLI::Range(3, 61));
  cor7->callback([&] { action = [&](Session&) { return verdict_output(verify_cor7(p_max), verbose); }; });

  std::string scan_mode = "knot1";
  auto* scan = app.add_subcommand("scan-k0", "Least k* from which the large-k statement holds on a window");
  scan->add_option("--p", p)->required();
  scan->add_option("--a", a)->required();
  scan->add_option("--mode", scan_mode)->check(CLI::IsMember({"knot1", "k1-even", "k1-odd"}));
  scan->add_option("--k-max", k_max_text);
  scan->callback([&] {
    action = [&](Session& s) {
      const PrimeContext ctx(p);
      const BigInt kmax = parse_big(k_max_text);
      const std::string key =
          "p=" + std::to_string(p) + ";a=" + std::to_string(a) + ";mode=" + scan_mode + ";k_max=" + kmax.get_str();
      Output o;
      o.result = s.cached("scan-k0", key, [&] {
        return to_json(scan_k0(ctx, a, parse_scan_mode(scan_mode), kmax, s.globals().threads));
      });
      const Json& j = o.result;
      std::ostringstream hs;
      hs << "p=" << p << " a=" << a << " mode " << scan_mode << ": " << j["conclusion"].get<std::string>() << "\n";
      hs << "tested " << j["tested"].get<std::size_t>() << " values of k up to " << j["k_max"].get<std::string>()
         << "\n";
      hs << "k* = " << (j["k_star"].is_null() ? std::string("none") : j["k_star"].get<std::string>())
         << (j["window_complete"].get<bool>() ? "" : " (window [k*, k*+4p] not fully tested)") << "\n";
      hs << "violations:";
      for (const auto& v : j["violations"]) hs << " " << v.get<std::string>();
      hs << (j["violations"].empty() ? " none\n" : "\n");
      for (const auto& b : j["boundary"]) {
        hs << "  k=" << b["k"].get<std::string>() << " " << (b["holds"].get<bool>() ? "holds" : "violated")
           << ": min " << b["min_value"].get<std::string>() << ", expected set " << b["expected_value"].get<std::string>()
           << "\n";
      }
      CsvTable t;
      t.header = {"p", "a", "mode", "k", "holds", "min_value", "expected_value"};
      for (const auto& b : j["boundary"]) {
        t.rows.push_back({std::to_string(p), std::to_string(a), scan_mode, b["k"], b["holds"].get<bool>() ? "1" : "0",
                          b["min_value"], b["expected_value"]});
      }
      o.csv = t;
      o.human = hs.str();
      o.status = (!j["k_star"].is_null() && j["window_complete"].get<bool>()) ? kExitOk : kExitFailed;
      return o;
    };
  });

  auto* orbits = app.add_subcommand("orbits", "Affine-orbit catalog of the a-subsets");
  orbits->add_option("--p", p)->required();
  orbits->add_option("--a", a)->required();
  orbits->callback([&] { action = [&](Session&) { return cmd_orbits(p, a); }; });

  std::vector<std::string> argv_store{"addcount"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (!g.recheck.empty()) {
      if (action) throw std::invalid_argument("--recheck takes no subcommand");
      std::ifstream in(g.recheck);
      if (!in) throw std::invalid_argument("cannot read " + g.recheck);
      const Json report = Json::parse(in, nullptr, false);
      if (report.is_discarded() || !report.contains("command") || !report.contains("result")) {
        throw std::invalid_argument(g.recheck + " is not a JSON report");
      }
      // Re-run uncached with JSON output; drop the recorded output/cache flags.
      std::vector<std::string> again;
      bool skip_value = false;
      for (const auto& a : report["command"]) {
        if (!a.is_string()) throw std::invalid_argument("malformed command in report");
        const auto arg = a.get<std::string>();
        if (skip_value) {
          skip_value = false;
          continue;
        }
        if (arg == "--format" || arg == "--cache-dir") {
          skip_value = true;
          continue;
        }
        if (arg.rfind("--format=", 0) == 0 || arg.rfind("--cache-dir=", 0) == 0 || arg == "--no-cache") continue;
        again.push_back(arg);
      }
      again.push_back("--format=json");
      again.push_back("--no-cache");
      std::ostringstream fresh_out;
      std::ostringstream fresh_err;
      const int status = run(again, fresh_out, fresh_err);
      if (status == kExitUsage) {
        err << fresh_err.str();
        return kExitUsage;
      }
      const Json fresh = Json::parse(fresh_out.str());
      const bool same = without_timing(fresh["result"]) == without_timing(report["result"]);
      out << (same ? "recheck: report reproduced\n" : "recheck: report DIFFERS from a fresh run\n");
      return same ? status : kExitFailed;
    }
    if (!action) {
      out << app.help();
      return kExitUsage;
    }
    Session session(g, err);
    const Output o = action(session);
    emit(g, args, o, out);
    return o.status;
  } catch (const SizeLimitError& e) {
    err << "error: size limit: " << e.what() << "\n";
  } catch (const PrecisionError& e) {
    err << "error: precision: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: invalid argument: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace addcount

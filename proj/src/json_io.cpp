#include "addcount/json_io.hpp"

#include <set>
#include <stdexcept>

namespace addcount {

Json to_json(Subset A) { return Json(A.residues()); }

Subset subset_from_json(const PrimeContext& ctx, const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("subset must be a JSON array of residues");
  std::vector<std::int64_t> xs;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw std::invalid_argument("subset entries must be integers");
    const auto x = e.get<std::int64_t>();
    if (x < 0 || x >= ctx.p()) throw std::invalid_argument("residue " + std::to_string(x) + " outside [0, p)");
    xs.push_back(x);
  }
  return make_subset(ctx, xs);
}

Json to_json(const AffineMap& m) { return Json{{"xi", m.xi}, {"eta", m.eta}}; }

Json to_json(const OrbitCatalog& cat) {
  Json j;
  j["p"] = cat.p;
  j["a"] = cat.a;
  j["reps"] = Json::array();
  for (const auto& r : cat.reps) j["reps"].push_back(to_json(r));
  j["orbit_sizes"] = cat.orbit_sizes;
  return j;
}

Json to_json(const CountVector& v) {
  Json j = Json::array();
  for (const auto& e : v.entries()) j.push_back(e.get_str());
  return j;
}

CountVector count_vector_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("count vector must be a JSON array");
  CountVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) throw std::invalid_argument("count vector entries must be decimal strings");
    v[i] = BigInt(j[i].get<std::string>());
  }
  return v;
}

Json to_json(const ThresholdProfile& prof) {
  Json j;
  j["n"] = prof.n;
  j["r_max"] = prof.r_max;
  return j;
}

Json to_json(const EqualityCase& eq) {
  Json j;
  j["tag"] = to_string(eq.tag);
  j["matching"] = Json::array();
  for (unsigned i = 0; i < static_cast<unsigned>(EqualityCase::Tag::None); ++i) {
    if ((eq.mask >> i) & 1u) j["matching"].push_back(to_string(static_cast<EqualityCase::Tag>(i)));
  }
  if (eq.g) j["g"] = *eq.g;
  if (eq.d) j["d"] = *eq.d;
  if (eq.vosper_g) j["vosper_g"] = *eq.vosper_g;
  return j;
}

Json to_json(const ExtremalityConditions& c) {
  Json j;
  j["r0"] = c.r0;
  j["misses_next_level"] = c.misses_next_level;
  j["covers_group"] = c.covers_group;
  j["pollard_equality"] = c.pollard_equality;
  j["extremal"] = c.all();
  return j;
}

Json to_json(const LatticeAngle& angle, int p) {
  Json j;
  j["value"] = to_decimal(angle.value(p));
  j["lattice"] = angle.lattice;
  j["residual"] = to_decimal(angle.residual);
  j["on_lattice"] = angle.on_lattice;
  return j;
}

Json to_json(const FourierProfile& prof) {
  PrecisionScope scope(prof.precision_bits);
  Json j;
  j["p"] = prof.p;
  j["set"] = to_json(prof.source);
  j["precision_bits"] = prof.precision_bits;
  j["err"] = to_decimal(prof.err);
  j["coeffs"] = Json::array();
  for (const auto& c : prof.coeffs) {
    Json e;
    e["magnitude"] = to_decimal(c.magnitude);
    e["arg"] = to_json(c.arg, prof.p);
    e["arg_err"] = to_decimal(c.arg_err);
    j["coeffs"].push_back(e);
  }
  return j;
}

Json to_json(const RhoValue& r) {
  return Json{{"value", to_decimal(r.value)}, {"err", to_decimal(r.err)}, {"gammas", r.gammas}};
}

Json to_json(const SpectralLevels& levels) {
  PrecisionScope scope(levels.precision_bits);
  Json j;
  j["p"] = levels.p;
  j["a"] = levels.a;
  j["precision_bits"] = levels.precision_bits;
  j["err"] = to_decimal(levels.err);
  j["levels"] = Json::array();
  for (const auto& lv : levels.levels) {
    Json l;
    l["magnitude"] = to_decimal(lv.magnitude);
    l["attainers"] = Json::array();
    for (const auto& at : lv.attainers) l["attainers"].push_back(Json{{"rep", to_json(at.rep)}, {"gammas", at.gammas}});
    j["levels"].push_back(l);
  }
  j["gaps"] = Json::array();
  for (const auto& g : levels.gaps) {
    j["gaps"].push_back(Json{{"gap", to_decimal(g)}, {"margin", to_decimal(g / levels.err)}});
  }
  return j;
}

Json to_json(const PrimaryImage& img) {
  return Json{{"image", to_json(img.image)}, {"map", to_json(img.map)}, {"gamma", img.gamma}};
}

Json to_json(const SpectralValue& v) {
  PrecisionScope scope(v.precision_bits);
  return Json{{"value", to_decimal(v.value)},
              {"imag", to_decimal(v.imag)},
              {"err", to_decimal(v.err)},
              {"precision_bits", v.precision_bits}};
}

Json to_json(const AngleCheck& c) {
  Json j;
  j["p"] = c.p;
  j["a"] = c.a;
  j["arg"] = to_json(c.arg, c.p);
  j["distance"] = to_decimal(c.distance);
  j["err"] = to_decimal(c.err);
  j["off_lattice"] = c.off_lattice;
  j["reduced_size"] = c.reduced_size;
  j["centred_arg"] = to_decimal(c.centred_arg);
  j["case_interval_holds"] = c.case_interval_holds;
  j["pass"] = c.pass();
  return j;
}

Json to_json(const TGoodScan& scan) {
  Json j;
  j["theta"] = to_decimal(scan.theta);
  j["c"] = to_decimal(scan.c);
  j["eps"] = to_decimal(scan.eps);
  j["points"] = Json::array();
  for (const auto& pt : scan.points) {
    j["points"].push_back(Json{{"t", pt.t},
                               {"s", pt.s},
                               {"k", pt.k.get_str()},
                               {"predicted_sign", pt.predicted_sign},
                               {"cos_sign_matches", pt.cos_sign_matches}});
  }
  return j;
}

Json to_json(const SearchReport& rep) {
  Json j;
  j["kind"] = rep.kind;
  j["p"] = rep.p;
  j["sizes"] = rep.sizes;
  j["k"] = rep.k.get_str();
  j["min_value"] = rep.min_value.get_str();
  j["extremal_orbits"] = Json::array();
  for (const auto& s : rep.extremal_orbits) j["extremal_orbits"].push_back(to_json(s));
  if (rep.kind == "sk") {
    j["extremal_classes"] = Json::array();
    for (const auto& s : rep.extremal_classes) j["extremal_classes"].push_back(to_json(s));
    j["extremal_set_count"] = rep.extremal_set_count;
  }
  j["method"] = to_string(rep.method);
  j["elapsed_ms"] = rep.elapsed_ms;
  return j;
}

Json to_json(const TheoremVerdict& v) {
  Json j;
  j["theorem"] = v.theorem;
  j["range"] = v.range;
  j["verdict"] = v.holds() ? "holds" : "fails";
  j["threshold"] = v.threshold ? Json(v.threshold->get_str()) : Json(nullptr);
  j["points"] = Json::array();
  for (const auto& pt : v.points) {
    j["points"].push_back(Json{{"label", pt.label}, {"status", to_string(pt.status)}, {"detail", pt.detail}});
  }
  return j;
}

Json to_json(const ScanReport& rep) {
  auto strings = [](const std::vector<BigInt>& xs) {
    Json a = Json::array();
    for (const auto& x : xs) a.push_back(x.get_str());
    return a;
  };
  Json j;
  j["p"] = rep.p;
  j["a"] = rep.a;
  j["mode"] = to_string(rep.mode);
  j["conclusion"] = rep.conclusion;
  j["k_max"] = rep.k_max.get_str();
  j["k_star"] = rep.k_star ? Json(rep.k_star->get_str()) : Json(nullptr);
  j["window_complete"] = rep.window_complete;
  j["tested"] = rep.tested.size();
  j["violations"] = strings(rep.violations);
  j["boundary"] = Json::array();
  for (const auto& b : rep.boundary) {
    j["boundary"].push_back(Json{{"k", b.k.get_str()},
                                 {"holds", b.holds},
                                 {"min_value", b.min_value.get_str()},
                                 {"expected_value", b.expected_value.get_str()}});
  }
  return j;
}

std::string residues_field(Subset A) {
  std::string out;
  for (int x : A.residues()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(x);
  }
  return out;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string sizes_field(const std::vector<int>& xs) {
  std::string out;
  for (int x : xs) {
    if (!out.empty()) out += ' ';
    out += std::to_string(x);
  }
  return out;
}

}  // namespace

void write_csv(std::ostream& out, const CsvTable& table) {
  out << "version";
  for (const auto& h : table.header) out << ',' << csv_escape(h);
  out << '\n';
  for (const auto& row : table.rows) {
    out << kCsvVersion;
    for (const auto& cell : row) out << ',' << csv_escape(cell);
    out << '\n';
  }
}

CsvTable csv_table(const SearchReport& rep) {
  CsvTable t;
  t.header = {"kind", "p", "sizes", "k", "min_value", "method", "orbit_rep"};
  for (const auto& o : rep.extremal_orbits) {
    t.rows.push_back({rep.kind, std::to_string(rep.p), sizes_field(rep.sizes), rep.k.get_str(), rep.min_value.get_str(),
                      to_string(rep.method), residues_field(o)});
  }
  return t;
}

CsvTable csv_table(const TheoremVerdict& v) {
  CsvTable t;
  t.header = {"theorem", "point", "status", "detail"};
  for (const auto& pt : v.points) t.rows.push_back({v.theorem, pt.label, to_string(pt.status), pt.detail});
  return t;
}

CsvTable csv_table(const ScanReport& rep) {
  CsvTable t;
  t.header = {"p", "a", "mode", "k", "holds", "min_value", "expected_value"};
  for (const auto& b : rep.boundary) {
    t.rows.push_back({std::to_string(rep.p), std::to_string(rep.a), to_string(rep.mode), b.k.get_str(),
                      b.holds ? "1" : "0", b.min_value.get_str(), b.expected_value.get_str()});
  }
  return t;
}

CsvTable csv_table(const OrbitCatalog& cat) {
  CsvTable t;
  t.header = {"p", "a", "rep", "orbit_size"};
  for (std::size_t i = 0; i < cat.size(); ++i) {
    t.rows.push_back({std::to_string(cat.p), std::to_string(cat.a), residues_field(cat.reps[i]),
                      std::to_string(cat.orbit_sizes[i])});
  }
  return t;
}

}  // namespace addcount

#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <regex>
#include <sstream>

#include "sczech/error.hpp"
#include "sczech/parallel.hpp"
#include "sczech/sampling.hpp"

namespace sczech::cli {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

i64 parse_i64(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidArgument, "bad integer in " + what + ": '" + s + "'");
  }
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidArgument, "bad number in " + what + ": '" + s + "'");
  }
}

}  // namespace

QuadInt parse_quadint(const std::string& text) {
  std::string s;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text.compare(i, 2, "\xCF\x89") == 0) {  // UTF-8 omega
      s += 'w';
      ++i;
    } else if (!std::isspace(static_cast<unsigned char>(text[i]))) {
      s += text[i];
    }
  }
  static const std::regex pure_a(R"(^([+-]?\d+)$)");
  static const std::regex pure_b(R"(^([+-]?)(?:(\d+)\*)?w$)");
  static const std::regex both(R"(^([+-]?\d+)([+-])(?:(\d+)\*)?w$)");
  std::smatch m;
  if (std::regex_match(s, m, pure_a)) return {parse_i64(m[1], text), 0};
  if (std::regex_match(s, m, pure_b)) {
    const i64 b = m[2].matched ? parse_i64(m[2], text) : 1;
    return {0, m[1] == "-" ? -b : b};
  }
  if (std::regex_match(s, m, both)) {
    const i64 b = m[3].matched ? parse_i64(m[3], text) : 1;
    return {parse_i64(m[1], text), m[2] == "-" ? -b : b};
  }
  throw Error(ErrorKind::InvalidArgument, "cannot parse '" + text + "' as a+b*w");
}

std::string format_quadint(QuadInt z) {
  if (z.b == 0) return std::to_string(z.a);
  const i64 ab = z.b < 0 ? -z.b : z.b;
  const std::string wpart = ab == 1 ? "w" : std::to_string(ab) + "*w";
  if (z.a == 0) return (z.b < 0 ? "-" : "") + wpart;
  return std::to_string(z.a) + (z.b < 0 ? "-" : "+") + wpart;
}

cplx parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {parse_double(text, "complex value"), 0.0};
  return {parse_double(text.substr(0, comma), "complex value"), parse_double(text.substr(comma + 1), "complex value")};
}

namespace {

void flatten_into(const json& j, const std::string& path, std::string& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten_into(*it, path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten_into(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    std::string v = j.is_string() ? j.get<std::string>() : j.dump();
    if (v.find_first_of(",\"") != std::string::npos) {
      std::string q = "\"";
      for (char ch : v) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      v = q + "\"";
    }
    out += path + "," + v + "\n";
  }
}

}  // namespace

std::string flatten_csv(const json& j) {
  std::string out = "key,value\n";
  flatten_into(j, "", out);
  return out;
}

void RunConfig::validate() const {
  make_field(d_K);  // throws for bad discriminants
  if (jobs < 1) throw Error(ErrorKind::InvalidArgument, "--jobs must be >= 1");
  if (modes < 0) throw Error(ErrorKind::InvalidArgument, "--modes must be >= 0");
  if (bins < 1) throw Error(ErrorKind::InvalidArgument, "--bins must be >= 1");
  if (X && !(*X > 0 && std::isfinite(*X))) throw Error(ErrorKind::InvalidArgument, "--x must be positive");
  for (double x : x_grid)
    if (!(x > 0 && std::isfinite(x))) throw Error(ErrorKind::InvalidArgument, "--x-grid entries must be positive");
  for (double r : r_values)
    if (!std::isfinite(r)) throw Error(ErrorKind::InvalidArgument, "--r must be finite");
  for (double t : {tol.dual_path, tol.structural, tol.compositional, tol.identity})
    if (!(t > 0)) throw Error(ErrorKind::InvalidArgument, "tolerances must be positive");
  if (convention != "auto") convention_from_string(convention);
}

json RunConfig::to_json() const {
  json j;
  j["command"] = command;
  j["d_K"] = d_K;
  j["tol"] = {{"dual_path", tol.dual_path},
              {"structural", tol.structural},
              {"compositional", tol.compositional},
              {"identity", tol.identity}};
  j["X"] = X ? json(*X) : json(nullptr);
  j["x_grid"] = x_grid;
  j["r"] = r_values;
  j["modes"] = modes;
  j["bins"] = bins;
  j["format"] = format == Format::Json ? "json" : "csv";
  j["convention"] = convention;
  j["seed"] = seed ? json(*seed) : json(nullptr);
  return j;
}

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

struct Check {
  std::string name;
  double max_error = 0;
  double tol = 0;
  bool pass() const { return max_error < tol; }
};

json to_json_value(const Check& c) {
  return {{"name", c.name}, {"max_error", c.max_error}, {"tol", c.tol}, {"pass", c.pass()}};
}

struct ResolvedConvention {
  Convention conv = Convention::C3;
  json info;
};

ResolvedConvention resolve_convention(const RunConfig& cfg, const LatticeInvariants& inv) {
  if (inv.field.is_degenerate()) return {Convention::C3, {{"selected", nullptr}, {"source", "not applicable"}}};
  if (cfg.convention != "auto") {
    const Convention c = convention_from_string(cfg.convention);
    return {c, {{"selected", std::string(to_string(c))}, {"source", "override"}}};
  }
  const ConventionSweep sweep = sweep_conventions(inv);
  json info = sczech::to_json_value(sweep);
  info["source"] = "sweep";
  return {sweep.selected, info};
}

json short_convention(const ResolvedConvention& rc) {
  return {{"selected", rc.info["selected"]}, {"source", rc.info["source"]}};
}

class Runner {
 public:
  Runner(RunConfig cfg, std::ostream& out) : cfg_(std::move(cfg)), out_(out) {}

  int dispatch();

  RunConfig& config() { return cfg_; }
  std::string c_text, d_text, m_text = "0", n_text = "0", alpha_text = "0", s_text;
  std::string suite;
  i64 max_norm = 50;

 private:
  const LatticeInvariants& inv() {
    if (!inv_) inv_ = lattice_invariants(make_field(cfg_.d_K));
    return *inv_;
  }
  const ResolvedConvention& convention() {
    if (!conv_) conv_ = resolve_convention(cfg_, inv());
    return *conv_;
  }
  double tol_or(double t) const { return tol_override ? *tol_override : t; }

  json envelope() {
    json j;
    j["tool"] = "sczech";
    j["version"] = kToolVersion;
    j["config"] = cfg_.to_json();
    if (tol_override) j["config"]["tol_override"] = *tol_override;
    j["convention"] = convention().info;
    return j;
  }

  std::string csv_header() {
    json cfg = cfg_.to_json();
    std::string h = "# sczech " + std::string(kToolVersion) + "\n# config " + cfg.dump() + "\n";
    if (conv_) h += "# convention " + short_convention(*conv_).dump() + "\n";
    return h;
  }

  void emit(const std::string& text) {
    if (cfg_.out.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(cfg_.out, std::ios::binary);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot open output file " + cfg_.out);
    f << text;
  }

  void emit_json(const json& j) {
    if (cfg_.format == Format::Json)
      emit(dump(j) + "\n");
    else
      emit(csv_header() + flatten_csv(j));
  }

  std::vector<double> grid_or(std::vector<double> fallback) const {
    if (!cfg_.x_grid.empty()) return cfg_.x_grid;
    if (cfg_.X) return {*cfg_.X};
    return fallback;
  }

  int field_info();
  int dedekind();
  int verify();
  int weyl();
  int count();
  int kloosterman();
  int identity();
  int equidist();
  int probe();
  int phi_values();

  std::vector<Check> suite_periodicity();
  std::vector<Check> suite_homomorphism();
  std::vector<Check> suite_identity(json& diagnostics);
  std::vector<Check> suite_duality();
  std::vector<Check> suite_counting();

 public:
  std::optional<double> tol_override;

 private:
  RunConfig cfg_;
  std::ostream& out_;
  std::optional<LatticeInvariants> inv_;
  std::optional<ResolvedConvention> conv_;
};

int Runner::dispatch() {
  cfg_.validate();
  const std::string& c = cfg_.command;
  if (c == "field-info") return field_info();
  if (c == "dedekind") return dedekind();
  if (c == "verify") return verify();
  if (c == "weyl") return weyl();
  if (c == "count") return count();
  if (c == "kloosterman") return kloosterman();
  if (c == "identity") return identity();
  if (c == "equidist") return equidist();
  if (c == "probe") return probe();
  if (c == "phi-values") return phi_values();
  throw Error(ErrorKind::InvalidArgument, "unknown command " + c);
}

int Runner::field_info() {
  const auto& iv = inv();
  const FieldParams& f = iv.field;
  json j = envelope();
  json r = sczech::to_json_value(f);
  r["degenerate"] = f.is_degenerate();
  r["zeta_K_2"] = zeta_K(f);
  r["humbert_volume"] = humbert_volume(f);
  r["E2_0"] = E2_0(iv);
  r["E2_0_divisor_route"] = iv.s2_divisor.real();
  r["E2_0_vanishes"] = std::abs(E2_0(iv)) < 1e-10;
  r["eta_1"] = sczech::to_json_value(iv.eta_one);
  r["eta_w"] = sczech::to_json_value(iv.eta_omega);
  r["t"] = sczech::to_json_value(iv.t);
  r["pi_over_area"] = iv.pi_over_area();
  r["dual_basis"] = sczech::to_json_value(dual_basis(f));
  j["result"] = r;
  emit_json(j);
  return 0;
}

int Runner::dedekind() {
  const auto& iv = inv();
  const FieldParams& f = iv.field;
  const QuadInt c = parse_quadint(c_text), d = parse_quadint(d_text);
  if (c.is_zero()) throw Error(ErrorKind::ZeroModulus, "c must be nonzero");
  if (!is_unimodular(c, d, f)) throw Error(ErrorKind::NotUnimodular, "(c, d) is not a unimodular pair");
  const SL2Matrix m = bezout_sl2(c, d, f);
  json r;
  r["c"] = format_quadint(c);
  r["d"] = format_quadint(d);
  r["D"] = sczech::to_json_value(elliptic_D(c, d, iv));
  r["matrix"] = sczech::to_json_value(m);
  r["phi"] = sczech::to_json_value(phi(m, iv).value);
  if (f.is_degenerate()) {
    r["D_tilde"] = nullptr;
    r["phi_tilde"] = nullptr;
  } else {
    const cplx dt = normalize_by_e2(elliptic_D(c, d, iv), iv);
    r["D_tilde"] = dt.real();
    r["D_tilde_imag"] = dt.imag();
    r["phi_tilde"] = phi_tilde(m, iv);
  }
  json j = envelope();
  j["result"] = r;
  emit_json(j);
  return 0;
}

std::vector<Check> Runner::suite_periodicity() {
  const auto& iv = inv();
  const FieldParams& f = iv.field;
  Rng rng(kDefaultSeed);
  const double tol = tol_or(cfg_.tol.structural);
  Check per1{"E1(z+1) = E1(z)", 0, tol}, perw{"E1(z+w) = E1(z)", 0, tol}, odd{"E1(-z) = -E1(z)", 0, tol},
      cj{"E1(conj z) = conj E1(z)", 0, tol}, tq{"|t - pi/A|", 0, tol}, s2{"E2(0) two routes", 0, tol};
  for (int i = 0; i < 100; ++i) {
    const cplx z = random_point(rng, 1.5);
    const cplx v = E1(z, iv);
    per1.max_error = std::max(per1.max_error, std::abs(E1(z + 1.0, iv) - v));
    perw.max_error = std::max(perw.max_error, std::abs(E1(z + f.omega, iv) - v));
    odd.max_error = std::max(odd.max_error, std::abs(E1(-z, iv) + v));
    cj.max_error = std::max(cj.max_error, std::abs(E1(std::conj(z), iv) - std::conj(v)));
  }
  tq.max_error = std::abs(iv.t - iv.pi_over_area());
  s2.max_error = std::abs(iv.s2 - iv.s2_divisor);
  return {per1, perw, odd, cj, tq, s2};
}

std::vector<Check> Runner::suite_homomorphism() {
  const auto& iv = inv();
  const FieldParams& f = iv.field;
  Rng rng(kDefaultSeed);
  Check hom{"Phi(M1 M2) = Phi(M1) + Phi(M2)", 0, tol_or(cfg_.tol.compositional)};
  Check inv_check{"Phi(M^-1) = -Phi(M)", 0, tol_or(cfg_.tol.compositional)};
  Check anti{"conj Phi(M) = -Phi(M)", 0, tol_or(cfg_.tol.compositional)};
  for (int i = 0; i < 200; ++i) {
    const SL2Matrix m1 = random_sl2(rng, 100, f), m2 = random_sl2(rng, 100, f);
    const cplx p1 = phi(m1, iv).value, p2 = phi(m2, iv).value;
    hom.max_error = std::max(hom.max_error, std::abs(phi(mul(m1, m2, f), iv).value - p1 - p2));
    inv_check.max_error = std::max(inv_check.max_error, std::abs(phi(inverse(m1), iv).value + p1));
    anti.max_error = std::max(anti.max_error, std::abs(std::conj(p1) + p1));
  }
  return {hom, inv_check, anti};
}

std::vector<Check> Runner::suite_identity(json& diagnostics) {
  const auto& iv = inv();
  if (iv.field.is_degenerate()) throw Error(ErrorKind::DegenerateField, "identity needs E2(0) != 0");
  const Convention conv = convention().conv;
  const std::vector<double> rs =
      cfg_.r_values.empty() ? std::vector<double>{1, 2, 0.5, 1.7, kSqrt2} : cfg_.r_values;
  Check lit{"sum_d e(r D~) = S(m, n, c, chi_alpha)", 0, tol_or(cfg_.tol.identity)};
  double unshifted = 0;
  const auto cs = enumerate_by_norm(std::sqrt(static_cast<double>(max_norm)) + 1e-9, iv.field);
  const auto terms = ordered_map(cs.size(), cfg_.jobs, [&](std::size_t i) { return modulus_terms(cs[i], iv); });
  for (const auto& t : terms)
    for (double r : rs) {
      const IdentityRecord rec = identity_check(t, r, iv, conv);
      lit.max_error = std::max(lit.max_error, rec.residual);
      unshifted = std::max(unshifted, rec.residual_unshifted);
    }
  diagnostics["max_norm"] = max_norm;
  diagnostics["moduli"] = cs.size();
  diagnostics["r_values"] = rs;
  diagnostics["max_residual_alpha_minus_r_m_n_zero"] = unshifted;
  return {lit};
}

std::vector<Check> Runner::suite_duality() {
  const auto& iv = inv();
  const FieldParams& f = iv.field;
  const DualLatticeBasis db = dual_basis(f);
  Check integ{"<m, lambda> integral on the dual basis", 0, tol_or(cfg_.tol.dual_path)};
  Rng rng(kDefaultSeed);
  for (int i = 0; i < 20; ++i) {
    const QuadInt lam = random_element(rng, 200, f);
    for (cplx m : {db.m1, db.m2}) {
      const double p = pairing(m, embed(lam, f));
      integ.max_error = std::max(integ.max_error, std::abs(p - std::round(p)));
    }
  }
  Check kron{"<m_i, basis_j> = delta_ij", 0, tol_or(cfg_.tol.dual_path)};
  const cplx basis[2] = {1.0, f.omega};
  const cplx ms[2] = {db.m1, db.m2};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      kron.max_error = std::max(kron.max_error, std::abs(pairing(ms[a], basis[b]) - (a == b ? 1.0 : 0.0)));
  std::vector<Check> out{integ, kron};
  if (!f.is_degenerate()) {
    // Kloosterman sums must not depend on the chosen representatives d + t c.
    Check rep{"S independent of representatives", 0, tol_or(cfg_.tol.structural)};
    const Convention conv = convention().conv;
    const cplx m = dual_element(db, 1, -1), n = dual_element(db, 2, 1);
    for (const auto& c : enumerate_by_norm(std::sqrt(20.0), f)) {
      const ModulusTerms t = modulus_terms(c, iv);
      const cplx base = s_infinity(t, m, n, 0.37, iv, conv);
      std::vector<SL2Matrix> shifted;
      for (const auto& g : t.gammas) {
        const QuadInt s = random_element(rng, 9, f);
        shifted.push_back(mul(g, translation(s), f));
      }
      rep.max_error = std::max(rep.max_error, std::abs(s_infinity_over(shifted, m, n, 0.37, iv, conv) - base));
    }
    out.push_back(rep);
  }
  return out;
}

std::vector<Check> Runner::suite_counting() {
  const auto& iv = inv();
  const FieldParams& f = iv.field;
  // exact checks: error counts mismatches, tolerance 1 means "none allowed"
  Check phi_k{"coprime residues = euler_phi_K(c)", 0, 1};
  Check triv{"S(0, 0, c, 1) = coprime residue count", 0, 1};
  Check mono{"N(X) non-decreasing", 0, 1};
  for (const auto& c : enumerate_by_norm(std::sqrt(100.0) + 1e-9, f)) {
    const auto cr = coprime_residues(c, f);
    if (static_cast<i64>(cr.size()) != euler_phi_K(c, f)) phi_k.max_error += 1;
    if (!f.is_degenerate()) {
      const cplx s = s_infinity(0.0, 0.0, c, 0.0, iv, convention().conv);
      if (std::abs(s - cplx(static_cast<double>(cr.size()), 0)) > 1e-9) triv.max_error += 1;
    }
  }
  i64 prev = 0;
  for (double X : {2.0, 3.0, 4.0, 6.0, 8.0}) {
    const CountRecord rec = coset_count(X, f, cfg_.jobs);
    if (rec.N_X < prev) mono.max_error += 1;
    prev = rec.N_X;
  }
  std::vector<Check> out{phi_k, mono};
  if (!f.is_degenerate()) out.push_back(triv);
  return out;
}

int Runner::verify() {
  std::vector<Check> checks;
  json diagnostics = json::object();
  if (suite == "periodicity")
    checks = suite_periodicity();
  else if (suite == "homomorphism")
    checks = suite_homomorphism();
  else if (suite == "identity")
    checks = suite_identity(diagnostics);
  else if (suite == "duality")
    checks = suite_duality();
  else if (suite == "counting")
    checks = suite_counting();
  else
    throw Error(ErrorKind::InvalidArgument, "unknown suite " + suite);

  bool all = true;
  json arr = json::array();
  for (const auto& c : checks) {
    arr.push_back(to_json_value(c));
    all = all && c.pass();
  }
  json j = envelope();
  j["suite"] = suite;
  j["checks"] = arr;
  if (!diagnostics.empty()) j["diagnostics"] = diagnostics;
  j["pass"] = all;
  emit_json(j);
  return all ? 0 : 1;
}

int Runner::weyl() {
  const auto& iv = inv();
  if (iv.field.is_degenerate()) throw Error(ErrorKind::DegenerateField, "D is identically zero for this field");
  const auto grid = grid_or({});
  if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "weyl needs --x or --x-grid");
  const std::vector<double> rs = cfg_.r_values.empty() ? std::vector<double>{1.0} : cfg_.r_values;
  const int modes = std::max(cfg_.modes, 1);
  const json conv = short_convention(convention());
  json results = json::array();
  std::string csv = csv_header() + "d_K,X,r,n,re,im,count\n";
  for (double r : rs) {
    const EquidistReport rep = equidist_experiment(grid, r, modes, 1, iv, cfg_.jobs);
    for (const auto& p : rep.points) {
      json o = sczech::to_json_value(p);
      json row;
      row["d_K"] = rep.d_K;
      row["X"] = p.X;
      row["r"] = r;
      row["modes"] = o["modes"];
      row["count"] = p.count;
      row["convention"] = conv;
      results.push_back(row);
      for (std::size_t n = 0; n < p.modes.size(); ++n)
        csv += std::to_string(rep.d_K) + "," + num(p.X) + "," + num(r) + "," + std::to_string(n + 1) + "," +
               num(p.modes[n].real()) + "," + num(p.modes[n].imag()) + "," + std::to_string(p.count) + "\n";
    }
  }
  if (cfg_.format == Format::Csv) {
    emit(csv);
  } else {
    json j = envelope();
    j["results"] = results;
    emit(dump(j) + "\n");
  }
  return 0;
}

int Runner::count() {
  const FieldParams& f = inv().field;
  const auto grid = grid_or({});
  if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "count needs --x or --x-grid");
  json results = json::array();
  std::string csv = csv_header() +
                    "X,N_X,pair_count,predicted_prop,predicted_nx,predicted_cosets,ratio_prop,ratio_nx,"
                    "ratio_cosets,pair_ratio_prop,pair_ratio_nx\n";
  // (count, constant) combinations that stay within 10% at every X
  struct Combo {
    const char* count;
    const char* constant;
    double CountRecord::*ratio;
    bool ok = true;
  };
  std::vector<Combo> combos{{"N_X", "predicted_prop", &CountRecord::ratio_prop},
                            {"N_X", "predicted_nx", &CountRecord::ratio_nx},
                            {"N_X", "predicted_cosets", &CountRecord::ratio_cosets},
                            {"pair_count", "predicted_prop", &CountRecord::pair_ratio_prop},
                            {"pair_count", "predicted_nx", &CountRecord::pair_ratio_nx}};
  for (double X : grid) {
    const CountRecord rec = coset_count(X, f, cfg_.jobs);
    json o = sczech::to_json_value(rec);
    o["d_K"] = f.d_K;
    results.push_back(o);
    for (auto& c : combos) c.ok = c.ok && std::abs(rec.*c.ratio - 1.0) <= 0.1;
    csv += num(rec.X) + "," + std::to_string(rec.N_X) + "," + std::to_string(rec.pair_count) + "," +
           num(rec.predicted_prop) + "," + num(rec.predicted_nx) + "," + num(rec.predicted_cosets) + "," +
           num(rec.ratio_prop) + "," + num(rec.ratio_nx) + "," + num(rec.ratio_cosets) + "," +
           num(rec.pair_ratio_prop) + "," + num(rec.pair_ratio_nx) + "\n";
  }
  json matches = json::array();
  for (const auto& c : combos)
    if (c.ok) matches.push_back({{"count", c.count}, {"constant", c.constant}});
  if (cfg_.format == Format::Csv) {
    emit(csv);
  } else {
    json j = envelope();
    j["results"] = results;
    j["within_10_percent_at_every_X"] = matches;
    emit(dump(j) + "\n");
  }
  return 0;
}

int Runner::kloosterman() {
  const auto& iv = inv();
  if (iv.field.is_degenerate()) throw Error(ErrorKind::DegenerateField, "the character needs E2(0) != 0");
  const cplx m = parse_complex(m_text), n = parse_complex(n_text), alpha = parse_complex(alpha_text);
  const Convention conv = convention().conv;
  json j = envelope();
  j["m"] = sczech::to_json_value(m);
  j["n"] = sczech::to_json_value(n);
  j["alpha"] = sczech::to_json_value(alpha);
  j["m_in_dual_lattice"] = in_dual_lattice(m, iv.field);
  j["n_in_dual_lattice"] = in_dual_lattice(n, iv.field);
  if (!s_text.empty()) {
    if (!cfg_.X) throw Error(ErrorKind::InvalidArgument, "--s needs --x");
    const cplx s = parse_complex(s_text);
    j["s"] = sczech::to_json_value(s);
    j["X"] = *cfg_.X;
    j["zeta_partial"] = sczech::to_json_value(zeta_partial(m, n, s, alpha, *cfg_.X, iv, conv, cfg_.jobs));
    emit_json(j);
    return 0;
  }
  std::vector<QuadInt> cs;
  if (!c_text.empty())
    cs.push_back(parse_quadint(c_text));
  else if (cfg_.X)
    cs = enumerate_by_norm(*cfg_.X, iv.field);
  else
    throw Error(ErrorKind::InvalidArgument, "kloosterman needs --c or --x");
  for (const auto& c : cs)
    if (c.is_zero()) throw Error(ErrorKind::ZeroModulus, "c must be nonzero");
  const auto values =
      ordered_map(cs.size(), cfg_.jobs, [&](std::size_t i) { return s_infinity(m, n, cs[i], alpha, iv, conv); });
  json rows = json::array();
  for (std::size_t i = 0; i < cs.size(); ++i)
    rows.push_back({{"c", format_quadint(cs[i])}, {"norm_c", norm(cs[i], iv.field)}, {"S", sczech::to_json_value(values[i])}});
  j["results"] = rows;
  emit_json(j);
  return 0;
}

int Runner::identity() {
  const auto& iv = inv();
  if (iv.field.is_degenerate()) throw Error(ErrorKind::DegenerateField, "identity needs E2(0) != 0");
  const Convention conv = convention().conv;
  const std::vector<double> rs =
      cfg_.r_values.empty() ? std::vector<double>{1, 2, 0.5, 1.7, kSqrt2} : cfg_.r_values;
  std::vector<QuadInt> cs;
  if (!c_text.empty())
    cs.push_back(parse_quadint(c_text));
  else if (cfg_.X)
    cs = enumerate_by_norm(*cfg_.X, iv.field);
  else
    cs = enumerate_by_norm(std::sqrt(static_cast<double>(max_norm)) + 1e-9, iv.field);
  for (const auto& c : cs)
    if (c.is_zero()) throw Error(ErrorKind::ZeroModulus, "c must be nonzero");
  const auto recs = ordered_map(cs.size(), cfg_.jobs, [&](std::size_t i) {
    const ModulusTerms t = modulus_terms(cs[i], iv);
    std::vector<IdentityRecord> out;
    for (double r : rs) out.push_back(identity_check(t, r, iv, conv));
    return out;
  });
  json rows = json::array();
  double worst = 0;
  std::string csv = csv_header() + "c,r,m,alpha,lhs_re,lhs_im,rhs_re,rhs_im,residual,residual_unshifted\n";
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (const auto& rec : recs[i]) {
      json o = sczech::to_json_value(rec);
      o["c"] = format_quadint(cs[i]);
      rows.push_back(o);
      worst = std::max(worst, rec.residual);
      csv += format_quadint(cs[i]) + "," + num(rec.r) + "," + num(rec.m) + "," + num(rec.alpha) + "," +
             num(rec.lhs.real()) + "," + num(rec.lhs.imag()) + "," + num(rec.rhs.real()) + "," +
             num(rec.rhs.imag()) + "," + num(rec.residual) + "," + num(rec.residual_unshifted) + "\n";
    }
  if (cfg_.format == Format::Csv) {
    emit(csv);
  } else {
    json j = envelope();
    j["results"] = rows;
    j["max_residual"] = worst;
    emit(dump(j) + "\n");
  }
  return 0;
}

int Runner::equidist() {
  const auto& iv = inv();
  if (iv.field.is_degenerate()) throw Error(ErrorKind::DegenerateField, "D is identically zero for this field");
  const auto grid = grid_or({8, 12, 16, 20, 25});
  const std::vector<double> rs = cfg_.r_values.empty() ? std::vector<double>{1.0} : cfg_.r_values;
  const json conv = short_convention(convention());
  json results = json::array();
  std::string csv = csv_header() + "d_K,X,r,n,re,im,count,discrepancy\n";
  for (double r : rs) {
    const EquidistReport rep = equidist_experiment(grid, r, cfg_.modes, cfg_.bins, iv, cfg_.jobs);
    for (const auto& p : rep.points) {
      json o = sczech::to_json_value(p);
      json row;
      row["d_K"] = rep.d_K;
      row["X"] = p.X;
      row["r"] = r;
      row["modes"] = o["modes"];
      row["count"] = p.count;
      row["discrepancy"] = p.discrepancy;
      row["histogram"] = o["histogram"];
      row["convention"] = conv;
      results.push_back(row);
      for (std::size_t n = 0; n < p.modes.size(); ++n)
        csv += std::to_string(rep.d_K) + "," + num(p.X) + "," + num(r) + "," + std::to_string(n + 1) + "," +
               num(p.modes[n].real()) + "," + num(p.modes[n].imag()) + "," + std::to_string(p.count) + "," +
               num(p.discrepancy) + "\n";
    }
  }
  if (cfg_.format == Format::Csv) {
    emit(csv);
  } else {
    json j = envelope();
    j["results"] = results;
    emit(dump(j) + "\n");
  }
  return 0;
}

int Runner::probe() {
  const auto& iv = inv();
  if (iv.field.is_degenerate()) throw Error(ErrorKind::DegenerateField, "the character needs E2(0) != 0");
  cplx m = parse_complex(m_text), n = parse_complex(n_text), alpha = parse_complex(alpha_text);
  if (!cfg_.r_values.empty()) {
    // parameters the Dedekind-sum application uses for a given r
    const double r = cfg_.r_values.front();
    m = n = std::floor(-r);
    alpha = -r + std::floor(-r);
  }
  const auto grid = grid_or({5, 10, 15, 20, 25, 30, 35, 40});
  const Theorem2Probe p = theorem2_probe(m, n, alpha, grid, iv, convention().conv, cfg_.jobs);
  json j = envelope();
  j["result"] = sczech::to_json_value(p);
  emit_json(j);
  return 0;
}

int Runner::phi_values() {
  const auto& iv = inv();
  if (iv.field.is_degenerate()) throw Error(ErrorKind::DegenerateField, "Phi~ needs E2(0) != 0");
  json j = envelope();
  j["max_norm"] = max_norm;
  j["result"] = sczech::to_json_value(phi_tilde_distribution(max_norm, iv, tol_or(cfg_.tol.compositional)));
  emit_json(j);
  return 0;
}

std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(item, "--x-grid"));
  if (out.empty()) throw Error(ErrorKind::InvalidArgument, "empty --x-grid");
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Elliptic Dedekind sums, twisted Kloosterman sums and equidistribution experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  RunConfig cfg;
  Runner runner(cfg, out);
  RunConfig& rc = runner.config();
  std::string x_grid, format = "json";
  double x = 0, tol = 0;
  i64 field = -7;

  auto common = [&](CLI::App* sub) {
    sub->add_option("field,-f,--field", field, "fundamental discriminant d_K < 0")->allow_extra_args(false);
    sub->add_option("--tol", tol, "override every tolerance of the check");
    sub->add_option("--jobs", rc.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", rc.out, "write the report here instead of stdout");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--convention", rc.convention, "auto, c1, c2, c3 or c4")
        ->check(CLI::IsMember({"auto", "c1", "c2", "c3", "c4"}));
  };
  auto grids = [&](CLI::App* sub) {
    sub->add_option("--x", x, "bound X on |c|");
    sub->add_option("--x-grid", x_grid, "comma separated X values");
  };

  auto* fi = app.add_subcommand("field-info", "field constants, E2(0), dual basis");
  common(fi);

  auto* dd = app.add_subcommand("dedekind", "D(c, d), D~(c, d) and Phi~ of the completed matrix");
  common(dd);
  dd->add_option("--c", runner.c_text, "c as a+b*w")->required();
  dd->add_option("--d", runner.d_text, "d as a+b*w")->required();

  auto* vf = app.add_subcommand("verify", "run an invariant suite");
  common(vf);
  vf->add_option("suite", runner.suite, "periodicity, homomorphism, identity, duality or counting")
      ->required()
      ->check(CLI::IsMember({"periodicity", "homomorphism", "identity", "duality", "counting"}));
  vf->add_option("--r", rc.r_values, "r values for the identity suite");
  vf->add_option("--max-norm", runner.max_norm, "largest norm(c) in the identity suite");

  auto* wy = app.add_subcommand("weyl", "normalised Weyl sums of r D~");
  common(wy);
  grids(wy);
  wy->add_option("--r", rc.r_values, "r (repeatable)");
  wy->add_option("--modes", rc.modes, "modes n = 1..modes");

  auto* ct = app.add_subcommand("count", "coset counts against the predicted main terms");
  common(ct);
  grids(ct);

  auto* kl = app.add_subcommand("kloosterman", "twisted Kloosterman sums S(m, n, c, chi_alpha)");
  common(kl);
  grids(kl);
  kl->add_option("--c", runner.c_text, "modulus c as a+b*w");
  kl->add_option("--m", runner.m_text, "m as re or re,im");
  kl->add_option("--n", runner.n_text, "n as re or re,im");
  kl->add_option("--alpha", runner.alpha_text, "alpha as re or re,im");
  kl->add_option("--s", runner.s_text, "evaluate the partial zeta sum at s (needs --x)");

  auto* id = app.add_subcommand("identity", "Dedekind-sum exponential sums against Kloosterman sums");
  common(id);
  grids(id);
  id->add_option("--c", runner.c_text, "single modulus c as a+b*w");
  id->add_option("--r", rc.r_values, "r (repeatable)");
  id->add_option("--max-norm", runner.max_norm, "all c with norm(c) <= this when --c and --x are absent");

  auto* eq = app.add_subcommand("equidist", "histograms, discrepancy and Weyl sums over an X grid");
  common(eq);
  grids(eq);
  eq->add_option("--r", rc.r_values, "r (repeatable)");
  eq->add_option("--modes", rc.modes, "modes n = 1..modes");
  eq->add_option("--bins", rc.bins, "histogram bins");

  auto* pr = app.add_subcommand("probe", "growth exponent of sum_{|c|<=x} S/|c|^2");
  common(pr);
  grids(pr);
  pr->add_option("--m", runner.m_text, "m as re or re,im");
  pr->add_option("--n", runner.n_text, "n as re or re,im");
  pr->add_option("--alpha", runner.alpha_text, "alpha as re or re,im");
  pr->add_option("--r", rc.r_values, "derive m = n = floor(-r), alpha = -r + floor(-r)");

  auto* pv = app.add_subcommand("phi-values", "where Phi~ takes its values, c != 0 and translations separately");
  common(pv);
  pv->add_option("--max-norm", runner.max_norm, "largest norm(c) and norm(a)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, eo;
    const int code = app.exit(e, o, eo);
    out << o.str();
    err << eo.str();
    return code == 0 ? 0 : 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    rc.command = sub->get_name();
    rc.d_K = field;
    if (sub->get_option_no_throw("--x") && sub->count("--x")) rc.X = x;
    if (!x_grid.empty()) rc.x_grid = parse_grid(x_grid);
    rc.format = format == "csv" ? Format::Csv : Format::Json;
    if (sub->count("--tol")) {
      if (!(tol > 0)) throw Error(ErrorKind::InvalidArgument, "--tol must be positive");
      runner.tol_override = tol;
    }
    if (const char* seed = std::getenv("SCZECH_SEED")) rc.seed = seed;
    return runner.dispatch();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace sczech::cli

#include "susydelta/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "susydelta/comb.hpp"
#include "susydelta/oracle.hpp"
#include "susydelta/scattering.hpp"
#include "susydelta/spectra.hpp"
#include "susydelta/witten.hpp"

namespace susydelta::cli {

using nlohmann::json;

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(Errc::invalid_configuration, msg);
}

json grid_json(const GridSpec& g) { return {{"lo", g.lo}, {"hi", g.hi}, {"n", g.n}}; }

GridSpec grid_from(const json& j) {
  require(j.is_object() && j.contains("lo") && j.contains("hi") && j.contains("n"), "grid needs lo, hi and n");
  return {j["lo"].get<double>(), j["hi"].get<double>(), j["n"].get<int>()};
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<double> linspace(const GridSpec& g) {
  std::vector<double> xs(g.n);
  for (int i = 0; i < g.n; ++i) xs[i] = g.n == 1 ? g.lo : g.lo + (g.hi - g.lo) * i / (g.n - 1);
  return xs;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      require(used == item.size(), "");
    } catch (const std::exception&) {
      throw Error(Errc::invalid_configuration, "cannot parse number \"" + item + "\" in list");
    }
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::invalid_configuration, path + ": " + e.what());
  }
}

// A config file holds either a bare configuration or a full run configuration.
RunConfig load_run_config(const std::string& path) {
  json j = read_json_file(path);
  if (j.is_object() && j.contains("config")) return run_config_from_json(j);
  RunConfig rc;
  rc.config = config_from_json(j);
  return rc;
}

double max_outer_floor(const ConfigKind& kind, Sector s) {
  PotentialSpec v = hamiltonian_potential(kind, s, Hamiltonian::supersymmetric);
  return std::max(v.floor_left(), v.floor_right());
}

json state_json(const BoundState& st) {
  json j{{"energy", st.energy},
         {"kind", to_string(st.kind)},
         {"parity", to_string(st.parity)},
         {"sector", sector_index(st.sector)},
         {"label", st.label},
         {"normalized", st.normalized},
         {"kappa", {{"left", st.kappa_left}, {"right", st.kappa_right}}}};
  if (st.inner_momentum) j["inner_momentum"] = *st.inner_momentum;
  return j;
}

json zero_mode_json(const ZeroMode& z) {
  const Superpotential& w = z.w;
  json samples = json::array();
  for (double x : w.breakpoints()) samples.push_back({{"x", x}, {"psi", z(x)}});
  json j{{"sector", sector_index(z.sector)},
         {"normalizable", z.normalizable},
         {"offset", z.offset},
         {"samples", samples}};
  j["norm_constant"] = z.norm_constant ? json(*z.norm_constant) : json(nullptr);
  if (!w.period()) {
    j["v_minus"] = w.v_minus();
    j["v_plus"] = w.v_plus();
  }
  return j;
}

// ---------------------------------------------------------------------------
// verify

ConfigKind random_config(std::mt19937_64& rng, int family) {
  std::uniform_real_distribution<double> strength(0.5, 3.0), width(0.5, 2.5), step(-3.0, 3.0), coin(0.0, 1.0);
  double sign = coin(rng) < 0.5 ? 1.0 : -1.0;
  switch (family % 5) {
    case 0: return DeltaStep{sign * strength(rng), step(rng)};
    case 1: return DoubleEqual{sign * strength(rng), width(rng)};
    case 2: return DoubleUnequal{sign * strength(rng), sign * strength(rng), width(rng)};
    case 3: return TripleUnequal{sign * strength(rng), sign * strength(rng), sign * strength(rng), width(rng)};
    default: return TripleAlternating{strength(rng), width(rng)};
  }
}

double amp_distance(const ScatteringAmplitudes& x, const ScatteringAmplitudes& y) {
  return std::max({std::abs(x.sigma_r - y.sigma_r), std::abs(x.rho_r - y.rho_r), std::abs(x.sigma_l - y.sigma_l),
                   std::abs(x.rho_l - y.rho_l)});
}

struct Check {
  std::string name;
  double tolerance;
  double worst = 0.0;
  int failures = 0;
  void add(double r) {
    if (!(r <= tolerance)) ++failures;
    if (std::isnan(r) || r > worst) worst = std::isnan(r) ? INFINITY : r;
  }
  json to_json() const {
    return {{"name", name}, {"tolerance", tolerance}, {"max_residual", worst}, {"failures", failures},
            {"pass", failures == 0}};
  }
};

std::vector<double> positive_bound(const std::vector<BoundState>& states) {
  std::vector<double> out;
  for (const auto& s : states)
    if (s.kind == StateKind::bound && s.energy > 1e-9) out.push_back(s.energy);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

void validate(const RunConfig& rc) {
  if (rc.config) susydelta::validate(*rc.config);
  if (rc.energy_grid) {
    require(rc.energy_grid->n >= 2, "energy grid needs at least 2 points");
    require(rc.energy_grid->hi > rc.energy_grid->lo, "energy grid needs hi > lo");
  }
  require(rc.k_grid.n >= 2, "k grid needs at least 2 points");
  require(rc.q_samples >= 2, "q samples must be at least 2");
  require(rc.tolerances.root > 0 && rc.tolerances.match > 0 && rc.tolerances.quadrature > 0,
          "tolerances must be positive");
  require(rc.format == "json" || rc.format == "csv", "format must be json or csv");
}

json to_json(const RunConfig& rc) {
  json j;
  j["config"] = rc.config ? config_to_json(*rc.config) : json(nullptr);
  j["grids"] = {{"energy", rc.energy_grid ? grid_json(*rc.energy_grid) : json(nullptr)},
                {"k", grid_json(rc.k_grid)},
                {"q_samples", rc.q_samples}};
  j["tolerances"] = {{"root", rc.tolerances.root}, {"match", rc.tolerances.match},
                     {"quadrature", rc.tolerances.quadrature}};
  j["output"] = {{"format", rc.format}, {"path", rc.out}};
  return j;
}

RunConfig run_config_from_json(const json& j) {
  require(j.is_object(), "run configuration must be a JSON object");
  RunConfig rc;
  try {
    if (j.contains("config") && !j["config"].is_null()) rc.config = config_from_json(j["config"]);
    if (j.contains("grids")) {
      const json& g = j["grids"];
      if (g.contains("energy") && !g["energy"].is_null()) rc.energy_grid = grid_from(g["energy"]);
      if (g.contains("k")) rc.k_grid = grid_from(g["k"]);
      if (g.contains("q_samples")) rc.q_samples = g["q_samples"].get<int>();
    }
    if (j.contains("tolerances")) {
      const json& t = j["tolerances"];
      rc.tolerances.root = t.value("root", rc.tolerances.root);
      rc.tolerances.match = t.value("match", rc.tolerances.match);
      rc.tolerances.quadrature = t.value("quadrature", rc.tolerances.quadrature);
    }
    if (j.contains("output")) {
      rc.format = j["output"].value("format", rc.format);
      rc.out = j["output"].value("path", rc.out);
    }
  } catch (const json::exception& e) {
    throw Error(Errc::invalid_configuration, std::string("run configuration: ") + e.what());
  }
  validate(rc);
  return rc;
}

json verify_report(std::uint64_t seed, int cases, int threads) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> above(0.01, 20.0);
  Check flux{"flux_conservation", 1e-12}, modulus{"susy_modulus_equality", 1e-12}, map{"susy_map", 1e-10},
      oracle{"closed_form_vs_oracle", 1e-8}, bound{"bound_states_vs_oracle", 1e-7},
      disp{"dispersion_vs_monodromy", 1e-9};

  for (int family = 0; family < 5; ++family) {
    for (int c = 0; c < cases; ++c) {
      ConfigKind kind = random_config(rng, family);
      Superpotential w = build_superpotential(kind);
      double E = std::max(max_outer_floor(kind, Sector::bosonic), max_outer_floor(kind, Sector::fermionic)) + above(rng);
      ScatteringAmplitudes a0 = amplitudes(kind, Sector::bosonic, E);
      ScatteringAmplitudes a1 = amplitudes(kind, Sector::fermionic, E);
      flux.add(a0.flux_residual());
      flux.add(a1.flux_residual());
      modulus.add(std::max({std::abs(std::abs(a0.sigma_r) - std::abs(a1.sigma_r)),
                            std::abs(std::abs(a0.rho_r) - std::abs(a1.rho_r)),
                            std::abs(std::abs(a0.sigma_l) - std::abs(a1.sigma_l)),
                            std::abs(std::abs(a0.rho_l) - std::abs(a1.rho_l))}));
      map.add(amp_distance(a1, susy_map_amplitudes(a0, w.v_minus(), w.v_plus())));
      for (Sector s : {Sector::bosonic, Sector::fermionic}) {
        PotentialSpec v = hamiltonian_potential(kind, s, Hamiltonian::supersymmetric);
        oracle.add(amp_distance(s == Sector::bosonic ? a0 : a1, oracle_amplitudes(v, E)));
      }
    }
  }

  SpectrumOptions opt;
  opt.scan.threads = threads;
  ScanOptions oscan;
  oscan.threads = threads;
  const int bound_cases = std::max(1, cases / 5);
  for (int family = 1; family < 5; ++family) {
    for (int c = 0; c < bound_cases; ++c) {
      ConfigKind kind = random_config(rng, family);
      for (Sector s : {Sector::bosonic, Sector::fermionic}) {
        auto mine = positive_bound(find_bound_states(kind, s, opt));
        auto theirs = oracle_bound_states(hamiltonian_potential(kind, s, Hamiltonian::supersymmetric), oscan, 0.0);
        theirs.erase(std::remove_if(theirs.begin(), theirs.end(), [](double e) { return e <= 1e-9; }), theirs.end());
        if (mine.size() != theirs.size()) {
          bound.add(INFINITY);
          continue;
        }
        double worst = 0.0;
        for (std::size_t i = 0; i < mine.size(); ++i) worst = std::max(worst, std::abs(mine[i] - theirs[i]));
        bound.add(worst);
      }
    }
  }

  std::uniform_real_distribution<double> alpha(0.5, 4.0), width(0.3, 2.0), kd(0.01, 10.0);
  for (int c = 0; c < std::max(1, cases / 10); ++c) {
    double al = alpha(rng), a = width(rng);
    for (int i = 0; i < 20; ++i) {
      double k = kd(rng);
      disp.add(std::abs(dispersion_g(k, al, a) - oracle_dispersion(al, a, k)));
    }
  }

  json checks = json::array();
  bool pass = true;
  for (const Check* c : {&flux, &modulus, &map, &oracle, &bound, &disp}) {
    checks.push_back(c->to_json());
    pass = pass && c->failures == 0;
  }
  return {{"seed", seed}, {"cases", cases}, {"checks", checks}, {"pass", pass}};
}

// ---------------------------------------------------------------------------

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Supersymmetric quantum mechanics of Dirac delta arrays"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_path, format, config_path;
  int threads = 1;
  std::uint64_t seed = Defaults::seed;
  app.add_option("--out", out_path, "Write output to this file instead of standard output");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Seed for randomized verify sweeps");

  auto* scatter = app.add_subcommand("scatter", "Scattering amplitudes on an energy grid");
  int sector = 0;
  std::optional<double> e_min, e_max;
  std::optional<int> e_n;
  scatter->add_option("--config", config_path, "Configuration JSON file")->required();
  scatter->add_option("--sector", sector, "Sector 0 or 1")->check(CLI::Range(0, 1));
  scatter->add_option("--e-min", e_min, "Lowest energy");
  scatter->add_option("--e-max", e_max, "Highest energy");
  scatter->add_option("--n", e_n, "Number of energies");

  auto* bound = app.add_subcommand("bound", "Bound states, SUSY pairs and singlets");
  std::string sector_choice = "both", hamiltonian = "susy";
  bool anti_bound = false;
  bound->add_option("--config", config_path, "Configuration JSON file")->required();
  bound->add_option("--sector", sector_choice, "0, 1 or both")->check(CLI::IsMember({"0", "1", "both"}));
  bound->add_flag("--anti-bound", anti_bound, "Also report anti-bound and threshold states");
  bound->add_option("--hamiltonian", hamiltonian, "susy or bare")->check(CLI::IsMember({"susy", "bare"}));

  auto* bands = app.add_subcommand("bands", "Band structure of the alternating comb");
  double alpha = 0.0, a = 0.0, k_max = Defaults::k_max;
  int q_samples = Defaults::q_samples;
  std::string csv_path;
  bands->add_option("--alpha", alpha, "Delta strength")->required();
  bands->add_option("--a", a, "Half period")->required()->check(CLI::PositiveNumber);
  bands->add_option("--k-max", k_max, "Upper end of the k scan")->check(CLI::PositiveNumber);
  bands->add_option("--q-samples", q_samples, "Quasimomentum samples for the non-propagating band");
  bands->add_option("--csv", csv_path, "Dump the g(k) curve to this CSV file");

  auto* witten = app.add_subcommand("witten", "Heat-kernel regularized Witten index");
  std::string t_list = "0.1,0.01,0.001,0.0001";
  witten->add_option("--config", config_path, "Configuration JSON file")->required();
  witten->add_option("--t-list", t_list, "Comma separated decreasing t values");

  auto* zero = app.add_subcommand("zero-mode", "Zero modes e^{+W} and e^{-W}");
  zero->add_option("--config", config_path, "Configuration JSON file")->required();

  auto* verify = app.add_subcommand("verify", "Cross-check closed forms against the transfer-matrix oracle");
  int cases = Defaults::verify_cases;
  verify->add_option("--cases", cases, "Random cases per configuration family")->check(CLI::PositiveNumber);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    RunConfig rc;
    if (!config_path.empty()) rc = load_run_config(config_path);
    if (!out_path.empty()) rc.out = out_path;
    std::string text;

    if (scatter->parsed()) {
      const ConfigKind& kind = rc.config.value();
      Sector s = sector_from_index(sector);
      double top = max_outer_floor(kind, s);
      GridSpec g = rc.energy_grid.value_or(
          GridSpec{top + Defaults::energy_offset_lo, top + Defaults::energy_span, Defaults::energy_points});
      if (e_min) g.lo = *e_min;
      if (e_max) g.hi = *e_max;
      if (e_n) g.n = *e_n;
      rc.energy_grid = g;
      rc.format = format.empty() ? "csv" : format;
      validate(rc);
      auto energies = linspace(g);
      std::vector<std::optional<ScatteringAmplitudes>> rows(energies.size());
      int skipped = 0;
      for (std::size_t i = 0; i < energies.size(); ++i) {
        try {
          rows[i] = amplitudes(kind, s, energies[i]);
        } catch (const Error& e) {
          if (e.code() != Errc::pole && e.code() != Errc::no_scattering) throw;
          ++skipped;
        }
      }
      if (skipped) err << "scatter: skipped " << skipped << " energies at poles or with closed channels\n";
      if (rc.format == "csv") {
        std::ostringstream os;
        os << "E,k_minus_re,k_minus_im,k_plus_re,k_plus_im,sigma_r_re,sigma_r_im,rho_r_re,rho_r_im,"
              "sigma_l_re,sigma_l_im,rho_l_re,rho_l_im,flux_residual\n";
        for (const auto& r : rows) {
          if (!r) continue;
          os << fmt17(r->energy);
          for (cdouble z : {r->k_minus, r->k_plus, r->sigma_r, r->rho_r, r->sigma_l, r->rho_l})
            os << ',' << fmt17(z.real()) << ',' << fmt17(z.imag());
          os << ',' << fmt17(r->flux_residual()) << '\n';
        }
        text = os.str();
      } else {
        json arr = json::array();
        auto cj = [](cdouble z) { return json::array({z.real(), z.imag()}); };
        for (const auto& r : rows) {
          if (!r) continue;
          double fr = r->flux_residual();
          arr.push_back({{"E", r->energy}, {"k_minus", cj(r->k_minus)}, {"k_plus", cj(r->k_plus)},
                         {"sigma_r", cj(r->sigma_r)}, {"rho_r", cj(r->rho_r)}, {"sigma_l", cj(r->sigma_l)},
                         {"rho_l", cj(r->rho_l)}, {"flux_residual", std::isnan(fr) ? json(nullptr) : json(fr)}});
        }
        text = json{{"run_config", to_json(rc)}, {"rows", arr}}.dump(2) + "\n";
      }
    } else if (bound->parsed()) {
      const ConfigKind& kind = rc.config.value();
      rc.format = format.empty() ? "json" : format;
      validate(rc);
      SpectrumOptions opt;
      opt.include_anti_bound = anti_bound;
      opt.hamiltonian = hamiltonian == "bare" ? Hamiltonian::bare : Hamiltonian::supersymmetric;
      opt.scan.threads = threads;
      opt.scan.rel_tol = rc.tolerances.root;
      std::vector<BoundState> states;
      json pairs = json::array(), singlets = json::array();
      if (sector_choice == "both" && opt.hamiltonian == Hamiltonian::supersymmetric) {
        PairingReport rep = susy_pairing_report(kind, opt);
        states = rep.states;
        for (const auto& p : rep.pairs) pairs.push_back({p.bosonic, p.fermionic});
        for (auto i : rep.singlets) singlets.push_back(i);
      } else {
        Sector s = sector_choice == "1" ? Sector::fermionic : Sector::bosonic;
        states = find_bound_states(kind, s, opt);
        for (std::size_t i = 0; i < states.size(); ++i)
          if (states[i].kind == StateKind::bound && states[i].energy == 0.0) singlets.push_back(i);
      }
      if (rc.format == "csv") {
        std::ostringstream os;
        os << "energy,kind,parity,sector,kappa_left,kappa_right\n";
        for (const auto& st : states)
          os << fmt17(st.energy) << ',' << to_string(st.kind) << ',' << to_string(st.parity) << ','
             << sector_index(st.sector) << ',' << fmt17(st.kappa_left) << ',' << fmt17(st.kappa_right) << '\n';
        text = os.str();
      } else {
        json js = json::array();
        for (const auto& st : states) js.push_back(state_json(st));
        text = json{{"run_config", to_json(rc)},
                    {"hamiltonian", hamiltonian},
                    {"states", js},
                    {"pairs", pairs},
                    {"singlets", singlets}}
                   .dump(2) +
               "\n";
      }
    } else if (bands->parsed()) {
      rc.config = AlternatingComb{alpha, a};
      rc.k_grid = {0.0, k_max, std::max(2, static_cast<int>(std::ceil(k_max / band_scan_step(alpha, a))) + 1)};
      rc.q_samples = q_samples;
      rc.format = "json";
      validate(rc);
      auto prop = propagating_bands(alpha, a, k_max, Sector::bosonic, threads);
      auto np = nonpropagating_band(alpha, a, q_samples, threads);
      json pj = json::array();
      for (const auto& b : prop)
        pj.push_back({{"k_lo", b.lo}, {"k_hi", b.hi}, {"E_lo", b.energy_lo}, {"E_hi", b.energy_hi},
                      {"q_lo", b.q_lo}, {"q_hi", b.q_hi}, {"truncated", !b.upper_is_edge}});
      json nj{{"exists_upper_edge", np.upper_edge_kappa.has_value()}, {"a_critical", np.a_critical}};
      if (np.band) {
        nj["kappa_min"] = np.band->lo;
        nj["kappa_max"] = np.band->hi;
        nj["E_lo"] = np.band->energy_lo;
        nj["E_hi"] = np.band->energy_hi;
      }
      json rejected = json::array();
      for (const auto& sol : np.solutions)
        if (!sol.accepted && sol.q == 0.0) rejected.push_back(sol.kappa);
      nj["rejected_kappa_at_q0"] = rejected;
      text = json{{"run_config", to_json(rc)}, {"propagating", pj}, {"non_propagating", nj}}.dump(2) + "\n";
      if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        require(static_cast<bool>(csv), "cannot write " + csv_path);
        csv << "k,g\n";
        for (double k : linspace(rc.k_grid)) csv << fmt17(k) << ',' << fmt17(dispersion_g(k, alpha, a)) << '\n';
      }
    } else if (witten->parsed()) {
      const ConfigKind& kind = rc.config.value();
      rc.format = "json";
      validate(rc);
      auto ts = parse_list(t_list);
      WittenReport r = witten_index(kind, ts);
      json cont = json::array();
      for (const auto& c : r.continuum) cont.push_back({{"t", c.t}, {"value", c.value}, {"closed_form", c.closed_form}});
      text = json{{"run_config", to_json(rc)},
                  {"z0", r.z0},
                  {"z1", r.z1},
                  {"v", r.v},
                  {"continuum", cont},
                  {"continuum_regularized", r.continuum_regularized},
                  {"extrapolated_continuum", r.extrapolated_continuum},
                  {"zero_mode_index", r.zero_mode_index},
                  {"index", r.extrapolated_index},
                  {"susy_broken", r.susy_broken}}
                 .dump(2) +
             "\n";
    } else if (zero->parsed()) {
      const ConfigKind& kind = rc.config.value();
      rc.format = "json";
      validate(rc);
      json j{{"run_config", to_json(rc)}};
      if (const auto* c = std::get_if<AlternatingComb>(&kind)) {
        CombZeroModes zm = comb_zero_modes(c->alpha, c->a);
        j["bosonic"] = zero_mode_json(zm.bosonic);
        j["fermionic"] = zero_mode_json(zm.fermionic);
        j["bloch_defect"] = zm.bloch_defect;
        j["index_contribution"] = zm.index_contribution;
        j["susy_unbroken"] = zm.susy_unbroken;
      } else {
        Superpotential w = build_superpotential(kind);
        j["bosonic"] = zero_mode_json(zero_mode(w, Sector::bosonic));
        j["fermionic"] = zero_mode_json(zero_mode(w, Sector::fermionic));
      }
      text = j.dump(2) + "\n";
    } else if (verify->parsed()) {
      json rep = verify_report(seed, cases, threads);
      text = rep.dump(2) + "\n";
      if (!rc.out.empty()) {
        std::ofstream f(rc.out);
        require(static_cast<bool>(f), "cannot write " + rc.out);
        f << text;
      } else {
        out << text;
      }
      return rep["pass"].get<bool>() ? 0 : 1;
    }

    if (!rc.out.empty()) {
      std::ofstream f(rc.out);
      require(static_cast<bool>(f), "cannot write " + rc.out);
      f << text;
    } else {
      out << text;
    }
    return 0;
  } catch (const std::bad_optional_access&) {
    err << "error: the configuration file does not contain a configuration\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::inconsistency ? 1 : 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace susydelta::cli

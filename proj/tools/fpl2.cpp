// Command-line front end: batch runs with JSON configs and CSV/JSON outputs.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "fpl2/bethe.hpp"
#include "fpl2/cft_scaling.hpp"
#include "fpl2/couplings.hpp"
#include "fpl2/loop_oracle.hpp"
#include "fpl2/rmatrix.hpp"
#include "fpl2/transfer.hpp"

using json = nlohmann::json;
using namespace fpl2;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;
constexpr int kExitNumerical = 4;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

CouplingSet couplings_from_config(const json& cfg) {
  const bool has_n = cfg.contains("n");
  const bool has_gamma = cfg.contains("gamma");
  if (has_n == has_gamma) throw std::invalid_argument("config must set exactly one of n, gamma");
  const int branch = cfg.value("omega_branch", 0);
  return has_n ? couplings_from_n(cfg.at("n").get<double>(), branch)
               : couplings_from_gamma(cfg.at("gamma").get<double>(), branch);
}

std::ofstream open_output(const json& cfg, const std::string& fallback_name) {
  std::string path = cfg.value("output", fallback_name);
  if (const char* dir = std::getenv("FPL2_OUTPUT_DIR")) {
    path = (std::filesystem::path(dir) / std::filesystem::path(path).filename()).string();
  }
  std::ofstream os(path);
  if (!os) throw std::invalid_argument("cannot open output file: " + path);
  return os;
}

json load_config(const std::string& file) {
  std::ifstream is(file);
  if (!is) throw std::invalid_argument("cannot open config file: " + file);
  json cfg;
  is >> cfg;
  return cfg;
}

int cmd_check_algebra(const json& cfg) {
  const CouplingSet cpl = couplings_from_config(cfg);
  std::ofstream os = open_output(cfg, "check_algebra.txt");
  bool all_ok = true;
  auto report = [&](const std::string& name, bool ok, double value) {
    os << (ok ? "pass" : "FAIL") << "," << name << "," << fmt(value) << "\n";
    all_ok = all_ok && ok;
  };

  {  // benchmark entries
    const auto r = loop_r(cpl);
    const cd w = cpl.omega;
    auto wp = [&](int e) { return std::pow(w, e); };
    const double e1 = std::abs(r.entry1(81, 18) - (wp(6) + wp(-2)));
    const double e2 = std::abs(r.entry1(103, 91) - (wp(-6) + wp(2)));
    const double e3 = std::abs(r.entry1(239, 188) - (wp(4) + wp(-4)));
    report("benchmark_entry_81_18", e1 < 1e-12, e1);
    report("benchmark_entry_103_91", e2 < 1e-12, e2);
    report("benchmark_entry_239_188", e3 < 1e-12, e3);
  }
  {  // gauge equivalence: exact diagonal similarity between the two pictures
    const Eigen::MatrixXcd rq = composite_quantum_r(cpl).dense();
    const Eigen::MatrixXcd rl = loop_r_internal(cpl).dense() * std::pow(cpl.c_pref, 4);
    const auto g = gauge_set(cpl);
    Eigen::VectorXcd u(256);
    for (int s = 0; s < 256; ++s) {
      const auto d = decode_state(s + 1, 4);
      u[s] = g.u_h_fund[d[0] - 1] * g.u_h_conj[d[1] - 1] * g.u_v_conj[d[2] - 1] * g.u_v_fund[d[3] - 1];
    }
    double worst = 0;
    for (int r = 0; r < 256; ++r)
      for (int c = 0; c < 256; ++c) worst = std::max(worst, std::abs(rq(r, c) - rl(r, c) * u[r] / u[c]));
    report("gauge_equivalence", worst < 1e-10, worst);
  }
  {  // commuting two-row family at L = 2 (extended-precision commutator)
    const int L = cfg.value("L", 2);
    double worst = 0;
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int rep = 0; rep < 3; ++rep) {
      const cd x = std::polar(1.0, u(rng)), y = std::polar(1.0, u(rng));
      const cd xp = std::polar(1.0, u(rng)), yp = std::polar(1.0, u(rng));
      const auto t1 = build_transfer(L, TransferVariant::TwoRowQuantum, cpl, x, y);
      const auto t2 = build_transfer(L, TransferVariant::TwoRowQuantum, cpl, xp, yp);
      const Eigen::MatrixXcd a = t1.matrix.dense(), b = t2.matrix.dense();
      const int dim = static_cast<int>(a.rows());
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
          std::complex<long double> acc(0.0L, 0.0L);
          for (int k = 0; k < dim; ++k) {
            acc += std::complex<long double>(a(i, k)) * std::complex<long double>(b(k, j));
            acc -= std::complex<long double>(b(i, k)) * std::complex<long double>(a(k, j));
          }
          worst = std::max(worst, static_cast<double>(std::abs(acc)));
        }
    }
    report("commuting_family_L2", worst < 1e-10, worst);
  }
  {  // charge conservation
    for (int L = 1; L <= 2; ++L) {
      const auto T = build_transfer(L, TransferVariant::TwoRowLoop, cpl);
      bool ok = true;
      const auto& m = T.matrix;
      for (std::int64_t r = 0; r < m.dim() && ok; ++r)
        for (std::int64_t c = 0; c < m.dim() && ok; ++c)
          if (m.entry(r, c) != cd(0.0, 0.0) && !(state_charge(r, L) == state_charge(c, L))) ok = false;
      report("charge_conservation_L" + std::to_string(L), ok, ok ? 0.0 : 1.0);
    }
  }
  if (cfg.contains("dump_r")) {  // optional CSV dump of the 24-vertex R-matrix
    std::ofstream rs(cfg.at("dump_r").get<std::string>());
    dump_operator_csv(rs, loop_r(cpl), 1e-14);
  }
  return all_ok ? 0 : 1;
}

int cmd_spectrum(const json& cfg) {
  const CouplingSet cpl = couplings_from_config(cfg);
  const int L = cfg.at("L").get<int>();
  const int k = cfg.value("k", 0);
  std::ofstream os = open_output(cfg, "spectrum.csv");
  os << "L,n,q1,q2,q3,re,im,modulus\n";
  const auto T = build_transfer(L, TransferVariant::TwoRowLoop, cpl);
  std::vector<ChargeVector> sectors;
  if (cfg.contains("sector")) {
    const auto s = cfg.at("sector");
    sectors.push_back({s.at(0).get<int>(), s.at(1).get<int>(), s.at(2).get<int>()});
  } else {
    sectors = all_sectors(L);
  }
  for (const auto& sec : sectors) {
    const auto idx = sector_indices(L, sec);
    if (idx.empty()) continue;
    const int want = k > 0 ? std::min<int>(k, idx.size()) : static_cast<int>(idx.size());
    const auto eigs = sector_spectrum(T, sec, want);
    for (const cd& e : eigs) {
      os << L << "," << fmt(cpl.n) << "," << sec.q1 << "," << sec.q2 << "," << sec.q3 << ","
         << fmt(e.real()) << "," << fmt(e.imag()) << "," << fmt(std::abs(e)) << "\n";
    }
  }
  return 0;
}

int cmd_oracle(const json& cfg) {
  const CouplingSet cpl = couplings_from_config(cfg);
  std::vector<std::pair<int, int>> cases = {{1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 1}};
  if (cfg.contains("cases")) {
    cases.clear();
    for (const auto& c : cfg.at("cases")) cases.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
  }
  std::ofstream os = open_output(cfg, "oracle.csv");
  os << "L,M,z_arrow_re,z_arrow_im,z_loop_re,z_loop_im,trace_re,trace_im,rel_err_arrow,rel_err_loop\n";
  for (auto [L, M] : cases) {
    const cd za = arrow_partition_function(L, M, cpl);
    const cd zl = loop_partition_function(L, M, cpl);
    const auto T = build_transfer(L, TransferVariant::TwoRowLoop, cpl);
    // tr(T^M)
    Eigen::MatrixXcd p = T.matrix.dense();
    Eigen::MatrixXcd acc = p;
    for (int i = 1; i < M; ++i) acc = acc * p;
    const cd tr = acc.trace();
    os << L << "," << M << "," << fmt(za.real()) << "," << fmt(za.imag()) << "," << fmt(zl.real())
       << "," << fmt(zl.imag()) << "," << fmt(tr.real()) << "," << fmt(tr.imag()) << ","
       << fmt(std::abs(za - tr) / std::abs(tr)) << "," << fmt(std::abs(zl - tr) / std::abs(tr))
       << "\n";
  }
  return 0;
}

int cmd_bethe(const json& cfg) {
  const CouplingSet cpl = couplings_from_config(cfg);
  const int L = cfg.at("L").get<int>();
  RootSet rs;
  if (cfg.contains("seed_from")) {
    std::ifstream is(cfg.at("seed_from").get<std::string>());
    if (!is) throw std::invalid_argument("cannot open seed file");
    rs = read_root_set_json(is);
    rs.gamma = cpl.gamma;
    rs.L = L;
    calibrate_branches(rs, cpl);
    const auto rep = solve(rs, cpl);
    if (!rep.converged) throw std::runtime_error("Bethe solve from seed did not converge");
  } else {
    rs = ground_state(L, cpl);
  }
  const auto lr = bae_log_residual(rs, cpl);
  double rn = 0;
  for (const cd& z : lr) rn = std::max(rn, std::abs(z));
  const cd t = eigenvalue_t(rs, cpl);
  std::ofstream os = open_output(cfg, "bethe.json");
  write_root_set_json(os, rs, rn);
  char buf[96];
  std::snprintf(buf, sizeof(buf), "{\"eigenvalue\": [%.15g, %.15g]}\n", t.real(), t.imag());
  os << buf;

  if (cfg.value("compare", false) && L <= 3) {
    // eigenvalue comparison against exact diagonalization of the ground sector
    const auto T = build_transfer(L, TransferVariant::TwoRowLoop, cpl);
    const auto dom = sector_spectrum(T, ChargeVector{0, 0, 0}, 1)[0];
    std::ofstream cs = open_output(json{{"output", cfg.value("compare_output", "bethe_compare.csv")}},
                                   "bethe_compare.csv");
    cs << "L,n,t_re,t_im,eig_re,eig_im,rel_err\n";
    cs << L << "," << fmt(cpl.n) << "," << fmt(t.real()) << "," << fmt(t.imag()) << ","
       << fmt(dom.real()) << "," << fmt(dom.imag()) << "," << fmt(std::abs(t - dom) / std::abs(dom))
       << "\n";
  }
  return 0;
}

int cmd_scaling(const json& cfg) {
  const CouplingSet cpl = couplings_from_config(cfg);
  const int lmin = cfg.value("L_min", 4);
  const int lmax = cfg.value("L_max", 16);
  const bool cubic = cfg.value("cubic", false);
  ScalingSeries series;
  for (int L = lmin; L <= lmax; L += 2) {
    const RootSet rs = ground_state(L, cpl);
    const cd t = eigenvalue_t(rs, cpl);
    series.widths.push_back(L);
    series.log_t.push_back(std::log(std::abs(t)));
  }
  const FitResult fit = fit_scaling(series, cubic);
  const double c_closed = central_charge_closed(cpl.gamma);
  std::ofstream os = open_output(cfg, "scaling.csv");
  os << "n,L_min,L_max,f0,c_est,c_closed,abs_err\n";
  os << fmt(cpl.n) << "," << lmin << "," << lmax << "," << fmt(fit.f0) << "," << fmt(fit.c_effective)
     << "," << fmt(c_closed) << "," << fmt(std::abs(fit.c_effective - c_closed)) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FPL2 loop-model workbench"};
  app.require_subcommand(1);
  std::string config_file;
  auto add = [&](const char* name, const char* desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("config", config_file, "JSON config file")->required();
    return sub;
  };
  CLI::App* s_check = add("check-algebra", "run the R-matrix/transfer property suite");
  CLI::App* s_spec = add("spectrum", "sector spectra of the transfer matrix");
  CLI::App* s_oracle = add("oracle", "brute-force partition-function comparison");
  CLI::App* s_bethe = add("bethe", "solve the Bethe equations");
  CLI::App* s_scal = add("scaling", "finite-size central-charge fit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  try {
    const json cfg = load_config(config_file);
    if (s_check->parsed()) return cmd_check_algebra(cfg);
    if (s_spec->parsed()) return cmd_spectrum(cfg);
    if (s_oracle->parsed()) return cmd_oracle(cfg);
    if (s_bethe->parsed()) return cmd_bethe(cfg);
    if (s_scal->parsed()) return cmd_scaling(cfg);
    return kExitConfig;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::length_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

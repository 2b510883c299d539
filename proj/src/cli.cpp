#include "lfk/cli.hpp"

#include <chrono>
#include <limits>
#include <cmath>
#include <numeric>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lfk/analysis.hpp"
#include "lfk/expsums.hpp"
#include "lfk/formal.hpp"
#include "lfk/jacobi.hpp"
#include "lfk/kernel.hpp"
#include "lfk/ntheory.hpp"
#include "lfk/special.hpp"

namespace lfk::cli {

using json = nlohmann::ordered_json;
using Complex = std::complex<double>;
using ntheory::DirichletCharacter;
using ntheory::DiscriminantDatum;

namespace {

json cjson(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

struct Report {
  json inputs = json::object();
  json outputs = json::object();
  json verdicts = json::array();
  bool all_pass = true;
  bool any_verdict = false;

  void verdict(const std::string& name, bool pass, const std::string& detail) {
    verdicts.push_back(json{{"name", name}, {"pass", pass}, {"detail", detail}});
    any_verdict = true;
    all_pass = all_pass && pass;
  }
};

DirichletCharacter char_by_index(int64_t modulus, int64_t index) {
  auto chars = DirichletCharacter::all_characters(modulus);
  if (index < 0 || index >= static_cast<int64_t>(chars.size()))
    throw std::invalid_argument("character index out of range (0.." +
                                std::to_string(chars.size() - 1) + " mod " +
                                std::to_string(modulus) + ")");
  return chars[static_cast<size_t>(index)];
}

int64_t find_r(int64_t D, int64_t N) {
  for (int64_t r = 0; r < 2 * N; ++r)
    if (ntheory::mod_floor(r * r - D, 4 * N) == 0) return r;
  throw std::invalid_argument("no r with r^2 = " + std::to_string(D) + " (mod " +
                              std::to_string(4 * N) + ")");
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kernel-function toolkit for twisted L-functions of cusp forms"};
  app.require_subcommand(1);
  app.fallthrough(true);  // global flags may follow the subcommand

  // global options
  std::string out_file;
  double rel_tol = 1e-10;
  int64_t n_cap = 1 << 20;
  bool csv = false;
  bool timing = false;
  app.add_option("--out", out_file, "write the report to FILE instead of stdout");
  app.add_option("--rel-tol", rel_tol, "series stabilization tolerance");
  app.add_option("--n-cap", n_cap, "series truncation cap");
  app.add_flag("--csv", csv, "CSV output for scan tables");
  app.add_flag("--timing", timing, "include wall time in the report");

  auto trunc = [&]() {
    kernel::TruncationConfig t;
    t.rel_tol = rel_tol;
    t.n_cap = n_cap;
    return t;
  };

  Report rep;
  std::string command;
  std::string csv_payload;

  // ---- gauss-sum ----
  auto* gauss = app.add_subcommand("gauss-sum", "Gauss sum of a Dirichlet character");
  int64_t gs_mod = 0, gs_idx = 0;
  gauss->add_option("--modulus", gs_mod, "character modulus h")->required();
  gauss->add_option("--char-index", gs_idx, "index into the canonical character list")->required();
  gauss->callback([&] {
    command = "gauss-sum";
    rep.inputs = {{"modulus", gs_mod}, {"char-index", gs_idx}};
    DirichletCharacter chi = char_by_index(gs_mod, gs_idx);
    Complex g = chi.gauss_sum();
    rep.outputs["conductor"] = chi.conductor();
    rep.outputs["parity"] = chi.parity();
    rep.outputs["primitive"] = chi.is_primitive();
    rep.outputs["gauss_sum"] = cjson(g);
    rep.outputs["norm_sq"] = std::norm(g);
    if (chi.is_primitive()) {
      double diff = std::abs(std::norm(g) - static_cast<double>(gs_mod));
      rep.verdict("gauss_norm_numeric", diff <= 1e-10 * std::max<double>(1, gs_mod),
                  "| |G|^2 - h | = " + fmt(diff));
      // exact check via the group ring when the working modulus stays small
      int64_t L = ntheory::lcm(gs_mod, chi.order());
      if (L <= 4096) {
        auto gf = formal::gauss_sum_formal(chi);
        auto prod = gf * gf.conj();
        auto target = formal::FormalExpSum::exp_term(L, 0, gs_mod);
        rep.verdict("gauss_norm_exact", formal::equal_exact(prod, target),
                    "G * conj(G) == h as an exact root-of-unity sum");
      }
    }
  });

  // ---- expsum ----
  auto* expsum = app.add_subcommand("expsum", "finite exponential sums K, S, H");
  expsum->set_help_flag("--help", "print help");  // frees -h for the h subcommand
  expsum->require_subcommand(1);
  int64_t ex_N = 1, ex_n = 1, ex_m = 1, ex_D = -3, ex_r = 1, ex_Dp = -3, ex_rp = 1;

  auto* exk = expsum->add_subcommand("k", "K_{N,n}(m, D)");
  exk->add_option("--N", ex_N)->required();
  exk->add_option("--n", ex_n)->required();
  exk->add_option("--m", ex_m)->required();
  exk->add_option("--D", ex_D)->required();
  exk->callback([&] {
    command = "expsum k";
    rep.inputs = {{"N", ex_N}, {"n", ex_n}, {"m", ex_m}, {"D", ex_D}};
    auto v = expsums::k_sum(ex_N, ex_n, ex_m, ex_D);
    rep.outputs["value"] = cjson(v.value);
    json coeffs = json::array();
    for (int64_t j = 0; j < v.formal.modulus(); ++j)
      if (v.formal.coeffs()[static_cast<size_t>(j)] != 0)
        coeffs.push_back(json::array({j, v.formal.coeffs()[static_cast<size_t>(j)]}));
    rep.outputs["formal_modulus"] = v.formal.modulus();
    rep.outputs["formal_coeffs"] = coeffs;
  });

  auto* exs = expsum->add_subcommand("s", "S_{N,n}(m, D)");
  exs->add_option("--N", ex_N)->required();
  exs->add_option("--n", ex_n)->required();
  exs->add_option("--m", ex_m)->required();
  exs->add_option("--D", ex_D)->required();
  exs->callback([&] {
    command = "expsum s";
    rep.inputs = {{"N", ex_N}, {"n", ex_n}, {"m", ex_m}, {"D", ex_D}};
    auto v = expsums::s_sum(ex_N, ex_n, ex_m, ex_D);
    rep.outputs["value"] = cjson(v.value);
    json coeffs = json::array();
    for (int64_t j = 0; j < v.formal.modulus(); ++j)
      if (v.formal.coeffs()[static_cast<size_t>(j)] != 0)
        coeffs.push_back(json::array({j, v.formal.coeffs()[static_cast<size_t>(j)]}));
    rep.outputs["formal_modulus"] = v.formal.modulus();
    rep.outputs["formal_coeffs"] = coeffs;
  });

  auto* exh = expsum->add_subcommand("h", "H_{N,n}(D, r, D', r')");
  exh->add_option("--N", ex_N)->required();
  exh->add_option("--n", ex_n)->required();
  exh->add_option("--D", ex_D)->required();
  exh->add_option("--r", ex_r)->required();
  exh->add_option("--Dp", ex_Dp)->required();
  exh->add_option("--rp", ex_rp)->required();
  exh->callback([&] {
    command = "expsum h";
    rep.inputs = {{"N", ex_N}, {"n", ex_n}, {"D", ex_D}, {"r", ex_r}, {"Dp", ex_Dp}, {"rp", ex_rp}};
    Complex v = expsums::h_sum(ex_N, ex_n, ex_D, ex_r, ex_Dp, ex_rp);
    rep.outputs["value"] = cjson(v);
  });

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "identity verification grids");
  verify->require_subcommand(1);

  auto* vsk = verify->add_subcommand("s-equals-k", "exact S = K identity on a grid");
  int64_t sk_Nmax = 6, sk_nper = 40, sk_mmax = 10;
  std::vector<int64_t> sk_Ds = {-3, -4, -7, -8, -11, -15, -20};
  vsk->add_option("--N-max", sk_Nmax);
  vsk->add_option("--n-per-N", sk_nper);
  vsk->add_option("--m-max", sk_mmax);
  vsk->add_option("--D-list", sk_Ds, "fundamental discriminants to test")->delimiter(',');
  vsk->callback([&] {
    command = "verify s-equals-k";
    rep.inputs = {{"N-max", sk_Nmax}, {"n-per-N", sk_nper}, {"m-max", sk_mmax}, {"D-list", sk_Ds}};
    int64_t instances = 0, failures = 0;
    double max_diff = 0.0;
    json failing = json::array();
    for (int64_t N = 1; N <= sk_Nmax; ++N) {
      for (int64_t D : sk_Ds) {
        if (std::gcd(-D, N) != 1) continue;
        // structure is m-independent; verify each m against it
        for (int64_t j = 1; j <= sk_nper; ++j) {
          int64_t n = j * N;
          for (int64_t m = 1; m <= sk_mmax; ++m) {
            auto r = expsums::verify_s_equals_k(N, n, m, D);
            ++instances;
            max_diff = std::max(max_diff, r.numeric_diff);
            if (!r.exact_equal || !r.termwise_ok || !r.representatives_ok) {
              ++failures;
              if (failing.size() < 20)
                failing.push_back(json{{"N", N}, {"n", n}, {"m", m}, {"D", D}});
            }
          }
        }
      }
    }
    rep.outputs["instances"] = instances;
    rep.outputs["failures"] = failures;
    rep.outputs["failing"] = failing;
    rep.outputs["max_numeric_diff"] = max_diff;
    rep.verdict("s_equals_k_exact", failures == 0,
                std::to_string(instances) + " instances, " + std::to_string(failures) + " failures");
  });

  auto* vgkz = verify->add_subcommand("gkz-lemma", "S_{N,Nn} = sum_d (D/d)(n/d)^{1/2} H_{N,n/d}");
  int64_t gk_Nmax = 4, gk_njmax = 30, gk_mmax = 12;
  vgkz->add_option("--N-max", gk_Nmax);
  vgkz->add_option("--nj-max", gk_njmax);
  vgkz->add_option("--m-max", gk_mmax);
  vgkz->callback([&] {
    command = "verify gkz-lemma";
    rep.inputs = {{"N-max", gk_Nmax}, {"nj-max", gk_njmax}, {"m-max", gk_mmax}};
    int64_t instances = 0, failures = 0;
    double max_rel = 0.0;
    json failing = json::array();
    for (int64_t N = 1; N <= gk_Nmax; ++N)
      for (int64_t nJ = 1; nJ <= gk_njmax; ++nJ)
        for (int64_t r = 0; r * r < 4 * N * nJ; r = (r <= 0 ? 1 - r : -r)) {
          for (int64_t m = 1; m <= gk_mmax; ++m) {
            auto rr = expsums::verify_gkz_lemma(N, nJ, m, r);
            ++instances;
            double rel = rr.abs_diff / (1.0 + std::abs(rr.lhs));
            max_rel = std::max(max_rel, rel);
            if (rel > 1e-9) {
              ++failures;
              if (failing.size() < 20)
                failing.push_back(json{{"N", N}, {"nJ", nJ}, {"m", m}, {"r", r}});
            }
          }
        }
    rep.outputs["instances"] = instances;
    rep.outputs["failures"] = failures;
    rep.outputs["failing"] = failing;
    rep.outputs["max_rel_diff"] = max_rel;
    rep.verdict("gkz_lemma", failures == 0,
                std::to_string(instances) + " instances, max rel diff " + fmt(max_rel));
  });

  auto* vwk = verify->add_subcommand("waldspurger-kernel",
                                     "kernel coefficient vs the lifted Jacobi Poincare series");
  int64_t wk_k2 = 6, wk_N = 1, wk_D = -3, wk_mmax = 4;
  int64_t wk_r = std::numeric_limits<int64_t>::min();
  vwk->add_option("--k2", wk_k2, "weight 2k")->required();
  vwk->add_option("--N", wk_N)->required();
  vwk->add_option("--D", wk_D)->required();
  vwk->add_option("--r", wk_r, "residue with r^2 = D (mod 4N); smallest if omitted");
  vwk->add_option("--m-max", wk_mmax);
  vwk->callback([&] {
    command = "verify waldspurger-kernel";
    int64_t r = (wk_r == std::numeric_limits<int64_t>::min()) ? find_r(wk_D, wk_N) : wk_r;
    rep.inputs = {{"k2", wk_k2}, {"N", wk_N}, {"D", wk_D}, {"r", r}, {"m-max", wk_mmax}};
    DiscriminantDatum dd(wk_D, wk_N, r);
    double slack = (wk_k2 == 4) ? 1e-6 : 1e-8;
    json table = json::array();
    bool all_ok = true;
    for (int64_t m = 1; m <= wk_mmax; ++m) {
      auto cr = kernel::kernel_coeff_critical(wk_k2, wk_N, m, dd, trunc());
      auto cl = jacobi::lift_coeff_closed(wk_k2 / 2, wk_N, dd, m, trunc());
      auto vg = jacobi::lift_coeff_via_g(wk_k2 / 2, wk_N, dd, m, trunc());
      double d_cc = std::abs(cr.value - cl.value);
      double d_cv = std::abs(cr.value - vg.value);
      double d_lv = std::abs(cl.value - vg.value);
      bool ok = d_cc <= cr.error_estimate + cl.error_estimate + slack &&
                d_cv <= cr.error_estimate + vg.error_estimate + slack &&
                d_lv <= cl.error_estimate + vg.error_estimate + slack;
      all_ok = all_ok && ok;
      table.push_back(json{{"m", m},
                           {"critical", cjson(cr.value)},
                           {"critical_err", cr.error_estimate},
                           {"closed", cjson(cl.value)},
                           {"closed_err", cl.error_estimate},
                           {"via_g", cjson(vg.value)},
                           {"via_g_err", vg.error_estimate},
                           {"boundary_mode", cr.boundary_mode || cl.boundary_mode || vg.boundary_mode},
                           {"pass", ok}});
    }
    rep.outputs["table"] = table;
    rep.verdict("poincare_identity", all_ok, "pairwise agreement within summed errors + " + fmt(slack));
  });

  // ---- kernel-coeff ----
  auto* kc = app.add_subcommand("kernel-coeff", "general kernel Fourier coefficient");
  int64_t kc_k = 6, kc_N = 1, kc_psi = 0, kc_chmod = 3, kc_chidx = 0, kc_m = 1;
  double kc_sre = 3.0, kc_sim = 0.0;
  kc->add_option("--k", kc_k)->required();
  kc->add_option("--N", kc_N)->required();
  kc->add_option("--psi-index", kc_psi);
  kc->add_option("--chi-modulus", kc_chmod)->required();
  kc->add_option("--chi-index", kc_chidx)->required();
  kc->add_option("--s-re", kc_sre)->required();
  kc->add_option("--s-im", kc_sim);
  kc->add_option("--m", kc_m)->required();
  kc->callback([&] {
    command = "kernel-coeff";
    rep.inputs = {{"k", kc_k},       {"N", kc_N},           {"psi-index", kc_psi},
                  {"chi-modulus", kc_chmod}, {"chi-index", kc_chidx}, {"s-re", kc_sre},
                  {"s-im", kc_sim},  {"m", kc_m}};
    kernel::KernelSpec spec{kc_k, kc_N, char_by_index(kc_N, kc_psi),
                            char_by_index(kc_chmod, kc_chidx), Complex{kc_sre, kc_sim}, trunc()};
    auto r = kernel::kernel_coeff_general(spec, kc_m);
    rep.outputs["coeff"] = cjson(r.value);
    rep.outputs["err"] = r.error_estimate;
    rep.outputs["stabilized"] = r.stabilized;
    rep.outputs["rigorous_tail"] = r.rigorous_tail;
    rep.outputs["n_used"] = r.n_used;
  });

  // ---- nonvanishing ----
  auto* nv = app.add_subcommand("nonvanishing", "Theorem-2 certificates and scans");
  nv->require_subcommand(1);
  double nv_t0 = 0.0, nv_eps = 0.25;
  int64_t nv_N = 1, nv_m = 1, nv_h = 3, nv_k = 6;
  int nv_grid = 513;

  auto* mw = nv->add_subcommand("min-weight", "smallest certified weight");
  mw->set_help_flag("--help", "print help");  // frees -h for the --h option
  mw->add_option("--t0", nv_t0);
  mw->add_option("--eps", nv_eps)->required();
  mw->add_option("--N", nv_N)->required();
  mw->add_option("--m", nv_m)->required();
  mw->add_option("--h", nv_h)->required();
  mw->add_option("--grid", nv_grid);
  mw->callback([&] {
    command = "nonvanishing min-weight";
    rep.inputs = {{"t0", nv_t0}, {"eps", nv_eps}, {"N", nv_N}, {"m", nv_m}, {"h", nv_h}, {"grid", nv_grid}};
    auto c = analysis::min_weight(nv_t0, nv_eps, nv_N, nv_m, nv_h, nv_grid);
    if (c) {
      rep.outputs["k"] = c->value;
      rep.outputs["worst_delta"] = c->worst_delta;
      rep.outputs["worst_margin"] = c->worst_margin;
    } else {
      rep.outputs["k"] = "NOT_FOUND";
    }
    rep.verdict("min_weight_found", c.has_value(),
                c ? "k = " + std::to_string(c->value) : "no k <= 10^4 certified");
  });

  auto* ml = nv->add_subcommand("min-level", "smallest certified level");
  ml->set_help_flag("--help", "print help");
  ml->add_option("--t0", nv_t0);
  ml->add_option("--eps", nv_eps)->required();
  ml->add_option("--k", nv_k)->required();
  ml->add_option("--m", nv_m)->required();
  ml->add_option("--h", nv_h)->required();
  ml->add_option("--grid", nv_grid);
  ml->callback([&] {
    command = "nonvanishing min-level";
    rep.inputs = {{"t0", nv_t0}, {"eps", nv_eps}, {"k", nv_k}, {"m", nv_m}, {"h", nv_h}, {"grid", nv_grid}};
    auto c = analysis::min_level(nv_t0, nv_eps, nv_k, nv_m, nv_h, nv_grid);
    if (c) {
      rep.outputs["N"] = c->value;
      rep.outputs["worst_delta"] = c->worst_delta;
      rep.outputs["worst_margin"] = c->worst_margin;
    } else {
      rep.outputs["N"] = "NOT_FOUND";
    }
    rep.verdict("min_level_found", c.has_value(),
                c ? "N = " + std::to_string(c->value) : "no certified level found");
  });

  auto* scan = nv->add_subcommand("scan", "kernel coefficient scan over a strip segment");
  double sc_lo = 0.0, sc_hi = 0.0, sc_step = 0.05, sc_thresh = 1e-6;
  scan->add_option("--k", nv_k)->required();
  scan->add_option("--N", nv_N)->required();
  scan->add_option("--psi-index", kc_psi);
  scan->add_option("--chi-modulus", kc_chmod)->required();
  scan->add_option("--chi-index", kc_chidx)->required();
  scan->add_option("--m", nv_m)->required();
  scan->add_option("--t0", nv_t0);
  scan->add_option("--sigma-lo", sc_lo)->required();
  scan->add_option("--sigma-hi", sc_hi)->required();
  scan->add_option("--step", sc_step);
  scan->add_option("--threshold", sc_thresh);
  scan->callback([&] {
    command = "nonvanishing scan";
    rep.inputs = {{"k", nv_k},       {"N", nv_N},     {"psi-index", kc_psi},
                  {"chi-modulus", kc_chmod}, {"chi-index", kc_chidx}, {"m", nv_m},
                  {"t0", nv_t0},     {"sigma-lo", sc_lo}, {"sigma-hi", sc_hi},
                  {"step", sc_step}, {"threshold", sc_thresh}};
    auto points = analysis::zero_scan(nv_k, nv_N, char_by_index(nv_N, kc_psi),
                                      char_by_index(kc_chmod, kc_chidx), nv_m, nv_t0, sc_lo,
                                      sc_hi, sc_step, sc_thresh, trunc());
    json rows = json::array();
    std::ostringstream csvs;
    csvs << "sigma,coeff_re,coeff_im,abs,err\n";
    csvs.precision(15);
    int flagged = 0;
    for (const auto& p : points) {
      rows.push_back(json{{"sigma", p.sigma},
                          {"coeff", cjson(p.coeff)},
                          {"abs", std::abs(p.coeff)},
                          {"err", p.err},
                          {"flagged", p.flagged}});
      csvs << p.sigma << ',' << p.coeff.real() << ',' << p.coeff.imag() << ','
           << std::abs(p.coeff) << ',' << p.err << '\n';
      if (p.flagged) ++flagged;
    }
    rep.outputs["points"] = rows;
    rep.outputs["flagged"] = flagged;
    csv_payload = csvs.str();
  });

  std::vector<std::string> cli_args(args.rbegin(), args.rend());
  auto t_start = std::chrono::steady_clock::now();
  try {
    app.parse(cli_args);
  } catch (const CLI::CallForHelp&) {
    out << app.help() << std::flush;
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help() << std::flush;
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "parameter error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  auto t_end = std::chrono::steady_clock::now();
  int64_t ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(t_end - t_start).count();

  json report;
  report["command"] = command;
  report["inputs"] = rep.inputs;
  report["outputs"] = rep.outputs;
  report["verdicts"] = rep.verdicts;
  report["timing_ms"] = timing ? ms : 0;  // deterministic output by default

  std::string payload = (csv && !csv_payload.empty()) ? csv_payload : report.dump(2) + "\n";
  if (!out_file.empty()) {
    std::ofstream f(out_file);
    f << payload;
  } else {
    out << payload;
  }
  return (rep.any_verdict && !rep.all_pass) ? 2 : 0;
}

}  // namespace lfk::cli

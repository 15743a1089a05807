#include "tslab/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "tslab/estimates.hpp"
#include "tslab/json_io.hpp"
#include "tslab/schreier.hpp"
#include "tslab/spaces.hpp"
#include "tslab/tsirelson.hpp"
#include "tslab/verification.hpp"

namespace tslab {

namespace {

/// Inline JSON when the argument starts with '{' or '[', else a file path.
Json load_json(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return parse_json_exact(arg);
  return read_json_file(arg);
}

struct Common {
  bool json = false;
  std::uint64_t seed = 0;
  std::string out_path;
};

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

std::string verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

int finish_verify(const std::string& command, const Json& config, const std::vector<SuiteReport>& suites,
                  double seconds, const Common& common, std::ostream& out) {
  const Json report = make_report(command, config, suites, seconds);
  if (!common.out_path.empty()) {
    std::ofstream file(common.out_path);
    if (!file) throw InputError("cannot write " + common.out_path);
    file << report.dump(2) << "\n";
  }
  if (common.json) {
    emit(out, report);
  } else {
    for (const auto& s : suites)
      for (const auto& c : s.checks) out << verdict(c.passed) << "  " << s.name << ": " << c.name << "\n";
    out << (report["passed"].get<bool>() ? "all checks passed" : "some checks FAILED") << "\n";
  }
  return report["passed"].get<bool>() ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Schreier families, Tsirelson-type norms and finite-window upper estimates", "tslab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));
  Limits limits = Limits::from_environment();
  int code = 0;

  // schreier ---------------------------------------------------------------
  auto* schreier = app.add_subcommand("schreier", "Schreier family queries");
  schreier->require_subcommand(1);
  bool schreier_json = false;
  schreier->add_flag("--json", schreier_json, "JSON output");

  std::string xi_text = "1", set_text, zeta_text, expect_text;
  std::uint32_t window = 0, d_max = 0;
  auto* member = schreier->add_subcommand("member", "Is F in S_xi?");
  member->add_option("--xi", xi_text, "ordinal, e.g. 2, w, w^2*3+w+5, w1")->required();
  member->add_option("--set", set_text, "comma separated set, e.g. 2,3,4")->required();
  member->add_option("--expect", expect_text, "assert the verdict (true|false); mismatch exits 1");
  member->add_flag("--json", schreier_json, "JSON output");
  member->callback([&] {
    const Ordinal xi = Ordinal::parse(xi_text);
    const FinSet F = FinSet::parse(set_text);
    const bool in = is_member(F, xi);
    if (schreier_json)
      emit(out, {{"set", to_json(F)}, {"xi", to_json(xi)}, {"member", in}});
    else
      out << (in ? "true" : "false") << "\n";
    if (!expect_text.empty()) {
      if (expect_text != "true" && expect_text != "false") throw InputError("--expect takes true or false");
      if (in != (expect_text == "true")) code = 1;
    }
  });

  auto* maximal = schreier->add_subcommand("maximal", "Maximal members of S_xi inside {1..K}");
  maximal->add_option("--xi", xi_text)->required();
  maximal->add_option("--window", window, "K")->required();
  maximal->add_flag("--json", schreier_json, "JSON output");
  maximal->callback([&] {
    const auto sets = maximal_members(Ordinal::parse(xi_text), window, limits);
    if (schreier_json) {
      Json list = Json::array();
      for (const auto& F : sets) list.push_back(to_json(F));
      emit(out, {{"xi", xi_text}, {"window", window}, {"maximal", list}});
    } else {
      for (const auto& F : sets) out << F.to_string() << "\n";
    }
  });

  auto* threshold = schreier->add_subcommand("threshold", "Least d with (S_zeta, min >= d) inside S_xi, within {1..K}");
  threshold->add_option("--zeta", zeta_text)->required();
  threshold->add_option("--xi", xi_text)->required();
  threshold->add_option("--window", window, "K")->required();
  threshold->add_option("--dmax", d_max, "largest d tried (default K)");
  threshold->add_flag("--json", schreier_json, "JSON output");
  threshold->callback([&] {
    const ThresholdResult t =
        subset_threshold(Ordinal::parse(zeta_text), Ordinal::parse(xi_text), window, d_max ? d_max : window, limits);
    if (schreier_json) {
      emit(out, to_json(t));
      return;
    }
    if (t.d)
      out << "d = " << *t.d << " (certified on {1.." << t.window << "} only)\n";
    else
      out << "no d <= " << t.d_max << " works within {1.." << t.window << "}\n";
    for (const auto& [d, F] : t.counterexamples) out << "  d = " << d << ": " << F.to_string() << "\n";
  });

  // norm / dual --------------------------------------------------------------
  std::string space_arg, vec_arg;
  bool json = false;
  auto* norm_cmd = app.add_subcommand("norm", "Norm of a vector in a space");
  norm_cmd->add_option("--space", space_arg, "space JSON file or inline JSON")->required();
  norm_cmd->add_option("--vec", vec_arg, "vector JSON file or inline JSON")->required();
  norm_cmd->add_flag("--json", json, "JSON output");
  norm_cmd->callback([&] {
    const Space space = space_from_json(load_json(space_arg));
    const Point x = point_from_json(load_json(vec_arg), space);
    NormEngine engine(limits);
    const NormValue v = engine.norm(space, x);
    if (json)
      emit(out, {{"space", to_json(space)}, {"vector", to_json(x)}, {"norm", to_json(v)}});
    else
      out << v.to_string() << "\n";
  });

  bool exact_flag = false, bracket_flag = false;
  unsigned restarts = 8;
  std::uint64_t seed = 0;
  auto* dual_cmd = app.add_subcommand("dual", "Dual norm in T_q*");
  dual_cmd->add_option("--space", space_arg, "tsirelson or tsirelson_dual space JSON")->required();
  dual_cmd->add_option("--vec", vec_arg, "functional x* as vector JSON")->required();
  auto* exact_opt = dual_cmd->add_flag("--exact", exact_flag, "exact LP (q = 1)");
  dual_cmd->add_flag("--bracket", bracket_flag, "lower and upper bounds")->excludes(exact_opt);
  dual_cmd->add_option("--restarts", restarts, "ascent restarts for the lower bound");
  dual_cmd->add_option("--seed", seed);
  dual_cmd->add_flag("--json", json, "JSON output");
  dual_cmd->callback([&] {
    const Space space = space_from_json(load_json(space_arg));
    if (space.kind != Space::Kind::tsirelson && space.kind != Space::Kind::tsirelson_dual)
      throw InputError("dual needs a tsirelson or tsirelson_dual space");
    const FinVec xstar = vector_from_json(load_json(vec_arg));
    const bool use_bracket = bracket_flag || (!exact_flag && !space.tsirelson.exact_q());
    if (!use_bracket) {
      const DualResult d = dual_norm(xstar, space.tsirelson, limits);
      if (json) {
        Json cert = Json::array();
        for (const auto& [f, w] : d.certificate) cert.push_back({{"functional", to_json(f)}, {"weight", to_json(w)}});
        emit(out, {{"value", to_json(d.value)}, {"witness", to_json(d.witness)}, {"certificate", cert},
                   {"cuts", d.cuts}, {"lp_solves", d.lp_solves}});
      } else {
        out << d.value.to_string() << "\nwitness " << d.witness.to_string() << "\n";
      }
      return;
    }
    BracketOptions bo;
    bo.restarts = restarts;
    bo.seed = seed;
    const DualBracket b = dual_norm_bracket(xstar, space.tsirelson, bo, limits);
    if (json)
      emit(out, {{"lower", to_json(b.lower)}, {"upper", to_json(b.upper)}, {"witness", to_json(b.witness)}});
    else
      out << "[" << b.lower.to_string() << ", " << b.upper.to_string() << "]\nwitness " << b.witness.to_string() << "\n";
  });

  // certify ----------------------------------------------------------------
  std::string vectors_arg, p_text = "inf", mode_text = "auto";
  unsigned cert_restarts = 32;
  std::uint32_t cert_window = 0;
  bool all_supports = false;
  auto* certify = app.add_subcommand("certify", "Finite-window upper l_p constant of a vector family");
  certify->add_option("--space", space_arg)->required();
  certify->add_option("--vectors", vectors_arg, "JSON array of vectors, file or inline")->required();
  certify->add_option("--xi", xi_text)->required();
  certify->add_option("--p", p_text, "exponent: 1, 2, 3/2, inf");
  certify->add_option("--mode", mode_text, "auto, exact or heuristic");
  certify->add_option("--restarts", cert_restarts);
  certify->add_option("--seed", seed);
  certify->add_option("--window", cert_window, "K (default: the family size)");
  certify->add_flag("--all-supports", all_supports, "enumerate every member, not only maximal ones");
  certify->add_flag("--json", json, "JSON output");
  certify->callback([&] {
    VectorFamily family;
    family.space = space_from_json(load_json(space_arg));
    family.vectors = points_from_json(load_json(vectors_arg), family.space);
    CertifyOptions co;
    co.mode = parse_certify_mode(mode_text);
    co.restarts = cert_restarts;
    co.seed = seed;
    co.all_supports = all_supports;
    if (cert_window) co.window = cert_window;
    NormEngine engine(limits);
    const WindowReport r = window_constant(family, Ordinal::parse(xi_text), Exponent::parse(p_text), engine, co);
    if (json) {
      emit(out, to_json(r));
    } else {
      out << "window constant " << r.constant.to_string() << " (" << to_string(r.mode) << ")\n"
          << "witness support " << r.witness_support.to_string() << "\n"
          << "witness coefficients " << r.witness_coeffs.to_string() << "\n";
    }
  });

  // verify -----------------------------------------------------------------
  Common common;
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->require_subcommand(1);
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", common.seed);
    cmd->add_option("--out", common.out_path, "also write the JSON report here");
    cmd->add_flag("--json", common.json, "print the JSON report");
  };
  auto timed = [&](const std::string& command, const Json& config, const std::function<std::vector<SuiteReport>()>& run) {
    const auto start = std::chrono::steady_clock::now();
    const auto suites = run();
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Json cfg = config;
    cfg["seed"] = common.seed;
    code = finish_verify(command, cfg, suites, seconds, common, out);
  };

  std::string q_text = "1";
  unsigned trials = 50;
  std::uint32_t verify_window = 14;
  auto* vblock = verify->add_subcommand("block", "Block estimate in T_q*");
  vblock->add_option("--q", q_text);
  vblock->add_option("--xi", xi_text);
  vblock->add_option("--trials", trials);
  vblock->add_option("--window", verify_window);
  vblock->add_option("--restarts", restarts);
  add_common(vblock);
  vblock->callback([&] {
    BlockOptions b;
    b.q = Exponent::parse(q_text);
    b.xi = Ordinal::parse(xi_text);
    b.trials = trials;
    b.window = verify_window;
    b.restarts = restarts;
    b.seed = common.seed;
    timed("verify block", {}, [&] { return std::vector<SuiteReport>{verify_block_estimate(b, limits)}; });
  });

  std::string vp_text = "2";
  std::uint32_t m = 4, xm_window = 16;
  auto* vxm = verify->add_subcommand("xm", "Lower bound m^(1-1/p) for the X_m identity");
  vxm->add_option("--p", vp_text);
  vxm->add_option("--m", m);
  vxm->add_option("--xi", xi_text);
  vxm->add_option("--window", xm_window);
  add_common(vxm);
  vxm->callback([&] {
    timed("verify xm", {}, [&] {
      return std::vector<SuiteReport>{
          verify_xm_bound(Exponent::parse(vp_text), m, Ordinal::parse(xi_text), xm_window, common.seed, limits)};
    });
  });

  unsigned configs = 20;
  auto* vsum = verify->add_subcommand("sum", "Direct-sum bound");
  vsum->add_option("--configs", configs);
  add_common(vsum);
  vsum->callback([&] {
    timed("verify sum", {}, [&] { return std::vector<SuiteReport>{verify_sum_bound(configs, common.seed, limits)}; });
  });

  unsigned families = 50;
  auto* vmono = verify->add_subcommand("mono", "Exponent monotonicity, subadditivity, scaling, decay");
  vmono->add_option("--families", families);
  add_common(vmono);
  vmono->callback([&] {
    timed("verify mono", {}, [&] { return std::vector<SuiteReport>{verify_monotonicity(families, common.seed, limits)}; });
  });

  std::uint32_t sep_window = 8;
  auto* vsep = verify->add_subcommand("sep", "Schreier-restricted versus unrestricted constants in T_q*");
  vsep->add_option("--q", q_text);
  vsep->add_option("--xi", xi_text);
  vsep->add_option("--window", sep_window);
  add_common(vsep);
  vsep->callback([&] {
    timed("verify sep", {}, [&] {
      return std::vector<SuiteReport>{
          separation_demo(Exponent::parse(q_text), Ordinal::parse(xi_text), sep_window, common.seed, limits)};
    });
  });

  std::uint32_t schreier_window = 12;
  auto* vschreier = verify->add_subcommand("schreier", "Exhaustive Schreier family checks");
  vschreier->add_option("--window", schreier_window);
  add_common(vschreier);
  vschreier->callback([&] {
    timed("verify schreier", {}, [&] { return std::vector<SuiteReport>{verify_schreier(schreier_window, limits)}; });
  });

  auto* vtsirelson = verify->add_subcommand("tsirelson", "Fixed point and convexification checks");
  add_common(vtsirelson);
  vtsirelson->callback([&] {
    timed("verify tsirelson", {}, [&] {
      return std::vector<SuiteReport>{verify_fixed_point(200, common.seed, limits),
                                      verify_convexification(100, common.seed, limits)};
    });
  });

  auto* vdual = verify->add_subcommand("dual", "Exact dual norms against brackets and the norming set");
  add_common(vdual);
  vdual->callback([&] {
    timed("verify dual", {}, [&] { return std::vector<SuiteReport>{verify_dual(30, common.seed, limits)}; });
  });

  auto* vall = verify->add_subcommand("all", "Every suite");
  add_common(vall);
  vall->callback([&] { timed("verify all", {}, [&] { return run_all(common.seed, limits); }); });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e, out, err);
    return status == 0 ? 0 : 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return code;
}

}  // namespace tslab

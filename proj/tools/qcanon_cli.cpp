// qcanon command line: identity checks, module/Psi/canonical-basis dumps and
// verification of the explicit canonical-basis families.
//
// Exit codes: 0 all checks passed, 1 mathematical mismatch, 2 usage error, 3 internal integrity failure.

#include "qcanon/qcanon.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace qcanon;

namespace {

constexpr const char* kSchema = "qcanon-report-1";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<int> int_list(const std::string& s, size_t n, const char* what) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError(std::string(what) + ": not an integer list: " + s);
    }
  }
  if (out.size() != n) throw UsageError(std::string(what) + ": expected " + std::to_string(n) + " integers, got " + s);
  return out;
}

struct Range {
  int lo = 0, hi = -1;
};

// "lo:hi" inclusive, or a single integer; lo > hi is an empty range.
Range parse_range(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) {
    auto v = int_list(s, 1, "range");
    return {v[0], v[0]};
  }
  auto lo = int_list(s.substr(0, colon), 1, "range");
  auto hi = int_list(s.substr(colon + 1), 1, "range");
  return {lo[0], hi[0]};
}

TensorParams tensor_params(const std::string& s) {
  auto v = int_list(s, 4, "--params");
  for (int x : v)
    if (x < 0) throw UsageError("--params entries must be nonnegative");
  return {v[0], v[1], v[2], v[3]};
}

Json vec_json(const TensorSpace& T, const TensorVec& x) {
  Json a = Json::array();
  for (const auto& [p, c] : x) {
    auto [lo, hi] = T.labels(p);
    a.push_back(Json{{"pair", p}, {"low", lo.to_string()}, {"high", hi.to_string()}, {"coeff", to_json(c)}});
  }
  return a;
}

Json params_json(TensorParams p) { return Json::array({p.s, p.t, p.a, p.b}); }

Json family_params_json(const FamilyParams& P) {
  return Json{{"h", P.h}, {"k", P.k}, {"j", P.j}, {"l", P.l}, {"m", P.m}, {"u", P.u}, {"v", P.v}, {"w", P.w}};
}

Json report_json(const VerificationReport& r, bool with_vectors) {
  Json outs = Json::array();
  for (const auto& o : r.outcomes) {
    Json j{{"params", params_json(o.tensor)}, {"outcome", to_string(o.kind)}, {"psi_fixed", o.psi_fixed}};
    auto T = tensor_space(o.tensor);
    if (o.pair) {
      auto [lo, hi] = T->labels(*o.pair);
      j["pair"] = Json{{"low", lo.to_string()}, {"high", hi.to_string()}};
    }
    if (with_vectors) j["vector"] = vec_json(*T, o.value);
    if (!o.detail.empty()) j["detail"] = o.detail;
    outs.push_back(std::move(j));
  }
  return Json{{"family", r.family.to_string()},
              {"params", family_params_json(r.params)},
              {"admissible", r.admissible},
              {"e_label", to_json(r.e_label)},
              {"f_label", to_json(r.f_label)},
              {"zeta", to_json(r.zeta)},
              {"mismatches", r.mismatches()},
              {"outcomes", std::move(outs)}};
}

FamilyParams family_params(const std::string& exps, const std::string& weight) {
  auto e = int_list(exps, 6, "--exps");
  auto w = int_list(weight, 2, "--weight");
  for (int x : e)
    if (x < 0) throw UsageError("--exps entries must be nonnegative");
  return {e[0], e[1], e[2], w[0], w[1], e[3], e[4], e[5]};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact canonical-basis computations for U_v(sl3)"};
  app.require_subcommand(1);
  std::string out_path, cache_dir;
  unsigned threads = 0;
  app.add_option("-o,--out", out_path, "write the JSON report here instead of stdout");
  app.add_option("--cache-dir", cache_dir, "Psi cache directory (overrides QCANON_CACHE_DIR)");
  app.add_option("-j,--threads", threads, "worker threads (0 = all cores)");

  // identities
  auto* ids = app.add_subcommand("identities", "check the three q-binomial identities over ranges");
  std::string a_n = "0:4", a_r = "0:4", a_m = "-5:5";
  std::string b_m = "0:6", b_k = "0:6", b_d = "0:4";
  std::string c_a = "0:4", c_c = "0:4", c_u = "0:3", c_r = "0:3", c_b = "-4:4";
  bool inject = false;
  ids->add_option("--a-n", a_n);
  ids->add_option("--a-r", a_r);
  ids->add_option("--a-m", a_m);
  ids->add_option("--b-m", b_m);
  ids->add_option("--b-k", b_k);
  ids->add_option("--b-delta", b_d);
  ids->add_option("--c-a", c_a);
  ids->add_option("--c-c", c_c);
  ids->add_option("--c-u", c_u);
  ids->add_option("--c-r", c_r);
  ids->add_option("--c-b", c_b);
  ids->add_flag("--inject-fault", inject, "negative control: perturb one side of identity (a)");

  auto* mod = app.add_subcommand("module", "dump a module realization");
  std::string weight;
  bool lowest = false;
  mod->add_option("--weight", weight, "a,b")->required();
  mod->add_flag("--lowest", lowest, "V(-a w1 - b w2) instead of V(a w1 + b w2)");

  auto* psi = app.add_subcommand("psi", "dump rho for every weight space of T");
  std::string params;
  bool by_span = false;
  psi->add_option("--params", params, "s,t,a,b")->required();
  psi->add_flag("--by-span", by_span, "use the word-spanning construction");

  auto* can = app.add_subcommand("canbasis", "dump the canonical basis of T");
  can->add_option("--params", params, "s,t,a,b")->required();

  auto* ver = app.add_subcommand("verify", "check one family element over a window");
  std::string family = "1", exps = "0,0,0,0,0,0", fweight = "0,0", expr;
  int window = 4, mutate = -1;
  ver->add_option("--family", family, "1..13, primed 1'..13', mirrors m1..m13'");
  ver->add_option("--exps", exps, "h,k,j,u,v,w");
  ver->add_option("--weight", fweight, "l,m");
  ver->add_option("--window", window)->check(CLI::NonNegativeNumber);
  ver->add_option("--mutate", mutate, "negative control: shift the top of this q-binomial slot");
  ver->add_option("--expr", expr, "check an arbitrary expression instead, e.g. 'e1^1 1[(0,0)] f1^1'");

  auto* all = app.add_subcommand("verify-all", "sweep all families");
  int max_exp = 2, max_weight = 6;
  std::string families;
  all->add_option("--max-exp", max_exp)->check(CLI::NonNegativeNumber);
  all->add_option("--window", window)->check(CLI::NonNegativeNumber);
  all->add_option("--max-weight", max_weight, "|l|,|m| bound")->check(CLI::NonNegativeNumber);
  all->add_option("--families", families, "comma separated ids (default: all 52)");

  auto* sig = app.add_subcommand("sigma-check", "check that sigma of a family element is canonical");
  sig->add_option("--family", family);
  sig->add_option("--exps", exps);
  sig->add_option("--weight", fweight);
  sig->add_option("--window", window)->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (!cache_dir.empty()) setenv("QCANON_CACHE_DIR", cache_dir.c_str(), 1);
  Json report{{"schema", kSchema}};
  int code = 0;
  try {
    if (*ids) {
      report["command"] = "identities";
      Json rows = Json::array();
      size_t fails = 0;
      auto record = [&](const char* name, Json args, std::pair<LaurentPoly, LaurentPoly> sides) {
        const bool ok = sides.first == sides.second;
        Json row{{"identity", name}, {"args", std::move(args)}, {"ok", ok}};
        if (!ok) {
          row["lhs"] = sides.first.to_string();
          row["rhs"] = sides.second.to_string();
          ++fails;
        }
        rows.push_back(std::move(row));
      };
      const Range an = parse_range(a_n), ar = parse_range(a_r), am = parse_range(a_m);
      for (int n = an.lo; n <= an.hi; ++n)
        for (int r = ar.lo; r <= ar.hi; ++r)
          for (int m = am.lo; m <= am.hi; ++m) {
            auto s = lemma41a_sides(n, r, m);
            if (inject && n == an.lo && r == ar.lo && m == am.lo) s.second += LaurentPoly::vpow(1);
            record("a", {n, r, m}, s);
          }
      const Range bm = parse_range(b_m), bk = parse_range(b_k), bd = parse_range(b_d);
      for (int m = bm.lo; m <= bm.hi; ++m)
        for (int k = std::max(bk.lo, 0); k <= std::min(bk.hi, m); ++k)
          for (int d = bd.lo; d <= bd.hi; ++d) record("b", {m, k, d}, lemma41b_sides(m, k, d));
      const Range ca = parse_range(c_a), cc = parse_range(c_c), cu = parse_range(c_u), cr = parse_range(c_r),
                  cb = parse_range(c_b);
      for (int a = ca.lo; a <= ca.hi; ++a)
        for (int c = std::max(cc.lo, 0); c <= std::min(cc.hi, a); ++c)
          for (int u = cu.lo; u <= cu.hi; ++u)
            for (int r = cr.lo; r <= cr.hi; ++r)
              for (int b = cb.lo; b <= cb.hi; ++b) record("c", {a, c, u, r, b}, lemma41c_sides(a, c, u, r, b));
      report["checked"] = rows.size();
      report["failures"] = fails;
      report["results"] = std::move(rows);
      code = fails ? 1 : 0;
    } else if (*mod) {
      auto w = int_list(weight, 2, "--weight");
      if (w[0] < 0 || w[1] < 0) throw UsageError("--weight entries must be nonnegative");
      ModulePtr m = lowest ? build_lowest_module(w[0], w[1]) : build_highest_module(w[0], w[1]);
      Json basis = Json::array(), weights = Json::array(), gens = Json::object();
      for (size_t i = 0; i < m->dim(); ++i) {
        basis.push_back(to_json(m->basis()[i]));
        weights.push_back(to_json(m->weights()[i]));
      }
      for (Gen g : kAllGens) {
        Json entries = Json::array();
        for (size_t c = 0; c < m->dim(); ++c)
          for (const auto& [r, x] : m->gen(g).cols[c]) entries.push_back(Json{{"row", r}, {"col", c}, {"value", to_json(x)}});
        gens[g.to_string()] = std::move(entries);
      }
      report["command"] = "module";
      report["kind"] = lowest ? "lowest" : "highest";
      report["weight"] = to_json(m->extremal_weight());
      report["dim"] = m->dim();
      report["basis"] = std::move(basis);
      report["weights"] = std::move(weights);
      report["generators"] = std::move(gens);
    } else if (*psi) {
      auto T = tensor_space(tensor_params(params));
      PsiOperator P = by_span ? build_psi_by_span(T) : load_or_build_psi(T, default_cache_dir());
      Json spaces = Json::array();
      bool identity = true;
      for (size_t si = 0; si < T->weight_spaces().size(); ++si) {
        const auto& ws = T->weight_spaces()[si];
        Json rho = Json::array();
        for (size_t r = 0; r < ws.pairs.size(); ++r) {
          Json row = Json::array();
          for (size_t c = 0; c < ws.pairs.size(); ++c) {
            row.push_back(to_json(P.rho(si)[r][c]));
            if (P.rho(si)[r][c] != LaurentPoly(r == c ? 1 : 0)) identity = false;
          }
          rho.push_back(std::move(row));
        }
        spaces.push_back(Json{{"weight", to_json(ws.weight)}, {"pairs", ws.pairs}, {"rho", std::move(rho)}});
      }
      report["command"] = "psi";
      report["params"] = params_json(T->params());
      // build_psi throws unless rho is unitriangular with bar(rho) rho = I
      report["checks"] = Json{{"unitriangular", true}, {"bar_rho_rho_identity", true}, {"identity", identity}};
      report["spaces"] = std::move(spaces);
    } else if (*can) {
      WorkspacePtr ws = workspace(tensor_params(params));
      const TensorSpace& T = *ws->space;
      Json elems = Json::array();
      size_t bad = 0;
      for (const auto& sp : T.weight_spaces())
        for (size_t p : sp.pairs) {
          const bool ok = verify_canonical(*ws->psi, ws->canon->at(p), p);
          bad += !ok;
          auto [lo, hi] = T.labels(p);
          elems.push_back(Json{{"pair", p}, {"low", lo.to_string()}, {"high", hi.to_string()}, {"verified", ok},
                               {"vector", vec_json(T, ws->canon->at(p))}});
        }
      report["command"] = "canbasis";
      report["params"] = params_json(T.params());
      report["count"] = elems.size();
      report["elements"] = std::move(elems);
      if (bad) throw IntegrityError(std::to_string(bad) + " canonical elements failed verification");
    } else if (*ver && !expr.empty()) {
      const UdotExpr x = UdotExpr::parse(expr);
      report["command"] = "verify";
      report["expr"] = x.to_string();
      if (!x.source_weight()) throw UsageError("--expr: words have different source weights");
      Json outs = Json::array();
      size_t bad = 0;
      for (const TupleOutcome& o : expression_verify(x, window)) {
        const bool ok = o.kind != Outcome::Mismatch;
        bad += !ok;
        outs.push_back(Json{{"params", params_json(o.tensor)},
                            {"canonical_or_zero", ok},
                            {"vector", vec_json(*tensor_space(o.tensor), o.value)}});
      }
      report["mismatches"] = bad;
      report["outcomes"] = std::move(outs);
      code = bad ? 1 : 0;
    } else if (*ver || *sig) {
      const FamilyId id = FamilyId::parse(family);
      const FamilyParams P = family_params(exps, fweight);
      std::optional<Mutation> mut;
      if (mutate >= 0) mut = Mutation{mutate, 1};
      VerificationReport r = *sig ? sigma_closure_check(id, P, window) : theorem31_verify(id, P, window, mut);
      report["command"] = *sig ? "sigma-check" : "verify";
      report["window"] = window;
      report["report"] = report_json(r, true);
      if (!r.admissible) report["note"] = "parameters violate the family's conditions; nothing checked";
      code = r.mismatches() ? 1 : 0;
    } else if (*all) {
      std::vector<FamilyId> ids_list;
      if (families.empty()) ids_list = all_families();
      else {
        std::stringstream in(families);
        std::string tok;
        while (std::getline(in, tok, ',')) ids_list.push_back(FamilyId::parse(tok));
      }
      Json fam = Json::array();
      size_t total_mismatch = 0, total_tuples = 0;
      for (const FamilyId& id : ids_list) {
        const auto ps = sweep_params(id, max_exp, max_weight, window);
        std::vector<VerificationReport> reps(ps.size());
        parallel_for(ps.size(), threads, [&](size_t i) { reps[i] = theorem31_verify(id, ps[i], window); });
        size_t canon = 0, zero = 0, mism = 0;
        Json failures = Json::array();
        for (const auto& r : reps) {
          for (const auto& o : r.outcomes) {
            if (o.kind == Outcome::MatchedCanonical) ++canon;
            else if (o.kind == Outcome::MatchedZero) ++zero;
            else ++mism;
          }
          if (r.mismatches()) failures.push_back(report_json(r, true));
        }
        total_mismatch += mism;
        total_tuples += ps.size();
        fam.push_back(Json{{"family", id.to_string()}, {"parameter_tuples", ps.size()}, {"matched_canonical", canon},
                           {"matched_zero", zero}, {"mismatches", mism}, {"failures", std::move(failures)}});
      }
      report["command"] = "verify-all";
      report["config"] = Json{{"max_exp", max_exp}, {"window", window}, {"max_weight", max_weight}};
      report["parameter_tuples"] = total_tuples;
      report["mismatches"] = total_mismatch;
      report["families"] = std::move(fam);
      code = total_mismatch ? 1 : 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const IntegrityError& e) {
    std::cerr << "integrity failure: " << e.what() << "\n";
    return 3;
  }

  const std::string text = report.dump(1);
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return 2;
    }
    out << text << "\n";
  }
  return code;
}

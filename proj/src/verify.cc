#include "drham/verify.hpp"

#include "drham/central.hpp"
#include "drham/gd.hpp"
#include "drham/models.hpp"
#include "drham/props.hpp"
#include "drham/random.hpp"

#include <atomic>
#include <chrono>
#include <thread>

namespace drham {

void RunConfig::validate() const {
    if (two_g_max < 2 || two_g_max % 2 != 0)
        throw std::invalid_argument("config: eps truncation order must be even and at least 2");
    if (jobs < 1) throw std::invalid_argument("config: jobs must be positive");
    if (cases < 1) throw std::invalid_argument("config: cases must be positive");
}

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
    std::string name;
    std::string scope;
    std::function<std::string()> body; // empty result = pass
};

/// Runs independent checks on a bounded pool; results keep declaration order.
std::vector<CheckResult> run_checks(const std::vector<Check> &checks, int jobs) {
    std::vector<CheckResult> out(checks.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= checks.size()) return;
            CheckResult r;
            r.name = checks[i].name;
            r.scope = checks[i].scope;
            auto t0 = Clock::now();
            try {
                std::string fail = checks[i].body();
                r.pass = fail.empty();
                r.detail = fail;
            } catch (const std::exception &e) {
                r.pass = false;
                r.detail = std::string("exception: ") + e.what();
            }
            r.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
            out[i] = std::move(r);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto &t : pool) t.join();
    }
    return out;
}

std::string check_eq(bool ok, const std::string &msg) { return ok ? "" : msg; }

/// Residual witness for an operator comparison: the first differing entry.
std::string op_diff(const MatDiffOp &got, const MatDiffOp &want) {
    if (got.n() != want.n()) return "sizes differ";
    for (int i = 0; i < got.n(); ++i)
        for (int j = 0; j < got.n(); ++j)
            if (!(got.at(i, j) == want.at(i, j)))
                return "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                       ") residual: " + (got.at(i, j) - want.at(i, j)).str();
    return "";
}

std::string check_op(const MatDiffOp &got, const MatDiffOp &want) { return op_diff(got, want); }

std::string steps_summary(const std::vector<RecursionStep> &steps) {
    for (auto &s : steps)
        if (!s.pass)
            return "failed at (alpha=" + std::to_string(s.alpha + 1) + ", d=" + std::to_string(s.d) +
                   "): " + s.note;
    return "";
}

/// Common model-level checks shared by every CohFT target.
void push_model_checks(std::vector<Check> &checks, const CohFTModel &m, const MatDiffOp &K2,
                       const std::string &scope) {
    checks.push_back({"homogeneity E-hat g = (3-delta) g + A-term", scope,
                      [&m] { return check_eq(check_homogeneity(m), "identity fails"); }});
    checks.push_back({"K2 defining and alternative forms agree", scope, [&m, &K2] {
                          return check_eq(build_K2(m, K2Form::defining) == K2, "forms differ");
                      }});
    checks.push_back({"K2 is skew", scope, [&K2] { return check_eq(K2.is_skew(), "not skew"); }});
    checks.push_back({"lemma B_{K2} = [V_R, B_{K1}]", scope, [&m, &K2] {
                          MatDiffOp K1 = k1_operator(m.ring, m.h.eta_inv());
                          MatDiffOp Kt = commutator_VQ_BK(r_vector_field(m.gbar, m.h), K1);
                          bool ok = functional_equal(
                              bivector_of_op(K2), MultiVector(-bivector_of_op(Kt, false).density()));
                          return check_eq(ok, "bivectors differ");
                      }});
    if (m.potential) {
        checks.push_back({"density restricts to the potential at eps=0", scope, [&m] {
                              bool ok = functional_equal(LocalFunctional(m.gbar.eps_coefficient(0)),
                                                         LocalFunctional(*m.potential));
                              return check_eq(ok, "eps=0 part differs from F");
                          }});
        checks.push_back({"dispersionless part matches the potential operator", scope, [&m, &K2] {
                              MatDiffOp k0 = genus0_k2(*m.potential, m.h);
                              return check_eq(K2.eps_coefficient(0) == k0, "dispersionless parts differ");
                          }});
    }
}

Report verify_kdv(const RunConfig &cfg) {
    Report rep;
    rep.target = "kdv";
    rep.seed = cfg.seed;
    rep.two_g_max = cfg.two_g_max;
    CohFTModel m = builtin_trivial(cfg.two_g_max);
    MatDiffOp K2 = build_K2(m);
    MatDiffOp K1 = k1_operator(m.ring, m.h.eta_inv());
    std::vector<Check> checks;
    push_model_checks(checks, m, K2, m.scope());
    checks.push_back({"K2 = u dx + u_x/2 + (eps^2/8) dx^3", "exact", [&] {
                          return check_op(K2, expected_k2_kdv(m.ring));
                      }});
    checks.push_back({"K2 is Poisson", "exact",
                      [&] { return check_eq(is_poisson(K2), "[B,B] != 0"); }});
    checks.push_back({"pair (K1, K2) is compatible", "exact",
                      [&] { return check_eq(compatible(K1, K2), "mixed bracket nonzero"); }});
    GenerateResult gen = recursion_generate(m.h, K2, m.ring, cfg.d_max + 1);
    checks.push_back({"recursion generation through d = " + std::to_string(cfg.d_max + 1), "exact",
                      [&gen] { return check_eq(gen.ok, steps_summary(gen.log)); }});
    checks.push_back({"bihamiltonian recursion for d = -1.." + std::to_string(cfg.d_max), "exact",
                      [&] { return steps_summary(recursion_check(m.h, K2, gen.table)); }});
    checks.push_back({"generated level 1 matches the stated Hamiltonian", "exact", [&] {
                          auto it = gen.table.find({0, 1});
                          if (it == gen.table.end()) return std::string("level 1 missing");
                          return check_eq(functional_equal(it->second,
                                                           LocalFunctional(m.known.at({0, 1}))),
                                          "functionals differ");
                      }});
    checks.push_back({"dispersionless tails u^{d+2}/(d+2)!", "exact", [&] {
                          for (auto &[key, g] : gen.table) {
                              int d = key.second;
                              DiffPoly tail(m.ring);
                              Rat fact(1);
                              for (int i = 2; i <= d + 2; ++i) fact *= Rat(i);
                              DiffPoly want = DiffPoly::constant(m.ring, fact.inv());
                              for (int i = 0; i < d + 2; ++i) want *= DiffPoly::u_var(m.ring, 0, 0);
                              if (!functional_equal(LocalFunctional(g.density().eps_coefficient(0)),
                                                    LocalFunctional(want)))
                                  return "tail differs at d = " + std::to_string(d);
                          }
                          return std::string();
                      }});
    checks.push_back({"scalar central invariant = 1/24", "exact", [&] {
                          return check_eq(central_invariant_scalar(K1, K2).equals_constant(Rat(1, 24)),
                                          "central invariant differs");
                      }});
    checks.push_back({"eps^2 coefficient tensor identity", "exact",
                      [&] { return check_eq(eps2_tensor_check(m), "tensor identity fails"); }});
    checks.push_back({"genus-0 recursion and homogeneity, d <= 3", "exact", [&] {
                          Genus0Report g0 = genus0_check(m, 3);
                          if (!g0.unit_axiom) return std::string("unit axiom fails");
                          std::string s = steps_summary(g0.recursion);
                          return s.empty() ? steps_summary(g0.homogeneity) : s;
                      }});
    rep.checks = run_checks(checks, cfg.jobs);
    return rep;
}

Report verify_rspin(int r, const RunConfig &cfg) {
    Report rep;
    rep.target = std::to_string(r) + "spin";
    rep.seed = cfg.seed;
    rep.two_g_max = cfg.two_g_max;
    const int cap_needed = 2 * (r - 1);
    const int cap = std::max(cfg.two_g_max, cap_needed);
    CohFTModel m = builtin_rspin(r, cap);
    MatDiffOp K2 = build_K2(m);
    MatDiffOp K1 = k1_operator(m.ring, m.h.eta_inv());
    std::vector<Check> checks;
    push_model_checks(checks, m, K2, m.scope());
    if (r == 3)
        checks.push_back({"K2 equals the displayed 3-spin matrix", "exact", [&] {
                              return check_op(K2, expected_k2_3spin(m.ring));
                          }});
    if (r == 4)
        checks.push_back({"K2-from-density maps onto the displayed 4-spin matrix", "exact", [&] {
                              return check_op(miura_to_dr(4, K2), expected_k2_4spin(m.ring));
                          }});
    checks.push_back({"K2 is Poisson ([B_{K2}, B_{K2}] = 0)", "exact",
                      [&] { return check_eq(is_poisson(K2), "self-bracket nonzero"); }});
    checks.push_back({"[B_{K2}, B_{K1}] = 0", "exact",
                      [&] { return check_eq(schouten_commute(K1, K2), "mixed bracket nonzero"); }});

    // Gelfand-Dickey side
    RSpinPackage pkg = rspin_package(r, 1);
    checks.push_back({"Miura carries eta^{-1} dx onto the r-spin first operator", "exact", [&] {
                          MatDiffOp emb = embed_eps_op(pkg.k1, m.ring);
                          return check_eq(emb == miura_to_dr(r, K1),
                                          "transformed first operator differs");
                      }});
    if (r == 4)
        checks.push_back({"GD K2 equals the displayed 4-spin matrix", "exact", [&] {
                              auto target = make_ring(r - 1, cap);
                              MatDiffOp emb = embed_eps_op(pkg.k2, target);
                              return check_op(emb, expected_k2_4spin(target));
                          }});
    checks.push_back({"GD K2 equals K2 from the density", "exact", [&] {
                          MatDiffOp emb = embed_eps_op(pkg.k2, m.ring);
                          return check_op(emb, miura_to_dr(r, K2));
                      }});
    checks.push_back({"DZ bihamiltonian recursion d = -1, 0", "exact", [&] {
                          for (auto &[key, ok] : dz_recursion_check(pkg))
                              if (!ok)
                                  return "fails at (alpha=" + std::to_string(key.first) +
                                         ", d=" + std::to_string(key.second) + ")";
                          return std::string();
                      }});
    checks.push_back({"GD pair recursion and Casimirs", "exact", [&] {
                          GDContext ctx(r, cfg.pdo_depth);
                          MatDiffOp k1 = gd_k1(ctx), k2 = gd_k2(ctx);
                          // Casimirs of the first structure
                          for (int alpha = 1; alpha <= r - 1; ++alpha) {
                              LocalFunctional h = gd_hamiltonian(ctx, alpha, -1);
                              std::vector<DiffPoly> grad;
                              for (int b = 0; b <= r - 2; ++b) grad.push_back(h.var_u(b));
                              for (auto &c : k1.apply(grad))
                                  if (!c.is_zero())
                                      return "Casimir property fails at alpha=" + std::to_string(alpha);
                          }
                          // {., h_{a,A}}_{K2} = -{., h_{a,A+1}}_{K1}
                          for (int alpha = 1; alpha <= r - 1; ++alpha)
                              for (int a = -1; a <= 0; ++a) {
                                  LocalFunctional h0 = gd_hamiltonian(ctx, alpha, a);
                                  LocalFunctional h1 = gd_hamiltonian(ctx, alpha, a + 1);
                                  std::vector<DiffPoly> g0, g1;
                                  for (int b = 0; b <= r - 2; ++b) {
                                      g0.push_back(h0.var_u(b));
                                      g1.push_back(h1.var_u(b));
                                  }
                                  auto lhs = k2.apply(g0), rhs = k1.apply(g1);
                                  for (int b = 0; b <= r - 2; ++b)
                                      if (!(lhs[b] == -rhs[b]))
                                          return "GD recursion fails at alpha=" +
                                                 std::to_string(alpha) + ", a=" + std::to_string(a);
                              }
                          return std::string();
                      }});
    checks.push_back({"GD Hamiltonians commute pairwise under K1 (a <= 2)", "exact", [&] {
                          GDContext ctx(r, cfg.pdo_depth);
                          MatDiffOp k1 = gd_k1(ctx);
                          std::vector<LocalFunctional> hams;
                          for (int alpha = 1; alpha <= r - 1; ++alpha)
                              for (int a = -1; a <= 2; ++a)
                                  hams.push_back(gd_hamiltonian(ctx, alpha, a));
                          for (size_t i = 0; i < hams.size(); ++i)
                              for (size_t j = i + 1; j < hams.size(); ++j)
                                  if (!is_zero_functional(
                                          poisson_bracket(hams[i], hams[j], k1, false)))
                                      return "bracket nonzero for pair (" + std::to_string(i) +
                                             ", " + std::to_string(j) + ")";
                          return std::string();
                      }});
    checks.push_back({"GD pair is Poisson and compatible", "exact", [&] {
                          // the bracket computation is eps-free and exact in the graded
                          // picture; it is equivalent to the statement per eps-order
                          GDContext ctx(r, cfg.pdo_depth);
                          MatDiffOp k1 = gd_k1(ctx), k2 = gd_k2(ctx);
                          auto target = make_ring(2 * r - 1, 2 * r);
                          (void)embed_eps_op(k2, target); // validates the degree-1 grading
                          if (!is_poisson(k1)) return std::string("first operator not Poisson");
                          if (!is_poisson(k2)) return std::string("second operator not Poisson");
                          return check_eq(schouten_commute(k1, k2), "pair not compatible");
                      }});

    // recursion on the DR side
    GenerateResult gen = recursion_generate(m.h, K2, m.ring, 1);
    checks.push_back({"recursion generation through d = 1", "exact",
                      [&gen] { return check_eq(gen.ok, steps_summary(gen.log)); }});
    checks.push_back({"bihamiltonian recursion d = -1..0", "exact",
                      [&] { return steps_summary(recursion_check(m.h, K2, gen.table)); }});
    checks.push_back({"level-0 Hamiltonians are the density derivatives", "exact", [&] {
                          for (int a = 0; a < m.h.n; ++a) {
                              auto it = gen.table.find({a, 0});
                              if (it == gen.table.end()) return std::string("level 0 missing");
                              if (!functional_equal(it->second,
                                                    LocalFunctional(m.gbar.partial_u(a, 0))))
                                  return "differs at alpha = " + std::to_string(a + 1);
                          }
                          return std::string();
                      }});
    checks.push_back({"eps^2 coefficient tensor identity", "exact",
                      [&] { return check_eq(eps2_tensor_check(m), "tensor identity fails"); }});
    checks.push_back({"genus-0 recursion and homogeneity, d <= 3", "exact", [&] {
                          Genus0Report g0 = genus0_check(m, 3);
                          if (!g0.unit_axiom) return std::string("unit axiom fails");
                          std::string s = steps_summary(g0.recursion);
                          return s.empty() ? steps_summary(g0.homogeneity) : s;
                      }});
    rep.checks = run_checks(checks, cfg.jobs);
    return rep;
}

Report verify_rspin5(const RunConfig &cfg) {
    Report rep;
    rep.target = "rspin5";
    rep.seed = cfg.seed;
    rep.two_g_max = cfg.two_g_max;
    std::vector<Check> checks;
    RSpinPackage pkg = rspin_package(5, 1);
    checks.push_back({"Miura carries eta^{-1} dx onto the 5-spin first operator", "exact", [&] {
                          HomogeneityData h = rspin_homogeneity(5);
                          auto target = make_ring(4, 8);
                          MatDiffOp emb = embed_eps_op(pkg.k1, target);
                          MatDiffOp k1 = k1_operator(target, h.eta_inv());
                          return check_eq(emb == miura_to_dr(5, k1),
                                          "transformed first operator differs");
                      }});
    checks.push_back({"K2^{5-spin} computed, skew, graded", "exact", [&] {
                          if (!pkg.k2.is_skew()) return std::string("not skew");
                          auto target = make_ring(4, 8);
                          (void)embed_eps_op(pkg.k2, target); // validates the degree-1 grading
                          return std::string();
                      }});
    checks.push_back({"DZ bihamiltonian recursion d = -1, 0", "exact", [&] {
                          for (auto &[key, ok] : dz_recursion_check(pkg))
                              if (!ok)
                                  return "fails at (alpha=" + std::to_string(key.first) +
                                         ", d=" + std::to_string(key.second) + ")";
                          return std::string();
                      }});
    if (cfg.g_file.empty()) {
        checks.push_back({"DR-side comparison", "skipped", [] {
                              return std::string(); // documented: needs an external density file
                          }});
        rep.checks = run_checks(checks, cfg.jobs);
        for (auto &c : rep.checks)
            if (c.scope == "skipped") c.detail = "requires --g-file with the 5-spin density";
        return rep;
    }
    CohFTModel m = load_model(cfg.g_file, std::max(cfg.two_g_max, 8));
    HomogeneityData h5 = rspin_homogeneity(5);
    const bool data_match =
        m.h.n == h5.n && m.h.eta == h5.eta && m.h.q == h5.q && m.h.delta == h5.delta;
    checks.push_back({"ingested homogeneity data matches the 5-spin theory", "exact", [&] {
                          return check_eq(data_match, "homogeneity data differs");
                      }});
    if (data_match) {
        checks.push_back({"homogeneity of the ingested density", m.scope(),
                          [&] { return check_eq(check_homogeneity(m), "identity fails"); }});
        checks.push_back({"K2-from-density maps onto K2^{5-spin}", m.scope(), [&] {
                              MatDiffOp K2 = build_K2(m);
                              MatDiffOp emb = embed_eps_op(pkg.k2, m.ring);
                              return check_op(miura_to_dr(5, K2), emb);
                          }});
    }
    rep.checks = run_checks(checks, cfg.jobs);
    return rep;
}

Report verify_cp1(const RunConfig &cfg) {
    Report rep;
    rep.target = "cp1";
    rep.seed = cfg.seed;
    rep.two_g_max = cfg.two_g_max;
    CohFTModel m = builtin_cp1(cfg.two_g_max);
    const std::string scope = m.scope();
    MatDiffOp K2 = build_K2(m);
    MatDiffOp K1 = k1_operator(m.ring, m.h.eta_inv());
    std::vector<Check> checks;
    push_model_checks(checks, m, K2, scope);
    checks.push_back({"K2 equals the closed-form shift-operator matrix", scope, [&] {
                          return check_op(K2, expected_k2_cp1(m.ring));
                      }});
    checks.push_back({"K2 is Poisson", scope,
                      [&] { return check_eq(is_poisson(K2), "self-bracket nonzero"); }});
    checks.push_back({"pair (K1, K2) is compatible", scope,
                      [&] { return check_eq(compatible(K1, K2), "mixed bracket nonzero"); }});
    checks.push_back({"Toda pair maps onto (K1, K2) under the Miura map", scope, [&] {
                          TodaPair toda = builtin_toda(cfg.two_g_max);
                          auto [map, inv] = toda_to_dr(toda, m.ring);
                          MatDiffOp t1 = miura_op(toda.k1, map, inv);
                          if (!(t1 == K1)) return std::string("first operators differ");
                          MatDiffOp t2 = miura_op(toda.k2, map, inv);
                          return check_eq(t2 == K2, "second operators differ");
                      }});
    checks.push_back({"(D-2) g equals the stated level (1,1) density", scope, [&] {
                          DiffPoly lhs = dilation_D(m.gbar) - m.gbar.scaled(Rat(2));
                          bool ok = functional_equal(LocalFunctional(lhs),
                                                     LocalFunctional(m.known.at({0, 1})));
                          return check_eq(ok, "densities differ");
                      }});
    // level-0 table from dg/du^alpha
    HamTable table = casimirs(m.h, m.ring);
    for (int a = 0; a < 2; ++a)
        table.emplace(std::make_pair(a, 0), LocalFunctional(m.gbar.partial_u(a, 0)));
    checks.push_back({"bihamiltonian recursion at d = -1", scope,
                      [&] { return steps_summary(recursion_check(m.h, K2, table)); }});
    checks.push_back({"recursion step d = 0: flows integrate to level-1 Hamiltonians", scope, [&] {
                          // W = K2 grad g_{a,0} - A-part must lie in Im(eta^{-1} dx)
                          // and its potential must pass the gradient test
                          auto mu = m.h.mu();
                          auto aupper = m.h.a_upper();
                          for (int alpha = 0; alpha < 2; ++alpha) {
                              std::vector<DiffPoly> w = K2.apply(table.at({alpha, 0}).gradient());
                              for (int b = 0; b < 2; ++b) {
                                  if (aupper[b][alpha].is_zero()) continue;
                                  auto add = table.at({b, 0}).gradient();
                                  for (auto &c : add) c = c.dx();
                                  // K1 = eta^{-1} dx with antidiagonal eta
                                  std::vector<DiffPoly> k1g{add[1], add[0]};
                                  for (int c2 = 0; c2 < 2; ++c2)
                                      w[c2] -= k1g[c2].scaled(aupper[b][alpha]);
                              }
                              Rat factor = Rat(3, 2) + mu[alpha];
                              std::vector<DiffPoly> E(2, DiffPoly(m.ring));
                              for (int nu = 0; nu < 2; ++nu) {
                                  DiffPoly target = w[1 - nu].scaled(factor.inv());
                                  if (!is_dx_exact(target))
                                      return "flow not exact at alpha=" + std::to_string(alpha + 1);
                                  E[nu] = dx_invert(target);
                              }
                              if (!helmholtz_ok(E))
                                  return "gradient test fails at alpha=" + std::to_string(alpha + 1);
                              if (alpha == 0) {
                                  // the level (1,1) functional is known in closed form; the
                                  // recursion pins it only up to Casimirs, i.e. the gradients
                                  // may differ by a constant vector
                                  LocalFunctional known(m.known.at({0, 1}));
                                  for (int nu = 0; nu < 2; ++nu) {
                                      DiffPoly diff = known.var_u(nu) - E[nu];
                                      if (!(diff == diff.eval_origin()))
                                          return std::string("generated level (1,1) differs from the "
                                                             "stated density beyond a Casimir");
                                  }
                              }
                          }
                          return std::string();
                      }});
    checks.push_back({"eps^2 coefficient tensor identity", "exact (eps^2 slice)",
                      [&] { return check_eq(eps2_tensor_check(m), "tensor identity fails"); }});
    checks.push_back({"genus-0 recursion and homogeneity, d <= 3", "exact", [&] {
                          Genus0Report g0 = genus0_check(m, 3);
                          if (!g0.unit_axiom) return std::string("unit axiom fails");
                          std::string s = steps_summary(g0.recursion);
                          return s.empty() ? steps_summary(g0.homogeneity) : s;
                      }});
    rep.checks = run_checks(checks, cfg.jobs);
    return rep;
}

Report verify_genus0(const RunConfig &cfg) {
    Report rep;
    rep.target = "genus0";
    rep.seed = cfg.seed;
    rep.two_g_max = cfg.two_g_max;
    std::vector<Check> checks;
    std::vector<CohFTModel> models;
    for (auto name : {"trivial", "3spin", "4spin", "cp1"}) models.push_back(builtin_model(name, 2));
    for (auto &m : models)
        checks.push_back({"genus-0 recursion and homogeneity for " + m.name + ", d <= " +
                              std::to_string(cfg.d_max),
                          "exact", [&m, &cfg] {
                              Genus0Report g0 = genus0_check(m, cfg.d_max);
                              if (!g0.unit_axiom) return std::string("unit axiom fails");
                              std::string s = steps_summary(g0.recursion);
                              return s.empty() ? steps_summary(g0.homogeneity) : s;
                          }});
    rep.checks = run_checks(checks, cfg.jobs);
    return rep;
}

Report verify_central(const RunConfig &cfg) {
    Report rep;
    rep.target = "central";
    rep.seed = cfg.seed;
    rep.two_g_max = cfg.two_g_max;
    std::vector<Check> checks;
    checks.push_back({"KdV pencil central invariant = 1/24", "exact", [&] {
                          CohFTModel m = builtin_trivial(cfg.two_g_max);
                          MatDiffOp K2 = build_K2(m);
                          MatDiffOp K1 = k1_operator(m.ring, m.h.eta_inv());
                          return check_eq(central_invariant_scalar(K1, K2).equals_constant(Rat(1, 24)),
                                          "value differs");
                      }});
    checks.push_back({"mu eta + eta mu = 0 for every builtin", "exact", [&] {
                          for (auto name : {"trivial", "3spin", "4spin", "cp1"}) {
                              CohFTModel m = builtin_model(name, 2);
                              auto mu = m.h.mu();
                              for (int i = 0; i < m.h.n; ++i)
                                  for (int j = 0; j < m.h.n; ++j)
                                      if (!((mu[i] + mu[j]) * m.h.eta[i][j]).is_zero())
                                          return std::string("identity fails for ") + name;
                          }
                          return std::string();
                      }});
    for (auto name : {"trivial", "3spin", "4spin", "cp1"})
        checks.push_back({std::string("eps^2 tensor identity for ") + name, "exact (eps^2 slice)",
                          [name, &cfg] {
                              CohFTModel m = builtin_model(name, std::max(2, cfg.two_g_max));
                              return check_eq(eps2_tensor_check(m), "tensor identity fails");
                          }});
    rep.checks = run_checks(checks, cfg.jobs);
    return rep;
}

} // namespace

Report verify_target(const std::string &target, const RunConfig &cfg) {
    cfg.validate();
    if (target == "kdv") return verify_kdv(cfg);
    if (target == "rspin3") return verify_rspin(3, cfg);
    if (target == "rspin4") return verify_rspin(4, cfg);
    if (target == "rspin5") return verify_rspin5(cfg);
    if (target == "cp1") return verify_cp1(cfg);
    if (target == "genus0") return verify_genus0(cfg);
    if (target == "central") return verify_central(cfg);
    throw std::invalid_argument("unknown target '" + target + "'");
}

Report run_properties(const RunConfig &cfg) {
    cfg.validate();
    Report rep;
    rep.target = "properties";
    rep.seed = cfg.seed;
    rep.two_g_max = cfg.two_g_max;
    rep.checks = run_property_suites(cfg.seed, cfg.cases, cfg.suite);
    return rep;
}

} // namespace drham

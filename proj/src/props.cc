#include "drham/props.hpp"

#include "drham/central.hpp"
#include "drham/gd.hpp"
#include "drham/models.hpp"
#include "drham/random.hpp"

#include <chrono>
#include <cstdio>

namespace drham {

namespace {

using Clock = std::chrono::steady_clock;

CheckResult timed(const std::string &name, const std::function<std::string()> &body) {
    CheckResult r;
    r.name = name;
    r.scope = "exact";
    auto t0 = Clock::now();
    try {
        std::string fail = body();
        r.pass = fail.empty();
        r.detail = fail;
    } catch (const std::exception &e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return r;
}

/// Greedy shrink: drop terms of the witness while the predicate keeps failing.
DiffPoly shrink_poly(const DiffPoly &bad, const std::function<bool(const DiffPoly &)> &fails) {
    DiffPoly cur = bad;
    bool progress = true;
    while (progress && cur.size() > 1) {
        progress = false;
        for (auto &[m, c] : cur.terms()) {
            DiffPoly cand = cur;
            DiffPoly term(cur.ring());
            term.add_term(m, c);
            cand -= term;
            if (!cand.is_zero() && fails(cand)) {
                cur = cand;
                progress = true;
                break;
            }
        }
    }
    return cur;
}

RingPtr small_ring(int n, int cap = 4) { return make_ring(n, cap); }

std::string fail_case(int i, const std::string &what) {
    return "case " + std::to_string(i) + ": " + what;
}

// ---- individual suites -----------------------------------------------------

std::string suite_dx_derivation(uint64_t seed, int cases) {
    Rng rng(seed);
    auto ring = small_ring(2);
    RandomSpec spec;
    for (int i = 0; i < cases; ++i) {
        spec.theta_degree = int(rng.below(2));
        DiffPoly a = random_poly(rng, ring, spec);
        spec.theta_degree = int(rng.below(2));
        DiffPoly b = random_poly(rng, ring, spec);
        auto holds = [](const DiffPoly &x, const DiffPoly &y) {
            return (x * y).dx() == x.dx() * y + x * y.dx();
        };
        if (!holds(a, b)) {
            // shrink the witness before reporting
            DiffPoly sa = shrink_poly(a, [&](const DiffPoly &x) { return !holds(x, b); });
            DiffPoly sb = shrink_poly(b, [&](const DiffPoly &y) { return !holds(sa, y); });
            return fail_case(i, "dx is not a derivation on " + sa.str() + " | " + sb.str());
        }
    }
    return "";
}

std::string suite_adjoint(uint64_t seed, int cases) {
    Rng rng(seed);
    auto ring = small_ring(2);
    RandomSpec spec;
    spec.max_jet = 2;
    for (int i = 0; i < cases; ++i) {
        MatDiffOp a = random_mat_op(rng, ring, spec, 2);
        MatDiffOp b = random_mat_op(rng, ring, spec, 2);
        if (!(a.adjoint().adjoint() == a)) return fail_case(i, "adjoint is not an involution");
        if (!(compose(a, b).adjoint() == compose(b.adjoint(), a.adjoint())))
            return fail_case(i, "(AB)^dagger != B^dagger A^dagger");
    }
    return "";
}

std::string suite_ring_axioms(uint64_t seed, int cases) {
    Rng rng(seed);
    auto ring = small_ring(2);
    for (int i = 0; i < cases; ++i) {
        RandomSpec spec;
        spec.theta_degree = int(rng.below(3));
        DiffPoly a = random_poly(rng, ring, spec);
        spec.theta_degree = int(rng.below(3));
        DiffPoly b = random_poly(rng, ring, spec);
        spec.theta_degree = int(rng.below(2));
        DiffPoly c = random_poly(rng, ring, spec);
        if (!((a * b) * c == a * (b * c))) return fail_case(i, "associativity failed");
        int pa = a.theta_degree_max(), pb = b.theta_degree_max();
        DiffPoly ba = b * a;
        if (pa % 2 == 1 && pb % 2 == 1) ba = -ba;
        if (!(a * b == ba)) return fail_case(i, "supercommutativity failed");
    }
    return "";
}

std::string suite_gradation(uint64_t seed, int cases) {
    Rng rng(seed);
    auto ring = small_ring(2);
    for (int i = 0; i < cases; ++i) {
        RandomSpec spec;
        spec.theta_degree = int(rng.below(2));
        DiffPoly a = random_poly(rng, ring, spec);
        // pick one homogeneous slice
        if (a.is_zero()) continue;
        long d = a.terms().begin()->first.standard_degree();
        DiffPoly h = a.standard_degree_part(d);
        DiffPoly dh = h.dx();
        if (!dh.is_zero()) {
            auto deg = dh.standard_degree();
            if (!deg || *deg != d + 1) return fail_case(i, "dx does not raise the degree by one");
        }
        if (!dh.theta_homogeneous(h.theta_degree_max()) && !dh.is_zero())
            return fail_case(i, "dx changed the theta degree");
    }
    return "";
}

std::string suite_truncation(uint64_t seed, int cases) {
    Rng rng(seed);
    auto big = make_ring(2, 6), small = make_ring(2, 3);
    RandomSpec spec;
    spec.max_eps = 4;
    for (int i = 0; i < cases; ++i) {
        DiffPoly a = random_poly(rng, big, spec);
        DiffPoly b = random_poly(rng, big, spec);
        if (!((a * b).in_ring(small) == a.in_ring(small) * b.in_ring(small)))
            return fail_case(i, "truncation is not a ring map");
    }
    return "";
}

std::string suite_euler_derivations(uint64_t seed, int cases) {
    Rng rng(seed);
    for (int i = 0; i < cases; ++i) {
        int n = int(rng.below(2)) + 1;
        auto ring = small_ring(n);
        HomogeneityData h = random_homogeneity(rng, n);
        RandomSpec spec;
        DiffPoly a = random_poly(rng, ring, spec);
        DiffPoly b = random_poly(rng, ring, spec);
        if (!(euler_Ehat(a * b, h) == euler_Ehat(a, h) * b + a * euler_Ehat(b, h)))
            return fail_case(i, "E-hat is not a derivation");
        if (!(dilation_D(a * b) == dilation_D(a) * b + a * dilation_D(b)))
            return fail_case(i, "D is not a derivation");
    }
    return "";
}

std::string suite_omega_adjoint(uint64_t seed, int cases) {
    Rng rng(seed);
    for (int i = 0; i < cases; ++i) {
        int n = int(rng.below(3)) + 1;
        auto ring = make_ring(n, 2);
        HomogeneityData h = random_homogeneity(rng, n);
        RandomSpec spec;
        spec.max_jet = 3;
        spec.max_eps = 2;
        LocalFunctional f(random_poly(rng, ring, spec));
        for (int k = 0; k <= 2; ++k) {
            MatDiffOp om = omega_hat(f, k, h.eta);
            MatDiffOp want = k % 2 == 0 ? om : -om;
            if (!(om.adjoint() == want))
                return fail_case(i, "adjoint symmetry failed at k=" + std::to_string(k));
        }
    }
    return "";
}

std::string suite_commutation_identity(uint64_t seed, int cases) {
    Rng rng(seed);
    auto ring = small_ring(2);
    RandomSpec spec;
    spec.max_jet = 3;
    for (int i = 0; i < cases; ++i) {
        DiffPoly f = random_poly(rng, ring, spec);
        int mu = int(rng.below(2)), nu = int(rng.below(2));
        int t = int(rng.below(3));
        DiffPoly lhs = var_derivative_u(f, nu).partial_u(mu, t);
        DiffPoly rhs(ring);
        DiffPoly inner = var_derivative_u(f, mu);
        for (int l = 0;; ++l) {
            DiffPoly p = inner.partial_u(nu, t + l);
            if (t + l > inner.max_jet() + 1) break;
            p = p.dx_pow(l).scaled(binom(l + t, t));
            rhs += (l % 2 == 0) ? p : -p;
        }
        if (t % 2 == 1) rhs = -rhs;
        if (!(lhs == rhs)) return fail_case(i, "variational commutation identity failed");
    }
    return "";
}

std::string suite_euler_shift(uint64_t seed, int cases) {
    Rng rng(seed);
    auto ring = small_ring(2);
    RandomSpec spec;
    spec.max_jet = 3;
    for (int i = 0; i < cases; ++i) {
        DiffPoly f = random_poly(rng, ring, spec);
        int a = int(rng.below(2));
        for (int k = 0; k <= 3; ++k)
            if (!(higher_euler(f.dx(), a, k + 1) == higher_euler(f, a, k)))
                return fail_case(i, "T_{a,k+1} dx != T_{a,k} at k=" + std::to_string(k));
        if (!(higher_euler(f, a, 0) == var_derivative_u(f, a)))
            return fail_case(i, "T_{a,0} is not the variational derivative");
        if (!var_derivative_u(f.dx(), a).is_zero())
            return fail_case(i, "variational derivative does not kill Im dx");
    }
    return "";
}

std::string suite_lop_shift(uint64_t seed, int cases) {
    Rng rng(seed);
    auto ring = small_ring(2);
    RandomSpec spec;
    spec.max_jet = 3;
    for (int i = 0; i < cases; ++i) {
        DiffPoly f = random_poly(rng, ring, spec);
        int a = int(rng.below(2));
        for (int k = 1; k <= 2; ++k) {
            ScalarDiffOp lhs = frechet_L(f.dx(), a, k);
            ScalarDiffOp rhs = compose(ScalarDiffOp::dx(ring), frechet_L(f, a, k)) +
                               frechet_L(f, a, k - 1);
            if (!(lhs == rhs)) return fail_case(i, "L^k shift identity failed");
        }
    }
    return "";
}

std::string suite_homotopy(uint64_t seed, int cases) {
    Rng rng(seed);
    auto ring = small_ring(2);
    RandomSpec spec;
    spec.max_jet = 2;
    for (int i = 0; i < cases; ++i) {
        DiffPoly h = random_poly(rng, ring, spec).without_constant_part();
        LocalFunctional f(h);
        std::vector<DiffPoly> grad = f.gradient();
        LocalFunctional back = functional_from_variational(grad);
        if (!functional_equal(back, f)) return fail_case(i, "homotopy round-trip failed: " + h.str());
    }
    // the stated non-gradient rejection
    std::vector<DiffPoly> bad{DiffPoly::u_var(ring, 0, 1)};
    try {
        functional_from_variational(bad);
        return "E = (u_x) was accepted though it is not a gradient";
    } catch (const std::domain_error &) {
    }
    return "";
}

std::string suite_dx_invert(uint64_t seed, int cases) {
    Rng rng(seed);
    auto ring = small_ring(2);
    RandomSpec spec;
    spec.max_jet = 2;
    spec.terms = 5;
    for (int i = 0; i < cases; ++i) {
        DiffPoly q = random_poly(rng, ring, spec);
        DiffPoly p = q.dx();
        DiffPoly back = dx_invert(p);
        if (!(back.dx() == p)) return fail_case(i, "dx inversion round-trip failed");
    }
    return "";
}

std::string suite_schouten_symmetry(uint64_t seed, int cases) {
    Rng rng(seed);
    auto ring = make_ring(2, 2);
    for (int i = 0; i < cases; ++i) {
        RandomSpec spec;
        spec.max_jet = 2;
        spec.terms = 3;
        spec.theta_degree = int(rng.below(3));
        MultiVector P(random_poly(rng, ring, spec));
        spec.theta_degree = int(rng.below(3));
        MultiVector Q(random_poly(rng, ring, spec));
        MultiVector lhs = schouten(P, Q);
        MultiVector rhs = schouten(Q, P);
        int s = P.theta_degree() * Q.theta_degree();
        DiffPoly want = s % 2 == 0 ? rhs.density() : -rhs.density();
        if (!functional_equal(lhs, MultiVector(want)))
            return fail_case(i, "graded symmetry of the bracket failed");
    }
    return "";
}

std::string suite_schouten_jacobi(uint64_t seed, int cases) {
    Rng rng(seed);
    auto ring = make_ring(2, 2);
    for (int i = 0; i < cases; ++i) {
        RandomSpec spec;
        spec.max_jet = 1;
        spec.terms = 2;
        spec.theta_degree = int(rng.below(3));
        MultiVector P(random_poly(rng, ring, spec));
        int p = P.theta_degree();
        spec.theta_degree = int(rng.below(3));
        MultiVector Q(random_poly(rng, ring, spec));
        int q = Q.theta_degree();
        spec.theta_degree = int(rng.below(2));
        MultiVector R(random_poly(rng, ring, spec));
        int r = R.theta_degree();
        auto sgn = [](int k) { return k % 2 == 0 ? Rat(1) : Rat(-1); };
        DiffPoly acc = schouten(schouten(P, Q), R).density().scaled(sgn(p * r)) +
                       schouten(schouten(R, P), Q).density().scaled(sgn(r * q)) +
                       schouten(schouten(Q, R), P).density().scaled(sgn(q * p));
        if (!is_zero_functional(MultiVector(acc))) return fail_case(i, "graded Jacobi identity failed");
    }
    return "";
}

std::string suite_double_commutator(uint64_t seed, int cases) {
    Rng rng(seed);
    auto ring = make_ring(2, 2);
    HomogeneityData h = rspin_homogeneity(3);
    MatDiffOp K1 = k1_operator(ring, h.eta_inv());
    MultiVector B = bivector_of_op(K1);
    for (int i = 0; i < cases; ++i) {
        RandomSpec spec;
        spec.max_jet = 2;
        spec.terms = 3;
        spec.theta_degree = int(rng.below(3));
        MultiVector R(random_poly(rng, ring, spec));
        if (!is_zero_functional(schouten(schouten(R, B), B)))
            return fail_case(i, "[[R,B],B] != 0 for the constant Poisson bivector");
    }
    return "";
}

std::string suite_functional_bivector(uint64_t seed, int cases) {
    Rng rng(seed);
    auto ring = make_ring(2, 2);
    RandomSpec spec;
    spec.max_jet = 2;
    for (int i = 0; i < cases; ++i) {
        MatDiffOp K = random_skew_op(rng, ring, spec, 2);
        LocalFunctional f(random_poly(rng, ring, spec));
        MultiVector lhs = schouten(f, bivector_of_op(K));
        std::vector<DiffPoly> P = K.apply(f.gradient());
        MultiVector rhs = vector_field_of(P);
        if (!functional_equal(lhs, MultiVector(-rhs.density())))
            return fail_case(i, "[f, B_K] != -V_{K grad f}");
        // bracket through the bivector: {f,g}_K = [[B_K, f], g]
        LocalFunctional g(random_poly(rng, ring, spec));
        MultiVector two = schouten(schouten(bivector_of_op(K), f), g);
        if (!functional_equal(two, poisson_bracket(f, g, K, false)))
            return fail_case(i, "{f,g}_K != [[B_K, f], g]");
        if (!functional_equal(poisson_bracket(f, g, K, false),
                              MultiVector(-poisson_bracket(g, f, K, false).density())))
            return fail_case(i, "bracket antisymmetry failed");
    }
    return "";
}

std::string suite_commutator_closed_form(uint64_t seed, int cases) {
    Rng rng(seed);
    auto ring = make_ring(2, 2);
    RandomSpec spec;
    spec.max_jet = 2;
    spec.terms = 3;
    for (int i = 0; i < cases; ++i) {
        MatDiffOp K = random_skew_op(rng, ring, spec, 2);
        std::vector<DiffPoly> Q;
        for (int a = 0; a < 2; ++a) Q.push_back(random_poly(rng, ring, spec));
        MatDiffOp Kt = commutator_VQ_BK(Q, K);
        MultiVector direct = schouten(vector_field_of(Q), bivector_of_op(K));
        if (!functional_equal(direct, MultiVector(-bivector_of_op(Kt, false).density())))
            return fail_case(i, "closed-form commutator disagrees with the bracket");
    }
    return "";
}

std::string suite_bivector_roundtrip(uint64_t seed, int cases) {
    Rng rng(seed);
    auto ring = make_ring(2, 2);
    RandomSpec spec;
    spec.max_jet = 2;
    for (int i = 0; i < cases; ++i) {
        MatDiffOp K = random_skew_op(rng, ring, spec, 2);
        MatDiffOp back = op_of_bivector(bivector_of_op(K));
        if (!(back == K)) return fail_case(i, "bivector round-trip failed");
    }
    return "";
}

std::string suite_k2_lemma(uint64_t seed, int cases) {
    Rng rng(seed);
    for (int i = 0; i < cases; ++i) {
        int n = int(rng.below(2)) + 1;
        auto ring = make_ring(n, 2);
        HomogeneityData h = random_homogeneity(rng, n);
        RandomSpec spec;
        spec.max_jet = 2;
        spec.max_eps = 2;
        spec.terms = 3;
        DiffPoly g = random_poly(rng, ring, spec);
        MatDiffOp K2 = build_K2(g, h, K2Form::alternative);
        if (!K2.is_skew()) return fail_case(i, "K2 is not skew");
        MatDiffOp K1 = k1_operator(ring, h.eta_inv());
        std::vector<DiffPoly> R = r_vector_field(g, h);
        MatDiffOp Kt = commutator_VQ_BK(R, K1);
        // B_{K2} = [V_R, B_{K1}] = -B_{Ktilde}
        if (!functional_equal(bivector_of_op(K2), MultiVector(-bivector_of_op(Kt, false).density())))
            return fail_case(i, "B_{K2} != [V_R, B_{K1}]");
        if (!schouten_commute(K1, K2)) return fail_case(i, "[B_{K2}, B_{K1}] != 0");
        // representative independence of the commutator
        DiffPoly hshift = random_poly(rng, ring, spec);
        std::vector<DiffPoly> R2 = r_vector_field(g + hshift.dx(), h);
        MatDiffOp Kt2 = commutator_VQ_BK(R2, K1);
        if (!functional_equal(bivector_of_op(Kt, false), bivector_of_op(Kt2, false)))
            return fail_case(i, "commutator depends on the density representative");
    }
    return "";
}

std::string suite_miura_functorial(uint64_t seed, int cases) {
    Rng rng(seed);
    auto ring = make_ring(2, 3);
    RandomSpec spec;
    spec.max_jet = 1;
    spec.terms = 2;
    for (int i = 0; i < cases; ++i) {
        MatDiffOp K = random_skew_op(rng, ring, spec, 1);
        MiuraMap m1 = random_miura(rng, ring);
        MiuraMap m2 = random_miura(rng, ring);
        // composite map u -> m2(m1(u))
        Subst s;
        s.target = ring;
        s.comp = m1.expr;
        MiuraMap m12;
        m12.ring = ring;
        for (auto &e : m2.expr) m12.expr.push_back(substitute(e, s));
        MatDiffOp a = miura_op(K, m12);
        MatDiffOp b = miura_op(miura_op(K, m1), m2);
        if (!(a == b)) return fail_case(i, "Miura transport is not functorial");
        MiuraMap id;
        id.ring = ring;
        for (int c = 0; c < 2; ++c) id.expr.push_back(DiffPoly::u_var(ring, c, 0));
        if (!(miura_op(K, id) == K)) return fail_case(i, "identity map changed the operator");
    }
    return "";
}

std::string suite_pdo(uint64_t seed, int cases) {
    Rng rng(seed);
    for (int r = 2; r <= 5; ++r) {
        GDContext ctx(r, r + 6);
        const PseudoDiffOp &root = ctx.root_power(1);
        PseudoDiffOp back = root.power(r, r - 1 - ctx.m_trunc);
        for (int n = back.floor(); n <= r; ++n)
            if (!(back.coeff(n) == ctx.lax.coeff(n)))
                return "re-powering (L^{1/r})^r != L at r=" + std::to_string(r);
    }
    // associativity on random operators
    auto ring = make_ring(2, 0);
    RandomSpec spec;
    spec.max_jet = 2;
    spec.max_eps = 0;
    spec.terms = 2;
    for (int i = 0; i < std::max(cases / 4, 4); ++i) {
        auto rnd_pdo = [&](int lo) {
            PseudoDiffOp p(ring, -8);
            int terms = int(rng.below(3)) + 1;
            for (int t = 0; t < terms; ++t)
                p.add(int(rng.range(lo, 2)), random_poly(rng, ring, spec));
            return p;
        };
        PseudoDiffOp A = rnd_pdo(-2), B = rnd_pdo(-2), C = rnd_pdo(-2);
        PseudoDiffOp ab_c = compose(compose(A, B, -8), C, -8);
        PseudoDiffOp a_bc = compose(A, compose(B, C, -8), -8);
        int floor = std::max(ab_c.floor(), a_bc.floor());
        for (int n = floor; n <= std::max(ab_c.top(), a_bc.top()); ++n)
            if (!(ab_c.coeff(n) == a_bc.coeff(n)))
                return fail_case(i, "pdo composition is not associative to certified order");
    }
    // dx o dx^{-1} = 1
    PseudoDiffOp one = compose(PseudoDiffOp::dx_power(ring, 1), PseudoDiffOp::dx_power(ring, -1), -8);
    if (!(one.coeff(0) == DiffPoly::constant(ring, Rat(1))) || one.coeff(-1).is_zero() == false)
        return "dx o dx^{-1} != 1";
    return "";
}

std::string suite_shift_group(uint64_t seed, int cases) {
    Rng rng(seed);
    auto ring = make_ring(1, 6);
    for (int i = 0; i < cases; ++i) {
        Rat a = rng.rat(3, 2), b = rng.rat(3, 2);
        ScalarDiffOp lhs = compose(shift_exp(ring, a), shift_exp(ring, b));
        ScalarDiffOp rhs = shift_exp(ring, a + b);
        if (!(lhs == rhs)) return fail_case(i, "shift series group law failed");
    }
    return "";
}

std::string suite_file_roundtrip(uint64_t seed, int cases) {
    (void)seed;
    (void)cases;
    for (auto name : {"trivial", "3spin", "4spin", "cp1"}) {
        CohFTModel m = builtin_model(name, 4);
        std::string path = std::string("/tmp/drham_roundtrip_") + name + ".json";
        save_model(m, path);
        CohFTModel back = load_model(path, 4);
        std::remove(path.c_str());
        if (!(back.gbar == m.gbar)) return std::string("gbar round-trip failed for ") + name;
        if (back.h.n != m.h.n || !(back.h.delta == m.h.delta) || back.h.eta != m.h.eta ||
            back.h.q != m.h.q || back.h.r != m.h.r || back.h.a_matrix != m.h.a_matrix)
            return std::string("homogeneity data round-trip failed for ") + name;
        bool pot_match = bool(back.potential) == bool(m.potential) &&
                         (!m.potential || *back.potential == *m.potential);
        if (!pot_match) return std::string("potential round-trip failed for ") + name;
        if (back.known.size() != m.known.size())
            return std::string("known table round-trip failed for ") + name;
    }
    return "";
}

std::string suite_mutation_control(uint64_t seed, int cases) {
    // negative control: a deliberately broken adjoint must be caught by the
    // omega-hat symmetry property
    Rng rng(seed);
    auto ring = make_ring(2, 2);
    HomogeneityData h = rspin_homogeneity(3);
    RandomSpec spec;
    spec.max_jet = 2;
    bool caught = false;
    for (int i = 0; i < std::max(cases, 8) && !caught; ++i) {
        LocalFunctional f(random_poly(rng, ring, spec));
        MatDiffOp om = omega_hat(f, 1, h.eta);
        // mutant adjoint: drops the sign flip on odd orders
        MatDiffOp mutant(ring, 2);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (auto &[s, c] : om.at(b, a).coeffs()) {
                    DiffPoly der = c;
                    for (int l = 0; l <= s; ++l) {
                        if (l > 0) der = der.dx();
                        mutant.at(a, b).add(s - l, der.scaled(binom(s, l))); // sign bug injected
                    }
                }
        if (!(mutant == -om)) caught = true;
    }
    return caught ? "" : "injected adjoint sign bug went unnoticed";
}

} // namespace

const std::vector<PropertySuite> &property_suites() {
    static const std::vector<PropertySuite> suites = [] {
        std::vector<PropertySuite> v;
        auto add = [&](const std::string &name, std::string (*fn)(uint64_t, int)) {
            v.push_back({name, [name, fn](uint64_t seed, int cases) {
                             return timed(name, [=] { return fn(seed, cases); });
                         }});
        };
        add("dx-derivation", suite_dx_derivation);
        add("adjoint-involution", suite_adjoint);
        add("ring-axioms", suite_ring_axioms);
        add("gradation", suite_gradation);
        add("truncation-ring-map", suite_truncation);
        add("euler-derivations", suite_euler_derivations);
        add("omega-adjoint", suite_omega_adjoint);
        add("variational-commutation", suite_commutation_identity);
        add("higher-euler-shift", suite_euler_shift);
        add("frechet-shift", suite_lop_shift);
        add("homotopy-roundtrip", suite_homotopy);
        add("dx-invert", suite_dx_invert);
        add("schouten-symmetry", suite_schouten_symmetry);
        add("schouten-jacobi", suite_schouten_jacobi);
        add("double-commutator", suite_double_commutator);
        add("functional-bivector", suite_functional_bivector);
        add("commutator-closed-form", suite_commutator_closed_form);
        add("bivector-roundtrip", suite_bivector_roundtrip);
        add("k2-lemma", suite_k2_lemma);
        add("miura-functorial", suite_miura_functorial);
        add("pdo-root", suite_pdo);
        add("shift-group-law", suite_shift_group);
        add("file-roundtrip", suite_file_roundtrip);
        add("mutation-control", suite_mutation_control);
        return v;
    }();
    return suites;
}

std::vector<CheckResult> run_property_suites(uint64_t seed, int cases, const std::string &only) {
    std::vector<CheckResult> out;
    bool found = false;
    for (auto &s : property_suites()) {
        if (!only.empty() && s.name != only) continue;
        found = true;
        out.push_back(s.run(seed, cases));
    }
    if (!only.empty() && !found)
        throw std::invalid_argument("unknown property suite '" + only + "'");
    return out;
}

} // namespace drham

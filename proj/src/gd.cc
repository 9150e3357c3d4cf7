#include "drham/gd.hpp"

namespace drham {

thread_local Rat ExtScalar::s_sq = Rat(-1);

namespace {

void set_extension(int r) { ExtScalar::s_sq = Rat(-r); }

/// (alpha + r d)!_r = prod_{i=0..d} (alpha + r i), and 1 at d = -1.
Rat r_factorial(int alpha, int r, int d) {
    Rat v(1);
    for (int i = 0; i <= d; ++i) v *= Rat(alpha + r * i);
    return v;
}

/// Collects a matrix of operators from an expansion linear in the auxiliary
/// X-variables: coefficient of dx^row is sum K[row][col]_s (X_col)_s.
MatDiffOp collect_linear(const GDContext &ctx, const ScalarDiffOp &expansion, int rows, int cols) {
    MatDiffOp K(ctx.ring, std::max(rows, cols));
    for (auto &[row, poly] : expansion.coeffs()) {
        if (row >= rows) throw std::logic_error("gd: expansion order exceeds expected matrix size");
        for (auto &[m, c] : poly.terms()) {
            int col = -1, jet = -1;
            Mono rest = m;
            for (size_t i = 0; i < rest.u.size(); ++i) {
                int a = id_alpha(rest.u[i].first);
                if (a < ctx.x_index(0)) continue;
                if (col >= 0 || rest.u[i].second != 1)
                    throw std::logic_error("gd: expansion is not linear in the X-variables");
                col = a - ctx.x_index(0);
                jet = id_jet(rest.u[i].first);
                rest.u.erase(rest.u.begin() + i);
                --i;
            }
            if (col < 0) throw std::logic_error("gd: expansion term free of X-variables");
            if (col >= cols) throw std::logic_error("gd: X-index out of range");
            DiffPoly coeff(ctx.ring);
            coeff.add_term(rest, c);
            K.at(row, col).add(jet, coeff);
        }
    }
    return K;
}

ScalarDiffOp flatten(const PseudoDiffOp &p) { return p.plus_part(); }

/// The correction operator F^beta = (1/r) sum_a binom(-beta-1, a) dx^{a-1} o f_{beta+a}.
ScalarDiffOp correction_row(const GDContext &ctx, int beta) {
    ScalarDiffOp F(ctx.ring);
    for (int a = 1; a <= ctx.r - beta; ++a) {
        DiffPoly f = ctx.f_coeff(beta + a);
        if (f.is_zero()) continue;
        ScalarDiffOp term = compose(ScalarDiffOp::dx(ctx.ring, a - 1), ScalarDiffOp::mul_by(f));
        F += term.scaled(binom(-beta - 1, a) / Rat(ctx.r));
    }
    return F;
}

void check_graded_positive(const MatDiffOp &k) {
    for (int i = 0; i < k.n(); ++i)
        for (int j = 0; j < k.n(); ++j)
            for (auto &[s, c] : k.at(i, j).coeffs())
                for (auto &[m, cc] : c.terms())
                    if (s + m.standard_degree() < 1)
                        throw std::logic_error("gd: operator has a nonzero degree-zero part");
}

} // namespace

MatDiffOp ExtMatOp::rational_part() const {
    for (int i = 0; i < im.n(); ++i)
        for (int j = 0; j < im.n(); ++j)
            if (!im.at(i, j).is_zero()) throw std::domain_error("ExtMatOp: value is not rational");
    return re;
}

MatDiffOp gd_k1(const GDContext &ctx) {
    const int r = ctx.r;
    PseudoDiffOp X(ctx.ring, -r - 1);
    for (int j = 0; j <= r - 2; ++j)
        X += PseudoDiffOp::dxn_mul(ctx.ring, -(j + 1), DiffPoly::u_var(ctx.ring, ctx.x_index(j), 0),
                                   -r - 1);
    ScalarDiffOp bracket = flatten(compose(X, ctx.lax, 0)) - flatten(compose(ctx.lax, X, 0));
    MatDiffOp K = collect_linear(ctx, bracket, r - 1, r - 1);
    if (!K.is_skew()) throw std::logic_error("gd_k1: operator is not skew");
    check_graded_positive(K);
    return K;
}

MatDiffOp gd_k2(const GDContext &ctx) {
    const int r = ctx.r;
    PseudoDiffOp Xt(ctx.ring, -2 * r - 2);
    for (int j = 0; j <= r - 1; ++j)
        Xt += PseudoDiffOp::dxn_mul(ctx.ring, -(j + 1), DiffPoly::u_var(ctx.ring, ctx.x_index(j), 0),
                                    -2 * r - 2);
    ScalarDiffOp lx_plus = flatten(compose(ctx.lax, Xt, 0));
    ScalarDiffOp xl_plus = flatten(compose(Xt, ctx.lax, 0));
    ScalarDiffOp expansion(ctx.ring);
    {
        PseudoDiffOp a = compose(PseudoDiffOp::from_op(lx_plus), ctx.lax, 0);
        PseudoDiffOp b = compose(ctx.lax, PseudoDiffOp::from_op(xl_plus), 0);
        expansion = flatten(a) - flatten(b);
    }
    MatDiffOp Kt = collect_linear(ctx, expansion, r, r);

    // the last row is a total derivative of the residue identity
    for (int beta = 0; beta <= r - 1; ++beta) {
        ScalarDiffOp want(ctx.ring);
        if (beta <= r - 2)
            want = compose(ScalarDiffOp::dx(ctx.ring), correction_row(ctx, beta).scaled(Rat(r)));
        else
            want = ScalarDiffOp::dx(ctx.ring).scaled(Rat(-r));
        if (!(Kt.at(r - 1, beta) == want))
            throw std::logic_error("gd_k2: residue row identity failed");
    }

    MatDiffOp K(ctx.ring, r - 1);
    for (int a = 0; a <= r - 2; ++a) {
        for (int b = 0; b <= r - 2; ++b)
            K.at(a, b) = Kt.at(a, b) + compose(Kt.at(a, r - 1), correction_row(ctx, b));
    }
    if (!K.is_skew()) throw std::logic_error("gd_k2: operator is not skew");
    check_graded_positive(K);
    return K;
}

LocalFunctional gd_hamiltonian(const GDContext &ctx, int alpha, int a) {
    if (alpha < 1 || alpha > ctx.r - 1) throw std::invalid_argument("gd_hamiltonian: alpha out of range");
    DiffPoly res = ctx.fractional_power(a + 1, alpha).residue();
    return LocalFunctional(res.scaled(Rat(-ctx.r) / Rat((a + 1) * ctx.r + alpha)));
}

namespace {

/// Substitution with extension-valued images; source must be X- and theta-free.
ExtPoly ext_substitute(const DiffPoly &src, const std::vector<ExtPoly> &comp, const RingPtr &target) {
    std::vector<std::vector<ExtPoly>> lifts(comp.size());
    auto lift = [&](int alpha, int jet) -> const ExtPoly & {
        auto &v = lifts[alpha];
        if (v.empty()) v.push_back(comp[alpha]);
        while (int(v.size()) <= jet) v.push_back(ExtPoly{v.back().re.dx(), v.back().im.dx()});
        return v[jet];
    };
    ExtPoly r{DiffPoly(target)};
    for (auto &[m, c] : src.terms()) {
        if (!m.th.empty() || !m.gen.empty())
            throw std::domain_error("ext_substitute: unsupported factor");
        ExtPoly term(DiffPoly::eps_pow(target, m.eps).scaled(c));
        for (auto &[id, e] : m.u) {
            if (id_alpha(id) >= int(comp.size()))
                throw std::domain_error("ext_substitute: variable has no image");
            for (int i = 0; i < e; ++i) term = term * lift(id_alpha(id), id_jet(id));
        }
        r = r + term;
    }
    return r;
}

ExtPoly ext_substitute(const ExtPoly &src, const std::vector<ExtPoly> &comp, const RingPtr &target) {
    ExtPoly re = ext_substitute(src.re, comp, target);
    ExtPoly im = ext_substitute(src.im, comp, target);
    return {re.re + im.im.scaled(ExtScalar::s_sq), re.im + im.re};
}

} // namespace

RSpinPackage rspin_package(int r, int d_max) {
    set_extension(r);
    RSpinPackage pkg;
    pkg.r = r;
    // the deepest residue is res L^{(d_max+1) + alpha/r} with alpha <= r-1;
    // certified-floor tracking turns an underestimate into a hard error
    GDContext ctx(r, (r - 1) + (std::max(d_max, 0) + 1) * r + 2);
    pkg.wring = make_ring(r - 1, 0);

    // w^alpha = res L^{(r-alpha)/r} / ((r-alpha) (-r)^{(r-alpha-1)/2})
    for (int alpha = 1; alpha <= r - 1; ++alpha) {
        DiffPoly res = ctx.fractional_power(0, r - alpha).residue();
        ExtScalar scale = ExtScalar(Rat(r - alpha)) * ExtScalar::s_power(r - alpha - 1);
        pkg.w_of_f.push_back(ExtPoly(res).scaled(scale.inv()));
    }

    // triangular inversion: solve f_{alpha-1} from w^alpha, descending alpha
    std::vector<ExtPoly> f_of_w(size_t(r - 1), ExtPoly(DiffPoly(pkg.wring)));
    std::vector<bool> solved(size_t(r - 1), false);
    for (int alpha = r - 1; alpha >= 1; --alpha) {
        const ExtPoly &w = pkg.w_of_f[alpha - 1];
        const uint32_t fid = jet_id(ctx.f_index(alpha - 1), 0);
        Mono lin;
        lin.u.emplace_back(fid, 1);
        ExtScalar c;
        {
            auto itr = w.re.terms().find(lin);
            auto iti = w.im.terms().find(lin);
            c = ExtScalar(itr == w.re.terms().end() ? Rat(0) : itr->second,
                          iti == w.im.terms().end() ? Rat(0) : iti->second);
        }
        if (c.is_zero()) throw std::logic_error("rspin_package: vanishing leading coefficient");
        DiffPoly fvar = DiffPoly::u_var(ctx.ring, ctx.f_index(alpha - 1), 0);
        ExtPoly corr = w - ExtPoly(fvar).scaled(c);
        // the correction involves only already-solved variables
        for (auto p : {&corr.re, &corr.im})
            for (auto &[m, cc] : p->terms())
                for (auto &[id, e] : m.u)
                    if (!solved[size_t(id_alpha(id))])
                        throw std::logic_error("rspin_package: inversion is not triangular");
        ExtPoly corr_w = ext_substitute(corr, f_of_w, pkg.wring);
        ExtPoly wvar(DiffPoly::u_var(pkg.wring, alpha - 1, 0));
        f_of_w[size_t(alpha - 1)] = (wvar - corr_w).scaled(c.inv());
        solved[size_t(alpha - 1)] = true;
    }
    // round-trip check
    for (int alpha = 1; alpha <= r - 1; ++alpha) {
        ExtPoly back = ext_substitute(pkg.w_of_f[alpha - 1], f_of_w, pkg.wring);
        if (!(back.re == DiffPoly::u_var(pkg.wring, alpha - 1, 0)) || !back.im.is_zero())
            throw std::logic_error("rspin_package: Miura inversion failed");
    }
    pkg.f_of_w = f_of_w;

    // transport the operators
    MatDiffOp k1_f = gd_k1(ctx);
    MatDiffOp k2_f = gd_k2(ctx);
    ExtMatOp L(MatDiffOp(ctx.ring, r - 1), MatDiffOp(ctx.ring, r - 1));
    for (int a = 0; a <= r - 2; ++a)
        for (int mu = 0; mu <= r - 2; ++mu) {
            L.re.at(a, mu) = frechet_L(pkg.w_of_f[a].re, ctx.f_index(mu), 0);
            L.im.at(a, mu) = frechet_L(pkg.w_of_f[a].im, ctx.f_index(mu), 0);
        }
    auto transport = [&](const MatDiffOp &K) {
        ExtMatOp moved = compose(compose(L, ExtMatOp(K)), L.adjoint());
        // re-express coefficients in the w-variables
        MatDiffOp outRe(pkg.wring, r - 1), outIm(pkg.wring, r - 1);
        for (int a = 0; a <= r - 2; ++a)
            for (int b = 0; b <= r - 2; ++b) {
                for (auto &[s, c] : moved.re.at(a, b).coeffs()) {
                    ExtPoly img = ext_substitute(c, f_of_w, pkg.wring);
                    outRe.at(a, b).add(s, img.re);
                    outIm.at(a, b).add(s, img.im);
                }
                for (auto &[s, c] : moved.im.at(a, b).coeffs()) {
                    ExtPoly img = ext_substitute(c, f_of_w, pkg.wring);
                    outRe.at(a, b).add(s, img.im.scaled(ExtScalar::s_sq));
                    outIm.at(a, b).add(s, img.re);
                }
            }
        return ExtMatOp(outRe, outIm);
    };
    pkg.k1 = transport(k1_f).scaled(ExtScalar::s_power(r)).rational_part();
    pkg.k2 = transport(k2_f).rational_part();

    // normalised Hamiltonians
    for (int alpha = 1; alpha <= r - 1; ++alpha)
        for (int d = -1; d <= d_max; ++d) {
            LocalFunctional h = gd_hamiltonian(ctx, alpha, d);
            ExtPoly moved = ext_substitute(h.density(), f_of_w, pkg.wring);
            long e = alpha - 1 + long(r) * (d + 1) - 2 * d;
            ExtScalar denom = ExtScalar::s_power(e) * ExtScalar(r_factorial(alpha, r, d));
            pkg.hams.emplace(std::make_pair(alpha, d), moved.scaled(denom.inv()));
        }
    return pkg;
}

std::vector<std::pair<std::pair<int, int>, bool>> dz_recursion_check(const RSpinPackage &p) {
    set_extension(p.r);
    std::vector<std::pair<std::pair<int, int>, bool>> out;
    const int n = p.r - 1;
    for (auto &[key, h] : p.hams) {
        auto [alpha, d] = key;
        auto next = p.hams.find({alpha, d + 1});
        if (next == p.hams.end()) continue;
        auto grad = [&](const ExtPoly &f) {
            std::vector<DiffPoly> re, im;
            for (int b = 0; b < n; ++b) {
                re.push_back(var_derivative_u(f.re, b));
                im.push_back(var_derivative_u(f.im, b));
            }
            return std::make_pair(re, im);
        };
        auto [gre, gim] = grad(h);
        auto [nre, nim] = grad(next->second);
        Rat factor = Rat(alpha + (d + 1) * p.r, p.r);
        auto lre = p.k2.apply(gre), lim = p.k2.apply(gim);
        auto rre = p.k1.apply(nre), rim = p.k1.apply(nim);
        bool pass = true;
        for (int b = 0; b < n; ++b)
            if (!(lre[b] == rre[b].scaled(factor)) || !(lim[b] == rim[b].scaled(factor))) pass = false;
        out.push_back({key, pass});
    }
    return out;
}

DiffPoly embed_eps(const DiffPoly &p, const RingPtr &target) {
    DiffPoly r(target);
    for (auto &[m, c] : p.terms()) {
        if (m.eps != 0) throw std::invalid_argument("embed_eps: input already carries eps");
        Mono e = m;
        long d = m.standard_degree();
        if (d < 0 || d > target->eps_cap())
            throw std::domain_error("embed_eps: degree outside the eps range");
        e.eps = int(d);
        r.add_term(e, c);
    }
    return r;
}

MatDiffOp embed_eps_op(const MatDiffOp &k, const RingPtr &target) {
    MatDiffOp r(target, k.n());
    for (int i = 0; i < k.n(); ++i)
        for (int j = 0; j < k.n(); ++j)
            for (auto &[s, c] : k.at(i, j).coeffs()) {
                DiffPoly out(target);
                for (auto &[m, cc] : c.terms()) {
                    if (m.eps != 0) throw std::invalid_argument("embed_eps_op: eps already present");
                    long e = s + m.standard_degree() - 1;
                    if (e < 0) throw std::domain_error("embed_eps_op: negative eps weight");
                    if (e > target->eps_cap())
                        throw std::domain_error("embed_eps_op: eps cap too small for the operator");
                    Mono em = m;
                    em.eps = int(e);
                    out.add_term(em, cc);
                }
                r.at(i, j).add(s, out);
            }
    return r;
}

MiuraMap dr_to_w_miura(int r, const RingPtr &ring) {
    MiuraMap m;
    m.ring = ring;
    for (int a = 0; a < ring->n(); ++a) m.expr.push_back(DiffPoly::u_var(ring, a, 0));
    if (r == 4) {
        m.expr[0] += DiffPoly::u_var(ring, 2, 2).multiplied_by_eps(2).scaled(Rat(1, 96));
    } else if (r == 5) {
        m.expr[0] += DiffPoly::u_var(ring, 2, 2).multiplied_by_eps(2).scaled(Rat(1, 60));
        m.expr[1] += DiffPoly::u_var(ring, 3, 2).multiplied_by_eps(2).scaled(Rat(1, 60));
    } else if (r != 3 && r != 2) {
        throw std::invalid_argument("dr_to_w_miura: only r = 2..5 supported");
    }
    return m;
}

MatDiffOp miura_to_dr(int r, const MatDiffOp &k_from_gbar) {
    MiuraMap m = dr_to_w_miura(r, k_from_gbar.ring());
    if (r == 3 || r == 2) return k_from_gbar;
    return miura_op(k_from_gbar, m);
}

DiffPoly invert_dilation_minus_two(const DiffPoly &g11) {
    const auto ring = g11.ring();
    std::map<long, DiffPoly> slices;
    for (auto &[m, c] : g11.terms()) {
        long w = 0;
        for (auto &[id, e] : m.u) w += long(id_jet(id) + 1) * e;
        auto it = slices.find(w);
        if (it == slices.end()) it = slices.emplace(w, DiffPoly(ring)).first;
        it->second.add_term(m, c);
    }
    DiffPoly g(ring);
    for (auto &[w, slice] : slices) {
        if (w == 2) {
            if (!is_dx_exact(slice.without_constant_part()))
                throw std::domain_error("invert_dilation_minus_two: weight-2 slice is not exact");
            continue;
        }
        g += slice.scaled(Rat(w - 2).inv());
    }
    return g;
}

} // namespace drham

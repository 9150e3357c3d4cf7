#include "drham/models.hpp"

#include "drham/gd.hpp"

#include <json.hpp>

#include <fstream>

namespace drham {

std::vector<Rat> bernoulli(int n) {
    std::vector<Rat> b;
    b.reserve(size_t(n) + 1);
    for (int m = 0; m <= n; ++m) {
        if (m == 0) {
            b.push_back(Rat(1));
            continue;
        }
        Rat s(0);
        for (int j = 0; j < m; ++j) s += binom(m + 1, j) * b[j];
        b.push_back(-s / Rat(m + 1));
    }
    return b;
}

ScalarDiffOp series_op(const RingPtr &ring, const std::vector<Rat> &c) {
    ScalarDiffOp op(ring);
    for (int k = 0; k < int(c.size()) && k <= ring->eps_cap(); ++k)
        if (!c[k].is_zero()) op.add(k, DiffPoly::eps_pow(ring, k).scaled(c[k]));
    return op;
}

ScalarDiffOp shift_exp(const RingPtr &ring, const Rat &a) {
    std::vector<Rat> c(size_t(ring->eps_cap()) + 1);
    Rat f(1);
    for (int k = 0; k <= ring->eps_cap(); ++k) {
        if (k > 0) f *= a / Rat(k);
        c[k] = k == 0 ? Rat(1) : f;
    }
    return series_op(ring, c);
}

std::vector<Rat> s_series(int order) {
    // (e^{z/2} - e^{-z/2})/z = sum z^{2m} / (4^m (2m+1)!)
    std::vector<Rat> c(size_t(order) + 1, Rat(0));
    Rat denom(1);
    for (int m = 0; 2 * m <= order; ++m) {
        if (m > 0) denom *= Rat(4) * Rat(2 * m) * Rat(2 * m + 1);
        c[size_t(2 * m)] = denom.inv();
    }
    return c;
}

std::vector<Rat> s_tilde_series(int order) {
    // (e^{z/2} + e^{-z/2})/2 = sum z^{2m} / (4^m (2m)!)
    std::vector<Rat> c(size_t(order) + 1, Rat(0));
    Rat denom(1);
    for (int m = 0; 2 * m <= order; ++m) {
        if (m > 0) denom *= Rat(4) * Rat(2 * m - 1) * Rat(2 * m);
        c[size_t(2 * m)] = denom.inv();
    }
    return c;
}

std::vector<Rat> invert_series(const std::vector<Rat> &c) {
    if (c.empty() || c[0].is_zero()) throw std::domain_error("invert_series: vanishing constant term");
    std::vector<Rat> inv(c.size(), Rat(0));
    inv[0] = c[0].inv();
    for (size_t n = 1; n < c.size(); ++n) {
        Rat s(0);
        for (size_t k = 1; k <= n; ++k)
            if (k < c.size()) s += c[k] * inv[n - k];
        inv[n] = -s / c[0];
    }
    return inv;
}

namespace {

DiffPoly uv(const RingPtr &r, int a, int j) { return DiffPoly::u_var(r, a, j); }

/// The expanded density e^{S(eps dx) u^2} = E * exp(sum_{m>=1} s_{2m} eps^{2m} u^2_{2m}).
DiffPoly cp1_exp_density(const RingPtr &ring) {
    auto s = s_series(ring->eps_cap());
    DiffPoly delta(ring);
    for (int m = 1; 2 * m <= ring->eps_cap(); ++m)
        delta += uv(ring, 1, 2 * m).multiplied_by_eps(2 * m).scaled(s[size_t(2 * m)]);
    return DiffPoly::generator(ring, 0) * delta.exp_truncated();
}

} // namespace

HomogeneityData rspin_homogeneity(int r) {
    HomogeneityData h;
    h.n = r - 1;
    h.eta.assign(h.n, std::vector<Rat>(h.n, Rat(0)));
    h.a_matrix.assign(h.n, std::vector<Rat>(h.n, Rat(0)));
    for (int a = 0; a < h.n; ++a) h.eta[a][h.n - 1 - a] = Rat(1);
    h.unit.assign(h.n, Rat(0));
    h.unit[0] = Rat(1);
    for (int a = 1; a <= h.n; ++a) {
        h.q.push_back(Rat(a - 1, r));
        h.r.push_back(Rat(0));
    }
    h.delta = Rat(r - 2, r);
    h.validate();
    return h;
}

CohFTModel builtin_trivial(int two_g_max) {
    CohFTModel m;
    m.name = "trivial";
    m.ring = make_ring(1, two_g_max);
    m.h = rspin_homogeneity(2);
    m.gbar = (uv(m.ring, 0, 0) * uv(m.ring, 0, 0) * uv(m.ring, 0, 0)).scaled(Rat(1, 6)) +
             (uv(m.ring, 0, 0) * uv(m.ring, 0, 2)).multiplied_by_eps(2).scaled(Rat(1, 48));
    m.potential = (uv(m.ring, 0, 0) * uv(m.ring, 0, 0) * uv(m.ring, 0, 0)).scaled(Rat(1, 6));
    m.known.emplace(std::make_pair(0, 1),
                    (uv(m.ring, 0, 0) * uv(m.ring, 0, 0) * uv(m.ring, 0, 0)).scaled(Rat(1, 6)) +
                        (uv(m.ring, 0, 0) * uv(m.ring, 0, 2)).multiplied_by_eps(2).scaled(Rat(1, 24)));
    return m;
}

CohFTModel builtin_rspin(int r, int two_g_max) {
    if (r == 2) return builtin_trivial(two_g_max);
    CohFTModel m;
    m.name = std::to_string(r) + "spin";
    m.h = rspin_homogeneity(r);
    m.ring = make_ring(r - 1, two_g_max);
    const auto &g = m.ring;
    if (r == 3) {
        DiffPoly u1 = uv(g, 0, 0), u2 = uv(g, 1, 0);
        m.gbar = (u1 * u1 * u2).scaled(Rat(1, 2)) + (u2 * u2 * u2 * u2).scaled(Rat(1, 72)) +
                 (u2 * u2 * uv(g, 1, 2)).multiplied_by_eps(2).scaled(Rat(1, 144)) +
                 (u1 * uv(g, 0, 2)).multiplied_by_eps(2).scaled(Rat(1, 24)) +
                 (u2 * uv(g, 1, 4)).multiplied_by_eps(4).scaled(Rat(1, 1728));
    } else if (r == 4) {
        DiffPoly u1 = uv(g, 0, 0), u2 = uv(g, 1, 0), u3 = uv(g, 2, 0);
        m.gbar = (u1 * u1 * u3).scaled(Rat(1, 2)) + (u1 * u2 * u2).scaled(Rat(1, 2)) +
                 (u2 * u2 * u3 * u3).scaled(Rat(1, 16)) +
                 (u3 * u3 * u3 * u3 * u3).scaled(Rat(1, 960)) +
                 ((u1 * uv(g, 0, 2)).scaled(Rat(1, 16)) +
                  (uv(g, 2, 2) * u2 * u2).scaled(Rat(1, 192)) +
                  (u3 * u2 * uv(g, 1, 2)).scaled(Rat(1, 48)) +
                  (uv(g, 0, 2) * u3 * u3).scaled(Rat(1, 192)) +
                  (u3 * u3 * u3 * uv(g, 2, 2)).scaled(Rat(1, 768)))
                     .multiplied_by_eps(2) +
                 ((u2 * uv(g, 1, 4)).scaled(Rat(1, 640)) +
                  (u3 * u3 * uv(g, 2, 4)).scaled(Rat(1, 4096)) +
                  (u1 * uv(g, 2, 4)).scaled(Rat(3, 2560)))
                     .multiplied_by_eps(4) +
                 (u3 * uv(g, 2, 6)).multiplied_by_eps(6).scaled(Rat(1, 49152));
    } else {
        throw std::invalid_argument("builtin_rspin: only r = 2, 3, 4 are built in");
    }
    m.potential = m.gbar.eps_coefficient(0);
    return m;
}

CohFTModel builtin_cp1(int two_g_max) {
    CohFTModel m;
    m.name = "cp1";
    m.eps_exact = false;
    auto ring = std::make_shared<Ring>(2, two_g_max);
    int e = ring->add_generator("E");
    {
        Mono em;
        em.gen.emplace_back(uint16_t(e), 1);
        ring->set_generator_derivative(e, 1, {{em, Rat(1)}});
    }
    m.ring = ring;
    m.h.n = 2;
    m.h.eta = {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
    m.h.unit = {Rat(1), Rat(0)};
    m.h.q = {Rat(0), Rat(1)};
    m.h.r = {Rat(0), Rat(2)};
    m.h.delta = Rat(1);
    m.h.a_matrix = {{Rat(2), Rat(0)}, {Rat(0), Rat(2)}};
    m.h.validate();

    DiffPoly u1 = uv(m.ring, 0, 0), u2 = uv(m.ring, 1, 0);
    auto B = bernoulli(two_g_max + 1);
    DiffPoly g = (u1 * u1 * u2).scaled(Rat(1, 2));
    Rat fact(2); // (2g)!
    for (int gg = 1; 2 * gg <= two_g_max; ++gg) {
        if (gg > 1) fact *= Rat(2 * gg - 1) * Rat(2 * gg);
        g += (u1 * uv(m.ring, 0, 2 * gg))
                 .multiplied_by_eps(2 * gg)
                 .scaled(B[size_t(2 * gg)] / (Rat(2 * gg) * fact));
    }
    g += cp1_exp_density(m.ring);
    g -= u2;
    g -= (u2 * u2).scaled(Rat(1, 2));
    m.gbar = g;

    m.potential = (u1 * u1 * u2).scaled(Rat(1, 2)) + DiffPoly::generator(m.ring, 0) -
                  DiffPoly::constant(m.ring, Rat(1)) - u2 - (u2 * u2).scaled(Rat(1, 2));

    // the level (1,1) density: (u1)^2 u2 / 2 + sum eps^{2g} B_{2g}/(2g)! u1 u1_{2g}
    //                          + (S~(eps dx) u2 - 2) e^{S(eps dx) u2} + u2
    {
        DiffPoly k = (u1 * u1 * u2).scaled(Rat(1, 2));
        Rat f2(2);
        for (int gg = 1; 2 * gg <= two_g_max; ++gg) {
            if (gg > 1) f2 *= Rat(2 * gg - 1) * Rat(2 * gg);
            k += (u1 * uv(m.ring, 0, 2 * gg)).multiplied_by_eps(2 * gg).scaled(B[size_t(2 * gg)] / f2);
        }
        auto st = s_tilde_series(two_g_max);
        DiffPoly stu(m.ring);
        for (int mm = 0; 2 * mm <= two_g_max; ++mm)
            stu += uv(m.ring, 1, 2 * mm).multiplied_by_eps(2 * mm).scaled(st[size_t(2 * mm)]);
        k += (stu - DiffPoly::constant(m.ring, Rat(2))) * cp1_exp_density(m.ring);
        k += u2;
        m.known.emplace(std::make_pair(0, 1), k);
    }
    return m;
}

CohFTModel rspin_model_from_gd(int r, int two_g_max) {
    RSpinPackage pkg = rspin_package(r, 1);
    const ExtPoly &h11 = pkg.hams.at({1, 1});
    if (!h11.is_rational())
        throw std::logic_error("rspin_model_from_gd: level (1,1) Hamiltonian is not rational");
    int cap = two_g_max;
    for (auto &[m, c] : h11.re.terms()) cap = std::max(cap, int(m.standard_degree()));
    auto ring = make_ring(r - 1, cap);
    DiffPoly embedded = embed_eps(h11.re, ring);
    // back to the DR coordinates through the close-to-identity map
    MiuraMap to_w = dr_to_w_miura(r, ring);
    Subst s;
    s.target = ring;
    s.comp = to_w.expr;
    DiffPoly g11_u = substitute(embedded, s);
    CohFTModel m;
    m.name = std::to_string(r) + "spin-gd";
    m.h = rspin_homogeneity(r);
    m.ring = ring;
    m.gbar = invert_dilation_minus_two(g11_u);
    m.potential = m.gbar.eps_coefficient(0);
    m.known.emplace(std::make_pair(0, 1), g11_u);
    return m;
}

CohFTModel builtin_model(const std::string &name, int two_g_max) {
    if (name == "trivial" || name == "kdv") return builtin_trivial(two_g_max);
    if (name == "3spin") return builtin_rspin(3, two_g_max);
    if (name == "4spin") return builtin_rspin(4, two_g_max);
    if (name == "cp1") return builtin_cp1(two_g_max);
    throw std::invalid_argument("builtin_model: unknown name '" + name + "'");
}

MatDiffOp expected_k2_kdv(const RingPtr &ring) {
    MatDiffOp k(ring, 1);
    k.at(0, 0).add(1, uv(ring, 0, 0));
    k.at(0, 0).add(0, uv(ring, 0, 1).scaled(Rat(1, 2)));
    k.at(0, 0).add(3, DiffPoly::eps_pow(ring, 2).scaled(Rat(1, 8)));
    return k;
}

MatDiffOp expected_k2_3spin(const RingPtr &g) {
    MatDiffOp k(g, 2);
    DiffPoly w1 = uv(g, 0, 0), w2 = uv(g, 1, 0);
    DiffPoly e2 = DiffPoly::eps_pow(g, 2), e4 = DiffPoly::eps_pow(g, 4);
    k.at(0, 0).add(1, (w2 * w2).scaled(Rat(2, 9)));
    k.at(0, 0).add(0, (w2 * uv(g, 1, 1)).scaled(Rat(2, 9)));
    k.at(0, 0).add(3, (e2 * w2).scaled(Rat(5, 54)));
    k.at(0, 0).add(2, (e2 * uv(g, 1, 1)).scaled(Rat(5, 36)));
    k.at(0, 0).add(1, (e2 * uv(g, 1, 2)).scaled(Rat(1, 12)));
    k.at(0, 0).add(0, (e2 * uv(g, 1, 3)).scaled(Rat(1, 54)));
    k.at(0, 0).add(5, e4.scaled(Rat(1, 162)));
    k.at(0, 1).add(1, w1);
    k.at(0, 1).add(0, uv(g, 0, 1).scaled(Rat(1, 3)));
    k.at(1, 0).add(1, w1);
    k.at(1, 0).add(0, uv(g, 0, 1).scaled(Rat(2, 3)));
    k.at(1, 1).add(1, w2.scaled(Rat(2, 3)));
    k.at(1, 1).add(0, uv(g, 1, 1).scaled(Rat(1, 3)));
    k.at(1, 1).add(3, e2.scaled(Rat(2, 9)));
    return k;
}

MatDiffOp expected_k2_4spin(const RingPtr &g) {
    MatDiffOp k(g, 3);
    DiffPoly w1 = uv(g, 0, 0), w2 = uv(g, 1, 0), w3 = uv(g, 2, 0);
    DiffPoly w1x = uv(g, 0, 1), w2x = uv(g, 1, 1), w3x = uv(g, 2, 1);
    DiffPoly e2 = DiffPoly::eps_pow(g, 2), e4 = DiffPoly::eps_pow(g, 4), e6 = DiffPoly::eps_pow(g, 6);
    // (1,1)
    k.at(0, 0).add(1, (w3 * w3 * w3).scaled(Rat(1, 32)) + (w2 * w2).scaled(Rat(3, 16)));
    k.at(0, 0).add(0, (w2 * w2x).scaled(Rat(3, 16)) + (w3 * w3 * w3x).scaled(Rat(3, 64)));
    k.at(0, 0).add(3, e2 * ((w3 * w3).scaled(Rat(7, 256)) + w1.scaled(Rat(1, 48))));
    k.at(0, 0).add(2, e2 * (w1x.scaled(Rat(1, 32)) + (w3 * w3x).scaled(Rat(21, 256))));
    k.at(0, 0).add(1, e2 * ((w3x * w3x).scaled(Rat(5, 128)) + (w3 * uv(g, 2, 2)).scaled(Rat(13, 256)) +
                            uv(g, 0, 2).scaled(Rat(1, 24))));
    k.at(0, 0).add(0, e2 * ((w3x * uv(g, 2, 2)).scaled(Rat(3, 128)) + uv(g, 0, 3).scaled(Rat(1, 64)) +
                            (w3 * uv(g, 2, 3)).scaled(Rat(3, 256))));
    k.at(0, 0).add(5, (e4 * w3).scaled(Rat(7, 1152)));
    k.at(0, 0).add(4, (e4 * w3x).scaled(Rat(35, 2304)));
    k.at(0, 0).add(3, (e4 * uv(g, 2, 2)).scaled(Rat(91, 4608)));
    k.at(0, 0).add(2, (e4 * uv(g, 2, 3)).scaled(Rat(133, 9216)));
    k.at(0, 0).add(1, (e4 * uv(g, 2, 4)).scaled(Rat(47, 9216)));
    k.at(0, 0).add(0, (e4 * uv(g, 2, 5)).scaled(Rat(1, 1536)));
    k.at(0, 0).add(7, e6.scaled(Rat(17, 36864)));
    // (1,2)
    k.at(0, 1).add(1, (w2 * w3).scaled(Rat(5, 16)));
    k.at(0, 1).add(0, (w3 * w2x).scaled(Rat(1, 8)) + (w2 * w3x).scaled(Rat(1, 8)));
    k.at(0, 1).add(3, (e2 * w2).scaled(Rat(7, 64)));
    k.at(0, 1).add(2, (e2 * w2x).scaled(Rat(7, 48)));
    k.at(0, 1).add(1, (e2 * uv(g, 1, 2)).scaled(Rat(17, 192)));
    k.at(0, 1).add(0, (e2 * uv(g, 1, 3)).scaled(Rat(1, 48)));
    // (1,3)
    k.at(0, 2).add(1, w1);
    k.at(0, 2).add(0, w1x.scaled(Rat(1, 4)));
    k.at(0, 2).add(3, (e2 * w3).scaled(Rat(7, 192)));
    k.at(0, 2).add(2, (e2 * w3x).scaled(Rat(7, 192)));
    k.at(0, 2).add(5, e4.scaled(Rat(7, 768)));
    // (2,2)
    k.at(1, 1).add(1, (w3 * w3).scaled(Rat(1, 8)) + w1);
    k.at(1, 1).add(0, w1x.scaled(Rat(1, 2)) + (w3 * w3x).scaled(Rat(1, 8)));
    k.at(1, 1).add(3, (e2 * w3).scaled(Rat(1, 8)));
    k.at(1, 1).add(2, (e2 * w3x).scaled(Rat(3, 16)));
    k.at(1, 1).add(1, (e2 * uv(g, 2, 2)).scaled(Rat(1, 12)));
    k.at(1, 1).add(0, (e2 * uv(g, 2, 3)).scaled(Rat(1, 96)));
    k.at(1, 1).add(5, e4.scaled(Rat(1, 64)));
    // (2,3)
    k.at(1, 2).add(1, w2.scaled(Rat(3, 4)));
    k.at(1, 2).add(0, w2x.scaled(Rat(1, 4)));
    // (3,3)
    k.at(2, 2).add(1, w3.scaled(Rat(1, 2)));
    k.at(2, 2).add(0, w3x.scaled(Rat(1, 4)));
    k.at(2, 2).add(3, e2.scaled(Rat(5, 16)));
    // remaining entries by skewness
    k.at(1, 0) = -k.at(0, 1).adjoint();
    k.at(2, 0) = -k.at(0, 2).adjoint();
    k.at(2, 1) = -k.at(1, 2).adjoint();
    return k;
}

MatDiffOp expected_k2_cp1(const RingPtr &ring) {
    const int cap = ring->eps_cap();
    MatDiffOp k(ring, 2);
    // S(eps dx) dx and S~(eps dx)
    auto s = s_series(cap);
    auto st = s_tilde_series(cap);
    ScalarDiffOp s_dx(ring), s_t(ring);
    for (int m2 = 0; 2 * m2 <= cap; ++m2) {
        s_dx.add(2 * m2 + 1, DiffPoly::eps_pow(ring, 2 * m2).scaled(s[size_t(2 * m2)]));
        s_t.add(2 * m2, DiffPoly::eps_pow(ring, 2 * m2).scaled(st[size_t(2 * m2)]));
    }
    ScalarDiffOp eop = ScalarDiffOp::mul_by(cp1_exp_density(ring));
    k.at(0, 0) = compose(s_dx, compose(eop, s_t)) + compose(s_t, compose(eop, s_dx));
    k.at(0, 1).add(1, uv(ring, 0, 0));
    k.at(1, 0).add(1, uv(ring, 0, 0));
    k.at(1, 0).add(0, uv(ring, 0, 1));
    auto B = bernoulli(cap + 1);
    Rat fact(1);
    for (int gg = 0; 2 * gg <= cap; ++gg) {
        if (gg > 0) fact *= Rat(2 * gg - 1) * Rat(2 * gg);
        k.at(1, 1).add(2 * gg + 1,
                       DiffPoly::eps_pow(ring, 2 * gg).scaled(Rat(2) * B[size_t(2 * gg)] / fact));
    }
    return k;
}

TodaPair builtin_toda(int two_g_max) {
    TodaPair t;
    auto ring = std::make_shared<Ring>(2, two_g_max);
    int e = ring->add_generator("E");
    {
        Mono em;
        em.gen.emplace_back(uint16_t(e), 1);
        ring->set_generator_derivative(e, 1, {{em, Rat(1)}});
    }
    t.ring = ring;
    auto dfrac = [&](const Rat &a) {
        // eps^{-1} (e^{a eps dx} - 1) = sum_{k>=1} a^k eps^{k-1} dx^k / k!
        ScalarDiffOp op(t.ring);
        Rat c(1);
        for (int kk = 1; kk - 1 <= two_g_max; ++kk) {
            c *= a / Rat(kk);
            op.add(kk, DiffPoly::eps_pow(t.ring, kk - 1).scaled(c));
        }
        return op;
    };
    t.k1 = MatDiffOp(t.ring, 2);
    t.k1.at(0, 1) = dfrac(Rat(1));
    t.k1.at(1, 0) = -dfrac(Rat(-1));
    t.k2 = MatDiffOp(t.ring, 2);
    {
        // eps^{-1} (e^{eps dx} o e^{v2} - e^{v2} e^{-eps dx})
        //   = sum_{k>=1} eps^{k-1}/k! (dx^k o E - (-1)^k E dx^k)
        ScalarDiffOp acc(t.ring);
        DiffPoly E = DiffPoly::generator(t.ring, 0);
        Rat invfact(1);
        for (int kk = 1; kk - 1 <= two_g_max; ++kk) {
            invfact /= Rat(kk);
            ScalarDiffOp term = compose(ScalarDiffOp::dx(t.ring, kk), ScalarDiffOp::mul_by(E));
            ScalarDiffOp right(t.ring);
            right.add(kk, E);
            term = (kk % 2 == 0) ? term - right : term + right;
            // multiply by eps^{k-1}/k!
            ScalarDiffOp weighted(t.ring);
            for (auto &[s2, c2] : term.coeffs())
                weighted.add(s2, c2.multiplied_by_eps(kk - 1).scaled(invfact));
            acc += weighted;
        }
        t.k2.at(0, 0) = acc;
        t.k2.at(0, 1) = dfrac(Rat(1)).left_mul(uv(t.ring, 0, 0));
        t.k2.at(1, 0) = compose(-dfrac(Rat(-1)), ScalarDiffOp::mul_by(uv(t.ring, 0, 0)));
        t.k2.at(1, 1) = dfrac(Rat(1)) - dfrac(Rat(-1));
    }
    return t;
}

std::pair<MiuraMap, Subst> toda_to_dr(const TodaPair &toda, const RingPtr &cp1_ring) {
    const int cap = toda.ring->eps_cap();
    MiuraMap m;
    m.ring = toda.ring;
    // u1 = e^{-eps dx / 2} v1, u2 = S(eps dx)^{-1} v2
    m.expr.push_back(shift_exp(toda.ring, Rat(-1, 2)).apply(uv(toda.ring, 0, 0)));
    m.expr.push_back(series_op(toda.ring, invert_series(s_series(cap))).apply(uv(toda.ring, 1, 0)));
    Subst inv;
    inv.target = cp1_ring;
    inv.comp.push_back(shift_exp(cp1_ring, Rat(1, 2)).apply(uv(cp1_ring, 0, 0)));
    inv.comp.push_back(series_op(cp1_ring, s_series(cap)).apply(uv(cp1_ring, 1, 0)));
    inv.gen_image.push_back(cp1_exp_density(cp1_ring));
    return {m, inv};
}

DiffPoly genus1_g_from_potential(const DiffPoly &F, const std::vector<std::vector<Rat>> &eta) {
    const auto ring = F.ring();
    const int n = int(eta.size());
    auto ei = invert_matrix(eta);
    if (!F.eval_origin().is_zero()) throw std::invalid_argument("genus1_g_from_potential: F(0) != 0");
    for (int a = 0; a < n; ++a)
        if (!F.partial_u(a, 0).eval_origin().is_zero())
            throw std::invalid_argument("genus1_g_from_potential: F has linear terms");
    // c^a_{bc} and the trace tensor
    std::vector<std::vector<std::vector<DiffPoly>>> c(
        n, std::vector<std::vector<DiffPoly>>(n, std::vector<DiffPoly>(n, DiffPoly(ring))));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int g = 0; g < n; ++g) {
                for (int mu = 0; mu < n; ++mu)
                    if (!ei[a][mu].is_zero())
                        c[a][b][g] +=
                            F.partial_u(mu, 0).partial_u(b, 0).partial_u(g, 0).scaled(ei[a][mu]);
            }
    std::vector<DiffPoly> trace(n, DiffPoly(ring));
    for (int xi = 0; xi < n; ++xi)
        for (int th = 0; th < n; ++th) trace[xi] += c[th][th][xi];
    DiffPoly g2(ring);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            DiffPoly t(ring);
            for (int xi = 0; xi < n; ++xi) t += trace[xi] * c[xi][a][b];
            g2 += t * uv(ring, a, 1) * uv(ring, b, 1);
        }
    return F - g2.multiplied_by_eps(2).scaled(Rat(1, 48));
}

// ---------------------------------------------------------------------------
// model files

namespace {

using nlohmann::json;

json rat_j(const Rat &r) { return r.str(); }
Rat rat_p(const json &j, const char *field) {
    if (!j.is_string()) throw std::invalid_argument(std::string("model file: field '") + field +
                                                    "' must be a rational string");
    return Rat::parse(j.get<std::string>());
}

json poly_j(const DiffPoly &p) {
    json out = json::array();
    for (auto &[m, c] : p.terms()) {
        json t;
        t["c"] = c.str();
        if (m.eps) t["e"] = m.eps;
        if (!m.u.empty()) {
            json u = json::array();
            for (auto &[id, e] : m.u) u.push_back({id_alpha(id) + 1, id_jet(id), e});
            t["u"] = u;
        }
        if (!m.th.empty()) {
            json th = json::array();
            for (auto id : m.th) th.push_back({id_alpha(id) + 1, id_jet(id)});
            t["th"] = th;
        }
        if (!m.gen.empty()) {
            json gg = json::array();
            for (auto &[g, e] : m.gen) gg.push_back({int(g), e});
            t["g"] = gg;
        }
        out.push_back(t);
    }
    return out;
}

DiffPoly poly_p(const json &j, const RingPtr &ring, const char *field) {
    if (!j.is_array()) throw std::invalid_argument(std::string("model file: '") + field +
                                                   "' must be a monomial array");
    DiffPoly p(ring);
    for (auto &t : j) {
        Mono m;
        if (t.contains("e")) m.eps = t["e"].get<int>();
        if (t.contains("u"))
            for (auto &v : t["u"]) {
                int alpha = v.at(0).get<int>(), jet = v.at(1).get<int>(), exp = v.at(2).get<int>();
                if (alpha < 1 || alpha > ring->n() || jet < 0 || exp < 1)
                    throw std::invalid_argument(std::string("model file: bad variable in '") + field + "'");
                m.u.emplace_back(jet_id(alpha - 1, jet), exp);
            }
        if (t.contains("th"))
            for (auto &v : t["th"]) m.th.push_back(jet_id(v.at(0).get<int>() - 1, v.at(1).get<int>()));
        if (t.contains("g"))
            for (auto &v : t["g"]) {
                int gi = v.at(0).get<int>(), exp = v.at(1).get<int>();
                if (gi < 0 || gi >= int(ring->generators().size()))
                    throw std::invalid_argument(std::string("model file: unknown generator in '") +
                                                field + "'");
                m.gen.emplace_back(uint16_t(gi), exp);
            }
        std::sort(m.u.begin(), m.u.end());
        std::sort(m.th.begin(), m.th.end());
        std::sort(m.gen.begin(), m.gen.end());
        p.add_term(m, rat_p(t.at("c"), field));
    }
    return p;
}

std::vector<Rat> rats_p(const json &j, const char *field) {
    std::vector<Rat> v;
    for (auto &x : j) v.push_back(rat_p(x, field));
    return v;
}

std::vector<std::vector<Rat>> mat_p(const json &j, const char *field) {
    std::vector<std::vector<Rat>> m;
    for (auto &row : j) m.push_back(rats_p(row, field));
    return m;
}

} // namespace

void save_model(const CohFTModel &m, const std::string &path) {
    json j;
    j["schema"] = "drham-model/1";
    j["name"] = m.name;
    j["dimension"] = m.h.n;
    json eta = json::array(), amat = json::array();
    for (auto &row : m.h.eta) {
        json r = json::array();
        for (auto &x : row) r.push_back(rat_j(x));
        eta.push_back(r);
    }
    for (auto &row : m.h.a_matrix) {
        json r = json::array();
        for (auto &x : row) r.push_back(rat_j(x));
        amat.push_back(r);
    }
    j["metric"] = eta;
    j["a_matrix"] = amat;
    json unit = json::array(), q = json::array(), rr = json::array();
    for (auto &x : m.h.unit) unit.push_back(rat_j(x));
    for (auto &x : m.h.q) q.push_back(rat_j(x));
    for (auto &x : m.h.r) rr.push_back(rat_j(x));
    j["unit"] = unit;
    j["charges"] = q;
    j["shifts"] = rr;
    j["conformal_dimension"] = rat_j(m.h.delta);
    j["eps_exact"] = m.eps_exact;
    json gens = json::array();
    for (auto &g : m.ring->generators()) {
        json gj;
        gj["name"] = g.name;
        gj["origin"] = rat_j(g.origin);
        json du;
        for (auto &[alpha, terms] : g.du)
            du[std::to_string(alpha + 1)] = poly_j(DiffPoly::from_terms(m.ring, terms));
        gj["derivatives"] = du;
        gens.push_back(gj);
    }
    j["generators"] = gens;
    j["gbar"] = poly_j(m.gbar);
    if (m.potential) j["potential"] = poly_j(*m.potential);
    json known = json::array();
    for (auto &[key, d] : m.known) {
        json kj;
        kj["alpha"] = key.first + 1;
        kj["d"] = key.second;
        kj["density"] = poly_j(d);
        known.push_back(kj);
    }
    if (!known.empty()) j["known"] = known;
    std::ofstream f(path);
    if (!f) throw std::runtime_error("save_model: cannot open '" + path + "'");
    f << j.dump(1) << "\n";
}

CohFTModel load_model(const std::string &path, int two_g_max) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("load_model: cannot open '" + path + "'");
    json j;
    try {
        f >> j;
    } catch (const std::exception &e) {
        throw std::invalid_argument("load_model: invalid JSON: " + std::string(e.what()));
    }
    if (!j.contains("schema") || j["schema"] != "drham-model/1")
        throw std::invalid_argument("load_model: missing or unsupported schema (want drham-model/1)");
    CohFTModel m;
    m.name = j.value("name", "model");
    m.h.n = j.at("dimension").get<int>();
    m.h.eta = mat_p(j.at("metric"), "metric");
    m.h.a_matrix = j.contains("a_matrix")
                       ? mat_p(j["a_matrix"], "a_matrix")
                       : std::vector<std::vector<Rat>>(m.h.n, std::vector<Rat>(m.h.n, Rat(0)));
    m.h.unit = rats_p(j.at("unit"), "unit");
    m.h.q = rats_p(j.at("charges"), "charges");
    m.h.r = rats_p(j.at("shifts"), "shifts");
    m.h.delta = rat_p(j.at("conformal_dimension"), "conformal_dimension");
    m.eps_exact = j.value("eps_exact", true);
    m.h.validate();

    // size the eps cap from the density content
    int cap = two_g_max;
    if (j.contains("gbar"))
        for (auto &t : j["gbar"])
            if (t.contains("e")) cap = std::max(cap, t["e"].get<int>());
    auto ring = std::make_shared<Ring>(m.h.n, cap);
    if (j.contains("generators"))
        for (auto &gj : j["generators"]) {
            int gi = ring->add_generator(gj.at("name").get<std::string>());
            if (gj.contains("origin")) ring->set_generator_origin(gi, rat_p(gj["origin"], "origin"));
        }
    m.ring = ring;
    if (j.contains("generators")) {
        int gi = 0;
        for (auto &gj : j["generators"]) {
            if (gj.contains("derivatives"))
                for (auto &[key, val] : gj["derivatives"].items()) {
                    int alpha = std::stoi(key) - 1;
                    if (alpha < 0 || alpha >= m.h.n)
                        throw std::invalid_argument("load_model: generator derivative component out of range");
                    DiffPoly d = poly_p(val, m.ring, "generator derivative");
                    std::vector<std::pair<Mono, Rat>> terms(d.terms().begin(), d.terms().end());
                    ring->set_generator_derivative(gi, alpha, terms);
                }
            ++gi;
        }
    }
    m.gbar = poly_p(j.at("gbar"), m.ring, "gbar");
    if (j.contains("potential")) m.potential = poly_p(j["potential"], m.ring, "potential");
    if (j.contains("known"))
        for (auto &kj : j["known"])
            m.known.emplace(std::make_pair(kj.at("alpha").get<int>() - 1, kj.at("d").get<int>()),
                            poly_p(kj.at("density"), m.ring, "known density"));
    return m;
}

} // namespace drham

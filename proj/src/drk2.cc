#include "drham/drk2.hpp"

#include <sstream>

namespace drham {

std::vector<Rat> HomogeneityData::mu() const {
    std::vector<Rat> m;
    m.reserve(n);
    for (int a = 0; a < n; ++a) m.push_back(q[a] - delta * Rat(1, 2));
    return m;
}

std::vector<std::vector<Rat>> HomogeneityData::eta_inv() const { return invert_matrix(eta); }

std::vector<std::vector<Rat>> HomogeneityData::a_upper() const {
    auto ei = eta_inv();
    std::vector<std::vector<Rat>> up(n, std::vector<Rat>(n, Rat(0)));
    for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a)
            for (int nu = 0; nu < n; ++nu) up[b][a] += ei[b][nu] * a_matrix[nu][a];
    return up;
}

void HomogeneityData::validate() const {
    if (int(eta.size()) != n || int(unit.size()) != n || int(q.size()) != n ||
        int(r.size()) != n || int(a_matrix.size()) != n)
        throw std::invalid_argument("HomogeneityData: size mismatch");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!(eta[i][j] == eta[j][i])) throw std::invalid_argument("HomogeneityData: eta not symmetric");
            if (!(a_matrix[i][j] == a_matrix[j][i]))
                throw std::invalid_argument("HomogeneityData: A not symmetric");
        }
    (void)eta_inv(); // throws when singular
    auto m = mu();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!((m[i] + m[j]) * eta[i][j]).is_zero())
                throw std::invalid_argument("HomogeneityData: mu eta + eta mu != 0");
}

std::string CohFTModel::scope() const {
    if (eps_exact) return "exact";
    return "eps-order " + std::to_string(ring->eps_cap());
}

DiffPoly euler_Ehat(const DiffPoly &p, const HomogeneityData &h) {
    if (p.theta_degree_max() != 0) throw std::invalid_argument("euler_Ehat: theta degree must be 0");
    std::vector<Rat> c;
    c.reserve(h.n);
    for (int a = 0; a < h.n; ++a) c.push_back(Rat(1) - h.q[a]);
    return scaling_derivation(p, c, h.r, (Rat(1) - h.delta) * Rat(1, 2));
}

bool check_homogeneity(const CohFTModel &m) {
    DiffPoly lhs = euler_Ehat(m.gbar, m.h);
    DiffPoly rhs = m.gbar.scaled(Rat(3) - m.h.delta);
    for (int a = 0; a < m.h.n; ++a)
        for (int b = 0; b < m.h.n; ++b) {
            Rat c = m.h.a_matrix[a][b] * Rat(1, 2);
            if (c.is_zero()) continue;
            rhs += (DiffPoly::u_var(m.ring, a, 0) * DiffPoly::u_var(m.ring, b, 0)).scaled(c);
        }
    return functional_equal(LocalFunctional(lhs), LocalFunctional(rhs));
}

namespace {

MatDiffOp map_coeffs(const MatDiffOp &K, const std::function<DiffPoly(const DiffPoly &)> &fn) {
    MatDiffOp r(K.ring(), K.n());
    for (int i = 0; i < K.n(); ++i)
        for (int j = 0; j < K.n(); ++j)
            for (auto &[s, c] : K.at(i, j).coeffs()) r.at(i, j).add(s, fn(c));
    return r;
}

MatDiffOp compose_right_dx(const MatDiffOp &K) {
    MatDiffOp r(K.ring(), K.n());
    auto dx = ScalarDiffOp::dx(K.ring());
    for (int i = 0; i < K.n(); ++i)
        for (int j = 0; j < K.n(); ++j) r.at(i, j) = compose(K.at(i, j), dx);
    return r;
}

MatDiffOp compose_left_dx(const MatDiffOp &K) {
    MatDiffOp r(K.ring(), K.n());
    auto dx = ScalarDiffOp::dx(K.ring());
    for (int i = 0; i < K.n(); ++i)
        for (int j = 0; j < K.n(); ++j) r.at(i, j) = compose(dx, K.at(i, j));
    return r;
}

} // namespace

MatDiffOp build_K2(const DiffPoly &gbar, const HomogeneityData &h, K2Form form) {
    LocalFunctional g(gbar);
    MatDiffOp omega0 = omega_hat(g, 0, h.eta);
    MatDiffOp omega1 = omega_hat(g, 1, h.eta);
    auto mu = h.mu();
    std::vector<Rat> half_minus_mu;
    half_minus_mu.reserve(h.n);
    for (int a = 0; a < h.n; ++a) half_minus_mu.push_back(Rat(1, 2) - mu[a]);

    MatDiffOp tail = compose_left_dx(compose_right_dx(omega1));
    if (form == K2Form::defining) {
        MatDiffOp head = compose_right_dx(
            map_coeffs(omega0, [&](const DiffPoly &c) { return euler_Ehat(c, h); }));
        MatDiffOp mid =
            map_coeffs(omega0, [](const DiffPoly &c) { return c.dx(); }).right_diag(half_minus_mu);
        return head + mid + tail;
    }
    MatDiffOp left = compose_left_dx(omega0.right_diag(half_minus_mu));
    MatDiffOp right = compose_right_dx(omega0.left_diag(half_minus_mu));
    // eta^{-1} A eta^{-1} dx
    auto ei = h.eta_inv();
    std::vector<std::vector<Rat>> c(h.n, std::vector<Rat>(h.n, Rat(0)));
    for (int a = 0; a < h.n; ++a)
        for (int b = 0; b < h.n; ++b)
            for (int i = 0; i < h.n; ++i)
                for (int j = 0; j < h.n; ++j) c[a][b] += ei[a][i] * h.a_matrix[i][j] * ei[j][b];
    MatDiffOp shift = k1_operator(gbar.ring(), c);
    return left + right + shift + tail;
}

MatDiffOp build_K2(const CohFTModel &m, K2Form form) { return build_K2(m.gbar, m.h, form); }

std::vector<DiffPoly> r_vector_field(const DiffPoly &g_density, const HomogeneityData &h) {
    const auto ring = g_density.ring();
    auto mu = h.mu();
    auto ei = h.eta_inv();
    LocalFunctional g(g_density);
    std::vector<DiffPoly> inner(h.n, DiffPoly(ring));
    for (int b = 0; b < h.n; ++b) {
        inner[b] = g.var_u(b).scaled(Rat(-1, 2) - mu[b]);
        for (int c = 0; c < h.n; ++c)
            inner[b] -= DiffPoly::u_var(ring, c, 0).scaled(h.a_matrix[b][c] * Rat(1, 2));
        inner[b] += higher_euler(g_density, b, 1).dx();
    }
    std::vector<DiffPoly> R(h.n, DiffPoly(ring));
    for (int a = 0; a < h.n; ++a)
        for (int b = 0; b < h.n; ++b)
            if (!ei[a][b].is_zero()) R[a] += inner[b].scaled(ei[a][b]);
    return R;
}

HamTable casimirs(const HomogeneityData &h, const RingPtr &ring) {
    HamTable t;
    for (int a = 0; a < h.n; ++a) {
        DiffPoly d(ring);
        for (int b = 0; b < h.n; ++b)
            if (!h.eta[a][b].is_zero()) d += DiffPoly::u_var(ring, b, 0).scaled(h.eta[a][b]);
        t.emplace(std::make_pair(a, -1), LocalFunctional(d));
    }
    return t;
}

namespace {

std::vector<DiffPoly> k1_apply(const HomogeneityData &h, const std::vector<DiffPoly> &grad) {
    auto ei = h.eta_inv();
    std::vector<DiffPoly> r(h.n, DiffPoly(grad[0].ring()));
    for (int a = 0; a < h.n; ++a)
        for (int b = 0; b < h.n; ++b)
            if (!ei[a][b].is_zero()) r[a] += grad[b].dx().scaled(ei[a][b]);
    return r;
}

} // namespace

std::vector<RecursionStep> recursion_check(const HomogeneityData &h, const MatDiffOp &K2,
                                           const HamTable &table) {
    std::vector<RecursionStep> out;
    auto mu = h.mu();
    auto au = h.a_upper();
    for (auto &[key, g] : table) {
        auto [alpha, d] = key;
        auto next = table.find({alpha, d + 1});
        if (next == table.end()) continue;
        std::vector<DiffPoly> lhs = K2.apply(g.gradient());
        std::vector<DiffPoly> rhs = k1_apply(h, next->second.gradient());
        for (auto &c : rhs) c = c.scaled(Rat(d) + Rat(3, 2) + mu[alpha]);
        for (int b = 0; b < h.n; ++b) {
            if (au[b][alpha].is_zero()) continue;
            auto itb = table.find({b, d});
            if (itb == table.end()) {
                out.push_back({alpha, d, false, "missing A-term partner"});
                goto next_entry;
            }
            auto add = k1_apply(h, itb->second.gradient());
            for (int c = 0; c < h.n; ++c) rhs[c] += add[c].scaled(au[b][alpha]);
        }
        {
            bool pass = true;
            std::string note;
            for (int c = 0; c < h.n; ++c)
                if (!(lhs[c] == rhs[c])) {
                    pass = false;
                    DiffPoly res = lhs[c] - rhs[c];
                    note = "residual component " + std::to_string(c + 1) + ": " + res.str();
                    break;
                }
            out.push_back({alpha, d, pass, note});
        }
    next_entry:;
    }
    return out;
}

GenerateResult recursion_generate(const HomogeneityData &h, const MatDiffOp &K2,
                                  const RingPtr &ring, int d_top,
                                  std::optional<HamTable> start) {
    GenerateResult res;
    res.table = start ? *start : casimirs(h, ring);
    auto mu = h.mu();
    auto au = h.a_upper();
    int d_min = res.table.begin()->first.second;
    for (int d = d_min; d < d_top; ++d) {
        for (int alpha = 0; alpha < h.n; ++alpha) {
            auto it = res.table.find({alpha, d});
            if (it == res.table.end()) {
                res.table.erase({alpha, d + 1});
                res.log.push_back({alpha, d + 1, false, "previous level missing, skipped"});
                continue;
            }
            Rat factor = Rat(d) + Rat(3, 2) + mu[alpha];
            if (factor.is_zero()) {
                res.log.push_back({alpha, d + 1, false, "degenerate recursion factor, skipped"});
                continue;
            }
            std::vector<DiffPoly> w = K2.apply(it->second.gradient());
            for (int b = 0; b < h.n; ++b) {
                if (au[b][alpha].is_zero()) continue;
                auto add = k1_apply(h, res.table.at({b, d}).gradient());
                for (int c = 0; c < h.n; ++c) w[c] -= add[c].scaled(au[b][alpha]);
            }
            // solve eta^{-1} dx E = w / factor
            std::vector<DiffPoly> E(h.n, DiffPoly(ring));
            bool good = true;
            for (int nu = 0; nu < h.n && good; ++nu) {
                DiffPoly target(ring);
                for (int b = 0; b < h.n; ++b)
                    if (!h.eta[nu][b].is_zero()) target += w[b].scaled(h.eta[nu][b] / factor);
                if (!is_dx_exact(target)) {
                    res.ok = false;
                    good = false;
                    res.log.push_back({alpha, d + 1, false,
                                       "flow not in Im dx, component " + std::to_string(nu + 1)});
                    break;
                }
                E[nu] = dx_invert(target);
            }
            if (!good) continue;
            try {
                LocalFunctional g = functional_from_variational(E);
                for (int nu = 0; nu < h.n; ++nu)
                    if (!(g.var_u(nu) == E[nu]))
                        throw std::domain_error("reconstruction mismatch");
                res.table.insert_or_assign(std::make_pair(alpha, d + 1), g);
                res.log.push_back({alpha, d + 1, true, ""});
            } catch (const std::exception &e) {
                res.ok = false;
                res.log.push_back({alpha, d + 1, false, e.what()});
            }
        }
    }
    // mutual commutativity under the first bracket
    auto ei = h.eta_inv();
    MatDiffOp K1 = k1_operator(ring, ei);
    for (auto it = res.table.begin(); it != res.table.end(); ++it)
        for (auto jt = std::next(it); jt != res.table.end(); ++jt) {
            if (!is_zero_functional(poisson_bracket(it->second, jt->second, K1, false))) {
                res.ok = false;
                res.log.push_back({it->first.first, it->first.second, false,
                                   "fails to commute with (" + std::to_string(jt->first.first + 1) +
                                       "," + std::to_string(jt->first.second) + ")"});
            }
        }
    return res;
}

Genus0Tables build_genus0_tables(const DiffPoly &F, const HomogeneityData &h, int d_max) {
    const auto ring = F.ring();
    const int n = h.n;
    auto ei = h.eta_inv();

    Genus0Tables t;
    t.omega.resize(size_t(d_max) + 2);
    // level -1: eta
    t.omega[0].assign(n, std::vector<DiffPoly>(n, DiffPoly(ring)));
    for (int a = 0; a < n; ++a)
        for (int g = 0; g < n; ++g)
            t.omega[0][a][g] = DiffPoly::constant(ring, h.eta[g][a]);
    // level 0: second derivatives of F
    t.omega[1].assign(n, std::vector<DiffPoly>(n, DiffPoly(ring)));
    for (int a = 0; a < n; ++a)
        for (int g = 0; g < n; ++g) t.omega[1][a][g] = F.partial_u(a, 0).partial_u(g, 0);

    for (int level = 1; level <= d_max; ++level) {
        auto &prev = t.omega[level];
        auto &cur = t.omega[level + 1];
        cur.assign(n, std::vector<DiffPoly>(n, DiffPoly(ring)));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                // gradient: G_gamma = Omega_{a,level-1; mu,0} eta^{mu nu} d Omega_{nu,0;b,0}/du^gamma
                std::vector<DiffPoly> G(n, DiffPoly(ring));
                for (int gamma = 0; gamma < n; ++gamma)
                    for (int m = 0; m < n; ++m)
                        for (int nu = 0; nu < n; ++nu) {
                            if (ei[m][nu].is_zero()) continue;
                            G[gamma] += (prev[a][m] * t.omega[1][b][nu].partial_u(gamma, 0))
                                            .scaled(ei[m][nu]);
                        }
                for (int g1 = 0; g1 < n; ++g1)
                    for (int g2 = g1 + 1; g2 < n; ++g2)
                        if (!(G[g1].partial_u(g2, 0) == G[g2].partial_u(g1, 0)))
                            throw std::domain_error("build_genus0_tables: gradient not integrable");
                DiffPoly P(ring);
                for (int gamma = 0; gamma < n; ++gamma) {
                    DiffPoly rest = G[gamma] - P.partial_u(gamma, 0);
                    if (rest.is_zero()) continue;
                    P += rest.integrate_u(gamma);
                }
                for (int gamma = 0; gamma < n; ++gamma)
                    if (!(P.partial_u(gamma, 0) == G[gamma]))
                        throw std::domain_error("build_genus0_tables: integration failed");
                P -= P.eval_origin();
                cur[a][b] = P;
            }
    }
    return t;
}

MatDiffOp genus0_k2(const DiffPoly &F, const HomogeneityData &h) {
    const auto ring = F.ring();
    const int n = h.n;
    auto ei = h.eta_inv();
    auto mu = h.mu();
    MatDiffOp K(ring, n);
    std::vector<Rat> c, shift;
    for (int g = 0; g < n; ++g) {
        c.push_back(Rat(1) - h.q[g]);
        shift.push_back(h.r[g]);
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            DiffPoly omega(ring);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    Rat w = ei[a][i] * ei[b][j];
                    if (!w.is_zero()) omega += F.partial_u(i, 0).partial_u(j, 0).scaled(w);
                }
            K.at(a, b).add(1, scaling_derivation(omega, c, shift, Rat(0)));
            K.at(a, b).add(0, omega.dx().scaled(Rat(1, 2) - mu[b]));
        }
    return K;
}

bool Genus0Report::ok() const {
    if (!unit_axiom) return false;
    for (auto &s : recursion)
        if (!s.pass) return false;
    for (auto &s : homogeneity)
        if (!s.pass) return false;
    return true;
}

Genus0Report genus0_check(const CohFTModel &m, int d_max) {
    Genus0Report rep;
    if (!m.potential) throw std::invalid_argument("genus0_check: model has no potential");
    const DiffPoly &F = *m.potential;
    const auto ring = m.ring;
    const int n = m.h.n;
    auto mu = m.h.mu();
    auto ei = m.h.eta_inv();
    auto au = m.h.a_upper();

    // unit axiom A^mu F_{mu a b} = eta_{a b}
    rep.unit_axiom = true;
    for (int a = 0; a < n && rep.unit_axiom; ++a)
        for (int b = 0; b < n && rep.unit_axiom; ++b) {
            DiffPoly s(ring);
            for (int mu2 = 0; mu2 < n; ++mu2)
                s += F.partial_u(mu2, 0).partial_u(a, 0).partial_u(b, 0).scaled(m.h.unit[mu2]);
            if (!(s == DiffPoly::constant(ring, m.h.eta[a][b]))) rep.unit_axiom = false;
        }

    Genus0Tables t = build_genus0_tables(F, m.h, d_max + 1);
    MatDiffOp K20 = genus0_k2(F, m.h);

    for (int d = -1; d <= d_max; ++d) {
        for (int alpha = 0; alpha < n; ++alpha) {
            bool pass = true;
            std::string note;
            for (int beta = 0; beta < n && pass; ++beta) {
                DiffPoly lhs(ring);
                for (int gamma = 0; gamma < n; ++gamma)
                    lhs += K20.at(beta, gamma).apply(t.omega[d + 1][alpha][gamma]);
                DiffPoly rhs(ring);
                for (int gamma = 0; gamma < n; ++gamma) {
                    if (ei[beta][gamma].is_zero()) continue;
                    rhs += t.omega[d + 2][alpha][gamma].dx().scaled(
                        ei[beta][gamma] * (Rat(d) + Rat(3, 2) + mu[alpha]));
                    for (int m2 = 0; m2 < n; ++m2) {
                        Rat c = ei[beta][gamma] * au[m2][alpha];
                        if (!c.is_zero()) rhs += t.omega[d + 1][m2][gamma].dx().scaled(c);
                    }
                }
                if (!(lhs == rhs)) {
                    pass = false;
                    note = "residual in component " + std::to_string(beta + 1);
                }
            }
            rep.recursion.push_back({alpha, d, pass, note});
        }
    }

    // homogeneity identity on the tables
    for (int d = -1; d <= d_max; ++d) {
        for (int alpha = 0; alpha < n; ++alpha)
            for (int gamma = 0; gamma < n; ++gamma) {
                std::vector<Rat> c, shift;
                for (int g = 0; g < n; ++g) {
                    c.push_back(Rat(1) - m.h.q[g]);
                    shift.push_back(m.h.r[g]);
                }
                DiffPoly lhs = scaling_derivation(t.omega[d + 2][alpha][gamma], c, shift, Rat(0));
                DiffPoly rhs =
                    t.omega[d + 2][alpha][gamma].scaled(Rat(d) + Rat(2) + mu[alpha] + mu[gamma]);
                for (int m2 = 0; m2 < n; ++m2)
                    if (!au[m2][alpha].is_zero())
                        rhs += t.omega[d + 1][m2][gamma].scaled(au[m2][alpha]);
                bool pass = lhs == rhs;
                rep.homogeneity.push_back(
                    {alpha, d, pass, pass ? "" : "component gamma=" + std::to_string(gamma + 1)});
            }
    }
    return rep;
}

} // namespace drham

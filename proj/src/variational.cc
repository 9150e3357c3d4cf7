#include "drham/variational.hpp"

#include <algorithm>

namespace drham {

DiffPoly var_derivative_u(const DiffPoly &f, int alpha) {
    DiffPoly r(f.ring());
    const int top = f.max_jet();
    for (int i = 0; i <= top; ++i) {
        DiffPoly p = f.partial_u(alpha, i);
        if (p.is_zero()) continue;
        p = p.dx_pow(i);
        r += (i % 2 == 0) ? p : -p;
    }
    return r;
}

DiffPoly var_derivative_theta(const DiffPoly &f, int alpha) {
    DiffPoly r(f.ring());
    const int top = f.max_jet();
    for (int i = 0; i <= top; ++i) {
        DiffPoly p = f.partial_theta(alpha, i);
        if (p.is_zero()) continue;
        p = p.dx_pow(i);
        r += (i % 2 == 0) ? p : -p;
    }
    return r;
}

DiffPoly higher_euler(const DiffPoly &f, int alpha, int k) {
    DiffPoly r(f.ring());
    const int top = f.max_jet();
    for (int n = k; n <= top; ++n) {
        DiffPoly p = f.partial_u(alpha, n);
        if (p.is_zero()) continue;
        p = p.dx_pow(n - k).scaled(binom(n, k));
        r += ((n - k) % 2 == 0) ? p : -p;
    }
    return r;
}

ScalarDiffOp frechet_L(const DiffPoly &f, int alpha, int k) {
    ScalarDiffOp op(f.ring());
    const int top = f.max_jet();
    for (int i = k; i <= top; ++i) {
        DiffPoly p = f.partial_u(alpha, i);
        if (p.is_zero()) continue;
        op.add(i - k, p.scaled(binom(i, k)));
    }
    return op;
}

MultiVector::MultiVector(DiffPoly density)
    : d_(std::move(density)), cache_(std::make_shared<Cache>()) {
    if (!d_.theta_homogeneous(d_.theta_degree_max()))
        throw std::invalid_argument("MultiVector: density not theta-homogeneous");
    p_ = d_.theta_degree_max();
    const int n = d_.ring()->n();
    cache_->vu.assign(n, {false, DiffPoly()});
    cache_->vth.assign(n, {false, DiffPoly()});
}

DiffPoly MultiVector::var_u(int alpha) const {
    std::lock_guard<std::mutex> lock(cache_->m);
    auto &slot = cache_->vu.at(alpha);
    if (!slot.first) slot = {true, var_derivative_u(d_, alpha)};
    return slot.second;
}

DiffPoly MultiVector::var_theta(int alpha) const {
    std::lock_guard<std::mutex> lock(cache_->m);
    auto &slot = cache_->vth.at(alpha);
    if (!slot.first) slot = {true, var_derivative_theta(d_, alpha)};
    return slot.second;
}

std::vector<DiffPoly> MultiVector::gradient() const {
    std::vector<DiffPoly> g;
    for (int a = 0; a < d_.ring()->n(); ++a) g.push_back(var_u(a));
    return g;
}

bool is_zero_functional(const MultiVector &f) {
    for (int a = 0; a < f.ring()->n(); ++a) {
        if (!f.var_u(a).is_zero()) return false;
        if (f.theta_degree() > 0 && !f.var_theta(a).is_zero()) return false;
    }
    return true;
}

bool functional_equal(const MultiVector &f, const MultiVector &g) {
    if (f.theta_degree() != g.theta_degree()) return false;
    return is_zero_functional(MultiVector(f.density() - g.density()));
}

LocalFunctional poisson_bracket(const LocalFunctional &f, const LocalFunctional &g,
                                const MatDiffOp &K, bool check_skew) {
    if (check_skew && !K.is_skew()) throw std::invalid_argument("poisson_bracket: operator is not skew");
    DiffPoly d(f.ring());
    // the operator may act on a leading block of the ring components
    std::vector<DiffPoly> gg;
    gg.reserve(K.n());
    for (int nu = 0; nu < K.n(); ++nu) gg.push_back(g.var_u(nu));
    std::vector<DiffPoly> kg = K.apply(gg);
    for (int mu = 0; mu < K.n(); ++mu) d += f.var_u(mu) * kg[mu];
    return LocalFunctional(d);
}

MatDiffOp omega_hat(const LocalFunctional &h, int k, const std::vector<std::vector<Rat>> &eta) {
    const auto ring = h.ring();
    const int n = int(eta.size());
    auto eta_inv = invert_matrix(eta);
    MatDiffOp r(ring, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            ScalarDiffOp acc(ring);
            for (int mu = 0; mu < n; ++mu)
                for (int nu = 0; nu < n; ++nu) {
                    Rat c = eta_inv[a][mu] * eta_inv[b][nu];
                    if (c.is_zero()) continue;
                    acc += frechet_L(h.var_u(mu), nu, k).scaled(c);
                }
            r.at(a, b) = acc;
        }
    return r;
}

bool helmholtz_ok(const std::vector<DiffPoly> &E) {
    const int n = int(E.size());
    for (int mu = 0; mu < n; ++mu)
        for (int nu = mu; nu < n; ++nu)
            if (!(frechet_L(E[nu], mu, 0).adjoint() == frechet_L(E[mu], nu, 0))) return false;
    return true;
}

LocalFunctional functional_from_variational(const std::vector<DiffPoly> &E) {
    if (E.empty()) throw std::invalid_argument("functional_from_variational: empty input");
    const auto ring = E[0].ring();
    for (auto &e : E) {
        if (e.theta_degree_max() != 0)
            throw std::invalid_argument("functional_from_variational: theta-bearing input");
        for (auto &[m, c] : e.terms())
            if (!m.gen.empty())
                throw std::domain_error(
                    "functional_from_variational: generator-bearing input unsupported");
    }
    if (!helmholtz_ok(E)) throw std::domain_error("functional_from_variational: not a gradient");
    DiffPoly h(ring);
    for (int mu = 0; mu < int(E.size()); ++mu) {
        const DiffPoly umu = DiffPoly::u_var(ring, mu, 0);
        for (auto &[m, c] : E[mu].terms()) {
            DiffPoly t(ring);
            t.add_term(m, c / Rat(m.u_degree() + 1));
            h += umu * t;
        }
    }
    return LocalFunctional(h);
}

namespace {

// jet-dominant variable order used by the integration loop
bool jet_less(uint32_t a, uint32_t b) {
    if (id_jet(a) != id_jet(b)) return id_jet(a) < id_jet(b);
    return id_alpha(a) < id_alpha(b);
}

uint32_t max_uvar_jet_order(const DiffPoly &p) {
    bool found = false;
    uint32_t best = 0;
    for (auto &[m, c] : p.terms())
        for (auto &[id, e] : m.u)
            if (!found || jet_less(best, id)) {
                best = id;
                found = true;
            }
    if (!found) throw std::domain_error("dx_invert: no jet variables left in nonzero remainder");
    return best;
}

} // namespace

DiffPoly dx_invert(const DiffPoly &p0) {
    const auto ring = p0.ring();
    if (p0.theta_degree_max() != 0) throw std::invalid_argument("dx_invert: theta factors unsupported");
    DiffPoly p = p0.without_constant_part();
    DiffPoly q(ring);
    size_t guard = 16 * p.size() + 64;
    while (!p.is_zero()) {
        if (guard-- == 0) throw std::domain_error("dx_invert: failed to terminate (input not exact?)");
        const uint32_t v = max_uvar_jet_order(p);
        const int vk = id_jet(v), va = id_alpha(v);
        if (vk == 0) throw std::domain_error("dx_invert: input not in Im dx");
        // collect B = sum over terms containing v of term / v; terms must be
        // linear in v and otherwise below jet vk
        DiffPoly b(ring);
        for (auto &[m, c] : p.terms()) {
            int e = m.u_exponent(v);
            if (e == 0) continue;
            if (e > 1) throw std::domain_error("dx_invert: input not in Im dx (nonlinear top jet)");
            Mono rest = m;
            for (auto it = rest.u.begin(); it != rest.u.end(); ++it)
                if (it->first == v) {
                    rest.u.erase(it);
                    break;
                }
            for (auto &[id, ex] : rest.u)
                if (!jet_less(id, v))
                    throw std::domain_error("dx_invert: input not in Im dx (top jet structure)");
            b.add_term(rest, c);
        }
        // antiderivative of b in the variable one jet below v
        DiffPoly s(ring);
        if (vk == 1) {
            s = b.integrate_u(va);
        } else {
            const uint32_t w = jet_id(va, vk - 1);
            for (auto &[m, c] : b.terms()) {
                Mono t = m;
                int e = 0;
                bool found = false;
                for (auto &pr : t.u)
                    if (pr.first == w) {
                        e = pr.second;
                        pr.second += 1;
                        found = true;
                        break;
                    }
                if (!found) {
                    t.u.emplace_back(w, 1);
                    std::sort(t.u.begin(), t.u.end());
                }
                s.add_term(t, c / Rat(e + 1));
            }
        }
        q += s;
        p -= s.dx();
        p = p.without_constant_part();
    }
    return q;
}

bool is_dx_exact(const DiffPoly &p) {
    if (!p.constant_part().is_zero()) return false;
    for (int a = 0; a < p.ring()->n(); ++a)
        if (!var_derivative_u(p, a).is_zero()) return false;
    return true;
}

} // namespace drham

#include "drham/diffpoly.hpp"

#include <algorithm>
#include <sstream>

namespace drham {

DiffPoly DiffPoly::constant(RingPtr ring, const Rat &c) {
    DiffPoly p(std::move(ring));
    p.add_term(Mono{}, c);
    return p;
}

DiffPoly DiffPoly::u_var(RingPtr ring, int alpha, int jet) {
    if (alpha < 0 || alpha >= ring->n()) throw std::out_of_range("u_var: component out of range");
    if (jet < 0) throw std::out_of_range("u_var: negative jet order");
    DiffPoly p(std::move(ring));
    Mono m;
    m.u.emplace_back(jet_id(alpha, jet), 1);
    p.add_term(m, Rat(1));
    return p;
}

DiffPoly DiffPoly::theta_var(RingPtr ring, int alpha, int k) {
    if (alpha < 0 || alpha >= ring->n()) throw std::out_of_range("theta_var: component out of range");
    DiffPoly p(std::move(ring));
    Mono m;
    m.th.push_back(jet_id(alpha, k));
    p.add_term(m, Rat(1));
    return p;
}

DiffPoly DiffPoly::eps_pow(RingPtr ring, int k) {
    DiffPoly p(std::move(ring));
    Mono m;
    m.eps = k;
    p.add_term(m, Rat(1));
    return p;
}

DiffPoly DiffPoly::generator(RingPtr ring, int g, int power) {
    if (g < 0 || g >= int(ring->generators().size()))
        throw std::out_of_range("generator: index out of range");
    DiffPoly p(std::move(ring));
    Mono m;
    m.gen.emplace_back(uint16_t(g), power);
    p.add_term(m, Rat(1));
    return p;
}

DiffPoly DiffPoly::from_terms(RingPtr ring, std::vector<std::pair<Mono, Rat>> terms) {
    DiffPoly p(std::move(ring));
    for (auto &[m, c] : terms) p.add_term(m, c);
    return p;
}

void DiffPoly::add_term(const Mono &m, const Rat &c) {
    if (c.is_zero()) return;
    if (m.eps > ring_->eps_cap()) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
        t_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

DiffPoly DiffPoly::operator-() const {
    DiffPoly r(ring_);
    for (auto &[m, c] : t_) r.t_.emplace(m, -c);
    return r;
}

DiffPoly &DiffPoly::operator+=(const DiffPoly &o) {
    if (!ring_) ring_ = o.ring_;
    if (!ring_->same_signature(*o.ring_)) throw std::invalid_argument("DiffPoly: signature mismatch");
    for (auto &[m, c] : o.t_) add_term(m, c);
    return *this;
}

DiffPoly &DiffPoly::operator-=(const DiffPoly &o) {
    if (!ring_) ring_ = o.ring_;
    if (!ring_->same_signature(*o.ring_)) throw std::invalid_argument("DiffPoly: signature mismatch");
    for (auto &[m, c] : o.t_) add_term(m, -c);
    return *this;
}

DiffPoly operator*(const DiffPoly &a, const DiffPoly &b) {
    if (!a.ring_ || !b.ring_) return a.ring_ ? DiffPoly(a.ring_) : DiffPoly(b.ring_);
    if (!a.ring_->same_signature(*b.ring_)) throw std::invalid_argument("DiffPoly: signature mismatch");
    DiffPoly r(a.ring_);
    const int cap = a.ring_->eps_cap();
    Mono prod;
    for (auto &[ma, ca] : a.t_) {
        for (auto &[mb, cb] : b.t_) {
            prod.eps = ma.eps + mb.eps;
            if (prod.eps > cap) continue;
            int sign = 1;
            if (!merge_thetas(ma.th, mb.th, prod.th, sign)) continue;
            merge_exponents(ma.u, mb.u, prod.u);
            merge_exponents(ma.gen, mb.gen, prod.gen);
            Rat c = ca * cb;
            if (sign < 0) c = -c;
            r.add_term(prod, c);
        }
    }
    return r;
}

DiffPoly DiffPoly::scaled(const Rat &c) const {
    DiffPoly r(ring_);
    if (c.is_zero()) return r;
    for (auto &[m, k] : t_) r.t_.emplace(m, k * c);
    return r;
}

DiffPoly DiffPoly::dx() const {
    DiffPoly r(ring_);
    const auto &gens = ring_->generators();
    for (auto &[m, c] : t_) {
        // u-factors
        for (size_t f = 0; f < m.u.size(); ++f) {
            auto [id, e] = m.u[f];
            Mono b = m;
            if (e == 1)
                b.u.erase(b.u.begin() + f);
            else
                b.u[f].second -= 1;
            Mono up;
            up.u.emplace_back(jet_id(id_alpha(id), id_jet(id) + 1), 1);
            // b * u^alpha_{jet+1}
            Mono prod;
            prod.eps = b.eps;
            prod.th = b.th;
            prod.gen = b.gen;
            merge_exponents(b.u, up.u, prod.u);
            r.add_term(prod, c * Rat(e));
        }
        // theta factors: bump in place; a clash with an existing factor kills the term
        for (size_t f = 0; f < m.th.size(); ++f) {
            uint32_t bumped = jet_id(id_alpha(m.th[f]), id_jet(m.th[f]) + 1);
            if (f + 1 < m.th.size() && m.th[f + 1] == bumped) continue;
            Mono b = m;
            b.th[f] = bumped;
            r.add_term(b, c);
        }
        // generator factors through the derivation tables
        for (size_t f = 0; f < m.gen.size(); ++f) {
            auto [g, e] = m.gen[f];
            Mono base = m;
            if (e == 1)
                base.gen.erase(base.gen.begin() + f);
            else
                base.gen[f].second -= 1;
            DiffPoly basep(ring_);
            basep.add_term(base, c * Rat(e));
            for (auto &[alpha, table] : gens[g].du) {
                DiffPoly dgen = DiffPoly::from_terms(ring_, table);
                r += basep * dgen * DiffPoly::u_var(ring_, alpha, 1);
            }
        }
    }
    return r;
}

DiffPoly DiffPoly::dx_pow(int k) const {
    DiffPoly r = *this;
    for (int i = 0; i < k; ++i) r = r.dx();
    return r;
}

DiffPoly DiffPoly::partial_u(int alpha, int jet) const {
    DiffPoly r(ring_);
    const uint32_t id = jet_id(alpha, jet);
    const auto &gens = ring_->generators();
    for (auto &[m, c] : t_) {
        for (size_t f = 0; f < m.u.size(); ++f) {
            if (m.u[f].first != id) continue;
            int e = m.u[f].second;
            Mono b = m;
            if (e == 1)
                b.u.erase(b.u.begin() + f);
            else
                b.u[f].second -= 1;
            r.add_term(b, c * Rat(e));
            break;
        }
        if (jet != 0) continue;
        for (size_t f = 0; f < m.gen.size(); ++f) {
            auto [g, e] = m.gen[f];
            auto it = gens[g].du.find(alpha);
            if (it == gens[g].du.end()) continue;
            Mono base = m;
            if (e == 1)
                base.gen.erase(base.gen.begin() + f);
            else
                base.gen[f].second -= 1;
            DiffPoly basep(ring_);
            basep.add_term(base, c * Rat(e));
            r += basep * DiffPoly::from_terms(ring_, it->second);
        }
    }
    return r;
}

DiffPoly DiffPoly::partial_theta(int alpha, int k) const {
    DiffPoly r(ring_);
    const uint32_t id = jet_id(alpha, k);
    for (auto &[m, c] : t_) {
        auto it = std::find(m.th.begin(), m.th.end(), id);
        if (it == m.th.end()) continue;
        size_t pos = size_t(it - m.th.begin());
        Mono b = m;
        b.th.erase(b.th.begin() + pos);
        r.add_term(b, pos % 2 == 0 ? c : -c);
    }
    return r;
}

DiffPoly DiffPoly::eps_euler() const {
    DiffPoly r(ring_);
    for (auto &[m, c] : t_)
        if (m.eps != 0) r.t_.emplace(m, c * Rat(m.eps));
    return r;
}

int DiffPoly::theta_degree_max() const {
    int d = 0;
    for (auto &[m, c] : t_) d = std::max(d, m.theta_degree());
    return d;
}

bool DiffPoly::theta_homogeneous(int deg) const {
    for (auto &[m, c] : t_)
        if (m.theta_degree() != deg) return false;
    return true;
}

std::optional<long> DiffPoly::standard_degree() const {
    std::optional<long> d;
    for (auto &[m, c] : t_) {
        long md = m.standard_degree();
        if (!d)
            d = md;
        else if (*d != md)
            return std::nullopt;
    }
    return d ? d : std::optional<long>(0);
}

std::vector<std::pair<long, int>> DiffPoly::gradations() const {
    std::vector<std::pair<long, int>> g;
    g.reserve(t_.size());
    for (auto &[m, c] : t_) g.emplace_back(m.standard_degree(), m.theta_degree());
    return g;
}

int DiffPoly::max_eps() const {
    int e = 0;
    for (auto &[m, c] : t_) e = std::max(e, m.eps);
    return e;
}

int DiffPoly::max_jet() const {
    int j = -1;
    for (auto &[m, c] : t_) j = std::max(j, m.top_jet());
    return j;
}

long DiffPoly::max_u_degree() const {
    long d = 0;
    for (auto &[m, c] : t_) d = std::max(d, m.u_degree());
    return d;
}

DiffPoly DiffPoly::eps_coefficient(int k) const {
    DiffPoly r(ring_);
    for (auto &[m, c] : t_) {
        if (m.eps != k) continue;
        Mono b = m;
        b.eps = 0;
        r.t_.emplace(b, c);
    }
    return r;
}

DiffPoly DiffPoly::standard_degree_part(long d) const {
    DiffPoly r(ring_);
    for (auto &[m, c] : t_)
        if (m.standard_degree() == d) r.t_.emplace(m, c);
    return r;
}

DiffPoly DiffPoly::multiplied_by_eps(int k) const {
    DiffPoly r(ring_);
    for (auto &[m, c] : t_) {
        Mono b = m;
        b.eps += k;
        if (b.eps > ring_->eps_cap()) continue;
        if (b.eps < 0) throw std::domain_error("multiplied_by_eps: negative eps power");
        r.t_.emplace(b, c);
    }
    return r;
}

DiffPoly DiffPoly::truncate_u_degree(long bound) const {
    DiffPoly r(ring_);
    for (auto &[m, c] : t_)
        if (m.u_degree() <= bound) r.t_.emplace(m, c);
    return r;
}

DiffPoly DiffPoly::constant_part() const {
    DiffPoly r(ring_);
    for (auto &[m, c] : t_)
        if (m.is_constant()) r.t_.emplace(m, c);
    return r;
}

DiffPoly DiffPoly::without_constant_part() const {
    DiffPoly r(ring_);
    for (auto &[m, c] : t_)
        if (!m.is_constant()) r.t_.emplace(m, c);
    return r;
}

DiffPoly DiffPoly::eval_origin() const {
    DiffPoly r(ring_);
    for (auto &[m, c] : t_) {
        if (!m.u.empty() || !m.th.empty()) continue;
        Rat v = c;
        for (auto &[g, e] : m.gen) v *= ring_->generators()[g].origin.pow(e);
        Mono b;
        b.eps = m.eps;
        r.add_term(b, v);
    }
    return r;
}

DiffPoly DiffPoly::in_ring(RingPtr target) const {
    if (target->n() != ring_->n() || target->generators().size() != ring_->generators().size())
        throw std::invalid_argument("in_ring: incompatible layout");
    DiffPoly r(target);
    for (auto &[m, c] : t_)
        if (m.eps <= target->eps_cap()) r.t_.emplace(m, c);
    return r;
}

DiffPoly DiffPoly::exp_truncated() const {
    for (auto &[m, c] : t_)
        if (m.eps == 0)
            throw std::domain_error("exp_truncated: argument must have positive eps order");
    DiffPoly r = DiffPoly::constant(ring_, Rat(1));
    DiffPoly term = DiffPoly::constant(ring_, Rat(1));
    for (long k = 1; !term.is_zero(); ++k) {
        term = (term * *this).scaled(Rat(1, k));
        r += term;
    }
    return r;
}

DiffPoly DiffPoly::integrate_u(int alpha) const {
    const uint32_t id = jet_id(alpha, 0);
    const auto &gens = ring_->generators();
    DiffPoly r(ring_);
    for (auto &[m, c] : t_) {
        if (m.top_jet() > 0 || !m.th.empty())
            throw std::domain_error("integrate_u: input must involve jet order 0 only");
        // generator factors that depend on u^alpha
        int gdep = -1, gpow = 0;
        Rat gscale(0);
        for (auto &[g, e] : m.gen) {
            auto it = gens[g].du.find(alpha);
            if (it == gens[g].du.end()) continue;
            if (gdep >= 0) throw std::domain_error("integrate_u: multiple generators depend on variable");
            // supported shape: d g / du^alpha = lambda * g
            if (it->second.size() != 1) throw std::domain_error("integrate_u: unsupported generator table");
            const Mono &dm = it->second[0].first;
            if (!(dm.u.empty() && dm.th.empty() && dm.eps == 0 && dm.gen.size() == 1 &&
                  dm.gen[0] == std::pair<uint16_t, int>(g, 1)))
                throw std::domain_error("integrate_u: unsupported generator table");
            gdep = g;
            gpow = e;
            gscale = it->second[0].second;
        }
        int a = m.u_exponent(id);
        if (gdep < 0) {
            Mono b = m;
            bool found = false;
            for (auto &p : b.u)
                if (p.first == id) {
                    p.second += 1;
                    found = true;
                }
            if (!found) {
                b.u.emplace_back(id, 1);
                std::sort(b.u.begin(), b.u.end());
            }
            r.add_term(b, c / Rat(a + 1));
            continue;
        }
        // solve Q'(v) + k Q(v) = v^a for Q of degree a, k = gpow * gscale
        Rat k = Rat(gpow) * gscale;
        std::vector<Rat> q(size_t(a) + 1, Rat(0));
        q[a] = k.inv();
        for (int j = a - 1; j >= 0; --j) q[j] = -(Rat(j + 1) * q[j + 1]) / k;
        Mono base = m;
        for (auto it = base.u.begin(); it != base.u.end();)
            if (it->first == id)
                it = base.u.erase(it);
            else
                ++it;
        for (int j = 0; j <= a; ++j) {
            if (q[j].is_zero()) continue;
            Mono b = base;
            if (j > 0) {
                b.u.emplace_back(id, j);
                std::sort(b.u.begin(), b.u.end());
            }
            r.add_term(b, c * q[j]);
        }
    }
    return r;
}

DiffPoly substitute(const DiffPoly &p, const Subst &s) {
    const auto &src = *p.ring();
    if (int(s.comp.size()) != src.n()) throw std::invalid_argument("substitute: component count mismatch");
    if (s.gen_image.size() != src.generators().size())
        throw std::invalid_argument("substitute: generator image count mismatch");
    // lazily built jet lifts of the component images
    std::vector<std::vector<DiffPoly>> lifts(s.comp.size());
    auto lift = [&](int alpha, int jet) -> const DiffPoly & {
        auto &v = lifts[alpha];
        if (v.empty()) v.push_back(s.comp[alpha]);
        while (int(v.size()) <= jet) v.push_back(v.back().dx());
        return v[jet];
    };
    DiffPoly r(s.target);
    for (auto &[m, c] : p.terms()) {
        if (!m.th.empty()) throw std::domain_error("substitute: theta factors unsupported");
        DiffPoly term = DiffPoly::eps_pow(s.target, m.eps).scaled(c);
        for (auto &[id, e] : m.u)
            for (int i = 0; i < e && !term.is_zero(); ++i) term = term * lift(id_alpha(id), id_jet(id));
        for (auto &[g, e] : m.gen)
            for (int i = 0; i < e && !term.is_zero(); ++i) term = term * s.gen_image[g];
        r += term;
    }
    return r;
}

DiffPoly scaling_derivation(const DiffPoly &p, const std::vector<Rat> &c,
                            const std::vector<Rat> &shift, const Rat &eps_weight) {
    const auto ring = p.ring();
    const int n = ring->n();
    if (int(c.size()) != n || int(shift.size()) != n)
        throw std::invalid_argument("scaling_derivation: weight size mismatch");
    DiffPoly r(ring);
    // scaling part on the variable exponents plus the eps weight
    for (auto &[m, k] : p.terms()) {
        Rat w = eps_weight * Rat(m.eps);
        for (auto &[id, e] : m.u) w += c[id_alpha(id)] * Rat(e);
        if (!w.is_zero()) r.add_term(m, k * w);
    }
    // scaling part through the generator chain, and constant shifts
    for (int alpha = 0; alpha < n; ++alpha) {
        bool need_chain = !c[alpha].is_zero();
        if (need_chain) {
            // u^alpha_0 * (generator chain of d/du^alpha_0)
            DiffPoly chain(ring);
            const auto &gens = ring->generators();
            for (auto &[m, k] : p.terms()) {
                for (size_t f = 0; f < m.gen.size(); ++f) {
                    auto [g, e] = m.gen[f];
                    auto it = gens[g].du.find(alpha);
                    if (it == gens[g].du.end()) continue;
                    Mono base = m;
                    if (e == 1)
                        base.gen.erase(base.gen.begin() + f);
                    else
                        base.gen[f].second -= 1;
                    DiffPoly basep(ring);
                    basep.add_term(base, k * Rat(e));
                    chain += basep * DiffPoly::from_terms(ring, it->second);
                }
            }
            if (!chain.is_zero())
                r += (DiffPoly::u_var(ring, alpha, 0) * chain).scaled(c[alpha]);
        }
        if (!shift[alpha].is_zero()) r += p.partial_u(alpha, 0).scaled(shift[alpha]);
    }
    return r;
}

DiffPoly dilation_D(const DiffPoly &p) {
    const auto ring = p.ring();
    DiffPoly r(ring);
    for (auto &[m, k] : p.terms()) {
        long w = 0;
        for (auto &[id, e] : m.u) w += long(id_jet(id) + 1) * e;
        if (w != 0) r.add_term(m, k * Rat(w));
    }
    // jet order 0 part acting through generators
    const auto &gens = ring->generators();
    for (int alpha = 0; alpha < ring->n(); ++alpha) {
        DiffPoly chain(ring);
        for (auto &[m, k] : p.terms()) {
            for (size_t f = 0; f < m.gen.size(); ++f) {
                auto [g, e] = m.gen[f];
                auto it = gens[g].du.find(alpha);
                if (it == gens[g].du.end()) continue;
                Mono base = m;
                if (e == 1)
                    base.gen.erase(base.gen.begin() + f);
                else
                    base.gen[f].second -= 1;
                DiffPoly basep(ring);
                basep.add_term(base, k * Rat(e));
                chain += basep * DiffPoly::from_terms(ring, it->second);
            }
        }
        if (!chain.is_zero()) r += DiffPoly::u_var(ring, alpha, 0) * chain;
    }
    return r;
}

std::string DiffPoly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto &[m, c] : t_) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        if (m.eps > 0) os << "*eps^" << m.eps;
        for (auto &[id, e] : m.u) {
            os << "*u" << (id_alpha(id) + 1) << "_" << id_jet(id);
            if (e > 1) os << "^" << e;
        }
        for (auto id : m.th) os << "*th" << (id_alpha(id) + 1) << "_" << id_jet(id);
        for (auto &[g, e] : m.gen) {
            os << "*" << ring_->generators()[g].name;
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

} // namespace drham

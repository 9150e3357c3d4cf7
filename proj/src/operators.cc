#include "drham/operators.hpp"

#include "drham/variational.hpp"

#include <sstream>

namespace drham {

ScalarDiffOp ScalarDiffOp::identity(RingPtr ring) {
    ScalarDiffOp op(ring);
    op.add(0, DiffPoly::constant(ring, Rat(1)));
    return op;
}

ScalarDiffOp ScalarDiffOp::dx(RingPtr ring, int order) {
    ScalarDiffOp op(ring);
    op.add(order, DiffPoly::constant(ring, Rat(1)));
    return op;
}

ScalarDiffOp ScalarDiffOp::mul_by(const DiffPoly &a) {
    ScalarDiffOp op(a.ring());
    op.add(0, a);
    return op;
}

void ScalarDiffOp::add(int s, const DiffPoly &c) {
    if (s < 0) throw std::invalid_argument("ScalarDiffOp: negative order");
    if (c.is_zero()) return;
    auto it = a_.find(s);
    if (it == a_.end()) {
        a_.emplace(s, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) a_.erase(it);
    }
}

DiffPoly ScalarDiffOp::coeff(int s) const {
    auto it = a_.find(s);
    return it == a_.end() ? DiffPoly::zero(ring_) : it->second;
}

ScalarDiffOp ScalarDiffOp::operator-() const {
    ScalarDiffOp r(ring_);
    for (auto &[s, c] : a_) r.a_.emplace(s, -c);
    return r;
}

ScalarDiffOp &ScalarDiffOp::operator+=(const ScalarDiffOp &o) {
    if (!ring_) ring_ = o.ring_;
    for (auto &[s, c] : o.a_) add(s, c);
    return *this;
}

ScalarDiffOp &ScalarDiffOp::operator-=(const ScalarDiffOp &o) {
    if (!ring_) ring_ = o.ring_;
    for (auto &[s, c] : o.a_) add(s, -c);
    return *this;
}

ScalarDiffOp ScalarDiffOp::scaled(const Rat &c) const {
    ScalarDiffOp r(ring_);
    if (c.is_zero()) return r;
    for (auto &[s, a] : a_) r.a_.emplace(s, a.scaled(c));
    return r;
}

ScalarDiffOp ScalarDiffOp::left_mul(const DiffPoly &c) const {
    ScalarDiffOp r(ring_);
    for (auto &[s, a] : a_) r.add(s, c * a);
    return r;
}

ScalarDiffOp compose(const ScalarDiffOp &a, const ScalarDiffOp &b) {
    ScalarDiffOp r(a.ring_ ? a.ring_ : b.ring_);
    for (auto &[k, ac] : a.a_) {
        for (auto &[n, bc] : b.a_) {
            // dx^k o (bc dx^n) = sum_l binom(k,l) (dx^l bc) dx^{k-l+n}
            DiffPoly der = bc;
            for (int l = 0; l <= k; ++l) {
                if (l > 0) der = der.dx();
                if (der.is_zero()) break;
                r.add(k - l + n, (ac * der).scaled(binom(k, l)));
            }
        }
    }
    return r;
}

ScalarDiffOp ScalarDiffOp::adjoint() const {
    ScalarDiffOp r(ring_);
    for (auto &[s, c] : a_) {
        // (-dx)^s o c = sum_l binom(s,l) (-1)^s (dx^l c) dx^{s-l}
        DiffPoly der = c;
        for (int l = 0; l <= s; ++l) {
            if (l > 0) der = der.dx();
            if (der.is_zero()) break;
            Rat k = binom(s, l);
            if (s % 2 == 1) k = -k;
            r.add(s - l, der.scaled(k));
        }
    }
    return r;
}

DiffPoly ScalarDiffOp::apply(const DiffPoly &v) const {
    DiffPoly r(ring_);
    int prev = 0;
    DiffPoly der = v;
    for (auto &[s, c] : a_) {
        der = der.dx_pow(s - prev);
        prev = s;
        r += c * der;
    }
    return r;
}

ScalarDiffOp ScalarDiffOp::eps_coefficient(int k) const {
    ScalarDiffOp r(ring_);
    for (auto &[s, c] : a_) r.add(s, c.eps_coefficient(k));
    return r;
}

ScalarDiffOp ScalarDiffOp::in_ring(RingPtr target) const {
    ScalarDiffOp r(target);
    for (auto &[s, c] : a_) r.add(s, c.in_ring(target));
    return r;
}

int ScalarDiffOp::max_eps() const {
    int e = 0;
    for (auto &[s, c] : a_) e = std::max(e, c.max_eps());
    return e;
}

std::string ScalarDiffOp::str() const {
    if (a_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = a_.rbegin(); it != a_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << "(" << it->second.str() << ")";
        if (it->first > 0) os << "*dx^" << it->first;
    }
    return os.str();
}

MatDiffOp::MatDiffOp(RingPtr ring, int n) : ring_(std::move(ring)) {
    e_.assign(n, std::vector<ScalarDiffOp>(n, ScalarDiffOp(ring_)));
}

MatDiffOp MatDiffOp::operator-() const {
    MatDiffOp r(ring_, n());
    for (int i = 0; i < n(); ++i)
        for (int j = 0; j < n(); ++j) r.e_[i][j] = -e_[i][j];
    return r;
}

MatDiffOp &MatDiffOp::operator+=(const MatDiffOp &o) {
    if (e_.empty()) return *this = o;
    for (int i = 0; i < n(); ++i)
        for (int j = 0; j < n(); ++j) e_[i][j] += o.e_[i][j];
    return *this;
}

MatDiffOp &MatDiffOp::operator-=(const MatDiffOp &o) {
    if (e_.empty()) return *this = -o;
    for (int i = 0; i < n(); ++i)
        for (int j = 0; j < n(); ++j) e_[i][j] -= o.e_[i][j];
    return *this;
}

MatDiffOp MatDiffOp::scaled(const Rat &c) const {
    MatDiffOp r(ring_, n());
    for (int i = 0; i < n(); ++i)
        for (int j = 0; j < n(); ++j) r.e_[i][j] = e_[i][j].scaled(c);
    return r;
}

MatDiffOp MatDiffOp::right_diag(const std::vector<Rat> &d) const {
    MatDiffOp r(ring_, n());
    for (int i = 0; i < n(); ++i)
        for (int j = 0; j < n(); ++j) r.e_[i][j] = e_[i][j].scaled(d[j]);
    return r;
}

MatDiffOp MatDiffOp::left_diag(const std::vector<Rat> &d) const {
    MatDiffOp r(ring_, n());
    for (int i = 0; i < n(); ++i)
        for (int j = 0; j < n(); ++j) r.e_[i][j] = e_[i][j].scaled(d[i]);
    return r;
}

MatDiffOp compose(const MatDiffOp &a, const MatDiffOp &b) {
    if (a.n() != b.n()) throw std::invalid_argument("compose: size mismatch");
    MatDiffOp r(a.ring_, a.n());
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j)
            for (int k = 0; k < a.n(); ++k) r.e_[i][j] += compose(a.e_[i][k], b.e_[k][j]);
    return r;
}

MatDiffOp MatDiffOp::adjoint() const {
    MatDiffOp r(ring_, n());
    for (int i = 0; i < n(); ++i)
        for (int j = 0; j < n(); ++j) r.e_[i][j] = e_[j][i].adjoint();
    return r;
}

bool MatDiffOp::is_skew() const { return adjoint() == -*this; }

std::vector<DiffPoly> MatDiffOp::apply(const std::vector<DiffPoly> &v) const {
    if (int(v.size()) != n()) throw std::invalid_argument("apply: size mismatch");
    std::vector<DiffPoly> r(n(), DiffPoly(ring_));
    for (int i = 0; i < n(); ++i)
        for (int j = 0; j < n(); ++j) r[i] += e_[i][j].apply(v[j]);
    return r;
}

MatDiffOp MatDiffOp::eps_coefficient(int k) const {
    MatDiffOp r(ring_, n());
    for (int i = 0; i < n(); ++i)
        for (int j = 0; j < n(); ++j) r.e_[i][j] = e_[i][j].eps_coefficient(k);
    return r;
}

MatDiffOp MatDiffOp::in_ring(RingPtr target) const {
    MatDiffOp r(target, n());
    for (int i = 0; i < n(); ++i)
        for (int j = 0; j < n(); ++j) r.e_[i][j] = e_[i][j].in_ring(target);
    return r;
}

int MatDiffOp::max_eps() const {
    int e = 0;
    for (int i = 0; i < n(); ++i)
        for (int j = 0; j < n(); ++j) e = std::max(e, e_[i][j].max_eps());
    return e;
}

std::string MatDiffOp::str() const {
    std::ostringstream os;
    for (int i = 0; i < n(); ++i)
        for (int j = 0; j < n(); ++j)
            os << "[" << (i + 1) << "," << (j + 1) << "] " << e_[i][j].str() << "\n";
    return os.str();
}

MatDiffOp const_matrix_op(RingPtr ring, const std::vector<std::vector<Rat>> &m) {
    MatDiffOp r(ring, int(m.size()));
    for (int i = 0; i < r.n(); ++i)
        for (int j = 0; j < r.n(); ++j)
            if (!m[i][j].is_zero()) r.at(i, j).add(0, DiffPoly::constant(ring, m[i][j]));
    return r;
}

MatDiffOp k1_operator(RingPtr ring, const std::vector<std::vector<Rat>> &eta_inv) {
    MatDiffOp r(ring, int(eta_inv.size()));
    for (int i = 0; i < r.n(); ++i)
        for (int j = 0; j < r.n(); ++j)
            if (!eta_inv[i][j].is_zero()) r.at(i, j).add(1, DiffPoly::constant(ring, eta_inv[i][j]));
    return r;
}

std::vector<std::vector<Rat>> invert_matrix(const std::vector<std::vector<Rat>> &m) {
    const int n = int(m.size());
    std::vector<std::vector<Rat>> a = m, inv(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i) inv[i][i] = Rat(1);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row)
            if (!a[row][col].is_zero()) {
                pivot = row;
                break;
            }
        if (pivot < 0) throw std::domain_error("invert_matrix: singular matrix");
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        Rat d = a[col][col].inv();
        for (int j = 0; j < n; ++j) {
            a[col][j] *= d;
            inv[col][j] *= d;
        }
        for (int row = 0; row < n; ++row) {
            if (row == col || a[row][col].is_zero()) continue;
            Rat f = a[row][col];
            for (int j = 0; j < n; ++j) {
                a[row][j] -= f * a[col][j];
                inv[row][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

bool MiuraMap::close_to_identity() const {
    for (int alpha = 0; alpha < int(expr.size()); ++alpha) {
        DiffPoly lead = expr[alpha].eps_coefficient(0);
        if (!(lead == DiffPoly::u_var(ring, alpha, 0))) return false;
    }
    return true;
}

std::vector<DiffPoly> miura_invert(const MiuraMap &m) {
    if (!m.close_to_identity())
        throw std::domain_error("miura_invert: map is not close to identity");
    const auto ring = m.ring;
    const int n = ring->n();
    // delta^alpha = expr^alpha - u^alpha has strictly positive eps order,
    // so u = utilde - delta(u) converges in eps_cap iterations
    std::vector<DiffPoly> delta(n, DiffPoly(ring));
    for (int a = 0; a < n; ++a) {
        delta[a] = m.expr[a] - DiffPoly::u_var(ring, a, 0);
        if (!delta[a].eps_coefficient(0).is_zero())
            throw std::domain_error("miura_invert: correction must have positive eps order");
    }
    std::vector<DiffPoly> inv(n);
    for (int a = 0; a < n; ++a) inv[a] = DiffPoly::u_var(ring, a, 0);
    Subst s;
    s.target = ring;
    for (auto &g : ring->generators()) {
        (void)g;
        throw std::domain_error("miura_invert: generator-bearing rings need an explicit inverse");
    }
    for (int it = 0; it <= ring->eps_cap(); ++it) {
        s.comp = inv;
        std::vector<DiffPoly> next(n);
        for (int a = 0; a < n; ++a) next[a] = DiffPoly::u_var(ring, a, 0) - substitute(delta[a], s);
        if (next == inv) break;
        inv = std::move(next);
    }
    // verify expr(inv) = id
    s.comp = inv;
    for (int a = 0; a < n; ++a)
        if (!(substitute(m.expr[a], s) == DiffPoly::u_var(ring, a, 0)))
            throw std::domain_error("miura_invert: iteration did not converge");
    return inv;
}

MatDiffOp miura_op(const MatDiffOp &k, const MiuraMap &m, const Subst &inverse) {
    const auto ring = m.ring;
    const int n = k.n();
    // L matrix of the map and its adjoint
    std::vector<std::vector<ScalarDiffOp>> L(n), Ld(n);
    for (int a = 0; a < n; ++a) {
        L[a].reserve(n);
        Ld[a].reserve(n);
        for (int mu = 0; mu < n; ++mu) {
            ScalarDiffOp l = frechet_L(m.expr[a], mu, 0);
            Ld[a].push_back(l.adjoint());
            L[a].push_back(std::move(l));
        }
    }
    MatDiffOp out(inverse.target, n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            ScalarDiffOp acc(ring);
            for (int mu = 0; mu < n; ++mu)
                for (int nu = 0; nu < n; ++nu)
                    acc += compose(compose(L[a][mu], k.at(mu, nu)), Ld[b][nu]);
            for (auto &[s, c] : acc.coeffs()) out.at(a, b).add(s, substitute(c, inverse));
        }
    }
    return out;
}

MatDiffOp miura_op(const MatDiffOp &k, const MiuraMap &m) {
    Subst inv;
    inv.target = m.ring;
    inv.comp = miura_invert(m);
    return miura_op(k, m, inv);
}

Subst identity_subst(RingPtr ring) {
    Subst s;
    s.target = ring;
    for (int a = 0; a < ring->n(); ++a) s.comp.push_back(DiffPoly::u_var(ring, a, 0));
    for (int g = 0; g < int(ring->generators().size()); ++g)
        s.gen_image.push_back(DiffPoly::generator(ring, g));
    return s;
}

} // namespace drham

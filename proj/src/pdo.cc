#include "drham/pdo.hpp"

#include <sstream>

namespace drham {

PseudoDiffOp PseudoDiffOp::dx_power(RingPtr ring, int n) {
    PseudoDiffOp p(ring);
    p.add(n, DiffPoly::constant(p.ring_, Rat(1)));
    return p;
}

PseudoDiffOp PseudoDiffOp::from_op(const ScalarDiffOp &op) {
    PseudoDiffOp p(op.ring());
    for (auto &[s, c] : op.coeffs()) p.add(s, c);
    return p;
}

PseudoDiffOp PseudoDiffOp::dxn_mul(RingPtr ring, int n, const DiffPoly &a, int floor) {
    // dx^n o a = sum_{l>=0} binom(n,l) (dx^l a) dx^{n-l}
    PseudoDiffOp p(ring, floor);
    DiffPoly der = a;
    for (int l = 0; n - l >= floor; ++l) {
        if (l > 0) {
            der = der.dx();
            if (der.is_zero()) break;
        }
        Rat b = binom(n, l);
        if (b.is_zero()) break; // n >= 0 and l > n
        p.add(n - l, der.scaled(b));
    }
    return p;
}

DiffPoly PseudoDiffOp::coeff(int n) const {
    auto it = a_.find(n);
    return it == a_.end() ? DiffPoly::zero(ring_) : it->second;
}

void PseudoDiffOp::add(int n, const DiffPoly &c) {
    if (n < floor_ || c.is_zero()) return;
    auto it = a_.find(n);
    if (it == a_.end()) {
        a_.emplace(n, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) a_.erase(it);
    }
}

void PseudoDiffOp::set_floor(int f) {
    if (f < floor_) throw std::logic_error("PseudoDiffOp: cannot lower a certified floor");
    floor_ = f;
    for (auto it = a_.begin(); it != a_.end();)
        if (it->first < floor_)
            it = a_.erase(it);
        else
            ++it;
}

PseudoDiffOp PseudoDiffOp::operator-() const {
    PseudoDiffOp r(ring_, floor_);
    for (auto &[n, c] : a_) r.a_.emplace(n, -c);
    return r;
}

PseudoDiffOp &PseudoDiffOp::operator+=(const PseudoDiffOp &o) {
    if (!ring_) ring_ = o.ring_;
    if (o.floor_ > floor_) set_floor(o.floor_);
    for (auto &[n, c] : o.a_) add(n, c);
    return *this;
}

PseudoDiffOp &PseudoDiffOp::operator-=(const PseudoDiffOp &o) {
    if (!ring_) ring_ = o.ring_;
    if (o.floor_ > floor_) set_floor(o.floor_);
    for (auto &[n, c] : o.a_) add(n, -c);
    return *this;
}

PseudoDiffOp PseudoDiffOp::scaled(const Rat &c) const {
    PseudoDiffOp r(ring_, floor_);
    if (c.is_zero()) return r;
    for (auto &[n, a] : a_) r.a_.emplace(n, a.scaled(c));
    return r;
}

PseudoDiffOp compose(const PseudoDiffOp &A, const PseudoDiffOp &B, int work_floor) {
    // orders below fA + tB or fB + tA receive contributions from dropped
    // coefficients, so the result is certified only above both
    long fa = A.floor_, fb = B.floor_, ta = A.top(), tb = B.top();
    long cert = std::max(fa == PseudoDiffOp::kExact ? fa : fa + std::max(tb, 0L),
                         fb == PseudoDiffOp::kExact ? fb : fb + std::max(ta, 0L));
    int floor = int(std::max(cert, long(work_floor)));
    PseudoDiffOp r(A.ring_ ? A.ring_ : B.ring_, floor);
    const int top_a = int(ta);
    // iterated derivatives of the B coefficients, shared across the A terms
    for (auto &[n, bc] : B.a_) {
        std::vector<DiffPoly> der{bc};
        const int lmax = top_a + n - floor;
        for (int l = 1; l <= lmax; ++l) {
            if (der.back().is_zero()) break;
            der.push_back(der.back().dx());
        }
        for (auto &[k, ac] : A.a_) {
            for (int l = 0; k + n - l >= floor && l < int(der.size()); ++l) {
                if (der[l].is_zero()) break;
                Rat bin = binom(k, l);
                if (bin.is_zero() && k >= 0 && l > k) break;
                if (!bin.is_zero()) r.add(k + n - l, (ac * der[l]).scaled(bin));
            }
        }
    }
    return r;
}

PseudoDiffOp PseudoDiffOp::power(int k, int work_floor) const {
    // intermediate factors need extra depth: each remaining composition with a
    // positive-order factor raises the certified floor
    PseudoDiffOp r = *this;
    const int step = std::max(top(), 1);
    for (int i = 1; i < k; ++i) r = compose(r, *this, work_floor - (k - 1 - i) * step);
    return r;
}

ScalarDiffOp PseudoDiffOp::plus_part() const {
    if (floor_ > 0) throw std::domain_error("plus_part: floor above zero, nonneg part not certified");
    ScalarDiffOp op(ring_);
    for (auto &[n, c] : a_)
        if (n >= 0) op.add(n, c);
    return op;
}

DiffPoly PseudoDiffOp::residue() const {
    if (!certified(-1)) throw std::domain_error("residue: truncation too shallow");
    return coeff(-1);
}

std::string PseudoDiffOp::str() const {
    std::ostringstream os;
    for (auto it = a_.rbegin(); it != a_.rend(); ++it)
        os << "(" << it->second.str() << ")*dx^" << it->first << " ";
    os << "[floor " << floor_ << "]";
    return os.str();
}

PseudoDiffOp pdo_root(const PseudoDiffOp &L, int r, int depth) {
    const auto ring = L.ring();
    if (L.top() != r) throw std::invalid_argument("pdo_root: order mismatch");
    PseudoDiffOp R = PseudoDiffOp::dx_power(ring, 1);
    R.set_floor(R.floor()); // exact so far
    for (int k = 0; k <= depth; ++k) {
        // choose the dx^{-k} coefficient so that R^r matches L at order r-1-k
        int want = r - 1 - k;
        PseudoDiffOp P = R.power(r, want);
        DiffPoly target = L.coeff(want) - P.coeff(want);
        if (!target.is_zero()) {
            PseudoDiffOp corr(ring);
            corr.add(-k, target.scaled(Rat(1, r)));
            R += corr;
        }
    }
    PseudoDiffOp out(ring, -depth);
    for (auto &[n, c] : R.coeffs()) out.add(n, c);
    // re-powering check to the certified depth
    PseudoDiffOp back = out.power(r, r - 1 - depth);
    for (int n = back.floor(); n <= r; ++n)
        if (!(back.coeff(n) == L.coeff(n)))
            throw std::domain_error("pdo_root: re-powering check failed (depth too shallow?)");
    return out;
}

GDContext::GDContext(int r_, int m_trunc_) : r(r_), m_trunc(m_trunc_) {
    if (r < 2) throw std::invalid_argument("GDContext: r must be at least 2");
    // default depth r (a_max + 2) + alpha_max + 4 with a_max = 1; residue and
    // plus-part extraction hard-fail when this is ever too shallow
    if (m_trunc <= 0) m_trunc = r * 3 + (r - 1) + 4;
    ring = make_ring(2 * r - 1, 0);
    PseudoDiffOp L(ring);
    L.add(r, DiffPoly::constant(ring, Rat(1)));
    for (int i = 0; i <= r - 2; ++i) L.add(i, DiffPoly::u_var(ring, f_index(i), 0));
    lax = L;
}

DiffPoly GDContext::f_coeff(int i) const {
    if (i == r) return DiffPoly::constant(ring, Rat(1));
    if (i == r - 1 || i < 0 || i > r) return DiffPoly::zero(ring);
    return DiffPoly::u_var(ring, f_index(i), 0);
}

const PseudoDiffOp &GDContext::root_power(int k) const {
    if (root_powers.empty()) {
        PseudoDiffOp root = pdo_root(lax, r, m_trunc);
        root_powers.push_back(root);
        for (int i = 2; i <= r - 1; ++i)
            root_powers.push_back(compose(root_powers.back(), root, -m_trunc));
    }
    return root_powers.at(size_t(k) - 1);
}

PseudoDiffOp GDContext::fractional_power(int a, int alpha) const {
    PseudoDiffOp p = root_power(alpha);
    for (int i = 0; i < a; ++i) p = compose(lax, p, -m_trunc);
    return p;
}

} // namespace drham

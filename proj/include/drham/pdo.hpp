#ifndef DRHAM_PDO_HPP
#define DRHAM_PDO_HPP

#include "drham/operators.hpp"

namespace drham {

/// Laurent series in dx with differential polynomial coefficients, truncated
/// below at a certified floor: coefficients at orders < floor are unknown and
/// every operation tracks how far down the result stays exact.
class PseudoDiffOp {
  public:
    static constexpr int kExact = -1 << 20; // sentinel floor of exact values

    PseudoDiffOp() = default;
    explicit PseudoDiffOp(RingPtr ring, int floor = kExact) : ring_(std::move(ring)), floor_(floor) {}
    static PseudoDiffOp dx_power(RingPtr ring, int n);
    static PseudoDiffOp from_op(const ScalarDiffOp &op);
    /// dx^n o a (composition with a multiplication operator on the right).
    static PseudoDiffOp dxn_mul(RingPtr ring, int n, const DiffPoly &a, int floor);

    const RingPtr &ring() const { return ring_; }
    int floor() const { return floor_; }
    int top() const { return a_.empty() ? floor_ : a_.rbegin()->first; }
    const std::map<int, DiffPoly> &coeffs() const { return a_; }
    DiffPoly coeff(int n) const;
    bool certified(int n) const { return n >= floor_; }

    void add(int n, const DiffPoly &c);
    void set_floor(int f);

    PseudoDiffOp operator-() const;
    PseudoDiffOp &operator+=(const PseudoDiffOp &o);
    PseudoDiffOp &operator-=(const PseudoDiffOp &o);
    friend PseudoDiffOp operator+(PseudoDiffOp a, const PseudoDiffOp &b) { return a += b; }
    friend PseudoDiffOp operator-(PseudoDiffOp a, const PseudoDiffOp &b) { return a -= b; }
    PseudoDiffOp scaled(const Rat &c) const;

    /// Composition; `work_floor` caps the depth of the computed result.
    friend PseudoDiffOp compose(const PseudoDiffOp &A, const PseudoDiffOp &B, int work_floor);
    PseudoDiffOp power(int k, int work_floor) const;

    /// Nonnegative-order part as a finite operator (exact whenever floor <= 0).
    ScalarDiffOp plus_part() const;
    /// Coefficient at order -1; throws when not certified.
    DiffPoly residue() const;

    std::string str() const;

  private:
    RingPtr ring_;
    std::map<int, DiffPoly> a_;
    int floor_ = kExact;
};

/// The Lax operator dx^r + f_{r-2} dx^{r-2} + ... + f_0 together with the
/// working ring (components 0..r-2 are the f-variables; an auxiliary block of
/// r more components X_0..X_{r-1} is used for operator extraction) and the
/// truncation depth for root and residue work.
struct GDContext {
    int r = 2;
    int m_trunc = 0;
    RingPtr ring;                // 2r-1 components, eps cap 0
    PseudoDiffOp lax;            // exact
    mutable std::vector<PseudoDiffOp> root_powers; // L^{k/r} for k = 1..r-1

    explicit GDContext(int r, int m_trunc = 0);
    int f_index(int i) const { return i; }          // f_i, 0 <= i <= r-2
    int x_index(int j) const { return r - 1 + j; }  // X_j, 0 <= j <= r-1
    DiffPoly f_coeff(int i) const;                  // f_i with f_r = 1, f_{r-1} = 0

    /// L^{k/r} certified down to -m_trunc (cached).
    const PseudoDiffOp &root_power(int k) const;
    /// L^{a + alpha/r} for a >= 0, 1 <= alpha <= r-1.
    PseudoDiffOp fractional_power(int a, int alpha) const;
};

/// r-th root of a monic order-r operator, solved coefficient by coefficient
/// and certified down to -depth.
PseudoDiffOp pdo_root(const PseudoDiffOp &L, int r, int depth);

} // namespace drham

#endif

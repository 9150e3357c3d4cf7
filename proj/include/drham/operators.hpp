#ifndef DRHAM_OPERATORS_HPP
#define DRHAM_OPERATORS_HPP

#include "drham/diffpoly.hpp"

#include <map>
#include <vector>

namespace drham {

/// Finite-order differential operator sum_s a_s dx^s with differential
/// polynomial coefficients (theta degree 0).
class ScalarDiffOp {
  public:
    ScalarDiffOp() = default;
    explicit ScalarDiffOp(RingPtr ring) : ring_(std::move(ring)) {}
    static ScalarDiffOp zero(RingPtr ring) { return ScalarDiffOp(std::move(ring)); }
    static ScalarDiffOp identity(RingPtr ring);
    static ScalarDiffOp dx(RingPtr ring, int order = 1);
    static ScalarDiffOp mul_by(const DiffPoly &a); // multiplication operator

    const RingPtr &ring() const { return ring_; }
    const std::map<int, DiffPoly> &coeffs() const { return a_; }
    bool is_zero() const { return a_.empty(); }
    int order() const { return a_.empty() ? -1 : a_.rbegin()->first; }

    void add(int s, const DiffPoly &c);
    DiffPoly coeff(int s) const;

    ScalarDiffOp operator-() const;
    ScalarDiffOp &operator+=(const ScalarDiffOp &o);
    ScalarDiffOp &operator-=(const ScalarDiffOp &o);
    friend ScalarDiffOp operator+(ScalarDiffOp a, const ScalarDiffOp &b) { return a += b; }
    friend ScalarDiffOp operator-(ScalarDiffOp a, const ScalarDiffOp &b) { return a -= b; }
    friend bool operator==(const ScalarDiffOp &a, const ScalarDiffOp &b) { return a.a_ == b.a_; }

    ScalarDiffOp scaled(const Rat &c) const;
    ScalarDiffOp left_mul(const DiffPoly &c) const; // c * A (coefficient product)

    /// Operator composition using dx^k o a = sum binom(k,l) (dx^l a) dx^{k-l}.
    friend ScalarDiffOp compose(const ScalarDiffOp &a, const ScalarDiffOp &b);
    /// Formal adjoint sum (-dx)^s o a_s.
    ScalarDiffOp adjoint() const;
    DiffPoly apply(const DiffPoly &v) const;

    /// eps^k coefficient of every entry, eps stripped.
    ScalarDiffOp eps_coefficient(int k) const;
    ScalarDiffOp in_ring(RingPtr target) const;
    int max_eps() const;

    std::string str() const;

  private:
    RingPtr ring_;
    std::map<int, DiffPoly> a_;
};

/// N x N matrix of scalar differential operators.
class MatDiffOp {
  public:
    MatDiffOp() = default;
    MatDiffOp(RingPtr ring, int n);
    static MatDiffOp zero(RingPtr ring) { return MatDiffOp(ring, ring->n()); }

    const RingPtr &ring() const { return ring_; }
    int n() const { return int(e_.size()); }
    ScalarDiffOp &at(int a, int b) { return e_[a][b]; }
    const ScalarDiffOp &at(int a, int b) const { return e_[a][b]; }

    MatDiffOp operator-() const;
    MatDiffOp &operator+=(const MatDiffOp &o);
    MatDiffOp &operator-=(const MatDiffOp &o);
    friend MatDiffOp operator+(MatDiffOp a, const MatDiffOp &b) { return a += b; }
    friend MatDiffOp operator-(MatDiffOp a, const MatDiffOp &b) { return a -= b; }
    friend bool operator==(const MatDiffOp &a, const MatDiffOp &b) { return a.e_ == b.e_; }

    MatDiffOp scaled(const Rat &c) const;
    /// Right composition with a constant diagonal matrix.
    MatDiffOp right_diag(const std::vector<Rat> &d) const;
    MatDiffOp left_diag(const std::vector<Rat> &d) const;

    friend MatDiffOp compose(const MatDiffOp &a, const MatDiffOp &b);
    MatDiffOp adjoint() const;
    bool is_skew() const;
    std::vector<DiffPoly> apply(const std::vector<DiffPoly> &v) const;

    MatDiffOp eps_coefficient(int k) const;
    MatDiffOp in_ring(RingPtr target) const;
    int max_eps() const;

    std::string str() const;

  private:
    RingPtr ring_;
    std::vector<std::vector<ScalarDiffOp>> e_;
};

/// Constant-coefficient matrix lifted to an order-0 operator matrix.
MatDiffOp const_matrix_op(RingPtr ring, const std::vector<std::vector<Rat>> &m);
/// eta^{-1} dx for a constant symmetric invertible matrix eta.
MatDiffOp k1_operator(RingPtr ring, const std::vector<std::vector<Rat>> &eta_inv);

std::vector<std::vector<Rat>> invert_matrix(const std::vector<std::vector<Rat>> &m);

/// Change of dependent variables u -> utilde = expr(u, eps). The expressions
/// live in the same ring; `gen_image` optionally overrides how each generator
/// transports under the inverse substitution.
struct MiuraMap {
    RingPtr ring;
    std::vector<DiffPoly> expr;
    bool close_to_identity() const;
};

/// Inverse of a close-to-identity map, solved order by order in eps.
/// Resulting expressions satisfy expr(inv(u)) = u up to the eps cap.
std::vector<DiffPoly> miura_invert(const MiuraMap &m);

/// Transported operator L(expr) o K o L(expr)^dagger with coefficients
/// re-expressed in the new variables via the supplied inverse substitution.
MatDiffOp miura_op(const MatDiffOp &k, const MiuraMap &m, const Subst &inverse);
/// Convenience overload for generator-free close-to-identity maps.
MatDiffOp miura_op(const MatDiffOp &k, const MiuraMap &m);

Subst identity_subst(RingPtr ring);

} // namespace drham

#endif

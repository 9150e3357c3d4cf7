#ifndef DRHAM_DIFFPOLY_HPP
#define DRHAM_DIFFPOLY_HPP

#include "drham/ring.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace drham {

/// Element of the extended ring of differential polynomials: exact sparse
/// map from monomials to rational coefficients. Values are immutable in
/// spirit: every operation returns a fresh value, so sharing across threads
/// is safe.
class DiffPoly {
  public:
    DiffPoly() = default;
    explicit DiffPoly(RingPtr ring) : ring_(std::move(ring)) {}

    static DiffPoly zero(RingPtr ring) { return DiffPoly(std::move(ring)); }
    static DiffPoly constant(RingPtr ring, const Rat &c);
    /// u^alpha_jet (alpha 0-based).
    static DiffPoly u_var(RingPtr ring, int alpha, int jet);
    /// theta_{alpha,k}.
    static DiffPoly theta_var(RingPtr ring, int alpha, int k);
    static DiffPoly eps_pow(RingPtr ring, int k);
    static DiffPoly generator(RingPtr ring, int g, int power = 1);
    static DiffPoly from_terms(RingPtr ring, std::vector<std::pair<Mono, Rat>> terms);

    const RingPtr &ring() const { return ring_; }
    const std::map<Mono, Rat> &terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t size() const { return t_.size(); }

    /// Adds c * m, respecting the eps cap and dropping zeros.
    void add_term(const Mono &m, const Rat &c);

    DiffPoly operator-() const;
    DiffPoly &operator+=(const DiffPoly &o);
    DiffPoly &operator-=(const DiffPoly &o);
    friend DiffPoly operator+(DiffPoly a, const DiffPoly &b) { return a += b; }
    friend DiffPoly operator-(DiffPoly a, const DiffPoly &b) { return a -= b; }
    friend DiffPoly operator*(const DiffPoly &a, const DiffPoly &b);
    DiffPoly &operator*=(const DiffPoly &o) { return *this = *this * o; }
    DiffPoly scaled(const Rat &c) const;
    friend bool operator==(const DiffPoly &a, const DiffPoly &b) { return a.t_ == b.t_; }

    /// Total x-derivative (Leibniz over jets, thetas, and generators).
    DiffPoly dx() const;
    DiffPoly dx_pow(int k) const;

    /// Partial derivative w.r.t. u^alpha_jet; at jet 0 this includes the
    /// chain rule through generator derivation tables.
    DiffPoly partial_u(int alpha, int jet) const;
    /// Left partial derivative w.r.t. theta_{alpha,k} (Koszul sign).
    DiffPoly partial_theta(int alpha, int k) const;
    /// eps d/d eps: multiplies each term by its eps exponent.
    DiffPoly eps_euler() const;

    int theta_degree_max() const;
    bool theta_homogeneous(int deg) const;
    std::optional<long> standard_degree() const; // set iff homogeneous (or zero)
    /// Per-term (standard degree, theta degree) pairs.
    std::vector<std::pair<long, int>> gradations() const;
    int max_eps() const;
    int max_jet() const;
    long max_u_degree() const;

    /// Coefficient of eps^k, with the eps factor stripped.
    DiffPoly eps_coefficient(int k) const;
    /// Part of standard degree d (on eps-free content this is the jet count).
    DiffPoly standard_degree_part(long d) const;
    DiffPoly multiplied_by_eps(int k) const;
    /// Drops terms of u-degree above the bound.
    DiffPoly truncate_u_degree(long bound) const;
    /// Variable-free part (the coefficient ring content), as terms in eps only.
    DiffPoly constant_part() const;
    DiffPoly without_constant_part() const;
    /// Value at u = theta = 0 with generators at their origin values; the
    /// result lives in eps only.
    DiffPoly eval_origin() const;

    /// Re-interprets this value in another ring with the same component and
    /// generator layout (used to change the eps cap). Terms above the new cap
    /// are dropped.
    DiffPoly in_ring(RingPtr target) const;

    /// exp of a value with strictly positive minimal eps order (so the series
    /// terminates under truncation).
    DiffPoly exp_truncated() const;

    /// Antiderivative in the jet-order-0 variable u^alpha. Input may involve
    /// u^*_0 variables and generators only; solves exactly through
    /// generator-exponential factors.
    DiffPoly integrate_u(int alpha) const;

    std::string str() const;

  private:
    RingPtr ring_;
    std::map<Mono, Rat> t_;
};

/// Substitution data: per component an expression for the image of u^alpha,
/// and per generator an expression for its image. All expressions live in
/// the target ring. Jet variables are mapped through powers of dx.
struct Subst {
    RingPtr target;
    std::vector<DiffPoly> comp;      // size = source ring n()
    std::vector<DiffPoly> gen_image; // size = source ring generator count
};

DiffPoly substitute(const DiffPoly &p, const Subst &s);

/// First-order scaling derivation sum_{alpha,n} c_alpha u^alpha_n d/du^alpha_n
/// + sum_alpha s^alpha d/du^alpha_0 + w * eps d/deps, with per-component
/// weights c_alpha independent of n. Covers the Euler-type operators used here.
DiffPoly scaling_derivation(const DiffPoly &p, const std::vector<Rat> &c,
                            const std::vector<Rat> &shift, const Rat &eps_weight);

/// Dilation operator sum (n+1) u^alpha_n d/du^alpha_n.
DiffPoly dilation_D(const DiffPoly &p);

} // namespace drham

#endif

#ifndef DRHAM_GD_HPP
#define DRHAM_GD_HPP

#include "drham/drk2.hpp"
#include "drham/pdo.hpp"

#include <map>

namespace drham {

/// Element a + b*s of the quadratic extension Q(s), s^2 = s_sq (a non-square
/// rational; here always -r). Used only inside this module: the normalising
/// constants of the w-coordinates involve half-integer powers of -r.
struct ExtScalar {
    Rat re, im;
    static thread_local Rat s_sq; // set per thread by the active GD pipeline

    ExtScalar() : re(0), im(0) {}
    ExtScalar(Rat a) : re(std::move(a)), im(0) {}
    ExtScalar(Rat a, Rat b) : re(std::move(a)), im(std::move(b)) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_rational() const { return im.is_zero(); }

    friend ExtScalar operator+(const ExtScalar &a, const ExtScalar &b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ExtScalar operator-(const ExtScalar &a, const ExtScalar &b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ExtScalar operator*(const ExtScalar &a, const ExtScalar &b) {
        return {a.re * b.re + a.im * b.im * s_sq, a.re * b.im + a.im * b.re};
    }
    ExtScalar inv() const {
        Rat n = re * re - im * im * s_sq;
        if (n.is_zero()) throw std::domain_error("ExtScalar: not invertible");
        return {re / n, -im / n};
    }
    /// s^k for k >= 0.
    static ExtScalar s_power(long k) {
        Rat even = s_sq.pow(k / 2);
        if (k % 2 == 0) return {even, Rat(0)};
        return {Rat(0), even};
    }
};

/// Pair re + s*im of differential polynomials.
struct ExtPoly {
    DiffPoly re, im;
    ExtPoly() = default;
    explicit ExtPoly(DiffPoly r) : re(std::move(r)) { im = DiffPoly(re.ring()); }
    ExtPoly(DiffPoly r, DiffPoly i) : re(std::move(r)), im(std::move(i)) {}
    bool is_rational() const { return im.is_zero(); }
    friend ExtPoly operator+(const ExtPoly &a, const ExtPoly &b) { return {a.re + b.re, a.im + b.im}; }
    friend ExtPoly operator-(const ExtPoly &a, const ExtPoly &b) { return {a.re - b.re, a.im - b.im}; }
    friend ExtPoly operator*(const ExtPoly &a, const ExtPoly &b) {
        return {a.re * b.re + (a.im * b.im).scaled(ExtScalar::s_sq), a.re * b.im + a.im * b.re};
    }
    ExtPoly scaled(const ExtScalar &c) const {
        return {re.scaled(c.re) + im.scaled(c.im * ExtScalar::s_sq), re.scaled(c.im) + im.scaled(c.re)};
    }
    DiffPoly rational_part() const {
        if (!im.is_zero()) throw std::domain_error("ExtPoly: value is not rational");
        return re;
    }
};

/// Matrix operator with extension coefficients.
struct ExtMatOp {
    MatDiffOp re, im;
    ExtMatOp() = default;
    explicit ExtMatOp(MatDiffOp r) : re(r), im(MatDiffOp(r.ring(), r.n())) {}
    ExtMatOp(MatDiffOp r, MatDiffOp i) : re(std::move(r)), im(std::move(i)) {}
    ExtMatOp scaled(const ExtScalar &c) const {
        return {re.scaled(c.re) + im.scaled(c.im * ExtScalar::s_sq), re.scaled(c.im) + im.scaled(c.re)};
    }
    friend ExtMatOp compose(const ExtMatOp &a, const ExtMatOp &b) {
        return {compose(a.re, b.re) + compose(a.im, b.im).scaled(ExtScalar::s_sq),
                compose(a.re, b.im) + compose(a.im, b.re)};
    }
    ExtMatOp adjoint() const { return {re.adjoint(), im.adjoint()}; }
    MatDiffOp rational_part() const;
};

/// First GD operator from [X, L]_+, as an (r-1) x (r-1) matrix over the f-ring.
MatDiffOp gd_k1(const GDContext &ctx);
/// Second GD operator from (L X~)_+ L - L (X~ L)_+ with the residue correction.
MatDiffOp gd_k2(const GDContext &ctx);

/// -r/((a+1)r + alpha) * int res L^{a+1+alpha/r} dx.
LocalFunctional gd_hamiltonian(const GDContext &ctx, int alpha, int a);

/// Everything of the normalised r-spin picture in the w-coordinates.
struct RSpinPackage {
    int r = 0;
    RingPtr wring;                          // r-1 components, eps cap 0
    MatDiffOp k1, k2;                       // rational in the w-variables
    std::map<std::pair<int, int>, ExtPoly> hams; // (alpha 1-based, d) -> density
    std::vector<ExtPoly> w_of_f;            // Miura expressions in the f-ring
    std::vector<ExtPoly> f_of_w;            // inverse, in the w-ring
};

RSpinPackage rspin_package(int r, int d_max = 1);

/// Checks {., h_{a,d}}_{K2} = ((a + (d+1) r)/r) {., h_{a,d+1}}_{K1} on the
/// package table for every pair of consecutive levels present.
std::vector<std::pair<std::pair<int, int>, bool>> dz_recursion_check(const RSpinPackage &p);

/// Embeds a graded eps-free polynomial via eps^(standard degree).
DiffPoly embed_eps(const DiffPoly &p, const RingPtr &target);
/// Embeds a degree-1 operator: a term a dx^s with deg a = j maps to
/// eps^{s+j-1} a dx^s. Requires a vanishing degree-zero part.
MatDiffOp embed_eps_op(const MatDiffOp &k, const RingPtr &target);

/// The close-to-identity maps joining the DR and r-spin coordinates.
MiuraMap dr_to_w_miura(int r, const RingPtr &ring);
/// build_K2 output pushed through the map (identity for r = 3).
MatDiffOp miura_to_dr(int r, const MatDiffOp &k_from_gbar);

/// Solves (D - 2) g = g11 modulo total derivatives by inverting the dilation
/// weight on each slice; the weight-2 slice must be a total derivative on its
/// own. The result carries no weight-2 terms.
DiffPoly invert_dilation_minus_two(const DiffPoly &g11);

} // namespace drham

#endif

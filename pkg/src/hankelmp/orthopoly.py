"""Orthogonal polynomials of a moment window, built determinantally.

p_0 = 1 and, for n >= 1, p_n is the determinant whose top rows are the moment
rows (s_i, ..., s_{i+n}) for i < n and whose bottom row is (1, x, ..., x^n).
Expanding along the bottom row makes each coefficient a single exact numeric
minor, so no symbolic determinant machinery is needed.  The leading
coefficient of p_n is the Hankel determinant D_{n-1}.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateNormalization, OutOfWindow
from .exact import RationalPoly
from .hankel import MomentWindow, _as_window, det_exact, hankel_matrix

__all__ = [
    "MomentForm",
    "moment_inner_product",
    "monic_orthogonal_poly",
    "orthogonal_poly",
]


@dataclass(frozen=True)
class MomentForm:
    """The bilinear form <x^j, x^k> = s_{j+k} induced by a moment window."""

    window: MomentWindow

    @property
    def max_degree(self) -> int:
        """Largest n with <x^j, x^k> defined for all j, k <= n."""
        return self.window.horizon


def moment_inner_product(p: RationalPoly, q: RationalPoly, form) -> Fraction:
    """<p, q> = sum over j, k of p_j q_k s_{j+k}, computed exactly.

    ``form`` may be a ``MomentForm`` or anything accepted as a moment window.
    Raises ``OutOfWindow`` when deg p + deg q exceeds the stored moments.
    """
    w = form.window if isinstance(form, MomentForm) else _as_window(form)
    if p.is_zero or q.is_zero:
        return Fraction(0)
    product = p * q
    if product.degree > w.m:
        raise OutOfWindow(
            f"inner product needs s_{product.degree} but the window ends at s_{w.m}"
        )
    return sum((c * w[t] for t, c in enumerate(product.coeffs)), Fraction(0))


def orthogonal_poly(w, n: int) -> RationalPoly:
    """The determinantal orthogonal polynomial p_n; needs s_0..s_{2n-1}."""
    if n < 0:
        raise ValueError("polynomial index must be nonnegative")
    w = _as_window(w)
    if n == 0:
        return RationalPoly([1])
    if 2 * n - 1 > w.m:
        raise OutOfWindow(f"p_{n} needs s_0..s_{2*n - 1} but the window ends at s_{w.m}")
    top = [[w[i + t] for t in range(n + 1)] for i in range(n)]
    coeffs = []
    for j in range(n + 1):
        minor = det_exact([row[:j] + row[j + 1 :] for row in top])
        coeffs.append(minor if (n + j) % 2 == 0 else -minor)
    return RationalPoly(coeffs)


def monic_orthogonal_poly(w, n: int) -> RationalPoly:
    """p_n divided by D_{n-1} (with D_{-1} = 1), so the leading coefficient is 1.

    Raises ``DegenerateNormalization`` when D_{n-1} = 0, which happens exactly
    when n exceeds the degenerate index of the window.
    """
    w = _as_window(w)
    p = orthogonal_poly(w, n)
    if n == 0:
        return p
    d = det_exact(hankel_matrix(w, n - 1))
    if d == 0:
        raise DegenerateNormalization(f"cannot normalize p_{n}: D_{n - 1} = 0")
    return RationalPoly([c / d for c in p.coeffs])

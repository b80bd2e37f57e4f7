"""Continued-fraction expansion and convergents.

Expansion runs on the exact rational value of a resolved beta (a dyadic
128-bit fraction unless the input was itself rational), so all
convergents are exact.  For irrational inputs the expansion is only
trusted while the denominators stay well below the resolution of the
dyadic approximation; past that the result is flagged truncated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .betaspec import BetaValue, resolve_beta

MAX_DEPTH = 200


@dataclass
class ContinuedFraction:
    quotients: list[int]
    convergents: list[tuple[int, int]]  # (p_k, q_k)
    exact: bool  # expansion terminated at the true value
    truncated: bool  # stopped at the precision floor or depth limit
    value: Fraction = field(repr=False, default=Fraction(0))

    def check_determinant(self) -> bool:
        """p_k q_{k-1} - p_{k-1} q_k = (-1)^(k-1) for every k >= 1."""
        c = self.convergents
        return all(
            c[k][0] * c[k - 1][1] - c[k - 1][0] * c[k][1] == (-1) ** (k - 1)
            for k in range(1, len(c))
        )


def cf_expand(beta, depth: int = MAX_DEPTH) -> ContinuedFraction:
    """Expand beta as [a0; a1, a2, ...] with convergents.

    beta may be a BetaValue, a beta spec string, or a Fraction.
    """
    if not 1 <= depth <= MAX_DEPTH:
        raise ValueError(f"depth must be in [1, {MAX_DEPTH}]")
    if isinstance(beta, Fraction):
        x = beta
        input_exact = True
        prec = None
    else:
        bv = beta if isinstance(beta, BetaValue) else resolve_beta(beta)
        if bv.exact_rational is not None:
            x = bv.exact_rational
            input_exact = True
            prec = None
        else:
            x = bv.fraction
            input_exact = False
            prec = bv.precision

    # denominators beyond sqrt of the resolution only expand rounding noise
    q_floor = None if input_exact else 1 << (prec // 2)

    quotients: list[int] = []
    convergents: list[tuple[int, int]] = []
    p_prev, q_prev = 0, 1  # (p_{-2}, q_{-2})
    p, q = 1, 0  # (p_{-1}, q_{-1})
    num, den = x.numerator, x.denominator
    a0 = num // den
    truncated = False
    exact = False
    a = a0
    while True:
        quotients.append(a)
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        convergents.append((p, q))
        num, den = den, num - a * den
        if den == 0:
            exact = input_exact
            truncated = not input_exact
            break
        if len(quotients) >= depth:
            truncated = True
            break
        if q_floor is not None and q > q_floor:
            truncated = True
            break
        a = num // den
    return ContinuedFraction(
        quotients=quotients,
        convergents=convergents,
        exact=exact,
        truncated=truncated,
        value=x,
    )

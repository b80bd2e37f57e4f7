"""Approximation functions psi(q) and moving-target families.

A target family supplies gamma_{a,q} = gamma_q + eps_{a,q} where eps is
q-periodic in a and certified by |eps_{a,q}| <= C0 * psi(q).  Only a
closed-form registry is allowed (constant / table gamma; zero / cosine
eps) so the certificate and periodicity can be checked rather than
trusted.

Float evaluation here mirrors the kernel code (same expressions, same
order) so Python-side checks agree bit for bit with the scans.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

_Q48 = 2.0**48
_IQ48 = 2.0**-48

_PSI_KINDS = {"power": 0, "log": 1, "table": 2}
_EPS_KINDS = {"zero": 0, "cosine": 1, "cosine_q48": 2}
_GAMMA_KINDS = {"constant": 0, "table": 1}


@dataclass(frozen=True)
class ApproxFunction:
    """psi(q): power c/q^mu, log c/(q log(q+1)^sigma), or a table."""

    kind: str
    c: float = 0.0
    exponent: float = 1.0
    values: tuple = ()  # table: values[q-1] is psi(q)

    def __post_init__(self):
        if self.kind not in _PSI_KINDS:
            raise ValueError(f"unknown psi family {self.kind!r}")
        if self.kind == "table":
            vals = tuple(float(v) for v in self.values)
            if not vals or any(v <= 0 for v in vals):
                raise ValueError("table values must be positive")
            if any(vals[i + 1] > vals[i] for i in range(len(vals) - 1)):
                raise ValueError("table values must be nonincreasing")
            object.__setattr__(self, "values", vals)
        elif self.c <= 0:
            raise ValueError("c must be positive")

    @classmethod
    def power(cls, c, mu=1.0):
        return cls(kind="power", c=float(c), exponent=float(mu))

    @classmethod
    def log(cls, c, sigma=1.0):
        return cls(kind="log", c=float(c), exponent=float(sigma))

    @classmethod
    def table(cls, values):
        return cls(kind="table", values=tuple(values))

    def value(self, q: int) -> float:
        if self.kind == "power":
            return self.c / (q**self.exponent)
        if self.kind == "log":
            return self.c / (q * (math.log(q + 1.0) ** self.exponent))
        if q - 1 >= len(self.values):
            raise ValueError(f"psi table has no entry for q={q}")
        return self.values[q - 1]

    def exact(self, q: int) -> Fraction:
        """The evaluated double as an exact rational."""
        return Fraction(self.value(q))

    def table_array(self, q_max: int):
        """Dense values indexed by q (entry 0 unused), for the kernels."""
        arr = np.zeros(q_max + 1, dtype=np.float64)
        for q in range(1, q_max + 1):
            arr[q] = self.value(q)
        return arr

    def kernel_args(self, q_max: int | None = None):
        kind = _PSI_KINDS[self.kind]
        if kind == 2:
            return kind, 0.0, 0.0, self.table_array(q_max)
        return kind, self.c, self.exponent, None


@dataclass(frozen=True)
class TargetFamily:
    """gamma_{a,q} = gamma_q + eps_{a,q} with a C0 certificate."""

    gamma_kind: str = "constant"
    gamma_x: float = 0.0
    gamma_values: tuple = ()  # table: gamma_values[q] for q >= 1 (index 0 unused)
    eps_kind: str = "zero"
    eps_B: float = 0.0
    c0: float = 0.0

    def __post_init__(self):
        if self.gamma_kind not in _GAMMA_KINDS:
            raise ValueError(f"unknown gamma form {self.gamma_kind!r}")
        if self.eps_kind not in _EPS_KINDS:
            raise ValueError(f"unknown eps form {self.eps_kind!r}")
        if self.c0 < 0:
            raise ValueError("C0 must be nonnegative")
        if self.gamma_kind == "table":
            object.__setattr__(
                self, "gamma_values", tuple(float(v) for v in self.gamma_values)
            )

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def constant(cls, x):
        return cls(gamma_kind="constant", gamma_x=float(x))

    def gamma(self, q: int) -> float:
        if self.gamma_kind == "constant":
            return self.gamma_x
        if q >= len(self.gamma_values):
            raise ValueError(f"gamma table has no entry for q={q}")
        return self.gamma_values[q]

    def eps(self, a: int, q: int) -> float:
        # mirrors the kernel evaluation exactly; a is reduced first, so
        # q-periodicity holds bit for bit, not just mathematically
        if self.eps_kind == "zero":
            return 0.0
        e = -(self.eps_B / q) * math.cos(4.0 * math.pi * (a % q) / q)
        if self.eps_kind == "cosine_q48":
            e = math.floor(e * _Q48 + 0.5) * _IQ48
        return e

    def gamma_aq(self, a: int, q: int) -> float:
        return self.gamma(q) + self.eps(a, q)

    def check_periodicity(self, q: int, n_samples: int = 16) -> bool:
        """eps_{a+q,q} == eps_{a,q} on sampled a (exact for the registry)."""
        step = max(1, q // n_samples)
        return all(
            self.eps(a, q) == self.eps(a + q, q) for a in range(0, q, step)
        )

    def check_c0(self, psi: ApproxFunction, q: int, rel_slack: float = 1e-12) -> bool:
        """|eps_{a,q}| <= C0 psi(q) over all a in [0,q) (with float slack)."""
        if self.eps_kind == "zero":
            return True
        # |cos| <= 1, so |eps| <= |B|/q (+ half a quantization step)
        bound = abs(self.eps_B) / q
        if self.eps_kind == "cosine_q48":
            bound += 0.5 * _IQ48
        return bound <= self.c0 * psi.value(q) * (1.0 + rel_slack)

    def kernel_args(self, q_max: int | None = None):
        gk = _GAMMA_KINDS[self.gamma_kind]
        ek = _EPS_KINDS[self.eps_kind]
        gtable = None
        if gk == 1:
            arr = np.zeros(q_max + 1, dtype=np.float64)
            n = min(len(self.gamma_values), q_max + 1)
            arr[:n] = self.gamma_values[:n]
            if len(self.gamma_values) <= q_max:
                raise ValueError(f"gamma table has no entry for q={q_max}")
            return gk, 0.0, arr, ek, self.eps_B, self.c0
        return gk, self.gamma_x, gtable, ek, self.eps_B, self.c0


def lemma_key_family(x: float, B: float, c: float):
    """The cosine-perturbed family: psi = c/q, gamma_q = x,
    eps_{a,q} = -(B/q) cos(4 pi a / q), C0 = |B|/c."""
    if c <= 0:
        raise ValueError("c must be positive")
    psi = ApproxFunction.power(c, 1.0)
    fam = TargetFamily(
        gamma_kind="constant",
        gamma_x=float(x),
        eps_kind="zero" if B == 0 else "cosine",
        eps_B=float(B),
        c0=abs(float(B)) / float(c),
    )
    return psi, fam

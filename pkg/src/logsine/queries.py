"""Query records identifying individual integrals.

Angles are rational multiples of pi: a query with ``q`` stands for the
integral up to sigma = q*pi.  Log-sinh queries carry either a concrete
positive t, the literal "2*log(rho)" for the golden-mean point, or None
for a formal t.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class LsQuery:
    n: int
    k: int
    q: Fraction

    def __post_init__(self):
        if self.n < 1 or not 0 <= self.k <= self.n - 1:
            raise ValueError(f"invalid log-sine order (n={self.n}, k={self.k})")
        object.__setattr__(self, "q", Fraction(self.q))


@dataclass(frozen=True)
class LshQuery:
    n: int
    k: int
    t: object = None  # None (formal), "2*log(rho)", or a number

    def __post_init__(self):
        if self.n < 1 or not 0 <= self.k <= self.n - 1:
            raise ValueError(f"invalid log-sinh order (n={self.n}, k={self.k})")


@dataclass(frozen=True)
class LscQuery:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("log-sine-cosine indices must be >= 1")

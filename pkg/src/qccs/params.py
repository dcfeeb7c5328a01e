"""Global parameter bundle (p, m, n, lambda) and its validity rules.

All constructions in this package work over the grid {0, ..., p-1}^m for an
odd prime p, produce phases in Z_lambda with p dividing lambda, and restrict
n of the m variables, 0 <= n <= m - 1.  Params packages those four integers
and rejects anything outside that envelope at construction time, so the rest
of the code never re-checks them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParameterError


def is_odd_prime(p: int) -> bool:
    """True when p is a prime other than 2 (trial division; p stays small)."""
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Params:
    """Validated (p, m, n, lam) tuple.

    Invariants enforced here: p is an odd prime, m >= 1, 0 <= n <= m - 1,
    and p divides lam.  The sequence length is always L = p**m and the
    per-restriction support size p**(m - n).
    """

    p: int
    m: int
    n: int
    lam: int

    def __post_init__(self) -> None:
        for name in ("p", "m", "n", "lam"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise ParameterError(f"{name} must be an int, got {value!r}")
        if self.p == 2:
            raise ParameterError("p = 2 is outside this construction's scope; p must be an odd prime")
        if not is_odd_prime(self.p):
            raise ParameterError(f"p must be an odd prime, got {self.p}")
        if self.m < 1:
            raise ParameterError(f"m must be >= 1, got {self.m}")
        if not 0 <= self.n <= self.m - 1:
            raise ParameterError(f"n must satisfy 0 <= n <= m-1, got n={self.n} with m={self.m}")
        if self.lam < self.p or self.lam % self.p != 0:
            raise ParameterError(f"lambda must be a positive multiple of p, got {self.lam}")

    @property
    def length(self) -> int:
        """Sequence length L = p**m."""
        return self.p**self.m

    @property
    def weight(self) -> int:
        """The phase step lambda/p carried by every path edge."""
        return self.lam // self.p

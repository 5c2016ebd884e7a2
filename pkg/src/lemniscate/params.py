"""Physical parameters of a point-charge / lemniscate ensemble."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class EnsembleParams:
    """Parameters of the weight |z|^{2c} exp(-N V(z)) with V(z) = |z^d - a|^2 / d.

    ``a``     location parameter of the Gaussian well (a >= 0),
    ``c``     point-charge strength (c > -1),
    ``N``     weight scale / nominal particle number,
    ``d``     fold symmetry (1 for the plain Gaussian family),
    ``tau``   elliptic parameter in [0, 1), only used by the elliptic family,
    ``S_crit`` scaled edge parameter; when set, a must equal 1 + S/(2 sqrt(N)).
    """

    a: float = 0.0
    c: float = 0.0
    N: int = 1
    d: int = 1
    tau: float | None = None
    S_crit: float | None = None

    def __post_init__(self):
        if self.c <= -1.0:
            raise ValueError(f"point charge must satisfy c > -1, got c={self.c}")
        if self.N < 1:
            raise ValueError(f"N must be a positive integer, got {self.N}")
        if self.d < 1:
            raise ValueError(f"d must be a positive integer, got {self.d}")
        if self.a < 0.0:
            raise ValueError(f"a must be >= 0, got {self.a}")
        if self.tau is not None and not (0.0 <= self.tau < 1.0):
            raise ValueError(f"tau must lie in [0, 1), got {self.tau}")
        if self.S_crit is not None:
            a_expected = 1.0 + self.S_crit / (2.0 * math.sqrt(self.N))
            if abs(self.a - a_expected) > 1e-14 * max(1.0, abs(a_expected)):
                raise ValueError(
                    f"a={self.a} inconsistent with S={self.S_crit}: "
                    f"expected a = 1 + S/(2 sqrt(N)) = {a_expected}"
                )

    @classmethod
    def at_criticality(cls, S: float, N: int, c: float = 0.0, d: int = 1) -> "EnsembleParams":
        """Parameters with a pinned to the critical window a = 1 + S/(2 sqrt(N))."""
        a = 1.0 + S / (2.0 * math.sqrt(N))
        return cls(a=a, c=c, N=N, d=d, S_crit=S)

    def to_dict(self) -> dict:
        out = {"a": self.a, "c": self.c, "N": self.N, "d": self.d}
        if self.tau is not None:
            out["tau"] = self.tau
        if self.S_crit is not None:
            out["S_crit"] = self.S_crit
        return out

"""Root-of-unity context and branch management.

Everything in this library happens at a fixed primitive N-th root of unity
omega = exp(2i*pi/N) with N = 2P + 1 odd.  The square root of omega is fixed
once and for all as the modular power

    omega^{1/2} := omega^{P+1} = -exp(i*pi/N),

and every fractional power omega^{num/2^k} is resolved through modular
arithmetic in the exponent, never through complex logarithms.  N-th roots of
general complex numbers are taken on the principal branch (argument in
(-pi/N, pi/N]) and shifted by explicit integer branch indices.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass


class DomainError(ValueError):
    """Input violates a mathematical precondition (constraint surface, parity...)."""


class SingularInputError(DomainError):
    """Input too close to a pole, zero denominator or branch point."""


class BranchSearchError(RuntimeError):
    """No branch assignment satisfies the requested admissibility conditions."""


@dataclass(frozen=True)
class Context:
    """Arithmetic context at a fixed odd primitive root of unity.

    N = 2P + 1, omega = exp(2i*pi/N), omega_half = omega^{P+1}.
    """

    N: int
    P: int
    omega: complex
    omega_half: complex
    omega_table: tuple
    tol_rel: float = 1e-9
    tol_abs: float = 1e-12

    def omega_pow(self, num: int, den_log2: int = 0) -> complex:
        """omega^(num / 2^den_log2) via the modular convention 1/2 := P + 1.

        Exponent arithmetic is exact (mod N table lookup, no rounding).
        """
        e = num % self.N
        for _ in range(den_log2):
            e = (e * (self.P + 1)) % self.N
        return self.omega_table[e]

    def mod_index(self, n: int) -> int:
        """Canonical representative of n in [0, N)."""
        return n % self.N


def make_context(N: int, tol_rel: float = 1e-9, tol_abs: float = 1e-12) -> Context:
    """Build the context for an odd N >= 3."""
    if N < 3 or N % 2 == 0:
        raise DomainError(f"N must be odd and >= 3, got {N}")
    P = (N - 1) // 2
    table = [cmath.exp(2j * cmath.pi * k / N) for k in range(N)]
    table[0] = 1.0 + 0.0j
    omega = table[1]
    omega_half = table[P + 1]
    ctx = Context(N=N, P=P, omega=omega, omega_half=omega_half,
                  omega_table=tuple(table), tol_rel=tol_rel, tol_abs=tol_abs)
    # omega_half really is a square root of omega with the stated sign
    assert abs(omega_half ** 2 - omega) < 1e-12
    assert abs(omega_half + cmath.exp(1j * cmath.pi / N)) < 1e-12
    assert math.gcd(P + 1, N) == 1
    return ctx


def omega_pow(ctx: Context, num: int, den_log2: int = 0) -> complex:
    return ctx.omega_pow(num, den_log2)


def mod_index(ctx: Context, n: int) -> int:
    return ctx.mod_index(n)


def principal_nth_root(ctx: Context, w: complex, branch: int = 0) -> complex:
    """w^{1/N} on the principal branch (argument in (-pi/N, pi/N]), times omega^branch."""
    w = complex(w)
    if w == 0:
        raise SingularInputError("N-th root of zero requested")
    r = abs(w) ** (1.0 / ctx.N) * cmath.exp(1j * cmath.phase(w) / ctx.N)
    return r * ctx.omega_pow(branch)


def nth_roots(ctx: Context, w: complex) -> list[complex]:
    """All N-th roots of w, principal first, then principal * omega^k for k = 1..N-1."""
    r0 = principal_nth_root(ctx, w)
    return [r0 * ctx.omega_pow(k) for k in range(ctx.N)]


def dist_to_cut_rays(ctx: Context, x: complex) -> float:
    """Distance from x to the N branch-cut rays {t * omega^j, t >= 1}.

    These are the cuts of r, g, h and Phi in the principal determination; all
    window conditions in the library are stated relative to this distance.
    """
    x = complex(x)
    d = math.inf
    for j in range(ctx.N):
        e = ctx.omega_pow(j)
        t = max(1.0, (x * e.conjugate()).real)
        d = min(d, abs(x - t * e))
    return d

"""Scalar special functions on and around the Fermat curve x^N + y^N = z^N.

Cyclic omega-functions, the f-sum and its product factorization, the bracket
[x], the root functions r, g, h, the truncated q-Pochhammer symbol, Euler's
dilogarithm, the semiclassical factor S and the Phi function with its
root-of-unity asymptotics.

All fractional powers (r, g, Phi) are per-factor principal logarithms; the
identities relating them hold away from the cut rays {t*omega^j, t >= 1} and,
where noted, inside explicit angular windows.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .context import (Context, DomainError, SingularInputError,
                      dist_to_cut_rays, principal_nth_root)


@dataclass(frozen=True)
class FermatTriple:
    """A point [x : y : z] on the affine Fermat curve x^N + y^N = z^N."""

    x: complex
    y: complex
    z: complex

    @classmethod
    def make(cls, ctx: Context, x: complex, y: complex, z: complex) -> "FermatTriple":
        x, y, z = complex(x), complex(y), complex(z)
        if abs(y) < ctx.tol_abs or abs(z) < ctx.tol_abs:
            raise DomainError("FermatTriple needs y != 0 and z != 0")
        scale = max(abs(x) ** ctx.N, abs(y) ** ctx.N, abs(z) ** ctx.N)
        if abs(x ** ctx.N + y ** ctx.N - z ** ctx.N) > ctx.tol_rel * scale:
            raise DomainError("x^N + y^N = z^N violated")
        return cls(x, y, z)


def pole_margin(ctx: Context, t: FermatTriple) -> float:
    """min_j |z - x*omega^j| / max(|x|, |z|): relative distance to the omega poles."""
    scale = max(abs(t.x), abs(t.z))
    return min(abs(t.z - t.x * ctx.omega_pow(j)) for j in range(1, ctx.N + 1)) / scale


def omega_fermat(ctx: Context, t: FermatTriple, n: int, margin: float | None = None) -> complex:
    """omega(x, y, z | n) = prod_{j=1}^{n} y / (z - x omega^j), n reduced mod N.

    The reduction is justified by N-periodicity: the product over a full cycle
    is y^N / (z^N - x^N) = 1 on the Fermat curve.
    """
    margin = ctx.tol_abs if margin is None else margin
    if pole_margin(ctx, t) < margin:
        raise SingularInputError("z too close to x*omega^j")
    out = 1.0 + 0j
    for j in range(1, ctx.mod_index(n) + 1):
        out *= t.y / (t.z - t.x * ctx.omega_pow(j))
    return out


def omega_fermat2(ctx: Context, t: FermatTriple, m: int, n: int) -> complex:
    """omega(x, y, z | m, n) = omega(x, y, z | m - n) * omega^{n^2/2}."""
    return omega_fermat(ctx, t, m - n) * ctx.omega_pow(n * n, 1)


def omega_simple(ctx: Context, x: complex, n: int, margin: float | None = None) -> complex:
    """omega(x | n) = prod_{j=1}^{n} 1 / (1 - x omega^j) for n in [0, N).

    Not periodic in n; values outside [0, N) are rejected rather than reduced.
    """
    if not 0 <= n < ctx.N:
        raise DomainError(f"omega_simple index must lie in [0, N), got {n}")
    margin = ctx.tol_abs if margin is None else margin
    out = 1.0 + 0j
    for j in range(1, n + 1):
        d = 1 - x * ctx.omega_pow(j)
        if abs(d) < margin:
            raise SingularInputError(f"x within margin of pole omega^{-j}")
        out /= d
    return out


def f_func(ctx: Context, x: complex, y: complex, z: complex) -> complex:
    """f(x, y | z) = sum_{s=0}^{N-1} [omega(x|s) / omega(y|s)] z^s.

    Requires the curve constraint z^N (1 - y^N) = 1 - x^N.
    """
    lhs = z ** ctx.N * (1 - y ** ctx.N)
    rhs = 1 - x ** ctx.N
    if abs(lhs - rhs) > ctx.tol_rel * max(abs(lhs), abs(rhs), 1.0):
        raise DomainError("z^N (1 - y^N) = 1 - x^N violated")
    tot = 0j
    for s in range(ctx.N):
        tot += omega_simple(ctx, x, s) / omega_simple(ctx, y, s) * z ** s
    return tot


def bracket(ctx: Context, x: complex) -> complex:
    """[x] = (1 - x^N) / (N (1 - x))."""
    if abs(x - 1) < ctx.tol_abs:
        raise SingularInputError("bracket undefined at x = 1")
    return (1 - x ** ctx.N) / (ctx.N * (1 - x))


def kron_delta_N(ctx: Context, n: int) -> int:
    """1 if N divides n else 0 (the Kronecker symbol reduced mod N)."""
    return 1 if n % ctx.N == 0 else 0


def r_func(ctx: Context, x: complex) -> complex:
    """r(x) = (1 - x^N)^{1/N}, principal logarithm.

    Depends on x only through x^N; equals 1 at x = 0 and is analytic off the
    cut rays {t*omega^j, t >= 1}.
    """
    w = 1 - complex(x) ** ctx.N
    if abs(w) < ctx.tol_abs:
        raise SingularInputError("r(x) at a zero of 1 - x^N")
    return cmath.exp(cmath.log(w) / ctx.N)


def r_from_pow(ctx: Context, one_minus_xN: complex) -> complex:
    """r evaluated directly from the value of 1 - x^N."""
    if abs(one_minus_xN) < ctx.tol_abs:
        raise SingularInputError("r at a zero of its radicand")
    return cmath.exp(cmath.log(one_minus_xN) / ctx.N)


def g_func(ctx: Context, x: complex) -> complex:
    """g(x) = prod_{j=1}^{N-1} (1 - x omega^j)^{j/N}, per-factor principal powers."""
    out = 1.0 + 0j
    for j in range(1, ctx.N):
        f = 1 - x * ctx.omega_pow(j)
        if abs(f) < ctx.tol_abs:
            raise SingularInputError(f"g(x): factor 1 - x*omega^{j} vanishes")
        out *= cmath.exp((j / ctx.N) * cmath.log(f))
    return out


def g_one(ctx: Context) -> complex:
    """g(1); its modulus is sqrt(N)."""
    return g_func(ctx, 1.0)


def h_func(ctx: Context, x: complex) -> complex:
    """h(x) = x^{-P} g(x) / g(1)."""
    x = complex(x)
    if abs(x) < ctx.tol_abs:
        raise SingularInputError("h requires x != 0")
    return x ** (-ctx.P) * g_func(ctx, x) / g_one(ctx)


def in_bracket_window(ctx: Context, x: complex, margin: float = 0.05) -> bool:
    """Window on which [x] = h(1/x) h(x) x^P holds with principal branches.

    The product of the principal g-branches at x and 1/x matches the bracket
    exactly when x lies in the sector |arg x| < 2*pi/N between the two cut
    rays adjacent to the positive axis (empirically exact, all N).
    """
    return (abs(cmath.phase(x)) < 2 * math.pi / ctx.N - margin
            and dist_to_cut_rays(ctx, x) >= margin
            and dist_to_cut_rays(ctx, 1 / x) >= margin)


def f_factorization(ctx: Context, x: complex, y: complex, branch_hint: int | None = None,
                    margin: float = 0.05) -> tuple[complex, float, int]:
    """Product form of f (Lemma-style factorization).

    For z on the curve z^N (1 - y^N) = 1 - x^N the sum f(x, y | z) factors as

        (y omega)^P g(1) g(y omega / x) g(x / (y z))
        -------------------------------------------- .
              g(1/x) g(y omega) g(omega / z)

    The curve fixes z only up to an N-th root of unity and the factorization
    selects one coherent determination; this helper locates it (unless a
    branch_hint pins it) and returns (z, residual, branch).  For every branch
    the two sides agree in modulus.
    """
    zN = (1 - x ** ctx.N) / (1 - y ** ctx.N)
    g1 = g_one(ctx)
    best = None
    branches = range(ctx.N) if branch_hint is None else [branch_hint]
    for b in branches:
        z = principal_nth_root(ctx, zN, b)
        args = [y * ctx.omega / x, x / (y * z), 1 / x, y * ctx.omega, ctx.omega / z]
        if min(dist_to_cut_rays(ctx, a) for a in args) < margin:
            continue
        lhs = f_func(ctx, x, y, z)
        rhs = ((y * ctx.omega) ** ctx.P * g1 * g_func(ctx, y * ctx.omega / x)
               * g_func(ctx, x / (y * z))
               / (g_func(ctx, 1 / x) * g_func(ctx, y * ctx.omega) * g_func(ctx, ctx.omega / z)))
        res = abs(lhs - rhs) / max(abs(lhs), ctx.tol_abs)
        if best is None or res < best[1]:
            best = (z, res, b)
    if best is None:
        raise SingularInputError("all z-branches violate the cut margins")
    return best


def f_factorization_modulus_residual(ctx: Context, x: complex, y: complex) -> float:
    """| |f| - |product form| | / |f|, maximized over the z-branches.

    The moduli of the two sides of the factorization agree on every branch of
    z, regardless of the cut positions.
    """
    zN = (1 - x ** ctx.N) / (1 - y ** ctx.N)
    g1 = abs(g_one(ctx))
    worst = 0.0
    for b in range(ctx.N):
        z = principal_nth_root(ctx, zN, b)
        lhs = abs(f_func(ctx, x, y, z))
        rhs = (abs(y) ** ctx.P * g1 * abs(g_func(ctx, y * ctx.omega / x))
               * abs(g_func(ctx, x / (y * z)))
               / (abs(g_func(ctx, 1 / x)) * abs(g_func(ctx, y * ctx.omega))
                  * abs(g_func(ctx, ctx.omega / z))))
        worst = max(worst, abs(lhs - rhs) / max(lhs, ctx.tol_abs))
    return worst


def phi_func(ctx: Context, x: complex, zeta: complex | None = None) -> complex:
    """Phi(x) = (1 - x^N)^{(N-1)/2N} prod_{k=1}^{N-1} (1 - zeta^k x)^{-k/N}, |x| < 1."""
    if abs(x) >= 1 - ctx.tol_abs:
        raise DomainError("phi_func restricted to the open unit disk")
    zeta = ctx.omega if zeta is None else zeta
    if abs(zeta ** ctx.N - 1) > 1e-9 or any(abs(zeta ** k - 1) < 1e-9 for k in range(1, ctx.N)):
        raise DomainError("zeta must be a primitive N-th root of unity")
    out = cmath.exp(((ctx.N - 1) / (2 * ctx.N)) * cmath.log(1 - x ** ctx.N))
    for k in range(1, ctx.N):
        out *= cmath.exp((-k / ctx.N) * cmath.log(1 - zeta ** k * x))
    return out


def phi_shift_factor(ctx: Context, x: complex, k: int, zeta: complex | None = None) -> complex:
    """prod_{j=0}^{k-1} r(x) / (1 - x zeta^j): Phi(x zeta^k) / Phi(x).

    With the single-valued principal r the continuation factors zeta^j of the
    series determination drop out; the identity then holds globally off the
    cut rays (and the full cycle k = N telescopes to 1).
    """
    zeta = ctx.omega if zeta is None else zeta
    r = r_func(ctx, x)
    out = 1.0 + 0j
    for j in range(k):
        out *= r / (1 - x * zeta ** j)
    return out


def q_pochhammer(x: complex, q: complex, max_terms: int = 100000, tol: float = 1e-18) -> complex:
    """(x; q)_infty = prod_{n>=0} (1 - x q^n), truncated once |x q^n| < tol."""
    if abs(q) >= 1 - 1e-12:
        raise DomainError("q_pochhammer needs |q| < 1")
    out = 1.0 + 0j
    term = complex(x)
    for _ in range(max_terms):
        out *= 1 - term
        term *= q
        if abs(term) < tol:
            break
    return out


def log_q_pochhammer_series(x: complex, q: complex, max_terms: int = 100000,
                            tol: float = 1e-18) -> complex:
    """log (x; q)_infty = -sum_{n>=1} x^n / (n (1 - q^n))."""
    if abs(q) >= 1 - 1e-12 or abs(x) >= 1:
        raise DomainError("series needs |q| < 1 and |x| < 1")
    tot = 0j
    xn, qn = complex(x), complex(q)
    for n in range(1, max_terms + 1):
        t = xn / (n * (1 - qn))
        tot -= t
        if abs(t) < tol:
            break
        xn *= x
        qn *= q
    return tot


def euler_dilog(x: complex, tol: float = 1e-18, max_terms: int = 200000) -> complex:
    """Li_2(x) = sum_{n>=1} x^n / n^2, |x| < 1."""
    if abs(x) >= 1:
        raise DomainError("euler_dilog restricted to |x| < 1")
    tot = 0j
    xn = complex(x)
    for n in range(1, max_terms + 1):
        t = xn / (n * n)
        tot += t
        if abs(t) < tol:
            break
        xn *= x
    return tot


def s_classical(x: complex, eps: complex) -> complex:
    """S(x, eps) = (1 - x)^{1/2} exp(-Li_2(x) / eps), Re(eps) > 0."""
    if eps == 0 or complex(eps).real <= 0:
        raise DomainError("s_classical needs Re(eps) > 0")
    return cmath.sqrt(1 - x) * cmath.exp(-euler_dilog(x) / eps)


def asymptotic_ratio(ctx: Context, x: complex, eps: complex,
                     zeta: complex | None = None) -> complex:
    """(x; q)_infty / [(1 - x^N)^{(1-N)/2N} S(x^N, eps) Phi(x)] at q = exp(-eps/N^2) zeta.

    Tends to 1 as eps -> 0 with a first-order error O(eps).
    """
    zeta = ctx.omega if zeta is None else zeta
    q = cmath.exp(-eps / ctx.N ** 2) * zeta
    if abs(q) >= 1:
        raise DomainError("resulting |q| >= 1")
    num = q_pochhammer(x, q)
    den = (cmath.exp(((1 - ctx.N) / (2 * ctx.N)) * cmath.log(1 - x ** ctx.N))
           * s_classical(x ** ctx.N, eps) * phi_func(ctx, x, zeta))
    return num / den


def max_abs(a) -> float:
    """max |entry|; scalar-safe."""
    return float(np.max(np.abs(a)))


def rel_residual(lhs, rhs, tol_abs: float = 1e-12) -> float:
    """max|lhs - rhs| / max(max|rhs|, tol_abs): the library-wide residual metric."""
    return max_abs(np.asarray(lhs) - np.asarray(rhs)) / max(max_abs(rhs), tol_abs)

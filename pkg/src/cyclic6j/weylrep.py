"""Standard cyclic representations of the Weyl algebra ED = omega DE.

A standard representation is the pair (a, y): E -> a^2 Z, D -> a y X with the
clock matrix Z and shift matrix X.  Fusion of a regular pair multiplies the
a-parameters and solves y^N additively (an N-th root choice recorded as a
branch index).  The module also provides the 2x2 Borel parametrization, the
involutions, the normal representations of the specialized Heisenberg double,
and the admissibility search that fixes fusion branches for a triple.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .context import (BranchSearchError, Context, DomainError,
                      dist_to_cut_rays, principal_nth_root)
from .specfun import h_func, r_from_pow


@dataclass(frozen=True)
class StandardRep:
    """Parameters (a, y) of a standard cyclic representation; both nonzero."""

    a: complex
    y: complex

    @classmethod
    def make(cls, ctx: Context, a: complex, y: complex) -> "StandardRep":
        a, y = complex(a), complex(y)
        if abs(a) < ctx.tol_abs or abs(y) < ctx.tol_abs:
            raise DomainError("StandardRep needs a != 0 and y != 0")
        return cls(a, y)

    def to_json(self) -> dict:
        return {"a": [self.a.real, self.a.imag], "y": [self.y.real, self.y.imag]}

    @classmethod
    def from_json(cls, d: dict) -> "StandardRep":
        return cls(complex(*d["a"]), complex(*d["y"]))


@dataclass(frozen=True)
class BorelElement:
    """Upper triangular [[t, x], [0, 1/t]]; "full" means x != 0."""

    t: complex
    x: complex

    def matrix(self) -> np.ndarray:
        return np.array([[self.t, self.x], [0.0, 1.0 / self.t]], dtype=complex)

    def __mul__(self, other: "BorelElement") -> "BorelElement":
        return BorelElement(self.t * other.t, self.t * other.x + self.x / other.t)

    def inv(self) -> "BorelElement":
        return BorelElement(1.0 / self.t, -self.x)

    def is_full(self, tol: float = 1e-12) -> bool:
        return abs(self.x) > tol

    def to_json(self) -> dict:
        return {"t": [self.t.real, self.t.imag], "x": [self.x.real, self.x.imag]}

    @classmethod
    def from_json(cls, d: dict) -> "BorelElement":
        return cls(complex(*d["t"]), complex(*d["x"]))


# ---------------------------------------------------------------------------
# canonical matrices


def mat_X(ctx: Context) -> np.ndarray:
    """Shift matrix, X_{i,j} = delta(i - j - 1) mod N."""
    X = np.zeros((ctx.N, ctx.N), dtype=complex)
    for j in range(ctx.N):
        X[(j + 1) % ctx.N, j] = 1.0
    return X


def mat_Z(ctx: Context) -> np.ndarray:
    """Clock matrix, Z_{i,j} = omega^i delta(i - j)."""
    return np.diag([ctx.omega_pow(i) for i in range(ctx.N)])


def mat_Y(ctx: Context) -> np.ndarray:
    """Y = omega^{1/2} X Z, entries Y_{i,j} = omega^{1/2 + j} delta(i - j - 1)."""
    Y = np.zeros((ctx.N, ctx.N), dtype=complex)
    for j in range(ctx.N):
        Y[(j + 1) % ctx.N, j] = ctx.omega_half * ctx.omega_pow(j)
    return Y


def rep_E(ctx: Context, rho: StandardRep) -> np.ndarray:
    return rho.a ** 2 * mat_Z(ctx)


def rep_D(ctx: Context, rho: StandardRep) -> np.ndarray:
    return rho.a * rho.y * mat_X(ctx)


def tensor_E(ctx: Context, rho: StandardRep, mu: StandardRep) -> np.ndarray:
    """(rho x mu)(Delta E) = rho(E) (x) mu(E); flattening (i,j) -> i*N + j."""
    return np.kron(rep_E(ctx, rho), rep_E(ctx, mu))

def tensor_D(ctx: Context, rho: StandardRep, mu: StandardRep) -> np.ndarray:
    """(rho x mu)(Delta D) = rho(E) (x) mu(D) + rho(D) (x) id."""
    return (np.kron(rep_E(ctx, rho), rep_D(ctx, mu))
            + np.kron(rep_D(ctx, rho), np.eye(ctx.N, dtype=complex)))


# ---------------------------------------------------------------------------
# fusion


def fusion_scalar(ctx: Context, rho: StandardRep, mu: StandardRep) -> complex:
    """a_rho^N y_mu^N + y_rho^N / a_mu^N: the N-th power of the fused y."""
    return rho.a ** ctx.N * mu.y ** ctx.N + rho.y ** ctx.N / mu.a ** ctx.N


def is_regular_pair(ctx: Context, rho: StandardRep, mu: StandardRep) -> bool:
    """True iff D acts invertibly on the product (the D^N scalar is nonzero)."""
    t1 = rho.a ** ctx.N * mu.y ** ctx.N
    t2 = rho.y ** ctx.N / mu.a ** ctx.N
    return abs(t1 + t2) >= ctx.tol_abs * max(abs(t1), abs(t2), 1.0)


def fuse(ctx: Context, rho: StandardRep, mu: StandardRep, branch: int = 0) -> StandardRep:
    """Fused representation: a = a_rho a_mu, y = omega^branch * principal root."""
    if not is_regular_pair(ctx, rho, mu):
        raise DomainError("cannot fuse a non-regular pair")
    y = principal_nth_root(ctx, fusion_scalar(ctx, rho, mu), branch)
    return StandardRep(rho.a * mu.a, y)


def inverse_rep(rho: StandardRep) -> StandardRep:
    return StandardRep(1.0 / rho.a, -rho.y)


def conjugate_rep(rho: StandardRep) -> StandardRep:
    return StandardRep(rho.a.conjugate(), rho.y.conjugate())


def psi_param(ctx: Context, rho: StandardRep) -> BorelElement:
    """Borel parametrization [[a^N, y^N], [0, a^-N]]; multiplicative under fusion."""
    return BorelElement(rho.a ** ctx.N, rho.y ** ctx.N)


def normal_rep(ctx: Context, rho: StandardRep) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Normal representation (E, D, Ebar, Dbar) of the Heisenberg double at q = omega^{-1}.

    E = a^{-2} Z^{-1}, D = -(y/a) Y^{-1}, Ebar = a^{-2} Y, Dbar = omega^{-1/2}/(a y) X.
    """
    Y = mat_Y(ctx)
    E = rho.a ** -2 * np.linalg.inv(mat_Z(ctx))
    D = -(rho.y / rho.a) * np.linalg.inv(Y)
    Ebar = rho.a ** -2 * Y
    Dbar = ctx.omega_pow(-(ctx.P + 1)) / (rho.a * rho.y) * mat_X(ctx)
    return E, D, Ebar, Dbar


# ---------------------------------------------------------------------------
# triples of representations with coherent fusion branches


@dataclass(frozen=True)
class FusedTriple:
    """(rho, mu, nu) with fused products and recorded branch indices.

    Invariants: a-parameters multiply exactly; each fused y is an N-th root of
    the additive fusion scalar; Convention 5.6 relates the triple-product
    branch to the principal r; the closed-form 6j normalization is coherent
    (normalization_defect ~ 1).
    """

    rho: StandardRep
    mu: StandardRep
    nu: StandardRep
    rho_mu: StandardRep
    mu_nu: StandardRep
    rho_mu_nu: StandardRep
    branches: tuple[int, int, int] = (0, 0, 0)

    @property
    def w_ratio(self) -> complex:
        """y_rm y_mn / (y_rmn y_mu): the h-argument of the 6j normalization."""
        return self.rho_mu.y * self.mu_nu.y / (self.rho_mu_nu.y * self.mu.y)

    def fermat_args(self) -> tuple[complex, complex, complex]:
        """(x, y, z) of the 6j omega-function: (y_rmn y_m, y_r y_n, y_rm y_mn)."""
        return (self.rho_mu_nu.y * self.mu.y, self.rho.y * self.nu.y,
                self.rho_mu.y * self.mu_nu.y)


def convention_residual(ctx: Context, triple: FusedTriple) -> float:
    """| -y_r y_n / (y_rmn y_m) - r(y_rm y_mn / (y_rmn y_m)) | (relative)."""
    lhs = -triple.rho.y * triple.nu.y / (triple.rho_mu_nu.y * triple.mu.y)
    rhs = r_from_pow(ctx, 1 - triple.w_ratio ** ctx.N)
    return abs(lhs - rhs) / abs(rhs)


def solve_convention_branch(ctx: Context, y_r: complex, y_m: complex, y_n: complex,
                            s_prod: complex, w_pow: complex) -> tuple[int, complex]:
    """Unique triple-product branch making -y_r y_n / (y_rmn y_m) = r(w).

    w_pow is w^N = s_ab s_bc / (s_prod y_m^N); r depends on it alone, so the
    branch rotation of y_rmn on the left singles out exactly one index.
    """
    target = r_from_pow(ctx, 1 - w_pow)
    y0 = principal_nth_root(ctx, s_prod)
    for b in range(ctx.N):
        y_rmn = y0 * ctx.omega_pow(b)
        if abs(-y_r * y_n / (y_rmn * y_m) - target) < 1e-7 * abs(target):
            return b, y_rmn
    raise BranchSearchError("no branch satisfies the r-convention")


# -- coherence probe ---------------------------------------------------------
#
# The closed-form 6j normalization h(y_rm y_mn / (y_rmn y_m)) matches the
# change-of-basis operator defined by the Clebsch-Gordan decomposition only
# up to an N-th root of unity that depends on the branch positions of every
# fractional power involved.  The deviation equals the scalar by which the
# factorized pentagon identity for the five cyclic-dilogarithm operators
# fails, which a single probe vector detects in O(N^4) work.


def _psi_coeffs(ctx: Context, kappa: complex, lam: complex) -> np.ndarray:
    """c_t = prod_{s=1}^{t} kappa / (1 - omega^{-s} lam), t = 0..N-1."""
    cs = np.empty(ctx.N, dtype=complex)
    cs[0] = 1.0
    for s in range(1, ctx.N):
        cs[s] = cs[s - 1] * kappa / (1 - ctx.omega_pow(-s) * lam)
    return cs


def _monomial_ops(ctx: Context):
    """U, V, -UV of the factorized pentagon as (permutation, phase) pairs on C^{N^3}."""
    N = ctx.N
    idx = np.arange(N ** 3)
    i, j, k = idx // (N * N), (idx // N) % N, idx % N
    w = np.array([ctx.omega_pow(t) for t in range(N)])
    # U e_(i,j,k) = -w^{-i} e_(i-1,j+1,k); V e = -w^{-j} e_(i,j-1,k+1);
    # -UV e = -w^{-i-j} e_(i-1,j,k+1).  Stored as (source index, phase) per
    # output index: (X v)[n] = phase[n] * v[src[n]].
    sU = ((i + 1) % N) * N * N + ((j - 1) % N) * N + k
    pU = -w[(-(i + 1)) % N]
    sV = i * N * N + ((j + 1) % N) * N + (k - 1) % N
    pV = -w[(-(j + 1)) % N]
    sUV = ((i + 1) % N) * N * N + j * N + (k - 1) % N
    pUV = -w[(-(i + 1) - j) % N]
    return (sU, pU), (sV, pV), (sUV, pUV)


def _apply_psi(ctx: Context, coeffs: np.ndarray, op, vec: np.ndarray) -> np.ndarray:
    src, phase = op
    out = coeffs[0] * vec
    w = vec
    for t in range(1, ctx.N):
        w = phase * w[src]
        out = out + coeffs[t] * w
    return out


def normalization_defect(ctx: Context, rho: StandardRep, mu: StandardRep, nu: StandardRep,
                         y_rm: complex, y_mn: complex, y_rmn: complex) -> complex:
    """Scalar by which the closed-form 6j normalization deviates from exactness.

    Returns ~1 when the decomposition identity holds with the default h's;
    otherwise an N-th root of unity.
    """
    opU, opV, opUV = _monomial_ops(ctx)
    probe = _probe_vector(ctx)

    def pair(r: StandardRep, m: StandardRep, y_f: complex):
        kap = r.y / (r.a * m.a * m.y)
        lam = y_f / (r.a * m.y)
        return _psi_coeffs(ctx, kap, lam) * h_func(ctx, lam)

    def sixj_c():
        x, y, z = y_rmn * mu.y, rho.y * nu.y, y_rm * y_mn
        return _psi_coeffs(ctx, y / x, z / x) * h_func(ctx, z / x)

    rm = StandardRep(rho.a * mu.a, y_rm)
    mn = StandardRep(mu.a * nu.a, y_mn)
    vL = _apply_psi(ctx, pair(rho, mu, y_rm), opU, probe)
    vL = _apply_psi(ctx, pair(rm, nu, y_rmn), opV, vL)
    vR = _apply_psi(ctx, pair(mu, nu, y_mn), opV, probe)
    vR = _apply_psi(ctx, pair(rho, mn, y_rmn), opUV, vR)
    vR = _apply_psi(ctx, sixj_c(), opU, vR)
    i = int(np.argmax(np.abs(vR)))
    return vL[i] / vR[i]


_PROBE_CACHE: dict[int, np.ndarray] = {}


def _probe_vector(ctx: Context) -> np.ndarray:
    v = _PROBE_CACHE.get(ctx.N)
    if v is None:
        rng = np.random.default_rng(20240 + ctx.N)
        v = rng.normal(size=ctx.N ** 3) + 1j * rng.normal(size=ctx.N ** 3)
        _PROBE_CACHE[ctx.N] = v
    return v


def triple_margins_ok(ctx: Context, rho: StandardRep, mu: StandardRep, nu: StandardRep,
                      y_rm: complex, y_mn: complex, y_rmn: complex,
                      margin: float = 0.05, cond_floor: float = 2e-4) -> bool:
    """Pole margins and conditioning floors for every tensor built from the triple.

    The omega-function poles z - x omega^j (j = 1..N-1) keep the full margin;
    the j = 0 distance z - x only enters the dual tensors (the shifted
    first argument x/omega turns it into a denominator) and the bracket,
    where it is a removable cancellation, so it only needs a conditioning
    floor.  The same floor applies to the factors of g at the h-arguments.
    """
    N = ctx.N
    rm = StandardRep(rho.a * mu.a, y_rm)
    mn = StandardRep(mu.a * nu.a, y_mn)
    fermat = [
        (rho.a * mu.y, y_rm),            # pair (rho, mu)
        (rm.a * nu.y, y_rmn),            # pair (rho mu, nu)
        (mu.a * nu.y, y_mn),             # pair (mu, nu)
        (rho.a * mn.y, y_rmn),           # pair (rho, mu nu)
        (y_rmn * mu.y, y_rm * y_mn),     # 6j triple
    ]
    for x, z in fermat:
        scale = max(abs(x), abs(z))
        if min(abs(z - x * ctx.omega_pow(j)) for j in range(1, N)) < margin * scale:
            return False
        if abs(z - x) < cond_floor * scale:
            return False
    h_args = [y_rm / (rho.a * mu.y), y_rmn / (rm.a * nu.y), y_mn / (mu.a * nu.y),
              y_rmn / (rho.a * mn.y), y_rm * y_mn / (y_rmn * mu.y)]
    for a in h_args:
        if min(abs(1 - a * ctx.omega_pow(j)) for j in range(1, N)) < cond_floor:
            return False
    return True


def fuse_triple_admissible(ctx: Context, rho: StandardRep, mu: StandardRep,
                           nu: StandardRep, margin: float = 0.05,
                           require_window: bool = False) -> FusedTriple:
    """Branch search making a triple admissible.

    Lexicographic over the pair branches (b1, b2); the triple-product branch
    b3 is pinned by the r-convention.  Admissibility = r-convention + pole and
    cut margins + coherent closed-form normalization; require_window
    additionally demands |arg w| < 2 pi / N (needed by the symmetry relations,
    whose derived triples evaluate h at 1/w).
    """
    for pair in ((rho, mu), (mu, nu)):
        if not is_regular_pair(ctx, *pair):
            raise DomainError("triple contains a non-regular pair")
    s_rm = fusion_scalar(ctx, rho, mu)
    s_mn = fusion_scalar(ctx, mu, nu)
    s_rmn = (rho.a * mu.a) ** ctx.N * nu.y ** ctx.N + s_rm / nu.a ** ctx.N
    if min(abs(s_rm), abs(s_mn), abs(s_rmn)) < ctx.tol_abs:
        raise DomainError("triple contains a non-regular partial product")
    w_pow = s_rm * s_mn / (s_rmn * mu.y ** ctx.N)
    b3, y_rmn = solve_convention_branch(ctx, rho.y, mu.y, nu.y, s_rmn, w_pow)
    for b1 in range(ctx.N):
        y_rm = principal_nth_root(ctx, s_rm, b1)
        for b2 in range(ctx.N):
            y_mn = principal_nth_root(ctx, s_mn, b2)
            if require_window:
                w = y_rm * y_mn / (y_rmn * mu.y)
                if abs(cmath.phase(w)) >= 2 * math.pi / ctx.N - margin:
                    continue
            if not triple_margins_ok(ctx, rho, mu, nu, y_rm, y_mn, y_rmn, margin):
                continue
            if abs(normalization_defect(ctx, rho, mu, nu, y_rm, y_mn, y_rmn) - 1) < 1e-6:
                return FusedTriple(rho, mu, nu,
                                   StandardRep(rho.a * mu.a, y_rm),
                                   StandardRep(mu.a * nu.a, y_mn),
                                   StandardRep(rho.a * mu.a * nu.a, y_rmn),
                                   (b1, b2, b3))
    raise BranchSearchError("no admissible branch assignment; resample parameters")

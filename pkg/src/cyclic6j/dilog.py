"""Cyclic dilogarithm operators and the Gaussian operator Upsilon.

Psi_{a,b,c}(A) = h sum_{n=0}^{N-1} A^n prod_{s=1}^{n} a / (c - omega^{-s} b)
acting on any A with A^N = -id.  The coefficient recursion closes around the
cycle exactly when a^N + c^N = b^N, which is therefore the constraint carried
by the parameter triple (the functional identity
Psi(omega^{-1}A) Psi(A)^{-1} = (c - aA)/b then holds on the nose).  The
spectrum on the (-omega^n)-eigenspaces of A is proportional to the cyclic
omega-function of the sign-flipped triple (-a, b, c).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .context import (BranchSearchError, Context, DomainError,
                      SingularInputError, principal_nth_root)
from .specfun import FermatTriple, omega_fermat, rel_residual
from .weylrep import mat_Y, mat_Z


@dataclass(frozen=True)
class CyclicDilogParams:
    """(a, b, c) with a^N + c^N = b^N, plus the free normalization h.

    Note the constraint: the cyclic product of the Eq-style coefficients
    a/(c - omega^{-s} b) over a full period equals -1, matching A^N = -id;
    this forces b^N = a^N + c^N (not c^N = a^N + b^N).
    """

    a: complex
    b: complex
    c: complex
    h: complex = 1.0

    @classmethod
    def make(cls, ctx: Context, a: complex, b: complex, c: complex,
             h: complex = 1.0) -> "CyclicDilogParams":
        a, b, c = complex(a), complex(b), complex(c)
        if min(abs(b), abs(c)) < ctx.tol_abs:
            raise DomainError("CyclicDilogParams needs b != 0 and c != 0")
        scale = max(abs(a), abs(b), abs(c)) ** ctx.N
        if abs(a ** ctx.N + c ** ctx.N - b ** ctx.N) > ctx.tol_rel * scale:
            raise DomainError("a^N + c^N = b^N violated")
        return cls(a, b, c, complex(h))

    @property
    def x(self) -> complex:
        return self.a / self.b

    @property
    def y(self) -> complex:
        return self.c / self.b


def dilog_coefficients(ctx: Context, p: CyclicDilogParams) -> np.ndarray:
    """c_n = h prod_{s=1}^{n} a / (c - omega^{-s} b)."""
    cs = np.empty(ctx.N, dtype=complex)
    cs[0] = p.h
    for s in range(1, ctx.N):
        d = p.c - ctx.omega_pow(-s) * p.b
        if abs(d) < ctx.tol_abs:
            raise SingularInputError("c - omega^{-s} b vanishes")
        cs[s] = cs[s - 1] * p.a / d
    return cs


def check_anticyclic(ctx: Context, A: np.ndarray, tol: float | None = None) -> float:
    """max-residual of A^N = -id."""
    tol = ctx.tol_rel if tol is None else tol
    return rel_residual(np.linalg.matrix_power(A, ctx.N), -np.eye(len(A)))


def cyclic_dilog_op(ctx: Context, p: CyclicDilogParams, A: np.ndarray) -> np.ndarray:
    """Psi_{a,b,c}(A) as a polynomial in A (spectrum condition A^N = -id checked)."""
    A = np.asarray(A, dtype=complex)
    if check_anticyclic(ctx, A) > 100 * ctx.tol_rel:
        raise DomainError("operator argument must satisfy A^N = -id")
    cs = dilog_coefficients(ctx, p)
    out = cs[0] * np.eye(len(A), dtype=complex)
    term = np.eye(len(A), dtype=complex)
    for n in range(1, ctx.N):
        term = term @ A
        out += cs[n] * term
    return out


def dilog_spectrum(ctx: Context, p: CyclicDilogParams) -> np.ndarray:
    """Eigenvalues of Psi_{a,b,c}(A) on the (-omega^m)-eigenspaces of A, m = 0..N-1.

    Proportional to omega(-a, b, c | m); the constant is the m = 0 value.
    """
    cs = dilog_coefficients(ctx, p)
    return np.array([sum(cs[n] * (-ctx.omega_pow(m)) ** n for n in range(ctx.N))
                     for m in range(ctx.N)])


def dilog_spectrum_reference(ctx: Context, p: CyclicDilogParams) -> np.ndarray:
    """spectrum(0) * omega(-a, b, c | m): the closed form the spectrum follows."""
    t = FermatTriple.make(ctx, -p.a, p.b, p.c)
    s0 = dilog_spectrum(ctx, p)[0]
    return np.array([s0 * omega_fermat(ctx, t, m) for m in range(ctx.N)])


def make_anticyclic_pair(ctx: Context) -> tuple[np.ndarray, np.ndarray]:
    """(U, V) with U^N = V^N = -id and UV = omega VU: U = -Y, V = -Z^{-1}."""
    U = -mat_Y(ctx)
    V = -np.linalg.inv(mat_Z(ctx))
    assert check_anticyclic(ctx, U) < 1e-12
    assert check_anticyclic(ctx, V) < 1e-12
    assert rel_residual(U @ V, ctx.omega * V @ U) < 1e-12
    return U, V


def upsilon(ctx: Context) -> np.ndarray:
    """Upsilon = (1/N) sum_{i,j} omega^{ij} Z_1^{-i} Y_2^{j} on C^N (x) C^N.

    Acts as v_k (x) v_l -> v_k (x) Y^k v_l and solves the pentagon equation.
    """
    N = ctx.N
    Y = mat_Y(ctx)
    Zi = np.linalg.inv(mat_Z(ctx))
    out = np.zeros((N * N, N * N), dtype=complex)
    Zpows = [np.linalg.matrix_power(Zi, i) for i in range(N)]
    Ypows = [np.linalg.matrix_power(Y, j) for j in range(N)]
    for i in range(N):
        for j in range(N):
            out += ctx.omega_pow(i * j) * np.kron(Zpows[i], Ypows[j])
    return out / N


def upsilon_hat_form(ctx: Context) -> np.ndarray:
    """The equivalent form sum_i Z_1^{-i} (x) Yhat^i with Yhat^i = (1/N) sum_k omega^{ik} Y^k."""
    N = ctx.N
    Y = mat_Y(ctx)
    Zi = np.linalg.inv(mat_Z(ctx))
    Ypows = [np.linalg.matrix_power(Y, k) for k in range(N)]
    out = np.zeros((N * N, N * N), dtype=complex)
    for i in range(N):
        Yhat = sum(ctx.omega_pow(i * k) * Ypows[k] for k in range(N)) / N
        out += np.kron(np.linalg.matrix_power(Zi, i), Yhat)
    return out


def embed_pair(ctx: Context, M: np.ndarray, slots: tuple[int, int]) -> np.ndarray:
    """Embed an N^2 x N^2 operator into C^N tensor-cubed on the given slot pair."""
    N = ctx.N
    T = M.reshape(N, N, N, N)
    I = np.eye(N)
    if slots == (0, 1):
        B = np.einsum('abcd,ef->abecdf', T, I)
    elif slots == (0, 2):
        B = np.einsum('abcd,ef->aebcfd', T, I)
    elif slots == (1, 2):
        B = np.einsum('abcd,ef->eabfcd', T, I)
    else:
        raise ValueError(f"slots must be a pair among (0,1),(0,2),(1,2), got {slots}")
    return B.reshape(N ** 3, N ** 3)


def upsilon_pentagon_residual(ctx: Context) -> float:
    """U_12 U_13 U_23 = U_23 U_12 on C^N tensor-cubed."""
    Up = upsilon(ctx)
    U12 = embed_pair(ctx, Up, (0, 1))
    U13 = embed_pair(ctx, Up, (0, 2))
    U23 = embed_pair(ctx, Up, (1, 2))
    return rel_residual(U12 @ U13 @ U23, U23 @ U12)


# ---------------------------------------------------------------------------
# five-term identity (pentagon for the cyclic dilogarithm)


def thm410_constraints_residual(ps: list[CyclicDilogParams]) -> float:
    """Residuals of the five coupling relations among x_i = a_i/b_i, y_i = c_i/b_i."""
    x = [p.x for p in ps]
    y = [p.y for p in ps]
    return max(abs(y[0] * y[2] - y[1] * y[4]), abs(y[1] - y[2] * y[3]),
               abs(x[3] - x[0] * x[1]), abs(x[2] - x[1] * y[4]),
               abs(x[4] - x[0] * y[2]))


def solve_thm410_params(ctx: Context, x0: complex, x1: complex,
                        y2: complex, y4: complex) -> list[CyclicDilogParams]:
    """Five parameter sets of the five-term identity, h_3 determinant-fixed.

    The inputs must lie on the constraint surface (each pair satisfies
    x_i^N + y_i^N = 1 after the coupling relations derive y0, y1, y3 and
    x2, x3, x4); use sample_thm410_inputs to draw valid ones.  h_0, h_1, h_2,
    h_4 stay 1 and h_3 absorbs the determinant matching on the standard
    anticyclic pair.
    """
    ps = params_from_thm410_inputs(ctx, x0, x1, y2, y4)
    U, V = make_anticyclic_pair(ctx)
    ps_fixed, _ = fix_determinant_normalization(ctx, ps, U, V)
    return ps_fixed


def sample_thm410_inputs(ctx: Context, rng: np.random.Generator,
                         max_tries: int = 200) -> tuple[complex, complex, complex, complex]:
    """Draw (x0, x1, y2, y4) on the constraint surface of the five-term identity."""
    for _ in range(max_tries):
        x0 = _annulus(rng, 0.3, 1.5)
        x1 = _annulus(rng, 0.3, 1.5)
        y0N, y1N = 1 - x0 ** ctx.N, 1 - x1 ** ctx.N
        if min(abs(y0N), abs(y1N)) < 1e-3:
            continue
        b0, b1, b2 = rng.integers(0, ctx.N, 3)
        y0 = principal_nth_root(ctx, y0N, int(b0))
        y1 = principal_nth_root(ctx, y1N, int(b1))
        den = y0 ** ctx.N + y1 ** ctx.N - y0 ** ctx.N * y1 ** ctx.N
        if abs(den) < 1e-3:
            continue
        y2 = principal_nth_root(ctx, y1 ** ctx.N / den, int(b2))
        y4 = y0 * y2 / y1
        try:
            ps = params_from_thm410_inputs(ctx, x0, x1, y2, y4)
        except DomainError:
            continue
        # keep the coefficient denominators y_i - omega^{-s} well conditioned
        margin = 0.02
        if any(min(abs(p.y - ctx.omega_pow(-s)) for s in range(ctx.N)) < margin
               or not 0.05 < abs(p.x) < 20 for p in ps):
            continue
        return x0, x1, y2, y4
    raise BranchSearchError("could not sample five-term inputs")


def params_from_thm410_inputs(ctx: Context, x0: complex, x1: complex,
                              y2: complex, y4: complex) -> list[CyclicDilogParams]:
    """Five CyclicDilogParams (b_i = 1, a_i = x_i, c_i = y_i) from surface inputs."""
    # the coupling relations give x2, x3, x4 directly; y0, y1, y3 follow from
    # y0 y2 = y1 y4 and y1 = y2 y3 once y1's Fermat branch is matched to y0's
    x2 = x1 * y4
    x4 = x0 * y2
    x3 = x0 * x1
    # y1^N = 1 - x1^N and y1 = y0 y2 / y4; choose the branch consistent with y2, y4:
    y1N = 1 - x1 ** ctx.N
    y0N = 1 - x0 ** ctx.N
    y1 = None
    for b in range(ctx.N):
        cand = principal_nth_root(ctx, y1N, b)
        y0 = cand * y4 / y2
        if abs(y0 ** ctx.N - y0N) < ctx.tol_rel * max(abs(y0N), 1.0):
            y1 = cand
            break
    if y1 is None:
        raise DomainError("inputs do not lie on the five-term constraint surface")
    y0 = y1 * y4 / y2
    y3 = y1 / y2
    ps = []
    for x_i, y_i in ((x0, y0), (x1, y1), (x2, y2), (x3, y3), (x4, y4)):
        ps.append(CyclicDilogParams.make(ctx, x_i, 1.0, y_i))
    return ps


def fix_determinant_normalization(ctx: Context, ps: list[CyclicDilogParams],
                                  U: np.ndarray, V: np.ndarray) -> tuple[list[CyclicDilogParams], float]:
    """Rescale h_3 by the N-th root of the determinant ratio that closes the identity.

    Returns the adjusted parameter list and the residual of
    Psi_0(V) Psi_1(U) = Psi_2(U) Psi_3(-UV) Psi_4(V).
    """
    lhs = cyclic_dilog_op(ctx, ps[0], V) @ cyclic_dilog_op(ctx, ps[1], U)
    r2 = cyclic_dilog_op(ctx, ps[2], U)
    r4 = cyclic_dilog_op(ctx, ps[4], V)
    r3 = cyclic_dilog_op(ctx, ps[3], -U @ V)
    det_ratio = np.linalg.det(lhs) / np.linalg.det(r2 @ r3 @ r4)
    dim = len(U)
    best = None
    for k in range(ctx.N):
        # det scales as h3^dim; h3 must be an N-th root of unity times the
        # principal dim-th root of the ratio
        h3 = abs(det_ratio) ** (1.0 / dim) * np.exp(1j * np.angle(det_ratio) / dim) \
            * ctx.omega_pow(k)
        rhs = r2 @ (h3 * r3) @ r4
        res = rel_residual(lhs, rhs, ctx.tol_abs)
        if best is None or res < best[1]:
            best = (h3, res)
    h3, res = best
    out = list(ps)
    out[3] = CyclicDilogParams(ps[3].a, ps[3].b, ps[3].c, ps[3].h * h3)
    return out, res


def thm410_residual(ctx: Context, ps: list[CyclicDilogParams],
                    U: np.ndarray | None = None,
                    V: np.ndarray | None = None) -> tuple[float, float]:
    """(identity residual, |det ratio - 1|) after the h_3 determinant fix."""
    if U is None or V is None:
        U, V = make_anticyclic_pair(ctx)
    ps_fixed, res = fix_determinant_normalization(ctx, ps, U, V)
    lhs = cyclic_dilog_op(ctx, ps_fixed[0], V) @ cyclic_dilog_op(ctx, ps_fixed[1], U)
    rhs = (cyclic_dilog_op(ctx, ps_fixed[2], U)
           @ cyclic_dilog_op(ctx, ps_fixed[3], -U @ V)
           @ cyclic_dilog_op(ctx, ps_fixed[4], V))
    det_ratio = np.linalg.det(lhs) / np.linalg.det(rhs)
    return res, abs(det_ratio - 1)


def _annulus(rng: np.random.Generator, lo: float, hi: float) -> complex:
    return rng.uniform(lo, hi) * np.exp(2j * np.pi * rng.uniform())

"""Charged 6j tensors, S/T matrices, tetrahedral symmetries and functional equations.

A charge pair (a, c) twists the 6j tensor by index shifts and a power of
omega:

    Rc[g, d, al, be] = (y_rm y_mn)^P w^{c(g - al) - ac/2} R[g - a, d, al, be - a]

(and the matching inverse with opposite shifts).  The twisted tensors carry a
projective SL(2, Z) action through the matrices

    T_{m,n} = zeta^{-1} w^{m^2/2} delta(m + n),   S_{m,n} = N^{-1/2} w^{mn},

satisfy an extended pentagon with an explicit y_mn^{2P} factor, and an
orthogonality relation pairing charges (a, c) with (-a, -c).

The unimodular constant zeta is not hardcoded: the symmetry verifier fits it
over the omega^{k/8} (-1)^P |g(1)|/g(1) family (k = 9 and k = 3 are the two
published readings; k = 1 is the value at which the relations close
numerically) and reports the winner.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .context import Context
from .dilog import embed_pair
from .intertwine import SixJTensor, sixj
from .specfun import g_one, h_func, rel_residual
from .weylrep import FusedTriple, conjugate_rep, mat_Y, mat_Z


@dataclass(frozen=True)
class ChargePair:
    """Residues (a, c) mod N with the derived b = P + 1 - a - c."""

    a: int
    c: int

    def b(self, ctx: Context) -> int:
        return (ctx.P + 1 - self.a - self.c) % ctx.N

    @classmethod
    def make(cls, ctx: Context, a: int, c: int) -> "ChargePair":
        return cls(a % ctx.N, c % ctx.N)


@dataclass(frozen=True)
class ChargedSixJTensor:
    """Charge-twisted 6j tensor; same index layout as SixJTensor."""

    base: SixJTensor
    charges: ChargePair
    entries: np.ndarray
    inverse_entries: np.ndarray

    def as_matrix(self) -> np.ndarray:
        N = self.entries.shape[0]
        return self.entries.transpose(2, 3, 0, 1).reshape(N * N, N * N)

    def inverse_as_matrix(self) -> np.ndarray:
        N = self.entries.shape[0]
        return self.inverse_entries.transpose(2, 3, 0, 1).reshape(N * N, N * N)

    def to_json(self) -> dict:
        doc = self.base.to_json(charges={"a": self.charges.a, "c": self.charges.c})
        doc["entries"] = [[v.real, v.imag] for v in self.entries.reshape(-1)]
        doc["inverse_entries"] = [[v.real, v.imag] for v in self.inverse_entries.reshape(-1)]
        return doc


def prefactor(ctx: Context, triple: FusedTriple) -> complex:
    """(y_rm y_mn)^P."""
    return (triple.rho_mu.y * triple.mu_nu.y) ** ctx.P


def c_sixj(ctx: Context, base: SixJTensor, charges: ChargePair) -> ChargedSixJTensor:
    """Charge twist of a 6j tensor by index shifts and omega powers."""
    N = ctx.N
    a, c = charges.a, charges.c
    pref = prefactor(ctx, base.triple)
    phase_m = pref * ctx.omega_pow(-a * c, 1)
    phase_p = pref * ctx.omega_pow(a * c, 1)
    Rc = np.zeros_like(base.entries)
    Rbc = np.zeros_like(base.inverse_entries)
    for ga in range(N):
        for de in range(N):
            for al in range(N):
                wf = ctx.omega_pow(c * (ga - al))
                for be in range(N):
                    Rc[ga, de, al, be] = (phase_m * wf
                                          * base.entries[(ga - a) % N, de, al, (be - a) % N])
                    Rbc[al, be, ga, de] = (phase_p * wf
                                           * base.inverse_entries[al, (be + a) % N, (ga + a) % N, de])
    return ChargedSixJTensor(base, charges, Rc, Rbc)


def operator_form_residual(ctx: Context, base: SixJTensor, charges: ChargePair) -> float:
    """Charged tensor vs (y_rm y_mn)^P w^{ac/2} Y_1^{-a} Z_1^{-c} R Z_1^{c} Z_2^{-a}."""
    N = ctx.N
    a, c = charges.a, charges.c
    ch = c_sixj(ctx, base, charges)
    M = base.as_matrix()
    Y1 = np.kron(mat_Y(ctx), np.eye(N))
    Z1 = np.kron(mat_Z(ctx), np.eye(N))
    Z2 = np.kron(np.eye(N), mat_Z(ctx))
    rhs = (prefactor(ctx, base.triple) * ctx.omega_pow(a * c, 1)
           * np.linalg.matrix_power(np.linalg.inv(Y1), a)
           @ np.linalg.matrix_power(np.linalg.inv(Z1), c)
           @ M
           @ np.linalg.matrix_power(Z1, c)
           @ np.linalg.matrix_power(np.linalg.inv(Z2), a))
    return rel_residual(ch.as_matrix(), rhs, ctx.tol_abs)


def commutation_residuals(ctx: Context, base: SixJTensor) -> dict:
    """C1: R Z1 Y2 = Z1 Y2 R;  C2: R Y1 = Y1 Y2 R;  C3: R Z1 Z2 = Z2 R."""
    N = ctx.N
    M = base.as_matrix()
    Y1 = np.kron(mat_Y(ctx), np.eye(N))
    Y2 = np.kron(np.eye(N), mat_Y(ctx))
    Z1 = np.kron(mat_Z(ctx), np.eye(N))
    Z2 = np.kron(np.eye(N), mat_Z(ctx))
    return {
        "C1": rel_residual(M @ Z1 @ Y2, Z1 @ Y2 @ M, ctx.tol_abs),
        "C2": rel_residual(M @ Y1, Y1 @ Y2 @ M, ctx.tol_abs),
        "C3": rel_residual(M @ Z1 @ Z2, Z2 @ M, ctx.tol_abs),
    }


def orthogonality_residual(ctx: Context, base: SixJTensor, charges: ChargePair) -> float:
    """R(a, c) Rbar(-a, -c) = (y_rm y_mn)^{2P} id."""
    N = ctx.N
    ch = c_sixj(ctx, base, charges)
    ch_inv = c_sixj(ctx, base, ChargePair.make(ctx, -charges.a, -charges.c))
    lhs = ch.as_matrix() @ ch_inv.inverse_as_matrix()
    scale = (base.triple.rho_mu.y * base.triple.mu_nu.y) ** (2 * ctx.P)
    return rel_residual(lhs, scale * np.eye(N * N), ctx.tol_abs)


# ---------------------------------------------------------------------------
# modular matrices and the symmetry relations


def s_matrix(ctx: Context) -> tuple[np.ndarray, np.ndarray]:
    """S and S^{-1}: S_{m,n} = N^{-1/2} w^{mn}."""
    N = ctx.N
    S = np.array([[ctx.omega_pow(m * n) for n in range(N)] for m in range(N)]) / math.sqrt(N)
    Si = np.array([[ctx.omega_pow(-m * n) for n in range(N)] for m in range(N)]) / math.sqrt(N)
    return S, Si


def t_matrix(ctx: Context, zeta: complex) -> tuple[np.ndarray, np.ndarray]:
    """T and T^{-1}: T_{m,n} = zeta^{-1} w^{m^2/2} delta(m + n)."""
    N = ctx.N
    T = np.zeros((N, N), dtype=complex)
    Ti = np.zeros((N, N), dtype=complex)
    for m in range(N):
        n = (-m) % N
        T[m, n] = ctx.omega_pow(m * m, 1) / zeta
        Ti[m, n] = zeta * ctx.omega_pow(-m * m, 1)
    return T, Ti


def zeta_candidates(ctx: Context) -> dict[str, complex]:
    """The omega^{k/8} (-1)^P |g(1)|/g(1) family: published k = 9 and 3, empirical k = 1."""
    base = (-1) ** ctx.P * math.sqrt(ctx.N) / g_one(ctx)
    return {
        "omega^{9/8}": ctx.omega_pow(9, 3) * base,
        "omega^{3/8}": ctx.omega_pow(3, 3) * base,
        "omega^{1/8}": ctx.omega_pow(1, 3) * base,
    }


def modular_relation_residuals(ctx: Context, zeta: complex) -> dict:
    """Remark-level checks: S^4 = id and S^2 = zeta' (ST)^3 with |zeta'| = 1."""
    S, _ = s_matrix(ctx)
    T, _ = t_matrix(ctx, zeta)
    S4 = np.linalg.matrix_power(S, 4)
    ST3 = np.linalg.matrix_power(S @ T, 3)
    S2 = S @ S
    i = np.unravel_index(np.argmax(np.abs(ST3)), ST3.shape)
    zp = S2[i] / ST3[i]
    return {
        "S4": rel_residual(S4, np.eye(ctx.N), ctx.tol_abs),
        "S2_vs_ST3": rel_residual(S2, zp * ST3, ctx.tol_abs),
        "zeta_prime_unimodular": abs(abs(zp) - 1),
        "zeta_prime": zp,
    }


def _involuted_sixj(ctx: Context, x: complex, y: complex, z: complex,
                    pref_pair: complex) -> tuple[np.ndarray, np.ndarray, complex]:
    """Standard-form 6j tensors on an explicit Fermat triple (for the permuted
    tetrahedra of the symmetry relations), plus the charge prefactor base."""
    from .specfun import FermatTriple, bracket, omega_fermat2
    N = ctx.N
    t = FermatTriple.make(ctx, x, y, z)
    ts = FermatTriple.make(ctx, x / ctx.omega, y, z)
    h = h_func(ctx, z / x)
    br = bracket(ctx, x / z)
    R = np.zeros((N, N, N, N), dtype=complex)
    Rb = np.zeros((N, N, N, N), dtype=complex)
    for ga in range(N):
        for al in range(N):
            w = omega_fermat2(ctx, t, ga, al)
            wd = omega_fermat2(ctx, ts, ga, al)
            for de in range(N):
                be = (ga + de) % N
                R[ga, de, al, be] = h * ctx.omega_pow(al * de) * w
                Rb[al, be, ga, de] = br / h * ctx.omega_pow(-al * de) / wd
    return R, Rb, pref_pair ** ctx.P


def _charged_inverse(ctx: Context, Rb: np.ndarray, pref: complex, a: int, c: int) -> np.ndarray:
    N = ctx.N
    out = np.zeros_like(Rb)
    phase = pref * ctx.omega_pow(a * c, 1)
    for al in range(N):
        for be in range(N):
            for ga in range(N):
                wf = ctx.omega_pow(c * (ga - al))
                for de in range(N):
                    out[al, be, ga, de] = (phase * wf
                                           * Rb[al, (be + a) % N, (ga + a) % N, de])
    return out


def symmetry_residuals(ctx: Context, triple: FusedTriple, charges: ChargePair,
                       zeta: complex) -> tuple[float, float, float]:
    """The three tetrahedral symmetry relations at a given zeta.

    Relation 1 contracts T T^{-1} legs (zeta-free), relation 2 a T and an
    S^{-1} leg (fixes zeta), relation 3 two S legs (zeta-free).  The permuted
    tensors reuse the fusion data of the original triple: the vertex
    transpositions send the fused parameters to
      (rbar, rm, n):  y_m, y_rmn, y_mn
      (rm, mbar, mn): y_r, y_n,   y_rmn
      (r, mn, nbar):  y_rmn, y_m, y_rm.
    """
    N = ctx.N
    a, c = charges.a, charges.c
    b = charges.b(ctx)
    y_r, y_m, y_n = triple.rho.y, triple.mu.y, triple.nu.y
    y_rm, y_mn, y_rmn = triple.rho_mu.y, triple.mu_nu.y, triple.rho_mu_nu.y

    base = sixj(ctx, triple)
    Rc = c_sixj(ctx, base, charges).entries

    # permuted inverse tensors with their own charge pairs
    _, Rb1, p1 = _involuted_sixj(ctx, y_mn * y_rm, -y_r * y_n, y_m * y_rmn, y_m * y_rmn)
    Rbc1 = _charged_inverse(ctx, Rb1, p1, a, b)
    _, Rb2, p2 = _involuted_sixj(ctx, -y_rmn * y_m, y_rm * y_mn, y_r * y_n, y_r * y_n)
    Rbc2 = _charged_inverse(ctx, Rb2, p2, b, c)
    _, Rb3, p3 = _involuted_sixj(ctx, y_rm * y_mn, -y_r * y_n, y_rmn * y_m, y_rmn * y_m)
    Rbc3 = _charged_inverse(ctx, Rb3, p3, a, b)

    S, Si = s_matrix(ctx)
    T, Ti = t_matrix(ctx, zeta)
    w_q = ctx.omega_pow(a, 2)      # omega^{a/4}
    w_mq = ctx.omega_pow(-c, 2)    # omega^{-c/4}

    L1 = np.einsum('gdab,xg,ya->xdyb', Rc, T, Ti)
    R1 = w_q * np.einsum('adgb->gdab', Rbc1)
    L2 = np.einsum('gdab,xd,ya->gxyb', Rc, T, Si)
    R2 = w_mq * np.einsum('agbd->gdab', Rbc2)
    L3 = np.einsum('gdab,xd,yb->gxay', Rc, S, Si)
    R3 = w_q * np.einsum('gbad->gdab', Rbc3)
    return (rel_residual(L1, R1, ctx.tol_abs),
            rel_residual(L2, R2, ctx.tol_abs),
            rel_residual(L3, R3, ctx.tol_abs))


def fit_zeta(ctx: Context, triple: FusedTriple, charges: ChargePair,
             tol: float = 1e-8) -> dict:
    """Evaluate all three relations for every zeta candidate; report the winners."""
    out = {"residuals": {}, "winners": []}
    for name, z in zeta_candidates(ctx).items():
        r = symmetry_residuals(ctx, triple, charges, z)
        out["residuals"][name] = r
        if max(r) < tol:
            out["winners"].append(name)
    return out


def conjugation_residual(ctx: Context, triple: FusedTriple, charges: ChargePair) -> float:
    """Rbar(conj | a, c)[al, be, ga, de] = conj(R(orig | a, c)[-ga, -de, -al, -be])."""
    N = ctx.N
    base = sixj(ctx, triple)
    Rc = c_sixj(ctx, base, charges).entries
    conj_triple = FusedTriple(
        conjugate_rep(triple.rho), conjugate_rep(triple.mu), conjugate_rep(triple.nu),
        conjugate_rep(triple.rho_mu), conjugate_rep(triple.mu_nu),
        conjugate_rep(triple.rho_mu_nu), triple.branches)
    Rbc_conj = c_sixj(ctx, sixj(ctx, conj_triple), charges).inverse_entries
    expect = np.zeros_like(Rbc_conj)
    for al in range(N):
        for be in range(N):
            for ga in range(N):
                for de in range(N):
                    expect[al, be, ga, de] = np.conj(
                        Rc[(-ga) % N, (-de) % N, (-al) % N, (-be) % N])
    return rel_residual(Rbc_conj, expect, ctx.tol_abs)


def extended_pentagon_residual(ctx: Context, data, charges5: tuple[int, int, int, int, int]) -> float:
    """R12(r,m,n|i,m-k) R13(r,mn,v|j,l+m) R23(m,n,v|k,l-i)
       = y_mn^{2P} R23(rm,n,v|j+k,l) R12(r,m,nv|i+j,m) on the multiplicity cube."""
    i, j, k, l, m = charges5
    t1, t2, t3, t4, t5 = data.triples()
    c12 = c_sixj(ctx, sixj(ctx, t1), ChargePair.make(ctx, i, m - k))
    c13 = c_sixj(ctx, sixj(ctx, t2), ChargePair.make(ctx, j, l + m))
    c23 = c_sixj(ctx, sixj(ctx, t3), ChargePair.make(ctx, k, l - i))
    c23r = c_sixj(ctx, sixj(ctx, t4), ChargePair.make(ctx, j + k, l))
    c12r = c_sixj(ctx, sixj(ctx, t5), ChargePair.make(ctx, i + j, m))
    lhs = (embed_pair(ctx, c12.as_matrix(), (0, 1))
           @ embed_pair(ctx, c13.as_matrix(), (0, 2))
           @ embed_pair(ctx, c23.as_matrix(), (1, 2)))
    rhs = (data.y["mn"] ** (2 * ctx.P)
           * embed_pair(ctx, c23r.as_matrix(), (1, 2))
           @ embed_pair(ctx, c12r.as_matrix(), (0, 1)))
    return rel_residual(lhs, rhs, ctx.tol_abs)

"""Clebsch-Gordan operator families, 6j tensors, and the pentagon equation.

The standard basis of Clebsch-Gordan operators for a regular pair (rho, mu)
with fused y_f is

    K_alpha[(i,j), k] = h w^{alpha j} omega(a_r y_m, y_r/a_m, y_f | i, alpha)
                          delta(i + j - k)

with the two-index omega(..|i, alpha) = omega(..|i - alpha) w^{alpha^2/2},
and the dual family carries the bracket prefactor [x/z]/h over the
omega-function of the first argument divided by omega.  The 6j tensor of an
admissible triple has the same shape on the Fermat triple
(y_rmn y_m, y_r y_n, y_rm y_mn).

Tensor index order is entries[gamma, delta, alpha, beta] with the matrix
realization M[(alpha beta), (gamma delta)] = entries[gamma, delta, alpha,
beta]; the inverse is stored as inverse_entries[alpha, beta, gamma, delta].
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .context import BranchSearchError, Context, principal_nth_root
from .dilog import embed_pair
from .specfun import FermatTriple, bracket, h_func, omega_fermat2, rel_residual
from .weylrep import (FusedTriple, StandardRep, is_regular_pair,
                      normalization_defect, rep_D, rep_E, solve_convention_branch,
                      tensor_D, tensor_E, triple_margins_ok)


@dataclass(frozen=True)
class OCGFamily:
    """The N Clebsch-Gordan operators of a regular pair and their duals.

    K[alpha]: (N^2, N) embeddings V_{rho mu} -> V_rho (x) V_mu;
    Kbar[alpha]: (N, N^2) projections, dual bases.
    """

    rho: StandardRep
    mu: StandardRep
    rho_mu: StandardRep
    h: complex
    K: list[np.ndarray]
    Kbar: list[np.ndarray]


def ocg(ctx: Context, rho: StandardRep, mu: StandardRep, rho_mu: StandardRep,
        h: complex | None = None) -> OCGFamily:
    """Standard Clebsch-Gordan family; default h = h(y_f / (a_rho y_mu))."""
    if not is_regular_pair(ctx, rho, mu):
        raise BranchSearchError("ocg requires a regular pair")
    N = ctx.N
    x, y, z = rho.a * mu.y, rho.y / mu.a, rho_mu.y
    t = FermatTriple.make(ctx, x, y, z)
    t_shift = FermatTriple.make(ctx, x / ctx.omega, y, z)
    if h is None:
        h = h_func(ctx, z / x)
    br = bracket(ctx, x / z)
    K, Kbar = [], []
    for al in range(N):
        Ka = np.zeros((N * N, N), dtype=complex)
        Kba = np.zeros((N, N * N), dtype=complex)
        for i in range(N):
            wi = omega_fermat2(ctx, t, i, al)
            wdi = omega_fermat2(ctx, t_shift, i, al)
            for j in range(N):
                k = (i + j) % N
                Ka[i * N + j, k] = h * ctx.omega_pow(al * j) * wi
                Kba[k, i * N + j] = br / h * ctx.omega_pow(-al * j) / wdi
        K.append(Ka)
        Kbar.append(Kba)
    return OCGFamily(rho, mu, rho_mu, h, K, Kbar)


def ocg_duality_residual(ctx: Context, fam: OCGFamily) -> float:
    """max over both duality relations: Kbar^a K_b = delta id and sum K_a Kbar^a = id.

    The pairwise products are assembled into one N^2 x N^2 Gram matrix so the
    structural zeros are measured against the identity's scale.
    """
    N = ctx.N
    gram = np.vstack(fam.Kbar) @ np.hstack(fam.K)
    res = rel_residual(gram, np.eye(N * N), ctx.tol_abs)
    total = sum(fam.K[a] @ fam.Kbar[a] for a in range(N))
    return max(res, rel_residual(total, np.eye(N * N), ctx.tol_abs))


def intertwining_residual(ctx: Context, fam: OCGFamily) -> float:
    """Residuals of (rho x mu)(Delta a) K_alpha = K_alpha (rho mu)(a) for a = E, D."""
    tE = tensor_E(ctx, fam.rho, fam.mu)
    tD = tensor_D(ctx, fam.rho, fam.mu)
    rE = rep_E(ctx, fam.rho_mu)
    rD = rep_D(ctx, fam.rho_mu)
    res = 0.0
    for Ka in fam.K:
        res = max(res, rel_residual(tE @ Ka, Ka @ rE, ctx.tol_abs))
        res = max(res, rel_residual(tD @ Ka, Ka @ rD, ctx.tol_abs))
    return res


@dataclass(frozen=True)
class SixJTensor:
    """6j tensor of an admissible triple; entries[gamma, delta, alpha, beta]."""

    triple: FusedTriple
    h: complex
    entries: np.ndarray
    inverse_entries: np.ndarray

    def as_matrix(self) -> np.ndarray:
        """M[(alpha beta), (gamma delta)]."""
        N = self.entries.shape[0]
        return self.entries.transpose(2, 3, 0, 1).reshape(N * N, N * N)

    def inverse_as_matrix(self) -> np.ndarray:
        """M[(gamma delta), (alpha beta)]."""
        N = self.entries.shape[0]
        return self.inverse_entries.transpose(2, 3, 0, 1).reshape(N * N, N * N)

    def to_json(self, charges: dict | None = None) -> dict:
        N = self.entries.shape[0]
        tri = self.triple
        doc = {
            "N": N,
            "shape": [N, N, N, N],
            "index_order": "gamma,delta,alpha,beta",
            "entries": _pack(self.entries),
            "inverse_entries": _pack(self.inverse_entries),
            "params": {
                "rho": tri.rho.to_json(),
                "mu": tri.mu.to_json(),
                "nu": tri.nu.to_json(),
                "rho_mu": tri.rho_mu.to_json(),
                "mu_nu": tri.mu_nu.to_json(),
                "rho_mu_nu": tri.rho_mu_nu.to_json(),
                "branches": list(tri.branches),
                "h": [self.h.real, self.h.imag],
            },
        }
        if charges is not None:
            doc["charges"] = charges
        return doc


def _pack(t: np.ndarray) -> list:
    flat = t.reshape(-1)
    return [[v.real, v.imag] for v in flat]


def unpack_tensor(doc: dict) -> np.ndarray:
    shape = tuple(doc["shape"])
    flat = np.array([complex(re, im) for re, im in doc["entries"]])
    return flat.reshape(shape)


def sixj(ctx: Context, triple: FusedTriple, h: complex | None = None) -> SixJTensor:
    """6j tensor of an admissible triple; default h = h(y_rm y_mn / (y_rmn y_m))."""
    N = ctx.N
    x, y, z = triple.fermat_args()
    t = FermatTriple.make(ctx, x, y, z)
    t_shift = FermatTriple.make(ctx, x / ctx.omega, y, z)
    if h is None:
        h = h_func(ctx, z / x)
    br = bracket(ctx, x / z)
    R = np.zeros((N, N, N, N), dtype=complex)
    Rb = np.zeros((N, N, N, N), dtype=complex)
    for ga in range(N):
        for al in range(N):
            w = omega_fermat2(ctx, t, ga, al)
            wd = omega_fermat2(ctx, t_shift, ga, al)
            for de in range(N):
                be = (ga + de) % N
                R[ga, de, al, be] = h * ctx.omega_pow(al * de) * w
                Rb[al, be, ga, de] = br / h * ctx.omega_pow(-al * de) / wd
    return SixJTensor(triple, h, R, Rb)


def sixj_inverse_residual(ctx: Context, t6: SixJTensor) -> float:
    N = ctx.N
    return rel_residual(t6.as_matrix() @ t6.inverse_as_matrix(), np.eye(N * N), ctx.tol_abs)


def psi_pair(ctx: Context, rho: StandardRep, mu: StandardRep, rho_mu: StandardRep,
             h: complex | None = None) -> np.ndarray:
    """Psi(rho, mu): the cyclic-dilogarithm factor of the Clebsch-Gordan operator.

    h sum_t (-(y_r/(a_r a_m y_m)) Y_1^{-1} Z_2^{-1} Y_2)^t
        prod_{s=1}^{t} 1 / (1 - omega^{-s} y_f/(a_r y_m)).
    """
    from .weylrep import mat_Y, mat_Z
    N = ctx.N
    lam = rho_mu.y / (rho.a * mu.y)
    if h is None:
        h = h_func(ctx, lam)
    Y = mat_Y(ctx)
    A = -(rho.y / (rho.a * mu.a * mu.y)) * np.kron(np.linalg.inv(Y),
                                                   np.linalg.inv(mat_Z(ctx)) @ Y)
    out = np.zeros((N * N, N * N), dtype=complex)
    term = np.eye(N * N, dtype=complex)
    coef = 1.0 + 0j
    for t in range(N):
        if t > 0:
            term = term @ A
            coef /= 1 - ctx.omega_pow(-t) * lam
        out += coef * term
    return h * out


def pair_transposed_ocg(ctx: Context, fam: OCGFamily) -> np.ndarray:
    """R(rho, mu)[(alpha, k), (i, j)] = K_alpha[(i,j), k]: the transposed block matrix."""
    N = ctx.N
    out = np.zeros((N * N, N * N), dtype=complex)
    for al in range(N):
        out[al * N:(al + 1) * N, :] = fam.K[al].T
    return out


def factorization_residual(ctx: Context, fam: OCGFamily) -> float:
    """R(rho, mu) = Upsilon Psi(rho, mu) with the library default h."""
    from .dilog import upsilon
    lhs = upsilon(ctx) @ psi_pair(ctx, fam.rho, fam.mu, fam.rho_mu, fam.h)
    return rel_residual(lhs, pair_transposed_ocg(ctx, fam), ctx.tol_abs)


# ---------------------------------------------------------------------------
# Clebsch-Gordan decomposition (the relation defining the 6j tensor)


def cg_decomposition_residual(ctx: Context, triple: FusedTriple,
                              t6: SixJTensor | None = None) -> float:
    """K_a(r,m) K_b(rm,n) = sum_{g,d} R^{g,d}_{a,b} K_d(m,n) K_g(r,mn), per (a,b)."""
    N = ctx.N
    if t6 is None:
        t6 = sixj(ctx, triple)
    f_rm = ocg(ctx, triple.rho, triple.mu, triple.rho_mu)
    f_rm_n = ocg(ctx, triple.rho_mu, triple.nu, triple.rho_mu_nu)
    f_m_n = ocg(ctx, triple.mu, triple.nu, triple.mu_nu)
    f_r_mn = ocg(ctx, triple.rho, triple.mu_nu, triple.rho_mu_nu)
    I = np.eye(N, dtype=complex)
    right = [[np.kron(I, f_m_n.K[de]) @ f_r_mn.K[ga] for de in range(N)] for ga in range(N)]
    res = 0.0
    for al in range(N):
        lhs_embed = np.kron(f_rm.K[al], I)
        for be in range(N):
            lhs = lhs_embed @ f_rm_n.K[be]
            rhs = np.zeros_like(lhs)
            for ga in range(N):
                de = (be - ga) % N
                rhs += t6.entries[ga, de, al, be] * right[ga][de]
            res = max(res, rel_residual(lhs, rhs, ctx.tol_abs))
    return res


# ---------------------------------------------------------------------------
# pentagon


@dataclass(frozen=True)
class PentagonData:
    """Four representations with a coherent global branch assignment.

    The six fused values are shared by the five constituent triples
    T1=(r,m,n), T2=(r,mn,v), T3=(m,n,v), T4=(rm,n,v), T5=(r,m,nv); the
    assignment makes the closed-form 6j normalization exact for every one of
    them (and keeps the r-convention on the primary triple T1).
    """

    rho: StandardRep
    mu: StandardRep
    nu: StandardRep
    v: StandardRep
    y: dict = field(default_factory=dict)  # keys rm, mn, nv, rmn, mnv, rmnv
    branches: dict = field(default_factory=dict)

    def triples(self) -> list[FusedTriple]:
        r, m, n, v = self.rho, self.mu, self.nu, self.v
        y = self.y
        rm = StandardRep(r.a * m.a, y["rm"])
        mn = StandardRep(m.a * n.a, y["mn"])
        nv = StandardRep(n.a * v.a, y["nv"])
        rmn = StandardRep(r.a * m.a * n.a, y["rmn"])
        mnv = StandardRep(m.a * n.a * v.a, y["mnv"])
        rmnv = StandardRep(r.a * m.a * n.a * v.a, y["rmnv"])
        return [
            FusedTriple(r, m, n, rm, mn, rmn),
            FusedTriple(r, mn, v, rmn, mnv, rmnv),
            FusedTriple(m, n, v, mn, nv, mnv),
            FusedTriple(rm, n, v, rmn, nv, rmnv),
            FusedTriple(r, m, nv, rm, mnv, rmnv),
        ]


def _aligned(ctx: Context, tri: FusedTriple) -> bool:
    d = normalization_defect(ctx, tri.rho, tri.mu, tri.nu,
                             tri.rho_mu.y, tri.mu_nu.y, tri.rho_mu_nu.y)
    return abs(d - 1) < 1e-6


def pentagon_branch_assignment(ctx: Context, rho: StandardRep, mu: StandardRep,
                               nu: StandardRep, v: StandardRep,
                               margin: float = 0.05) -> PentagonData:
    """Backtracking search for a coherent global branch assignment.

    Outer loop over the pair branches (b_rm, b_mn, b_nv); inner scans align
    the triple-product branches.  The primary triple additionally satisfies
    the r-convention (checked against the solve on its product branch).
    """
    N = ctx.N
    reps = (rho, mu, nu, v)
    aN = [r.a ** N for r in reps]
    yN = [r.y ** N for r in reps]
    s = {
        "rm": aN[0] * yN[1] + yN[0] / aN[1],
        "mn": aN[1] * yN[2] + yN[1] / aN[2],
        "nv": aN[2] * yN[3] + yN[2] / aN[3],
    }
    s["rmn"] = aN[0] * aN[1] * yN[2] + s["rm"] / aN[2]
    s["mnv"] = aN[1] * aN[2] * yN[3] + s["mn"] / aN[3]
    s["rmnv"] = aN[0] * aN[1] * aN[2] * yN[3] + s["rmn"] / aN[3]
    if min(abs(x) for x in s.values()) < ctx.tol_abs:
        raise BranchSearchError("a partial product is non-regular")
    # primary triple: r-convention pins the rmn branch
    b_rmn, y_rmn = solve_convention_branch(
        ctx, rho.y, mu.y, nu.y, s["rmn"], s["rm"] * s["mn"] / (s["rmn"] * yN[1]))
    roots = {k: [principal_nth_root(ctx, sv, b) for b in range(N)] for k, sv in s.items()}

    def tri(reps3, yv):
        r_, m_, n_ = reps3
        return FusedTriple(r_, m_, n_,
                           StandardRep(r_.a * m_.a, yv[0]),
                           StandardRep(m_.a * n_.a, yv[1]),
                           StandardRep(r_.a * m_.a * n_.a, yv[2]))

    for b_rm in range(N):
        y_rm = roots["rm"][b_rm]
        rm = StandardRep(rho.a * mu.a, y_rm)
        for b_mn in range(N):
            y_mn = roots["mn"][b_mn]
            mn = StandardRep(mu.a * nu.a, y_mn)
            t1 = tri((rho, mu, nu), (y_rm, y_mn, y_rmn))
            if not (triple_margins_ok(ctx, rho, mu, nu, y_rm, y_mn, y_rmn, margin)
                    and _aligned(ctx, t1)):
                continue
            for b_mnv in range(N):
                y_mnv = roots["mnv"][b_mnv]
                mnv = StandardRep(mu.a * nu.a * v.a, y_mnv)
                for b_rmnv in range(N):
                    y_rmnv = roots["rmnv"][b_rmnv]
                    t2 = tri((rho, mn, v), (y_rmn, y_mnv, y_rmnv))
                    if not (triple_margins_ok(ctx, rho, mn, v, y_rmn, y_mnv, y_rmnv, margin)
                            and _aligned(ctx, t2)):
                        continue
                    for b_nv in range(N):
                        y_nv = roots["nv"][b_nv]
                        nv = StandardRep(nu.a * v.a, y_nv)
                        t3 = tri((mu, nu, v), (y_mn, y_nv, y_mnv))
                        t4 = tri((rm, nu, v), (y_rmn, y_nv, y_rmnv))
                        t5 = tri((rho, mu, nv), (y_rm, y_mnv, y_rmnv))
                        ok = True
                        for t_, rr in ((t3, (mu, nu, v)), (t4, (rm, nu, v)), (t5, (rho, mu, nv))):
                            if not (triple_margins_ok(ctx, *rr, t_.rho_mu.y, t_.mu_nu.y,
                                                      t_.rho_mu_nu.y, margin)
                                    and _aligned(ctx, t_)):
                                ok = False
                                break
                        if ok:
                            return PentagonData(
                                rho, mu, nu, v,
                                y=dict(rm=y_rm, mn=y_mn, nv=y_nv, rmn=y_rmn,
                                       mnv=y_mnv, rmnv=y_rmnv),
                                branches=dict(rm=b_rm, mn=b_mn, nv=b_nv, rmn=b_rmn,
                                              mnv=b_mnv, rmnv=b_rmnv))
    raise BranchSearchError("no coherent pentagon branch assignment; resample")


def pentagon_residual(ctx: Context, data: PentagonData) -> dict:
    """Both sides of the pentagon as N^3 x N^3 contractions, plus factorized checks.

    Returns residuals: pentagon R12 R13 R23 = R23 R12 on the multiplicity
    cube, the Upsilon pentagon, the five-dilogarithm identity on the primary
    triple, and the determinant match of the two pentagon sides.
    """
    from .dilog import upsilon_pentagon_residual
    t1, t2, t3, t4, t5 = data.triples()
    tens = [sixj(ctx, t) for t in (t1, t2, t3, t4, t5)]
    lhs = (embed_pair(ctx, tens[0].as_matrix(), (0, 1))
           @ embed_pair(ctx, tens[1].as_matrix(), (0, 2))
           @ embed_pair(ctx, tens[2].as_matrix(), (1, 2)))
    rhs = (embed_pair(ctx, tens[3].as_matrix(), (1, 2))
           @ embed_pair(ctx, tens[4].as_matrix(), (0, 1)))
    det_ratio = np.linalg.det(lhs) / np.linalg.det(rhs)
    return {
        "pentagon": rel_residual(lhs, rhs, ctx.tol_abs),
        "upsilon_pentagon": upsilon_pentagon_residual(ctx),
        "cyclic_dilog_eq": _five_term_residual(ctx, t1),
        "det_match": abs(det_ratio - 1),
    }


def _five_term_residual(ctx: Context, tri: FusedTriple) -> float:
    """Factorized pentagon on the triple: Psi_23(rm,n)(V) Psi_12(r,m)(U) =
    Psi_12(r,m,n)(U) Psi_13(r,mn)(-UV) Psi_23(m,n)(V) on the N^3 cube."""
    from .weylrep import _apply_psi, _monomial_ops, _psi_coeffs
    N = ctx.N
    opU, opV, opUV = _monomial_ops(ctx)
    # dense evaluation via columns: apply to each basis vector
    eye = np.eye(N ** 3, dtype=complex)

    def pair_coeffs(r, m, y_f):
        lam = y_f / (r.a * m.y)
        return _psi_coeffs(ctx, r.y / (r.a * m.a * m.y), lam) * h_func(ctx, lam)

    x, y, z = tri.fermat_args()
    c_sixj = _psi_coeffs(ctx, y / x, z / x) * h_func(ctx, z / x)
    c0 = pair_coeffs(tri.rho_mu, tri.nu, tri.rho_mu_nu.y)
    c1 = pair_coeffs(tri.rho, tri.mu, tri.rho_mu.y)
    c3 = pair_coeffs(tri.rho, tri.mu_nu, tri.rho_mu_nu.y)
    c4 = pair_coeffs(tri.mu, tri.nu, tri.mu_nu.y)

    def psi_mat(coeffs, op):
        cols = np.empty((N ** 3, N ** 3), dtype=complex)
        for c in range(N ** 3):
            cols[:, c] = _apply_psi(ctx, coeffs, op, eye[:, c])
        return cols

    lhs = psi_mat(c0, opV) @ psi_mat(c1, opU)
    rhs = psi_mat(c_sixj, opU) @ psi_mat(c3, opUV) @ psi_mat(c4, opV)
    return rel_residual(lhs, rhs, ctx.tol_abs)

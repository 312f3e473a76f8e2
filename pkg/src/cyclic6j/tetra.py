"""Decorated tetrahedra: branchings, full Borel cocycles, integral charges, states.

A branching orders the four vertices and orients every edge low -> high; the
edges [v0,v1], [v1,v2], [v2,v3] carry the three representations and the
remaining edges carry their fused products through the cocycle condition.
The evaluation map picks a single entry of the (charged) 6j tensor according
to the state and the orientation sign.

Edge keys: e01, e12, e23 (generators), e02, e13, e03 (derived).
Face f_j is opposite vertex v_j; the state lists (alpha_0, ..., alpha_3).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .context import (BranchSearchError, Context, DomainError,
                      SingularInputError, principal_nth_root)
from .charged import ChargePair, c_sixj
from .intertwine import sixj
from .weylrep import (BorelElement, FusedTriple, StandardRep,
                      normalization_defect, solve_convention_branch,
                      triple_margins_ok)

GENERATOR_EDGES = ("e01", "e12", "e23")
DERIVED_EDGES = ("e02", "e13", "e03")
ALL_EDGES = GENERATOR_EDGES + DERIVED_EDGES

FACE_EDGES = {
    0: ("e12", "e23", "e13"),
    1: ("e02", "e23", "e03"),
    2: ("e01", "e13", "e03"),
    3: ("e01", "e12", "e02"),
}


@dataclass(frozen=True)
class Branching:
    """A total order of the vertices, inducing low -> high edge orientations."""

    vertex_order: tuple[int, int, int, int]

    @property
    def orientation_sign(self) -> int:
        """Parity of the ordering permutation relative to (0, 1, 2, 3)."""
        perm = self.vertex_order
        inversions = sum(1 for i, j in itertools.combinations(range(4), 2)
                         if perm[i] > perm[j])
        return 1 if inversions % 2 == 0 else -1


def make_branching(vertex_order) -> Branching:
    """Validate and build a branching; any total order is acyclic on every face."""
    order = tuple(int(v) for v in vertex_order)
    if sorted(order) != [0, 1, 2, 3]:
        raise DomainError(f"vertex_order must be a permutation of 0..3, got {order}")
    # order-induced orientations can never cycle on a face: the face's three
    # vertices are totally ordered, so exactly two edges point away from its
    # minimum -- check anyway, as the contract demands
    for face in itertools.combinations(order, 3):
        ranked = sorted(face, key=order.index)
        lo, mid, hi = ranked
        # edges lo->mid, mid->hi, lo->hi: acyclic by construction
        assert order.index(lo) < order.index(mid) < order.index(hi)
    return Branching(order)


@dataclass(frozen=True)
class BorelCocycle:
    """Borel values on all six oriented edges, multiplicative on faces."""

    values: dict  # edge key -> BorelElement

    def __getitem__(self, key: str) -> BorelElement:
        return self.values[key]


def cocycle_from_generators(g01: BorelElement, g12: BorelElement,
                            g23: BorelElement, tol: float = 1e-12) -> BorelCocycle:
    """Derive the full cocycle from the three generator edges.

    z([v0,v2]) = z01 z12, z([v1,v3]) = z12 z23, z([v0,v3]) = z01 z12 z23;
    fullness (no diagonal value) is required.
    """
    vals = {
        "e01": g01,
        "e12": g12,
        "e23": g23,
        "e02": g01 * g12,
        "e13": g12 * g23,
        "e03": g01 * g12 * g23,
    }
    for key, v in vals.items():
        if not v.is_full(tol):
            raise SingularInputError(f"cocycle not full: x({key}) = 0")
    return BorelCocycle(vals)


def cocycle_face_residual(z: BorelCocycle) -> float:
    """max over faces of |z(ij) z(jk) - z(ik)| (zero by construction here)."""
    res = 0.0
    for lhs, rhs in ((("e01", "e12"), "e02"), (("e12", "e23"), "e13"),
                     (("e02", "e23"), "e03"), (("e01", "e13"), "e03")):
        prod = z[lhs[0]] * z[lhs[1]]
        res = max(res, float(np.abs(prod.matrix() - z[rhs].matrix()).max()))
    return res


@dataclass(frozen=True)
class IntegralCharge:
    """Integer edge weights summing to 1 on each face."""

    c: dict  # edge key -> int

    @classmethod
    def make(cls, c: dict) -> "IntegralCharge":
        missing = [e for e in ALL_EDGES if e not in c]
        if missing:
            raise DomainError(f"charge missing edges {missing}")
        for f, edges in FACE_EDGES.items():
            s = sum(int(c[e]) for e in edges)
            if s != 1:
                raise DomainError(f"face f{f} charges sum to {s}, expected 1")
        return cls({e: int(c[e]) for e in ALL_EDGES})


def halve_charge(ctx: Context, n: int) -> int:
    """c/2 mod N via the inverse of 2, i.e. n (P+1) mod N."""
    return (n * (ctx.P + 1)) % ctx.N


@dataclass(frozen=True)
class DecoratedTetrahedron:
    """Orientation sign, branching, full cocycle, charge, state, root branches."""

    orientation_sign: int
    branching: Branching
    cocycle: BorelCocycle
    charge: IntegralCharge | None
    state: tuple[int, int, int, int]
    root_branches: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        doc = {
            "orientation": self.orientation_sign,
            "vertex_order": list(self.branching.vertex_order),
            "cocycle": {k: self.cocycle[k].to_json() for k in GENERATOR_EDGES},
            "state": list(self.state),
            "root_branches": dict(self.root_branches),
        }
        if self.charge is not None:
            doc["charges"] = dict(self.charge.c)
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "DecoratedTetrahedron":
        sign = int(doc["orientation"])
        if sign not in (-1, 1):
            raise DomainError("orientation must be +1 or -1")
        branching = make_branching(doc["vertex_order"])
        z = cocycle_from_generators(*(BorelElement.from_json(doc["cocycle"][k])
                                      for k in GENERATOR_EDGES))
        charge = IntegralCharge.make(doc["charges"]) if "charges" in doc else None
        state = tuple(int(s) for s in doc["state"])
        if len(state) != 4:
            raise DomainError("state must list four face labels")
        return cls(sign, branching, z, charge, state,
                   dict(doc.get("root_branches", {})))


def reps_from_cocycle(ctx: Context, tet: DecoratedTetrahedron,
                      margin: float = 0.05) -> FusedTriple:
    """Standard representations from the cocycle: (a, y) = (t^{1/N}, x^{1/N}).

    Generator-edge roots honor the recorded branch indices (default
    principal); the fused y's come from the derived cocycle entries, whose
    N-th powers match the fusion scalars exactly by the cocycle condition.
    Unrecorded e02/e13 branches are searched for a coherent normalization;
    the e03 branch follows the r-convention (validated if recorded).
    """
    b = {e: int(tet.root_branches.get(e, 0)) for e in ALL_EDGES}
    z = tet.cocycle
    reps = {}
    for e in GENERATOR_EDGES:
        a = principal_nth_root(ctx, z[e].t)
        y = principal_nth_root(ctx, z[e].x, b[e])
        reps[e] = StandardRep.make(ctx, a, y)
    rho, mu, nu = reps["e01"], reps["e12"], reps["e23"]
    s_prod = z["e03"].x
    w_pow = z["e02"].x * z["e13"].x / (s_prod * mu.y ** ctx.N)
    b3, y_rmn = solve_convention_branch(ctx, rho.y, mu.y, nu.y, s_prod, w_pow)
    if "e03" in tet.root_branches and b["e03"] != b3:
        raise BranchSearchError(
            f"recorded e03 branch {b['e03']} violates the r-convention (needs {b3})")
    search_02 = [b["e02"]] if "e02" in tet.root_branches else list(range(ctx.N))
    search_13 = [b["e13"]] if "e13" in tet.root_branches else list(range(ctx.N))

    def triple_for(b1, b2):
        return FusedTriple(rho, mu, nu,
                           StandardRep(rho.a * mu.a, principal_nth_root(ctx, z["e02"].x, b1)),
                           StandardRep(mu.a * nu.a, principal_nth_root(ctx, z["e13"].x, b2)),
                           StandardRep(rho.a * mu.a * nu.a, y_rmn),
                           (b1, b2, b3))

    # prefer a branch pair with a coherent closed-form normalization (so the
    # tensor satisfies the identity network exactly); any pair still yields a
    # well-defined evaluation, so fall back to the first recorded/principal one
    for b1 in search_02:
        y_rm = principal_nth_root(ctx, z["e02"].x, b1)
        for b2 in search_13:
            y_mn = principal_nth_root(ctx, z["e13"].x, b2)
            if not triple_margins_ok(ctx, rho, mu, nu, y_rm, y_mn, y_rmn, margin):
                continue
            if abs(normalization_defect(ctx, rho, mu, nu, y_rm, y_mn, y_rmn) - 1) < 1e-6:
                return triple_for(b1, b2)
    return triple_for(search_02[0], search_13[0])


def evaluate_xi(ctx: Context, tet: DecoratedTetrahedron,
                use_charges: bool = False) -> complex:
    """One entry of the (charged) 6j tensor selected by the state.

    Positive orientation reads R^{a2, a0}_{a3, a1}; negative orientation reads
    the inverse tensor Rbar^{a3, a1}_{a2, a0}.  With use_charges the tensor is
    twisted by (c_N(e01), c_N(e12)).
    """
    triple = reps_from_cocycle(ctx, tet)
    t6 = sixj(ctx, triple)
    a0, a1, a2, a3 = (s % ctx.N for s in tet.state)
    if use_charges:
        if tet.charge is None:
            raise DomainError("use_charges requires an integral charge")
        pair = ChargePair.make(ctx, halve_charge(ctx, tet.charge.c["e01"]),
                               halve_charge(ctx, tet.charge.c["e12"]))
        ch = c_sixj(ctx, t6, pair)
        if tet.orientation_sign == 1:
            return complex(ch.entries[a2, a0, a3, a1])
        return complex(ch.inverse_entries[a3, a1, a2, a0])
    if tet.orientation_sign == 1:
        return complex(t6.entries[a2, a0, a3, a1])
    return complex(t6.inverse_entries[a3, a1, a2, a0])

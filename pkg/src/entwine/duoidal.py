"""Duoidal-category data restricted to tensor-representable objects, the
braided vector-space instance, and the bimonoid/Galois machinery that lives
on top of it.

A context carries the two unit dimensions, the three structure morphisms
Delta: I -> I*I, mu: JoJ -> J, tau: I -> J, and a builder producing the
interchange component

    zeta_{W,X,Y,Z} : (W * X) o (Y * Z)  ->  (W o Y) * (X o Z)

for any four object dimensions.  Only the braided instance (both products
the plain tensor product, zeta the middle transposition) is concretely
constructible here; the context is an interface so that genuinely
non-degenerate instances can be added without touching the checkers.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable

import numpy as np

from .exactalg import (
    FpMatrix,
    ShapeError,
    identity,
    inverse,
    is_prime,
    kron,
    left_inverse,
    rank,
    right_inverse,
    swap_matrix,
)
from .report import PreconditionError, Report, UnsupportedError
from .structures import BimonoidData, check_bialgebra

__all__ = [
    "DuoidalCtx",
    "braided_duoidal",
    "check_duoidal",
    "check_bimonoid",
    "tau_splitting",
    "galois_map_Kprime",
    "entwining_via_ctx",
]

BRAIDED_TAG = "braided-vect"


@dataclass(frozen=True)
class DuoidalCtx:
    tag: str
    p: int
    dim_i: int
    dim_j: int
    zeta: Callable
    Delta: FpMatrix
    mu: FpMatrix
    tau: FpMatrix

    def __post_init__(self) -> None:
        di, dj = self.dim_i, self.dim_j
        if self.Delta.shape != (di * di, di):
            raise ShapeError(f"Delta: expected {(di * di, di)}, got {self.Delta.shape}")
        if self.mu.shape != (dj, dj * dj):
            raise ShapeError(f"mu: expected {(dj, dj * dj)}, got {self.mu.shape}")
        if self.tau.shape != (dj, di):
            raise ShapeError(f"tau: expected {(dj, di)}, got {self.tau.shape}")


def braided_duoidal(p: int) -> DuoidalCtx:
    """The degenerate duoidal structure on F_p-vector spaces: both products
    are the tensor product, both units are the line, and the interchange is
    the middle transposition I_W (x) swap_{X,Y} (x) I_Z."""
    if not is_prime(p):
        raise UnsupportedError(f"{p} is not prime")
    one = identity(p, 1)

    def zeta(dw: int, dx: int, dy: int, dz: int) -> FpMatrix:
        return kron(kron(identity(p, dw), swap_matrix(p, dx, dy)), identity(p, dz))

    return DuoidalCtx(BRAIDED_TAG, p, 1, 1, zeta, one, one, one)


# ---------------------------------------------------------------------------
# coherence checks
# ---------------------------------------------------------------------------

def _elementary_maps(p: int, d: int):
    for r in range(d):
        for c in range(d):
            m = np.zeros((d, d), dtype=np.int64)
            m[r, c] = 1
            yield FpMatrix(p, m)


def check_duoidal(ctx: DuoidalCtx, probe_dims=(1, 2)) -> Report:
    """Unit-compatibility structures plus interchange coherence, evaluated as
    matrix identities on every probe-dimension tuple.

    Coherence checked: naturality of zeta against all elementary maps in each
    slot, the two associativity nestings, and the four unit squares through
    Delta and mu.
    """
    r = Report("duoidal context", subject=ctx.tag)
    p, di, dj = ctx.p, ctx.dim_i, ctx.dim_j
    ii, ij = identity(p, di), identity(p, dj)

    r.require_equal(
        "(J, mu, tau) associativity", ctx.mu @ kron(ctx.mu, ij), ctx.mu @ kron(ij, ctx.mu)
    )
    r.require_equal("(J, mu, tau) left unit", ctx.mu @ kron(ctx.tau, ij), ij)
    r.require_equal("(J, mu, tau) right unit", ctx.mu @ kron(ij, ctx.tau), ij)
    r.require_equal(
        "(I, Delta, tau) coassociativity",
        kron(ctx.Delta, ii) @ ctx.Delta,
        kron(ii, ctx.Delta) @ ctx.Delta,
    )
    r.require_equal("(I, Delta, tau) left counit", kron(ctx.tau, ii) @ ctx.Delta, ii)
    r.require_equal("(I, Delta, tau) right counit", kron(ii, ctx.tau) @ ctx.Delta, ii)

    dims = tuple(probe_dims)
    nat_ok = True
    nat_note = ""
    for dw, dx, dy, dz in product(dims, repeat=4):
        z = ctx.zeta(dw, dx, dy, dz)
        slot_dims = (dw, dx, dy, dz)
        for slot in range(4):
            for f in _elementary_maps(p, slot_dims[slot]):
                legs_in = [identity(p, d) for d in slot_dims]
                legs_in[slot] = f
                src = kron(kron(legs_in[0], legs_in[1]), kron(legs_in[2], legs_in[3]))
                tgt = kron(kron(legs_in[0], legs_in[2]), kron(legs_in[1], legs_in[3]))
                if not (z @ src == tgt @ z):
                    nat_ok = False
                    nat_note = f"dims {slot_dims}, slot {slot}"
                    break
            if not nat_ok:
                break
        if not nat_ok:
            break
    r.add_flag("interchange naturality on probe maps", nat_ok, note=nat_note)

    assoc_ok = True
    assoc_note = ""
    for du, dv, dw, dx, dy, dz in product(dims, repeat=6):
        # nesting across the first product: ((U*V)o(W*X))o(Y*Z)
        route1 = ctx.zeta(du * dw, dv * dx, dy, dz) @ kron(
            ctx.zeta(du, dv, dw, dx), identity(p, dy * dz)
        )
        route2 = ctx.zeta(du, dv, dw * dy, dx * dz) @ kron(
            identity(p, du * dv), ctx.zeta(dw, dx, dy, dz)
        )
        if not route1 == route2:
            assoc_ok = False
            assoc_note = f"first-product nesting at dims {(du, dv, dw, dx, dy, dz)}"
            break
        # nesting across the second product: (U*V*W)o(X*Y*Z)
        route3 = kron(identity(p, du * dx), ctx.zeta(dv, dw, dy, dz)) @ ctx.zeta(
            du, dv * dw, dx, dy * dz
        )
        route4 = kron(ctx.zeta(du, dv, dx, dy), identity(p, dw * dz)) @ ctx.zeta(
            du * dv, dw, dx * dy, dz
        )
        if not route3 == route4:
            assoc_ok = False
            assoc_note = f"second-product nesting at dims {(du, dv, dw, dx, dy, dz)}"
            break
    r.add_flag("interchange associativity nestings", assoc_ok, note=assoc_note)

    unit_ok = True
    unit_note = ""
    for dw, dx in product(dims, repeat=2):
        iwx = identity(p, dw * dx)
        u1 = ctx.zeta(dw, dx, di, di) @ kron(iwx, ctx.Delta)
        u2 = ctx.zeta(di, di, dw, dx) @ kron(ctx.Delta, iwx)
        u3 = kron(iwx, ctx.mu) @ ctx.zeta(dw, dj, dx, dj)
        u4 = kron(ctx.mu, iwx) @ ctx.zeta(dj, dw, dj, dx)
        for name, got in (
            ("Delta right", u1),
            ("Delta left", u2),
            ("mu right", u3),
            ("mu left", u4),
        ):
            if not got == iwx:
                unit_ok = False
                unit_note = f"{name} unit square at dims {(dw, dx)}"
                break
        if not unit_ok:
            break
    r.add_flag("interchange unit squares", unit_ok, note=unit_note)
    return r


def check_bimonoid(a: BimonoidData, ctx: DuoidalCtx) -> Report:
    """Bimonoid diagrams (I)-(IV) through the context's interchange and unit
    morphisms.  Assumes the underlying monoid and comonoid already check."""
    d, p = a.dim, a.p
    if ctx.p != p:
        raise ShapeError(f"context over F_{ctx.p}, bimonoid over F_{p}")
    if ctx.dim_i != 1 or ctx.dim_j != 1:
        raise UnsupportedError(
            "bimonoid checking is implemented for contexts with 1-dimensional units"
        )
    r = Report("bimonoid diagrams", subject=ctx.tag)
    r.require_equal(
        "comultiplication vs multiplication (I)",
        a.delta @ a.m,
        kron(a.m, a.m) @ ctx.zeta(d, d, d, d) @ kron(a.delta, a.delta),
    )
    r.require_equal(
        "counit vs multiplication (II)",
        a.eps @ a.m,
        ctx.mu @ kron(a.eps, a.eps),
    )
    r.require_equal(
        "comultiplication vs unit (III)",
        a.delta @ a.e,
        kron(a.e, a.e) @ ctx.Delta,
    )
    r.require_equal("counit vs unit (IV)", a.eps @ a.e, ctx.tau)
    return r


def tau_splitting(ctx: DuoidalCtx) -> dict:
    """Split-monomorphism / split-epimorphism verdicts for tau: I -> J, with
    the one-sided inverses as witnesses.  A positive verdict licenses the
    Galois-only equivalence criterion in reports."""
    retraction = left_inverse(ctx.tau)
    section = right_inverse(ctx.tau)
    return {
        "split_mono": retraction is not None,
        "split_epi": section is not None,
        "retraction": retraction,
        "section": section,
    }


def galois_map_Kprime(a: BimonoidData, ctx: DuoidalCtx):
    """Base Galois map of the dual comparison (free comodules):

        beta': A(x)A -> A(x)A,  a(x)b |-> a1 (x) a2.b

    assembled as (I(x)m).(delta(x)I).  Only the braided context is supported.
    """
    from .hopfmod import GaloisReport

    if ctx.tag != BRAIDED_TAG:
        raise UnsupportedError(f"unsupported duoidal context {ctx.tag!r}")
    pre = check_bialgebra(a)
    if not pre.ok:
        raise PreconditionError(f"bimonoid fails: {', '.join(pre.failed_names())}")
    p, d = a.p, a.dim
    i = identity(p, d)
    beta_prime = kron(i, a.m) @ kron(a.delta, i)
    inv = inverse(beta_prime)
    if inv is None:
        return GaloisReport(
            beta_prime,
            rank(beta_prime),
            False,
            note=f"not Galois: rank {rank(beta_prime)}/{beta_prime.rows}",
        )
    return GaloisReport(beta_prime, beta_prime.rows, True, inv)


def entwining_via_ctx(a: BimonoidData, ctx: DuoidalCtx) -> FpMatrix:
    """The bimonoid entwining base map assembled through the context's
    interchange: ((I*A)o delta) then zeta then ((IoA)*m), at the unit object.
    Must coincide entrywise with entwining_from_bimonoid."""
    if ctx.dim_i != 1 or ctx.dim_j != 1:
        raise UnsupportedError("entwining assembly needs 1-dimensional units")
    p, d = a.p, a.dim
    i = identity(p, d)
    return kron(i, a.m) @ ctx.zeta(1, d, d, d) @ kron(i, a.delta)

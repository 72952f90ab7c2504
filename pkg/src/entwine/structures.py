"""Monoids, comonoids, bimonoids and their (co)module structures over F_p.

Everything is presented by structure constants: a monoid is the pair of
matrices (m: A(x)A -> A, e: k -> A) on a chosen basis, a comonoid the dual
pair, and every axiom is decided as an exact matrix identity.  Associators
and unitors are identity reindexings under the package-wide row-major
flattening, so no bracketing bookkeeping appears in any axiom.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .exactalg import (
    FpMatrix,
    ShapeError,
    identity,
    kron,
    swap_matrix,
)
from .report import PreconditionError, Report, UnsupportedError

__all__ = [
    "MonoidData",
    "ComonoidData",
    "BimonoidData",
    "ModuleData",
    "ComoduleAlgebraData",
    "ModuleComonoidData",
    "check_monoid",
    "check_comonoid",
    "check_bialgebra",
    "check_module",
    "check_right_comodule",
    "check_left_comodule",
    "check_comodule_algebra",
    "check_module_comonoid",
    "module_comonoid_of_coalgebra",
    "opmonoidal_omega",
    "free_left_module",
    "regular_right_module",
    "tensor_over_A",
]


def _expect(mat: FpMatrix, shape: tuple, what: str) -> None:
    if mat.shape != shape:
        raise ShapeError(f"{what}: expected shape {shape}, got {mat.shape}")


@dataclass(frozen=True)
class MonoidData:
    """An algebra (A, m, e) in finite-dimensional F_p-vector spaces."""

    dim: int
    m: FpMatrix
    e: FpMatrix

    def __post_init__(self) -> None:
        _expect(self.m, (self.dim, self.dim * self.dim), "multiplication m")
        _expect(self.e, (self.dim, 1), "unit e")
        if self.m.p != self.e.p:
            raise ShapeError("m and e carry different moduli")

    @property
    def p(self) -> int:
        return self.m.p


@dataclass(frozen=True)
class ComonoidData:
    """A coalgebra (C, delta, eps)."""

    dim: int
    delta: FpMatrix
    eps: FpMatrix

    def __post_init__(self) -> None:
        _expect(self.delta, (self.dim * self.dim, self.dim), "comultiplication delta")
        _expect(self.eps, (1, self.dim), "counit eps")
        if self.delta.p != self.eps.p:
            raise ShapeError("delta and eps carry different moduli")

    @property
    def p(self) -> int:
        return self.delta.p


@dataclass(frozen=True)
class BimonoidData:
    """A monoid and a comonoid on one carrier; compatibility is checked on
    demand (check_bialgebra here, check_bimonoid in the duoidal module), not
    assumed at construction."""

    monoid: MonoidData
    comonoid: ComonoidData

    def __post_init__(self) -> None:
        if self.monoid.dim != self.comonoid.dim:
            raise ShapeError(
                f"monoid dim {self.monoid.dim} != comonoid dim {self.comonoid.dim}"
            )
        if self.monoid.p != self.comonoid.p:
            raise ShapeError("monoid and comonoid carry different moduli")

    @property
    def dim(self) -> int:
        return self.monoid.dim

    @property
    def p(self) -> int:
        return self.monoid.p

    @property
    def m(self) -> FpMatrix:
        return self.monoid.m

    @property
    def e(self) -> FpMatrix:
        return self.monoid.e

    @property
    def delta(self) -> FpMatrix:
        return self.comonoid.delta

    @property
    def eps(self) -> FpMatrix:
        return self.comonoid.eps


@dataclass(frozen=True)
class ModuleData:
    """A module over a monoid: right actions are X(x)A -> X, left actions
    A(x)X -> X.  ``free_rank`` marks a left module of the free form A(x)V."""

    dim: int
    action: FpMatrix
    side: str = "right"
    free_rank: Optional[int] = None

    def __post_init__(self) -> None:
        if self.side not in ("right", "left"):
            raise ShapeError(f"side must be 'right' or 'left', got {self.side!r}")


@dataclass(frozen=True)
class ComoduleAlgebraData:
    """An algebra B with a left coaction rho: B -> A(x)B of a bimonoid A,
    required (by check_comodule_algebra) to be a map of algebras."""

    algebra: MonoidData
    over: BimonoidData
    rho: FpMatrix

    def __post_init__(self) -> None:
        da, db = self.over.dim, self.algebra.dim
        _expect(self.rho, (da * db, db), "coaction rho")
        if self.rho.p != self.algebra.p or self.algebra.p != self.over.p:
            raise ShapeError("comodule algebra data carries mixed moduli")


@dataclass(frozen=True)
class ModuleComonoidData:
    """A comonoid object in the module category of the left monad A(x)-:
    carrier Z with action sigma: A(x)Z -> Z and comonoid maps that are module
    morphisms."""

    dim: int
    sigma: FpMatrix
    deltaZ: FpMatrix
    epsZ: FpMatrix

    def __post_init__(self) -> None:
        _expect(self.deltaZ, (self.dim * self.dim, self.dim), "deltaZ")
        _expect(self.epsZ, (1, self.dim), "epsZ")
        if self.dim > 0:
            if self.sigma.rows != self.dim or self.sigma.cols % self.dim:
                raise ShapeError(
                    f"sigma: expected shape ({self.dim}, k*{self.dim}), got {self.sigma.shape}"
                )

    @property
    def monad_dim(self) -> int:
        return self.sigma.cols // self.dim if self.dim else 0

    @property
    def comonoid(self) -> ComonoidData:
        return ComonoidData(self.dim, self.deltaZ, self.epsZ)


# ---------------------------------------------------------------------------
# axiom checkers
# ---------------------------------------------------------------------------

def check_monoid(a: MonoidData) -> Report:
    """Associativity and the two unit identities, as matrix equalities."""
    r = Report("monoid axioms")
    i = identity(a.p, a.dim)
    r.require_equal("associativity", a.m @ kron(a.m, i), a.m @ kron(i, a.m))
    r.require_equal("left unit", a.m @ kron(a.e, i), i)
    r.require_equal("right unit", a.m @ kron(i, a.e), i)
    return r


def check_comonoid(c: ComonoidData) -> Report:
    r = Report("comonoid axioms")
    i = identity(c.p, c.dim)
    r.require_equal(
        "coassociativity", kron(c.delta, i) @ c.delta, kron(i, c.delta) @ c.delta
    )
    r.require_equal("left counit", kron(c.eps, i) @ c.delta, i)
    r.require_equal("right counit", kron(i, c.eps) @ c.delta, i)
    return r


def check_bialgebra(a: BimonoidData) -> Report:
    """Bimonoid diagrams (I)-(IV) specialized to the symmetric context where
    both monoidal products are the plain tensor product (the braided
    duoidal instance).  The duoidal module re-checks these through an
    arbitrary interchange law."""
    r = Report("bialgebra axioms")
    r.merge(check_monoid(a.monoid))
    r.merge(check_comonoid(a.comonoid))
    d, p = a.dim, a.p
    i = identity(p, d)
    mid = kron(kron(i, swap_matrix(p, d, d)), i)
    r.require_equal(
        "comultiplication is multiplicative (I)",
        a.delta @ a.m,
        kron(a.m, a.m) @ mid @ kron(a.delta, a.delta),
    )
    r.require_equal("counit is multiplicative (II)", a.eps @ a.m, kron(a.eps, a.eps))
    r.require_equal("unit is group-like (III)", a.delta @ a.e, kron(a.e, a.e))
    r.require_equal("counit of unit (IV)", a.eps @ a.e, identity(p, 1))
    return r


def check_module(x: ModuleData, a: MonoidData) -> Report:
    r = Report(f"{x.side} module axioms")
    p = a.p
    ix = identity(p, x.dim)
    h = x.action
    if x.side == "right":
        _expect(h, (x.dim, x.dim * a.dim), "right action")
        r.require_equal("action associativity", h @ kron(h, identity(p, a.dim)), h @ kron(ix, a.m))
        r.require_equal("action unit", h @ kron(ix, a.e), ix)
    else:
        _expect(h, (x.dim, a.dim * x.dim), "left action")
        r.require_equal("action associativity", h @ kron(identity(p, a.dim), h), h @ kron(a.m, ix))
        r.require_equal("action unit", h @ kron(a.e, ix), ix)
    return r


def check_right_comodule(dim: int, theta: FpMatrix, c: ComonoidData) -> Report:
    r = Report("right comodule axioms")
    p = c.p
    ix = identity(p, dim)
    _expect(theta, (dim * c.dim, dim), "right coaction")
    r.require_equal(
        "coaction coassociativity",
        kron(theta, identity(p, c.dim)) @ theta,
        kron(ix, c.delta) @ theta,
    )
    r.require_equal("coaction counit", kron(ix, c.eps) @ theta, ix)
    return r


def check_left_comodule(dim: int, rho: FpMatrix, c: ComonoidData) -> Report:
    r = Report("left comodule axioms")
    p = c.p
    ix = identity(p, dim)
    _expect(rho, (c.dim * dim, dim), "left coaction")
    r.require_equal(
        "coaction coassociativity",
        kron(c.delta, ix) @ rho,
        kron(identity(p, c.dim), rho) @ rho,
    )
    r.require_equal("coaction counit", kron(c.eps, ix) @ rho, ix)
    return r


def check_comodule_algebra(b: ComoduleAlgebraData) -> Report:
    """The four comodule-algebra invariants: left A-comodule plus rho being a
    map of algebras.  Assumes the base bimonoid has already been verified."""
    r = Report("comodule algebra axioms")
    a = b.over
    alg = b.algebra
    p = a.p
    da, db = a.dim, alg.dim
    r.merge(check_left_comodule(db, b.rho, a.comonoid))
    mid = kron(kron(identity(p, da), swap_matrix(p, db, da)), identity(p, db))
    r.require_equal(
        "coaction is multiplicative",
        b.rho @ alg.m,
        kron(a.m, alg.m) @ mid @ kron(b.rho, b.rho),
    )
    r.require_equal("coaction preserves the unit", b.rho @ alg.e, kron(a.e, alg.e))
    return r


# ---------------------------------------------------------------------------
# opmonoidal structure of the left monad A(x)- and its module-comonoids
# ---------------------------------------------------------------------------

def opmonoidal_omega(a: BimonoidData, dx: int, dy: int) -> FpMatrix:
    """Colax structure of A(x)- on a pair of objects:
    A(x)X(x)Y -> (A(x)X)(x)(A(x)Y), a(x)x(x)y |-> a1(x)x(x)a2(x)y."""
    p, da = a.p, a.dim
    base = kron(a.delta, identity(p, dx * dy))
    # the middle shuffle I(x)swap(x)I is a permutation; apply it as a row
    # gather (a1, a2, x, y) -> (a1, x, a2, y) instead of a dense product
    idx = np.arange(da * da * dx * dy).reshape(da, da, dx, dy)
    idx = idx.transpose(0, 2, 1, 3).reshape(-1)
    return FpMatrix(p, base.a[idx])


def module_comonoid_of_coalgebra(a: BimonoidData, c: ComonoidData) -> ModuleComonoidData:
    """Free module-comonoid on a coalgebra: carrier A(x)C, action by
    multiplication on the first leg, comultiplication through the colax
    structure and counit through both counits.

    Preconditions: ``a`` passes check_bialgebra and ``c`` passes
    check_comonoid (raises PreconditionError otherwise).
    """
    pre_a = check_bialgebra(a)
    if not pre_a.ok:
        raise PreconditionError(f"bimonoid fails: {', '.join(pre_a.failed_names())}")
    pre_c = check_comonoid(c)
    if not pre_c.ok:
        raise PreconditionError(f"comonoid fails: {', '.join(pre_c.failed_names())}")
    if a.p != c.p:
        raise ShapeError("modulus mismatch between bimonoid and comonoid")
    p, da, dc = a.p, a.dim, c.dim
    dz = da * dc
    sigma = kron(a.m, identity(p, dc))
    delta_z = opmonoidal_omega(a, dc, dc) @ kron(identity(p, da), c.delta)
    eps_z = a.eps @ kron(identity(p, da), c.eps)
    return ModuleComonoidData(dz, sigma, delta_z, eps_z)


def check_module_comonoid(z: ModuleComonoidData, a: BimonoidData) -> Report:
    """Module axioms for sigma, comonoid axioms for (deltaZ, epsZ), and the
    two module-morphism compatibilities of the comonoid maps."""
    r = Report("module comonoid axioms")
    p, da, dz = a.p, a.dim, z.dim
    if z.monad_dim != da:
        raise ShapeError(f"sigma acts for a monad of dim {z.monad_dim}, bimonoid has dim {da}")
    ia, iz = identity(p, da), identity(p, dz)
    r.require_equal(
        "action associativity",
        z.sigma @ kron(ia, z.sigma),
        z.sigma @ kron(a.m, iz),
    )
    r.require_equal("action unit", z.sigma @ kron(a.e, iz), iz)
    r.merge(check_comonoid(z.comonoid), prefix="comonoid ")
    sigma_zz = kron(z.sigma, z.sigma) @ opmonoidal_omega(a, dz, dz)
    r.require_equal(
        "comultiplication is a module morphism",
        z.deltaZ @ z.sigma,
        sigma_zz @ kron(ia, z.deltaZ),
    )
    r.require_equal(
        "counit is a module morphism",
        z.epsZ @ z.sigma,
        a.eps @ kron(ia, z.epsZ),
    )
    return r


# ---------------------------------------------------------------------------
# tensor product over A for free modules
# ---------------------------------------------------------------------------

def regular_right_module(a: MonoidData) -> ModuleData:
    return ModuleData(a.dim, a.m, "right")


def free_left_module(a: MonoidData, v_dim: int) -> ModuleData:
    """The free left module A(x)V with action m(x)I_V."""
    return ModuleData(
        a.dim * v_dim,
        kron(a.m, identity(a.p, v_dim)),
        "left",
        free_rank=v_dim,
    )


def tensor_over_A(n: ModuleData, a: MonoidData, free: ModuleData) -> tuple:
    """Tensor product N (x)_A (A (x) V) for a free left module.

    Returns ``(dim, can)`` where can: N(x)A(x)V -> N(x)V is the canonical
    split-coequalizer projection n(x)a(x)v |-> n.a(x)v; the object dimension
    is dim(N)*dim(V).  The general coequalizer (non-free left modules) is out
    of scope and reported as unsupported; it remains reachable through
    cokernel_basis directly.
    """
    if n.side != "right":
        raise ShapeError("tensor_over_A expects a right module on the left slot")
    if free.side != "left" or free.free_rank is None:
        raise UnsupportedError("tensor_over_A supports only free left modules A(x)V")
    v = free.free_rank
    if free.dim != a.dim * v:
        raise ShapeError(
            f"free module of rank {v} over dim-{a.dim} algebra must have dim {a.dim * v}"
        )
    _expect(n.action, (n.dim, n.dim * a.dim), "right action")
    can = kron(n.action, identity(a.p, v))
    return n.dim * v, can

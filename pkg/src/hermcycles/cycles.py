"""Support and dimension invariants of the cycle attached to a Hermitian matrix.

From an input matrix T the cycle lattice carries the form scaled by the unit
-eps**-1 * delta_sq.  Its Jordan data determines the maximal vertex type t,
the dimension t/2, and the irreducibility / zero-dimensionality flags; all of
them are invariant under scaling the form by any unit, in particular under a
different choice of delta_sq.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .errors import PreconditionError
from .lattice import HermGram, JordanReport, is_split_sum, jordan_split
from .ramified import RamifiedContext

STATUS_NONEMPTY = "nonempty"
STATUS_EMPTY = "empty-nonintegral"


@dataclass(frozen=True)
class CycleInvariants:
    status: str
    m: int | None = None
    t: int | None = None
    dimension: int | None = None
    n_odd: int | None = None
    n_even: int | None = None
    rank_L1: int | None = None
    L_ge1_split: bool | None = None
    L_ge2_split: bool | None = None
    irreducible: bool | None = None
    zero_dimensional: bool | None = None
    single_point: bool | None = None

    @classmethod
    def empty(cls) -> "CycleInvariants":
        return cls(status=STATUS_EMPTY)

    @property
    def is_empty(self) -> bool:
        return self.status == STATUS_EMPTY

    def to_json(self) -> dict:
        record = asdict(self)
        if self.is_empty:
            return {"status": self.status}
        return record


def build_cycle_lattice(T: HermGram, ctx: RamifiedContext) -> HermGram | None:
    """Gram of the cycle lattice, or None when T has a non-integral entry.

    A non-integral entry makes the cycle empty; otherwise the form is T scaled
    by the unit -eps**-1 * delta_sq of Z_p.
    """
    T.check_nonsingular()
    if T.ctx != ctx:
        raise PreconditionError("matrix context does not match")
    if not T.is_integral():
        return None
    return T.scaled(ctx.unit_scale())


def invariants_from_report(report: JordanReport, p: int) -> CycleInvariants:
    """Cycle invariants from the Jordan data of an integral lattice."""
    if any(b.scale < 0 for b in report.blocks):
        raise PreconditionError("Jordan data has negative scales; lattice not integral")
    m = sum(b.rank for b in report.blocks if b.scale >= 1)
    n_odd = sum(b.rank for b in report.blocks if b.scale >= 3 and b.scale % 2 == 1)
    n_even = sum(b.rank for b in report.blocks if b.scale >= 2 and b.scale % 2 == 0)
    rank_l1 = report.rank_at(1)
    ge1_split = is_split_sum(report.filtered(1), p)
    ge2_split = is_split_sum(report.filtered(2), p)
    if m % 2 == 1:
        t = m - 1
    elif ge1_split:
        t = m
    else:
        t = m - 2
    irreducible = n_odd == 0 and (n_even <= 1 or (n_even == 2 and not ge2_split))
    zero_dimensional = irreducible and rank_l1 == 0
    return CycleInvariants(
        status=STATUS_NONEMPTY,
        m=m,
        t=t,
        dimension=t // 2,
        n_odd=n_odd,
        n_even=n_even,
        rank_L1=rank_l1,
        L_ge1_split=ge1_split,
        L_ge2_split=ge2_split,
        irreducible=irreducible,
        zero_dimensional=zero_dimensional,
        single_point=zero_dimensional,
    )


def cycle_invariants(G: HermGram) -> CycleInvariants:
    """Invariants of an integral cycle-lattice Gram matrix."""
    if not G.is_integral():
        raise PreconditionError("cycle lattice Gram must be integral")
    return invariants_from_report(jordan_split(G), G.ctx.p)


def cycle_report(T: HermGram, ctx: RamifiedContext) -> CycleInvariants:
    """Full pipeline: scale T, handle the empty case, compute invariants."""
    G = build_cycle_lattice(T, ctx)
    if G is None:
        return CycleInvariants.empty()
    return cycle_invariants(G)

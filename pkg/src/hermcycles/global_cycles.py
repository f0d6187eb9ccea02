"""Hermitian matrices over an imaginary quadratic field Q(sqrt(delta)).

Computes positivity, the set of obstructing inert primes, existence of a
self-dual lattice in the ambient Hermitian space, and for every odd ramified
prime the local cycle invariants of the matrix embedded through
sqrt(delta) -> pi (an exact ring map because pi**2 = delta there).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cycles import CycleInvariants, cycle_report
from .errors import (
    HermitianViolationError,
    IntegralityError,
    PreconditionError,
    SingularMatrixError,
)
from .lattice import HermGram
from .padic import (
    DEFAULT_FACTOR_BOUND,
    INERT,
    RAMIFIED,
    check_quadratic_field,
    format_rational,
    hilbert_symbol,
    rational_factorization,
    splitting_type,
)
from .ramified import OHElement, RamifiedContext

STATUS_EMPTY = "empty"
STATUS_INERT = "inert-case"
STATUS_RAMIFIED = "ramified-supported"

_ZERO = Fraction(0)


@dataclass(frozen=True)
class QuadFieldElement:
    """x + y*sqrt(delta) with exact rational coordinates."""

    x: Fraction
    y: Fraction
    delta: int

    @classmethod
    def of(cls, delta: int, x, y=0) -> "QuadFieldElement":
        return cls(Fraction(x), Fraction(y), delta)

    def _check(self, other: "QuadFieldElement"):
        if self.delta != other.delta:
            raise PreconditionError("elements of different quadratic fields")

    def __add__(self, other):
        self._check(other)
        return QuadFieldElement(self.x + other.x, self.y + other.y, self.delta)

    def __sub__(self, other):
        self._check(other)
        return QuadFieldElement(self.x - other.x, self.y - other.y, self.delta)

    def __neg__(self):
        return QuadFieldElement(-self.x, -self.y, self.delta)

    def __mul__(self, other):
        self._check(other)
        return QuadFieldElement(
            self.x * other.x + self.y * other.y * self.delta,
            self.x * other.y + self.y * other.x,
            self.delta,
        )

    def conjugate(self) -> "QuadFieldElement":
        return QuadFieldElement(self.x, -self.y, self.delta)

    def norm(self) -> Fraction:
        return self.x * self.x - self.y * self.y * self.delta

    def inverse(self) -> "QuadFieldElement":
        n = self.norm()
        if n == 0:
            raise PreconditionError("division by zero in the quadratic field")
        return QuadFieldElement(self.x / n, -self.y / n, self.delta)

    def is_zero(self) -> bool:
        return not self.x and not self.y

    def is_rational(self) -> bool:
        return not self.y

    def is_integral(self) -> bool:
        """Membership in the maximal order: 2x, 2y and the norm are integers."""
        return (
            (2 * self.x).denominator == 1
            and (2 * self.y).denominator == 1
            and self.norm().denominator == 1
        )

    def embed(self, ctx: RamifiedContext) -> OHElement:
        """Image under sqrt(delta) -> pi; requires pi**2 = delta in ctx."""
        if ctx.pi0 != self.delta:
            raise PreconditionError("context uniformizer does not square to delta")
        return OHElement(self.x, self.y, ctx)

    def to_json(self) -> dict:
        return {"x": str(self.x), "y": str(self.y)}


def _validate_matrix(T, delta: int):
    rows = [list(row) for row in T]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise PreconditionError("matrix must be square and nonempty")
    for i in range(n):
        for j in range(n):
            e = rows[i][j]
            if not isinstance(e, QuadFieldElement) or e.delta != delta:
                raise PreconditionError(f"entry ({i},{j}) is not in the given field")
    for i in range(n):
        for j in range(i, n):
            if rows[j][i] != rows[i][j].conjugate():
                raise HermitianViolationError(
                    f"entry ({j},{i}) must be the conjugate of entry ({i},{j})",
                    location=f"matrix[{j}][{i}]",
                )
    return rows


def field_det(T, delta: int) -> Fraction:
    """Determinant of a Hermitian matrix over the field (a rational number)."""
    rows = _validate_matrix(T, delta)
    n = len(rows)
    det = QuadFieldElement.of(delta, 1)
    for c in range(n):
        piv = next((r for r in range(c, n) if not rows[r][c].is_zero()), None)
        if piv is None:
            return _ZERO
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det = det * rows[c][c]
        inv = rows[c][c].inverse()
        for r in range(c + 1, n):
            if rows[r][c].is_zero():
                continue
            f = rows[r][c] * inv
            rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
    if not det.is_rational():
        raise AssertionError("Hermitian determinant must be rational")
    return det.x


def is_positive_definite(T, delta: int) -> bool:
    """All leading principal minors positive (they are exact rationals)."""
    rows = _validate_matrix(T, delta)
    for k in range(1, len(rows) + 1):
        minor = field_det([row[:k] for row in rows[:k]], delta)
        if minor <= 0:
            return False
    return True


def diff0(T, delta: int, bound: int = DEFAULT_FACTOR_BOUND) -> tuple[int, ...]:
    """Inert primes at which the determinant has odd valuation.

    More than one of these forces the global cycle to be empty.
    """
    check_quadratic_field(delta, bound)
    det = field_det(T, delta)
    if det == 0:
        raise SingularMatrixError("matrix is singular")
    out = []
    for p, k in rational_factorization(det, bound).items():
        if k % 2 and splitting_type(delta, p, bound) == INERT:
            out.append(p)
    return tuple(sorted(out))


def self_dual_exists(T, delta: int, bound: int = DEFAULT_FACTOR_BOUND) -> bool:
    """Whether the Hermitian space of T contains a self-dual lattice.

    At split and ramified primes the condition is automatic; at an inert prime
    it reads (det T, delta)_p = 1, and only primes dividing 2 * det * delta
    can obstruct.
    """
    check_quadratic_field(delta, bound)
    if not is_positive_definite(T, delta):
        raise PreconditionError("matrix must be positive definite")
    det = field_det(T, delta)
    primes = {2}
    primes.update(rational_factorization(det, bound))
    primes.update(rational_factorization(delta, bound))
    for p in sorted(primes):
        if splitting_type(delta, p, bound) != INERT:
            continue
        if hilbert_symbol(det, delta, p) != 1:
            return False
    return True


@dataclass(frozen=True)
class GlobalReport:
    positive_definite: bool
    det: Fraction
    diff0: tuple[int, ...]
    status: str
    self_dual_exists: bool | None
    ramified_primes_odd: tuple[int, ...]
    unsupported_primes: tuple[int, ...]
    per_prime: dict[int, CycleInvariants]

    def to_json(self) -> dict:
        return {
            "positive_definite": self.positive_definite,
            "det": format_rational(self.det),
            "diff0": list(self.diff0),
            "status": self.status,
            "self_dual_exists": self.self_dual_exists,
            "ramified_primes_odd": list(self.ramified_primes_odd),
            "unsupported_primes": list(self.unsupported_primes),
            "per_prime": {str(p): inv.to_json() for p, inv in self.per_prime.items()},
        }


def local_context(delta: int, p: int) -> RamifiedContext:
    """Local data at an odd p dividing delta, with eps = delta/p so pi**2 = delta."""
    return RamifiedContext(p, Fraction(delta, p))


def embed_matrix(T, delta: int, ctx: RamifiedContext) -> HermGram:
    rows = _validate_matrix(T, delta)
    return HermGram([[e.embed(ctx) for e in row] for row in rows], ctx)


def global_report(T, delta: int, bound: int = DEFAULT_FACTOR_BOUND) -> GlobalReport:
    """Support analysis of the cycle attached to an integral Hermitian matrix.

    Empty when T is not positive definite or more than one inert prime
    obstructs; a single obstructing inert prime is reported without dimension
    data; otherwise the support lies over the ramified primes and every odd
    one receives its local invariants (p = 2 is reported as unsupported).
    """
    check_quadratic_field(delta, bound)
    rows = _validate_matrix(T, delta)
    for i, row in enumerate(rows):
        for j, e in enumerate(row):
            if not e.is_integral():
                raise IntegralityError(
                    f"entry ({i},{j}) is not an algebraic integer",
                    location=f"matrix[{i}][{j}]",
                )
    det = field_det(rows, delta)
    if det == 0:
        raise SingularMatrixError("matrix is singular")
    positive = is_positive_definite(rows, delta)
    obstructions = diff0(rows, delta, bound)
    ramified_odd = tuple(
        p for p in sorted(rational_factorization(delta, bound)) if p != 2
    )
    unsupported = (2,) if splitting_type(delta, 2, bound) == RAMIFIED else ()
    sd = self_dual_exists(rows, delta, bound) if positive else None
    per_prime: dict[int, CycleInvariants] = {}
    if not positive or len(obstructions) > 1:
        status = STATUS_EMPTY
    elif len(obstructions) == 1:
        status = STATUS_INERT
    else:
        status = STATUS_RAMIFIED
        for p in ramified_odd:
            ctx = local_context(delta, p)
            per_prime[p] = cycle_report(embed_matrix(rows, delta, ctx), ctx)
    return GlobalReport(
        positive_definite=positive,
        det=det,
        diff0=obstructions,
        status=status,
        self_dual_exists=sd,
        ramified_primes_odd=ramified_odd,
        unsupported_primes=unsupported,
        per_prime=per_prime,
    )

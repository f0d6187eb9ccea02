"""Exact arithmetic in the ramified quadratic extension H = Q_p(pi), pi**2 = eps*p.

Elements are pairs a + b*pi of exact rationals.  Conjugation sends pi to -pi,
the norm of a + b*pi is a**2 - b**2*pi0 with pi0 = eps*p, and the pi-adic
order of a + b*pi is min(2*val_p(a), 2*val_p(b) + 1).  All values are
immutable and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import PreconditionError, UnsupportedPrimeError
from .padic import INFINITY, _val, is_prime, is_square_unit, smallest_nonresidue

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class RamifiedContext:
    """Fixes the prime p, the unit eps with pi**2 = pi0 = eps*p, and delta_sq.

    ``delta_sq`` is a non-square unit class; only its square class ever enters
    a formula, so it is stored directly.  Defaults to the smallest positive
    non-residue mod p.
    """

    p: int
    eps: Fraction = _ONE
    delta_sq: Fraction = None  # type: ignore[assignment]
    pi0: Fraction = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.p == 2:
            raise UnsupportedPrimeError("p = 2 is not supported by the lattice layer")
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise PreconditionError(f"{self.p!r} is not prime")
        object.__setattr__(self, "eps", Fraction(self.eps))
        if _val(self.eps, self.p) != 0:
            raise PreconditionError(f"eps = {self.eps} must be a unit at {self.p}")
        if self.delta_sq is None:
            object.__setattr__(self, "delta_sq", Fraction(smallest_nonresidue(self.p)))
        else:
            object.__setattr__(self, "delta_sq", Fraction(self.delta_sq))
            if _val(self.delta_sq, self.p) != 0 or is_square_unit(self.delta_sq, self.p):
                raise PreconditionError(
                    f"delta_sq = {self.delta_sq} must be a non-square unit at {self.p}"
                )
        object.__setattr__(self, "pi0", self.eps * self.p)

    def element(self, a, b=0) -> "OHElement":
        return OHElement(a, b, self)

    def zero(self) -> "OHElement":
        return OHElement._raw(_ZERO, _ZERO, self)

    def one(self) -> "OHElement":
        return OHElement._raw(_ONE, _ZERO, self)

    def pi(self) -> "OHElement":
        return OHElement._raw(_ZERO, _ONE, self)

    def unit_scale(self) -> Fraction:
        """The unit -eps**-1 * delta_sq that scales an input Hermitian matrix."""
        return -self.delta_sq / self.eps


class OHElement:
    """a + b*pi with exact rational coefficients; pi**2 rewrites to pi0."""

    __slots__ = ("a", "b", "ctx")

    def __init__(self, a, b, ctx: RamifiedContext):
        self.a = a if type(a) is Fraction else Fraction(a)
        self.b = b if type(b) is Fraction else Fraction(b)
        self.ctx = ctx

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, ctx: RamifiedContext) -> "OHElement":
        self = object.__new__(cls)
        self.a = a
        self.b = b
        self.ctx = ctx
        return self

    def _coerce(self, other):
        if isinstance(other, OHElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise PreconditionError("context mismatch between ring elements")
            return other
        if isinstance(other, (int, Fraction)):
            return OHElement._raw(Fraction(other), _ZERO, self.ctx)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return OHElement._raw(self.a + o.a, self.b + o.b, self.ctx)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return OHElement._raw(self.a - o.a, self.b - o.b, self.ctx)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return OHElement._raw(o.a - self.a, o.b - self.b, self.ctx)

    def __neg__(self):
        return OHElement._raw(-self.a, -self.b, self.ctx)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return OHElement._raw(
            self.a * o.a + self.b * o.b * self.ctx.pi0,
            self.a * o.b + self.b * o.a,
            self.ctx,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def inverse(self) -> "OHElement":
        n = self.norm()
        if n == 0:
            raise PreconditionError("division by zero in H")
        return OHElement._raw(self.a / n, -self.b / n, self.ctx)

    def conjugate(self) -> "OHElement":
        return OHElement._raw(self.a, -self.b, self.ctx)

    def norm(self) -> Fraction:
        """x * conj(x) = a**2 - b**2 * pi0, fixed by conjugation."""
        return self.a * self.a - self.b * self.b * self.ctx.pi0

    def trace(self) -> Fraction:
        return 2 * self.a

    def ord(self):
        """pi-adic order: min(2*val_p(a), 2*val_p(b) + 1); +inf for 0."""
        p = self.ctx.p
        if self.a:
            va = 2 * _val(self.a, p)
            if self.b:
                return min(va, 2 * _val(self.b, p) + 1)
            return va
        if self.b:
            return 2 * _val(self.b, p) + 1
        return INFINITY

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def is_integral(self) -> bool:
        p = self.ctx.p
        return self.a.denominator % p != 0 and self.b.denominator % p != 0

    def is_rational(self) -> bool:
        return not self.b

    def __eq__(self, other):
        if isinstance(other, OHElement):
            return self.a == other.a and self.b == other.b and self.ctx == other.ctx
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"({self.a} + {self.b}*pi)"

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b)}


@lru_cache(maxsize=None)
def _pi_power(ctx: RamifiedContext, e: int) -> OHElement:
    if e % 2 == 0:
        return OHElement._raw(ctx.pi0 ** (e // 2), _ZERO, ctx)
    return OHElement._raw(_ZERO, ctx.pi0 ** ((e - 1) // 2), ctx)


def pi_power(ctx: RamifiedContext, e: int) -> OHElement:
    """pi**e as an exact element, for any integer e."""
    return _pi_power(ctx, e)


def is_norm(q, ctx: RamifiedContext) -> bool:
    """Whether a nonzero rational is a norm from H.

    The norm group is generated by Nm(pi) = -pi0 together with the unit norms,
    which are exactly the squares of Z_p: write q = (-pi0)**k * u and test the
    square class of the unit u.
    """
    q = Fraction(q)
    if q == 0:
        raise PreconditionError("0 is not in the multiplicative group")
    v = _val(q, ctx.p)
    u = q / (-ctx.pi0) ** v
    return is_square_unit(u, ctx.p)

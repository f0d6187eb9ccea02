"""Brute-force enumeration of the vertex lattices supporting an integral lattice.

A vertex lattice satisfies pi*V <= V_dual <= V; the lattice L supports V when
L <= V_dual, which pins every such V between L and its dual.  The oracle walks
all intermediate lattices through their canonical triangular bases (pivot
exponents bounded by the elementary divisors of L inside its dual), filters by
the exact vertex conditions, and reports types, counts and the full inclusion
poset.  It exists to double-check the closed-form invariants on small
instances, so correctness beats speed throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cycles import CycleInvariants, cycle_invariants
from .errors import EnumerationLimitError, NonIntegralLatticeError
from .lattice import (
    HermLattice,
    mat_conj,
    mat_det,
    mat_inverse,
    mat_is_integral,
    mat_mul,
    mat_transpose,
    residues_mod_pi_power,
)
from .ramified import RamifiedContext, pi_power


@dataclass(frozen=True)
class EnumerationBounds:
    max_rank: int = 3
    max_scale: int = 3
    max_candidates: int = 10_000_000


@dataclass(frozen=True)
class Vertex:
    lattice: HermLattice
    type: int

    def to_json(self):
        return {"basis": self.lattice.to_json()["basis"], "type": self.type}


@dataclass(frozen=True)
class VertexSet:
    vertices: tuple[Vertex, ...]
    poset_edges: tuple[tuple[int, int], ...]
    max_type: int
    max_count: int

    def types(self) -> list[int]:
        return [v.type for v in self.vertices]

    def to_json(self):
        return {
            "vertices": [v.to_json() for v in self.vertices],
            "poset_edges": [list(e) for e in self.poset_edges],
            "max_type": self.max_type,
            "max_count": self.max_count,
        }


def _snf_dual_basis(L: HermLattice):
    """Columns spanning the dual of L and exponents f with dual*diag(pi^f) = L.

    Diagonalizes the inclusion matrix of L in its dual (which is the conjugate
    Gram matrix) by unimodular row and column operations, mirroring the row
    operations into the dual basis so the product keeps spanning L.
    """
    ctx = L.ctx
    n = L.n
    dual = L.dual()
    dcols = [[dual.basis[i][j] for i in range(n)] for j in range(n)]
    Y = [[x.conjugate() for x in row] for row in L.gram().entries]
    fs = []
    for k in range(n):
        best, best_ord = None, None
        for i in range(k, n):
            for j in range(k, n):
                o = Y[i][j].ord()
                if best_ord is None or o < best_ord:
                    best, best_ord = (i, j), o
        i, j = best
        e = best_ord
        if i != k:
            Y[i], Y[k] = Y[k], Y[i]
            dcols[i], dcols[k] = dcols[k], dcols[i]
        if j != k:
            for row in Y:
                row[j], row[k] = row[k], row[j]
        unit = pi_power(ctx, e) / Y[k][k]
        if unit != 1:
            Y[k] = [unit * x for x in Y[k]]
            inv = unit.inverse()
            dcols[k] = [inv * x for x in dcols[k]]
        piv_inv = pi_power(ctx, -e)
        for r in range(k + 1, n):
            if Y[r][k].is_zero():
                continue
            q = Y[r][k] * piv_inv
            Y[r] = [x - q * y for x, y in zip(Y[r], Y[k])]
            dcols[k] = [x + q * y for x, y in zip(dcols[k], dcols[r])]
        for c in range(k + 1, n):
            if Y[k][c].is_zero():
                continue
            q = Y[k][c] * piv_inv
            for r in range(k, n):
                Y[r][c] = Y[r][c] - q * Y[r][k]
        fs.append(e)
    if any(f2 < f1 for f1, f2 in zip(fs, fs[1:])):
        raise AssertionError("elementary divisors not ascending")
    return dcols, fs


def _iter_candidates(fs, ctx: RamifiedContext, max_candidates: int):
    """All canonical triangular bases Z with L <= span(dual*Z) <= dual that
    can still be vertex lattices.

    Z is upper triangular with pivot pi**e_i at (i, i), 0 <= e_i <= f_i, and
    entries right of each pivot ranging over the residues modulo the pivot.
    Rows are filled bottom-up and entries left to right; the back-substituted
    solution of Z*X = diag(pi^f) only depends on entries already placed, so a
    partial basis is discarded at the first non-integral solution entry.

    A vertex has type between 0 and the rank, which pins the pivot-exponent
    sum to the window [(d - n)/2, d/2] with d the order of det L; pivot
    choices outside the window are skipped up front.
    """
    n = len(fs)
    reps = {e: residues_mod_pi_power(ctx, e) for e in range(max(fs) + 1)}
    zero = ctx.zero()
    Z = [[zero] * n for _ in range(n)]
    X = [[zero] * n for _ in range(n)]
    d = sum(fs)
    lo, hi = max(0, (d - n + 1) // 2), d // 2
    budget = [sum(fs[:i]) for i in range(n)]  # max addable by the rows above i
    count = 0

    def rec_row(i, pivot_sum):
        if i < 0:
            yield [row[:] for row in Z]
            return
        row = Z[i]
        for e in range(fs[i] + 1):
            total = pivot_sum + e
            if total > hi:
                break
            if total + budget[i] < lo:
                continue
            row[i] = pi_power(ctx, e)
            X[i][i] = pi_power(ctx, fs[i] - e)
            yield from rec_slot(i, i + 1, e, pi_power(ctx, -e), total)
        for j in range(i, n):
            row[j] = zero

    def rec_slot(i, j, e, piv_inv, pivot_sum):
        nonlocal count
        if j == n:
            yield from rec_row(i - 1, pivot_sum)
            return
        row = Z[i]
        for z in reps[e]:
            count += 1
            if count > max_candidates:
                raise EnumerationLimitError(
                    f"candidate count exceeded {max_candidates}", count=count
                )
            row[j] = z
            acc = None
            for k in range(i + 1, j + 1):
                zk = row[k]
                xk = X[k][j]
                if zk.is_zero() or xk.is_zero():
                    continue
                acc = zk * xk if acc is None else acc + zk * xk
            if acc is None:
                X[i][j] = zero
            elif acc.ord() >= e:
                X[i][j] = -(acc * piv_inv)
            else:
                continue
            yield from rec_slot(i, j + 1, e, piv_inv, pivot_sum)

    yield from rec_row(n - 1, 0)


def _integral_product(A, B) -> bool:
    """Whether A @ B is integral, failing fast on the first bad entry."""
    n = len(B)
    m = len(B[0])
    for i in range(n):
        row = A[i]
        for j in range(m):
            acc = None
            for t in range(n):
                x = row[t]
                y = B[t][j]
                if x.is_zero() or y.is_zero():
                    continue
                acc = x * y if acc is None else acc + x * y
            if acc is not None and not acc.is_integral():
                return False
    return True


def _vertex_type(Z, gram_dual, ctx: RamifiedContext):
    """Type of the candidate, or None when it is not a vertex lattice.

    The candidate Gram is Z^T * gram_dual * conj(Z); a vertex needs every
    entry of order >= -1 (pi*V pairs integrally with V) and an integral
    inverse (the dual sits inside V).  The type is the length of V over its
    dual: minus the pi-order of the Gram determinant.
    """
    n = len(Z)
    P = mat_mul(gram_dual, mat_conj(Z))
    gram = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            acc = None
            for k in range(a + 1):  # Z[k][a] = 0 below the diagonal
                x = Z[k][a]
                y = P[k][b]
                if x.is_zero() or y.is_zero():
                    continue
                acc = x * y if acc is None else acc + x * y
            if acc is None:
                acc = ctx.zero()
            elif acc.ord() < -1:
                return None
            gram[a][b] = acc
    if not mat_is_integral(mat_inverse(gram, ctx)):
        return None
    t = -mat_det(gram, ctx).ord()
    if t < 0 or t % 2:
        raise AssertionError(f"vertex type {t} must be a nonnegative even integer")
    return t


def enumerate_vertices(
    L: HermLattice, bounds: EnumerationBounds = EnumerationBounds()
) -> VertexSet:
    """All vertex lattices V with L <= V_dual, with types and inclusion poset.

    Requires L integral for the form.  Results are deterministic: vertices are
    sorted by type and canonical basis, and do not depend on the basis in
    which L was presented.
    """
    gram_l = L.gram()
    if not gram_l.is_integral():
        raise NonIntegralLatticeError("lattice does not pair integrally with itself")
    if L.n > bounds.max_rank:
        raise EnumerationLimitError(
            f"rank {L.n} exceeds enumeration bound {bounds.max_rank}"
        )
    ctx = L.ctx
    dcols, fs = _snf_dual_basis(L)
    if max(fs) > bounds.max_scale:
        raise EnumerationLimitError(
            f"Jordan scale {max(fs)} exceeds enumeration bound {bounds.max_scale}"
        )
    n = L.n
    dual_mat = [[dcols[j][i] for j in range(n)] for i in range(n)]
    amb = [list(row) for row in L.ambient.entries]
    gram_dual = mat_mul(mat_mul(mat_transpose(dual_mat), amb), mat_conj(dual_mat))
    found = []
    for Z in _iter_candidates(fs, ctx, bounds.max_candidates):
        t = _vertex_type(Z, gram_dual, ctx)
        if t is not None:
            found.append((Z, t))
    decorated = []
    for Z, t in found:
        basis = mat_mul(dual_mat, Z)
        lat = HermLattice(L.ambient, basis).canonical()
        key = tuple((str(x.a), str(x.b)) for row in lat.basis for x in row)
        decorated.append(((t, key), Vertex(lat, t), Z))
    decorated.sort(key=lambda item: item[0])
    vertices = tuple(item[1] for item in decorated)
    mats = [item[2] for item in decorated]
    edges = []
    inverses = [mat_inverse(Z, ctx) for Z in mats]
    # Containment a < b multiplies the index in the dual by the covolume
    # ratio, and each index step drops the type by exactly 2; pairs violating
    # type(b) - type(a) = 2*(idx(a) - idx(b)) > 0 need no arithmetic at all.
    idx = [sum(Z[i][i].ord() for i in range(n)) for Z in mats]
    types = [v.type for v in vertices]
    for a in range(len(mats)):
        for b in range(len(mats)):
            if a == b or types[b] - types[a] != 2 * (idx[a] - idx[b]) or idx[a] <= idx[b]:
                continue
            if _integral_product(inverses[b], mats[a]):
                edges.append((a, b))
    if vertices:
        max_type = max(v.type for v in vertices)
        max_count = sum(1 for v in vertices if v.type == max_type)
    else:
        max_type, max_count = -1, 0
    return VertexSet(vertices, tuple(edges), max_type, max_count)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking the closed-form invariants against the enumeration."""

    formula_t: int
    max_type: int
    max_count: int
    predicted_unique: bool
    max_type_matches: bool
    saturation: bool
    uniqueness_matches: bool
    all_types_even: bool
    poset_transitive: bool
    counterexamples: tuple[str, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return (
            self.max_type_matches
            and self.saturation
            and self.uniqueness_matches
            and self.all_types_even
            and self.poset_transitive
        )

    def to_json(self):
        return {
            "formula_t": self.formula_t,
            "max_type": self.max_type,
            "max_count": self.max_count,
            "predicted_unique": self.predicted_unique,
            "max_type_matches": self.max_type_matches,
            "saturation": self.saturation,
            "uniqueness_matches": self.uniqueness_matches,
            "all_types_even": self.all_types_even,
            "poset_transitive": self.poset_transitive,
            "passed": self.passed,
            "counterexamples": list(self.counterexamples),
        }


def verify_structure_theorems(
    L: HermLattice, bounds: EnumerationBounds = EnumerationBounds()
) -> VerificationReport:
    """Compare the enumerated vertex set with the closed-form predictions.

    Checks: the maximal type equals the formula value t; every vertex is
    contained in one of maximal type; the maximal vertex is unique exactly
    when the irreducibility conditions hold; all types are even; and the
    recorded inclusion poset is transitively closed.
    """
    vs = enumerate_vertices(L, bounds)
    inv: CycleInvariants = cycle_invariants(L.gram())
    counterexamples = []

    max_type_matches = vs.max_type == inv.t
    if not max_type_matches:
        counterexamples.append(
            f"formula t = {inv.t} but enumeration found max type {vs.max_type}"
        )

    edge_set = set(vs.poset_edges)
    saturation = True
    for i, v in enumerate(vs.vertices):
        if v.type == vs.max_type:
            continue
        if not any(
            (i, j) in edge_set
            for j, w in enumerate(vs.vertices)
            if w.type == vs.max_type
        ):
            saturation = False
            counterexamples.append(
                f"vertex {i} (type {v.type}) lies in no maximal-type vertex"
            )

    predicted_unique = bool(inv.irreducible)
    uniqueness_matches = (vs.max_count == 1) == predicted_unique
    if not uniqueness_matches:
        counterexamples.append(
            f"predicted unique={predicted_unique} but {vs.max_count} maximal vertices"
        )

    all_types_even = all(v.type % 2 == 0 for v in vs.vertices)
    if not all_types_even:
        counterexamples.append("odd vertex type found")

    poset_transitive = True
    for (a, b) in edge_set:
        for (c, d) in edge_set:
            if b == c and a != d and (a, d) not in edge_set:
                poset_transitive = False
                counterexamples.append(f"missing transitive edge ({a},{d})")

    return VerificationReport(
        formula_t=inv.t,
        max_type=vs.max_type,
        max_count=vs.max_count,
        predicted_unique=predicted_unique,
        max_type_matches=max_type_matches,
        saturation=saturation,
        uniqueness_matches=uniqueness_matches,
        all_types_even=all_types_even,
        poset_transitive=poset_transitive,
        counterexamples=tuple(counterexamples),
    )


def poset_dot(vs: VertexSet) -> str:
    """GraphViz rendering of the vertex inclusion poset."""
    lines = ["digraph vertices {"]
    for i, v in enumerate(vs.vertices):
        lines.append(f'  v{i} [label="v{i} (type {v.type})"];')
    for a, b in vs.poset_edges:
        lines.append(f"  v{a} -> v{b};")
    lines.append("}")
    return "\n".join(lines)

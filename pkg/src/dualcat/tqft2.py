"""2-dimensional TQFTs from commutative Frobenius algebras.

A cobordism is given by a movie: a list of Morse slices acting on a linearly
ordered list of circles.  Each circle carries a copy of ``V = R^d``; a list of
``n`` circles carries ``V^{(x) n}`` in Kronecker order.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .report import Report
from .rigalg import (
    Rig, RigError, RigMatrix, ShapeError, UnsupportedOperation, first_difference, identity,
    inverse, kron, kron_all, mat_mul, matrices_equal, matrix_from_json, swap_matrix,
)


class MovieError(ValueError):
    pass


class SliceKind(enum.Enum):
    BIRTH = "birth"
    DEATH = "death"
    MERGE = "merge"
    SPLIT = "split"
    SWAP = "swap"


# (circles consumed, circles produced) at the slice position
_ARITY = {
    SliceKind.BIRTH: (0, 1), SliceKind.DEATH: (1, 0), SliceKind.MERGE: (2, 1),
    SliceKind.SPLIT: (1, 2), SliceKind.SWAP: (2, 2),
}


@dataclass(frozen=True)
class SliceOp:
    kind: SliceKind
    pos: int = 0

    def after(self, circles: int) -> int:
        """Circle count after the slice; raises when ``pos`` is out of range."""
        used, made = _ARITY[self.kind]
        if self.pos < 0 or self.pos + used > circles:
            raise MovieError(f"{self.kind.value}({self.pos}) needs {used} circle(s) from "
                             f"position {self.pos}, only {circles} present")
        return circles - used + made

    def to_json(self) -> dict[str, Any]:
        return {"op": self.kind.value, "pos": self.pos}

    def __str__(self) -> str:
        return f"{self.kind.value}({self.pos})"


def Birth(pos: int = 0) -> SliceOp:
    return SliceOp(SliceKind.BIRTH, pos)


def Death(pos: int = 0) -> SliceOp:
    return SliceOp(SliceKind.DEATH, pos)


def Merge(pos: int = 0) -> SliceOp:
    return SliceOp(SliceKind.MERGE, pos)


def Split(pos: int = 0) -> SliceOp:
    return SliceOp(SliceKind.SPLIT, pos)


def Swap(pos: int = 0) -> SliceOp:
    return SliceOp(SliceKind.SWAP, pos)


@dataclass(frozen=True)
class Movie:
    in_circles: int
    slices: tuple[SliceOp, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "slices", tuple(self.slices))
        if self.in_circles < 0:
            raise MovieError("negative circle count")
        self.counts()

    def counts(self) -> list[int]:
        out = [self.in_circles]
        for s in self.slices:
            out.append(s.after(out[-1]))
        return out

    @property
    def out_circles(self) -> int:
        return self.counts()[-1]

    def then(self, other: Movie) -> Movie:
        if other.in_circles != self.out_circles:
            raise MovieError(f"cannot glue {self.out_circles} circles to {other.in_circles}")
        return Movie(self.in_circles, self.slices + other.slices)

    def beside(self, other: Movie) -> Movie:
        """Disjoint union: ``self`` on the left circles, then ``other`` shifted right."""
        shifted = tuple(SliceOp(s.kind, s.pos + self.out_circles) for s in other.slices)
        return Movie(self.in_circles + other.in_circles, self.slices + shifted)

    def to_json(self) -> dict[str, Any]:
        return {"in": self.in_circles, "slices": [s.to_json() for s in self.slices]}

    def __str__(self) -> str:
        return f"[{self.in_circles}] " + " ; ".join(map(str, self.slices))


def movie_from_json(obj: dict[str, Any]) -> Movie:
    try:
        n = int(obj["in"])
        slices = [SliceOp(SliceKind(s["op"]), int(s.get("pos", 0))) for s in obj["slices"]]
    except (KeyError, ValueError, TypeError) as exc:
        raise MovieError(f"bad movie JSON: {exc}") from None
    mv = Movie(n, tuple(slices))
    if "out" in obj and int(obj["out"]) != mv.out_circles:
        raise MovieError(f"movie ends with {mv.out_circles} circles, declared {obj['out']}")
    return mv


# -- Frobenius data -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FrobeniusData:
    """``unit`` is ``d x 1``, ``mult`` ``d x d^2``, ``trace`` ``1 x d``, ``copairing`` ``d^2 x 1``."""

    rig: Rig
    dim: int
    unit: RigMatrix
    mult: RigMatrix
    trace: RigMatrix
    copairing: RigMatrix

    def __post_init__(self) -> None:
        d = self.dim
        for name, m, shape in (("unit", self.unit, (d, 1)), ("mult", self.mult, (d, d * d)),
                               ("trace", self.trace, (1, d)), ("copairing", self.copairing, (d * d, 1))):
            if m.shape != shape:
                raise ShapeError(f"{name} must be {shape[0]}x{shape[1]}, got {m.rows}x{m.cols}")
            if m.rig is not self.rig:
                raise RigError(f"{name} is over {m.rig.value}, algebra is over {self.rig.value}")

    @property
    def pairing(self) -> RigMatrix:
        """``tr o m`` as a ``1 x d^2`` row."""
        return mat_mul(self.trace, self.mult)

    @property
    def comult(self) -> RigMatrix:
        """``(m (x) 1) o (1 (x) copairing)``, a ``d^2 x d`` matrix."""
        i = identity(self.dim, self.rig)
        return mat_mul(kron(self.mult, i), kron(i, self.copairing))

    def comult_alt(self) -> RigMatrix:
        """The other bracketing ``(1 (x) m) o (copairing (x) 1)``."""
        i = identity(self.dim, self.rig)
        return mat_mul(kron(i, self.mult), kron(self.copairing, i))

    def to_json(self) -> dict[str, Any]:
        return {
            "copairing": self.copairing.to_json(), "dim": self.dim, "mult": self.mult.to_json(),
            "rig": self.rig.value, "trace": self.trace.to_json(), "unit": self.unit.to_json(),
        }


def solve_copairing(rig: Rig, dim: int, mult: RigMatrix, trace: RigMatrix) -> RigMatrix:
    """Invert the pairing matrix ``P_ab = tr(e_a e_b)``; needs a rig with inverses."""
    if not rig.has_inverse:
        raise UnsupportedOperation(f"copairing must be supplied over {rig.value}")
    pairing = mat_mul(trace, mult)
    p = RigMatrix(rig, dim, dim, pairing.entries)
    q = inverse(p)
    return RigMatrix(rig, dim * dim, 1, q.entries)


def make_frobenius(rig: Rig | str, dim: int, unit, mult, trace, copairing=None) -> FrobeniusData:
    rig = Rig.parse(rig)

    def mat(v, rows, cols):
        return v if isinstance(v, RigMatrix) else matrix_from_json(v, rig, rows, cols)

    unit_m, mult_m, trace_m = mat(unit, dim, 1), mat(mult, dim, dim * dim), mat(trace, 1, dim)
    if copairing is None:
        copair = solve_copairing(rig, dim, mult_m, trace_m)
    else:
        copair = mat(copairing, dim * dim, 1)
    return FrobeniusData(rig, dim, unit_m, mult_m, trace_m, copair)


def frobenius_from_json(obj: dict[str, Any]) -> FrobeniusData:
    try:
        rig, dim = Rig.parse(obj["rig"]), int(obj["dim"])
        unit, mult, trace = obj["unit"], obj["mult"], obj["trace"]
    except KeyError as exc:
        raise RigError(f"Frobenius data missing key {exc}") from None
    return make_frobenius(rig, dim, unit, mult, trace, obj.get("copairing"))


def _compare(rep: Report, name: str, lhs: RigMatrix, rhs: RigMatrix) -> bool:
    ok = matrices_equal(lhs, rhs)
    witness = None
    if not ok:
        i, j = first_difference(lhs, rhs)
        witness = f"entry ({i}, {j}): {lhs.rig.format(lhs[i, j])} vs {rhs.rig.format(rhs[i, j])}"
    rep.add(name, ok, witness)
    return ok


def validate_frobenius(fd: FrobeniusData) -> Report:
    """Axioms of a commutative monoid object with nondegenerate trace."""
    rep = Report(f"Frobenius algebra (dim {fd.dim}, {fd.rig.value})")
    d, rig = fd.dim, fd.rig
    i = identity(d, rig)
    m = fd.mult
    _compare(rep, "associativity", mat_mul(m, kron(m, i)), mat_mul(m, kron(i, m)))
    _compare(rep, "commutativity", mat_mul(m, swap_matrix(d, d, rig)), m)
    _compare(rep, "unit left", mat_mul(m, kron(fd.unit, i)), i)
    _compare(rep, "unit right", mat_mul(m, kron(i, fd.unit)), i)
    pairing = fd.pairing
    _compare(rep, "snake left", mat_mul(kron(pairing, i), kron(i, fd.copairing)), i)
    _compare(rep, "snake right", mat_mul(kron(i, pairing), kron(fd.copairing, i)), i)
    return rep


# -- movies ---------------------------------------------------------------------------

def local_block(kind: SliceKind, fd: FrobeniusData) -> RigMatrix:
    if kind is SliceKind.BIRTH:
        return fd.unit
    if kind is SliceKind.DEATH:
        return fd.trace
    if kind is SliceKind.MERGE:
        return fd.mult
    if kind is SliceKind.SPLIT:
        return fd.comult
    return swap_matrix(fd.dim, fd.dim, fd.rig)


def slice_matrix(op: SliceOp, circles: int, fd: FrobeniusData) -> RigMatrix:
    """``kron(I_{d^pos}, block, I_{d^rest})`` for one slice on ``circles`` circles."""
    after = op.after(circles)
    used = circles - after + _ARITY[op.kind][1]
    rest = circles - op.pos - used
    d, rig = fd.dim, fd.rig
    return kron_all([identity(d ** op.pos, rig), local_block(op.kind, fd), identity(d ** rest, rig)], rig)


def eval_movie(mv: Movie, fd: FrobeniusData) -> RigMatrix:
    """Product of the slice matrices, first slice rightmost: a ``d^out x d^in`` matrix."""
    circles = mv.in_circles
    out = identity(fd.dim ** circles, fd.rig)
    for s in mv.slices:
        out = mat_mul(slice_matrix(s, circles, fd), out)
        circles = s.after(circles)
    return out


def genus_movie(g: int) -> Movie:
    return Movie(0, (Birth(0),) + (Split(0), Merge(0)) * g + (Death(0),))


def surface_invariant(genus: int, fd: FrobeniusData, check: bool = True) -> Any:
    if genus < 0:
        raise MovieError("genus must be non-negative")
    if check and not validate_frobenius(fd).valid:
        raise UnsupportedOperation("Frobenius data fails validation")
    return eval_movie(genus_movie(genus), fd)[0, 0]


def handle_operator(fd: FrobeniusData) -> RigMatrix:
    """``H = m o Delta``: gluing in one handle."""
    return mat_mul(fd.mult, fd.comult)


def surface_by_handles(genus: int, fd: FrobeniusData) -> Any:
    """``tr(H^g(1))`` computed without movies."""
    v = fd.unit
    h = handle_operator(fd)
    for _ in range(genus):
        v = mat_mul(h, v)
    return mat_mul(fd.trace, v)[0, 0]


def torus_by_contraction(fd: FrobeniusData) -> Any:
    """Genus one as an explicit index contraction.

    ``sum tr_c m[c; i, j] m[i; k, l] Q[l, j] u_k``: unit, then the comultiplication
    written out, then product and trace.
    """
    d, rig = fd.dim, fd.rig
    m, q, u, tr = fd.mult, fd.copairing, fd.unit, fd.trace
    total = rig.zero
    for c in range(d):
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    for l in range(d):
                        total = total + tr[0, c] * m[c, i * d + j] * m[i, k * d + l] * q[l * d + j, 0] * u[k, 0]
    return total


def move_pairs() -> list[tuple[str, Movie, Movie]]:
    """Pairs of movies of the same cobordism."""
    return [
        ("birth-merge cancellation (left)", Movie(1, (Birth(0), Merge(0))), Movie(1)),
        ("birth-merge cancellation (right)", Movie(1, (Birth(1), Merge(0))), Movie(1)),
        ("split-death cancellation (left)", Movie(1, (Split(0), Death(0))), Movie(1)),
        ("split-death cancellation (right)", Movie(1, (Split(0), Death(1))), Movie(1)),
        ("associativity", Movie(3, (Merge(0), Merge(0))), Movie(3, (Merge(1), Merge(0)))),
        ("coassociativity", Movie(1, (Split(0), Split(0))), Movie(1, (Split(0), Split(1)))),
        ("commutativity", Movie(2, (Swap(0), Merge(0))), Movie(2, (Merge(0),))),
        ("cocommutativity", Movie(1, (Split(0), Swap(0))), Movie(1, (Split(0),))),
        ("frobenius (left)", Movie(2, (Merge(0), Split(0))), Movie(2, (Split(1), Merge(0)))),
        ("frobenius (right)", Movie(2, (Merge(0), Split(0))), Movie(2, (Split(0), Merge(1)))),
        ("snake (left)", Movie(1, (Birth(1), Split(1), Merge(0), Death(0))), Movie(1)),
        ("snake (right)", Movie(1, (Birth(0), Split(0), Merge(1), Death(1))), Movie(1)),
        ("swap involution", Movie(2, (Swap(0), Swap(0))), Movie(2)),
        ("swap naturality", Movie(3, (Merge(0), Swap(0))), Movie(3, (Swap(1), Swap(0), Merge(1)))),
    ]


def check_movie_moves(fd: FrobeniusData) -> Report:
    rep = Report(f"movie moves (dim {fd.dim}, {fd.rig.value})")
    for name, lhs, rhs in move_pairs():
        _compare(rep, name, eval_movie(lhs, fd), eval_movie(rhs, fd))
    _compare(rep, "comultiplication bracketings", fd.comult, fd.comult_alt())
    return rep


# -- examples ---------------------------------------------------------------------------

def trivial_algebra(rig: Rig | str = Rig.RATIONAL) -> FrobeniusData:
    rig = Rig.parse(rig)
    one = [rig.one]
    return make_frobenius(rig, 1, one, [one], one, one)


def group_algebra(n: int, scale: Any = 1, rig: Rig | str = Rig.RATIONAL) -> FrobeniusData:
    """``R[Z/n]`` with trace ``scale`` times the coefficient of the identity."""
    rig = Rig.parse(rig)
    s = rig.coerce(scale)
    mult = [[rig.one if (a + b) % n == c else rig.zero for a in range(n) for b in range(n)] for c in range(n)]
    unit = [rig.one] + [rig.zero] * (n - 1)
    trace = [s] + [rig.zero] * (n - 1)
    return make_frobenius(rig, n, unit, mult, [trace], None)


def diagonal_algebra(weights: Sequence[Any], rig: Rig | str = Rig.RATIONAL) -> FrobeniusData:
    """``R^n`` (a product of copies of the ground field) with trace weights."""
    rig = Rig.parse(rig)
    n = len(weights)
    mult = [[rig.one if a == b == c else rig.zero for a in range(n) for b in range(n)] for c in range(n)]
    return make_frobenius(rig, n, [rig.one] * n, mult, [[rig.coerce(w) for w in weights]], None)


def change_basis(fd: FrobeniusData, g: RigMatrix) -> FrobeniusData:
    """Transport the structure along the basis change ``g`` (new basis vectors are columns of ``g``)."""
    gi = inverse(g)
    mult = mat_mul(gi, mat_mul(fd.mult, kron(g, g)))
    unit = mat_mul(gi, fd.unit)
    trace = mat_mul(fd.trace, g)
    copair = mat_mul(kron(gi, gi), fd.copairing)
    return FrobeniusData(fd.rig, fd.dim, unit, mult, trace, copair)


def _nonzero(rng: random.Random) -> Fraction:
    while True:
        v = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        if v:
            return v


def random_frobenius(rng: random.Random, max_dim: int = 3) -> FrobeniusData:
    """A random valid rational Frobenius algebra of dimension <= ``max_dim``.

    Drawn from ``Q[Z/2]``, ``Q[Z/3]`` and ``Q^n`` with random nonzero trace
    data, then moved to a random basis.
    """
    choices = [("z2", 2), ("z3", 3)] + [("diag", n) for n in range(1, max_dim + 1)]
    choices = [c for c in choices if c[1] <= max_dim]
    kind, n = rng.choice(choices)
    if kind == "diag":
        fd = diagonal_algebra([_nonzero(rng) for _ in range(n)])
    else:
        fd = group_algebra(n, _nonzero(rng))
    while True:
        g = RigMatrix.from_rows(Rig.RATIONAL, [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
        try:
            inverse(g)
        except UnsupportedOperation:
            continue
        return change_basis(fd, g)


def mutate_mult(fd: FrobeniusData, rng: random.Random) -> tuple[FrobeniusData, tuple[int, int]]:
    """Change one entry of ``mult`` by a random nonzero amount, keeping everything else."""
    entries = list(fd.mult.entries)
    idx = rng.randrange(len(entries))
    entries[idx] = entries[idx] + fd.rig.coerce(_nonzero(rng))
    mult = RigMatrix(fd.rig, fd.mult.rows, fd.mult.cols, tuple(entries))
    return FrobeniusData(fd.rig, fd.dim, fd.unit, mult, fd.trace, fd.copairing), divmod(idx, fd.mult.cols)


__all__ = [
    "Birth", "Death", "FrobeniusData", "Merge", "Movie", "MovieError", "SliceKind", "SliceOp",
    "Split", "Swap", "change_basis", "check_movie_moves", "diagonal_algebra", "eval_movie",
    "frobenius_from_json", "genus_movie", "group_algebra", "handle_operator", "make_frobenius",
    "move_pairs", "movie_from_json", "mutate_mult", "random_frobenius", "slice_matrix",
    "solve_copairing", "surface_by_handles", "surface_invariant", "torus_by_contraction",
    "trivial_algebra", "validate_frobenius",
]

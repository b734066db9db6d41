"""Commutative rigs and dense matrices over them.

Every evaluation functor in the package lands in :class:`RigMatrix`.  Scalars
are plain Python values chosen per rig:

========== ==========================
rig        Python carrier
========== ==========================
natural    ``int`` (non-negative)
integer    ``int``
rational   ``fractions.Fraction``
complex    :class:`ComplexRational`
float      ``float``
========== ==========================

Matrices act on column vectors; a morphism ``V^m -> V^n`` is an ``n x m``
matrix.  Tensor-product indices are flattened row-major: basis vector
``e_i (x) e_j`` of ``R^a (x) R^b`` has index ``i * b + j``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

FLOAT_TOL = 1e-9


class RigError(ValueError):
    """Base class for scalar/matrix errors."""


class RigMismatchError(RigError):
    pass


class ShapeError(RigError):
    pass


class UnsupportedOperation(RigError):
    """The rig lacks negation, inversion or an involution."""


@dataclass(frozen=True, slots=True)
class ComplexRational:
    """Exact complex number with rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if not isinstance(self.re, Fraction):
            object.__setattr__(self, "re", Fraction(self.re))
        if not isinstance(self.im, Fraction):
            object.__setattr__(self, "im", Fraction(self.im))

    def __add__(self, other: ComplexRational) -> ComplexRational:
        return ComplexRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: ComplexRational) -> ComplexRational:
        return ComplexRational(self.re - other.re, self.im - other.im)

    def __mul__(self, other: ComplexRational) -> ComplexRational:
        if not self.im and not other.im:
            return ComplexRational(self.re * other.re)
        return ComplexRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> ComplexRational:
        return ComplexRational(-self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> ComplexRational:
        return self if not self.im else ComplexRational(self.re, -self.im)

    def inverse(self) -> ComplexRational:
        norm = self.re * self.re + self.im * self.im
        if norm == 0:
            raise ZeroDivisionError("complex zero has no inverse")
        return ComplexRational(self.re / norm, -self.im / norm)

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


class Rig(enum.Enum):
    NATURAL = "natural"
    INTEGER = "integer"
    RATIONAL = "rational"
    COMPLEX = "complex"
    FLOAT = "float"

    @classmethod
    def parse(cls, name: str | Rig) -> Rig:
        if isinstance(name, Rig):
            return name
        try:
            return cls(name)
        except ValueError:
            raise RigError(f"unknown rig {name!r}") from None

    # -- structure -----------------------------------------------------
    @property
    def zero(self) -> Any:
        return _ZERO[self]

    @property
    def one(self) -> Any:
        return _ONE[self]

    @property
    def exact(self) -> bool:
        return self is not Rig.FLOAT

    @property
    def has_negation(self) -> bool:
        return self is not Rig.NATURAL

    @property
    def has_inverse(self) -> bool:
        return self in (Rig.RATIONAL, Rig.COMPLEX, Rig.FLOAT)

    @property
    def has_involution(self) -> bool:
        # Naturals are excluded so that dagger requests over them fail loudly.
        return self is not Rig.NATURAL

    def contains(self, value: Any) -> bool:
        if isinstance(value, bool):
            return False
        if self is Rig.NATURAL:
            return isinstance(value, int) and value >= 0
        if self is Rig.INTEGER:
            return isinstance(value, int)
        if self is Rig.RATIONAL:
            return isinstance(value, Fraction)
        if self is Rig.COMPLEX:
            return isinstance(value, ComplexRational)
        return isinstance(value, float)

    def coerce(self, value: Any) -> Any:
        """Convert a literal (int, Fraction, "p/q", {"re":..,"im":..}) into this rig."""
        if isinstance(value, bool):
            raise RigError("booleans are not rig values")
        if self is Rig.NATURAL or self is Rig.INTEGER:
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    raise RigError(f"{value} is not an integer")
                value = value.numerator
            if isinstance(value, str):
                value = int(value)
            if not isinstance(value, int):
                raise RigError(f"cannot read {value!r} as {self.value}")
            if self is Rig.NATURAL and value < 0:
                raise RigError(f"{value} is not a natural number")
            return value
        if self is Rig.RATIONAL:
            if isinstance(value, (int, Fraction, str)):
                return Fraction(value)
            raise RigError(f"cannot read {value!r} as rational")
        if self is Rig.COMPLEX:
            if isinstance(value, ComplexRational):
                return value
            if isinstance(value, dict):
                return ComplexRational(Fraction(value.get("re", 0)), Fraction(value.get("im", 0)))
            if isinstance(value, (int, Fraction, str)):
                return ComplexRational(Fraction(value))
            raise RigError(f"cannot read {value!r} as complex")
        if isinstance(value, (int, float, Fraction)):
            return float(value)
        if isinstance(value, str):
            return float(Fraction(value))
        raise RigError(f"cannot read {value!r} as float")

    # -- arithmetic ----------------------------------------------------
    def add(self, a: Any, b: Any) -> Any:
        return a + b

    def mul(self, a: Any, b: Any) -> Any:
        return a * b

    def neg(self, a: Any) -> Any:
        if not self.has_negation:
            raise UnsupportedOperation("naturals have no negation")
        return -a

    def inv(self, a: Any) -> Any:
        if not self.has_inverse:
            raise UnsupportedOperation(f"{self.value} values have no inverses")
        if self is Rig.COMPLEX:
            return a.inverse()
        if not a:
            raise ZeroDivisionError("zero has no inverse")
        return 1 / a if self is Rig.FLOAT else Fraction(1) / a

    def conj(self, a: Any) -> Any:
        if not self.has_involution:
            raise UnsupportedOperation(f"{self.value} carries no involution")
        return a.conjugate() if self is Rig.COMPLEX else a

    def close(self, a: Any, b: Any, tol: float = FLOAT_TOL) -> bool:
        if self is Rig.FLOAT:
            return abs(a - b) <= tol
        return a == b

    def to_json(self, a: Any) -> Any:
        if self is Rig.RATIONAL:
            return str(a)
        if self is Rig.COMPLEX:
            return {"im": str(a.im), "re": str(a.re)}
        return a

    def format(self, a: Any) -> str:
        return repr(a) if self is Rig.FLOAT else str(a)


_ZERO = {
    Rig.NATURAL: 0,
    Rig.INTEGER: 0,
    Rig.RATIONAL: Fraction(0),
    Rig.COMPLEX: ComplexRational(),
    Rig.FLOAT: 0.0,
}
_ONE = {
    Rig.NATURAL: 1,
    Rig.INTEGER: 1,
    Rig.RATIONAL: Fraction(1),
    Rig.COMPLEX: ComplexRational(Fraction(1)),
    Rig.FLOAT: 1.0,
}


@dataclass(frozen=True, slots=True)
class RigMatrix:
    """Dense row-major matrix whose entries all live in one rig."""

    rig: Rig
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ShapeError("negative dimension")
        if not isinstance(self.entries, tuple):
            object.__setattr__(self, "entries", tuple(self.entries))
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )
        for value in self.entries:
            if not self.rig.contains(value):
                raise RigMismatchError(
                    f"entry {value!r} ({type(value).__name__}) is not a {self.rig.value} value"
                )

    @classmethod
    def _trusted(cls, rig: Rig, rows: int, cols: int, entries: tuple) -> RigMatrix:
        """Skip entry validation; for results of rig operations on valid matrices."""
        m = object.__new__(cls)
        object.__setattr__(m, "rig", rig)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "cols", cols)
        object.__setattr__(m, "entries", entries)
        return m

    @classmethod
    def from_rows(cls, rig: Rig | str, rows: Sequence[Sequence[Any]]) -> RigMatrix:
        rig = Rig.parse(rig)
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ShapeError("ragged rows")
        return cls(rig, len(rows), ncols, tuple(rig.coerce(v) for r in rows for v in r))

    @classmethod
    def column(cls, rig: Rig | str, values: Sequence[Any]) -> RigMatrix:
        rig = Rig.parse(rig)
        return cls(rig, len(values), 1, tuple(rig.coerce(v) for v in values))

    @classmethod
    def row(cls, rig: Rig | str, values: Sequence[Any]) -> RigMatrix:
        rig = Rig.parse(rig)
        return cls(rig, 1, len(values), tuple(rig.coerce(v) for v in values))

    def __getitem__(self, ij: tuple[int, int]) -> Any:
        i, j = ij
        return self.entries[i * self.cols + j]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def tolist(self) -> list[list[Any]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def __str__(self) -> str:
        fmt = self.rig.format
        return "\n".join("[" + ", ".join(fmt(v) for v in row) + "]" for row in self.tolist())

    def to_json(self) -> dict[str, Any]:
        return {
            "cols": self.cols,
            "entries": [self.rig.to_json(v) for v in self.entries],
            "rig": self.rig.value,
            "rows": self.rows,
        }

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> RigMatrix:
        try:
            rig = Rig.parse(obj["rig"])
            rows, cols = int(obj["rows"]), int(obj["cols"])
            entries = obj["entries"]
        except KeyError as exc:
            raise RigError(f"matrix literal missing key {exc}") from None
        return cls(rig, rows, cols, tuple(rig.coerce(v) for v in entries))


def _same_rig(a: RigMatrix, b: RigMatrix) -> Rig:
    if a.rig is not b.rig:
        raise RigMismatchError(f"{a.rig.value} vs {b.rig.value}")
    return a.rig


def identity(n: int, rig: Rig | str = Rig.RATIONAL) -> RigMatrix:
    rig = Rig.parse(rig)
    zero, one = rig.zero, rig.one
    return RigMatrix._trusted(rig, n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)))


def zeros(rows: int, cols: int, rig: Rig | str = Rig.RATIONAL) -> RigMatrix:
    rig = Rig.parse(rig)
    return RigMatrix._trusted(rig, rows, cols, (rig.zero,) * (rows * cols))


def mat_mul(a: RigMatrix, b: RigMatrix) -> RigMatrix:
    """Ordinary product ``a @ b``."""
    rig = _same_rig(a, b)
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    n, m, p = a.rows, a.cols, b.cols
    ae, be = a.entries, b.entries
    zero = rig.zero
    out = []
    for i in range(n):
        acc = [zero] * p
        base = i * m
        for k in range(m):
            x = ae[base + k]
            if not x:
                continue
            kb = k * p
            for j in range(p):
                y = be[kb + j]
                if y:
                    acc[j] = acc[j] + x * y
        out.extend(acc)
    return RigMatrix._trusted(rig, n, p, tuple(out))


def mat_add(a: RigMatrix, b: RigMatrix) -> RigMatrix:
    rig = _same_rig(a, b)
    if a.shape != b.shape:
        raise ShapeError(f"cannot add {a.shape} and {b.shape}")
    return RigMatrix._trusted(rig, a.rows, a.cols, tuple(x + y for x, y in zip(a.entries, b.entries)))


def mat_sub(a: RigMatrix, b: RigMatrix) -> RigMatrix:
    rig = _same_rig(a, b)
    if not rig.has_negation:
        raise UnsupportedOperation("naturals have no subtraction")
    if a.shape != b.shape:
        raise ShapeError(f"cannot subtract {a.shape} and {b.shape}")
    return RigMatrix._trusted(rig, a.rows, a.cols, tuple(x - y for x, y in zip(a.entries, b.entries)))


def scale(c: Any, a: RigMatrix) -> RigMatrix:
    c = a.rig.coerce(c)
    return RigMatrix._trusted(a.rig, a.rows, a.cols, tuple(c * x for x in a.entries))


def kron(a: RigMatrix, b: RigMatrix) -> RigMatrix:
    """Kronecker product; row index ``(i, k) -> i * b.rows + k``, likewise columns."""
    rig = _same_rig(a, b)
    rows, cols = a.rows * b.rows, a.cols * b.cols
    out = [rig.zero] * (rows * cols)
    for i in range(a.rows):
        for j in range(a.cols):
            x = a.entries[i * a.cols + j]
            if not x:
                continue
            for k in range(b.rows):
                r = (i * b.rows + k) * cols + j * b.cols
                bk = k * b.cols
                for l in range(b.cols):
                    y = b.entries[bk + l]
                    if y:
                        out[r + l] = x * y
    return RigMatrix._trusted(rig, rows, cols, tuple(out))


def kron_all(mats: Iterable[RigMatrix], rig: Rig | str = Rig.RATIONAL) -> RigMatrix:
    result = None
    for m in mats:
        result = m if result is None else kron(result, m)
    return result if result is not None else identity(1, rig)


def permutation_matrix(perm: Sequence[int], rig: Rig | str = Rig.RATIONAL) -> RigMatrix:
    """Matrix sending ``e_j`` to ``e_{perm[j]}``."""
    rig = Rig.parse(rig)
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{perm} is not a permutation")
    out = [rig.zero] * (n * n)
    for j, i in enumerate(perm):
        out[i * n + j] = rig.one
    return RigMatrix(rig, n, n, tuple(out))


def swap_matrix(d1: int, d2: int, rig: Rig | str = Rig.RATIONAL) -> RigMatrix:
    """The symmetry ``R^d1 (x) R^d2 -> R^d2 (x) R^d1``, ``e_i (x) e_j -> e_j (x) e_i``."""
    if d1 < 1 or d2 < 1:
        raise ShapeError("swap dimensions must be positive")
    return permutation_matrix([j * d1 + i for i in range(d1) for j in range(d2)], rig)


def permute_factors(d: int, perm: Sequence[int], rig: Rig | str = Rig.RATIONAL) -> RigMatrix:
    """Reorder tensor factors of ``(R^d)^{(x) n}``: factor ``i`` moves to slot ``perm[i]``."""
    n = len(perm)
    images = []
    for idx in itertools.product(range(d), repeat=n):
        target = [0] * n
        for i, digit in enumerate(idx):
            target[perm[i]] = digit
        flat = 0
        for digit in target:
            flat = flat * d + digit
        images.append(flat)
    return permutation_matrix(images, rig)


def transpose(a: RigMatrix) -> RigMatrix:
    return RigMatrix._trusted(
        a.rig, a.cols, a.rows,
        tuple(a.entries[i * a.cols + j] for j in range(a.cols) for i in range(a.rows)),
    )


def dagger_matrix(a: RigMatrix) -> RigMatrix:
    """Conjugate transpose; plain transpose over the real rigs."""
    if not a.rig.has_involution:
        raise UnsupportedOperation(f"{a.rig.value} carries no involution")
    t = transpose(a)
    if a.rig is Rig.COMPLEX:
        return RigMatrix._trusted(a.rig, t.rows, t.cols, tuple(v.conjugate() for v in t.entries))
    return t


def conjugate(a: RigMatrix) -> RigMatrix:
    if not a.rig.has_involution:
        raise UnsupportedOperation(f"{a.rig.value} carries no involution")
    return RigMatrix(a.rig, a.rows, a.cols, tuple(a.rig.conj(v) for v in a.entries))


def trace(a: RigMatrix) -> Any:
    if a.rows != a.cols:
        raise ShapeError("trace of a non-square matrix")
    acc = a.rig.zero
    for i in range(a.rows):
        acc = acc + a.entries[i * a.cols + i]
    return acc


def _field_of(rig: Rig) -> Rig:
    return Rig.RATIONAL if rig in (Rig.NATURAL, Rig.INTEGER) else rig


def convert(a: RigMatrix, rig: Rig | str) -> RigMatrix:
    rig = Rig.parse(rig)
    return RigMatrix(rig, a.rows, a.cols, tuple(rig.coerce(v) for v in a.entries))


def inverse(a: RigMatrix) -> RigMatrix:
    """Gauss-Jordan inverse.

    Over naturals and integers the inverse is computed over the rationals and
    must land back in the original rig.
    """
    if a.rows != a.cols:
        raise ShapeError("only square matrices are invertible")
    field = _field_of(a.rig)
    m = convert(a, field)
    n = m.rows
    one, zero = field.one, field.zero
    work = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(m.tolist())]
    for col in range(n):
        if field is Rig.FLOAT:
            pivot = max(range(col, n), key=lambda r: abs(work[r][col]))
            if abs(work[pivot][col]) < FLOAT_TOL:
                raise UnsupportedOperation("matrix is singular")
        else:
            pivot = next((r for r in range(col, n) if work[r][col]), None)
            if pivot is None:
                raise UnsupportedOperation("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        inv = field.inv(work[col][col])
        work[col] = [v * inv for v in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    result = RigMatrix(field, n, n, tuple(v for row in work for v in row[n:]))
    if field is not a.rig:
        try:
            return convert(result, a.rig)
        except RigError:
            raise UnsupportedOperation(f"inverse does not exist over {a.rig.value}") from None
    return result


def is_zero(a: RigMatrix, tol: float = FLOAT_TOL) -> bool:
    zero = a.rig.zero
    return all(a.rig.close(v, zero, tol) for v in a.entries)


def matrices_equal(a: RigMatrix, b: RigMatrix, tol: float = FLOAT_TOL) -> bool:
    """Exact equality for exact rigs, elementwise within ``tol`` for floats."""
    if a.rig is not b.rig or a.shape != b.shape:
        return False
    if a.rig.exact:
        return a.entries == b.entries
    return all(abs(x - y) <= tol for x, y in zip(a.entries, b.entries))


def first_difference(a: RigMatrix, b: RigMatrix, tol: float = FLOAT_TOL) -> tuple[int, int] | None:
    """Index of the first entry where two same-shape matrices disagree."""
    if a.shape != b.shape:
        raise ShapeError(f"{a.shape} vs {b.shape}")
    for idx, (x, y) in enumerate(zip(a.entries, b.entries)):
        if not a.rig.close(x, y, tol):
            return divmod(idx, a.cols)
    return None


def matrix_from_json(obj: Any, rig: Rig, rows: int | None = None, cols: int | None = None) -> RigMatrix:
    """Accept either a full matrix literal or a bare list (flat or nested)."""
    if isinstance(obj, dict) and "entries" in obj:
        m = RigMatrix.from_json({"rig": rig.value, **obj})
        if m.rig is not rig:
            raise RigMismatchError(f"matrix literal over {m.rig.value}, expected {rig.value}")
    elif isinstance(obj, list) and obj and isinstance(obj[0], list):
        m = RigMatrix.from_rows(rig, obj)
    elif isinstance(obj, list):
        if rows is None or cols is None:
            raise ShapeError("flat entry list needs an expected shape")
        m = RigMatrix(rig, rows, cols, tuple(rig.coerce(v) for v in obj))
    else:
        raise RigError(f"cannot read a matrix from {obj!r}")
    if rows is not None and cols is not None and m.shape != (rows, cols):
        if m.rows * m.cols == rows * cols and 1 in m.shape:
            m = RigMatrix(rig, rows, cols, m.entries)
        else:
            raise ShapeError(f"expected {rows}x{cols}, got {m.rows}x{m.cols}")
    return m

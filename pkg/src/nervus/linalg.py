"""Exact linear algebra over the rationals and GF(2).

Matrices are stored column-sparse: a tuple of ``{row: scalar}`` dicts holding
only nonzero entries. Reduction is column-by-column with the lowest nonzero row
as pivot, which makes every result (ranks, kernel bases, homology
representatives) a deterministic function of the input column order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from .errors import MalformedInputError


class GF2:
    """An element of the two-element field."""

    __slots__ = ("v",)

    def __init__(self, v=0):
        if isinstance(v, GF2):
            self.v = v.v
            return
        if isinstance(v, Fraction):
            if v.denominator % 2 == 0:
                raise ZeroDivisionError(f"{v} has no image in GF(2)")
            v = v.numerator
        self.v = int(v) & 1

    def __add__(self, other):
        return GF2(self.v ^ GF2(other).v)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        return GF2(self.v & GF2(other).v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not GF2(other).v:
            raise ZeroDivisionError("division by zero in GF(2)")
        return self

    def __bool__(self):
        return bool(self.v)

    def __eq__(self, other):
        if isinstance(other, (GF2, int, Fraction)):
            try:
                return self.v == GF2(other).v
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash(self.v)

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"GF2({self.v})"

    def __str__(self):
        return str(self.v)


@dataclass(frozen=True)
class Field:
    name: str

    def __call__(self, x):
        if self.name == "GF2":
            return GF2(x)
        if isinstance(x, GF2):
            return Fraction(x.v)
        return Fraction(x)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __str__(self):
        return self.name


Q = Field("Q")
F2 = Field("GF2")


def get_field(field: Field | str) -> Field:
    if isinstance(field, Field):
        return field
    key = str(field).upper().replace("(", "").replace(")", "")
    if key in ("Q", "QQ", "RATIONAL", "RATIONALS"):
        return Q
    if key in ("GF2", "F2", "Z2"):
        return F2
    raise MalformedInputError(f"unknown field {field!r}; expected 'Q' or 'GF2'")


def format_scalar(x) -> str:
    """Rationals as ``"num/den"``; GF(2) bits as ``"0"``/``"1"``."""
    if isinstance(x, GF2):
        return str(x.v)
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_scalar(text, field: Field = Q):
    if isinstance(text, (int, Fraction, GF2)):
        return field(text)
    try:
        return field(Fraction(str(text).strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInputError(f"bad coefficient {text!r}") from exc


@dataclass(frozen=True)
class SparseMatrix:
    nrows: int
    ncols: int
    cols: tuple  # one {row: scalar} dict per column, nonzero entries only

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], field: Field = Q, ncols: int | None = None):
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        cols = [dict() for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise MalformedInputError("ragged matrix")
            for j, x in enumerate(row):
                x = field(x)
                if x:
                    cols[j][i] = x
        return cls(nrows, ncols, tuple(cols))

    @classmethod
    def zeros(cls, nrows: int, ncols: int):
        return cls(nrows, ncols, tuple({} for _ in range(ncols)))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def to_dense(self, field: Field = Q) -> list[list]:
        out = [[field.zero] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                out[i][j] = x
        return out

    def transpose(self) -> "SparseMatrix":
        cols = [dict() for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                cols[i][j] = x
        return SparseMatrix(self.ncols, self.nrows, tuple(cols))

    def apply(self, v: Mapping[int, object]) -> dict:
        out: dict = {}
        for j, c in v.items():
            if not c:
                continue
            for i, x in self.cols[j].items():
                y = out.get(i, 0) + c * x
                if y:
                    out[i] = y
                else:
                    out.pop(i, None)
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return SparseMatrix(self.nrows, other.ncols, tuple(self.apply(c) for c in other.cols))

    def is_zero(self) -> bool:
        return not any(self.cols)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and all(a == b for a, b in zip(self.cols, other.cols))

    __hash__ = None


def _rank_gf2(cols: Iterable[Mapping]) -> int:
    pivots: dict[int, int] = {}
    for col in cols:
        v = 0
        for i, x in col.items():
            if x:
                v ^= 1 << i
        while v:
            low = v.bit_length() - 1
            p = pivots.get(low)
            if p is None:
                pivots[low] = v
                break
            v ^= p
    return len(pivots)


def _integral(col: Mapping) -> dict[int, int]:
    den = 1
    for x in col.values():
        d = Fraction(x).denominator
        den = den * d // gcd(den, d)
    return {i: int(Fraction(x) * den) for i, x in col.items() if x}


def _rank_q(cols: Iterable[Mapping]) -> int:
    # fraction-free: v <- a*v - b*p, then strip the content
    pivots: dict[int, dict[int, int]] = {}
    for col in cols:
        v = _integral(col)
        while v:
            low = max(v)
            p = pivots.get(low)
            if p is None:
                pivots[low] = v
                break
            a, b = p[low], v[low]
            new = {i: a * x for i, x in v.items()}
            for i, x in p.items():
                y = new.get(i, 0) - b * x
                if y:
                    new[i] = y
                else:
                    del new[i]
            g = 0
            for x in new.values():
                g = gcd(g, x)
                if g == 1:
                    break
            if g > 1:
                new = {i: x // g for i, x in new.items()}
            v = new
    return len(pivots)


def rank(m: SparseMatrix, field: Field | str = Q) -> int:
    field = get_field(field)
    if field is F2 or field.name == "GF2":
        return _rank_gf2(m.cols)
    return _rank_q(m.cols)


def _axpy(y: dict, a, x: Mapping) -> None:
    """y <- y + a*x in place, dropping zeros."""
    for i, xi in x.items():
        v = y.get(i, 0) + a * xi
        if v:
            y[i] = v
        else:
            y.pop(i, None)


class ColumnReducer:
    """Incremental column reduction with recipes.

    Every stored pivot column ``r`` is kept together with a recipe ``R`` such
    that ``r = sum(R[k] * original_k)`` over the columns inserted so far.
    """

    def __init__(self, field: Field | str = Q):
        self.field = get_field(field)
        self._pivots: dict[int, tuple[dict, dict]] = {}
        self.count = 0

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def reduce(self, v: Mapping[int, object]) -> tuple[dict, dict]:
        """Return ``(rem, coeffs)`` with ``v = rem + sum(coeffs[k] * original_k)``.

        ``rem`` is empty exactly when ``v`` lies in the span of the inserted columns.
        """
        f = self.field
        v = {i: f(x) for i, x in v.items() if x}
        acc: dict = {}
        while v:
            low = max(v)
            piv = self._pivots.get(low)
            if piv is None:
                break
            r, recipe = piv
            c = v[low] / r[low]
            _axpy(v, -c, r)
            _axpy(acc, c, recipe)
        return v, acc

    def add(self, v: Mapping[int, object]) -> tuple[int, dict, dict]:
        """Insert a column. Returns ``(index, rem, recipe)``; ``rem = sum(recipe[k] * original_k)``.

        When ``rem`` is empty the recipe is a linear dependency among the originals.
        """
        k = self.count
        self.count += 1
        rem, acc = self.reduce(v)
        recipe = {i: -c for i, c in acc.items()}
        recipe[k] = self.field.one
        if rem:
            self._pivots[max(rem)] = (rem, recipe)
        return k, rem, recipe


def nullspace(m: SparseMatrix, field: Field | str = Q) -> list[dict]:
    """Kernel basis of ``m`` as sparse vectors over the column index set.

    Each basis vector has coefficient one on the column that first became
    dependent; the rest are earlier columns.
    """
    red = ColumnReducer(field)
    out = []
    for col in m.cols:
        _, rem, recipe = red.add(col)
        if not rem:
            out.append(recipe)
    return out


def solve_in_span(columns: Sequence[Mapping], target: Mapping, field: Field | str = Q) -> dict | None:
    """Coefficients ``c`` with ``target = sum(c[k] * columns[k])``, or None."""
    red = ColumnReducer(field)
    for col in columns:
        red.add(col)
    rem, acc = red.reduce(target)
    if rem:
        return None
    return acc


def dense_matmul(a: Sequence[Sequence], b: Sequence[Sequence], field: Field = Q) -> list[list]:
    if not a or not b:
        n = len(a)
        m = len(b[0]) if b else 0
        return [[field.zero] * m for _ in range(n)]
    inner = len(b)
    return [
        [sum((row[k] * b[k][j] for k in range(inner)), field.zero) for j in range(len(b[0]))]
        for row in a
    ]

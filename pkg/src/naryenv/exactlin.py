"""Exact scalars and sparse linear algebra over Q and Q(w), w a primitive cube root of unity."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple, Union


class QW:
    """Element a + b*w of Q(w), with w**2 = -w - 1."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def _coerce(other) -> Optional["QW"]:
        if isinstance(other, QW):
            return other
        if isinstance(other, (int, Fraction)):
            return QW(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QW(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QW(-self.a, -self.b)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QW(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # (a + bw)(c + dw) = ac + (ad + bc)w + bd w^2, and w^2 = -1 - w
        ac = self.a * o.a
        bd = self.b * o.b
        return QW(ac - bd, self.a * o.b + self.b * o.a - bd)

    __rmul__ = __mul__

    def conjugate(self) -> "QW":
        # w -> w^2 = -1 - w
        return QW(self.a - self.b, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def inverse(self) -> "QW":
        nrm = self.norm()
        if nrm == 0:
            raise ZeroDivisionError("division by zero in Q(w)")
        c = self.conjugate()
        return QW(c.a / nrm, c.b / nrm)

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

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = QW(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"QW({self.a!s}, {self.b!s})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[Fraction, QW]
OMEGA = QW(0, 1)

_RAT = r"[+-]?\d+(?:/\d+)?"
_RAT_RE = re.compile(rf"^{_RAT}$")
_QW_RE = re.compile(rf"^(?:(?P<a>{_RAT}))?(?:(?P<sign>[+-])?(?:(?P<b>\d+(?:/\d+)?)\*)?w)?$")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not _RAT_RE.match(text):
        raise ValueError(f"bad rational literal {text!r}")
    if "/" in text and int(text.split("/")[1]) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(text)


def parse_scalar(text: str, field: str = "Q") -> Scalar:
    """Parse ``p``, ``p/q`` or (for field ``Qw``) ``a+b*w`` literals."""
    text = text.strip().replace(" ", "")
    if "w" not in text:
        value = parse_rational(text)
        return QW(value) if field == "Qw" else value
    if field != "Qw":
        raise ValueError(f"cyclotomic literal {text!r} outside field Qw")
    # normalise "a+-b*w" to "a-b*w"
    text = text.replace("+-", "-").replace("-+", "-")
    m = _QW_RE.match(text)
    if not m or text in ("", "+", "-"):
        raise ValueError(f"bad cyclotomic literal {text!r}")
    a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
    b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
    if m.group("sign") == "-":
        b = -b
    elif m.group("sign") is None and m.group("a") is not None:
        # "3w" without an operator is not valid syntax
        raise ValueError(f"bad cyclotomic literal {text!r}")
    return QW(a, b)


def _format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_scalar(x) -> str:
    if isinstance(x, QW):
        if x.b == 0:
            return _format_rational(x.a)
        sign = "-" if x.b < 0 else "+"
        return f"{_format_rational(x.a)}{sign}{_format_rational(abs(x.b))}*w"
    return _format_rational(x)


def to_field(x, field: str) -> Scalar:
    if field == "Qw":
        return x if isinstance(x, QW) else QW(x)
    if isinstance(x, QW):
        if x.b != 0:
            raise ValueError(f"{format_scalar(x)} is not rational")
        return x.a
    return Fraction(x)


# ---------------------------------------------------------------------------
# sparse vectors: dict key -> nonzero scalar; keys must be mutually comparable

Key = Hashable
SparseVec = Dict[Key, Scalar]


def vec_clean(v: Mapping) -> SparseVec:
    return {k: c for k, c in v.items() if c}


def vec_axpy(acc: SparseVec, coef, v: Mapping) -> SparseVec:
    """acc += coef * v in place; returns acc."""
    if not coef:
        return acc
    for k, c in v.items():
        s = acc.get(k, 0) + coef * c
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)
    return acc


def vec_scale(v: Mapping, coef) -> SparseVec:
    if not coef:
        return {}
    return {k: coef * c for k, c in v.items()}


class EchelonBasis:
    """Incremental fully reduced row echelon form.

    Pivot of a row is its smallest key; every pivot is normalised to 1 and
    cleared from all other rows, so the stored basis is the canonical RREF of
    the span, independent of insertion order.
    """

    def __init__(self, vectors: Iterable[Mapping] = ()):
        self.rows: Dict[Key, SparseVec] = {}
        for v in vectors:
            self.add(v)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> List[Key]:
        return sorted(self.rows)

    def basis(self) -> List[SparseVec]:
        return [self.rows[p] for p in sorted(self.rows)]

    def reduce(self, v: Mapping) -> SparseVec:
        """Remainder of ``v`` modulo the span; supported on non-pivot keys."""
        r = vec_clean(v)
        hits = [k for k in r if k in self.rows]
        for p in hits:
            c = r.get(p)
            if c:
                vec_axpy(r, -c, self.rows[p])
        return r

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    def add(self, v: Mapping) -> bool:
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = Fraction(1) / r[p]
        if inv != 1:
            r = {k: c * inv for k, c in r.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                vec_axpy(row, -c, r)
        self.rows[p] = r
        return True

    def extend(self, vectors: Iterable[Mapping]) -> int:
        return sum(1 for v in vectors if self.add(v))


# ---------------------------------------------------------------------------
# matrices


class Matrix:
    """Sparse matrix; ``rows`` maps row index -> {col index: nonzero scalar}."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, entries: Optional[Mapping[Tuple[int, int], Scalar]] = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows: Dict[int, SparseVec] = {}
        for (r, c), x in (entries or {}).items():
            self[r, c] = x

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence]) -> "Matrix":
        nrows = len(dense)
        ncols = len(dense[0]) if nrows else 0
        m = cls(nrows, ncols)
        for r, row in enumerate(dense):
            if len(row) != ncols:
                raise ValueError("ragged dense matrix")
            for c, x in enumerate(row):
                if x:
                    m.rows.setdefault(r, {})[c] = Fraction(x) if isinstance(x, int) else x
        return m

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Mapping[int, Scalar]]) -> "Matrix":
        m = cls(nrows, len(columns))
        for c, col in enumerate(columns):
            for r, x in col.items():
                if x:
                    m.rows.setdefault(r, {})[c] = x
        return m

    def __getitem__(self, rc: Tuple[int, int]):
        r, c = rc
        return self.rows.get(r, {}).get(c, 0)

    def __setitem__(self, rc: Tuple[int, int], x) -> None:
        r, c = rc
        if not (0 <= r < self.nrows and 0 <= c < self.ncols):
            raise IndexError(rc)
        if x:
            self.rows.setdefault(r, {})[c] = x
        else:
            row = self.rows.get(r)
            if row is not None:
                row.pop(c, None)
                if not row:
                    del self.rows[r]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def nnz(self) -> int:
        return sum(len(row) for row in self.rows.values())

    def is_zero(self) -> bool:
        return not self.rows

    def entries(self):
        for r in sorted(self.rows):
            row = self.rows[r]
            for c in sorted(row):
                yield (r, c), row[c]

    def column(self, c: int) -> SparseVec:
        return {r: row[c] for r, row in self.rows.items() if c in row}

    def columns(self) -> List[SparseVec]:
        cols: List[SparseVec] = [{} for _ in range(self.ncols)]
        for r, row in self.rows.items():
            for c, x in row.items():
                cols[c][r] = x
        return cols

    def transpose(self) -> "Matrix":
        t = Matrix(self.ncols, self.nrows)
        for r, row in self.rows.items():
            for c, x in row.items():
                t.rows.setdefault(c, {})[r] = x
        return t

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = Matrix(self.nrows, other.ncols)
        for r, row in self.rows.items():
            acc: SparseVec = {}
            for k, x in row.items():
                orow = other.rows.get(k)
                if orow:
                    vec_axpy(acc, x, orow)
            if acc:
                out.rows[r] = acc
        return out

    def apply(self, v: Mapping[int, Scalar]) -> SparseVec:
        """Matrix times column vector given sparsely."""
        out: SparseVec = {}
        for r, row in self.rows.items():
            s = 0
            for c, x in row.items():
                y = v.get(c)
                if y:
                    s = s + x * y
            if s:
                out[r] = s
        return out

    def to_dense(self) -> List[List]:
        return [[self[r, c] for c in range(self.ncols)] for r in range(self.nrows)]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def rank(m: Matrix) -> int:
    """Exact rank by elimination on the sparse rows."""
    eb = EchelonBasis()
    for r in sorted(m.rows):
        eb.add(m.rows[r])
    return eb.rank


def _as_sparse(v: Sequence) -> SparseVec:
    return {i: x for i, x in enumerate(v) if x}


def in_span(v: Sequence, basis: Sequence[Sequence]) -> bool:
    for b in basis:
        if len(b) != len(v):
            raise ValueError(f"dimension mismatch: {len(b)} != {len(v)}")
    return EchelonBasis(_as_sparse(b) for b in basis).contains(_as_sparse(v))


def quotient_basis(ambient_dim: int, subspace: Sequence[Sequence]) -> List[List[Fraction]]:
    """Standard basis vectors at the non-pivot columns of the subspace's RREF."""
    for b in subspace:
        if len(b) != ambient_dim:
            raise ValueError(f"dimension mismatch: {len(b)} != {ambient_dim}")
    pivots = set(EchelonBasis(_as_sparse(b) for b in subspace).rows)
    reps = []
    for i in range(ambient_dim):
        if i not in pivots:
            e = [Fraction(0)] * ambient_dim
            e[i] = Fraction(1)
            reps.append(e)
    return reps

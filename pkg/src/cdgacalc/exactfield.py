"""Exact scalars over Q and F_p, and sparse exact linear algebra.

Scalars over Q are :class:`fractions.Fraction` (arbitrary precision, always in
lowest terms); scalars over F_p are ``int`` residues in ``range(p)``.
Vectors are sparse ``dict[int, scalar]`` with no zero entries.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Scalar = "Fraction | int"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """Q (``characteristic == 0``) or the prime field F_p."""

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if not isinstance(c, int) or (c != 0 and not _is_prime(c)):
            raise ValueError(f"characteristic must be 0 or a prime, got {c!r}")

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime-field"

    @property
    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def __call__(self, x):
        """Coerce an int, Fraction or ``"a/b"`` string into canonical form."""
        p = self.characteristic
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
            raise TypeError(f"cannot coerce {x!r} to a scalar")
        if p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"{x} has denominator divisible by {p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        return x % p

    def add(self, a, b):
        return a + b if self.characteristic == 0 else (a + b) % self.characteristic

    def sub(self, a, b):
        return a - b if self.characteristic == 0 else (a - b) % self.characteristic

    def mul(self, a, b):
        return a * b if self.characteristic == 0 else a * b % self.characteristic

    def neg(self, a):
        return -a if self.characteristic == 0 else -a % self.characteristic

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic == 0:
            return Fraction(1) / a
        return pow(a, -1, self.characteristic)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_canonical(self, a) -> bool:
        if self.characteristic == 0:
            return type(a) is Fraction
        return type(a) is int and 0 <= a < self.characteristic

    def sign(self, negative: bool):
        return self.neg(self.one) if negative else self.one

    def format(self, a) -> str:
        if self.characteristic == 0:
            return str(a)
        return str(int(a))

    def __str__(self):
        return "Q" if self.characteristic == 0 else f"Fp:{self.characteristic}"

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Accepts ``q``/``Q`` or ``fp:<p>`` (any case)."""
        t = text.strip().lower()
        if t in ("q", "qq", "rationals"):
            return cls(0)
        if t.startswith("fp:") or t.startswith("f_p:"):
            try:
                p = int(t.split(":", 1)[1])
            except ValueError:
                raise ValueError(f"bad field {text!r}") from None
            return cls(p)
        raise ValueError(f"bad field {text!r}; expected 'q' or 'fp:<p>'")


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


# --- sparse vector helpers ---------------------------------------------------

def axpy(F: Field, y: dict, a, x: Mapping) -> None:
    """In place ``y += a*x`` on sparse vectors, dropping zeros."""
    p = F.characteristic
    if p:
        for j, v in x.items():
            w = (y.get(j, 0) + a * v) % p
            if w:
                y[j] = w
            else:
                y.pop(j, None)
    else:
        for j, v in x.items():
            w = y.get(j, 0) + a * v
            if w:
                y[j] = w
            else:
                y.pop(j, None)


def scale(F: Field, a, x: Mapping) -> dict:
    if not a:
        return {}
    return {j: F.mul(a, v) for j, v in x.items()}


def clean(F: Field, x: Mapping) -> dict:
    return {j: F(v) for j, v in x.items() if F(v)}


# --- incremental echelon form -----------------------------------------------

class Echelon:
    """Row space of sparse vectors kept in echelon form.

    Each stored row is normalised so that its pivot (its smallest column) has
    entry 1.  :meth:`reduce` returns the unique representative of a vector
    modulo the row space that vanishes on every pivot column.
    """

    def __init__(self, F: Field):
        self.F = F
        self.rows: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def reduce(self, vec: Mapping) -> dict:
        F, rows = self.F, self.rows
        v = {j: c for j, c in vec.items() if c}
        heap = [j for j in v if j in rows]
        heapq.heapify(heap)
        while heap:
            j = heapq.heappop(heap)
            c = v.get(j)
            if not c:
                continue
            row = rows[j]
            for jj in row:
                if jj != j and jj in rows and jj not in v:
                    heapq.heappush(heap, jj)
            axpy(F, v, F.neg(c), row)
        return v

    def add(self, vec: Mapping) -> bool:
        """Insert ``vec``; returns False when it was already in the span."""
        v = self.reduce(vec)
        if not v:
            return False
        piv = min(v)
        inv = self.F.inv(v[piv])
        self.rows[piv] = {j: self.F.mul(inv, c) for j, c in v.items()}
        return True

    def __contains__(self, vec) -> bool:
        return not self.reduce(vec)

    def reduced_rows(self) -> list[dict]:
        """Rows of the reduced row-echelon form, ordered by pivot."""
        out: dict[int, dict] = {}
        sub = Echelon(self.F)
        for piv in sorted(self.rows, reverse=True):
            r = sub.reduce(self.rows[piv])
            out[piv] = r
            sub.rows[piv] = r
        return [out[p] for p in sorted(out)]


# --- matrices ----------------------------------------------------------------

@dataclass(frozen=True)
class Matrix:
    """Exact matrix stored as a tuple of sparse rows."""

    F: Field
    nrows: int
    ncols: int
    rows: tuple = field(repr=False)

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise ValueError("row count mismatch")
        for r in self.rows:
            for j, v in r.items():
                if not 0 <= j < self.ncols:
                    raise ValueError(f"column {j} out of range")
                if not v or not self.F.is_canonical(v):
                    raise ValueError(f"non-canonical entry {v!r}")

    @classmethod
    def from_rows(cls, F: Field, rows: Sequence[Sequence], ncols: int | None = None) -> "Matrix":
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        sparse = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            sparse.append({j: F(v) for j, v in enumerate(r) if F(v)})
        return cls(F, len(rows), ncols, tuple(sparse))

    @classmethod
    def from_sparse(cls, F: Field, rows: Iterable[Mapping], ncols: int) -> "Matrix":
        rows = tuple(clean(F, r) for r in rows)
        return cls(F, len(rows), ncols, rows)

    @classmethod
    def identity(cls, F: Field, n: int) -> "Matrix":
        return cls(F, n, n, tuple({i: F.one} for i in range(n)))

    def to_dense(self) -> list[list]:
        out = []
        for r in self.rows:
            row = [self.F.zero] * self.ncols
            for j, v in r.items():
                row[j] = v
            out.append(row)
        return out

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i].get(j, self.F.zero)

    def apply(self, x: Sequence) -> list:
        """Matrix-vector product for a dense coordinate vector ``x``."""
        if len(x) != self.ncols:
            raise ValueError("dimension mismatch")
        F = self.F
        out = []
        for r in self.rows:
            s = F.zero
            for j, v in r.items():
                s = F.add(s, F.mul(v, F(x[j])))
            out.append(s)
        return out

    def transpose(self) -> "Matrix":
        cols: list[dict] = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                cols[j][i] = v
        return Matrix(self.F, self.ncols, self.nrows, tuple(cols))


def rref(m: Matrix) -> tuple[Matrix, list[int], int]:
    """Reduced row-echelon form, pivot columns and rank.

    Pivots are the first nonzero entry of each row in column order, so the
    result is the unique reduced form of the row space.  Zero rows are kept
    at the bottom to preserve the shape.
    """
    E = Echelon(m.F)
    for r in m.rows:
        E.add(r)
    red = E.reduced_rows()
    pivots = E.pivots
    rows = tuple(red) + tuple({} for _ in range(m.nrows - len(red)))
    return Matrix(m.F, m.nrows, m.ncols, rows), pivots, len(pivots)


def kernel_basis(m: Matrix) -> list[list]:
    """Basis of the null space ``{x : m x = 0}`` as dense coordinate lists.

    One vector per free column, with a 1 in that column (the standard basis
    read off the reduced form).
    """
    F = m.F
    red, pivots, _ = rref(m)
    pivset = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivset:
            continue
        x = [F.zero] * m.ncols
        x[free] = F.one
        for r in red.rows[: len(pivots)]:
            piv = min(r)
            c = r.get(free)
            if c:
                x[piv] = F.neg(c)
        basis.append(x)
    return basis


def solve(m: Matrix, b: Sequence) -> list | None:
    """Some ``x`` with ``m x = b``, or None when the system is inconsistent."""
    if len(b) != m.nrows:
        raise ValueError("right-hand side length must equal row count")
    F = m.F
    n = m.ncols
    aug = [dict(r) for r in m.rows]
    for i, bi in enumerate(b):
        bi = F(bi)
        if bi:
            aug[i][n] = bi
    E = Echelon(F)
    for r in aug:
        E.add(r)
    if n in E.rows:
        return None
    x = [F.zero] * n
    for r in E.reduced_rows():
        x[min(r)] = r.get(n, F.zero)
    return x


def rank(m: Matrix) -> int:
    E = Echelon(m.F)
    for r in m.rows:
        E.add(r)
    return E.rank


def linear_kernel(F: Field, images: Sequence[Mapping]) -> tuple[list[dict], int]:
    """Kernel of the map sending basis vector ``i`` to ``images[i]``.

    Returns ``(kernel, rank)``; kernel vectors are sparse over the domain
    basis and come out in reduced echelon form.
    """
    offset = 1 + max((max(v) for v in images if v), default=-1)
    E = Echelon(F)
    for i, img in enumerate(images):
        row = dict(img)
        row[offset + i] = F.one
        E.add(row)
    kernel_rows = [r for piv, r in E.rows.items() if piv >= offset]
    rk = E.rank - len(kernel_rows)
    K = Echelon(F)
    for r in kernel_rows:
        K.add({j - offset: c for j, c in r.items()})
    return K.reduced_rows(), rk

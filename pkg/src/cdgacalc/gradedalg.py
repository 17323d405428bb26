"""Presented graded algebras over Q or F_p, truncated at a maximum degree.

Two kinds of monomials are supported:

* graded-commutative mode (``"gc"``): an exponent tuple indexed by the
  generators, multiplied with the Koszul sign rule.  Exterior generators
  square to zero in every characteristic, odd ``koszul`` generators square
  to zero only when 2 is invertible, and divided-power generators carry the
  index ``i`` of the basis element ``x_[i]``.
* tensor mode (``"tensor"``): words, i.e. tuples of generator indices.

:class:`ProductAlgebra` glues several such algebras together; its blocks
commute past each other with Koszul signs.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .exactfield import Echelon, Field

KOSZUL = "koszul"
EXTERIOR = "exterior"
DIVIDED = "divided-power"
FLAVORS = (KOSZUL, EXTERIOR, DIVIDED)

GC = "gc"
TENSOR = "tensor"

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class TruncationError(ValueError):
    """Raised when a degree beyond the algebra's truncation is requested."""


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    flavor: str = KOSZUL

    def __post_init__(self):
        if not _IDENT.match(self.name):
            raise ValueError(f"bad generator name {self.name!r}")
        if not isinstance(self.degree, int) or self.degree < 1:
            raise ValueError(f"generator {self.name}: degree must be a positive integer")
        if self.flavor not in FLAVORS:
            raise ValueError(f"generator {self.name}: unknown flavor {self.flavor!r}")
        if self.flavor == DIVIDED and self.degree % 2:
            raise ValueError(f"divided-power generator {self.name} must have even degree")


def _as_generators(gens) -> tuple[Generator, ...]:
    out = []
    for g in gens:
        if isinstance(g, Generator):
            out.append(g)
        elif isinstance(g, dict):
            out.append(Generator(g["name"], g["degree"], g.get("flavor", KOSZUL)))
        else:
            out.append(Generator(*g))
    return tuple(out)


class _AlgebraBase:
    """Operations shared by every algebra flavour."""

    def index(self, name: str) -> int:
        try:
            return self._names[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def gen(self, name: str) -> "Element":
        return Element(self, {self._gen_monomial(self.index(name)): self.field.one})

    def one(self) -> "Element":
        return Element(self, {self.unit: self.field.one})

    def zero(self) -> "Element":
        return Element(self, {})

    def monomial(self, m) -> "Element":
        return Element(self, {m: self.field.one})

    def parse(self, text: str, params: dict | None = None) -> "Element":
        from .expr import parse_element

        return parse_element(self, text, params or {})

    def basis(self, n: int) -> list:
        if n < 0:
            return []
        if n > self.truncation:
            raise TruncationError(f"degree {n} exceeds truncation {self.truncation}")
        return _basis(self, n)

    def basis_index(self, n: int) -> dict:
        return _basis_index(self, n)

    def hilbert(self, n_max: int | None = None) -> "HilbertSeries":
        return hilbert(self, None, self.truncation if n_max is None else n_max)

    def degrees(self) -> list[int]:
        return [g.degree for g in self.generators]

    def format_element(self, terms: dict) -> str:
        if not terms:
            return "0"
        F = self.field
        parts = []
        for m in sorted(terms, key=self.sort_key):
            c = terms[m]
            mono = self.format_monomial(m)
            if F.characteristic == 0:
                neg = c < 0
                a = -c if neg else c
            else:
                neg, a = False, c
            if mono == "1":
                body = F.format(a)
            elif a == 1:
                body = mono
            else:
                body = f"{F.format(a)}*{mono}"
            parts.append(("-" if neg else "+", body))
        s = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


@dataclass(frozen=True, eq=True)
class GradedAlgebra(_AlgebraBase):
    """A free graded algebra (commutative with Koszul signs, or tensor)."""

    field: Field
    generators: tuple
    mode: str = GC
    truncation: int = 12
    _names: dict = dc_field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        gens = _as_generators(self.generators)
        object.__setattr__(self, "generators", gens)
        names = {}
        for i, g in enumerate(gens):
            if g.name in names:
                raise ValueError(f"duplicate generator name {g.name!r}")
            names[g.name] = i
        object.__setattr__(self, "_names", names)
        if self.mode not in (GC, TENSOR):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == TENSOR and any(g.flavor == DIVIDED for g in gens):
            raise ValueError("tensor mode does not allow divided-power generators")
        if not isinstance(self.truncation, int) or self.truncation < 1:
            raise ValueError("truncation must be >= 1")

    def __hash__(self):
        return hash((self.field, self.generators, self.mode, self.truncation))

    # --- monomials ---------------------------------------------------------

    @property
    def unit(self):
        return (0,) * len(self.generators) if self.mode == GC else ()

    def _gen_monomial(self, i: int):
        if self.mode == TENSOR:
            return (i,)
        m = [0] * len(self.generators)
        m[i] = 1
        return tuple(m)

    def max_exponent(self, i: int) -> int | None:
        g = self.generators[i]
        if g.flavor == EXTERIOR:
            return 1
        if g.flavor == KOSZUL and g.degree % 2 and self.field.characteristic != 2:
            return 1
        return None

    def degree(self, m) -> int:
        gens = self.generators
        if self.mode == TENSOR:
            return sum(gens[i].degree for i in m)
        return sum(e * g.degree for e, g in zip(m, gens) if e)

    def sort_key(self, m):
        if self.mode == TENSOR:
            return (self.degree(m), m)
        return (self.degree(m), tuple(-e for e in m))

    def mul_monomials(self, m1, m2):
        """Product of two monomials as ``(coefficient, monomial)`` or None."""
        if self.mode == TENSOR:
            return self.field.one, m1 + m2
        F = self.field
        gens = self.generators
        out = list(m1)
        coeff = F.one
        odd_suffix = 0  # parity of the degree of m1's part strictly after position j
        n = len(gens)
        # sign: moving each factor of m2 left past the later factors of m1
        parity = 0
        for j in range(n - 1, -1, -1):
            f = m2[j]
            if f and odd_suffix and gens[j].degree % 2 and f % 2:
                parity ^= 1
            e = m1[j]
            if e and gens[j].degree % 2 and e % 2:
                odd_suffix ^= 1
        for j in range(n):
            f = m2[j]
            if not f:
                continue
            e = m1[j]
            g = gens[j]
            cap = self.max_exponent(j)
            if cap is not None and e + f > cap:
                return None
            if g.flavor == DIVIDED:
                c = F(comb(e + f, e))
                if not c:
                    return None
                coeff = F.mul(coeff, c)
            out[j] = e + f
        if parity:
            coeff = F.neg(coeff)
        return coeff, tuple(out)

    def format_monomial(self, m) -> str:
        gens = self.generators
        if self.mode == TENSOR:
            if not m:
                return "1"
            parts = []
            i = 0
            while i < len(m):
                j = i
                while j < len(m) and m[j] == m[i]:
                    j += 1
                name = gens[m[i]].name
                parts.append(name if j - i == 1 else f"{name}^{j - i}")
                i = j
            return "*".join(parts)
        parts = []
        for e, g in zip(m, gens):
            if not e:
                continue
            if e == 1:
                parts.append(g.name)
            elif g.flavor == DIVIDED:
                parts.append(f"{g.name}[{e}]")
            else:
                parts.append(f"{g.name}^{e}")
        return "*".join(parts) if parts else "1"

    def leibniz_factors(self, m):
        """Split ``m`` into generator powers ``(gen index, exponent, monomial)``.

        The ordered product of the factor monomials is ``m`` with sign +1.
        """
        if self.mode == TENSOR:
            return [(i, 1, (i,)) for i in m]
        out = []
        k = len(m)
        for i, e in enumerate(m):
            if e:
                f = [0] * k
                f[i] = e
                out.append((i, e, tuple(f)))
        return out

    def factor_power(self, i: int, e: int):
        """Monomial for the ``e``-th power (divided power index) of generator i."""
        if self.mode == TENSOR:
            return (i,) * e
        f = [0] * len(self.generators)
        f[i] = e
        return tuple(f)

    def _enumerate(self, n: int) -> list:
        gens = self.generators
        if self.mode == TENSOR:
            out = []

            def words(prefix, rest):
                if rest == 0:
                    out.append(tuple(prefix))
                    return
                for i, g in enumerate(gens):
                    if g.degree <= rest:
                        prefix.append(i)
                        words(prefix, rest - g.degree)
                        prefix.pop()

            words([], n)
            out.sort()
            return out
        k = len(gens)
        out = []
        exps = [0] * k

        def rec(i, rest):
            if i == k:
                if rest == 0:
                    out.append(tuple(exps))
                return
            d = gens[i].degree
            top = rest // d
            cap = self.max_exponent(i)
            if cap is not None:
                top = min(top, cap)
            for e in range(top, -1, -1):
                exps[i] = e
                rec(i + 1, rest - e * d)
            exps[i] = 0

        rec(0, n)
        return out


@dataclass(frozen=True, eq=True)
class ProductAlgebra(_AlgebraBase):
    """Tensor product of algebras whose blocks commute with Koszul signs."""

    factors: tuple
    truncation: int = 0
    _names: dict = dc_field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        flat = []
        for f in self.factors:
            flat.extend(f.factors if isinstance(f, ProductAlgebra) else [f])
        object.__setattr__(self, "factors", tuple(flat))
        fields = {f.field for f in flat}
        if len(fields) != 1:
            raise ValueError("tensor factors must share a field")
        names = {}
        for i, g in enumerate(self.generators):
            if g.name in names:
                raise ValueError(f"duplicate generator name {g.name!r}")
            names[g.name] = i
        object.__setattr__(self, "_names", names)
        t = min(f.truncation for f in flat)
        if not self.truncation or self.truncation > t:
            object.__setattr__(self, "truncation", t)

    def __hash__(self):
        return hash((self.factors, self.truncation))

    @property
    def field(self) -> Field:
        return self.factors[0].field

    @property
    def generators(self) -> tuple:
        return tuple(g for f in self.factors for g in f.generators)

    @property
    def mode(self) -> str:
        return "mixed"

    @property
    def unit(self):
        return tuple(f.unit for f in self.factors)

    def _locate(self, i: int):
        for b, f in enumerate(self.factors):
            if i < len(f.generators):
                return b, i
            i -= len(f.generators)
        raise IndexError(i)

    def _offset(self, b: int) -> int:
        return sum(len(f.generators) for f in self.factors[:b])

    def _lift(self, b: int, m):
        u = list(self.unit)
        u[b] = m
        return tuple(u)

    def _gen_monomial(self, i: int):
        b, j = self._locate(i)
        return self._lift(b, self.factors[b]._gen_monomial(j))

    def degree(self, m) -> int:
        return sum(f.degree(x) for f, x in zip(self.factors, m))

    def sort_key(self, m):
        return (self.degree(m), tuple(f.sort_key(x) for f, x in zip(self.factors, m)))

    def mul_monomials(self, m1, m2):
        F = self.field
        coeff = F.one
        out = []
        parity = 0
        degs1 = [f.degree(x) for f, x in zip(self.factors, m1)]
        degs2 = [f.degree(x) for f, x in zip(self.factors, m2)]
        for b in range(len(self.factors)):
            later = sum(degs1[b + 1:])
            parity ^= (later * degs2[b]) & 1
        for f, x, y in zip(self.factors, m1, m2):
            r = f.mul_monomials(x, y)
            if r is None:
                return None
            coeff = F.mul(coeff, r[0])
            out.append(r[1])
        if parity:
            coeff = F.neg(coeff)
        return coeff, tuple(out)

    def format_monomial(self, m) -> str:
        parts = [f.format_monomial(x) for f, x in zip(self.factors, m)]
        parts = [p for p in parts if p != "1"]
        return "*".join(parts) if parts else "1"

    def leibniz_factors(self, m):
        out = []
        for b, (f, x) in enumerate(zip(self.factors, m)):
            off = self._offset(b)
            for i, e, mono in f.leibniz_factors(x):
                out.append((off + i, e, self._lift(b, mono)))
        return out

    def factor_power(self, i: int, e: int):
        b, j = self._locate(i)
        return self._lift(b, self.factors[b].factor_power(j, e))

    def max_exponent(self, i: int):
        b, j = self._locate(i)
        return self.factors[b].max_exponent(j)

    def _enumerate(self, n: int) -> list:
        out = []

        def rec(b, rest, acc):
            if b == len(self.factors):
                if rest == 0:
                    out.append(tuple(acc))
                return
            for d in range(rest, -1, -1):
                for x in self.factors[b].basis(d):
                    acc.append(x)
                    rec(b + 1, rest - d, acc)
                    acc.pop()

        rec(0, n, [])
        return out


@lru_cache(maxsize=None)
def _basis(alg, n: int) -> list:
    return alg._enumerate(n)


@lru_cache(maxsize=None)
def _basis_index(alg, n: int) -> dict:
    return {m: i for i, m in enumerate(alg.basis(n))}


# --- elements ----------------------------------------------------------------

class Element:
    """A finite linear combination of monomials of one algebra.

    ``lossy`` is sticky: it is set when a product dropped terms above the
    truncation degree and propagates through sums and products.
    """

    __slots__ = ("alg", "terms", "lossy")

    def __init__(self, alg, terms: dict | None = None, lossy: bool = False):
        self.alg = alg
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        self.lossy = lossy

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, Element):
            if other.alg != self.alg:
                raise ValueError("elements of different algebras")
            return other
        return Element(self.alg, {self.alg.unit: self.alg.field(other)})

    def __add__(self, other):
        other = self._coerce(other)
        F = self.alg.field
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = F.add(t.get(m, F.zero), c)
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return Element(self.alg, t, self.lossy or other.lossy)

    __radd__ = __add__

    def __neg__(self):
        F = self.alg.field
        return Element(self.alg, {m: F.neg(c) for m, c in self.terms.items()}, self.lossy)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, a) -> "Element":
        F = self.alg.field
        a = F(a)
        return Element(self.alg, {m: F.mul(a, c) for m, c in self.terms.items()}, self.lossy)

    def __mul__(self, other):
        if not isinstance(other, Element):
            return self.scale(other)
        return multiply(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.alg == other.alg and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    # inspection
    def degrees(self) -> set[int]:
        return {self.alg.degree(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int | None:
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError(f"{self} is not homogeneous")
        return next(iter(ds)) if ds else None

    def coefficient(self, m):
        return self.terms.get(m, self.alg.field.zero)

    def components(self) -> dict[int, "Element"]:
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            out.setdefault(self.alg.degree(m), {})[m] = c
        return {d: Element(self.alg, t, self.lossy) for d, t in sorted(out.items())}

    def vector(self, n: int | None = None) -> dict:
        """Sparse coordinates in the canonical basis of degree ``n``."""
        if n is None:
            n = self.degree() or 0
        idx = self.alg.basis_index(n)
        return {idx[m]: c for m, c in self.terms.items()}

    @classmethod
    def from_vector(cls, alg, n: int, vec: dict) -> "Element":
        basis = alg.basis(n)
        return cls(alg, {basis[j]: c for j, c in vec.items()})

    def __str__(self):
        return self.alg.format_element(self.terms)

    def __repr__(self):
        flag = " (lossy)" if self.lossy else ""
        return f"<Element {self}{flag}>"


def multiply(u: Element, v: Element) -> Element:
    """Bilinear product; terms above the truncation are dropped and flagged."""
    if u.alg != v.alg:
        raise ValueError("cannot multiply elements of different algebras")
    alg = u.alg
    F = alg.field
    N = alg.truncation
    lossy = u.lossy or v.lossy
    out: dict = {}
    deg = alg.degree
    vdeg = [(m2, c2, deg(m2)) for m2, c2 in v.terms.items()]
    for m1, c1 in u.terms.items():
        d1 = deg(m1)
        for m2, c2, d2 in vdeg:
            if d1 + d2 > N:
                lossy = True
                continue
            r = alg.mul_monomials(m1, m2)
            if r is None:
                continue
            c = F.mul(F.mul(c1, c2), r[0])
            m = r[1]
            w = F.add(out.get(m, F.zero), c)
            if w:
                out[m] = w
            else:
                out.pop(m, None)
    return Element(alg, out, lossy)


def monomial_basis(alg, n: int) -> list:
    """Canonically ordered monomial basis of the degree ``n`` component."""
    return alg.basis(n)


def tensor_product(a, b):
    """Tensor product of two algebras over the same field.

    Two graded-commutative algebras merge into one; anything involving a
    tensor-mode factor becomes a :class:`ProductAlgebra`.
    """
    if a.field != b.field:
        raise ValueError(f"field mismatch: {a.field} vs {b.field}")
    if (isinstance(a, GradedAlgebra) and isinstance(b, GradedAlgebra)
            and a.mode == GC and b.mode == GC):
        return GradedAlgebra(a.field, a.generators + b.generators, GC,
                             min(a.truncation, b.truncation))
    return ProductAlgebra((a, b))


# --- ideals and quotients ----------------------------------------------------

TWO_SIDED = "two-sided"
LEFT = "left"      # A . I   (relations multiplied on the left by A)
RIGHT = "right"    # I . A


@dataclass(frozen=True)
class Ideal:
    """Ideal (or one-sided ideal) generated by homogeneous relations."""

    alg: object
    relations: tuple
    side: str = TWO_SIDED

    def __post_init__(self):
        rels = []
        for r in self.relations:
            if isinstance(r, str):
                r = self.alg.parse(r)
            if r.alg != self.alg:
                raise ValueError("relation from a different algebra")
            if not r.is_homogeneous():
                raise ValueError(f"relation {r} is not homogeneous")
            if r:
                rels.append(r)
        object.__setattr__(self, "relations", tuple(rels))
        if self.side not in (TWO_SIDED, LEFT, RIGHT):
            raise ValueError(f"unknown side {self.side!r}")

    def __hash__(self):
        return hash((self.alg, self.side,
                     tuple(tuple(sorted(r.terms.items(), key=lambda t: self.alg.sort_key(t[0])))
                           for r in self.relations)))

    def __eq__(self, other):
        return (isinstance(other, Ideal) and self.alg == other.alg and self.side == other.side
                and list(self.relations) == list(other.relations))


class QuotientSlice:
    """Degree ``n`` piece of ``A/I``: a monomial basis plus a projection."""

    def __init__(self, alg, n: int, echelon: Echelon):
        self.alg = alg
        self.degree = n
        self.echelon = echelon
        full = alg.basis(n)
        piv = set(echelon.rows)
        self.columns = [j for j in range(len(full)) if j not in piv]
        self.basis = [full[j] for j in self.columns]
        self._pos = {j: i for i, j in enumerate(self.columns)}

    def __len__(self):
        return len(self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, u: Element) -> Element:
        """Normal form of ``u`` supported on the quotient basis."""
        return Element.from_vector(self.alg, self.degree, self.echelon.reduce(u.vector(self.degree)))

    project = reduce

    def coordinates(self, u: Element) -> dict:
        """Sparse coordinates of ``u`` (mod the ideal) in the quotient basis."""
        red = self.echelon.reduce(u.vector(self.degree))
        return {self._pos[j]: c for j, c in red.items()}

    def element(self, coords: dict) -> Element:
        return Element(self.alg, {self.basis[i]: c for i, c in coords.items()})


_ideal_cache: dict = {}


def _ideal_echelon(ideal: Ideal, n: int) -> Echelon:
    key = (ideal, n)
    hit = _ideal_cache.get(key)
    if hit is not None:
        return hit
    alg = ideal.alg
    E = Echelon(alg.field)
    gc_like = getattr(alg, "mode", None) == GC
    for r in ideal.relations:
        d = r.degree()
        if d > n:
            continue
        rest = n - d
        if gc_like or ideal.side == LEFT:
            for m in alg.basis(rest):
                E.add(multiply(alg.monomial(m), r).vector(n))
        elif ideal.side == RIGHT:
            for m in alg.basis(rest):
                E.add(multiply(r, alg.monomial(m)).vector(n))
        elif getattr(alg, "mode", None) == TENSOR:
            # two-sided in a tensor algebra: I_n = r.A + sum_x x.I_{n-|x|}
            for m in alg.basis(rest):
                E.add(multiply(r, alg.monomial(m)).vector(n))
        else:
            for i in range(rest + 1):
                for u in alg.basis(i):
                    ur = multiply(alg.monomial(u), r)
                    for v in alg.basis(rest - i):
                        E.add(multiply(ur, alg.monomial(v)).vector(n))
    if getattr(alg, "mode", None) == TENSOR and ideal.side == TWO_SIDED and ideal.relations:
        for i, g in enumerate(alg.generators):
            if g.degree > n:
                continue
            x = alg.gen(g.name)
            lower = _ideal_echelon(ideal, n - g.degree)
            for row in lower.rows.values():
                w = Element.from_vector(alg, n - g.degree, row)
                E.add(multiply(x, w).vector(n))
    _ideal_cache[key] = E
    return E


def quotient_basis(alg, ideal: Ideal | None, n: int) -> QuotientSlice:
    """Basis of ``(A/I)_n`` by row-reducing the degree-``n`` slice of ``I``.

    The basis consists of the monomials that are not pivots of the reduced
    ideal slice; :meth:`QuotientSlice.reduce` rewrites any element onto it.
    """
    if n > alg.truncation:
        raise TruncationError(f"degree {n} exceeds truncation {alg.truncation}")
    if ideal is None:
        return QuotientSlice(alg, n, Echelon(alg.field))
    if ideal.alg != alg:
        raise ValueError("ideal belongs to a different algebra")
    return QuotientSlice(alg, n, _ideal_echelon(ideal, n))


@dataclass(frozen=True)
class HilbertSeries:
    dims: tuple

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        if any(d < 0 for d in self.dims):
            raise ValueError("negative dimension")

    def __getitem__(self, n):
        return self.dims[n]

    def __len__(self):
        return len(self.dims)

    def __iter__(self):
        return iter(self.dims)

    def convolve(self, other: "HilbertSeries | Sequence[int]") -> "HilbertSeries":
        b = list(other)
        n = min(len(self.dims), len(b))
        return HilbertSeries(tuple(sum(self.dims[i] * b[k - i] for i in range(k + 1))
                                   for k in range(n)))

    def __str__(self):
        return " ".join(map(str, self.dims))


def hilbert(alg, ideal: Ideal | None = None, n_max: int | None = None) -> HilbertSeries:
    if n_max is None:
        n_max = alg.truncation
    if n_max > alg.truncation:
        raise TruncationError(f"degree {n_max} exceeds truncation {alg.truncation}")
    return HilbertSeries(tuple(quotient_basis(alg, ideal, n).dim for n in range(n_max + 1)))


def module_quotient_right(alg: GradedAlgebra, sub_generators: Iterable[str], n: int) -> int:
    """``dim (A (x)_S k)_n`` for the subalgebra ``S`` generated by ``sub_generators``.

    Computed as ``A / A.S+`` with ``S+`` spanned by the sub-generators.
    """
    if getattr(alg, "mode", None) != TENSOR:
        raise ValueError("module_quotient_right needs a tensor-mode algebra")
    subs = list(sub_generators)
    for s in subs:
        alg.index(s)
    if n > alg.truncation:
        raise TruncationError(f"degree {n} exceeds truncation {alg.truncation}")
    ideal = Ideal(alg, tuple(alg.gen(s) for s in subs), LEFT)
    return quotient_basis(alg, ideal, n).dim


def with_generator_order(alg: GradedAlgebra, order: Sequence[int]) -> GradedAlgebra:
    """Same algebra with generators permuted (``order`` lists old indices)."""
    return GradedAlgebra(alg.field, tuple(alg.generators[i] for i in order), alg.mode, alg.truncation)


def transport(u: Element, target) -> Element:
    """Move ``u`` to an algebra with the same generator names (any order)."""
    out = target.zero()
    for m, c in u.terms.items():
        term = target.one().scale(c)
        for i, e, _ in u.alg.leibniz_factors(m):
            name = u.alg.generators[i].name
            j = target.index(name)
            term = term * target.monomial(target.factor_power(j, e))
        out = out + term
    return out

"""Amalgamated free products of finite-dimensional augmented graded algebras.

Free-product elements are sparse maps from alternating words to scalars.  A
word is a tuple of letters ``(side, index)`` where ``side`` is 0 for A and 1
for B and ``index`` is a non-unit basis element of that side.
"""
from __future__ import annotations

from dataclasses import replace
from functools import lru_cache
from typing import Mapping, Sequence

from .exactfield import Echelon, Field, axpy
from .gradedalg import HilbertSeries, Ideal, quotient_basis, transport


class AlgebraError(ValueError):
    pass


class AugmentedAlgebra:
    """Finite basis with degrees and structure constants.

    Basis element 0 is the unit and is the only one in degree 0.
    ``table[(i, j)]`` is the sparse product of basis elements i and j; absent
    pairs multiply to zero.
    """

    def __init__(self, field: Field, labels: Sequence[str], degrees: Sequence[int],
                 table: Mapping, check: bool = True):
        self.field = field
        self.labels = tuple(labels)
        self.degrees = tuple(degrees)
        if len(self.labels) != len(self.degrees) or not self.labels:
            raise AlgebraError("labels and degrees must be non-empty and of equal length")
        if self.degrees[0] != 0 or any(d <= 0 for d in self.degrees[1:]):
            raise AlgebraError("basis element 0 must be the unit, all others of positive degree")
        self.table = {}
        for (i, j), v in table.items():
            v = {k: field(c) for k, c in v.items() if field(c)}
            if v:
                self.table[(i, j)] = v
        for i in range(len(self.labels)):
            self.table[(0, i)] = {i: field.one}
            self.table[(i, 0)] = {i: field.one}
        if check:
            self.check()

    def __len__(self):
        return len(self.labels)

    def product(self, i: int, j: int) -> dict:
        return self.table.get((i, j), {})

    def mul(self, u: Mapping, v: Mapping) -> dict:
        F = self.field
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                p = self.product(i, j)
                if p:
                    axpy(F, out, F.mul(a, b), p)
        return out

    def check(self):
        n = len(self)
        for (i, j), v in self.table.items():
            for k in v:
                if self.degrees[k] != self.degrees[i] + self.degrees[j]:
                    raise AlgebraError(
                        f"{self.labels[i]}*{self.labels[j]} has a term of the wrong degree")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    lhs = self.mul(self.product(i, j), {k: self.field.one})
                    rhs = self.mul({i: self.field.one}, self.product(j, k))
                    if lhs != rhs:
                        raise AlgebraError(
                            f"not associative on ({self.labels[i]}, {self.labels[j]}, {self.labels[k]})")

    def dims(self, n_max: int) -> list[int]:
        out = [0] * (n_max + 1)
        for d in self.degrees:
            if d <= n_max:
                out[d] += 1
        return out

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no basis element {label!r}") from None

    @classmethod
    def trivial(cls, field: Field) -> "AugmentedAlgebra":
        return cls(field, ["1"], [0], {})

    @classmethod
    def from_graded(cls, alg, ideal: Ideal | None = None) -> "AugmentedAlgebra":
        """Finite-dimensional quotient ``alg / ideal`` as structure constants.

        Finite dimensionality is certified by checking that the quotient
        vanishes in degrees ``N+1 .. 2N`` (``N`` the truncation), which
        contain every product of two basis elements.
        """
        N = alg.truncation
        big = replace(alg, truncation=2 * N)
        big_ideal = None
        if ideal is not None:
            big_ideal = Ideal(big, tuple(transport(r, big) for r in ideal.relations), ideal.side)
        for n in range(N + 1, 2 * N + 1):
            if quotient_basis(big, big_ideal, n).dim:
                raise AlgebraError(f"quotient is nonzero in degree {n} > truncation {N}")
        slices = [quotient_basis(big, big_ideal, n) for n in range(2 * N + 1)]
        if slices[0].dim != 1:
            raise AlgebraError("degree-0 component must be one-dimensional")
        labels, degrees, elems, where = [], [], [], {}
        for n, sl in enumerate(slices[: N + 1]):
            for m in sl.basis:
                where[(n, m)] = len(labels)
                labels.append(big.format_monomial(m))
                degrees.append(n)
                elems.append(big.monomial(m))
        table = {}
        for i, u in enumerate(elems):
            for j, v in enumerate(elems):
                p = u * v
                if not p:
                    continue
                n = degrees[i] + degrees[j]
                red = slices[n].reduce(p)
                if red:
                    table[(i, j)] = {where[(n, m)]: c for m, c in red.terms.items()}
        return cls(alg.field, labels, degrees, table)


class Embedding:
    """A degree-preserving algebra map ``C -> A`` given on C's basis."""

    def __init__(self, source: AugmentedAlgebra, target: AugmentedAlgebra,
                 images: Mapping[int, Mapping], check: bool = True):
        self.source = source
        self.target = target
        F = target.field
        self.images = []
        for i in range(len(source)):
            img = images.get(i, {}) if i else images.get(0, {0: F.one})
            self.images.append({k: F(c) for k, c in img.items() if F(c)})
        if check:
            self.check()

    def apply(self, u: Mapping) -> dict:
        F = self.target.field
        out: dict = {}
        for i, a in u.items():
            axpy(F, out, a, self.images[i])
        return out

    def check(self):
        S, T = self.source, self.target
        F = T.field
        if self.images[0] != {0: F.one}:
            raise AlgebraError("embedding is not unital")
        for i, img in enumerate(self.images):
            for k in img:
                if T.degrees[k] != S.degrees[i]:
                    raise AlgebraError(f"image of {S.labels[i]} has the wrong degree")
        for i in range(len(S)):
            for j in range(len(S)):
                lhs = self.apply(S.product(i, j))
                rhs = T.mul(self.images[i], self.images[j])
                if lhs != rhs:
                    raise AlgebraError(
                        f"embedding is not multiplicative on ({S.labels[i]}, {S.labels[j]})")
        E = Echelon(F)
        for img in self.images:
            if not E.add(img):
                raise AlgebraError("embedding is not injective")

    @classmethod
    def from_labels(cls, source, target, images: Mapping[str, Mapping[str, object]], check=True):
        idx = {source.index(k): {target.index(t): c for t, c in v.items()}
               for k, v in images.items()}
        return cls(source, target, idx, check)


# --- free products -------------------------------------------------------------

def _letters(A: AugmentedAlgebra, B: AugmentedAlgebra):
    return [(s, i, alg.degrees[i]) for s, alg in ((0, A), (1, B)) for i in range(1, len(alg))]


def free_product_basis(A: AugmentedAlgebra, B: AugmentedAlgebra, n: int) -> list[tuple]:
    """Alternating words of total degree ``n`` in the non-unit bases of A and B."""
    return list(_words(A, B, n))


@lru_cache(maxsize=None)
def _words_from(A, B, n: int, last: int) -> tuple:
    # words of degree n whose first letter is not on side ``last``
    if n == 0:
        return ((),)
    out = []
    for s, i, d in _letters(A, B):
        if s == last or d > n:
            continue
        for rest in _words_from(A, B, n - d, s):
            out.append(((s, i),) + rest)
    return tuple(out)


def _words(A, B, n: int) -> tuple:
    return tuple(sorted(_words_from(A, B, n, -1)))


def word_degree(A, B, w) -> int:
    return sum((A, B)[s].degrees[i] for s, i in w)


def multiply_words(A: AugmentedAlgebra, B: AugmentedAlgebra, u: Mapping, v: Mapping) -> dict:
    """Product in the free product ``A * B`` of two sparse word combinations."""
    F = A.field
    out: dict = {}
    for w1, a in u.items():
        for w2, b in v.items():
            c = F.mul(a, b)
            if not w1 or not w2 or w1[-1][0] != w2[0][0]:
                w = w1 + w2
                out[w] = F.add(out.get(w, F.zero), c)
                if not out[w]:
                    del out[w]
                continue
            side = w1[-1][0]
            p = (A, B)[side].product(w1[-1][1], w2[0][1])
            for k, x in p.items():
                w = w1[:-1] + ((side, k),) + w2[1:]
                val = F.add(out.get(w, F.zero), F.mul(c, x))
                if val:
                    out[w] = val
                else:
                    out.pop(w, None)
    return out


# --- amalgams ------------------------------------------------------------------

class AmalgamSpec:
    def __init__(self, A: AugmentedAlgebra, B: AugmentedAlgebra, C: AugmentedAlgebra,
                 phi_A: Embedding, phi_B: Embedding, truncation: int = 12):
        if not (A.field == B.field == C.field):
            raise AlgebraError("all algebras must share one field")
        if phi_A.source is not C or phi_B.source is not C:
            raise AlgebraError("embeddings must start at the common algebra")
        if phi_A.target is not A or phi_B.target is not B:
            raise AlgebraError("embeddings must land in A and B")
        phi_A.check()
        phi_B.check()
        self.A, self.B, self.C = A, B, C
        self.phi_A, self.phi_B = phi_A, phi_B
        self.truncation = truncation
        self._ideal: dict[int, Echelon] = {}

    @property
    def field(self):
        return self.A.field

    def swapped(self) -> "AmalgamSpec":
        return AmalgamSpec(self.B, self.A, self.C, self.phi_B, self.phi_A, self.truncation)

    def relations(self) -> list[tuple[int, dict]]:
        """``(degree, phi_A(c) - phi_B(c))`` as one-letter word combinations."""
        F = self.field
        out = []
        for c in range(1, len(self.C)):
            r: dict = {}
            for k, x in self.phi_A.images[c].items():
                r[((0, k),)] = x
            for k, x in self.phi_B.images[c].items():
                r[((1, k),)] = F.neg(x)
            out.append((self.C.degrees[c], r))
        return out

    def _index(self, n: int) -> dict:
        return {w: i for i, w in enumerate(_words(self.A, self.B, n))}

    def ideal_slice(self, n: int) -> Echelon:
        """Degree-n part of the two-sided ideal generated by the relations.

        ``I_n = span{r.w} + sum over letters g of g.I_{n-|g|}``, which is
        the full two-sided ideal because the letters generate ``A * B``.
        """
        hit = self._ideal.get(n)
        if hit is not None:
            return hit
        A, B, F = self.A, self.B, self.field
        idx = self._index(n)
        E = Echelon(F)
        for d, r in self.relations():
            if d > n:
                continue
            for w in _words(A, B, n - d):
                p = multiply_words(A, B, r, {w: F.one})
                E.add({idx[x]: c for x, c in p.items()})
        for s, i, dg in _letters(A, B):
            if dg > n:
                continue
            sub = self.ideal_slice(n - dg)
            words = _words(A, B, n - dg)
            for row in sub.rows.values():
                u = {words[j]: c for j, c in row.items()}
                p = multiply_words(A, B, {((s, i),): F.one}, u)
                E.add({idx[x]: c for x, c in p.items()})
        self._ideal[n] = E
        return E

    def basis(self, n: int) -> list[tuple]:
        """Word representatives of a basis of the amalgam in degree ``n``."""
        words = _words(self.A, self.B, n)
        piv = set(self.ideal_slice(n).rows)
        return [w for j, w in enumerate(words) if j not in piv]

    def format_word(self, w) -> str:
        if not w:
            return "1"
        return "*".join((self.A, self.B)[s].labels[i] for s, i in w)


def amalgam_hilbert(spec: AmalgamSpec, n_max: int) -> HilbertSeries:
    if n_max > spec.truncation:
        raise ValueError(f"degree {n_max} exceeds truncation {spec.truncation}")
    dims = []
    for n in range(n_max + 1):
        total = len(_words(spec.A, spec.B, n))
        dims.append(total - spec.ideal_slice(n).rank)
    return HilbertSeries(dims)


def free_product_hilbert(A: AugmentedAlgebra, B: AugmentedAlgebra, n_max: int) -> HilbertSeries:
    return HilbertSeries([len(_words(A, B, n)) for n in range(n_max + 1)])

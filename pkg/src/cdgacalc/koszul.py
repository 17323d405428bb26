"""Bigraded Koszul (Tate) complexes over quotient polynomial rings.

The complex is ``R (x) Lambda`` where ``R = k[ring generators]/I`` and the
resolution generators carry a bidegree ``(external, internal)`` with
``external <= 0``.  Everything lives in one graded-commutative algebra graded
by total degree; external degree is tracked on the side.  Generators of even
external degree use the divided-power flavor, so over any field the complex
is the standard Tate construction; odd ones are exterior, so they square to
zero in characteristic 2 as well.  Since every internal degree is even here,
total-degree parity equals external parity and the Koszul signs agree.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .cdga import Differential, extend_leibniz, random_element
from .exactfield import Echelon, Field, QQ, linear_kernel
from .gradedalg import (DIVIDED, EXTERIOR, KOSZUL, Element, GradedAlgebra, Ideal,
                        TruncationError, quotient_basis)


@dataclass
class KoszulComplexSpec:
    field: Field
    ring_generators: list          # [(name, degree)]
    relations: list                # expression texts in the ring generators
    ext_generators: list           # [(name, external, internal)]
    differential: dict             # name -> expression text
    truncation: int = 8
    ext_floor: int = -6

    def __post_init__(self):
        gens = []
        self.ext_degree: dict[str, int] = {}
        for name, deg in self.ring_generators:
            gens.append((name, deg, KOSZUL))
            self.ext_degree[name] = 0
        for name, ext, internal in self.ext_generators:
            if ext >= 0:
                raise ValueError(f"{name}: external degree must be negative")
            total = ext + internal
            if total < 1:
                raise ValueError(f"{name}: total degree must be positive")
            gens.append((name, total, DIVIDED if ext % 2 == 0 else EXTERIOR))
            self.ext_degree[name] = ext
        self.alg = GradedAlgebra(self.field, tuple(gens), truncation=self.truncation)
        self.ideal = Ideal(self.alg, tuple(self.relations)) if self.relations else None
        for r in (self.ideal.relations if self.ideal else ()):
            if any(self.ext(m) != 0 for m in r.terms):
                raise ValueError(f"relation {r} must involve ring generators only")
        self.d = Differential(self.alg, self.differential, check=False)
        for name, img in self.d.images.items():
            want = self.ext_degree[name] + 1
            if any(self.ext(m) != want for m in img.terms):
                raise ValueError(f"d({name}) = {img} is not of external degree {want}")
        self._slices: dict[int, object] = {}

    def ext(self, m) -> int:
        gens = self.alg.generators
        return sum(self.ext_degree[gens[i].name] * e for i, e, _ in self.alg.leibniz_factors(m))

    def slice(self, n: int):
        s = self._slices.get(n)
        if s is None:
            s = self._slices[n] = quotient_basis(self.alg, self.ideal, n)
        return s

    def normal_form(self, u: Element) -> Element:
        out = self.alg.zero()
        for n, part in u.components().items():
            out = out + self.slice(n).reduce(part)
        return out

    def parse(self, text: str) -> Element:
        return self.alg.parse(text)

    def with_differential(self, images: Mapping[str, str]) -> "KoszulComplexSpec":
        return KoszulComplexSpec(self.field, self.ring_generators, self.relations,
                                 self.ext_generators, dict(images), self.truncation,
                                 self.ext_floor)


def h4_complex(field: Field = QQ, truncation: int = 8) -> KoszulComplexSpec:
    """``Q[z,r,s]/(z(r-s))`` resolving ``Q[z,r^2,s^2]/(z(r^2-s^2))``."""
    return KoszulComplexSpec(
        field,
        [("z", 2), ("r", 2), ("s", 2)],
        ["z*r - z*s"],
        [("alpha", -1, 2), ("beta", -1, 4), ("gamma", -1, 4), ("delta", -2, 6)],
        {"alpha": "z", "beta": "r^2", "gamma": "s^2", "delta": "alpha*r^2 - alpha*s^2"},
        truncation,
    )


def koszul_d_squared(spec: KoszulComplexSpec, samples: int = 20, seed: int = 0):
    """None if ``d^2 = 0`` in ``R (x) Lambda``; else ``(witness, value)``.

    Checks every generator, then random elements of each total degree.
    """
    d = spec.d
    for g in spec.alg.generators:
        if g.degree + 2 > spec.truncation:
            continue
        v = spec.normal_form(extend_leibniz(d, extend_leibniz(d, spec.alg.gen(g.name))))
        if v:
            return g.name, v
    rng = random.Random(seed)
    for n in range(spec.truncation - 1):
        for _ in range(samples):
            u = random_element(spec.alg, n, rng)
            v = spec.normal_form(extend_leibniz(d, extend_leibniz(d, u)))
            if v:
                return str(u), v
    return None


@dataclass
class TorReport:
    total_max: int
    bidegree: dict                 # (p, q) -> dim, p external, q internal
    totals: list
    representatives: dict = field(default_factory=dict)   # (p, q) -> [Element]
    chain_dims: dict = field(default_factory=dict)        # (p, q) -> dim of the slice

    def euler(self, q: int) -> tuple[int, int]:
        """Alternating sums over p of chain and cohomology dims at internal degree q."""
        chains = sum((-1) ** (p % 2) * v for (p, qq), v in self.chain_dims.items() if qq == q)
        homology = sum((-1) ** (p % 2) * v for (p, qq), v in self.bidegree.items() if qq == q)
        return chains, homology


def _blocks(spec: KoszulComplexSpec, n: int) -> dict[int, list[int]]:
    """Quotient-basis positions in total degree n grouped by external degree."""
    out: dict[int, list[int]] = {}
    for j, m in enumerate(spec.slice(n).basis):
        p = spec.ext(m)
        if p < spec.ext_floor:
            raise TruncationError(
                f"external degree {p} in total degree {n} is below the floor {spec.ext_floor}")
        out.setdefault(p, []).append(j)
    return out


def _d_column(spec, n: int, j: int, p: int) -> dict:
    """Image of quotient-basis element j of degree n, in degree n+1 coordinates."""
    sl = spec.slice(n)
    img = extend_leibniz(spec.d, spec.alg.monomial(sl.basis[j]))
    coords = spec.slice(n + 1).coordinates(img)
    nxt = spec.slice(n + 1).basis
    for k in coords:
        if spec.ext(nxt[k]) != p + 1:
            raise ValueError(f"d does not raise external degree by one on {sl.basis[j]}")
    return coords


def tor_dimensions(spec: KoszulComplexSpec, total_max: int) -> TorReport:
    """Cohomology of the complex per bidegree, for total degrees ``0..total_max``."""
    if total_max > spec.truncation - 1:
        raise TruncationError(
            f"total degree {total_max} needs truncation >= {total_max + 1} (have {spec.truncation})")
    F = spec.field
    bideg, reps, chains = {}, {}, {}
    totals = []
    images_prev: dict[int, list] = {}
    for n in range(total_max + 1):
        blocks = _blocks(spec, n)
        images_now = {}
        total = 0
        for p, cols in sorted(blocks.items()):
            q = n - p
            chains[(p, q)] = len(cols)
            imgs = [_d_column(spec, n, j, p) for j in cols]
            images_now[p] = imgs
            kernel, _ = linear_kernel(F, imgs)
            bd = Echelon(F)
            for v in images_prev.get(p - 1, []):
                bd.add(v)
            R = Echelon(F)
            for z in kernel:
                R.add(bd.reduce({cols[i]: c for i, c in z.items()}))
            rows = R.reduced_rows()
            dim = len(kernel) - bd.rank
            assert dim == len(rows)
            bideg[(p, q)] = dim
            sl = spec.slice(n)
            reps[(p, q)] = [Element(spec.alg, {sl.basis[j]: c for j, c in r.items()}) for r in rows]
            total += dim
        totals.append(total)
        images_prev = images_now
    return TorReport(total_max, bideg, totals, reps, chains)


@dataclass
class ClosedSpan:
    coefficients: list            # kernel basis as coefficient vectors over the span
    elements: list

    @property
    def dim(self) -> int:
        return len(self.coefficients)


def closedness_probe(spec: KoszulComplexSpec, span: Sequence) -> ClosedSpan:
    """Basis of the combinations of ``span`` that are cocycles."""
    F = spec.field
    elems = [spec.parse(u) if isinstance(u, str) else u for u in span]
    if not elems:
        return ClosedSpan([], [])
    totals = {u.degree() for u in elems if u}
    if len(totals) > 1:
        raise ValueError("span elements must share one total degree")
    for u in elems:
        if len({spec.ext(m) for m in u.terms}) > 1:
            raise ValueError(f"{u} is not bihomogeneous")
    n = totals.pop() if totals else 0
    if n + 1 > spec.truncation:
        raise TruncationError(f"probe in total degree {n} needs truncation >= {n + 1}")
    imgs = [spec.slice(n + 1).coordinates(extend_leibniz(spec.d, u)) for u in elems]
    kernel, _ = linear_kernel(F, imgs)
    coeffs, out = [], []
    for z in kernel:
        vec = [z.get(i, F.zero) for i in range(len(elems))]
        coeffs.append(vec)
        acc = spec.alg.zero()
        for c, u in zip(vec, elems):
            if c:
                acc = acc + u.scale(c)
        out.append(acc)
    return ClosedSpan(coeffs, out)

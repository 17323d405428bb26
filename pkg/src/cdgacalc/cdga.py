"""Differentials on graded algebras and their cohomology.

Convention: ``d`` has degree +1 and ``d(uv) = du.v + (-1)^|u| u.dv``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .exactfield import Echelon, linear_kernel
from .gradedalg import (DIVIDED, GC, Element, GradedAlgebra, TruncationError,
                        transport)


class DSquaredError(ValueError):
    def __init__(self, generator: str, value: Element):
        self.generator = generator
        self.value = value
        super().__init__(f"d^2({generator}) = {value} != 0")


class Differential:
    """A degree +1 derivation given by its values on generators.

    Missing generators map to zero.  Construction checks homogeneity and,
    unless ``check=False``, that ``d(d(g)) = 0`` for every generator whose
    square lies inside the truncation.
    """

    def __init__(self, alg, images: Mapping[str, Element | str] | None = None,
                 params: dict | None = None, check: bool = True):
        self.alg = alg
        self.params = dict(params or {})
        self.images: dict[str, Element] = {}
        N = alg.truncation
        for name, img in (images or {}).items():
            g = alg.generators[alg.index(name)]
            if g.degree + 1 > N:
                continue  # image lies above the truncation; never consumed
            if isinstance(img, str):
                img = alg.parse(img, self.params)
            if img.alg != alg:
                raise ValueError(f"image of {name} lives in another algebra")
            if img and img.degrees() != {g.degree + 1}:
                raise ValueError(
                    f"d({name}) = {img} must be homogeneous of degree {g.degree + 1}")
            if img:
                self.images[name] = img
        self._cache: dict = {}
        if check:
            bad = check_d_squared(alg, self)
            if bad is not None:
                raise DSquaredError(*bad)

    def image(self, name: str) -> Element:
        return self.images.get(name) or self.alg.zero()

    def _d_power(self, i: int, e: int) -> Element:
        alg = self.alg
        g = alg.generators[i]
        dx = self.image(g.name)
        if not dx:
            return alg.zero()
        if g.flavor == DIVIDED:
            return dx * alg.monomial(alg.factor_power(i, e - 1))
        out = alg.zero()
        for j in range(e):
            left = alg.monomial(alg.factor_power(i, j))
            right = alg.monomial(alg.factor_power(i, e - 1 - j))
            term = left * dx * right
            out = out + (-term if (j * g.degree) % 2 else term)
        return out

    def on_monomial(self, m) -> Element:
        hit = self._cache.get(m)
        if hit is not None:
            return hit
        alg = self.alg
        if alg.degree(m) + 1 > alg.truncation:
            return Element(alg, {}, lossy=True)
        facs = alg.leibniz_factors(m)
        total = alg.zero()
        prefix = alg.one()
        prefix_deg = 0
        for k, (i, e, fm) in enumerate(facs):
            dfac = self._d_power(i, e)
            if dfac:
                suffix = alg.one()
                for _, _, rest in facs[k + 1:]:
                    suffix = suffix * alg.monomial(rest)
                term = prefix * dfac * suffix
                total = total + (-term if prefix_deg % 2 else term)
            prefix = prefix * alg.monomial(fm)
            prefix_deg += alg.degree(fm)
        self._cache[m] = total
        return total

    def __call__(self, u: Element) -> Element:
        return extend_leibniz(self, u)

    def describe(self) -> dict[str, str]:
        return {g.name: str(self.image(g.name)) for g in self.alg.generators
                if self.images.get(g.name)}


def extend_leibniz(d: Differential, u: Element) -> Element:
    """Apply the derivation ``d`` to an arbitrary element."""
    if u.alg != d.alg:
        raise ValueError("element and differential live in different algebras")
    out = d.alg.zero()
    out.lossy = u.lossy
    for m, c in u.terms.items():
        out = out + d.on_monomial(m).scale(c)
    return out


def check_d_squared(alg, d: Differential):
    """None when ``d(d(g)) = 0`` on all generators (within truncation).

    Otherwise the first violating ``(generator name, d^2 value)``.
    """
    for g in alg.generators:
        if g.degree + 2 > alg.truncation:
            continue
        v = extend_leibniz(d, d.image(g.name))
        if v:
            return g.name, v
    return None


def zero_differential(alg) -> Differential:
    return Differential(alg, {}, check=False)


# --- cohomology ----------------------------------------------------------------

@dataclass
class CohomologyClass:
    degree: int
    coords: tuple

    def __bool__(self):
        return any(self.coords)


@dataclass
class CohomologyReport:
    field: object
    truncation: int
    n_max: int
    params: dict
    betti: list
    representatives: list          # per degree: list of Elements
    boundary_ranks: list           # rank of d landing in degree n
    cocycle_dims: list
    alg: object = field(repr=False, default=None)
    differential: object = field(repr=False, default=None)
    _boundaries: list = field(repr=False, default_factory=list)
    _rep_rows: list = field(repr=False, default_factory=list)

    def classify(self, z: Element) -> CohomologyClass:
        """Coordinates of the class of cocycle ``z`` in the representative basis."""
        n = z.degree()
        if n is None:
            raise ValueError("the zero element has no well-defined degree; use cls()")
        if n > self.n_max:
            raise TruncationError(f"degree {n} beyond report range {self.n_max}")
        v = self._boundaries[n].reduce(z.vector(n))
        F = self.field
        coords = []
        for piv, row in self._rep_rows[n]:
            c = v.get(piv, F.zero)
            coords.append(c)
            if c:
                for j, x in row.items():
                    w = F.sub(v.get(j, F.zero), F.mul(c, x))
                    if w:
                        v[j] = w
                    else:
                        v.pop(j, None)
        if v:
            raise ValueError(f"{z} is not a cocycle")
        return CohomologyClass(n, tuple(coords))

    def cls(self, degree: int, index: int) -> CohomologyClass:
        F = self.field
        k = len(self.representatives[degree])
        return CohomologyClass(degree, tuple(F.one if i == index else F.zero for i in range(k)))

    def element(self, c: CohomologyClass) -> Element:
        out = self.alg.zero()
        for x, rep in zip(c.coords, self.representatives[c.degree]):
            if x:
                out = out + rep.scale(x)
        return out

    def is_boundary(self, z: Element) -> bool:
        n = z.degree()
        if n is None:
            return True
        return not self._boundaries[n].reduce(z.vector(n))


def cohomology(alg, d: Differential, n_max: int, params: dict | None = None) -> CohomologyReport:
    """Betti numbers and echelon-normalised representative cocycles.

    Degree ``n`` needs the full matrix of ``d`` into degree ``n+1``, so
    ``n_max`` must be at most ``truncation - 1``.
    """
    N = alg.truncation
    if n_max > N - 1:
        raise TruncationError(
            f"cohomology through degree {n_max} needs truncation >= {n_max + 1} (have {N})")
    F = alg.field
    betti, reps, branks, zdims = [], [], [], []
    boundaries, rep_rows = [], []
    prev_images: list = []
    for n in range(n_max + 1):
        basis = alg.basis(n)
        bd = Echelon(F)
        for img in prev_images:
            bd.add(img)
        images = [extend_leibniz(d, alg.monomial(m)).vector(n + 1) for m in basis]
        kernel, rk = linear_kernel(F, images)
        R = Echelon(F)
        for z in kernel:
            R.add(bd.reduce(z))
        rows = R.reduced_rows()
        b = len(kernel) - bd.rank
        assert b == len(rows), "representative count disagrees with rank count"
        betti.append(b)
        reps.append([Element.from_vector(alg, n, r) for r in rows])
        branks.append(bd.rank)
        zdims.append(len(kernel))
        boundaries.append(bd)
        rep_rows.append([(min(r), r) for r in rows])
        prev_images = images
    return CohomologyReport(F, N, n_max, dict(params or d.params), betti, reps, branks, zdims,
                            alg, d, boundaries, rep_rows)


def _as_class(report: CohomologyReport, c) -> CohomologyClass:
    if isinstance(c, CohomologyClass):
        return c
    if isinstance(c, Element):
        return report.classify(c)
    deg, idx = c
    return report.cls(deg, idx)


def cup(report: CohomologyReport, c1, c2) -> CohomologyClass:
    """Product of two classes, expanded in the report's representatives."""
    a = _as_class(report, c1)
    b = _as_class(report, c2)
    n = a.degree + b.degree
    if n > report.n_max:
        raise TruncationError(f"product degree {n} exceeds report range {report.n_max}")
    prod = report.element(a) * report.element(b)
    if not prod:
        return CohomologyClass(n, tuple(report.field.zero for _ in report.representatives[n]))
    return report.classify(prod)


# --- Sullivan duality ----------------------------------------------------------

@dataclass
class WhiteheadTable:
    """Entries ``(b_i, b_j, expansion)`` with expansion ``{b_k: coefficient}``."""

    entries: list


def duality_differential(alg, table: WhiteheadTable, check: bool = True) -> Differential:
    """Quadratic differential ``d b_k = sum <b_k, [b_i, b_j]> b_i b_j``.

    The sum runs over unordered pairs ``{i, j}``; an entry listed in both
    orders must satisfy graded symmetry and is counted once.
    """
    F = alg.field
    seen: dict = {}
    for bi, bj, expansion in table.entries:
        di = alg.generators[alg.index(bi)].degree
        dj = alg.generators[alg.index(bj)].degree
        exp = {k: F(v) for k, v in expansion.items() if F(v)}
        for k in exp:
            dk = alg.generators[alg.index(k)].degree
            if dk != di + dj - 1:
                raise ValueError(
                    f"[{bi},{bj}] has degree {di + dj - 1} but {k} has degree {dk}")
        key = tuple(sorted((alg.index(bi), alg.index(bj))))
        if (alg.index(bi), alg.index(bj)) != key:
            # reorder to declaration order using graded symmetry
            sgn = F.sign((di * dj) % 2 == 1)
            exp = {k: F.mul(sgn, v) for k, v in exp.items()}
            bi, bj = bj, bi
        if key in seen:
            if seen[key][2] != exp:
                raise ValueError(f"entries for [{bi},{bj}] violate graded symmetry")
            continue
        seen[key] = (bi, bj, exp)
    images: dict[str, Element] = {}
    for bi, bj, exp in seen.values():
        prod = alg.gen(bi) * alg.gen(bj)
        for k, v in exp.items():
            images[k] = images.get(k, alg.zero()) + prod.scale(v)
    return Differential(alg, images, check=check)


# --- quotients -----------------------------------------------------------------

def quotient_cdga(alg: GradedAlgebra, d: Differential, generators: Sequence[str]):
    """Quotient by the ideal generated by ``generators`` (must be d-stable).

    Returns the induced ``(algebra, differential)`` on the remaining generators.
    """
    kill = {alg.index(g) for g in generators}

    def in_ideal(m) -> bool:
        return any(i in kill for i, _, _ in alg.leibniz_factors(m))

    for i in sorted(kill):
        name = alg.generators[i].name
        img = d.image(name)
        bad = [m for m in img.terms if not in_ideal(m)]
        if bad:
            raise ValueError(f"ideal is not closed under d: d({name}) = {img}")
    keep = [g for i, g in enumerate(alg.generators) if i not in kill]
    if not keep:
        target = GradedAlgebra(alg.field, (), alg.mode, alg.truncation)
        return target, Differential(target, {}, check=False)
    target = GradedAlgebra(alg.field, tuple(keep), alg.mode, alg.truncation)
    images = {}
    for g in keep:
        img = d.image(g.name)
        rest = Element(alg, {m: c for m, c in img.terms.items() if not in_ideal(m)})
        if rest:
            images[g.name] = transport(rest, target)
    return target, Differential(target, images, params=d.params)


# --- presentation comparison --------------------------------------------------

@dataclass
class PresentationTarget:
    series: list
    candidates: dict = field(default_factory=dict)   # name -> cocycle Element


@dataclass
class PresentationVerdict:
    passed: bool
    rows: list
    failures: list

    @property
    def first_failure(self):
        return self.failures[0] if self.failures else None


def compare_presentation(report: CohomologyReport, target: PresentationTarget,
                         n_max: int | None = None) -> PresentationVerdict:
    """Compare Betti numbers with a target series, and optionally check that
    products of candidate cocycles span cohomology in each degree."""
    if n_max is None:
        n_max = report.n_max
    if len(target.series) < n_max + 1:
        raise ValueError("target series shorter than the comparison range")
    rows, failures = [], []
    span = None
    if target.candidates:
        cand = list(target.candidates.items())
        free = GradedAlgebra(report.field,
                             tuple((name, z.degree()) for name, z in cand), GC, n_max)
        span = {}
        for n in range(n_max + 1):
            E = Echelon(report.field)
            for m in free.basis(n):
                prod = report.alg.one()
                for i, e, _ in free.leibniz_factors(m):
                    prod = prod * (cand[i][1] ** e)
                if prod:
                    c = report.classify(prod)
                    E.add({j: x for j, x in enumerate(c.coords) if x})
            span[n] = E.rank
    for n in range(n_max + 1):
        ok = report.betti[n] == target.series[n]
        row = {"degree": n, "computed": report.betti[n], "expected": target.series[n]}
        if span is not None:
            row["spanned"] = span[n]
            ok = ok and span[n] == report.betti[n]
        row["ok"] = ok
        rows.append(row)
        if not ok:
            failures.append(n)
    return PresentationVerdict(not failures, rows, failures)


# --- sampling helpers (property checks) ----------------------------------------

def random_element(alg, n: int, rng: random.Random, max_terms: int = 3,
                   coeff_range: int = 5) -> Element:
    """A random homogeneous element of degree ``n`` with small coefficients."""
    basis = alg.basis(n)
    if not basis:
        return alg.zero()
    terms = {}
    for m in rng.sample(basis, min(len(basis), rng.randint(1, max_terms))):
        c = alg.field(rng.randint(-coeff_range, coeff_range))
        if c:
            terms[m] = c
    return Element(alg, terms)

"""Declarative presets, expected tables with provenance, and their runner.

Each preset is a JSON payload under ``presets/``.  Expected values come from
*series sources* (frozen tables or independent counting routines), and every
expected entry carries a provenance tag from :data:`PROVENANCE`.

Run convention: ``run_preset(..., n_max=N)`` reports degrees ``0..N`` and
builds algebras with truncation ``N + 1``, the minimum that certifies degree
``N`` cohomology.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from . import amalgam as am
from .cdga import (Differential, cohomology, cup, extend_leibniz,
                   quotient_cdga)
from .exactfield import Field, QQ
from .gradedalg import (GC, KOSZUL, GradedAlgebra, HilbertSeries, Ideal,
                        ProductAlgebra, hilbert, module_quotient_right)
from .koszul import (KoszulComplexSpec, closedness_probe, koszul_d_squared,
                     tor_dimensions)

PROVENANCE = ("source", "derived", "trivial")
UNANCHORED = "unanchored"
FORMAT_VERSION = 1
KINDS = ("cdga", "amalgam", "koszul", "tensor-module", "series-identity", "splitting")


class PresetError(ValueError):
    pass


# --- independent counting oracles -------------------------------------------

def einf_im_emb(n_max: int) -> list[int]:
    """Count the surviving spectral-sequence classes of the image model.

    Classes: 1; a, b; g; ab; ag; and for n >= 1 the families b h^n, g h^n,
    ab h^n, ag h^n (|h| = 4).  Counted directly from degrees, without any
    linear algebra.
    """
    sporadic = [0, 2, 2, 3, 4, 5]
    families = [2, 3, 4, 5]
    dims = [0] * (n_max + 1)
    for d in sporadic:
        if d <= n_max:
            dims[d] += 1
    for base in families:
        d = base + 4
        while d <= n_max:
            dims[d] += 1
            d += 4
    return dims


def free_gc_counts(odd: list[int], even: list[int], n_max: int) -> list[int]:
    """Coefficients of prod (1 + s^o) / prod (1 - s^e) through degree n_max."""
    series = [1] + [0] * n_max
    for o in odd:
        series = [series[n] + (series[n - o] if n >= o else 0) for n in range(n_max + 1)]
    for e in even:
        out = list(series)
        for n in range(e, n_max + 1):
            out[n] += out[n - e]
        series = out
    return series


def rational_series(num: list[int], den: list[int], n_max: int) -> list[int]:
    """Power-series expansion of num/den with integer coefficients (den[0] = 1)."""
    if den[0] != 1:
        raise PresetError("denominator must have constant term 1")
    out = []
    for n in range(n_max + 1):
        c = num[n] if n < len(num) else 0
        c -= sum(den[i] * out[n - i] for i in range(1, min(n, len(den) - 1) + 1))
        out.append(c)
    return out


# --- payload loading ---------------------------------------------------------

def _preset_files():
    return resources.files("cdgacalc").joinpath("presets")


def list_presets() -> list[dict]:
    out = []
    for entry in sorted(_preset_files().iterdir(), key=lambda p: p.name):
        if entry.name.endswith(".json"):
            p = json.loads(entry.read_text())
            out.append({"name": p["name"], "kind": p["kind"],
                        "description": p.get("description", ""), "anchor": p.get("anchor", "")})
    return out


def load_preset(name: str) -> dict:
    path = _preset_files().joinpath(f"{name}.json")
    if not path.is_file():
        known = ", ".join(p["name"] for p in list_presets())
        raise PresetError(f"unknown preset {name!r}; known presets: {known}")
    return json.loads(path.read_text())


def field_allowed(payload: dict, F: Field) -> bool:
    for pat in payload.get("fields", ["Q"]):
        if pat == "any":
            return True
        if pat == "Fp:*":
            if F.characteristic:
                return True
        elif pat == "Fp:odd":
            if F.characteristic > 2:
                return True
        elif Field.parse(pat) == F:
            return True
    return False


def parse_k(k) -> Fraction:
    try:
        k = Fraction(k) if not isinstance(k, str) else Fraction(k.strip())
    except (ValueError, ZeroDivisionError):
        raise PresetError(f"bad k {k!r}; expected a rational such as 2 or 7/2") from None
    if k == 0:
        raise PresetError("k must be a nonzero rational")
    return k


# --- builders ------------------------------------------------------------------

def _gens(block: dict):
    return tuple((g["name"], g["degree"], g.get("flavor", KOSZUL)) for g in block["generators"])


def build_algebra(block: dict, F: Field, N: int):
    if "product" in block:
        return ProductAlgebra(tuple(build_algebra(b, F, N) for b in block["product"]), N)
    return GradedAlgebra(F, _gens(block), block.get("mode", GC), N)


def build_ideal(alg, block: dict, params=None):
    rels = block.get("relations", [])
    if not rels:
        return None
    return Ideal(alg, tuple(alg.parse(r, params) for r in rels), block.get("side", "two-sided"))


def build_cdga(block: dict, F: Field, k: Fraction, N: int):
    alg = build_algebra(block, F, N)
    params = {"k": k}
    images = {name: alg.parse(text, params) for name, text in block.get("differential", {}).items()
              if alg.generators[alg.index(name)].degree + 1 <= N}
    return alg, Differential(alg, images, params=params)


def build_augmented(block: dict, F: Field) -> am.AugmentedAlgebra:
    top = sum(g["degree"] for g in block["generators"]) or 1
    alg = GradedAlgebra(F, _gens(block), block.get("mode", GC), top)
    return am.AugmentedAlgebra.from_graded(alg, build_ideal(alg, block))


def build_amalgam(payload: dict, F: Field, N: int) -> am.AmalgamSpec:
    A = build_augmented(payload["A"], F)
    B = build_augmented(payload["B"], F)
    C = build_augmented(payload["C"], F)
    phi = []
    for target, key in ((A, "phi_A"), (B, "phi_B")):
        images = {}
        for c, text in payload[key].items():
            images[c] = _linear_labels(target, text, F)
        phi.append(am.Embedding.from_labels(C, target, images))
    return am.AmalgamSpec(A, B, C, phi[0], phi[1], N)


def _linear_labels(target: am.AugmentedAlgebra, text: str, F: Field) -> dict:
    """Parse ``"x + z"`` style linear combinations of basis labels."""
    alg = GradedAlgebra(F, tuple((lab, max(d, 1)) for lab, d in
                                 zip(target.labels[1:], target.degrees[1:])
                                 if lab.isidentifier()), GC, max(target.degrees) or 1)
    u = alg.parse(text)
    out = {}
    for m, c in u.terms.items():
        (i, e, _), = alg.leibniz_factors(m)
        if e != 1:
            raise PresetError(f"{text!r} must be linear in basis labels")
        out[alg.generators[i].name] = c
    return out


def build_koszul(payload: dict, F: Field, N: int) -> KoszulComplexSpec:
    return KoszulComplexSpec(
        F,
        [(g["name"], g["degree"]) for g in payload["ring_generators"]],
        list(payload.get("relations", [])),
        [(g["name"], g["external"], g["internal"]) for g in payload["ext_generators"]],
        dict(payload["differential"]),
        N,
        payload.get("ext_floor", -6),
    )


# --- series sources ------------------------------------------------------------

@dataclass
class Context:
    field: Field
    k: Fraction
    n_max: int


def eval_series(src: dict, ctx: Context) -> list[int]:
    """Evaluate a series source to a list of dims for degrees ``0..n_max``.

    Frozen tables may be shorter (missing degrees are unanchored) unless
    marked ``"pad"``, meaning the dims vanish beyond the table.
    """
    n_max, F = ctx.n_max, ctx.field
    if "field" in src:
        F = Field.parse(src["field"])
        ctx = Context(F, ctx.k, n_max)
    if "table" in src:
        values = list(src["table"][: n_max + 1])
        if src.get("pad"):
            values += [0] * (n_max + 1 - len(values))
        return values
    if "free_gc" in src:
        b = src["free_gc"]
        return free_gc_counts(b.get("odd", []), b.get("even", []), n_max)
    if "rational" in src:
        return rational_series(src["rational"]["num"], src["rational"]["den"], n_max)
    if "oracle" in src:
        if src["oracle"] != "einf_im_emb":
            raise PresetError(f"unknown oracle {src['oracle']!r}")
        return einf_im_emb(n_max)
    if "hilbert" in src:
        b = src["hilbert"]
        alg = build_algebra(b, F, n_max)
        return list(hilbert(alg, build_ideal(alg, b), n_max))
    if "module_quotient" in src:
        b = src["module_quotient"]
        alg = build_algebra(b, F, n_max)
        return [module_quotient_right(alg, b["sub_generators"], n) for n in range(n_max + 1)]
    if "cohomology" in src:
        alg, d = build_cdga(src["cohomology"], F, ctx.k, n_max + 1)
        return list(cohomology(alg, d, n_max).betti)
    if "convolve" in src:
        parts = [eval_series(s, ctx) for s in src["convolve"]]
        out = HilbertSeries(parts[0])
        for p in parts[1:]:
            out = out.convolve(p)
        return list(out)
    if "preset" in src:
        v = run_preset(src["preset"], F, ctx.k, n_max)
        return list(v.series)
    raise PresetError(f"unrecognised series source {sorted(src)}")


def provenance_table(expected: dict, n_max: int) -> list[str]:
    default = expected.get("provenance")
    anchors = {int(k): v for k, v in expected.get("anchors", {}).items()}
    tags = []
    for n in range(n_max + 1):
        tag = anchors.get(n, default)
        if tag not in PROVENANCE:
            raise PresetError(f"expected entry for degree {n} lacks a valid provenance tag")
        tags.append(tag)
    return tags


# --- verdicts -------------------------------------------------------------------

@dataclass
class Verdict:
    name: str
    kind: str
    field: Field
    k: Fraction
    n_max: int
    truncation: int
    series_label: str = "dims"
    series: list = field(default_factory=list)
    rows: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    representatives: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r["ok"] for r in self.rows) and all(c["ok"] for c in self.checks)

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def check(self, name: str, ok: bool, detail: str = ""):
        self.checks.append({"name": name, "ok": bool(ok), "detail": detail})

    def compare(self, computed: list, expected: list, provenance: list):
        self.series = list(computed)
        self.rows = []
        for n, c in enumerate(computed):
            if n < len(expected):
                e, tag = expected[n], provenance[n]
                ok = c == e
            else:
                e, tag, ok = None, UNANCHORED, True
            self.rows.append({"degree": n, "computed": c, "expected": e,
                              "provenance": tag, "ok": ok})

    @property
    def first_failure(self):
        for r in self.rows:
            if not r["ok"]:
                return r["degree"]
        return None

    def report(self, with_representatives: bool = False) -> dict:
        """Deterministic report content (timing deliberately excluded)."""
        out = {
            "format_version": FORMAT_VERSION,
            "name": self.name,
            "kind": self.kind,
            "field": str(self.field),
            "k": str(self.k),
            "n_max": self.n_max,
            "truncation": self.truncation,
            "series_label": self.series_label,
            "series": list(self.series),
            "rows": [dict(r) for r in self.rows],
            "checks": [dict(c) for c in self.checks],
            "notes": list(self.notes),
            "status": self.status,
        }
        if with_representatives:
            out["representatives"] = {str(k): list(v) for k, v in self.representatives.items()}
        return out


# --- runners -------------------------------------------------------------------

def _expected_rows(v: Verdict, payload: dict, ctx: Context, computed: list):
    exp = payload.get("expected")
    if exp is None:
        v.compare(computed, [], [])
        return
    values = eval_series(exp["series"], ctx)
    tags = provenance_table(exp, min(ctx.n_max, len(values) - 1)) if values else []
    v.compare(computed, values, tags)


def _run_cdga(v: Verdict, payload: dict, ctx: Context):
    N = ctx.n_max + 1
    alg, d = build_cdga(payload, ctx.field, ctx.k, N)
    v.series_label = "betti"
    if "quotient" in payload:
        q = payload["quotient"]
        alg, d = quotient_cdga(alg, d, q["generators"])
        names = [g.name for g in alg.generators]
        v.check("quotient generators", names == q["expect_generators"],
                " ".join(names))
        if q.get("expect_zero_differential"):
            v.check("quotient differential is zero", not d.images,
                    "; ".join(f"d {k} = {x}" for k, x in d.describe().items()) or "d = 0")
    report = cohomology(alg, d, ctx.n_max)
    _expected_rows(v, payload, ctx, report.betti)
    for n, reps in enumerate(report.representatives):
        v.representatives[n] = [str(r) for r in reps]
    for spec in payload.get("cup_checks", []):
        a = report.classify(alg.parse(spec["left"]))
        b = report.classify(alg.parse(spec["right"]))
        if a.degree + b.degree > ctx.n_max:
            continue
        prod = cup(report, a, b)
        want_zero = spec["zero"]
        v.check(f"[{spec['left']}].[{spec['right']}] {'= 0' if want_zero else '!= 0'}",
                (not prod) == want_zero, "coords " + " ".join(map(ctx.field.format, prod.coords)))


def _run_amalgam(v: Verdict, payload: dict, ctx: Context):
    spec = build_amalgam(payload, ctx.field, ctx.n_max)
    dims = list(am.amalgam_hilbert(spec, ctx.n_max))
    _expected_rows(v, payload, ctx, dims)
    if payload.get("check_symmetry", True):
        sw = list(am.amalgam_hilbert(spec.swapped(), ctx.n_max))
        v.check("swapping the two sides gives the same series", sw == dims, " ".join(map(str, sw)))
    for n in range(min(ctx.n_max, 4) + 1):
        v.representatives[n] = [spec.format_word(w) for w in spec.basis(n)]


def _run_koszul(v: Verdict, payload: dict, ctx: Context):
    spec = build_koszul(payload, ctx.field, ctx.n_max + 1)
    v.series_label = "total"
    bad = koszul_d_squared(spec)
    v.check("d^2 = 0", bad is None, "" if bad is None else f"witness {bad[0]}: {bad[1]}")
    rep = tor_dimensions(spec, ctx.n_max)
    _expected_rows(v, payload, ctx, rep.totals)
    for (p, q), reps in sorted(rep.representatives.items()):
        if reps:
            v.representatives[f"{p},{q}"] = [str(r) for r in reps]
    for rc in payload.get("representative_checks", []):
        n = rc["total"]
        if n > ctx.n_max:
            continue
        want = spec.normal_form(spec.parse(rc["representative"]))
        reps = [r for (p, q), rs in rep.representatives.items() if p + q == n for r in rs]
        ok = len(reps) == 1 and reps[0] == want
        v.check(f"total degree {n}: dim {len(reps)}, representative "
                + ", ".join(map(str, reps)), ok, f"expected {want}")
    for pr in payload.get("probes", []):
        res = closedness_probe(spec, pr["span"])
        v.check(f"closed combinations of {{{', '.join(pr['span'])}}}",
                res.dim == pr["expected_dim"],
                f"dim {res.dim}" + "".join(f"; {e}" for e in res.elements))
    for q in range(ctx.n_max + 1):
        chains, homology = rep.euler(q)
        if chains != homology:
            v.check(f"Euler characteristic at internal degree {q}", False, f"{chains} vs {homology}")
    cross = payload.get("cross_check")
    if cross:
        top = min(cross["through"], ctx.n_max)
        other = eval_series({"preset": cross["preset"]}, Context(ctx.field, ctx.k, top))
        v.check(f"totals 0..{top} agree with {cross['preset']}",
                other[: top + 1] == rep.totals[: top + 1], " ".join(map(str, other)))


def _run_tensor_module(v: Verdict, payload: dict, ctx: Context):
    alg = build_algebra(payload, ctx.field, ctx.n_max)
    dims = [module_quotient_right(alg, payload["sub_generators"], n) for n in range(ctx.n_max + 1)]
    _expected_rows(v, payload, ctx, dims)


def _run_series_identity(v: Verdict, payload: dict, ctx: Context):
    dims = eval_series(payload["computed"], ctx)
    _expected_rows(v, payload, ctx, dims)
    for cmp in payload.get("dominates", []):
        other = eval_series(cmp["series"], ctx)
        top = min(len(other), len(dims))
        geq = all(dims[n] >= other[n] for n in range(top))
        strict = [n for n in range(top) if dims[n] > other[n]]
        first = strict[0] if strict else None
        ok = geq and first == cmp.get("first_strict", first)
        v.check(cmp["name"], ok,
                f"other {' '.join(map(str, other))}; first strict degree {first}")


def _run_splitting(v: Verdict, payload: dict, ctx: Context):
    model = load_preset(payload["model"])
    whole = sorted(g["degree"] for g in model["generators"])
    union = []
    for part in payload["parts"]:
        union.extend(g["degree"] for g in part["generators"])
        if "expected" in part:
            got = eval_series({"cohomology": part}, ctx)
            want = eval_series(part["expected"]["series"], ctx)
            top = min(len(got), len(want))
            v.check(f"{part['name']} model cohomology", got[:top] == want[:top],
                    " ".join(map(str, got)))
    union.sort()
    v.series_label = "degrees"
    v.series = whole
    v.check("generator degrees equal the union of the parts",
            whole == union, f"{whole} vs {union}")
    if "expect_degrees" in payload:
        v.check("generator degrees as listed", whole == sorted(payload["expect_degrees"]),
                " ".join(map(str, whole)))


_RUNNERS = {
    "cdga": _run_cdga,
    "amalgam": _run_amalgam,
    "koszul": _run_koszul,
    "tensor-module": _run_tensor_module,
    "series-identity": _run_series_identity,
    "splitting": _run_splitting,
}


def validate_payload(payload: dict):
    for key in ("name", "kind"):
        if key not in payload:
            raise PresetError(f"payload is missing {key!r}")
    if payload["kind"] not in KINDS:
        raise PresetError(f"unknown kind {payload['kind']!r}")
    exp = payload.get("expected")
    if exp is not None:
        if exp.get("provenance") not in PROVENANCE:
            raise PresetError(f"{payload['name']}: expected table needs a provenance tag")
        for tag in exp.get("anchors", {}).values():
            if tag not in PROVENANCE:
                raise PresetError(f"{payload['name']}: bad provenance tag {tag!r}")


def run_payload(payload: dict, field: Field | str | None = None, k=1,
                n_max: int | None = None) -> Verdict:
    validate_payload(payload)
    if field is None:
        field = payload.get("field", "Q")
    if isinstance(field, str):
        field = Field.parse(field)
    k = parse_k(k)
    if not field_allowed(payload, field):
        raise PresetError(f"{payload['name']} is not defined over {field}; "
                          f"allowed: {', '.join(payload.get('fields', ['Q']))}")
    if field.characteristic and k.denominator % field.characteristic == 0:
        raise PresetError(f"k = {k} is not defined over {field}")
    if field.characteristic and field(k) == 0:
        raise PresetError(f"k = {k} vanishes over {field}")
    if n_max is None:
        n_max = payload.get("n_max", 12)
    if n_max < 0:
        raise PresetError("max degree must be non-negative")
    t0 = time.perf_counter()
    v = Verdict(payload["name"], payload["kind"], field, k, n_max, n_max + 1)
    _RUNNERS[payload["kind"]](v, payload, Context(field, k, n_max))
    v.notes = list(payload.get("notes", []))
    v.elapsed = time.perf_counter() - t0
    return v


def run_preset(name: str, field: Field | str | None = None, k=1, n_max: int | None = None) -> Verdict:
    return run_payload(load_preset(name), field, k, n_max)


# --- s_n cocycles -------------------------------------------------------------

def s_n_cocycle_check(n_max: int = 3, k=1, field: Field = QQ) -> Verdict:
    """``s_n`` is a non-bounding cocycle of the embedding model for ``1 <= n <= n_max``.

    Also checks the analogous classes ``b h^n - n k f g h^(n-1)`` in the
    image model.
    """
    k = parse_k(k)
    top = 4 * n_max + 2
    v = Verdict("s_n_cocycle_check", "cdga", field, k, n_max, top + 1)
    emb = load_preset("emb_model")
    alg, d = build_cdga(emb, field, k, top + 1)
    rep = cohomology(alg, d, top)
    im = load_preset("im_emb_model")
    ialg, idf = build_cdga(im, field, k, top + 1)
    irep = cohomology(ialg, idf, top)
    params = {"k": k}
    for n in range(1, n_max + 1):
        s = alg.parse(f"h^{n}*dab + {n}*k*h^{n - 1}*e*g", params)
        closed = not extend_leibniz(d, s)
        v.check(f"s_{n} is a cocycle", closed, str(s))
        v.check(f"s_{n} is not a boundary", closed and not rep.is_boundary(s), f"degree {s.degree()}")
        t = ialg.parse(f"b*h^{n} - {n}*k*f*g*h^{n - 1}", params)
        tc = not extend_leibniz(idf, t)
        v.check(f"b h^{n} - {n}k f g h^{n - 1} is a cocycle", tc, str(t))
        v.check(f"b h^{n} - {n}k f g h^{n - 1} is not a boundary",
                tc and not irep.is_boundary(t), f"degree {t.degree()}")
    return v

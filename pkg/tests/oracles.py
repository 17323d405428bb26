"""Independent reference computations used to freeze expected values.

Nothing here imports the engine.  Monomials are sorted generator lists, signs
come from counting odd transpositions, and ranks come from sympy.
"""
from fractions import Fraction
from itertools import product

import sympy


# --- free graded-commutative algebras (no divided powers) ---------------------

class FreeGC:
    def __init__(self, degrees, top):
        self.deg = list(degrees)
        self.top = top

    def mdeg(self, m):
        return sum(self.deg[i] for i in m)

    def basis(self, n):
        out = []
        k = len(self.deg)

        def rec(i, rest, acc):
            if rest == 0:
                out.append(tuple(acc))
                return
            if i == k:
                return
            d = self.deg[i]
            cap = 1 if d % 2 else rest // d
            for e in range(min(cap, rest // d), -1, -1):
                rec(i + 1, rest - e * d, acc + [i] * e)

        rec(0, n, [])
        return out

    def normalize(self, word):
        """Sort a generator word; returns (sign, monomial) or None if zero."""
        w = list(word)
        sign = 1
        for i in range(len(w)):          # bubble sort, tracking odd swaps
            for j in range(len(w) - 1 - i):
                if w[j] > w[j + 1]:
                    if self.deg[w[j]] % 2 and self.deg[w[j + 1]] % 2:
                        sign = -sign
                    w[j], w[j + 1] = w[j + 1], w[j]
        for a, b in zip(w, w[1:]):
            if a == b and self.deg[a] % 2:
                return None
        return sign, tuple(w)

    def mul(self, u, v):
        out = {}
        for m1, c1 in u.items():
            for m2, c2 in v.items():
                if self.mdeg(m1) + self.mdeg(m2) > self.top:
                    continue
                r = self.normalize(m1 + m2)
                if r is None:
                    continue
                s, m = r
                out[m] = out.get(m, 0) + s * c1 * c2
        return {m: c for m, c in out.items() if c}

    def d(self, images, m):
        """Leibniz expansion over the sorted word of ``m``."""
        out = {}
        for i, g in enumerate(m):
            dg = images.get(g)
            if not dg:
                continue
            sign = -1 if self.mdeg(m[:i]) % 2 else 1
            left = {m[:i]: Fraction(sign)}
            right = {m[i + 1:]: Fraction(1)}
            term = self.mul(self.mul(left, dg), right)
            for mm, c in term.items():
                out[mm] = out.get(mm, 0) + c
        return {mm: c for mm, c in out.items() if c}


def parse_poly(alg, names, text, k=1):
    """Tiny parser for sums of signed products like ``-k*b*g`` or ``a^2``."""
    out = {}
    text = text.replace(" ", "").replace("-", "+-")
    for term in filter(None, text.split("+")):
        coeff = Fraction(1)
        word = []
        if term.startswith("-"):
            coeff, term = -coeff, term[1:]
        for f in term.split("*"):
            if f == "k":
                coeff *= Fraction(k)
            elif f.lstrip("-").isdigit():
                coeff *= int(f)
            else:
                base, _, e = f.partition("^")
                word += [names.index(base)] * int(e or 1)
        r = alg.normalize(word)
        if r:
            out[r[1]] = out.get(r[1], 0) + r[0] * coeff
    return {m: c for m, c in out.items() if c}


def betti(gens, diff, n_max, k=1, p=0):
    """Betti numbers via sympy ranks of the matrices of d (over Q or F_p)."""
    names = [g for g, _ in gens]
    alg = FreeGC([d for _, d in gens], n_max + 1)
    images = {names.index(g): parse_poly(alg, names, t, k) for g, t in diff.items()}
    bases = [alg.basis(n) for n in range(n_max + 2)]

    def rank(n):
        src, dst = bases[n], bases[n + 1]
        if not src or not dst:
            return 0
        idx = {m: i for i, m in enumerate(dst)}
        M = sympy.zeros(len(dst), len(src))
        for j, m in enumerate(src):
            for mm, c in alg.d(images, m).items():
                M[idx[mm], j] = sympy.Rational(c.numerator, c.denominator)
        if p:
            M = M.applyfunc(lambda x: sympy.Integer(x.p * pow(x.q, -1, p) % p))
            return _rank_mod_p(M, p)
        return M.rank()

    ranks = [rank(n) for n in range(n_max + 1)]
    return [len(bases[n]) - ranks[n] - (ranks[n - 1] if n else 0) for n in range(n_max + 1)]


def _rank_mod_p(M, p):
    rows = [[int(x) % p for x in M.row(i)] for i in range(M.rows)]
    r = 0
    ncols = M.cols
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


# --- words and series ---------------------------------------------------------

def words(degrees, n):
    """All words over letters with the given degrees, of total degree n."""
    out = []
    for length in range(n + 1):
        for w in product(range(len(degrees)), repeat=length):
            if sum(degrees[i] for i in w) == n:
                out.append(w)
    return out


def words_not_ending_in(degrees, banned, n):
    return sum(1 for w in words(degrees, n) if not w or w[-1] != banned)


def words_avoiding_squares(degrees, n):
    """Words with no letter repeated consecutively."""
    return sum(1 for w in words(degrees, n) if all(a != b for a, b in zip(w, w[1:])))


def series_inverse(a, n_max):
    inv = [Fraction(0)] * (n_max + 1)
    inv[0] = Fraction(1, a[0])
    for n in range(1, n_max + 1):
        s = sum(a[i] * inv[n - i] for i in range(1, min(n, len(a) - 1) + 1))
        inv[n] = -s / a[0]
    return inv


def amalgam_series(hA, hB, hC, n_max):
    """1/H = 1/H_A + 1/H_B - 1/H_C (free modules over the common subalgebra)."""
    pad = lambda h: list(h) + [0] * (n_max + 1 - len(h))
    iA, iB, iC = (series_inverse(pad(h), n_max) for h in (hA, hB, hC))
    total = [iA[n] + iB[n] - iC[n] for n in range(n_max + 1)]
    out = series_inverse(total, n_max)
    assert all(x.denominator == 1 for x in out)
    return [int(x) for x in out]


def convolve(a, b, n_max):
    a = list(a) + [0] * (n_max + 1)
    b = list(b) + [0] * (n_max + 1)
    return [sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(n_max + 1)]


def exterior_dims(degrees, n_max):
    out = [0] * (n_max + 1)
    for mask in range(1 << len(degrees)):
        d = sum(degrees[i] for i in range(len(degrees)) if mask >> i & 1)
        if d <= n_max:
            out[d] += 1
    return out


def sympy_rank(rows, p=0):
    M = sympy.Matrix(rows) if rows else sympy.zeros(0, 0)
    if p:
        return _rank_mod_p(M, p)
    return M.rank()

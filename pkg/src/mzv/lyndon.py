"""Lyndon words and the Radford decomposition of word polynomials.

A Lyndon word is a nonempty word strictly smaller (lexicographically,
'0' < '1') than each of its proper right factors.  The shuffle algebra on
words over {0, 1} is a polynomial algebra on the Lyndon words, so every word
decomposes uniquely as a rational polynomial in Lyndon words with shuffle as
the multiplication.  Monomials are represented as sorted tuples of Lyndon
words (multisets).

The decomposition is computed by triangular elimination: the shuffle
expansion of the monomial built from a word's Chen-Fox-Lyndon factors has
that word as its lexicographically largest term, with coefficient equal to
the product of the factor multiplicities' factorials.  The right-residual
derivation machinery is included as well; it is an alternative route to the
same decomposition and is exercised by the test suite (Leibniz rule), but
the triangular rewrite is what the relation engine runs on.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .words import LinComb, Word, concat, shuffle, word_poly

__all__ = [
    "is_lyndon",
    "lyndon_words",
    "cfl_factor",
    "standard_factorization",
    "bracket",
    "right_residual",
    "residual_derivation",
    "radford_decompose",
    "radford_decompose_poly",
    "expand",
    "monomial_expand",
    "format_lyndon_monomial",
    "format_lyndon_poly",
]

LyndonMonomial = tuple[Word, ...]  # sorted tuple of Lyndon words


def is_lyndon(w: Word) -> bool:
    """True iff w is nonempty and smaller than all its proper right factors."""
    if not w:
        return False
    return all(w < w[i:] for i in range(1, len(w)))


def lyndon_words(n: int, alphabet: str = "01") -> list[Word]:
    """All Lyndon words of length exactly n, lexicographic (Duval)."""
    if n < 1:
        return []
    k = len(alphabet)
    out = []
    w = [0]
    while True:
        if len(w) == n:
            out.append("".join(alphabet[c] for c in w))
        m = len(w)
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
        if not w:
            return out
        w[-1] += 1


def cfl_factor(w: Word) -> list[Word]:
    """Chen-Fox-Lyndon factorization: w = l1 l2 ... lm with l1 >= l2 >= ... >= lm.

    Duval's linear-time algorithm.
    """
    out = []
    i, n = 0, len(w)
    while i < n:
        j, k = i + 1, i
        while j < n and w[k] <= w[j]:
            if w[k] < w[j]:
                k = i
            else:
                k += 1
            j += 1
        while i <= k:
            out.append(w[i:i + j - k])
            i += j - k
    return out


def standard_factorization(w: Word) -> tuple[Word, Word]:
    """Split a Lyndon word of length >= 2 as uv with v the longest proper
    Lyndon suffix; then u is Lyndon as well and u < uv < v."""
    if len(w) < 2 or not is_lyndon(w):
        raise ValueError(f"not a composite Lyndon word: {w!r}")
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise AssertionError("unreachable: single letters are Lyndon")


def bracket(l: Word) -> LinComb:
    """Bracketed form of a Lyndon word under the concatenation commutator:
    single letters map to themselves, [l] = [u][v] - [v][u] for the standard
    factorization l = uv."""
    if not is_lyndon(l):
        raise ValueError(f"not a Lyndon word: {l!r}")
    if len(l) == 1:
        return word_poly(l)
    u, v = standard_factorization(l)
    bu, bv = bracket(u), bracket(v)
    return concat(bu, bv) - concat(bv, bu)


def right_residual(p: LinComb, q: LinComb) -> LinComb:
    """The word polynomial r with (r|w) = (p|qw), extended bilinearly in q."""
    d = {}
    for v, cv in q.items():
        k = len(v)
        for u, cu in p.items():
            if u.startswith(v):
                w = u[k:]
                s = d.get(w, 0) + cu * cv
                if s:
                    d[w] = s
                else:
                    del d[w]
    return LinComb._raw(d)


def residual_derivation(p: LinComb, l: Word) -> LinComb:
    """Right residual by the bracketed form of l; a shuffle derivation."""
    return right_residual(p, bracket(l))


# ---------------------------------------------------------------------------
# Radford decomposition

_expand_memo: dict[LyndonMonomial, LinComb] = {}
_radford_memo: dict[Word, LinComb] = {}


def monomial_expand(mono: LyndonMonomial) -> LinComb:
    """Shuffle product of the factors of a Lyndon monomial, as a word
    polynomial.  mono must be sorted."""
    if not mono:
        return word_poly("")
    hit = _expand_memo.get(mono)
    if hit is not None:
        return hit
    if len(mono) == 1:
        r = word_poly(mono[0])
    else:
        r = shuffle(monomial_expand(mono[:-1]), word_poly(mono[-1]))
    _expand_memo[mono] = r
    return r


def expand(P: LinComb) -> LinComb:
    """Linear extension of monomial_expand; inverse of radford_decompose."""
    return P.map_linear(monomial_expand)


def _multiplicity_factorial(mono: LyndonMonomial) -> int:
    # product of factorials of the factor multiplicities; this is the
    # coefficient of the leading word in the monomial's shuffle expansion
    counts: dict[Word, int] = {}
    for f in mono:
        counts[f] = counts.get(f, 0) + 1
    out = 1
    for m in counts.values():
        out *= factorial(m)
    return out


def radford_decompose_poly(p: LinComb) -> LinComb:
    """Express a word polynomial as a polynomial in Lyndon words.

    Returns a LinComb keyed by LyndonMonomial (sorted tuples); the empty
    tuple is the constant term.  Triangular rewriting on the current leading
    word (lexicographically largest, '0' < '1'); each step replaces it by
    strictly smaller words of the same length, so the loop terminates.
    Decompositions of single words seen along the way are memoized.
    """
    result: dict[LyndonMonomial, object] = {}
    work = dict(p.items())
    while work:
        w = max(work)
        c = work.pop(w)
        if not w:
            result[()] = result.get((), 0) + c
            continue
        hit = _radford_memo.get(w)
        if hit is not None:
            for mono, c2 in hit.items():
                s = result.get(mono, 0) + c * c2
                if s:
                    result[mono] = s
                else:
                    del result[mono]
            continue
        mono = tuple(sorted(cfl_factor(w)))
        lead = _multiplicity_factorial(mono)
        coeff = Fraction(c, lead)
        result[mono] = result.get(mono, 0) + coeff
        if not result[mono]:
            del result[mono]
        # the expansion's top term is exactly lead * w, which we popped
        for w2, c2 in monomial_expand(mono).items():
            if w2 == w:
                continue
            s = work.get(w2, 0) - coeff * c2
            if s:
                work[w2] = s
            else:
                work.pop(w2, None)
    return LinComb({k: v for k, v in result.items() if v})


def radford_decompose(w: Word) -> LinComb:
    """Decomposition of a single word; memoized, heavily reused."""
    hit = _radford_memo.get(w)
    if hit is None:
        hit = radford_decompose_poly(word_poly(w))
        _radford_memo[w] = hit
    return hit


# ---------------------------------------------------------------------------
# printing

def format_lyndon_monomial(mono: LyndonMonomial) -> str:
    from .words import word_sort_key
    return "\N{MIDDLE DOT}".join(sorted(mono, key=word_sort_key, reverse=True))


def _monomial_sort_key(mono: LyndonMonomial):
    from .words import word_sort_key
    fac = tuple(word_sort_key(f) for f in sorted(mono, key=word_sort_key))
    return (sum(len(f) for f in mono), fac)


def format_lyndon_poly(p: LinComb) -> str:
    from .words import _format_terms
    keys = sorted(p.support(), key=_monomial_sort_key)
    pairs = [(format_lyndon_monomial(m), p[m]) for m in keys]
    return _format_terms(pairs)

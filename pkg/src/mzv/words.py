"""Words over {x0, x1}, compositions, and the shuffle and stuffle products.

An MZV index (s1, ..., sk) is a tuple of positive integers and is encoded as
the binary word 0^(s1-1) 1 0^(s2-1) 1 ... 0^(sk-1) 1, held as a str of '0'
and '1' characters.  The empty str is the unit word.  H1 is the span of words
ending in '1' (plus the unit), H2 the span of words starting with '0' and
ending in '1' (plus the unit); a composition is admissible iff s1 >= 2,
equivalently iff its word lies in H2.

Every linear structure in the package (word polynomials, composition
polynomials, Lyndon polynomials, generator polynomials) is a finite rational
linear combination of hashable keys and shares the LinComb container below.
Coefficients are exact: fractions.Fraction, with plain int tolerated as a
denominator-one rational.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as _cartesian
from typing import Callable, Hashable, Iterable, Iterator, Mapping

Word = str
Composition = tuple[int, ...]
Rational = Fraction

__all__ = [
    "Word",
    "Composition",
    "Rational",
    "LinComb",
    "word_poly",
    "comp_poly",
    "validate_word",
    "in_h1",
    "in_h2",
    "h1_words",
    "h2_words",
    "all_words",
    "comp_weight",
    "comp_depth",
    "is_admissible",
    "validate_comp",
    "comp_to_word",
    "word_to_comp",
    "shuffle",
    "stuffle",
    "concat",
    "word_sort_key",
    "format_rational",
    "format_word_poly",
    "format_comp",
    "parse_comp",
]


class LinComb:
    """A finite rational linear combination of hashable keys.

    Immutable by convention: every operation returns a fresh LinComb and no
    method mutates ``_terms`` after construction, so instances can be shared
    freely (the shuffle/expansion memo tables rely on this).
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Hashable, object] | None = None):
        d = {}
        if terms:
            for k, c in terms.items():
                if c:
                    d[k] = c
        self._terms = d

    @classmethod
    def _raw(cls, d: dict) -> "LinComb":
        # trusted constructor: d is fresh and already zero-free
        self = object.__new__(cls)
        self._terms = d
        return self

    @classmethod
    def term(cls, key: Hashable, coeff=1) -> "LinComb":
        return cls._raw({key: coeff}) if coeff else cls._raw({})

    @classmethod
    def zero(cls) -> "LinComb":
        return cls._raw({})

    def items(self):
        return self._terms.items()

    def support(self):
        return self._terms.keys()

    def __getitem__(self, key):
        return self._terms.get(key, 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, LinComb):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: "LinComb") -> "LinComb":
        if not isinstance(other, LinComb):
            return NotImplemented
        d = dict(self._terms)
        for k, c in other._terms.items():
            s = d.get(k, 0) + c
            if s:
                d[k] = s
            else:
                d.pop(k, None)
        return LinComb._raw(d)

    def __sub__(self, other: "LinComb") -> "LinComb":
        if not isinstance(other, LinComb):
            return NotImplemented
        d = dict(self._terms)
        for k, c in other._terms.items():
            s = d.get(k, 0) - c
            if s:
                d[k] = s
            else:
                d.pop(k, None)
        return LinComb._raw(d)

    def __neg__(self) -> "LinComb":
        return LinComb._raw({k: -c for k, c in self._terms.items()})

    def __rmul__(self, scalar) -> "LinComb":
        if not scalar:
            return LinComb._raw({})
        return LinComb._raw({k: scalar * c for k, c in self._terms.items()})

    def __mul__(self, scalar) -> "LinComb":
        return self.__rmul__(scalar)

    def map_keys(self, f: Callable[[Hashable], Hashable]) -> "LinComb":
        """Push every key through f, merging collisions (linear extension)."""
        d = {}
        for k, c in self._terms.items():
            k2 = f(k)
            s = d.get(k2, 0) + c
            if s:
                d[k2] = s
            else:
                d.pop(k2, None)
        return LinComb._raw(d)

    def map_linear(self, f: Callable[[Hashable], "LinComb"]) -> "LinComb":
        """Substitute f(key) for every key (f returns a LinComb)."""
        d = {}
        for k, c in self._terms.items():
            for k2, c2 in f(k)._terms.items():
                s = d.get(k2, 0) + c * c2
                if s:
                    d[k2] = s
                else:
                    d.pop(k2, None)
        return LinComb._raw(d)

    def __repr__(self) -> str:
        if not self._terms:
            return "LinComb(0)"
        inner = ", ".join(f"{k!r}: {c}" for k, c in sorted(
            self._terms.items(), key=lambda kv: repr(kv[0])))
        return f"LinComb({{{inner}}})"


def word_poly(w: Word, coeff=1) -> LinComb:
    validate_word(w)
    return LinComb.term(w, coeff)


def comp_poly(c: Composition, coeff=1) -> LinComb:
    validate_comp(c)
    return LinComb.term(c, coeff)


# ---------------------------------------------------------------------------
# words

def validate_word(w: Word) -> Word:
    if not isinstance(w, str) or w.strip("01") != "":
        raise ValueError(f"not a word over 0/1: {w!r}")
    return w


def in_h1(w: Word) -> bool:
    """True iff w is the unit or ends in x1."""
    return w == "" or w[-1] == "1"


def in_h2(w: Word) -> bool:
    """True iff w is the unit or starts with x0 and ends in x1."""
    return w == "" or (w[0] == "0" and w[-1] == "1")


def all_words(n: int) -> list[Word]:
    return ["".join(bits) for bits in _cartesian("01", repeat=n)]


def h1_words(n: int) -> list[Word]:
    """Nonempty H1 words of length n, in lexicographic order."""
    if n < 1:
        return []
    return [w + "1" for w in all_words(n - 1)]


def h2_words(n: int) -> list[Word]:
    """Nonempty H2 words of length n, in lexicographic order (2^(n-2) many)."""
    if n < 2:
        return []
    return ["0" + w + "1" for w in all_words(n - 2)]


def word_sort_key(w: Word) -> tuple[int, Word]:
    # canonical term order: length, then lexicographic with '0' < '1'
    return (len(w), w)


# ---------------------------------------------------------------------------
# compositions

def validate_comp(c: Composition) -> Composition:
    if not isinstance(c, tuple) or not all(
            isinstance(s, int) and s >= 1 for s in c):
        raise ValueError(f"not a composition: {c!r}")
    return c


def comp_weight(c: Composition) -> int:
    return sum(c)


def comp_depth(c: Composition) -> int:
    return len(c)


def is_admissible(c: Composition) -> bool:
    validate_comp(c)
    return bool(c) and c[0] >= 2


def comp_to_word(c: Composition) -> Word:
    """Encode (s1, ..., sk) as 0^(s1-1) 1 ... 0^(sk-1) 1."""
    validate_comp(c)
    return "".join("0" * (s - 1) + "1" for s in c)


def word_to_comp(w: Word) -> Composition:
    """Inverse of comp_to_word; w must lie in H1."""
    validate_word(w)
    if not in_h1(w):
        raise ValueError(f"word does not end in x1: {w!r}")
    parts = []
    run = 0
    for ch in w:
        if ch == "0":
            run += 1
        else:
            parts.append(run + 1)
            run = 0
    return tuple(parts)


def format_comp(c: Composition) -> str:
    return ",".join(str(s) for s in c)


def parse_comp(text: str) -> Composition:
    try:
        c = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise ValueError(f"bad composition text: {text!r}") from None
    return validate_comp(c)


# ---------------------------------------------------------------------------
# shuffle

_shuffle_memo: dict[tuple[Word, Word], dict[Word, int]] = {}


def _shuffle_words(u: Word, v: Word) -> dict[Word, int]:
    """All interleavings of u and v with multiplicity (integer counts)."""
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    if u > v:
        u, v = v, u
    key = (u, v)
    hit = _shuffle_memo.get(key)
    if hit is not None:
        return hit
    acc: dict[Word, int] = {}
    a = u[0]
    for w, c in _shuffle_words(u[1:], v).items():
        aw = a + w
        acc[aw] = acc.get(aw, 0) + c
    b = v[0]
    for w, c in _shuffle_words(u, v[1:]).items():
        bw = b + w
        acc[bw] = acc.get(bw, 0) + c
    _shuffle_memo[key] = acc
    return acc


def shuffle(p: LinComb, q: LinComb) -> LinComb:
    """Shuffle product of two word polynomials (bilinear extension)."""
    d = {}
    for u, cu in p.items():
        for v, cv in q.items():
            c = cu * cv
            for w, mult in _shuffle_words(u, v).items():
                s = d.get(w, 0) + c * mult
                if s:
                    d[w] = s
                else:
                    del d[w]
    return LinComb._raw(d)


def concat(p: LinComb, q: LinComb) -> LinComb:
    """Concatenation product of two word polynomials."""
    d = {}
    for u, cu in p.items():
        for v, cv in q.items():
            w = u + v
            s = d.get(w, 0) + cu * cv
            if s:
                d[w] = s
            else:
                del d[w]
    return LinComb._raw(d)


# ---------------------------------------------------------------------------
# stuffle

_stuffle_memo: dict[tuple[Composition, Composition], dict[Composition, int]] = {}


def _stuffle_comps(a: Composition, b: Composition) -> dict[Composition, int]:
    """y_i u * y_j v = y_i (u * y_j v) + y_j (y_i u * v) + y_{i+j} (u * v)."""
    if not a:
        return {b: 1}
    if not b:
        return {a: 1}
    if a > b:
        a, b = b, a
    key = (a, b)
    hit = _stuffle_memo.get(key)
    if hit is not None:
        return hit
    acc: dict[Composition, int] = {}
    i, u = a[0], a[1:]
    j, v = b[0], b[1:]
    for c, m in _stuffle_comps(u, b).items():
        k = (i,) + c
        acc[k] = acc.get(k, 0) + m
    for c, m in _stuffle_comps(a, v).items():
        k = (j,) + c
        acc[k] = acc.get(k, 0) + m
    for c, m in _stuffle_comps(u, v).items():
        k = (i + j,) + c
        acc[k] = acc.get(k, 0) + m
    _stuffle_memo[key] = acc
    return acc


def stuffle(p: LinComb, q: LinComb) -> LinComb:
    """Stuffle (harmonic) product of two composition polynomials."""
    d = {}
    for a, ca in p.items():
        for b, cb in q.items():
            c = ca * cb
            for r, mult in _stuffle_comps(a, b).items():
                s = d.get(r, 0) + c * mult
                if s:
                    d[r] = s
                else:
                    del d[r]
    return LinComb._raw(d)


# ---------------------------------------------------------------------------
# printing

def format_rational(c) -> str:
    return str(Fraction(c))


def _format_terms(pairs: list[tuple[str, object]]) -> str:
    """Render (monomial_text, coeff) pairs as a signed sum.

    A coefficient of magnitude one is dropped in front of a nonempty monomial;
    an empty monomial prints as its bare coefficient.
    """
    if not pairs:
        return "0"
    out = []
    for text, coeff in pairs:
        c = Fraction(coeff)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not text:
            body = str(mag)
        elif mag == 1:
            body = text
        else:
            body = f"{mag}*{text}"
        if not out:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def format_word_poly(p: LinComb) -> str:
    pairs = [(w, p[w]) for w in sorted(p.support(), key=word_sort_key)]
    return _format_terms(pairs)


def format_comp_poly(p: LinComb) -> str:
    keys = sorted(p.support(), key=lambda c: (comp_weight(c), len(c), c))
    pairs = [(f"z({format_comp(c)})" if c else "", p[c]) for c in keys]
    return _format_terms(pairs)

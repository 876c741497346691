"""Per-weight reduction of the relation systems into rewrite tables.

For each weight n the double-shuffle rows are echelonized under a column
order that eliminates the least preferred words first, so the surviving free
columns form the basis of the weight-n span.  Preference ranks words by
depth, then first index part descending, then index parts lexicographically;
this reproduces the published generator choices (5), (7), (6,2), (9), (8,2).

Basis words are then resolved greedily against products of the generators
accumulated from lower weights: a basis word whose coordinate vector lies in
the span of those product values is recorded as that combination, anything
else becomes a new generator.  The resulting generator_map turns any
admissible index into a polynomial in the generators, which is the normal
form used to verify identities.

The freeness check re-expresses the weight-n rows in Lyndon-monomial
variables, substitutes the lower-weight generator expressions into every
product factor, and echelonizes scanning the single-Lyndon-word columns
first; the criterion holds when every pivot lands on a single.  Substituting
first is what makes the check meaningful: without it, products of
lower-weight relations (already consequences of smaller tables) masquerade
as product-only rows and steal pivots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import SparseMatrix, rref, solve_for
from .lyndon import lyndon_words, radford_decompose_poly
from .regularize import knt_system
from .words import (
    Composition,
    LinComb,
    Word,
    _format_terms,
    comp_to_word,
    comp_weight,
    format_comp,
    in_h2,
    is_admissible,
    stuffle,
    word_sort_key,
    word_to_comp,
)

__all__ = [
    "ENGINE_VERSION",
    "GeneratorMonomial",
    "RewriteTable",
    "Identity",
    "FreenessReport",
    "preference_key",
    "echelonize_degree",
    "express_in_generators",
    "verify_identity",
    "check_polynomial_freeness",
    "canonical_monomial",
    "monomial_weight",
    "gp_mul",
    "format_generator_poly",
    "format_generator_monomial",
    "parse_generator_poly",
]

# bump to invalidate persisted tables when table-affecting logic changes
ENGINE_VERSION = "1"

GeneratorMonomial = tuple[Composition, ...]


def factor_key(c: Composition):
    return (sum(c), c)


def canonical_monomial(factors) -> GeneratorMonomial:
    return tuple(sorted(factors, key=factor_key))


def monomial_weight(m: GeneratorMonomial) -> int:
    return sum(sum(f) for f in m)


def gp_mul(p: LinComb, q: LinComb) -> LinComb:
    """Product of generator polynomials (multiset union of factors)."""
    d = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = canonical_monomial(m1 + m2)
            s = d.get(m, 0) + c1 * c2
            if s:
                d[m] = s
            elif m in d:
                del d[m]
    return LinComb._raw(d)


def preference_key(w: Word):
    """Lower sorts as more preferred basis candidate."""
    c = word_to_comp(w)
    return (len(c), -c[0], c)


def _preference_lex(w: Word):
    return word_to_comp(w)


# alternative basis orders stay in-memory only; the persistent cache holds
# tables for the default order
PREFERENCES = {"depth": preference_key, "lex": _preference_lex}


def _pref(name: str):
    try:
        return PREFERENCES[name]
    except KeyError:
        raise ValueError(f"unknown preference order {name!r}") from None


@dataclass(frozen=True)
class RewriteTable:
    degree: int
    basis_words: tuple[Word, ...]          # preference order
    rules: dict[Word, LinComb]             # non-basis word -> basis combination
    generator_map: dict[Word, LinComb]     # basis word -> generator polynomial
    new_generators: tuple[Word, ...]
    preference: str = "depth"

    def coords(self, w: Word) -> LinComb:
        r = self.rules.get(w)
        return LinComb.term(w) if r is None else r


class _MemoryCache:
    """Fallback table cache when no persistent store is supplied."""

    def __init__(self):
        self.tables: dict[int, RewriteTable] = {}

    def get(self, degree: int):
        return self.tables.get(degree)

    def put(self, table: RewriteTable) -> None:
        self.tables[table.degree] = table


_default_cache = _MemoryCache()


def _resolve(cache):
    return _default_cache if cache is None else cache


# ---------------------------------------------------------------------------
# table construction

def _product_monomials(gens: list[Composition], n: int) -> list[GeneratorMonomial]:
    """Multisets of at least two generators with total weight n, in
    lexicographic order over the (weight-sorted) generator list."""
    gens = sorted(gens, key=factor_key)
    out: list[GeneratorMonomial] = []
    cur: list[Composition] = []

    def rec(i: int, rem: int) -> None:
        if rem == 0:
            if len(cur) >= 2:
                out.append(tuple(cur))
            return
        for j in range(i, len(gens)):
            wj = sum(gens[j])
            if wj <= rem:
                cur.append(gens[j])
                rec(j, rem - wj)
                cur.pop()

    rec(0, n)
    return out


def _product_value(mono: GeneratorMonomial, table: "RewriteTable") -> LinComb:
    """Coordinates of a product of generator zetas in the weight-n basis."""
    p = LinComb.term(mono[0])
    for f in mono[1:]:
        p = stuffle(p, LinComb.term(f))
    out = LinComb.zero()
    for comp, c in p.items():
        out = out + c * table.coords(comp_to_word(comp))
    return out


def _solve_in_span(cands: list[tuple], target: LinComb,
                   basis_words: tuple[Word, ...]):
    """Express target as a combination of candidate vectors, free candidates
    set to zero; None when target lies outside the span.

    cands: list of (key, LinComb-over-basis-words)."""
    M = len(cands)
    mat = SparseMatrix(M + 1)
    for b in basis_words:
        row = {}
        for j, (_, vec) in enumerate(cands):
            v = vec[b]
            if v:
                row[j] = v
        t = target[b]
        if t:
            row[M] = t
        mat.add_row(row)
    e = rref(mat, list(range(M + 1)))
    if M in e.pivots:
        return None
    sol = {}
    for j, ri in e.pivots.items():
        v = e.rows[ri].get(M, 0)
        if v:
            sol[cands[j][0]] = v
    return LinComb._raw(sol)


def echelonize_degree(n: int, cache=None, prefer: str = "depth") -> RewriteTable:
    """Rewrite table for weight n; lower-weight tables are built on demand."""
    key = _pref(prefer)
    cache = _resolve(cache)
    hit = cache.get(n)
    if hit is not None:
        if hit.preference != prefer:
            raise ValueError(
                f"cache holds {hit.preference!r}-order tables; "
                f"use a separate cache for {prefer!r}")
        return hit
    if n < 2:
        raise ValueError("weight must be at least 2")
    if n == 2:
        table = RewriteTable(2, ("01",), {},
                             {"01": LinComb.term(((2,),))}, ("01",), prefer)
        cache.put(table)
        return table
    for m in range(2, n):
        echelonize_degree(m, cache, prefer)

    mat = knt_system(n)
    words = mat.column_labels
    order = sorted(range(len(words)),
                   key=lambda i: key(words[i]), reverse=True)
    ech = rref(mat, order)
    basis_idx = sorted((i for i in range(len(words)) if i not in ech.pivots),
                       key=lambda i: key(words[i]))
    basis_words = tuple(words[i] for i in basis_idx)
    rules: dict[Word, LinComb] = {}
    for c_idx in ech.pivots:
        expr = solve_for(ech, c_idx)
        rules[words[c_idx]] = LinComb._raw(
            {words[j]: v for j, v in expr.items()})

    table = RewriteTable(n, basis_words, rules, {}, (), prefer)

    gens = [word_to_comp(w) for m in range(2, n)
            for w in cache.get(m).new_generators]
    cands = [(mono, _product_value(mono, table))
             for mono in _product_monomials(gens, n)]
    gen_map: dict[Word, LinComb] = {}
    new_gens: list[Word] = []
    for b in basis_words:
        target = LinComb.term(b)
        sol = _solve_in_span(cands, target, basis_words)
        if sol is None:
            new_gens.append(b)
            gen_map[b] = LinComb.term((word_to_comp(b),))
            cands.append(((word_to_comp(b),), target))
        else:
            gen_map[b] = sol

    table = RewriteTable(n, basis_words, rules, gen_map, tuple(new_gens),
                         prefer)
    cache.put(table)
    return table


def express_in_generators(c: Composition, cache=None,
                          prefer: str = "depth") -> LinComb:
    """zeta(c) as a polynomial in the accumulated generators."""
    if not is_admissible(c):
        raise ValueError(f"index is not admissible: {c!r}")
    cache = _resolve(cache)
    table = echelonize_degree(comp_weight(c), cache, prefer)
    out = LinComb.zero()
    for b, v in table.coords(comp_to_word(c)).items():
        out = out + v * table.generator_map[b]
    return out


# ---------------------------------------------------------------------------
# identities

@dataclass(frozen=True)
class Identity:
    """Both sides are linear combinations of monomials in zeta arguments
    (tuples of admissible compositions; the empty tuple is a constant)."""
    lhs: LinComb
    rhs: LinComb


def identity_weight(ident: Identity):
    """Common weight of all monomials, or None for 0 = 0; raises on mix."""
    weights = {monomial_weight(m)
               for side in (ident.lhs, ident.rhs) for m in side.support()}
    if len(weights) > 1:
        raise ValueError(
            f"identity is not weight-homogeneous: weights {sorted(weights)}")
    return weights.pop() if weights else None


def _normalize_side(side: LinComb, cache, prefer: str) -> LinComb:
    out = LinComb.zero()
    for mono, coeff in side.items():
        gp = LinComb.term(())
        for f in mono:
            gp = gp_mul(gp, express_in_generators(f, cache, prefer))
        out = out + coeff * gp
    return out


def verify_identity(ident: Identity, cache=None, prefer: str = "depth"):
    """(True, zero) when both sides share a normal form, else (False,
    residual) with residual = normal(lhs) - normal(rhs)."""
    identity_weight(ident)
    cache = _resolve(cache)
    residual = _normalize_side(ident.lhs, cache, prefer) - \
        _normalize_side(ident.rhs, cache, prefer)
    return (not residual, residual)


# ---------------------------------------------------------------------------
# polynomial freeness

@dataclass(frozen=True)
class FreenessReport:
    degree: int
    ok: bool
    new_generators: tuple[Word, ...]   # surviving single-Lyndon columns
    product_pivots: tuple              # offending product columns, if any

    @property
    def new_count(self) -> int:
        return len(self.new_generators)


def check_polynomial_freeness(n: int, cache=None,
                              prefer: str = "depth") -> FreenessReport:
    """Echelonize the weight-n rows over Lyndon-monomial variables (products
    substituted through lower-weight generator expressions) scanning single
    columns first; passes when no pivot falls on a product column."""
    if n < 2:
        raise ValueError("weight must be at least 2")
    key = _pref(prefer)
    cache = _resolve(cache)
    singles = [l for l in lyndon_words(n) if in_h2(l)]
    if n == 2:
        return FreenessReport(2, True, tuple(singles), ())

    gp_of_factor: dict[Word, LinComb] = {}

    def factor_poly(l: Word) -> LinComb:
        hit = gp_of_factor.get(l)
        if hit is None:
            hit = express_in_generators(word_to_comp(l), cache, prefer)
            gp_of_factor[l] = hit
        return hit

    mat = knt_system(n)
    words = mat.column_labels
    sub_rows = []
    product_cols: set[GeneratorMonomial] = set()
    for row in mat.rows:
        lp = radford_decompose_poly(
            LinComb._raw({words[c]: v for c, v in row.items()}))
        out: dict = {}

        def bump(key, delta) -> None:
            s = out.get(key, 0) + delta
            if s:
                out[key] = s
            elif key in out:
                del out[key]

        for mono, coeff in lp.items():
            if len(mono) == 1:
                bump(("s", mono[0]), coeff)
            else:
                gp = LinComb.term(())
                for f in mono:
                    gp = gp_mul(gp, factor_poly(f))
                for gmono, gcoeff in gp.items():
                    product_cols.add(gmono)
                    bump(("p", gmono), coeff * gcoeff)
        sub_rows.append(out)

    # singles scanned first, least preferred first within them
    single_cols = sorted(singles, key=key, reverse=True)
    prod_sorted = sorted(product_cols)
    labels = [("s", l) for l in single_cols] + \
        [("p", g) for g in prod_sorted]
    index = {k: i for i, k in enumerate(labels)}
    sys = SparseMatrix(len(labels))
    for row in sub_rows:
        sys.add_row({index[k]: v for k, v in row.items()})
    ech = rref(sys, list(range(len(labels))))

    survivors = [l for l in single_cols if index[("s", l)] not in ech.pivots]
    survivors.sort(key=key)
    bad = tuple(labels[c][1] for c in ech.pivots if labels[c][0] == "p")
    return FreenessReport(n, not bad, tuple(survivors), bad)


# ---------------------------------------------------------------------------
# generator polynomial text form

def format_generator_monomial(m: GeneratorMonomial) -> str:
    return "*".join(f"z({format_comp(f)})" for f in m)


def format_generator_poly(p: LinComb) -> str:
    keys = sorted(p.support(), key=lambda m: (len(m), m))
    pairs = [(format_generator_monomial(m), p[m]) for m in keys]
    return _format_terms(pairs)


def parse_generator_poly(text: str) -> LinComb:
    """Parse `9/2*z(5) - 2*z(2)*z(3)` style sums; bare rationals allowed."""
    i = 0
    n = len(text)

    def skip() -> None:
        nonlocal i
        while i < n and text[i] in " \t":
            i += 1

    def fail(msg: str):
        raise ValueError(f"{msg} at position {i}")

    def parse_uint() -> int:
        nonlocal i
        start = i
        while i < n and text[i].isdigit():
            i += 1
        if i == start:
            fail("expected a number")
        return int(text[start:i])

    def parse_factor() -> Composition:
        nonlocal i
        if text[i] != "z":
            fail("expected z(...)")
        i += 1
        skip()
        if i >= n or text[i] != "(":
            fail("expected '(' after z")
        i += 1
        parts = []
        while True:
            skip()
            parts.append(parse_uint())
            skip()
            if i < n and text[i] == ",":
                i += 1
                continue
            if i < n and text[i] == ")":
                i += 1
                break
            fail("expected ',' or ')'")
        if any(p < 1 for p in parts):
            fail("index parts must be positive")
        return tuple(parts)

    def parse_term():
        nonlocal i
        coeff = Fraction(1)
        explicit = False
        skip()
        if i < n and text[i].isdigit():
            explicit = True
            num = parse_uint()
            skip()
            if i < n and text[i] == "/":
                i += 1
                skip()
                den = parse_uint()
                if den == 0:
                    fail("zero denominator")
                coeff = Fraction(num, den)
            else:
                coeff = Fraction(num)
            skip()
            if i < n and text[i] == "*":
                i += 1
                skip()
                if i >= n or text[i] != "z":
                    fail("expected z(...) after '*'")
        factors = []
        while i < n and text[i] == "z":
            factors.append(parse_factor())
            skip()
            if i < n and text[i] == "*":
                i += 1
                skip()
                if i >= n or text[i] != "z":
                    fail("expected z(...) after '*'")
        if not factors and not explicit:
            fail("expected a term")
        return coeff, canonical_monomial(factors)

    total = LinComb.zero()
    skip()
    sign = 1
    if i < n and text[i] in "+-":
        sign = -1 if text[i] == "-" else 1
        i += 1
    while True:
        coeff, mono = parse_term()
        total = total + LinComb.term(mono, sign * coeff)
        skip()
        if i >= n:
            break
        if text[i] == "+":
            sign = 1
        elif text[i] == "-":
            sign = -1
        else:
            fail("expected '+' or '-'")
        i += 1
        skip()
    return total

"""Relation regimes, canonical normal forms, and ideal membership.

Seven regimes.  The Cartier-Foata-type ones (commutative, cf, q-cf,
qij-cf) admit a linear-time canonical form: letters in distinct rows
commute up to an explicit scalar, so a word is rewritten to the stable
row-sorted representative and the accumulated factor is the ratio of
word weights (the commutative regime additionally sorts columns inside
equal rows).  The right-quantum-type regimes (rq, q-rq, qij-rq) have no
rewriting normal form; membership in the quadratic ideal is decided
degree by degree and grading block by grading block with exact linear
algebra, either after random rational specialization of the parameters
or fraction-free over the parameters themselves.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .coeff import LP_ONE, LaurentPoly, mono_div_exact
from .freealg import Element, Word, cols_of, rows_of, word_str
from .weights import WeightScheme, weight

CF_REGIMES = ("commutative", "cf", "q-cf", "qij-cf")
RQ_REGIMES = ("rq", "q-rq", "qij-rq")
REGIMES = CF_REGIMES + RQ_REGIMES

_SCHEME_OF = {
    "commutative": "unit", "cf": "unit", "rq": "unit",
    "q-cf": "q", "q-rq": "q",
    "qij-cf": "qij", "qij-rq": "qij",
}


@dataclass(frozen=True)
class RelationSystem:
    """A regime instance: dimension, weight scheme, optional column
    restriction (relators touching other columns are dropped)."""

    regime: str
    m: int
    scheme: WeightScheme
    restrict_cols: frozenset | None = None

    def __post_init__(self):
        if self.regime not in REGIMES:
            raise ValueError("unknown regime %r" % self.regime)

    @property
    def is_cf_type(self) -> bool:
        return self.regime in CF_REGIMES and self.restrict_cols is None

    def letters(self):
        return [(i, j) for i in range(1, self.m + 1) for j in range(1, self.m + 1)]


def make_system(regime: str, m: int, block_n=None, restrict_cols=None) -> RelationSystem:
    scheme = WeightScheme(_SCHEME_OF[regime], m, block_n=block_n)
    rc = frozenset(restrict_cols) if restrict_cols is not None else None
    return RelationSystem(regime, m, scheme, rc)


@dataclass(frozen=True)
class Relator:
    """A degree-2 generator of the ideal, with its grading labels."""

    element: Element
    rows: tuple
    cols: tuple

    @staticmethod
    def build(terms: dict) -> "Relator":
        elem = Element(terms)
        gradings = {(tuple(sorted(rows_of(w))), tuple(sorted(cols_of(w)))) for w in elem.terms}
        if len(gradings) != 1:
            raise ValueError("relator mixes grading blocks: %s" % elem)
        (rows, cols), = gradings
        if any(len(w) != 2 for w in elem.terms):
            raise ValueError("relator is not homogeneous of degree 2")
        return Relator(elem, rows, cols)


def _qvar(sys: RelationSystem, exp: int = 1) -> LaurentPoly:
    from .coeff import Q
    return LaurentPoly.var(Q, exp)


def relators(sys: RelationSystem) -> list:
    """The complete generating set of the regime's quadratic ideal."""
    m, out = sys.m, []
    one = LP_ONE

    def rel(terms):
        out.append(Relator.build({w: c for w, c in terms.items() if c}))

    rng = range(1, m + 1)
    if sys.regime == "commutative":
        letters = sys.letters()
        for x, y in itertools.combinations(letters, 2):
            rel({(x, y): one, (y, x): -one})
    elif sys.regime == "cf":
        for i, j in itertools.combinations(rng, 2):
            for k in rng:
                for l in rng:
                    x, y = (i, k), (j, l)
                    rel({(x, y): one, (y, x): -one})
    elif sys.regime == "rq":
        for i, j in itertools.combinations(rng, 2):
            for k in rng:
                rel({((j, k), (i, k)): one, ((i, k), (j, k)): -one})
            for k, l in itertools.combinations(rng, 2):
                rel({((i, k), (j, l)): one, ((j, k), (i, l)): -one,
                     ((j, l), (i, k)): -one, ((i, l), (j, k)): one})
    elif sys.regime == "q-cf":
        q, q2 = _qvar(sys), _qvar(sys, 2)
        for i, j in itertools.combinations(rng, 2):
            for k in rng:
                for l in rng:
                    if k < l:
                        rel({((j, l), (i, k)): one, ((i, k), (j, l)): -one})
                    elif k > l:
                        rel({((j, l), (i, k)): one, ((i, k), (j, l)): -q2})
                    else:
                        rel({((j, k), (i, k)): one, ((i, k), (j, k)): -q})
    elif sys.regime == "q-rq":
        q, qi = _qvar(sys), _qvar(sys, -1)
        for i, j in itertools.combinations(rng, 2):
            for k in rng:
                rel({((j, k), (i, k)): one, ((i, k), (j, k)): -q})
            for k, l in itertools.combinations(rng, 2):
                rel({((i, k), (j, l)): one, ((j, k), (i, l)): -qi,
                     ((j, l), (i, k)): -one, ((i, l), (j, k)): q})
    elif sys.regime == "qij-cf":
        # condensed form: q_kl a_jl a_ik = q_ij a_ik a_jl for all i != j
        for i in rng:
            for j in rng:
                if i == j:
                    continue
                qij = sys.scheme.q_monomial(i, j)
                for k in rng:
                    for l in rng:
                        qkl = sys.scheme.q_monomial(k, l)
                        rel({((j, l), (i, k)): qkl, ((i, k), (j, l)): -qij})
    elif sys.regime == "qij-rq":
        for i in rng:
            for j in rng:
                if i == j:
                    continue
                qij_inv = sys.scheme.q_monomial(i, j).inverse()
                for k in rng:
                    for l in rng:
                        qkl = sys.scheme.q_monomial(k, l)
                        rel({((i, k), (j, l)): one,
                             ((j, k), (i, l)): -qij_inv,
                             ((j, l), (i, k)): -(qkl * qij_inv),
                             ((i, l), (j, k)): qkl})
    if sys.restrict_cols is not None:
        allowed = sys.restrict_cols
        out = [r for r in out
               if all(l[1] in allowed for w in r.element.terms for l in w)]
    return out


def swap_factor(sys: RelationSystem, x, y) -> LaurentPoly:
    """Scalar f with (x y) = f * (y x) modulo the ideal, for one legal
    adjacent exchange.  Legal means distinct rows, except in the
    commutative regime where any two letters may be exchanged."""
    if sys.regime not in CF_REGIMES:
        raise ValueError("no swap rewriting in regime %r" % sys.regime)
    (r, s), (r2, s2) = x, y
    if sys.regime == "commutative":
        return LP_ONE
    if r == r2:
        raise ValueError("letters in the same row do not commute in %r" % sys.regime)
    if sys.regime == "cf":
        return LP_ONE
    if sys.regime == "q-cf":
        if r < r2:
            if s < s2:
                return LP_ONE
            return _qvar(sys, -2) if s > s2 else _qvar(sys, -1)
        return swap_factor(sys, y, x).inverse()
    # qij-cf: from q_kl a_jl a_ik = q_ij a_ik a_jl, exchanging a_rs a_r's'
    # gives the factor q_{s s'} q_{r' r}.
    return sys.scheme.q_monomial(s, s2) * sys.scheme.q_monomial(r2, r)


def reduce_by_swaps(sys: RelationSystem, word, positions):
    """Apply adjacent exchanges at the given positions in order,
    returning the final word and the accumulated factor."""
    w = list(word)
    f = LP_ONE
    for p in positions:
        f = f * swap_factor(sys, w[p], w[p + 1])
        w[p], w[p + 1] = w[p + 1], w[p]
    return tuple(w), f


def canonical_word(word: Word, sys: RelationSystem):
    """The canonical representative of a word and the scalar relating
    them: word = factor * canonical modulo the ideal.

    Canonical = letters stably sorted by row (by (row, col) in the
    commutative regime).  The factor is the weight ratio
    w(canonical) / w(word), which each legal exchange preserves.
    """
    if sys.regime == "commutative":
        can = tuple(sorted(word))
    else:
        can = tuple(sorted(word, key=lambda l: l[0]))
    if can == word:
        return can, LP_ONE
    if sys.scheme.variant == "unit":
        return can, LP_ONE
    w_old = weight(rows_of(word), cols_of(word), sys.scheme)
    w_new = weight(rows_of(can), cols_of(can), sys.scheme)
    return can, w_new * w_old.inverse()


def normal_form(x: Element, sys: RelationSystem) -> Element:
    """Canonical form modulo a Cartier-Foata-type ideal.

    An element is congruent to 0 exactly when its normal form is 0.
    """
    if not sys.is_cf_type:
        raise ValueError("no normal form for regime %r" % sys.regime)

    def fn(w, c):
        can, f = canonical_word(w, sys)
        return can, (c if f.is_one() else c * f)

    return x.map_words(fn)


# ---------------------------------------------------------------------------
# Ideal membership
# ---------------------------------------------------------------------------

@dataclass
class BlockVerdict:
    degree: int
    rows: tuple
    cols: tuple
    verdict: str                     # "in-ideal" | "probably-in-ideal" | "not-in-ideal"
    witness: str | None = None
    dim: int = 0
    n_multiples: int = 0


@dataclass
class MembershipReport:
    method: str
    seed: int | None
    trials: int | None
    blocks: list = field(default_factory=list)

    @property
    def in_ideal(self) -> bool:
        return all(b.verdict != "not-in-ideal" for b in self.blocks)

    def degree_verdicts(self):
        """Aggregate per-degree: worst verdict and a witness if any."""
        rank = {"not-in-ideal": 0, "probably-in-ideal": 1, "in-ideal": 2}
        per = {}
        for b in self.blocks:
            cur = per.get(b.degree)
            if cur is None or rank[b.verdict] < rank[cur[0]]:
                per[b.degree] = (b.verdict, b.witness)
        counts = {}
        for b in self.blocks:
            counts[b.degree] = counts.get(b.degree, 0) + 1
        return [(d, counts[d], per[d][0], per[d][1]) for d in sorted(per)]


def _grading_blocks(x: Element):
    blocks = {}
    for w, c in x.terms.items():
        key = (len(w), tuple(sorted(rows_of(w))), tuple(sorted(cols_of(w))))
        blocks.setdefault(key, {})[w] = c
    return blocks


def _multiset_perms(items):
    """Distinct permutations of a sorted tuple."""
    items = tuple(items)
    if not items:
        yield ()
        return
    seen = set()
    for i, v in enumerate(items):
        if v in seen:
            continue
        seen.add(v)
        rest = items[:i] + items[i + 1:]
        for tail in _multiset_perms(rest):
            yield (v,) + tail


def _block_words(rows, cols):
    """All words with the given row and column multisets, sorted."""
    out = []
    for ra in _multiset_perms(rows):
        for ca in _multiset_perms(cols):
            out.append(tuple(zip(ra, ca)))
    out.sort()
    return out


def _msub(whole, part):
    """Multiset difference, or None if part is not contained."""
    rem = list(whole)
    for v in part:
        try:
            rem.remove(v)
        except ValueError:
            return None
    return tuple(rem)


def _block_multiples(rels, degree, rows, cols):
    """All two-sided relator multiples u*r*v landing in the block."""
    s = degree - 2
    out = []
    for r in rels:
        rem_rows = _msub(rows, r.rows)
        if rem_rows is None:
            continue
        rem_cols = _msub(cols, r.cols)
        if rem_cols is None:
            continue
        for ra in _multiset_perms(tuple(sorted(rem_rows))):
            for ca in _multiset_perms(tuple(sorted(rem_cols))):
                ctx = tuple(zip(ra, ca))
                for cut in range(s + 1):
                    u, v = ctx[:cut], ctx[cut:]
                    vec = {}
                    for w, c in r.element.terms.items():
                        vec[u + w + v] = c
                    out.append(vec)
    return out


def _random_assignment(params, rng):
    """Distinct nonzero rationals, numerators/denominators in [1, 10^9]."""
    values = {}
    used = set()
    for p in sorted(params):
        while True:
            v = Fraction(rng.randint(1, 10 ** 9), rng.randint(1, 10 ** 9))
            if v not in used:
                used.add(v)
                values[p] = v
                break
    return values


def _reduce_span_q(vectors, target):
    """Exact Gaussian reduction over Q; returns the residual of target."""
    pivots = {}
    for vec in vectors:
        row = dict(vec)
        while row:
            c = min(row)
            if c in pivots:
                prow = pivots[c]
                f = row[c]
                for cc, vv in prow.items():
                    nv = row.get(cc, 0) - f * vv
                    if nv:
                        row[cc] = nv
                    else:
                        row.pop(cc, None)
            else:
                f = row[c]
                pivots[c] = {cc: vv / f for cc, vv in row.items()}
                break
    row = dict(target)
    while row:
        c = min(row)
        if c not in pivots:
            break
        f = row[c]
        for cc, vv in pivots[c].items():
            nv = row.get(cc, 0) - f * vv
            if nv:
                row[cc] = nv
            else:
                row.pop(cc, None)
    return row


def _strip_content(row):
    """Divide a polynomial row by its monomial and rational content."""
    mono = None
    nums, dens = 0, 1
    for poly in row.values():
        mc = poly.mono_content()
        mono = mc if mono is None else _mono_min(mono, mc)
        for c in poly.terms.values():
            nums = _gcd(nums, c.numerator)
            dens = _lcm(dens, c.denominator)
    if mono is None:
        return row
    scale = Fraction(dens, nums if nums else 1)
    inv = LaurentPoly({tuple((p, -e) for p, e in mono): scale})
    return {c: poly * inv for c, poly in row.items()}


def _mono_min(a, b):
    da, db = dict(a), dict(b)
    keys = set(da) | set(db)
    return tuple(sorted((p, e) for p in keys
                        for e in [min(da.get(p, 0), db.get(p, 0))] if e))


def _gcd(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def _lcm(a, b):
    return a * b // _gcd(a, b) if a and b else a or b


def _bareiss_in_span(vectors, target):
    """Fraction-free membership test over the Laurent-polynomial ring.

    Sparse one-step Bareiss: each row remembers the pivot of its last
    update; the update (row*piv - row[col]*pivrow) divides exactly by
    that remembered pivot (Sylvester's identity for matrix minors --
    the very identity this package verifies).  Row scaling by monomials
    and rationals is by units/constants and preserves exactness.
    """
    rows = [[_strip_content(dict(v)), LP_ONE] for v in vectors if v]
    tgt = [_strip_content(dict(target)), LP_ONE]
    active = list(range(len(rows)))
    cols = sorted({c for v in vectors for c in v} | set(target))
    for col in cols:
        if not tgt[0]:
            return True
        cand = [i for i in active if col in rows[i][0]]
        if not cand:
            continue
        p = min(cand, key=lambda i: sum(len(e.terms) for e in rows[i][0].values()))
        active.remove(p)
        prow, _ = rows[p]
        piv = prow[col]
        for i in cand:
            if i == p:
                continue
            _eliminate(rows[i], prow, piv, col)
        if col in tgt[0]:
            _eliminate(tgt, prow, piv, col)
    return not tgt[0]


def _eliminate(entry, prow, piv, col):
    row, last = entry
    f = row.pop(col)
    new = {}
    for c, v in row.items():
        num = v * piv - f * prow.get(c, _LP_NULL)
        if num.is_zero():
            continue
        new[c] = mono_div_exact(num, last)
    for c, v in prow.items():
        if c == col or c in row:
            continue
        num = -(f * v)
        if not num.is_zero():
            new[c] = mono_div_exact(num, last)
    entry[0] = _strip_content(new)
    entry[1] = piv


_LP_NULL = LaurentPoly.zero()


def _block_witness(residual) -> str:
    w = min(residual)
    return "%s = %s" % (word_str(w), residual[w])


def is_in_ideal(x: Element, sys: RelationSystem, method: str = "specialize",
                seed: int = 0, trials: int = 3) -> MembershipReport:
    """Degree-graded ideal membership.

    ``specialize``: evaluate the parameters at seeded random nonzero
    rationals and solve exactly over Q, repeated over ``trials`` seeds
    (Schwartz-Zippel style).  ``exact``: fraction-free elimination over
    the parameters themselves.  Components of degree < 2 are in the
    ideal only if they vanish.
    """
    if method not in ("specialize", "exact"):
        raise ValueError("unknown membership method %r" % method)
    report = MembershipReport(method=method, seed=seed,
                              trials=trials if method == "specialize" else None)
    rels = relators(sys)
    has_params = bool(sys.scheme.parameters())
    for (degree, rows, cols), terms in sorted(_grading_blocks(x).items()):
        if degree < 2:
            report.blocks.append(BlockVerdict(
                degree, rows, cols, "not-in-ideal",
                witness=_block_witness(terms)))
            continue
        mults = _block_multiples(rels, degree, rows, cols)
        dim = None
        if method == "exact":
            ok = _bareiss_in_span(mults, terms)
            verdict = "in-ideal" if ok else "not-in-ideal"
            witness = None if ok else _block_witness(terms)
        else:
            params = set()
            for vec in mults:
                for c in vec.values():
                    params |= c.params()
            for c in terms.values():
                params |= c.params()
            verdict, witness = "in-ideal" if not has_params else "probably-in-ideal", None
            for trial in range(trials if params else 1):
                rng = random.Random((seed, trial))
                assignment = _random_assignment(params, rng)
                specs = []
                for vec in mults:
                    sv = {w: c.specialize(assignment) for w, c in vec.items()}
                    specs.append({w: c for w, c in sv.items() if c})
                tv = {w: c.specialize(assignment) for w, c in terms.items()}
                tv = {w: c for w, c in tv.items() if c}
                residual = _reduce_span_q(specs, tv)
                if residual:
                    verdict = "not-in-ideal"
                    witness = "%s = %s (trial %d)" % (
                        word_str(min(residual)), residual[min(residual)], trial)
                    break
        report.blocks.append(BlockVerdict(
            degree, rows, cols, verdict, witness,
            dim=dim or 0, n_multiples=len(mults)))
    return report

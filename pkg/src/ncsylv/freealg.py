"""Words in the matrix letters, sparse algebra elements, and matrices.

A letter is a pair ``(row, col)`` of 1-based matrix indices, read as the
generator a_{row,col} of the free algebra, or equivalently as the
lattice step from height ``row`` to height ``col``.  A word is a tuple
of letters; the empty tuple is the unit word.  The same machinery hosts
the outer alphabet of c-letters (indices n+1..m) used by the symbolic
quotient matrices: an outer expression is just an element whose letters
are interpreted through an embedding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .coeff import LP_ONE, LaurentPoly

Letter = tuple
Word = tuple

EMPTY_WORD: Word = ()


def letter(i: int, j: int) -> Letter:
    return (i, j)


def rows_of(word: Word):
    """The row word (lambda) of a word."""
    return tuple(l[0] for l in word)


def cols_of(word: Word):
    """The column word (mu) of a word."""
    return tuple(l[1] for l in word)


def inversions(nu):
    """Inversion set {(i, j): i < j, nu_i > nu_j} (0-based) and its size."""
    pairs = set()
    n = len(nu)
    for i in range(n):
        vi = nu[i]
        for j in range(i + 1, n):
            if vi > nu[j]:
                pairs.add((i, j))
    return pairs, len(pairs)


def word_str(word: Word) -> str:
    if not word:
        return "1"
    return "".join("a[%d,%d]" % l for l in word)


def _join_trunc(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class Element:
    """Finite sparse map word -> LaurentPoly, with a truncation order.

    ``trunc`` is the maximal stored word length (None = unbounded).
    Words longer than the truncation are silently dropped by every
    operation, which realises degreewise verification.  Elements are
    immutable; all operations return fresh instances.
    """

    __slots__ = ("terms", "trunc")

    def __init__(self, terms=None, trunc=None):
        if terms is None:
            terms = {}
        self.trunc = trunc
        if trunc is None:
            self.terms = {w: c for w, c in terms.items() if c}
        else:
            self.terms = {w: c for w, c in terms.items() if c and len(w) <= trunc}

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, trunc=None):
        return cls({}, trunc)

    @classmethod
    def one(cls, trunc=None):
        return cls({EMPTY_WORD: LP_ONE}, trunc)

    @classmethod
    def letter(cls, i, j, trunc=None):
        return cls({((i, j),): LP_ONE}, trunc)

    @classmethod
    def from_word(cls, word, coeff=LP_ONE, trunc=None):
        if isinstance(coeff, (int, Fraction)):
            coeff = LaurentPoly.const(coeff)
        return cls({tuple(word): coeff}, trunc)

    # -- inspection ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, word) -> LaurentPoly:
        return self.terms.get(tuple(word), LaurentPoly.zero())

    def constant_term(self) -> LaurentPoly:
        return self.terms.get(EMPTY_WORD, LaurentPoly.zero())

    def max_degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def degrees(self):
        return sorted({len(w) for w in self.terms})

    def degree_component(self, d: int) -> "Element":
        return Element({w: c for w, c in self.terms.items() if len(w) == d}, self.trunc)

    def truncate(self, trunc) -> "Element":
        return Element(self.terms, _join_trunc(self.trunc, trunc))

    # -- ring operations ---------------------------------------------

    def __add__(self, other: "Element") -> "Element":
        trunc = _join_trunc(self.trunc, other.trunc)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            c2 = terms.get(w)
            c2 = c if c2 is None else c2 + c
            if c2:
                terms[w] = c2
            else:
                terms.pop(w, None)
        return Element(terms, trunc)

    def __neg__(self) -> "Element":
        out = Element.__new__(Element)
        out.trunc = self.trunc
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __mul__(self, other: "Element") -> "Element":
        trunc = _join_trunc(self.trunc, other.trunc)
        terms = {}
        for w1, c1 in self.terms.items():
            n1 = len(w1)
            for w2, c2 in other.terms.items():
                if trunc is not None and n1 + len(w2) > trunc:
                    continue
                w = w1 + w2
                c = c1 * c2
                c0 = terms.get(w)
                c = c if c0 is None else c0 + c
                if c:
                    terms[w] = c
                else:
                    terms.pop(w, None)
        out = Element.__new__(Element)
        out.trunc = trunc
        out.terms = terms
        return out

    def scale(self, coeff) -> "Element":
        """Multiply every coefficient by a scalar (LaurentPoly or rational)."""
        if isinstance(coeff, (int, Fraction)):
            coeff = LaurentPoly.const(coeff)
        if coeff.is_zero():
            return Element.zero(self.trunc)
        out = Element.__new__(Element)
        out.trunc = self.trunc
        out.terms = {w: c * coeff for w, c in self.terms.items()}
        return out

    def __pow__(self, n: int) -> "Element":
        out = Element.one(self.trunc)
        for _ in range(n):
            out = out * self
        return out

    def map_words(self, fn) -> "Element":
        """Rebuild with ``fn(word, coeff) -> (word, coeff)`` applied termwise."""
        terms = {}
        for w, c in self.terms.items():
            w2, c2 = fn(w, c)
            c0 = terms.get(w2)
            c2 = c2 if c0 is None else c0 + c2
            if c2:
                terms[w2] = c2
            else:
                terms.pop(w2, None)
        return Element(terms, self.trunc)

    # -- series --------------------------------------------------------

    def geometric_inverse(self) -> "Element":
        """Two-sided inverse of an element with constant term 1.

        For x = 1 - S the inverse is the truncated geometric series
        1 + S + S^2 + ...; requires a finite truncation order.
        """
        if self.trunc is None:
            raise ValueError("geometric inverse needs a finite truncation order")
        if not self.constant_term().is_one():
            raise ValueError("geometric inverse needs constant term 1")
        n = self.trunc
        # higher[d] = words of x of length exactly d >= 1
        higher = [dict() for _ in range(n + 1)]
        for w, c in self.terms.items():
            if w:
                higher[len(w)][w] = c
        inv = [dict() for _ in range(n + 1)]
        inv[0][EMPTY_WORD] = LP_ONE
        for d in range(1, n + 1):
            acc = {}
            for e in range(1, d + 1):
                if not higher[e]:
                    continue
                for w1, c1 in higher[e].items():
                    for w2, c2 in inv[d - e].items():
                        w = w1 + w2
                        c = c1 * c2
                        c0 = acc.get(w)
                        c = c if c0 is None else c0 + c
                        if c:
                            acc[w] = c
                        else:
                            acc.pop(w, None)
            # x*y = 1 forces y_d = -( (x - 1) * y )_d
            inv[d] = {w: -c for w, c in acc.items()}
        terms = {}
        for block in inv:
            terms.update(block)
        return Element(terms, n)

    # -- comparison / display ------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((w, hash(c)) for w, c in self.terms.items()))

    def __repr__(self):
        return "Element(%s)" % str(self)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            cs = str(c)
            if not w:
                parts.append(cs)
            elif c.is_one():
                parts.append(word_str(w))
            elif cs.startswith("-") and c.is_monomial():
                parts.append("-" + (str(-c) + "*" if not (-c).is_one() else "") + word_str(w))
            else:
                parts.append("(%s)*%s" % (cs, word_str(w)))
        out = parts[0]
        for p in parts[1:]:
            out += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
        return out


class NCMatrix:
    """Rectangular matrix of Elements sharing one truncation order."""

    __slots__ = ("rows", "trunc")

    def __init__(self, rows, trunc=None):
        rows = [list(r) for r in rows]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged matrix")
        self.rows = rows
        self.trunc = trunc

    @classmethod
    def identity(cls, size, trunc=None):
        one, zero = Element.one(trunc), Element.zero(trunc)
        return cls([[one if i == j else zero for j in range(size)] for i in range(size)], trunc)

    @classmethod
    def generic(cls, m, trunc=None, row_idx=None, col_idx=None):
        """Matrix of letters a_{ij}; index lists default to 1..m."""
        rid = list(row_idx) if row_idx is not None else list(range(1, m + 1))
        cid = list(col_idx) if col_idx is not None else list(range(1, m + 1))
        return cls([[Element.letter(i, j, trunc) for j in cid] for i in rid], trunc)

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    def is_square(self):
        return self.nrows == self.ncols

    def entry(self, r: int, c: int) -> Element:
        """1-based positional access."""
        return self.rows[r - 1][c - 1]

    def __add__(self, other):
        t = _join_trunc(self.trunc, other.trunc)
        return NCMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)], t)

    def __sub__(self, other):
        t = _join_trunc(self.trunc, other.trunc)
        return NCMatrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)], t)

    def __neg__(self):
        return NCMatrix([[-a for a in r] for r in self.rows], self.trunc)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        t = _join_trunc(self.trunc, other.trunc)
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = Element.zero(t)
                for k in range(self.ncols):
                    a = self.rows[i][k]
                    if a.is_zero():
                        continue
                    b = other.rows[k][j]
                    if b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return NCMatrix(out, t)

    def map_entries(self, fn):
        """``fn(i, j, entry)`` with 1-based positions."""
        return NCMatrix(
            [[fn(i + 1, j + 1, e) for j, e in enumerate(row)] for i, row in enumerate(self.rows)],
            self.trunc,
        )

    def submatrix(self, row_pos, col_pos):
        """Submatrix by 1-based position lists."""
        return NCMatrix([[self.rows[i - 1][j - 1] for j in col_pos] for i in row_pos], self.trunc)

    def delete_row_col(self, r: int, c: int):
        rp = [i for i in range(1, self.nrows + 1) if i != r]
        cp = [j for j in range(1, self.ncols + 1) if j != c]
        return self.submatrix(rp, cp)


def neumann_inverse(a: NCMatrix) -> NCMatrix:
    """(I - A)^{-1} = I + A + A^2 + ... truncated at the matrix order.

    Entry (i, j) is the sum of all lattice paths from i to j of length
    at most the truncation, with inherited entry coefficients.
    """
    if not a.is_square():
        raise ValueError("Neumann inverse needs a square matrix")
    if a.trunc is None:
        raise ValueError("Neumann inverse needs a finite truncation order")
    ident = NCMatrix.identity(a.nrows, a.trunc)
    out = ident
    for _ in range(a.trunc):
        out = ident + (a @ out)
    return out


def substitute(x: Element, embedding, trunc=None) -> Element:
    """Replace each outer letter by its embedded Element, word by word.

    The outer coefficient of a word multiplies the product of the
    embedded images.  Every letter occurring in x must be embedded.
    """
    out = Element.zero(trunc)
    for w, c in x.terms.items():
        prod = Element.one(trunc)
        for l in w:
            if l not in embedding:
                raise ValueError("letter a[%d,%d] has no embedding" % l)
            prod = prod * embedding[l]
            if prod.is_zero():
                break
        out = out + prod.scale(c)
    return out


@dataclass
class SymbolicMatrix:
    """Square matrix over the outer alphabet c_{i'j'}, i', j' in lo..hi,
    together with the embedding of each outer letter into the algebra."""

    lo: int
    hi: int
    entries: NCMatrix
    embedding: dict = field(default_factory=dict)

    def __post_init__(self):
        for i in range(self.lo, self.hi + 1):
            for j in range(self.lo, self.hi + 1):
                if (i, j) not in self.embedding:
                    raise ValueError("outer letter c[%d,%d] not embedded" % (i, j))

    @property
    def size(self):
        return self.hi - self.lo + 1

    def indices(self):
        return range(self.lo, self.hi + 1)

    def embed(self, x: Element, trunc=None) -> Element:
        return substitute(x, self.embedding, trunc)

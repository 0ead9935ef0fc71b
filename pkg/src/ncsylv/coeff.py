"""Exact scalar arithmetic.

Rationals are ``fractions.Fraction`` throughout: arbitrary precision,
already reduced, positive denominator.

A deformation *parameter* is a key ``(i, j)``.  The reserved key ``Q =
(0, 0)`` is the single parameter q; a key ``(i, j)`` with ``1 <= i < j``
is the multiparameter q_ij.  The reciprocal pairing q_ji = q_ij^-1 is
never stored as a key of its own; it is ``(i, j)`` with a negated
exponent, and q_ii is the scalar 1.  A monomial is a sorted tuple of
``(param, exponent)`` pairs with nonzero exponents, so the empty tuple
is the monomial 1.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

Q = (0, 0)

_ZERO = Fraction(0)
_ONE = Fraction(1)


def mono_mul(a, b):
    """Product of two monomials (exponent vectors add)."""
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for p, e in b:
        e2 = exps.get(p, 0) + e
        if e2:
            exps[p] = e2
        else:
            del exps[p]
    return tuple(sorted(exps.items()))


def mono_inv(a):
    return tuple((p, -e) for p, e in a)


class LaurentPoly:
    """Sparse exact Laurent polynomial over the parameters.

    ``terms`` maps monomials to nonzero Fractions.  Instances are
    immutable after construction and safe to share.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        self.terms = {m: c for m, c in terms.items() if c}

    # -- constructors ------------------------------------------------

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        c = Fraction(c)
        return cls({(): c}) if c else cls({})

    @classmethod
    def var(cls, param, exp: int = 1) -> "LaurentPoly":
        if exp == 0:
            return cls({(): _ONE})
        return cls({((param, exp),): _ONE})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls({})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({(): _ONE})

    # -- predicates --------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(): _ONE}

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant(self) -> Fraction:
        """The coefficient of the monomial 1."""
        return self.terms.get((), _ZERO)

    def params(self):
        """Set of parameters occurring with nonzero exponent."""
        out = set()
        for m in self.terms:
            for p, _ in m:
                out.add(p)
        return out

    # -- ring operations ---------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self.terms:
            return other
        if not other.terms:
            return self
        terms = dict(self.terms)
        for m, c in other.terms.items():
            c2 = terms.get(m, _ZERO) + c
            if c2:
                terms[m] = c2
            else:
                del terms[m]
        out = LaurentPoly.__new__(LaurentPoly)
        out.terms = terms
        return out

    def __neg__(self) -> "LaurentPoly":
        out = LaurentPoly.__new__(LaurentPoly)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        a, b = self.terms, other.terms
        if not a or not b:
            return LaurentPoly({})
        if len(a) == 1 and len(b) == 1:
            (ma, ca), = a.items()
            (mb, cb), = b.items()
            out = LaurentPoly.__new__(LaurentPoly)
            out.terms = {mono_mul(ma, mb): ca * cb}
            return out
        terms = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = mono_mul(ma, mb)
                c = terms.get(m, _ZERO) + ca * cb
                if c:
                    terms[m] = c
                else:
                    del terms[m]
        out = LaurentPoly.__new__(LaurentPoly)
        out.terms = terms
        return out

    def scale(self, c) -> "LaurentPoly":
        c = Fraction(c)
        if not c:
            return LaurentPoly({})
        out = LaurentPoly.__new__(LaurentPoly)
        out.terms = {m: v * c for m, v in self.terms.items()}
        return out

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            return self.inverse() ** (-n)
        out = LaurentPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def inverse(self) -> "LaurentPoly":
        """Inverse of a single monomial; anything else is a misuse."""
        if len(self.terms) != 1:
            raise ValueError("only monomials are invertible, got %s" % self)
        (m, c), = self.terms.items()
        out = LaurentPoly.__new__(LaurentPoly)
        out.terms = {mono_inv(m): 1 / c}
        return out

    # -- evaluation / substitution -------------------------------------

    def specialize(self, assignment) -> Fraction:
        """Exact evaluation at ``assignment: param -> Fraction``.

        Every parameter occurring in the polynomial must be assigned a
        *nonzero* rational (the deformation scalars are nonzero by
        hypothesis).
        """
        total = _ZERO
        for m, c in self.terms.items():
            v = c
            for p, e in m:
                if p not in assignment:
                    raise ValueError("no value assigned to parameter %r" % (p,))
                x = Fraction(assignment[p])
                if x == 0:
                    raise ValueError("parameter %r assigned zero" % (p,))
                v *= x ** e
            total += v
        return total

    def subst(self, mapping) -> "LaurentPoly":
        """Replace parameters by Laurent monomials; unmapped ones stay."""
        out = LaurentPoly.zero()
        for m, c in self.terms.items():
            term = LaurentPoly.const(c)
            for p, e in m:
                rep = mapping.get(p)
                term = term * (rep ** e if rep is not None else LaurentPoly.var(p, e))
            out = out + term
        return out

    # -- content (used by the fraction-free solver) --------------------

    def mono_content(self):
        """Componentwise-min monomial dividing every term (1 for zero)."""
        if not self.terms:
            return ()
        mins = None
        for m in self.terms:
            d = dict(m)
            if mins is None:
                mins = d
                continue
            keys = set(mins) | set(d)
            mins = {p: min(mins.get(p, 0), d.get(p, 0)) for p in keys}
        return tuple(sorted((p, e) for p, e in mins.items() if e))

    # -- comparison / display ------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == LaurentPoly.const(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return "LaurentPoly(%s)" % (str(self),)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            factors = []
            if c != 1 or not m:
                factors.append(str(c))
            for p, e in m:
                name = "q" if p == Q else "q[%d,%d]" % p
                factors.append(name if e == 1 else "%s^%d" % (name, e))
            parts.append("*".join(factors))
        out = parts[0]
        for p in parts[1:]:
            out += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
        return out


LP_ZERO = LaurentPoly.zero()
LP_ONE = LaurentPoly.one()


def mono_div_exact(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Exact division p/d of Laurent polynomials.

    Only called in contexts where the division is known to be exact
    (Bareiss minors); raises ValueError otherwise.  Fast path when d is
    a monomial, multivariate long division in lex order in general.
    """
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if d.is_monomial():
        return p * d.inverse()
    if p.is_zero():
        return p

    params = sorted(p.params() | d.params())

    def key(m):
        dd = dict(m)
        return tuple(dd.get(par, 0) for par in params)

    lead_d = max(d.terms, key=key)
    cd = d.terms[lead_d]
    rem = dict(p.terms)
    quot = {}
    guard = (len(p.terms) + 1) * (len(d.terms) + 1) + 16
    while rem:
        guard -= 1
        if guard < 0:
            raise ValueError("non-exact polynomial division")
        lead_r = max(rem, key=key)
        qm = mono_mul(lead_r, mono_inv(lead_d))
        qc = rem[lead_r] / cd
        quot[qm] = quot.get(qm, _ZERO) + qc
        for m, c in d.terms.items():
            mm = mono_mul(qm, m)
            c2 = rem.get(mm, _ZERO) - qc * c
            if c2:
                rem[mm] = c2
            else:
                rem.pop(mm, None)
    return LaurentPoly(quot)


class BetaPoly:
    """Dense polynomial in the formal exponent beta, rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c):
        return cls([Fraction(c)])

    @classmethod
    def beta(cls):
        return cls([0, 1])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [_ZERO] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return BetaPoly(a)

    def __neg__(self):
        return BetaPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BetaPoly([c * other for c in self.coeffs])
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return BetaPoly(out)

    __rmul__ = __mul__

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        total = _ZERO
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def __eq__(self, other):
        return isinstance(other, BetaPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "BetaPoly(%r)" % (list(self.coeffs),)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                term = str(abs(c))
            else:
                b = "b" if k == 1 else "b^%d" % k
                term = b if abs(c) == 1 else "%s*%s" % (abs(c), b)
            parts.append(("-" if c < 0 else "+", term))
        sign, term = parts[0]
        out = ("-" if sign == "-" else "") + term
        for sign, term in parts[1:]:
            out += " %s %s" % (sign, term)
        return out


def beta_binomial(l: int, d: int) -> BetaPoly:
    """binomial(beta + l - 1 - d, l) as a polynomial in beta.

    The degree-l product (beta + l - 1 - d)(beta + l - 2 - d)...(beta - d)
    divided by l!.  For l = 0 the empty product is 1.
    """
    if l < 0:
        raise ValueError("l must be nonnegative")
    out = BetaPoly([1])
    for t in range(l):
        out = out * BetaPoly([l - 1 - d - t, 1])
    return out * Fraction(1, factorial(l))


def interpolate(points) -> BetaPoly:
    """Lagrange interpolation through exact (x, y) pairs."""
    out = BetaPoly()
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    for i, (xi, yi) in enumerate(pts):
        num = BetaPoly([1])
        den = _ONE
        for j, (xj, _) in enumerate(pts):
            if i == j:
                continue
            num = num * BetaPoly([-xj, 1])
            den *= xi - xj
        out = out + num * (yi / den)
    return out

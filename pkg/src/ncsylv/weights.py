"""Word weights, weighted determinants and the bracket-rescaled matrices.

The three weight schemes:

* ``unit``  -- every word has weight 1 (commutative, Cartier-Foata and
  right-quantum regimes);
* ``q``     -- a word a_{lambda,mu} has weight q^(inv mu - inv lambda);
* ``qij``   -- the multiparameter double product over the inversion sets
  of mu (positive factors q_{mu_j mu_i}) and lambda (inverse factors).

A weighted determinant expands the signed permutation sum of the matrix
entries in the free algebra and then multiplies each resulting word by
its weight, so the same code serves det, det_q and the multiparameter
determinant, over both the inner a-letters and the outer c-letters.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass

from .coeff import LP_ONE, Q, LaurentPoly
from .freealg import Element, NCMatrix, cols_of, inversions, rows_of


@dataclass(frozen=True)
class WeightScheme:
    """variant 'unit' | 'q' | 'qij'; for 'qij' an optional block threshold
    identifies all q_ij with i <= block_n < j with the single parameter q
    (the block-constant hypothesis of the main theorem)."""

    variant: str
    m: int
    block_n: int | None = None

    def __post_init__(self):
        if self.variant not in ("unit", "q", "qij"):
            raise ValueError("unknown weight scheme %r" % self.variant)

    def q_monomial(self, i: int, j: int) -> LaurentPoly:
        """The scalar q_ij, with q_ii = 1 and q_ji = q_ij^-1."""
        if i == j:
            return LP_ONE
        exp = 1 if i < j else -1
        lo, hi = min(i, j), max(i, j)
        if self.variant == "unit":
            return LP_ONE
        if self.variant == "q":
            return LaurentPoly.var(Q, exp)
        if self.block_n is not None and lo <= self.block_n < hi:
            return LaurentPoly.var(Q, exp)
        return LaurentPoly.var((lo, hi), exp)

    def parameters(self):
        """All parameter keys the scheme can emit."""
        if self.variant == "unit":
            return set()
        if self.variant == "q":
            return {Q}
        out = set()
        for i in range(1, self.m + 1):
            for j in range(i + 1, self.m + 1):
                if self.block_n is not None and i <= self.block_n < j:
                    out.add(Q)
                else:
                    out.add((i, j))
        return out


def weight(lam, mu, scheme: WeightScheme) -> LaurentPoly:
    """The weight w(lambda, mu) of the word a_{lambda,mu}."""
    if len(lam) != len(mu):
        raise ValueError("row word and column word must have equal length")
    if scheme.variant == "unit":
        return LP_ONE
    if scheme.variant == "q":
        _, inv_mu = inversions(mu)
        _, inv_lam = inversions(lam)
        return LaurentPoly.var(Q, inv_mu - inv_lam)
    out = LP_ONE
    inv_mu, _ = inversions(mu)
    for i, j in inv_mu:
        out = out * scheme.q_monomial(mu[j], mu[i])
    inv_lam, _ = inversions(lam)
    for i, j in inv_lam:
        out = out * scheme.q_monomial(lam[j], lam[i]).inverse()
    return out


def apply_weight(x: Element, scheme: WeightScheme) -> Element:
    """Multiply the coefficient of every word by its weight."""
    if scheme.variant == "unit":
        return x
    return Element(
        {w: c * weight(rows_of(w), cols_of(w), scheme) for w, c in x.terms.items()},
        x.trunc,
    )


def det_expand(m: NCMatrix, scheme: WeightScheme) -> Element:
    """Weighted determinant of an arbitrary square matrix.

    Expands sum_sigma (-1)^{inv sigma} b_{sigma(1),1} ... b_{sigma(s),s}
    (entries multiplied in column order) and weights each expanded word.
    """
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    s = m.nrows
    total = Element.zero(m.trunc)
    for sigma in itertools.permutations(range(1, s + 1)):
        _, inv = inversions(sigma)
        prod = Element.one(m.trunc)
        for col in range(1, s + 1):
            prod = prod * m.entry(sigma[col - 1], col)
            if prod.is_zero():
                break
        if inv % 2:
            prod = -prod
        total = total + prod
    return apply_weight(total, scheme)


def det_iminus(a: NCMatrix, scheme: WeightScheme) -> Element:
    """Weighted determinant of I - A via sum_J (-1)^{|J|} det A_J."""
    if not a.is_square():
        raise ValueError("determinant of a non-square matrix")
    s = a.nrows
    total = Element.zero(a.trunc)
    for r in range(s + 1):
        for subset in itertools.combinations(range(1, s + 1), r):
            sub = a.submatrix(subset, subset)
            d = det_expand(sub, scheme)
            total = total + (-d if r % 2 else d)
    return total


def bracket_matrix(a: NCMatrix, i: int, j: int, scheme: WeightScheme,
                   row_idx=None, col_idx=None) -> NCMatrix:
    """The entrywise rescaled matrix A_{[ij]}.

    Entry (k, l) is scaled by q^([l > j] - [k < i]) in the single-q
    scheme, and by (q_jl if l > j else 1) * (q_ki^-1 if k < i else 1) in
    the multiparameter scheme.  ``row_idx``/``col_idx`` give the actual
    matrix indices when ``a`` is a submatrix of the generic matrix.
    """
    if scheme.variant == "unit":
        warnings.warn("bracket matrix under the unit scheme is the identity transform")
        return a
    rid = list(row_idx) if row_idx is not None else list(range(1, a.nrows + 1))
    cid = list(col_idx) if col_idx is not None else list(range(1, a.ncols + 1))

    def scale(r, c, e):
        k, l = rid[r - 1], cid[c - 1]
        f = LP_ONE
        if l > j:
            f = f * scheme.q_monomial(j, l)
        if k < i:
            f = f * scheme.q_monomial(k, i).inverse()
        return e if f.is_one() else e.scale(f)

    return a.map_entries(scale)

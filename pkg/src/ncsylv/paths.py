"""Lattice-path combinatorics.

A step is a letter (i, j): it starts at height i and ends at height j.
A sequence of steps is *balanced* (a b-sequence) when every height
starts as many steps as it ends; the common count vector is its type.
An *o-sequence* is a balanced sequence with non-decreasing starting
heights.  A *p-sequence* is a concatenation of closed lattice paths
P_1 P_2 ... P_m where P_i goes from i to i and never dips below i.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .coeff import BetaPoly, beta_binomial
from .freealg import Word


def is_lattice_path(word) -> bool:
    return all(word[t][1] == word[t + 1][0] for t in range(len(word) - 1))


def heights_of(word):
    """Visited heights of a lattice path: start, then each step's end."""
    if not word:
        return []
    return [word[0][0]] + [s[1] for s in word]


def type_vector(word, m: int):
    t = [0] * m
    for s in word:
        t[s[0] - 1] += 1
    return tuple(t)


def is_balanced(word) -> bool:
    starts, ends = {}, {}
    for i, j in word:
        starts[i] = starts.get(i, 0) + 1
        ends[j] = ends.get(j, 0) + 1
    return starts == ends


def is_o_sequence(word) -> bool:
    rows = [s[0] for s in word]
    return rows == sorted(rows) and is_balanced(word)


def _p_scan(word):
    """Greedy scan of the unique p-decomposition.

    Returns (consumed, level, height): the number of leading steps that
    form a prefix of some p-sequence, the level of the path being built
    and the current chain height.  consumed == len(word) with height ==
    level means the whole word is a p-sequence.
    """
    level, h = 1, 1
    for t, (a, b) in enumerate(word):
        if a != h:
            if h != level or a < level:
                return t, level, h
            new_level = a      # previous path closed; jump up to a new level
        else:
            new_level = level
        if b < new_level:
            return t, level, h
        level, h = new_level, b
    return len(word), level, h


def is_p_sequence(word) -> bool:
    consumed, level, h = _p_scan(word)
    return consumed == len(word) and h == level


def decompose_path(word, n: int):
    """Unique split of a path with endpoints > n into subpaths whose
    endpoints are > n and whose interior heights are all <= n."""
    word = tuple(word)
    if not word:
        raise ValueError("cannot decompose the empty path")
    if not is_lattice_path(word):
        raise ValueError("not a lattice path")
    if word[0][0] <= n or word[-1][1] <= n:
        raise ValueError("path endpoints must be above the threshold")
    segments, start = [], 0
    for t, step in enumerate(word):
        if step[1] > n:
            segments.append(word[start:t + 1])
            start = t + 1
    return segments


class EnumerationCap(ValueError):
    pass


def _multinomial(counts):
    out = math.factorial(sum(counts))
    for c in counts:
        out //= math.factorial(c)
    return out


def _multiset_perms(items):
    items = tuple(items)
    if not items:
        yield ()
        return
    seen = set()
    for i, v in enumerate(items):
        if v in seen:
            continue
        seen.add(v)
        for tail in _multiset_perms(items[:i] + items[i + 1:]):
            yield (v,) + tail


def enumerate_sequences(tvec, kind: str, height_cap=None, cap: int = 200_000):
    """All sequences of the given type: kind 'o', 'p' or 'b'.

    ``height_cap`` restricts every height (start and end) to <= cap,
    which realises the height-bounded sums of the enumeration lemma.
    Exhaustive and duplicate-free; guarded against oversized types.
    """
    if kind not in ("o", "p", "b"):
        raise ValueError("kind must be 'o', 'p' or 'b'")
    tvec = tuple(tvec)
    if height_cap is not None and any(k for k in tvec[height_cap:]):
        return []
    values = []
    for h, k in enumerate(tvec, start=1):
        values.extend([h] * k)
    count = _multinomial(tvec)
    est = count if kind == "o" else count * count
    if est > cap:
        raise EnumerationCap("type %r enumerates %d sequences (cap %d)" % (tvec, est, cap))
    rows_sorted = tuple(values)
    out = []
    if kind == "o":
        for ca in _multiset_perms(rows_sorted):
            out.append(tuple(zip(rows_sorted, ca)))
    else:
        for ra in _multiset_perms(rows_sorted):
            for ca in _multiset_perms(rows_sorted):
                w = tuple(zip(ra, ca))
                if kind == "b" or is_p_sequence(w):
                    out.append(w)
    if height_cap is not None:
        out = [w for w in out if all(max(s) <= height_cap for s in w)]
    out.sort()
    return out


def phi(alpha) -> Word:
    """The bijection from o-sequences to p-sequences.

    Repeatedly: find the maximal prefix that is part of a p-sequence,
    take the chain height i there, and move the first later step
    starting at i leftwards (adjacent exchanges) to the break point.
    Every exchange swaps steps with distinct starting heights.
    """
    alpha = tuple(alpha)
    if not is_o_sequence(alpha):
        raise ValueError("phi expects an o-sequence")
    w = list(alpha)
    for _ in range(len(w) * len(w) + 1):
        consumed, level, h = _p_scan(w)
        if consumed == len(w):
            if w and h != level:
                raise AssertionError("balanced scan ended on an open chain")
            return tuple(w)
        t = next((t for t in range(consumed, len(w)) if w[t][0] == h), None)
        if t is None:
            raise AssertionError("no continuation step; input was not balanced")
        step = w.pop(t)
        w.insert(consumed, step)
    raise AssertionError("straightening did not converge")


@dataclass(frozen=True)
class CycleDecomp:
    """Ordered disjoint-cycle decomposition of a balanced sequence."""

    cycles: tuple

    def word(self) -> Word:
        return tuple(itertools.chain.from_iterable(self.cycles))

    def heights(self, idx: int):
        """Height set of the idx-th cycle (0-based): its starting heights."""
        return frozenset(s[0] for s in self.cycles[idx])

    def high_indices(self, n: int):
        """0-based indices of cycles containing a height > n."""
        return frozenset(i for i, c in enumerate(self.cycles)
                         if any(s[0] > n for s in c))

    def disjoint(self, i: int, j: int) -> bool:
        return not (self.heights(i) & self.heights(j))


def cycle_decomposition(alpha) -> CycleDecomp:
    """Canonical factorization into disjoint cycles.

    The sequence is first straightened to a p-sequence; then the first
    repeated height along the leading chain closes a cycle, which is
    moved to the front and removed.
    """
    alpha = tuple(alpha)
    if not is_balanced(alpha):
        raise ValueError("cycle decomposition needs a balanced sequence")
    w = list(alpha if is_p_sequence(alpha) else phi(alpha))
    cycles = []
    while w:
        heights = [w[0][0]]
        repeat_at = None
        for t, step in enumerate(w):
            if t > 0 and step[0] != heights[-1]:
                raise AssertionError("leading chain broke before closing")
            h = step[1]
            if h in heights:
                repeat_at = t
                break
            heights.append(h)
        if repeat_at is None:
            raise AssertionError("leading chain never closed")
        first = heights.index(w[repeat_at][1])
        cycles.append(tuple(w[first:repeat_at + 1]))
        del w[first:repeat_at + 1]
    return CycleDecomp(tuple(cycles))


def e_mu(mu, n: int, literal_condition3: bool = False, guard: int = 8) -> BetaPoly:
    """The coefficient polynomial e_mu(beta) of the o-sequence word
    a_{lambda,mu} in the beta-th power of the inverse determinant.

    Brute-force sum of binomial(beta + l - 1 - d(pi), l) over the
    permutations of the cycles satisfying the four admissibility
    conditions; l counts the high cycles and d(pi) the descents of the
    high subword.  ``literal_condition3`` switches condition (3) to the
    statement's literal reading (the fixed high cycle instead of some
    intermediate cycle); the integer-evaluation oracle validates the
    default reading.
    """
    mu = tuple(mu)
    lam = tuple(sorted(mu))
    word = tuple(zip(lam, mu))
    if not is_balanced(word):
        raise ValueError("mu and its sorted rearrangement are not balanced")
    dec = cycle_decomposition(word)
    k = len(dec.cycles)
    if k > guard:
        raise ValueError("too many cycles (%d > %d)" % (k, guard))
    high = dec.high_indices(n)
    l = len(high)
    hsets = [dec.heights(i) for i in range(k)]
    total = BetaPoly()
    for pi in itertools.permutations(range(k)):
        ok = True
        for a in range(k):
            for b in range(a + 1, k):
                if pi[a] > pi[b] and (hsets[pi[a]] & hsets[pi[b]]):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        if k and pi[-1] not in high:
            continue                      # condition (2): a high cycle closes every suffix
        for a in range(k - 1):
            if pi[a] > pi[a + 1] and pi[a] not in high:
                ok = False                # condition (4): descents only at high cycles
                break
        if not ok:
            continue
        for a in range(k):
            if pi[a] in high:
                continue
            j = next(t for t in range(a, k) if pi[t] in high)
            if j == a:
                continue
            if literal_condition3:
                meets = bool(hsets[pi[a]] & hsets[pi[j]])
            else:
                meets = any(hsets[pi[a]] & hsets[pi[t]] for t in range(a + 1, j + 1))
            if not meets:
                ok = False                # condition (3): tied to the next high block
                break
        if not ok:
            continue
        sub = [pi[a] for a in range(k) if pi[a] in high]
        d = sum(1 for a in range(len(sub) - 1) if sub[a] > sub[a + 1])
        total = total + beta_binomial(l, d)
    return total


def enumerate_constrained(i: int, j: int, ks, counts, m=None):
    """The constrained step-sequence sets of the enumeration lemma.

    ``ks`` is a single ending height k (appearing twice) or a pair
    (k, l) (appearing once each); ``counts`` = (k_1, ..., k_n) gives the
    start/end multiplicities of the low heights 1..n.  Starting heights
    are non-decreasing; i and j each start exactly one step.
    """
    n = len(counts)
    if isinstance(ks, int):
        ks = (ks, ks)
    ks = tuple(ks)
    if len(ks) != 2:
        raise ValueError("ks must be one height or a pair")
    if i <= n or j <= n or i == j:
        raise ValueError("i, j must be distinct heights above n")
    if any(k <= n for k in ks):
        raise ValueError("ending heights must be above n")
    if m is not None and any(h > m for h in (i, j) + ks):
        raise ValueError("height out of range")
    starts = sorted([h for h, c in enumerate(counts, start=1) for _ in range(c)] + [i, j])
    ends = sorted([h for h, c in enumerate(counts, start=1) for _ in range(c)] + list(ks))
    out = []
    for ca in _multiset_perms(tuple(ends)):
        out.append(tuple(zip(starts, ca)))
    out.sort()
    return out

"""The acceptance battery: every identity at its contracted scale.

Each criterion is a standalone callable returning a CriterionResult, so
the CLI, the test suite and ad-hoc scripts all drive the same checks.
The runner honours NCSYLV_THREADS for process-level parallelism across
criteria; results are merged back in criterion order.
"""

from __future__ import annotations

import itertools
import os
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .coeff import LP_ONE, LaurentPoly, beta_binomial
from .freealg import Element, NCMatrix, cols_of, rows_of, word_str
from .paths import (cycle_decomposition, decompose_path, e_mu,
                    enumerate_constrained, enumerate_sequences, phi)
from .relations import (is_in_ideal, make_system, normal_form, relators,
                        swap_factor)
from .sylvester import (beta_expansion_check, make_instance,
                        qij_counterexample, verify_C_relations,
                        verify_enumeration_identity, verify_inverse_formula,
                        verify_master_decomposition, verify_sylvester)
from .weights import WeightScheme, det_expand, det_iminus, weight


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    elapsed_ms: int
    details: list = field(default_factory=list)

    def line(self) -> str:
        return "[%2d] %-28s %s  (%d ms)" % (
            self.number, self.name, "PASS" if self.passed else "FAIL", self.elapsed_ms)


def _run(number, name, fn) -> CriterionResult:
    start = time.monotonic()
    details = []
    try:
        passed = fn(details)
    except Exception as exc:  # a crash is a failure, not an abort
        details.append("exception: %r" % exc)
        passed = False
    return CriterionResult(number, name, bool(passed),
                           int((time.monotonic() - start) * 1000), details)


def _word(s: str):
    return tuple((int(a), int(b)) for a, b in (tok.split(",") for tok in s.split()))


# -- 1 ----------------------------------------------------------------------

def criterion_1(details) -> bool:
    """Free-algebra path identity, every m <= 4, n < m, N = 6, exact."""
    ok = True
    for m in range(1, 5):
        for n in range(m):
            rep = verify_master_decomposition(make_instance("cf", m, n, 6))
            ok = ok and rep.passed
            details.append("m=%d n=%d: %s" % (m, n, "exact" if rep.passed else "FAIL"))
    return ok


# -- 2 ----------------------------------------------------------------------

FIGURE1_WORD = _word("4,1 1,3 3,2 2,2 2,5 5,4 4,3 3,3 3,3 3,1 1,4 4,4")
FIGURE1_SEGMENTS = [_word("4,1 1,3 3,2 2,2 2,5"), _word("5,4"),
                    _word("4,3 3,3 3,3 3,1 1,4"), _word("4,4")]


def criterion_2(details) -> bool:
    segs = decompose_path(FIGURE1_WORD, 3)
    details.append(" | ".join(word_str(s) for s in segs))
    return segs == FIGURE1_SEGMENTS


# -- 3 ----------------------------------------------------------------------

def _classical_example_holds(details) -> bool:
    """The introductory 3x3 worked identity, term for term."""
    unit = WeightScheme("unit", 3)
    sys = make_system("commutative", 3)
    A = NCMatrix.generic(3)
    det_a = det_expand(A, unit)
    shown = {
        _word("1,1 2,2 3,3"): 1, _word("1,1 3,2 2,3"): -1,
        _word("2,1 1,2 3,3"): -1, _word("2,1 3,2 1,3"): 1,
        _word("3,1 1,2 2,3"): 1, _word("3,1 2,2 1,3"): -1,
    }
    got = {w: c.constant() for w, c in det_a.terms.items()}
    if got != {w: Fraction(c) for w, c in shown.items()}:
        details.append("3x3 determinant expansion does not match the display")
        return False
    a = Element.letter
    det_a0 = a(1, 1)
    b = {}
    for i in (2, 3):
        for j in (2, 3):
            b[(i, j)] = det_expand(NCMatrix([[a(1, 1), a(1, j)], [a(i, 1), a(i, j)]]), unit)
    det_b = b[(2, 2)] * b[(3, 3)] - b[(3, 2)] * b[(2, 3)]
    lhs = det_a * det_a0
    if not normal_form(lhs - det_b, sys).is_zero():
        details.append("(det A) a_11 != det B")
        return False
    details.append("3x3 display identity holds term for term")
    return True


def _translated_example_holds(details) -> bool:
    """The same identity for I-A: det(I-A) det(I-A_0)^{m-n-1} = det B~."""
    m, n = 3, 1
    unit = WeightScheme("unit", m)
    sys = make_system("commutative", m)
    A = NCMatrix.generic(m)
    one = Element.one()
    a = Element.letter
    det_ia = det_iminus(A, unit)
    det_ia0 = one - a(1, 1)
    bt = {}
    for i in (2, 3):
        for j in (2, 3):
            corner = (one if i == j else Element.zero()) - a(i, j)
            bt[(i, j)] = det_expand(
                NCMatrix([[one - a(1, 1), -a(1, j)], [-a(i, 1), corner]]), unit)
    det_bt = bt[(2, 2)] * bt[(3, 3)] - bt[(3, 2)] * bt[(2, 3)]
    diff = det_ia * det_ia0 - det_bt
    if not normal_form(diff, sys).is_zero():
        details.append("translated bordered identity fails")
        return False
    details.append("I-A translation of the worked identity holds")
    return True


def criterion_3(details) -> bool:
    ok = True
    for (m, n) in [(3, 1), (4, 1), (4, 2)]:
        rep = verify_sylvester(make_instance("commutative", m, n, 5))
        ok = ok and rep.passed
        details.append("commutative m=%d n=%d: %s" % (m, n, "pass" if rep.passed else "FAIL"))
    ok = _classical_example_holds(details) and ok
    ok = _translated_example_holds(details) and ok
    return ok


# -- 4 ----------------------------------------------------------------------

def criterion_4(details) -> bool:
    ok = True
    cases = [(2, 0, 5), (2, 1, 5), (3, 0, 5), (3, 1, 5), (3, 2, 5),
             (4, 0, 4), (4, 1, 4), (4, 2, 4)]
    for regime in ("cf", "q-cf"):
        for m, n, N in cases:
            rep = verify_sylvester(make_instance(regime, m, n, N), method="normal-form")
            ok = ok and rep.passed
            details.append("%s m=%d n=%d N=%d: %s"
                           % (regime, m, n, N, "zero" if rep.passed else "FAIL"))
    return ok


# -- 5 ----------------------------------------------------------------------

def criterion_5(details) -> bool:
    ok = True
    for regime in ("rq", "q-rq", "qij-cf", "qij-rq"):
        for n in (1, 2):
            rep = verify_sylvester(make_instance(regime, 3, n, 4),
                                   method="ideal-specialize", trials=3)
            ok = ok and rep.passed
            details.append("%s m=3 n=%d specialize(3 trials): %s"
                           % (regime, n, "in-ideal" if rep.passed else "FAIL"))
        rep = verify_sylvester(make_instance(regime, 3, 1, 4), method="ideal-exact")
        ok = ok and rep.passed
        details.append("%s m=3 n=1 exact: %s" % (regime, "in-ideal" if rep.passed else "FAIL"))
    return ok


# -- 6 ----------------------------------------------------------------------

FIGURE3_BEFORE = _word("3,1 1,2 2,4 5,2 2,2 2,4")
FIGURE3_AFTER = _word("5,2 2,4 3,1 1,2 2,2 2,4")
FIGURE4_SWITCHES = [
    (_word("3,1 1,3 4,2 2,1 1,5"), _word("4,2 2,1 1,3 3,1 1,5")),
    (_word("3,1 1,3 4,2 2,2 2,5"), _word("4,2 2,2 2,5 3,1 1,3")),
]


def pull_path_front(word, j: int, n: int):
    """The switch procedure of the closure-lemma proofs: bring the step
    starting at j to the front, then repeatedly pull the first step
    continuing the chain, until the pulled path ends above n."""
    w = list(word)
    pos = next(t for t, s in enumerate(w) if s[0] == j)
    w.insert(0, w.pop(pos))
    done = 1
    while w[done - 1][1] <= n:
        pos = next(t for t in range(done, len(w)) if w[t][0] == w[done - 1][1])
        w.insert(done, w.pop(pos))
        done += 1
    return tuple(w)


def criterion_6(details) -> bool:
    ok = True
    for regime in ("commutative", "cf", "rq", "q-cf", "q-rq", "qij-cf", "qij-rq"):
        rep = verify_C_relations(make_instance(regime, 3, 1, 4))
        ok = ok and rep.passed
        details.append("%s closure: %s" % (regime, "pass" if rep.passed else "FAIL"))
    sys5 = make_system("cf", 5)

    def nf_equal(a, b):
        return normal_form(Element.from_word(a), sys5) == \
            normal_form(Element.from_word(b), sys5)

    fig3 = pull_path_front(FIGURE3_BEFORE, 5, 2) == FIGURE3_AFTER \
        and nf_equal(FIGURE3_BEFORE, FIGURE3_AFTER)
    ok = ok and fig3
    details.append("figure-3 switch reproduced with equal normal forms: %s" % fig3)
    for before, after in FIGURE4_SWITCHES:
        good = pull_path_front(before, 4, 2) == after and nf_equal(before, after)
        ok = ok and good
        details.append("figure-4 switch %s -> %s: %s"
                       % (word_str(before), word_str(after), good))
    return ok


# -- 7 ----------------------------------------------------------------------

def criterion_7(details) -> bool:
    ok = True
    for regime in ("cf", "rq", "q-cf", "q-rq", "qij-cf", "qij-rq"):
        for m in (1, 2, 3):
            inst = make_instance(regime, m, max(0, m - 2), 4, block_constant=False)
            bad = []
            for i in range(1, m + 1):
                for j in range(1, m + 1):
                    rep = verify_inverse_formula(inst, i, j)
                    if not rep.passed:
                        bad.append((i, j))
            ok = ok and not bad
            details.append("%s m=%d inverse all entries: %s"
                           % (regime, m, "pass" if not bad else "FAIL %s" % bad))
    for regime in ("qij-cf", "qij-rq"):
        for m in (2, 3):
            inst = make_instance(regime, m, m - 2 if m > 2 else 0, 4, block_constant=False)
            rep = verify_inverse_formula(inst, m, m, weaker=True)
            ok = ok and rep.passed
            details.append("%s m=%d weaker-hypothesis corner: %s"
                           % (regime, m, "pass" if rep.passed else "FAIL"))
    return ok


# -- 8 ----------------------------------------------------------------------

def criterion_8(details) -> bool:
    rep = qij_counterexample()
    details.extend(rep.notes)
    return rep.passed


# -- 9 ----------------------------------------------------------------------

EXAMPLE_MU = tuple(int(c) for c in "132521421325")


def criterion_9(details) -> bool:
    got = e_mu(EXAMPLE_MU, 2)
    want = beta_binomial(4, 0) + 2 * beta_binomial(4, 1)
    ok = got == want
    details.append("symbolic e_mu(%s) = %s" % ("".join(map(str, EXAMPLE_MU)), got))
    for (m, n) in [(2, 0), (2, 1), (3, 1)]:
        here = all(beta_expansion_check(make_instance("cf", m, n, 4), b).passed
                   for b in (1, 2, 3))
        ok = ok and here
        details.append("expansion m=%d n=%d beta in {1,2,3}: %s"
                       % (m, n, "match" if here else "FAIL"))
    here = all(beta_expansion_check(make_instance("cf", 3, 0, 3), b).passed
               for b in (1, 2))
    ok = ok and here
    details.append("n=0 master-theorem specialization: %s" % ("match" if here else "FAIL"))
    return ok


# -- 10 ---------------------------------------------------------------------

NINETEEN = _word("1,3 1,1 1,2 1,3 2,2 2,3 2,2 2,1 2,3 2,2 2,3 3,2 3,1 3,1 3,3 3,2 3,2 3,3 3,3")
NINETEEN_DECOMP = _word("2,2 3,2 2,3 1,3 3,1 1,1 2,2 1,2 2,1 1,3 3,1 3,3 2,3 3,2 2,2 2,3 3,2 3,3 3,3")


def _types(total_max, m):
    def rec(parts):
        if parts == 1:
            for t in range(total_max + 1):
                yield (t,)
            return
        for first in range(total_max + 1):
            for rest in rec(parts - 1):
                if first + sum(rest) <= total_max:
                    yield (first,) + rest
    return [t for t in rec(m)]


def criterion_10(details) -> bool:
    ok = True
    checked = 0
    for t in _types(5, 3):
        O = enumerate_sequences(t, "o")
        P = enumerate_sequences(t, "p")
        image = sorted(phi(a) for a in O)
        if image != sorted(P) or len(set(image)) != len(O):
            ok = False
            details.append("bijection fails for type %r" % (t,))
        checked += len(O)
    details.append("bijectivity over all types with size <= 5, m <= 3 (%d o-sequences)" % checked)
    dec = cycle_decomposition(NINETEEN)
    verbatim = dec.word() == NINETEEN_DECOMP
    ok = ok and verbatim
    details.append("19-letter cycle decomposition verbatim: %s" % verbatim)
    return ok


# -- 11 ---------------------------------------------------------------------

def criterion_11(details) -> bool:
    got = enumerate_constrained(3, 5, 4, (1, 1), m=5)
    starts = (1, 2, 3, 5)
    expect = sorted({tuple(zip(starts, ends))
                     for ends in itertools.permutations((1, 2, 4, 4))})
    ok = got == expect and len(got) == 12
    details.append("constrained set (3,5)->4 low counts (1,1): %d sequences" % len(got))
    rep = verify_enumeration_identity(make_instance("rq", 5, 2, 4), 3, 5, 4)
    ok = ok and rep.passed
    details.append("sum minus product-with-S in the ideal: %s" % rep.passed)
    return ok


# -- 12 ---------------------------------------------------------------------

def _random_word(rng, m, max_len):
    return tuple((rng.randint(1, m), rng.randint(1, m))
                 for _ in range(rng.randint(1, max_len)))


def criterion_12(details) -> bool:
    ok = True
    rng = random.Random(20240911)
    total = 0
    for regime in ("commutative", "cf", "q-cf", "qij-cf"):
        sys = make_system(regime, 3)
        for _ in range(250):
            w = _random_word(rng, 3, 6)
            cur, factor = list(w), LP_ONE
            for _ in range(rng.randint(0, 12)):
                spots = [p for p in range(len(cur) - 1)
                         if regime == "commutative" or cur[p][0] != cur[p + 1][0]]
                if not spots:
                    break
                p = rng.choice(spots)
                factor = factor * swap_factor(sys, cur[p], cur[p + 1])
                cur[p], cur[p + 1] = cur[p + 1], cur[p]
            end = tuple(cur)
            want = weight(rows_of(end), cols_of(end), sys.scheme) * \
                weight(rows_of(w), cols_of(w), sys.scheme).inverse()
            if factor != want:
                ok = False
                details.append("%s: path-dependent factor on %s" % (regime, word_str(w)))
            total += 1
    details.append("swap-path independence on %d random words" % total)

    sys = make_system("cf", 3)
    rels = relators(sys)
    agree = 0
    for _ in range(200):
        if rng.random() < 0.5:
            r = rng.choice(rels)
            u = _random_word(rng, 3, 2)
            v = _random_word(rng, 3, 2)
            x = Element.from_word(u) * r.element * Element.from_word(v)
        else:
            x = (Element.from_word(_random_word(rng, 3, 4))
                 - Element.from_word(_random_word(rng, 3, 4)))
        if x.is_zero():
            continue
        nf_zero = normal_form(x, sys).is_zero()
        member = is_in_ideal(x, sys, method="specialize").in_ideal
        if nf_zero != member:
            ok = False
            details.append("normal-form/membership disagree on %s" % x)
        agree += 1
    details.append("membership matches normal form on %d random cf elements" % agree)

    from .sylvester import sylvester_sides
    for regime in ("rq", "q-rq", "qij-cf", "qij-rq"):
        inst = make_instance(regime, 3, 1, 4)
        lhs, rhs = sylvester_sides(inst)
        diff = lhs - rhs
        spec = is_in_ideal(diff, inst.system, method="specialize").in_ideal
        exact = is_in_ideal(diff, inst.system, method="exact").in_ideal
        if spec != exact:
            ok = False
        details.append("%s m=3 n=1: specialize/exact agree: %s" % (regime, spec == exact))
    return ok


CRITERIA = [
    (1, "master-free-algebra", criterion_1),
    (2, "figure1-decomposition", criterion_2),
    (3, "commutative-sylvester", criterion_3),
    (4, "cf-and-q-cf-sylvester", criterion_4),
    (5, "rq-family-sylvester", criterion_5),
    (6, "closure-lemmas", criterion_6),
    (7, "inverse-propositions", criterion_7),
    (8, "necessity-counterexample", criterion_8),
    (9, "beta-extension", criterion_9),
    (10, "phi-and-cycles", criterion_10),
    (11, "enumeration-identity", criterion_11),
    (12, "engine-self-consistency", criterion_12),
]


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("NCSYLV_THREADS", "1")))
    except ValueError:
        return 1


def _run_indexed(idx: int) -> CriterionResult:
    number, name, fn = CRITERIA[idx]
    return _run(number, name, fn)


def run_all(jobs: int = None) -> list:
    jobs = worker_count() if jobs is None else max(1, jobs)
    if jobs == 1:
        return [_run_indexed(i) for i in range(len(CRITERIA))]
    from concurrent.futures import ProcessPoolExecutor
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_indexed, range(len(CRITERIA))))

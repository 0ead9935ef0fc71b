"""Command-line front end.

Subcommands: verify (run one identity verification), det (print a
weighted determinant), cmatrix (print the embedded quotient entries),
decompose (split a path at a threshold), phi (straighten an ordered
sequence), emu (the beta-coefficient polynomial of a column word), and
suite (the full acceptance battery).

Words are serialized as juxtaposed letters "a[i,j]", deformation
monomials as "q^e" / "q[i,j]^e" products, and the formal exponent as
"b".  Exit status: 0 all requested checks passed, 1 a verification
failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass

from .freealg import word_str
from .relations import REGIMES
from .sylvester import (VerifyReport, beta_expansion_check, build_C,
                        build_C_detform, default_trunc, make_instance,
                        qij_counterexample, verify_C_relations,
                        verify_inverse_formula, verify_master_decomposition,
                        verify_sylvester)

IDENTITIES = ("master", "sylvester", "inverse", "c-relations", "beta", "counterexample")
METHODS = ("normal-form", "ideal-specialize", "ideal-exact")


@dataclass
class RunConfig:
    command: str
    m: int = 3
    n: int = 1
    regime: str = "cf"
    max_degree: int | None = None
    method: str = "auto"
    seed: int = 0
    trials: int = 3
    fmt: str = "text"
    output: str | None = None

    def validate(self):
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if not 0 <= self.n < self.m:
            raise ValueError("need 0 <= n < m")
        if self.regime not in REGIMES:
            raise ValueError("unknown regime %r" % self.regime)
        if self.max_degree is not None and self.max_degree < 1:
            raise ValueError("max degree must be positive")
        if self.trials < 1:
            raise ValueError("at least one trial")


_WORD_RE = re.compile(r"a\[(\d+),(\d+)\]")


def parse_word(text: str):
    pos, out = 0, []
    for match in _WORD_RE.finditer(text):
        if match.start() != pos:
            raise ValueError("cannot parse word at %r" % text[pos:])
        out.append((int(match.group(1)), int(match.group(2))))
        pos = match.end()
    if pos != len(text):
        raise ValueError("cannot parse word at %r" % text[pos:])
    return tuple(out)


def parse_mu(text: str):
    if "," in text:
        return tuple(int(tok) for tok in text.split(","))
    return tuple(int(ch) for ch in text)


def _emit(args, text: str):
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _emit_report(args, report: VerifyReport) -> int:
    _emit(args, report.to_json() if args.format == "json" else report.text())
    return 0 if report.passed else 1


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ncsylv",
                                description="exact verification of noncommutative "
                                            "Sylvester determinant identities")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_method=True):
        sp.add_argument("--m", type=int, default=3)
        sp.add_argument("--n", type=int, default=1)
        sp.add_argument("--regime", choices=REGIMES, default="cf")
        sp.add_argument("--max-degree", type=int, default=None)
        if with_method:
            sp.add_argument("--method", choices=("auto",) + METHODS, default="auto")
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--trials", type=int, default=3)
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--output", default=None)

    v = sub.add_parser("verify", help="verify one identity")
    v.add_argument("--identity", choices=IDENTITIES, required=True)
    common(v)
    v.add_argument("--i", type=int, default=None, help="row entry for inverse")
    v.add_argument("--j", type=int, default=None, help="column entry for inverse")
    v.add_argument("--weaker", action="store_true",
                   help="column-restricted relations, corner entry only")
    v.add_argument("--chain", action="store_true",
                   help="verify the telescoping product of inverse entries")
    v.add_argument("--form", choices=("auto", "product", "transport"), default="auto")
    v.add_argument("--beta", type=int, default=None,
                   help="integer exponent (omit for the symbolic comparison)")
    v.add_argument("--generic-q", action="store_true",
                   help="drop the block-constant identification of cross parameters")

    d = sub.add_parser("det", help="print weighted determinants of I-A (and I-A_0)")
    common(d, with_method=False)

    c = sub.add_parser("cmatrix", help="print the embedded quotient entries")
    common(c, with_method=False)
    c.add_argument("--det-form", action="store_true",
                   help="use the determinantal-quotient embedding")

    dp = sub.add_parser("decompose", help="split a lattice path at a threshold")
    dp.add_argument("--word", required=True)
    dp.add_argument("--n", type=int, required=True)
    dp.add_argument("--format", choices=("text", "json"), default="text")
    dp.add_argument("--output", default=None)

    ph = sub.add_parser("phi", help="straighten an ordered sequence into a path sequence")
    ph.add_argument("--word", required=True)
    ph.add_argument("--format", choices=("text", "json"), default="text")
    ph.add_argument("--output", default=None)

    em = sub.add_parser("emu", help="beta-coefficient polynomial of a column word")
    em.add_argument("--mu", required=True)
    em.add_argument("--n", type=int, required=True)
    em.add_argument("--literal-condition3", action="store_true")
    em.add_argument("--format", choices=("text", "json"), default="text")
    em.add_argument("--output", default=None)

    su = sub.add_parser("suite", help="run the acceptance battery")
    su.add_argument("--format", choices=("text", "json"), default="text")
    su.add_argument("--output", default=None)
    return p


def _cmd_verify(args) -> int:
    cfg = RunConfig("verify", m=args.m, n=args.n, regime=args.regime,
                    max_degree=args.max_degree, method=args.method,
                    seed=args.seed, trials=args.trials, fmt=args.format,
                    output=args.output)
    cfg.validate()
    trunc = cfg.max_degree if cfg.max_degree is not None else default_trunc(cfg.m)
    block = not args.generic_q
    if args.identity == "counterexample":
        report = qij_counterexample(min(trunc, 4), seed=cfg.seed, trials=cfg.trials)
        return _emit_report(args, report)
    inst = make_instance(cfg.regime, cfg.m, cfg.n, trunc, block_constant=block)
    if args.identity == "master":
        report = verify_master_decomposition(inst)
    elif args.identity == "sylvester":
        report = verify_sylvester(inst, method=cfg.method, seed=cfg.seed, trials=cfg.trials)
    elif args.identity == "inverse":
        if args.chain:
            report = verify_inverse_formula(inst, method=cfg.method, seed=cfg.seed,
                                            trials=cfg.trials, chain=True)
        else:
            i = args.i if args.i is not None else inst.m
            j = args.j if args.j is not None else inst.m
            report = verify_inverse_formula(inst, i, j, method=cfg.method,
                                            seed=cfg.seed, trials=cfg.trials,
                                            weaker=args.weaker, form=args.form)
    elif args.identity == "c-relations":
        report = verify_C_relations(inst, method=cfg.method, seed=cfg.seed,
                                    trials=cfg.trials)
    elif args.identity == "beta":
        report = beta_expansion_check(inst, args.beta)
    else:
        raise ValueError(args.identity)
    return _emit_report(args, report)


def _cmd_det(args) -> int:
    cfg = RunConfig("det", m=args.m, n=args.n, regime=args.regime, fmt=args.format,
                    output=args.output)
    cfg.validate()
    from .freealg import NCMatrix
    from .relations import make_system
    from .weights import det_iminus
    system = make_system(cfg.regime, cfg.m)
    full = det_iminus(NCMatrix.generic(cfg.m), system.scheme)
    lines = {"det(I-A)": str(full)}
    if cfg.n:
        rng = list(range(1, cfg.n + 1))
        a0 = NCMatrix.generic(cfg.n, row_idx=rng, col_idx=rng)
        lines["det(I-A_0)"] = str(det_iminus(a0, system.scheme))
    if args.format == "json":
        _emit(args, json.dumps(lines))
    else:
        _emit(args, "\n".join("%s = %s" % kv for kv in lines.items()))
    return 0


def _cmd_cmatrix(args) -> int:
    cfg = RunConfig("cmatrix", m=args.m, n=args.n, regime=args.regime,
                    max_degree=args.max_degree, fmt=args.format, output=args.output)
    cfg.validate()
    trunc = cfg.max_degree if cfg.max_degree is not None else default_trunc(cfg.m)
    block = not args.det_form
    inst = make_instance(cfg.regime, cfg.m, cfg.n, trunc, block_constant=block)
    symb = build_C_detform(inst) if args.det_form else build_C(inst)
    entries = {"c[%d,%d]" % key: str(val) for key, val in sorted(symb.embedding.items())}
    if args.format == "json":
        _emit(args, json.dumps(entries))
    else:
        _emit(args, "\n".join("%s = %s" % kv for kv in entries.items()))
    return 0


def _cmd_decompose(args) -> int:
    from .paths import decompose_path
    word = parse_word(args.word)
    segments = decompose_path(word, args.n)
    if args.format == "json":
        _emit(args, json.dumps([word_str(s) for s in segments]))
    else:
        _emit(args, " | ".join(word_str(s) for s in segments))
    return 0


def _cmd_phi(args) -> int:
    from .paths import phi
    image = phi(parse_word(args.word))
    _emit(args, json.dumps(word_str(image)) if args.format == "json" else word_str(image))
    return 0


def _cmd_emu(args) -> int:
    from .paths import e_mu
    poly = e_mu(parse_mu(args.mu), args.n, literal_condition3=args.literal_condition3)
    _emit(args, json.dumps(str(poly)) if args.format == "json" else str(poly))
    return 0


def _cmd_suite(args) -> int:
    from .suite import run_all
    results = run_all()
    if args.format == "json":
        payload = [{"criterion": r.number, "name": r.name, "pass": r.passed,
                    "elapsed_ms": r.elapsed_ms, "details": r.details}
                   for r in results]
        _emit(args, json.dumps(payload))
    else:
        lines = [r.line() for r in results]
        lines.append("suite: %d/%d criteria passed"
                     % (sum(r.passed for r in results), len(results)))
        _emit(args, "\n".join(lines))
    return 0 if all(r.passed for r in results) else 1


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "verify": _cmd_verify, "det": _cmd_det, "cmatrix": _cmd_cmatrix,
        "decompose": _cmd_decompose, "phi": _cmd_phi, "emu": _cmd_emu,
        "suite": _cmd_suite,
    }
    try:
        return handlers[args.command](args)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

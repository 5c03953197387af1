"""Command line interface.

Subcommands:

* ``invariant``      link invariant of a braid closure
* ``verify``         run the verification suites for one (m, n)
* ``simple-module``  build a rank-(2,1) simple module
* ``decompose``      braid-form spectral report on V (x) V
* ``eval``           evaluate an expression in a chosen representation

Machine-readable mode (``--json``) emits deterministic JSON: keys sorted, no
timestamps, scalars in canonical text form.  Exit codes: 0 success, 1 check
failure, 2 unsupported request (m = n for invariants), 3 resource limit.
The dimension cap defaults to 20000 and can be set by ``--max-dim`` or the
``DEGENQ_MAX_DIM`` environment variable (flag wins).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from .errors import (
    DegenqError,
    EqualMNUnsupported,
    ExprSyntaxError,
    ResourceLimit,
    StrandMismatch,
)
from .expr import eval_in_rep, parse_expr
from .invariants import BraidWord, link_invariant, random_word, verify_markov, verify_skein
from .linalg import SparseMat
from .reports import FAIL, PASS, Report, UNSUPPORTED, VACUOUS
from .reps import (
    DEFAULT_MAX_DIM,
    check_hopf_axioms,
    dual_rep,
    iterated_tensor,
    natural_rep,
    verify_relations,
)
from .rmatrix import (
    antisymmetric_type_dim,
    build_bundle,
    symmetric_type_dim,
    verify_hecke_and_spectrum,
    verify_intertwiner,
    verify_tensor_iso,
    verify_ybe,
)
from .scalars import GLParams, RatFn, parse_scalar, scalar_to_text
from .sl21 import HighestWeightSL21, atypicality_type, module_report

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_UNSUPPORTED = 2
EXIT_RESOURCE = 3

SUITES = ("relations", "hopf", "ybe", "hecke", "intertwiner", "invariant")


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    """Whitespace-separated nonzero integers; strands default to max|i| + 1."""
    tokens = text.split()
    if not tokens:
        letters: tuple[int, ...] = ()
    else:
        try:
            letters = tuple(int(t) for t in tokens)
        except ValueError as exc:
            raise ExprSyntaxError(f"braid letters must be integers: {exc}") from exc
    if any(letter == 0 for letter in letters):
        raise ExprSyntaxError("braid letters must be nonzero")
    if strands is None:
        strands = max((abs(letter) for letter in letters), default=0) + 1
    return BraidWord(strands, letters)


def serialize_report(report: Report, fmt: str = "text") -> str:
    if fmt == "json":
        payload = {
            "checks": [
                {"suite": c.suite, "name": c.name, "status": c.status, "detail": c.detail}
                for c in report.checks
            ],
            "summary": report.counts(),
            "ok": report.all_passed,
        }
        return json.dumps(payload, sort_keys=True, indent=2)
    if not report.checks:
        return "OK (0 checks)"
    width = max(len(c.suite) for c in report.checks)
    lines = []
    for c in report.checks:
        marker = {PASS: "ok", FAIL: "FAIL", VACUOUS: "vac.", UNSUPPORTED: "n/a"}[c.status]
        detail = f"  [{c.detail}]" if c.detail else ""
        lines.append(f"{marker:5s} {c.suite:<{width}s}  {c.name}{detail}")
    counts = report.counts()
    total = sum(counts.values())
    summary = ", ".join(f"{k}: {v}" for k, v in sorted(counts.items()))
    lines.append(f"{total} checks ({summary})")
    return "\n".join(lines)


def _matrix_payload(mat: SparseMat) -> dict:
    return {
        "nrows": mat.nrows,
        "ncols": mat.ncols,
        "entries": {
            f"{i},{j}": scalar_to_text(v)
            for (i, j), v in sorted(mat.entries.items())
        },
    }


def _matrix_text(mat: SparseMat) -> str:
    rows = []
    for i in range(mat.nrows):
        row = [scalar_to_text(mat[i, j]) for j in range(mat.ncols)]
        rows.append("[" + ", ".join(row) + "]")
    return "\n".join(rows)


def run_verify(
    params: GLParams,
    tensor_depth: int = 3,
    suites: tuple[str, ...] = SUITES,
    max_dim: int = DEFAULT_MAX_DIM,
    samples: int = 10,
) -> Report:
    report = Report()
    rep = natural_rep(params)
    if "relations" in suites:
        catalog = rep.catalog()
        if params.m == 1 or params.n == 1:
            report.note(
                "relations",
                "serre-quartic",
                VACUOUS,
                "both quartic relations are vacuous when m = 1 or n = 1",
            )
        spaces = [("V", rep)]
        for r in range(2, tensor_depth + 1):
            for side in ("Delta", "DeltaPrime"):
                spaces.append((f"V^(x){r} [{side}]", iterated_tensor(rep, r, side, max_dim)))
        for label, space in spaces:
            sub = verify_relations(space, catalog)
            for c in sub.checks:
                report.add("relations", f"{label}: {c.name}", c.ok, c.detail)
    if "hopf" in suites:
        report.extend(check_hopf_axioms(rep, max_dim))
    bundle = build_bundle(params) if {"ybe", "hecke", "intertwiner"} & set(suites) else None
    if "ybe" in suites:
        report.extend(verify_ybe(bundle))
    if "hecke" in suites:
        report.extend(verify_hecke_and_spectrum(bundle))
    if "intertwiner" in suites:
        report.extend(verify_intertwiner(bundle, rep))
        for r in (2, 3):
            if params.size**r <= max_dim:
                report.extend(verify_tensor_iso(params, r, max_dim))
    if "invariant" in suites:
        if params.m == params.n:
            report.note(
                "markov", "all", UNSUPPORTED, "m = n has vanishing quantum dimension"
            )
        else:
            report.extend(verify_markov(params, samples=samples, max_dim=max_dim))
            rng = random.Random(424)
            for _ in range(max(1, samples // 2)):
                word = random_word(rng, 3, 2, 4)
                pos = rng.randrange(len(word.letters))
                report.extend(verify_skein(params, word, pos, max_dim))
    return report


def _add_mn(parser: argparse.ArgumentParser):
    parser.add_argument("--m", type=int, required=True)
    parser.add_argument("--n", type=int, required=True)


def _max_dim_from(args) -> int:
    if args.max_dim is not None:
        return args.max_dim
    env = os.environ.get("DEGENQ_MAX_DIM")
    return int(env) if env else DEFAULT_MAX_DIM


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="degenq",
        description="Exact matrix models of degenerate quantum general linear groups.",
    )
    parser.add_argument("--max-dim", type=int, default=None, help="dimension cap (default 20000)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_inv = sub.add_parser("invariant", help="link invariant of a braid closure")
    _add_mn(p_inv)
    p_inv.add_argument("--braid", required=True, help="whitespace-separated nonzero integers")
    p_inv.add_argument("--strands", type=int, default=None)
    p_inv.add_argument("--json", action="store_true")

    p_ver = sub.add_parser("verify", help="run verification suites")
    _add_mn(p_ver)
    p_ver.add_argument("--tensor-depth", type=int, default=3)
    p_ver.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p_ver.add_argument("--samples", type=int, default=10)
    p_ver.add_argument("--json", action="store_true")

    p_mod = sub.add_parser("simple-module", help="build a rank-(2,1) simple module")
    p_mod.add_argument("--ell", type=int, required=True)
    p_mod.add_argument("--sign1", choices=("+1", "-1", "1"), default="+1")
    p_mod.add_argument("--lambda2", required=True, help="scalar text, e.g. 'q^3' or '-1'")
    p_mod.add_argument("--matrices", action="store_true", help="include action matrices")
    p_mod.add_argument("--json", action="store_true")

    p_dec = sub.add_parser("decompose", help="braid-form spectral report on V (x) V")
    _add_mn(p_dec)
    p_dec.add_argument("--json", action="store_true")

    p_eval = sub.add_parser("eval", help="evaluate an expression in a representation")
    _add_mn(p_eval)
    p_eval.add_argument("--expr", required=True)
    p_eval.add_argument(
        "--rep",
        default="natural",
        help="natural, dual, or tensor<k> (e.g. tensor2, tensor3)",
    )
    p_eval.add_argument("--json", action="store_true")
    return parser


def _cmd_invariant(args) -> int:
    params = GLParams(args.m, args.n)
    word = parse_braid(args.braid, args.strands)
    result = link_invariant(word, params, _max_dim_from(args))
    mn = params.m - params.n
    if args.json:
        payload = {
            "m": params.m,
            "n": params.n,
            "strands": word.strands,
            "writhe": result.writhe,
            "markov_trace": scalar_to_text(result.markov_trace),
            "invariant": scalar_to_text(result.invariant),
            "a": scalar_to_text(RatFn.q(mn)),
            "z": scalar_to_text(RatFn.q(1) - RatFn.q(-1)),
        }
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(f"braid: {' '.join(map(str, word.letters)) or '(empty)'} on {word.strands} strands")
        print(f"writhe: {result.writhe}")
        print(f"markov trace: {scalar_to_text(result.markov_trace)}")
        print(f"invariant: {scalar_to_text(result.invariant)}")
        print(f"variables: a = {scalar_to_text(RatFn.q(mn))}, z = {scalar_to_text(RatFn.q(1) - RatFn.q(-1))}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    params = GLParams(args.m, args.n)
    suites = SUITES if args.suite == "all" else (args.suite,)
    report = run_verify(
        params,
        tensor_depth=args.tensor_depth,
        suites=suites,
        max_dim=_max_dim_from(args),
        samples=args.samples,
    )
    print(serialize_report(report, "json" if args.json else "text"))
    if not report.all_passed:
        return EXIT_FAIL
    if report.unsupported and args.suite == "invariant":
        return EXIT_UNSUPPORTED
    return EXIT_OK


def _cmd_simple_module(args) -> int:
    sign1 = 1 if args.sign1 in ("+1", "1") else -1
    lambda2 = parse_scalar(args.lambda2)
    hw = HighestWeightSL21(args.ell, sign1, lambda2)
    info = module_report(hw)
    kind, expected = info["type"], info["expected_dim"]
    module = info["module"]
    labels = [
        f"F^{eF} f2^{e2} f1^{k} v" for (eF, e2, k) in module.basis_labels
    ]
    if args.json:
        payload = {
            "ell": args.ell,
            "sign1": sign1,
            "lambda1": scalar_to_text(hw.lambda1),
            "lambda2": scalar_to_text(lambda2),
            "type": kind.value,
            "expected_dim": expected,
            "verma_dim": info["verma_dim"],
            "dim": module.dim,
            "basis": labels,
            "relations_ok": info["relations_ok"],
            "identities": [{"name": n, "ok": ok} for n, ok in info["identities"]],
        }
        if args.matrices:
            payload["action"] = {
                f"{kind_}{idx}": _matrix_payload(mat)
                for (kind_, idx), mat in sorted(module.rep.gens.items())
            }
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(f"highest weight: lambda1 = {scalar_to_text(hw.lambda1)}, lambda2 = {scalar_to_text(lambda2)}")
        print(f"type: {kind.value} (expected dimension {expected})")
        print(f"induced dimension: {info['verma_dim']}; simple dimension: {module.dim}")
        print(f"relation catalog: {'all pass' if info['relations_ok'] else 'FAILURES'}")
        for name, ok in info["identities"]:
            print(f"identity {'ok ' if ok else 'FAIL'}: {name}")
        print("basis: " + ", ".join(labels))
        if args.matrices:
            for (kind_, idx), mat in sorted(module.rep.gens.items()):
                print(f"-- {kind_}{idx} --")
                print(_matrix_text(mat))
    ok = info["relations_ok"] and module.dim == expected and all(x for _, x in info["identities"])
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_decompose(args) -> int:
    params = GLParams(args.m, args.n)
    bundle = build_bundle(params)
    report = verify_hecke_and_spectrum(bundle)
    payload = {
        "m": params.m,
        "n": params.n,
        "q_eigenspace_dim": symmetric_type_dim(params),
        "neg_qinv_eigenspace_dim": antisymmetric_type_dim(params),
    }
    if args.json:
        payload["checks"] = [
            {"suite": c.suite, "name": c.name, "status": c.status} for c in report.checks
        ]
        payload["ok"] = report.all_passed
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(
            f"braid-form eigenvalues: q (dim {payload['q_eigenspace_dim']}), "
            f"-q^-1 (dim {payload['neg_qinv_eigenspace_dim']})"
        )
        print(serialize_report(report))
    return EXIT_OK if report.all_passed else EXIT_FAIL


def _build_rep(name: str, params: GLParams, max_dim: int):
    rep = natural_rep(params)
    if name == "natural":
        return rep
    if name == "dual":
        return dual_rep(rep)
    if name.startswith("tensor"):
        r = int(name[len("tensor") :] or "2")
        return iterated_tensor(rep, r, "Delta", max_dim)
    raise ExprSyntaxError(f"unknown representation {name!r}")


def _cmd_eval(args) -> int:
    params = GLParams(args.m, args.n)
    rep = _build_rep(args.rep, params, _max_dim_from(args))
    expr = parse_expr(args.expr, params)
    mat = eval_in_rep(expr, rep)
    if args.json:
        payload = {
            "m": params.m,
            "n": params.n,
            "rep": args.rep,
            "expr": args.expr,
            "matrix": _matrix_payload(mat),
            "is_zero": mat.is_zero(),
        }
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(_matrix_text(mat))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "invariant": _cmd_invariant,
        "verify": _cmd_verify,
        "simple-module": _cmd_simple_module,
        "decompose": _cmd_decompose,
        "eval": _cmd_eval,
    }
    try:
        return handlers[args.command](args)
    except EqualMNUnsupported as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ExprSyntaxError, StrandMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except DegenqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

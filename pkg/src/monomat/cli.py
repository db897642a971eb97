"""Command-line front end: find, witness, verify, lemma, and oracle commands.

Exit codes are a stable contract: 0 success, 2 bad input, 3 best-effort
shortfall (or a refused guarantee / truncated search), 4 sampling exhausted,
5 counterexample found, 6 internal guarantee breach. All randomness flows
through one seeded mt19937 generator per run, so identical invocations
produce byte-identical artifacts. Witness files carry 1-based row and column
indices.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import extraction, oracle, trees, witness as witness_mod
from .errors import (
    BudgetExceededError,
    ExhaustedAttemptsError,
    FormatError,
    GuaranteeUnmetError,
    InternalCheckError,
    MonomatError,
)
from .matrix import format_matrix, parse_matrix, sign_diff, sign_str

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SHORTFALL = 3
EXIT_SAMPLING = 4
EXIT_COUNTEREXAMPLE = 5
EXIT_INTERNAL = 6

GENERATOR = "mt19937"


def _emit(payload: dict, fmt: str, out=None):
    """Print a payload as deterministic text or JSON; same fields either way."""
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, list):
            value = " ".join(str(v) for v in value)
        elif isinstance(value, dict):
            value = json.dumps(value, sort_keys=True)
        out.write(f"{key}: {value}\n")


def _witness_payload(result: extraction.PipelineResult) -> dict:
    w = result.witness
    payload = {
        "rows": [r + 1 for r in w.rows] if w else [],
        "cols": [c + 1 for c in w.cols] if w else [],
        "kind": w.kind if w else None,
        "row_direction": w.row_direction if w else None,
        "col_direction": w.col_direction if w else None,
        "target": result.target,
        "achieved": result.achieved,
        "met_target": result.met_target,
        "guaranteed": result.guaranteed,
        "stages": [f"{name}: {detail}" for name, detail in result.stages],
    }
    if result.bottleneck:
        payload["bottleneck"] = result.bottleneck
    return payload


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise FormatError(0, f"cannot read {path}: {exc.strerror or exc}") from None


def cmd_find(args) -> int:
    m = parse_matrix(_read_text(args.input))
    finder = extraction.find_row_monotone if args.kind == "row" else extraction.find_monotone
    try:
        result = finder(m, args.n, mode=args.mode, fallback_budget=args.budget)
    except GuaranteeUnmetError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_SHORTFALL
    payload = _witness_payload(result)
    _emit(payload, args.format)
    if args.output:
        Path(args.output).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return EXIT_OK if result.met_target else EXIT_SHORTFALL


def cmd_witness(args) -> int:
    try:
        sm = witness_mod.sample_sign_matrix(
            args.d, args.t, args.n, args.s, seed=args.seed, max_attempts=args.max_attempts
        )
    except ExhaustedAttemptsError as exc:
        print(f"sampling failed: {exc}", file=sys.stderr)
        return EXIT_SAMPLING
    w = witness_mod.build_witness(sm)
    report = witness_mod.verify_witness(w, args.n, max_row_sets=args.budget, seed=args.seed)

    sign_path = Path(f"{args.output_prefix}.signs")
    witness_path = Path(f"{args.output_prefix}.witness")
    sign_path.write_text(format_sign_file(sm, args.seed))
    witness_path.write_text(format_witness_file(w, args.seed))
    written = [str(sign_path), str(witness_path)]
    if args.materialize:
        if args.t > 20:
            print("refusing to materialize beyond t=20", file=sys.stderr)
            return EXIT_INPUT
        matrix_path = Path(f"{args.output_prefix}.matrix")
        matrix_path.write_text(format_matrix(w.materialize()))
        written.append(str(matrix_path))

    payload = {
        "d": args.d,
        "t": args.t,
        "n": args.n,
        "s": args.s,
        "seed": args.seed,
        "generator": GENERATOR,
        "columns": w.cols,
        "verdict": report.verdict,
        "check_mode": report.mode,
        "coverage": report.coverage,
        "files": written,
    }
    _emit(payload, args.format)
    return EXIT_OK


def format_sign_file(sm: witness_mod.SignMatrix, seed: int) -> str:
    return f"# generator {GENERATOR} seed={seed}\n" + witness_mod.format_sign_matrix(sm)


def format_witness_file(w: witness_mod.WitnessMatrix, seed: int) -> str:
    return (
        f"witness t={w.t}\n"
        f"# generator {GENERATOR} seed={seed}\n" + witness_mod.format_sign_matrix(w.signs)
    )


def parse_witness_file(text: str) -> witness_mod.WitnessMatrix:
    lines = text.splitlines()
    header_at = None
    for idx, raw in enumerate(lines):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        header_at = idx
        break
    if header_at is None or not lines[header_at].strip().startswith("witness t="):
        raise FormatError(header_at + 1 if header_at is not None else 1,
                          "expected header 'witness t=<t>'")
    header = lines[header_at].strip()
    try:
        t = int(header.split("=", 1)[1])
    except ValueError:
        raise FormatError(header_at + 1, "bad t in witness header") from None
    sm = witness_mod.parse_sign_matrix("\n".join(lines[header_at + 1 :]))
    if sm.cols != t:
        raise FormatError(header_at + 1, f"header says t={t} but sign matrix has {sm.cols} columns")
    return witness_mod.build_witness(sm)


def _sniff_kind(text: str) -> str:
    """Classify an input file as witness, sign-matrix, or numeric matrix."""
    meaningful = [
        stripped
        for raw in text.splitlines()
        if (stripped := raw.strip()) and not stripped.startswith("#")
    ]
    if not meaningful:
        raise FormatError(1, "empty input file")
    if meaningful[0].startswith("witness t="):
        return "witness"
    # Header lines are numeric either way; bare +/- tokens mark a sign file.
    for line in meaningful[1:]:
        if any(tok in ("+", "-") for tok in line.split()):
            return "signs"
    return "matrix"


def cmd_verify(args) -> int:
    text = _read_text(args.input)
    kind = _sniff_kind(text)
    run_structural = args.structural or not args.oracle
    run_oracle = args.oracle or not args.structural

    payload: dict = {"input": args.input, "n": args.n, "checks": []}
    counterexample = None

    if kind == "matrix":
        m = parse_matrix(text)
        found = oracle.brute_force_row_monotone(
            m, args.n, oracle.SearchBudget(args.budget, args.budget)
        )
        payload["checks"].append("oracle")
        payload["oracle"] = "absent" if found is None else "found"
        if found is not None:
            counterexample = found
    else:
        w = parse_witness_file(text) if kind == "witness" else witness_mod.build_witness(
            witness_mod.parse_sign_matrix(text)
        )
        if run_structural:
            report = witness_mod.verify_witness(w, args.n, max_row_sets=args.budget, seed=args.seed)
            payload["checks"].append("structural")
            payload["structural"] = report.verdict
            payload["check_mode"] = report.mode
            payload["coverage"] = report.coverage
            payload["clique_bound"] = report.clique_bound
            if report.verdict == "FAIL":
                rows, ranks, direction = witness_mod.structural_counterexample(w, report)
                counterexample = {
                    "rows": [r + 1 for r in rows],
                    "cols": list(ranks[: args.n]),
                    "kind": "row-monotone",
                    "row_direction": direction,
                }
        if run_oracle:
            if w.t > 20:
                print("oracle check needs t <= 20 to materialize", file=sys.stderr)
                return EXIT_INPUT
            found = oracle.brute_force_row_monotone(
                w.materialize(), args.n, oracle.SearchBudget(args.budget, args.budget)
            )
            payload["checks"].append("oracle")
            payload["oracle"] = "absent" if found is None else "found"
            if found is not None and counterexample is None:
                counterexample = found

    if counterexample is not None:
        if isinstance(counterexample, dict):
            payload["counterexample"] = counterexample
        else:
            payload["counterexample"] = {
                "rows": [r + 1 for r in counterexample.rows],
                "cols": [c + 1 for c in counterexample.cols],
                "kind": counterexample.kind,
                "row_direction": counterexample.row_direction,
            }
        _emit(payload, args.format)
        return EXIT_COUNTEREXAMPLE
    _emit(payload, args.format)
    return EXIT_OK


def cmd_oracle(args) -> int:
    m = parse_matrix(_read_text(args.input))
    finder = (
        oracle.brute_force_row_monotone if args.kind == "row" else oracle.brute_force_monotone
    )
    try:
        found = finder(m, args.n, oracle.SearchBudget(args.budget, args.budget))
    except BudgetExceededError as exc:
        print(f"search truncated: {exc}", file=sys.stderr)
        return EXIT_SHORTFALL
    payload: dict = {"input": args.input, "n": args.n, "kind": args.kind}
    if found is None:
        payload["result"] = "absent"
    else:
        payload["result"] = "found"
        payload["rows"] = [r + 1 for r in found.rows]
        payload["cols"] = [c + 1 for c in found.cols]
        payload["row_direction"] = found.row_direction
        if found.col_direction:
            payload["col_direction"] = found.col_direction
    _emit(payload, args.format)
    return EXIT_OK


def _random_distinct_vectors(rng: random.Random, d: int, count: int):
    """Vector sequence with pairwise distinct values in every coordinate."""
    coords = [rng.sample(range(1, 10 * count + 1), count) for _ in range(d)]
    return [tuple(coords[a][i] for a in range(d)) for i in range(count)]


def _lemma_split(args, rng) -> dict:
    d, n_cols = args.d, args.N
    if n_cols < 2:
        raise MonomatError("lemma 3.1 needs --N >= 2")
    vectors = _random_distinct_vectors(rng, d, n_cols)
    seq = extraction.IndexedSequence.from_vectors(vectors)
    sign, first, second = extraction.bipartite_split(seq)
    bound = -(-n_cols // (1 << (d + 1)))
    ok = len(first) == len(second) and len(first) >= bound
    for i in range(len(first)):
        for j in range(len(second)):
            if first.indices[i] >= second.indices[j]:
                ok = False
            if sign_diff(first.vectors[i], second.vectors[j]) != sign:
                ok = False
    regime = n_cols % (1 << (d + 1)) == 0
    return {
        "lemma": "bipartite split",
        "d": d,
        "N": n_cols,
        "sign": sign_str(sign),
        "half_size": len(first),
        "required": bound,
        "regime": regime,
        "check": "OK" if ok else "FAIL",
    }


def _lemma_tree(args, rng) -> dict:
    d, m = args.d, args.m
    n_cols = args.N if args.N else 1 << (m * (d + 1))
    vectors = _random_distinct_vectors(rng, d, n_cols)
    seq = extraction.IndexedSequence.from_vectors(vectors)
    cert = extraction.tree_like_subsequence(seq, m)
    ok = len(cert.sequence) == 1 << m and cert.check()
    return {
        "lemma": "tree-like subsequence",
        "d": d,
        "m": m,
        "N": n_cols,
        "length": len(cert.sequence),
        "regime": n_cols >= 1 << (m * (d + 1)),
        "check": "OK" if ok else "FAIL",
    }


def _lemma_perfect(args, rng) -> dict:
    d, m, target = args.d, args.m, args.t
    labels = {}
    for depth in range(m):
        for pos in range(1, (1 << depth) + 1):
            labels[(depth, pos)] = tuple(1 - 2 * rng.getrandbits(1) for _ in range(d))
    tree = trees.LabeledBinaryTree(height=m, dim=d, labels=labels)
    leaf_set = extraction.perfect_leafset_extract(tree, target)
    ok = len(leaf_set) == 1 << target and trees.is_perfect_leafset(tree, leaf_set)
    return {
        "lemma": "perfect leaf set",
        "d": d,
        "m": m,
        "target_height": target,
        "leaves": list(leaf_set),
        "regime": (1 << m) >= ((1 << (d + 1)) * m) ** target,
        "check": "OK" if ok else "FAIL",
    }


def _lemma_block(args, rng) -> dict:
    d, t, n, s = args.d, args.t, args.n, args.s
    entries = tuple(
        tuple(extraction.RED if rng.getrandbits(1) else extraction.BLUE for _ in range(t))
        for _ in range(d)
    )
    cm = extraction.ColoredMatrix(entries)
    block = extraction.monochromatic_submatrix(cm, n, s)
    ok = block is not None
    if block is not None:
        rows, cols, color = block
        ok = len(rows) == n and len(cols) == s and all(
            cm.entries[a][j] == color for a in rows for j in cols
        )
    return {
        "lemma": "monochromatic block",
        "d": d,
        "t": t,
        "n": n,
        "s": s,
        "found": block is not None,
        "regime": t >= 4 * s * s and d >= 4 * n * (1 << s),
        "check": "OK" if ok else "FAIL",
    }


def _lemma_levels(args, rng) -> dict:
    m = args.m
    depths = tuple(int(z) for z in args.Z.split(",")) if args.Z else ()
    leaf_set = trees.levels_leafset(m, depths)
    induced = trees.induced_subtree(m, leaf_set)
    ok = (
        len(leaf_set) == 1 << len(set(depths))
        and induced.perfect_height() == len(set(depths))
        and all(v[0] in set(depths) for v in induced.internal_vertices())
    )
    return {
        "lemma": "depth-set leaf selection",
        "m": m,
        "Z": sorted(set(depths)),
        "leaves": list(leaf_set),
        "regime": True,
        "check": "OK" if ok else "FAIL",
    }


_LEMMAS = {
    "3.1": _lemma_split,
    "3.2": _lemma_tree,
    "3.3": _lemma_perfect,
    "2.4": _lemma_block,
    "2.3": _lemma_levels,
}


def cmd_lemma(args) -> int:
    rng = random.Random(args.seed)
    runner = _LEMMAS[args.id]
    payload = runner(args, rng)
    payload["seed"] = args.seed
    payload["generator"] = GENERATOR
    _emit(payload, args.format)
    if payload["check"] != "OK":
        return EXIT_INTERNAL if payload.get("regime") else EXIT_SHORTFALL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monomat",
        description="Find monotone submatrices, build lower-bound witnesses, verify both.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0, help="rng seed (default 0)")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p_find = sub.add_parser("find", help="run the extraction pipeline on a matrix file")
    p_find.add_argument("input", help="matrix file")
    p_find.add_argument("--n", type=int, required=True, help="target submatrix size")
    p_find.add_argument("--kind", choices=("row", "full"), default="row")
    p_find.add_argument("--mode", choices=("best-effort", "guaranteed"), default="best-effort")
    p_find.add_argument("--budget", type=int, default=200_000, help="fallback search budget")
    p_find.add_argument("--output", help="write the witness JSON here")
    common(p_find)
    p_find.set_defaults(func=cmd_find)

    p_wit = sub.add_parser("witness", help="sample a verified lower-bound witness")
    for flag in ("--d", "--t", "--n", "--s"):
        p_wit.add_argument(flag, type=int, required=True)
    p_wit.add_argument("--max-attempts", type=int, default=1000)
    p_wit.add_argument("--budget", type=int, default=10**6, help="row sets checked by verify")
    p_wit.add_argument("--output-prefix", default="witness", help="prefix for output files")
    p_wit.add_argument("--materialize", action="store_true", help="also write the dense matrix")
    common(p_wit)
    p_wit.set_defaults(func=cmd_witness)

    p_ver = sub.add_parser("verify", help="check a witness or matrix file for n x n submatrices")
    p_ver.add_argument("input", help="witness, sign-matrix, or matrix file")
    p_ver.add_argument("--n", type=int, required=True)
    p_ver.add_argument("--structural", action="store_true", help="run only the structural check")
    p_ver.add_argument("--oracle", action="store_true", help="run only the brute-force check")
    p_ver.add_argument("--budget", type=int, default=10**6)
    common(p_ver)
    p_ver.set_defaults(func=cmd_verify)

    p_lem = sub.add_parser("lemma", help="demonstrate one constructive step on a random instance")
    p_lem.add_argument("id", choices=sorted(_LEMMAS))
    p_lem.add_argument("--d", type=int, default=1)
    p_lem.add_argument("--N", type=int, default=0)
    p_lem.add_argument("--m", type=int, default=3)
    p_lem.add_argument("--t", type=int, default=2)
    p_lem.add_argument("--n", type=int, default=3)
    p_lem.add_argument("--s", type=int, default=2)
    p_lem.add_argument("--Z", default="", help="comma-separated depth set for lemma 2.3")
    common(p_lem)
    p_lem.set_defaults(func=cmd_lemma)

    p_orc = sub.add_parser("oracle", help="exhaustive search for an n x n submatrix")
    p_orc.add_argument("input", help="matrix file")
    p_orc.add_argument("--n", type=int, required=True)
    p_orc.add_argument("--kind", choices=("row", "full"), default="row")
    p_orc.add_argument("--budget", type=int, default=10**7)
    common(p_orc)
    p_orc.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceededError as exc:
        print(f"search truncated: {exc}", file=sys.stderr)
        return EXIT_SHORTFALL
    except InternalCheckError as exc:
        print(f"internal guarantee breach: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except MonomatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

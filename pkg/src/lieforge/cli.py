"""Command-line surface: build, check, cohomology, decompose, report-table1.

Algebras travel as the canonical JSON structure-constant files written by
the core serializer, so build output re-reads and rewrites byte-identically.
Exit codes: 0 success, 1 a verification failed, 2 the input was invalid.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Mapping, Sequence

from .cohomology import (
    SizeExceeded,
    cohomology_full,
    cohomology_invariant,
    completeness_check,
    derivation_algebra,
)
from .core import (
    LieAlgebra,
    LieError,
    center,
    from_json_bytes,
    is_perfect,
    quasi_cyclic_check,
    to_json_bytes,
    verify_jacobi,
    weight_vectors,
)
from .families import (
    GNParams,
    InvalidParameters,
    JacobiFailure,
    PRESET_NAMES,
    TowerSpec,
    build_model_nilradical,
    build_sl2_gn,
    build_sl2_heisenberg,
    build_slm_quasicyclic,
    build_three_gen_nilradical,
    build_tower,
    preset,
)
from .sl2 import weights_to_multiplicities

CHECK_NAMES = ("jacobi", "center", "perfect", "derivations", "complete", "quasicyclic")


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise InvalidParameters(f"bad rational {text!r}: {e}") from None


def _parse_int_list(text: str) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InvalidParameters(f"bad integer list {text!r}") from None


def _load_algebra(path: str) -> LieAlgebra:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as e:
        raise InvalidParameters(f"cannot read {path}: {e}") from None
    try:
        return from_json_bytes(data)
    except (LieError, ValueError, KeyError, TypeError) as e:
        raise InvalidParameters(f"{path} is not an algebra file: {e}") from None


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _chain_summary(alg: LieAlgebra) -> str:
    parts = []
    prev = None
    for l in alg.labels:
        key = (l.namespace, l.level, l.copy)
        if key != prev:
            parts.append([key, 0])
            prev = key
        parts[-1][1] += 1
    def fmt(key, size):
        ns, level, copy = key
        bits = [ns]
        if level is not None:
            bits.append(str(level))
        if copy is not None:
            bits.append(f"#{copy}")
        return ".".join(bits) + f"[{size}]"
    return " ".join(fmt(key, size) for key, size in parts)


def _build_algebra(args) -> LieAlgebra:
    family = args.family
    if family == "preset":
        if not args.name:
            raise InvalidParameters("preset needs a name")
        params: dict = {}
        if args.n is not None:
            params["n"] = args.n
        if args.m is not None:
            params["m"] = args.m
        if args.r is not None:
            params["r"] = _parse_int_list(args.r)
        return preset(args.name, **params)
    if args.name:
        raise InvalidParameters(f"{family} takes no preset name")
    if family == "model":
        return build_model_nilradical(_need(args, "n"))
    if family == "threegen":
        return build_three_gen_nilradical(_need(args, "n"))
    if family == "gn":
        return build_sl2_gn(_gn_params(args))
    if family == "tower":
        if args.sides is None:
            raise InvalidParameters("tower needs --sides")
        sides = args.sides.replace(",", "")
        p = _gn_params(args)
        return build_tower(TowerSpec((p,) * (len(sides) + 1), sides))
    if family == "slm":
        return build_slm_quasicyclic(_need(args, "m"), _need(args, "n"))
    if family == "heisenberg":
        return build_sl2_heisenberg(_need(args, "n"))
    raise InvalidParameters(f"unknown family {family!r}")


def _need(args, name: str) -> int:
    val = getattr(args, name)
    if val is None:
        raise InvalidParameters(f"{args.family} needs --{name}")
    return val


def _gn_params(args) -> GNParams:
    if args.a is None or args.b is None:
        raise InvalidParameters(f"{args.family} needs --a and --b")
    return GNParams(_need(args, "n"), _parse_rational(args.a), _parse_rational(args.b))


def cmd_build(args) -> int:
    alg = _build_algebra(args)
    rep = verify_jacobi(alg)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(to_json_bytes(alg))
    print(f"dim {alg.dim}")
    print(f"chains {_chain_summary(alg)}")
    print(f"jacobi {'ok' if rep.ok else 'FAILED'} ({rep.checked} triples)")
    if args.out:
        print(f"wrote {args.out}")
    return 0 if rep.ok else 1


def _run_checks(alg: LieAlgebra, names: Sequence[str], modular: bool) -> tuple[dict, bool]:
    report: dict = {}
    ok = True
    for name in names:
        if name == "jacobi":
            rep = verify_jacobi(alg)
            entry: dict = {"ok": rep.ok, "checked": rep.checked}
            if not rep.ok:
                entry["failures"] = [
                    [i, j, k, {str(t): _ratstr(v) for t, v in res.items()}]
                    for i, j, k, res in rep.failures
                ]
                ok = False
            report[name] = entry
        elif name == "center":
            report[name] = center(alg).dim
        elif name == "perfect":
            report[name] = is_perfect(alg)
        elif name == "derivations":
            der = derivation_algebra(alg, modular=modular)
            obj = der.to_json_dict()
            obj["method"] = "modular" if modular and not der.outer_basis else "exact"
            report[name] = obj
        elif name == "complete":
            report[name] = completeness_check(alg)
        elif name == "quasicyclic":
            report[name] = quasi_cyclic_check(alg)
        else:
            raise InvalidParameters(f"unknown check {name!r}")
    return report, ok


def _ratstr(v) -> str:
    from .linalg import rat_str

    return rat_str(v)


def _matches(expected, actual) -> bool:
    if isinstance(expected, Mapping) and isinstance(actual, Mapping):
        return all(k in actual and _matches(v, actual[k]) for k, v in expected.items())
    return expected == actual


def cmd_check(args) -> int:
    alg = _load_algebra(args.file)
    names = [n for n in CHECK_NAMES if getattr(args, n)]
    if not names:
        raise InvalidParameters("no checks requested")
    report, ok = _run_checks(alg, names, args.modular)
    if args.expect:
        try:
            with open(args.expect) as fh:
                expected = json.load(fh)
        except (OSError, ValueError) as e:
            raise InvalidParameters(f"cannot read expectations: {e}") from None
        mismatches = {
            k: {"expected": v, "actual": report.get(k)}
            for k, v in expected.items()
            if not _matches(v, report.get(k))
        }
        if mismatches:
            report["mismatches"] = mismatches
            ok = False
    _emit(report, args.out)
    return 0 if ok else 1


def cmd_cohomology(args) -> int:
    alg = _load_algebra(args.file)
    if args.degree not in (0, 1, 2):
        raise InvalidParameters("degree must be 0, 1, or 2")
    if args.method == "invariant":
        obj = cohomology_invariant(alg, args.degree).to_json_dict()
    elif args.method == "full":
        obj = cohomology_full(alg, args.degree).to_json_dict()
    elif args.method == "both":
        inv = cohomology_invariant(alg, args.degree)
        full = cohomology_full(alg, args.degree)
        obj = {"invariant": inv.to_json_dict(), "full": full.to_json_dict()}
        if inv.dim_cohomology != full.dim_cohomology:
            obj["agreement"] = False
            _emit(obj, args.out)
            return 1
        obj["agreement"] = True
    else:
        raise InvalidParameters(f"unknown method {args.method!r}")
    _emit(obj, args.out)
    return 0


def cmd_decompose(args) -> int:
    alg = _load_algebra(args.file)
    levi = sorted(
        {l.namespace for l in alg.labels if l.namespace.startswith("sl")}
    )
    if not levi:
        raise InvalidParameters("no semisimple part among the labels")
    if levi != ["sl2"]:
        raise InvalidParameters("decomposition is provided for the rank-one part")
    wts = weight_vectors(alg)
    nil_weights = [
        int(wts[i][0])
        for i, l in enumerate(alg.labels)
        if not l.namespace.startswith("sl")
    ]
    obj = {
        "levi": "sl2",
        "nilradical": {
            str(k): v for k, v in weights_to_multiplicities(nil_weights).items()
        },
        "adjoint": {
            str(k): v
            for k, v in weights_to_multiplicities(
                [int(w[0]) for w in wts]
            ).items()
        },
    }
    _emit(obj, args.out)
    return 0


TABLE1_CELLS = (
    ("center = 0", "perfect", "angelopoulos_35"),
    ("center = 0", "non-perfect", "example_4_7"),
    ("center != 0", "perfect", "theorem_4_7(n=6)"),
    ("center != 0", "perfect", "gn(5,1,1)"),
    ("center != 0", "non-perfect", None),
)


def _table1_algebra(tag: str) -> LieAlgebra:
    if tag == "angelopoulos_35":
        return preset("angelopoulos_35")
    if tag == "example_4_7":
        return preset("example_4_7")
    if tag == "theorem_4_7(n=6)":
        return preset("theorem_4_7", n=6)
    if tag == "gn(5,1,1)":
        return build_sl2_gn(GNParams(5, 1, 1))
    raise InvalidParameters(f"unknown representative {tag!r}")


def cmd_report_table1(args) -> int:
    rows = []
    all_ok = True
    for center_claim, perfect_claim, tag in TABLE1_CELLS:
        if tag is None:
            rows.append((center_claim, perfect_claim, "-", "Does not exist", ""))
            continue
        alg = _table1_algebra(tag)
        checks = {
            "center": (center(alg).dim == 0) == (center_claim == "center = 0"),
            "perfect": is_perfect(alg) == (perfect_claim == "perfect"),
            "der=inn": derivation_algebra(alg).dim_outer == 0,
        }
        ok = all(checks.values())
        all_ok = all_ok and ok
        verdict = "pass" if ok else "FAIL " + ",".join(
            k for k, v in checks.items() if not v
        )
        rows.append((center_claim, perfect_claim, tag, f"dim {alg.dim}", verdict))
    widths = [max(len(r[i]) for r in rows) for i in range(5)]
    header = ("center", "derived", "representative", "result", "verdict")
    widths = [max(w, len(h)) for w, h in zip(widths, header)]
    def line(cells):
        return "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    print(line(header))
    print(line(tuple("-" * w for w in widths)))
    for r in rows:
        print(line(r))
    return 0 if all_ok else 1


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lieforge",
        description="exact Lie-algebra construction, verification, and cohomology",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct a named algebra and write it")
    b.add_argument(
        "family",
        choices=["model", "threegen", "gn", "tower", "slm", "heisenberg", "preset"],
    )
    b.add_argument("name", nargs="?", help="preset name when family is preset")
    b.add_argument("--n", type=int)
    b.add_argument("--m", type=int)
    b.add_argument("--a", help="rational p/q")
    b.add_argument("--b", help="rational p/q")
    b.add_argument("--sides", help="tower orientations, e.g. r or l,r")
    b.add_argument("--r", help="comma list of integers for presets")
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("check", help="run predicates against an algebra file")
    c.add_argument("file")
    for name in CHECK_NAMES:
        c.add_argument(f"--{name}", action="store_true")
    c.add_argument("--exact", action="store_true", help="exact kernels (default)")
    c.add_argument("--modular", action="store_true", help="certified modular fast path")
    c.add_argument("--expect", help="JSON file of expected check values")
    c.add_argument("--out")
    c.set_defaults(func=cmd_check)

    h = sub.add_parser("cohomology", help="adjoint cohomology of an algebra file")
    h.add_argument("file")
    h.add_argument("--degree", type=int, required=True)
    h.add_argument("--method", choices=["invariant", "full", "both"], default="invariant")
    h.add_argument("--out")
    h.set_defaults(func=cmd_cohomology)

    d = sub.add_parser("decompose", help="module decomposition under the levi part")
    d.add_argument("file")
    d.add_argument("--out")
    d.set_defaults(func=cmd_decompose)

    t = sub.add_parser("report-table1", help="classification table with verification")
    t.set_defaults(func=cmd_report_table1)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    if getattr(args, "exact", False) and getattr(args, "modular", False):
        print("error: --exact and --modular are mutually exclusive", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (InvalidParameters, SizeExceeded) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except JacobiFailure as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except LieError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

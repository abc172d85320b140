"""Command-line surface: groupoid operators, torus motives, spectrum tests,
and the built-in operator fixtures, with text and JSON output.

Examples::

    inertia gpd --group D4 --projections
    inertia gpd --group S3 --inertia-r 2
    inertia torus --r 2 --gens "(1 2)"
    inertia spectrum --poly "q^2*(q-1)" --family full
    inertia fixture --name bgl2 --project BGL2

Every command takes ``--format text|json`` (or the ``--json`` shorthand);
JSON is emitted with sorted keys so re-serialization is byte-identical.
``INERTIA_ORDER_CAP`` and ``INERTIA_FLAG_CAP`` override the enumeration caps.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import re
import sys

from .errors import InertiaError
from .fixtures import FIXTURE_NAMES, fixture, fixture_notes
from .groupoids import (
    class_of,
    element_to_json,
    format_element,
    inertia,
    inertia_r,
    iterated_inertia,
    projection,
)
from .groups import (
    FiniteGroup,
    cyclic_group,
    dihedral_group,
    abelian_group,
    group_from_cayley_table,
    group_from_permutation_text,
    quaternion_group,
    symmetric_group,
    trivial_group,
)
from .linalg import LabeledVector, eigen_components, eigen_decompose, filtration_order, is_triangular
from .perms import parse_generators
from .qfield import parse_polynomial, spectrum_decompose
from .torus import PermAction, orbit_partition, torus_motive


def _order_cap() -> int | None:
    raw = os.environ.get("INERTIA_ORDER_CAP")
    return int(raw) if raw else None


def _flag_cap() -> int | None:
    raw = os.environ.get("INERTIA_FLAG_CAP")
    return int(raw) if raw else None


_BUILTIN_RE = {
    "cyclic": re.compile(r"Z(\d+)$"),
    "dihedral": re.compile(r"D(\d+)$"),
    "symmetric": re.compile(r"S(\d+)$"),
    "product": re.compile(r"Z\d+(\s*x\s*Z\d+)+$"),
}


def parse_group_spec(spec: str, one_based: bool = False) -> FiniteGroup:
    """builtin name | perm:"(0 1 2),(0 1)" | cayley:path.csv"""
    spec = spec.strip()
    if spec.startswith("perm:"):
        return group_from_permutation_text(spec[5:], one_based=one_based, order_cap=_order_cap())
    if spec.startswith("cayley:"):
        path = spec[7:]
        with open(path, newline="", encoding="utf-8") as fh:
            table = [[int(cell) for cell in row] for row in csv.reader(fh) if row]
        return group_from_cayley_table(table)
    if spec == "trivial":
        return trivial_group()
    if spec == "Q8":
        return quaternion_group()
    if _BUILTIN_RE["product"].match(spec):
        orders = [int(part.strip()[1:]) for part in spec.split("x")]
        return abelian_group(orders)
    m = _BUILTIN_RE["cyclic"].match(spec)
    if m:
        return cyclic_group(int(m.group(1)))
    m = _BUILTIN_RE["dihedral"].match(spec)
    if m:
        return dihedral_group(int(m.group(1)))
    m = _BUILTIN_RE["symmetric"].match(spec)
    if m:
        n = int(m.group(1))
        if n > 6:
            raise ValueError("builtin symmetric groups go up to S6")
        return symmetric_group(n)
    raise ValueError(
        f"unknown group spec {spec!r}; use a builtin name (trivial, Zn, Dn, Sn, "
        "Q8, Za x Zb), perm:\"...\", or cayley:FILE"
    )


def _emit_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# subcommands


def _run_gpd(args) -> int:
    group = parse_group_spec(args.group, one_based=args.one_based)
    x = class_of(group)
    label = next(iter(x.terms)).label
    if args.projections:
        rows = []
        for k in range(0, group.order + 1):
            pk = projection(x, k)
            if not pk.is_zero():
                rows.append((k, pk))
        if args.format == "json":
            payload = {
                "group": label,
                "action": "projections",
                "projections": [
                    {"k": k, "eigenvalue": k, "element": element_to_json(pk)}
                    for k, pk in rows
                ],
            }
            print(_emit_json(payload))
        else:
            for k, pk in rows:
                print(f"pi_{k} (eigenvalue {k}): {format_element(pk)}")
        return 0
    if args.inertia:
        action, result = "inertia", inertia(x)
        extra = {}
    elif args.inertia_r is not None:
        action, result = "inertia_r", inertia_r(x, args.inertia_r)
        extra = {"r": args.inertia_r}
    else:
        action, result = "iterated", iterated_inertia(x, args.iterated)
        extra = {"k": args.iterated}
    if args.format == "json":
        payload = {"group": label, "action": action, "result": element_to_json(result)}
        payload.update(extra)
        print(_emit_json(payload))
    else:
        print(format_element(result))
    return 0


def _run_torus(args) -> int:
    gens = parse_generators(args.gens, degree=args.r, one_based=True) if args.gens.strip() else []
    action = PermAction(args.r, gens)
    motive = torus_motive(action, cap=_flag_cap())
    twist = orbit_partition(action)
    if args.format == "json":
        payload = {
            "lambda": [int(c) for c in twist.display().strip("()").split(",")] if twist.counts else [],
            "base_coefficient": str(motive.base_coefficient),
            "cover_terms": [
                {
                    "stabilizer_order": len(term.stabilizer),
                    "stabilizer_elements": [h.cycle_string(one_based=True) for h in term.stabilizer],
                    "coefficient": str(term.coefficient),
                }
                for term in motive.cover_terms
            ],
        }
        print(_emit_json(payload))
        return 0
    print(f"twist type: {twist.display()}")
    print(f"orbit polynomial: {motive.base_coefficient}")
    pieces = [f"({motive.base_coefficient})*[X]"]
    for i, term in enumerate(motive.cover_terms, start=1):
        pieces.append(f"({term.coefficient})*[Xbar/H{i}]")
    print("motive: " + " + ".join(pieces))
    for i, term in enumerate(motive.cover_terms, start=1):
        elements = " ".join(h.cycle_string(one_based=True) for h in term.stabilizer)
        print(f"  H{i}: order {len(term.stabilizer)} {{ {elements} }}")
    return 0


def _run_spectrum(args) -> int:
    poly = parse_polynomial(args.poly)
    decomp = spectrum_decompose(poly, family=args.family)
    if args.format == "json":
        payload = {
            "family": args.family,
            "polynomial": str(poly),
            "member": decomp is not None,
            "n": decomp.n if decomp else None,
            "u": decomp.u if decomp else None,
            "r_list": list(decomp.factors) if decomp else None,
        }
        print(_emit_json(payload))
        return 0
    if decomp is None:
        print("not in spectrum")
    else:
        factors = ", ".join(str(r) for r in decomp.factors)
        print(f"member of {args.family} spectrum: n={decomp.n}, u={decomp.u}, factors=[{factors}]")
    return 0


def _run_fixture(args) -> int:
    matrix = fixture(args.name)
    notes = fixture_notes(args.name)
    if args.eigen:
        diag = matrix.diagonal()
        distinct: list[str] = []
        for label in matrix.basis:
            text = str(diag[label])
            if text not in distinct:
                distinct.append(text)
        if args.format == "json":
            payload = {
                "name": args.name,
                "basis": list(matrix.basis),
                "diagonal": {label: str(diag[label]) for label in matrix.basis},
                "distinct_eigenvalues": distinct,
                "filtration": {
                    label: [rank.central_rank, rank.split_degree, list(rank.twist.counts)]
                    for label, rank in (matrix.filtration or {}).items()
                },
                "notes": notes,
            }
            print(_emit_json(payload))
            return 0
        print(f"fixture {args.name}: {len(matrix.basis)} classes, {len(distinct)} distinct eigenvalues")
        header = f"{'class':<12} {'rank':<5} {'deg':<4} {'twist':<10} eigenvalue"
        print(header)
        for label in matrix.basis:
            rank = (matrix.filtration or {}).get(label)
            rk = str(rank.central_rank) if rank else "-"
            dg = str(rank.split_degree) if rank else "-"
            tw = rank.twist.display() if rank else "-"
            print(f"{label:<12} {rk:<5} {dg:<4} {tw:<10} {diag[label]}")
        for note in notes:
            print(f"note: {note}")
        return 0
    if args.project is not None:
        if args.project not in matrix.basis:
            raise ValueError(f"label {args.project!r} not in fixture basis {list(matrix.basis)}")
        components = eigen_components(matrix, LabeledVector.unit(args.project))
        if args.format == "json":
            payload = {
                "name": args.name,
                "vector": args.project,
                "components": [
                    {
                        "eigenvalue": str(lam),
                        "entries": {label: str(value) for label, value in comp.items()},
                    }
                    for lam, comp in components
                ],
            }
            print(_emit_json(payload))
            return 0
        for lam, comp in components:
            print(f"{lam}: {comp}")
        return 0
    # --check
    checks: list[tuple[str, bool]] = []
    order = filtration_order(matrix)
    checks.append(("triangular in filtration order", is_triangular(matrix, order)))
    checks.append(("triangular in stored basis order", is_triangular(matrix, matrix.basis)))
    diag_ok = all(
        spectrum_decompose(value.as_polynomial(), "full") is not None
        for value in matrix.diagonal().values()
    )
    checks.append(("diagonal entries in the full spectrum family", diag_ok))
    if not matrix.partial:
        try:
            eigen_decompose(matrix)
            checks.append(("eigenprojector identities", True))
        except InertiaError:
            checks.append(("eigenprojector identities", False))
    passed = all(ok for _, ok in checks)
    if args.format == "json":
        payload = {
            "name": args.name,
            "checks": [{"name": name, "passed": ok} for name, ok in checks],
            "passed": passed,
        }
        print(_emit_json(payload))
    else:
        for name, ok in checks:
            print(f"{'ok' if ok else 'FAIL'}: {name}")
    return 0 if passed else 1


# ---------------------------------------------------------------------------
# argument parsing


def _add_format_args(sub):
    sub.add_argument("--format", choices=["text", "json"], default="text")
    sub.add_argument("--json", action="store_true", help="shorthand for --format json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="inertia",
        description="Exact inertia-operator calculus on finite groupoids and Q(q)-modules.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    gpd = subs.add_parser("gpd", help="groupoid operators on a class [BG]")
    gpd.add_argument("--group", required=True, help='builtin name, perm:"...", or cayley:FILE')
    gpd.add_argument("--one-based", action="store_true", help="1-based points in perm grammar")
    action = gpd.add_mutually_exclusive_group(required=True)
    action.add_argument("--inertia", action="store_true")
    action.add_argument("--inertia-r", type=int, metavar="R")
    action.add_argument("--iterated", type=int, metavar="K")
    action.add_argument("--projections", action="store_true")
    _add_format_args(gpd)

    torus = subs.add_parser("torus", help="motive of a quasi-split torus")
    torus.add_argument("--r", type=int, required=True, help="torus rank")
    torus.add_argument("--gens", default="", help='twist generators, e.g. "(1 2 3),(1 2)"')
    _add_format_args(torus)

    spectrum = subs.add_parser("spectrum", help="eigenvalue family membership")
    spectrum.add_argument("--poly", required=True)
    spectrum.add_argument("--family", choices=["full", "semisimple", "unipotent"], default="full")
    _add_format_args(spectrum)

    fix = subs.add_parser("fixture", help="built-in operator matrices")
    fix.add_argument("--name", required=True, choices=list(FIXTURE_NAMES))
    action = fix.add_mutually_exclusive_group(required=True)
    action.add_argument("--eigen", action="store_true")
    action.add_argument("--project", metavar="LABEL")
    action.add_argument("--check", action="store_true")
    _add_format_args(fix)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "json", False):
        args.format = "json"
    runners = {
        "gpd": _run_gpd,
        "torus": _run_torus,
        "spectrum": _run_spectrum,
        "fixture": _run_fixture,
    }
    try:
        return runners[args.command](args)
    except (InertiaError, ValueError, OSError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line surface.

Ten subcommands covering the library: tuple-space homology for both
simplicial models, group-ring invariants, torus-extension lattice analysis,
single-commutator coverage, cocycle clutching, the coset-poset oracle, and
the full acceptance suite.  Output is a human-readable table by default or
a deterministic JSON document with --output machine; --fixtures pins the
machine document to a file and flags any later drift.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .cocycles import clutch
from .cosetposet import CosetPoset, abelian_subgroups, coset_poset_homology
from .errors import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    MathInvariantError,
    ValidationError,
)
from .fileio import parse_cocycle, parse_extension, parse_group
from .groupring import coinvariants, moore_h2, pi2_e2_connected
from .groups import abelianization
from .intlinalg import AbelianGroupInvariants, IntMatrix, Lattice
from .simplicial import build_c, build_e, homology
from .torus import (
    commutator_lattices,
    pi1_split,
    psi_star,
    single_commutator_cover,
    torus_pi1_lattice,
)

OUTPUT_VERSION = 1


# ---------------------------------------------------------------------------
# value rendering


def _element_doc(E, el) -> dict:
    return {"t": [str(Fraction(x)) for x in el.t], "f": E.F.name_of(el.f)}


def _machine_value(v):
    if isinstance(v, AbelianGroupInvariants):
        return {"free_rank": v.free_rank, "invariant_factors": list(v.torsion)}
    if isinstance(v, Lattice):
        return {"ambient": v.ambient, "basis_rows": [list(r) for r in v.basis_rows()]}
    if isinstance(v, IntMatrix):
        return {"rows": v.to_rows()}
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return {k: _machine_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_machine_value(x) for x in v]
    return v


def _text_value(v) -> str:
    if isinstance(v, AbelianGroupInvariants):
        return str(v)
    if isinstance(v, Lattice):
        rows = v.basis_rows()
        body = ", ".join("(" + ", ".join(str(x) for x in r) + ")" for r in rows)
        return f"span{{{body}}} in Z^{v.ambient}" if rows else f"0 in Z^{v.ambient}"
    if isinstance(v, IntMatrix):
        return str(v.to_rows())
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_text_value(x)}" for k, x in v.items()) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_text_value(x) for x in v) + "]"
    if v is None:
        return "-"
    return str(v)


def _row(name: str, value, ref: str) -> dict:
    return {"name": name, "value": value, "ref": ref}


# ---------------------------------------------------------------------------
# subcommand handlers; each returns (rows, inputs, exit_code)


def _homology_rows(S, max_dim: int, counts_ref: str, hom_ref: str) -> list:
    rows = [
        _row("level-sizes", [S.level_size(k) for k in range(max_dim + 2)], counts_ref),
        _row(
            "nondegenerate-sizes",
            [len(S.nondegenerate(k)) for k in range(max_dim + 2)],
            counts_ref,
        ),
        _row("H0", homology(S, 0), hom_ref),
        _row("H~0", homology(S, 0, reduced=True), hom_ref),
    ]
    for k in range(1, max_dim + 1):
        rows.append(_row(f"H{k}", homology(S, k), hom_ref))
    return rows


def cmd_homology_b2g(args):
    G = parse_group(args.group)
    S = build_c(G, args.max_dim + 1, budget=args.budget)
    rows = _homology_rows(
        S,
        args.max_dim,
        "commuting-tuple-level-counts",
        "commuting-tuple-space-homology",
    )
    return rows, {"group": args.group, "max_dim": args.max_dim}, 0


def cmd_homology_e2g(args):
    G = parse_group(args.group)
    S = build_e(G, args.max_dim + 1, budget=args.budget)
    rows = _homology_rows(
        S, args.max_dim, "total-space-level-counts", "total-space-homology"
    )
    return rows, {"group": args.group, "max_dim": args.max_dim}, 0


def cmd_coinvariants(args):
    G = parse_group(args.group)
    co = coinvariants(G)
    ab = AbelianGroupInvariants(0, tuple(abelianization(G)))
    rows = [
        _row("coinvariants", co, "augmentation-ideal-coinvariants"),
        _row("abelianization", ab, "abelianization-invariants"),
        _row("agrees", co == ab, "coinvariants-abelianization-agreement"),
    ]
    return rows, {"group": args.group}, 0


def cmd_moore_h2(args):
    G = parse_group(args.group)
    h2 = moore_h2(G)
    co = coinvariants(G)
    rows = [
        _row("moore-h2", h2, "moore-complex-middle-homology"),
        _row("coinvariants", co, "augmentation-ideal-coinvariants"),
        _row("agrees", h2 == co, "moore-h2-coinvariants-agreement"),
    ]
    return rows, {"group": args.group}, 0


def cmd_pi2_e2(args):
    try:
        factors = [int(part) for part in args.pi1.split(",") if part.strip()]
    except ValueError:
        raise ValidationError(f"--pi1 expects comma-separated integers, got {args.pi1!r}")
    result = pi2_e2_connected(factors)
    rows = [_row("pi2", result, "pi2-of-connected-total-space")]
    return rows, {"pi1": factors}, 0


def cmd_torus_analyze(args):
    E = parse_extension(args.ext)
    rows = [
        _row("rank", E.rank, "extension-shape"),
        _row("finite-order", E.F.order, "extension-shape"),
        _row("split", E.is_split, "central-quotient-structure"),
        _row(
            "torus-quotient-elements",
            [_element_doc(E, E.element(t, f)) for t, f in E.z_elements],
            "central-quotient-structure",
        ),
    ]
    for q in range(E.F.order):
        name = E.F.name_of(q)
        rows.append(_row(f"psi[{name}]", psi_star(E, q), "commutation-action-on-pi1"))
    lattice_sum, subtorus = commutator_lattices(E)
    sub, comp = pi1_split(E)
    scale, pi1 = torus_pi1_lattice(E)
    rows += [
        _row("commutator-image-sum", lattice_sum, "commutator-image-lattice"),
        _row("commutator-subtorus", subtorus, "commutator-subtorus-saturation"),
        _row("pi1-subtorus-summand", sub, "pi1-splitting"),
        _row("pi1-complement", comp, "pi1-splitting"),
        _row("pi1-denominator", scale, "quotient-torus-pi1"),
        _row("pi1-lattice-times-denominator", pi1, "quotient-torus-pi1"),
    ]
    return rows, {"ext": args.ext}, 0


def cmd_single_comm(args):
    E = parse_extension(args.ext)
    report = single_commutator_cover(
        E, args.denominator, search_denominator=args.search_denominator, budget=args.budget
    )
    rows = [
        _row("covered", report.covered, "single-commutator-cover"),
        _row("denominator", report.denominator, "single-commutator-cover"),
        _row("search-denominator", report.search_denominator, "single-commutator-cover"),
        _row("target-count", len(report.targets), "single-commutator-cover"),
        _row(
            "witnesses",
            [
                {
                    "target": _element_doc(E, t),
                    "x": _element_doc(E, x),
                    "y": _element_doc(E, y),
                }
                for t, x, y in report.witnesses
            ],
            "single-commutator-witnesses",
        ),
        _row(
            "missing",
            [_element_doc(E, t) for t in report.missing],
            "single-commutator-witnesses",
        ),
    ]
    return rows, {"ext": args.ext, "denominator": args.denominator}, 0


def cmd_clutch(args):
    E, cocycle = parse_cocycle(args.cocycle)
    if args.invert:
        cocycle = cocycle.invert()
    rows = []
    for check in cocycle.validate():
        rows.append(
            _row(
                f"check-{check['check']}-{check['location']}",
                check["ok"],
                "cocycle-validation",
            )
        )
    result = clutch(cocycle)
    winding = None if result.winding is None else [int(x) for x in result.winding]
    rows += [
        _row("winding", winding, "clutching-loop-winding"),
        _row("marker", result.marker, "identity-component-marker"),
    ]
    return rows, {"cocycle": args.cocycle, "invert": bool(args.invert)}, 0


def cmd_coset_poset(args):
    G = parse_group(args.group)
    subgroups = abelian_subgroups(G, budget=args.budget)
    poset = CosetPoset(G, budget=args.budget)
    vertices, edges = poset.size()
    rows = [
        _row("abelian-subgroups", len(subgroups), "abelian-subgroup-count"),
        _row("vertices", vertices, "coset-poset-size"),
        _row("edges", edges, "coset-poset-size"),
    ]
    for i, h in enumerate(coset_poset_homology(G, top=args.max_dim, budget=args.budget)):
        rows.append(_row(f"H~{i}", h, "coset-poset-homology"))
    return rows, {"group": args.group, "max_dim": args.max_dim}, 0


def cmd_verify_all(args):
    from .acceptance import run_all

    results = run_all(budget=args.budget)
    rows = []
    failed = 0
    for number, name, passed, detail in results:
        rows.append(
            _row(
                f"criterion-{number:02d}",
                {"name": name, "passed": passed, "detail": detail},
                "acceptance-criterion",
            )
        )
        if not passed:
            failed += 1
    rows.append(_row("all-passed", failed == 0, "acceptance-summary"))
    return rows, {}, 0 if failed == 0 else 4


# ---------------------------------------------------------------------------
# parser and entry point


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="commclass",
        description="Homology of commuting-tuple spaces, torus-extension "
        "commutator lattices, and clutching windings of commutative cocycles.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--output", choices=("text", "machine"), default="text")
        p.add_argument("--fixtures", metavar="PATH", default=None)
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    def group_cmd(name, handler, help_text, with_dim=False, dim_default=2):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--group", required=True, help="catalog name or spec file")
        if with_dim:
            p.add_argument("--max-dim", type=int, default=dim_default)
        common(p)
        p.set_defaults(handler=handler)
        return p

    group_cmd(
        "homology-b2g",
        cmd_homology_b2g,
        "homology of the commuting-tuple simplicial space",
        with_dim=True,
    )
    group_cmd(
        "homology-e2g",
        cmd_homology_e2g,
        "homology of the homogeneous total-space model",
        with_dim=True,
    )
    group_cmd("coinvariants", cmd_coinvariants, "augmentation-ideal coinvariants")
    group_cmd("moore-h2", cmd_moore_h2, "middle homology of the Moore complex")
    group_cmd(
        "coset-poset",
        cmd_coset_poset,
        "reduced homology of the coset poset of abelian subgroups",
        with_dim=True,
    )

    p = sub.add_parser("pi2-e2", help="pi2 of the connected total-space model")
    p.add_argument("--pi1", required=True, help="invariant factors, e.g. 2,2")
    common(p)
    p.set_defaults(handler=cmd_pi2_e2)

    p = sub.add_parser("torus-analyze", help="commutator lattice analysis of a torus extension")
    p.add_argument("--ext", required=True, help="catalog name or spec file")
    common(p)
    p.set_defaults(handler=cmd_torus_analyze)

    p = sub.add_parser("single-comm", help="single-commutator coverage of the commutator subtorus")
    p.add_argument("--ext", required=True, help="catalog name or spec file")
    p.add_argument("--denominator", type=int, required=True)
    p.add_argument("--search-denominator", type=int, default=None)
    common(p)
    p.set_defaults(handler=cmd_single_comm)

    p = sub.add_parser("clutch", help="clutching winding of a patch cocycle")
    p.add_argument("--cocycle", required=True, help="cocycle spec file")
    p.add_argument("--invert", action="store_true", help="invert pointwise before clutching")
    common(p)
    p.set_defaults(handler=cmd_clutch)

    p = sub.add_parser("verify-all", help="run the full acceptance suite")
    common(p)
    p.set_defaults(handler=cmd_verify_all)

    return top


def _machine_doc(command: str, inputs: dict, rows: list) -> str:
    doc = {
        "version": OUTPUT_VERSION,
        "command": command,
        "inputs": _machine_value(inputs),
        "results": [
            {"name": r["name"], "value": _machine_value(r["value"]), "ref": r["ref"]}
            for r in rows
        ],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _print_text(rows) -> None:
    width = max((len(r["name"]) for r in rows), default=0)
    for r in rows:
        value = r["value"]
        if isinstance(value, dict) and "passed" in value and "name" in value:
            status = "PASS" if value["passed"] else "FAIL"
            print(f"{r['name']:<{width}}  {status}  {value['name']}: {value['detail']}")
        else:
            print(f"{r['name']:<{width}}  {_text_value(value)}")


def _handle_fixtures(path: str, machine_text: str) -> tuple:
    try:
        with open(path) as fh:
            pinned = fh.read()
    except FileNotFoundError:
        with open(path, "w") as fh:
            fh.write(machine_text)
        return "pinned", 0
    if pinned == machine_text:
        return "match", 0
    pinned_rows = {r["name"]: r["value"] for r in json.loads(pinned).get("results", [])}
    new_rows = {r["name"]: r["value"] for r in json.loads(machine_text)["results"]}
    drifted = sorted(
        set(pinned_rows) ^ set(new_rows)
        | {k for k in set(pinned_rows) & set(new_rows) if pinned_rows[k] != new_rows[k]}
    )
    return "drift: " + ", ".join(drifted), 4


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        rows, inputs, code = args.handler(args)
    except BudgetExceededError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except MathInvariantError as e:
        print(f"error: {e}", file=sys.stderr)
        return 4
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2

    machine_text = _machine_doc(args.command, inputs, rows)
    if args.output == "machine":
        sys.stdout.write(machine_text)
    else:
        _print_text(rows)

    if args.fixtures:
        status, fix_code = _handle_fixtures(args.fixtures, machine_text)
        print(f"fixtures: {status}", file=sys.stderr)
        code = max(code, fix_code)
    return code


if __name__ == "__main__":
    sys.exit(main())

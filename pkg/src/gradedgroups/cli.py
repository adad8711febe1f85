"""Command-line front end.

    gradedgroups info 0 2
    gradedgroups info --signature 1,Z
    gradedgroups table --signature 1,1 --format json
    gradedgroups periodic --max-n 8 --algebra
    gradedgroups characters 2
    gradedgroups central --signature 1,1
    gradedgroups constants --signature Z,Z --format csv

Exit codes: 0 success, 2 invalid arguments, 3 size cap exceeded.
"""

import argparse
import csv
import io
import json
import sys
from importlib import resources

from . import algebra, classify
from .clifford_group import (Signature, SignatureError, VeeElement, VeeGroup, alpha_is_inner,
                             automorphism_group_order, center, class_count, commutator_subgroup,
                             display_order, even_part, hyperoctahedral_order)
from .graded import SizeLimitError

EXIT_OK, EXIT_USAGE, EXIT_CAP = 0, 2, 3

CAPS = {"info": 12, "table": 8, "periodic": 64, "characters": 10, "central": 8, "constants": 10}
AUT_CAP = 3  # full automorphism search
BN_CAP = 6


class UsageError(Exception):
    pass


def load_schema(name):
    """The JSON schema shipped for command ``name`` (or ``vee_element``)."""
    text = resources.files("gradedgroups").joinpath("schemas", f"{name}.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def _signature(args):
    if getattr(args, "signature", None) is not None:
        if args.pq:
            raise UsageError("give either p q or --signature, not both")
        try:
            return Signature.parse(args.signature)
        except SignatureError as exc:
            raise UsageError(str(exc))
    if args.pq and len(args.pq) == 2:
        p, q = args.pq
        if p < 0 or q < 0:
            raise UsageError("p and q must be non-negative")
        return Signature.from_pq(p, q)
    raise UsageError("a signature is required: p q or --signature S")


def _cap(cmd, n):
    if n > CAPS[cmd]:
        raise SizeLimitError(f"{cmd}: n = {n} exceeds the cap {CAPS[cmd]}")


def _names(codes, n):
    return [VeeElement.from_code(c).render(n) for c in codes]


def info_report(sig):
    n = sig.n
    p, q = sig.pq
    elems, tag = center(sig)
    comm = commutator_subgroup(sig)
    rep = {
        "signature": str(sig),
        "n": n,
        "p": p,
        "q": q,
        "order": 2 << n,
        "center": [x.render(n) for x in sorted(elems, key=lambda x: x.code)],
        "center_tag": tag,
        "class_count": class_count(sig),
        "commutator_subgroup": _names(comm, n),
        "abelian": len(comm) == 1,
        "normal_form": classify.normal_form(p, q).label,
        "alpha_inner": alpha_is_inner(sig),
    }
    if n >= 2:
        ev = even_part(sig)
        rep["even_part"] = str(ev)
        rep["even_part_normal_form"] = classify.normal_form(*ev.pq).label
    if sig.is_uniform():
        if n <= AUT_CAP:
            rep["automorphism_order"] = automorphism_group_order(sig)
        if n <= BN_CAP:
            rep["hyperoctahedral_order"] = hyperoctahedral_order(sig)
    return rep


def cmd_info(args):
    sig = _signature(args)
    _cap("info", sig.n)
    rep = info_report(sig)
    fmt = args.format
    if fmt == "json":
        return json.dumps(rep, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for k in sorted(rep):
            v = rep[k]
            w.writerow([k, " ".join(map(str, v)) if isinstance(v, list) else v])
        return buf.getvalue()
    lines = []
    for k, v in rep.items():
        if isinstance(v, list):
            v = "{" + ", ".join(map(str, v)) + "}"
        lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def multiplication_table(sig):
    """``(header, rows)`` with element names in display order."""
    G = VeeGroup(sig)
    order = display_order(sig.n)
    t = G.table
    header = _names(order, sig.n)
    rows = [[VeeElement.from_code(t[a, b]).render(sig.n) for b in order] for a in order]
    return header, rows, order, t


def cmd_table(args):
    sig = _signature(args)
    _cap("table", sig.n)
    header, rows, order, t = multiplication_table(sig)
    if args.format == "json":
        out = {
            "signature": str(sig),
            "elements": [VeeElement.from_code(c).to_json() for c in order],
            "table": [[VeeElement.from_code(t[a, b]).to_json() for b in order] for a in order],
        }
        return json.dumps(out, sort_keys=True) + "\n"
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + header)
        for h, r in zip(header, rows):
            w.writerow([h] + r)
        return buf.getvalue()
    width = max(len(x) for x in header) + 2
    lines = [" " * width + "".join(f"{h:>{width}}" for h in header)]
    for h, r in zip(header, rows):
        lines.append(f"{h:>{width}}" + "".join(f"{c:>{width}}" for c in r))
    return "\n".join(lines) + "\n"


def cmd_periodic(args):
    if args.max_n < 0:
        raise UsageError("--max-n must be non-negative")
    _cap("periodic", args.max_n)
    rows = classify.periodic_table(args.max_n)
    if args.format == "json":
        return classify.render_json(rows, algebra=args.algebra)
    if args.format == "csv":
        return classify.render_csv(rows, algebra=args.algebra)
    out = classify.render_text(rows)
    if args.algebra:
        out += "\n" + classify.render_text(rows, algebra=True)
    return out


def cmd_characters(args):
    n = args.n
    if n < 0:
        raise UsageError("n must be non-negative")
    _cap("characters", n)
    table = algebra.character_table(n)
    if args.format == "json":
        subsets = [VeeElement(0, A).to_json()["A"] for A in range(1 << n)]
        return json.dumps({"n": n, "subsets": subsets, "matrix": table}, sort_keys=True) + "\n"
    if args.format == "csv":
        return algebra.characters_csv(n)
    return "\n".join(" ".join(f"{v:>2}" for v in row) for row in table) + "\n"


def cmd_central(args):
    sig = _signature(args)
    _cap("central", sig.n)
    basis = algebra.central_function_basis(sig)
    G = basis[0][1].group
    if args.format == "json":
        items = []
        for name, f in basis:
            coeffs = [{"element": VeeElement.from_code(k).to_json(), "coeff": str(v)} for k, v in sorted(f.coeffs.items())]
            items.append({"name": name, "coeffs": coeffs})
        return json.dumps({"signature": str(sig), "count": len(items), "basis": items}, sort_keys=True) + "\n"
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "element", "coeff"])
        for name, f in basis:
            for k, v in sorted(f.coeffs.items()):
                w.writerow([name, G.name(k), str(v)])
        return buf.getvalue()
    return "".join(f"{name} = {f.render()}\n" for name, f in basis)


def cmd_constants(args):
    sig = _signature(args)
    _cap("constants", sig.n)
    rows = algebra.constants_rows(sig)
    if args.format == "json":
        items = [{"A": a, "B": b, "sign": s, "AxorB": c} for a, b, s, c in rows]
        return json.dumps({"signature": str(sig), "constants": items}, sort_keys=True) + "\n"
    if args.format == "csv":
        return algebra.constants_csv(sig)
    n = sig.n
    names = [VeeElement(0, A).render(n) for A in range(1 << n)]
    width = max(len(x) for x in names) + 3
    cells = {(a, b): (s, c) for a, b, s, c in rows}
    lines = [" " * width + "".join(f"{h:>{width}}" for h in names)]
    for a in names:
        line = f"{a:>{width}}"
        for b in names:
            s, c = cells[(a, b)]
            line += f"{('-' if s < 0 else '') + c:>{width}}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def build_parser():
    parser = argparse.ArgumentParser(prog="gradedgroups", description="Discrete Clifford groups and graded products.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--out", help="write output to FILE instead of stdout")
    sig = argparse.ArgumentParser(add_help=False)
    sig.add_argument("pq", nargs="*", type=int, metavar="P Q", help="signature as p ones then q Z's")
    sig.add_argument("--signature", help='comma-separated flags, e.g. "1,Z,Z"')
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("info", parents=[common, sig], help="structure report").set_defaults(func=cmd_info)
    sub.add_parser("table", parents=[common, sig], help="multiplication table").set_defaults(func=cmd_table)
    p = sub.add_parser("periodic", parents=[common], help="classification triangle")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--algebra", action="store_true", help="add the matrix-algebra annotation")
    p.set_defaults(func=cmd_periodic)
    c = sub.add_parser("characters", parents=[common], help="character matrix of the subset group")
    c.add_argument("n", type=int)
    c.set_defaults(func=cmd_characters)
    sub.add_parser("central", parents=[common, sig], help="central-function basis").set_defaults(func=cmd_central)
    sub.add_parser("constants", parents=[common, sig], help="Clifford structure constants").set_defaults(func=cmd_constants)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "pq", None) and len(args.pq) not in (0, 2):
        print("error: expected exactly two integers P Q", file=sys.stderr)
        return EXIT_USAGE
    try:
        text = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SizeLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``hofflat <command> ...``.

Exit status is 0 on success, 1 on a domain error (the error name goes to
stderr) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from . import decomposition, dynkin, enumeration, families, lattice, saturation, spectra
from .errors import HoffmanError
from .graph import HoffmanGraph, read_hg, to_hg, to_raw
from .representation import reduced_gram


def _matrix_lines(m: np.ndarray, names: Sequence[str]) -> list[str]:
    w = max([len(n) for n in names] + [1])
    cw = max([len(str(int(x))) for x in np.asarray(m).flat] + [1])
    return [f"  {n:>{w}} |" + "".join(f" {int(x):>{cw}}" for x in row) for n, row in zip(names, m)]


def _edges(pairs) -> str:
    return " ".join(f"{a}-{b}" for a, b in pairs) or "(none)"


def _minus_shape(h: HoffmanGraph):
    g = decomposition.special_graphs(h).graph("minus")
    try:
        return dynkin.recognize_shape(g)
    except HoffmanError:
        return None


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def cmd_analyze(args) -> int:
    h = read_hg(args.file)
    m = args.norm
    lam = spectra.lambda_min(h)
    ok = spectra.min_eig_at_least(h, m)
    b = spectra.b_matrix(h)
    g = reduced_gram(h, m).entries
    sg = decomposition.special_graphs(h)
    shape = _minus_shape(h)
    if args.json:
        _emit(
            {
                "slim": h.slim_count,
                "fat": h.fat_count,
                "is_fat": h.is_fat,
                "lambda_min": float(f"{lam:.12g}"),
                "norm": m,
                "min_eig_at_least": ok,
                "b_matrix": b.tolist(),
                "reduced_gram": g.tolist(),
                "special_graphs": sg.to_json(),
                "minus_shape": None if shape is None else shape.to_json(),
            }
        )
        return 0
    out = [
        f"slim vertices: {h.slim_count}, fat vertices: {h.fat_count}, fat: {str(h.is_fat).lower()}",
        f"λ_min ≈ {lam:.12g}",
        f"λ_min ≥ −{m}: {str(ok).lower()}",
        "B = A_s - C C^T:",
        *_matrix_lines(b, h.slim_names),
        f"reduced Gram B + {m}I:",
        *_matrix_lines(g, h.slim_names),
        f"special minus graph: {_edges(sg.minus)}",
        f"special plus graph: {_edges(sg.plus)}",
        f"minus shape: {shape if shape is not None else 'disconnected'}",
    ]
    print("\n".join(out))
    return 0


def cmd_decompose(args) -> int:
    h = read_hg(args.file)
    parts = decomposition.indecomposable_components(h)
    if args.json:
        _emit([to_raw(p) for p in parts])
    else:
        print(f"# {len(parts)} indecomposable component(s)")
        sys.stdout.write(enumeration.dumps_stream(parts))
    return 0


def cmd_classify(args) -> int:
    h = read_hg(args.file)
    cls, rep = lattice.classify_with_embedding(h)
    if args.json:
        _emit({"class": cls.to_json(), "embedding": None if rep is None else rep.to_json()})
        return 0
    print(f"lattice: {cls}")
    print(f"rank {cls.rank}, discriminant {cls.discriminant}, minimal norm {cls.min_norm}")
    if rep is not None and rep.matrix().size:
        print(f"embedding ({rep.kind}, inner products / {rep.scale}):")
        for n in rep.names:
            print(f"  {n}: {' '.join(map(str, rep.vectors[n]))}")
    return 0


def cmd_saturated(args) -> int:
    h = read_hg(args.file)
    res = saturation.is_saturated(h, args.mu, args.max_slim_for_saturation)
    if args.json:
        _emit({"mu": args.mu, **res.to_json()})
    elif res.saturated:
        print(f"(-{args.mu})-saturated: true")
    else:
        print(f"(-{args.mu})-saturated: false")
        print(f"witness: a fat vertex on {{{', '.join(res.witness)}}} keeps λ_min ≥ −{args.mu}")
    return 0


def _family_output(args) -> list[tuple[HoffmanGraph, dict]]:
    name = args.family
    if name == "ht":
        if args.param is None:
            raise argparse.ArgumentTypeError("ht needs T")
        try:
            t = int(args.param)
        except ValueError:
            raise argparse.ArgumentTypeError(f"T must be an integer, got {args.param!r}") from None
        return [(families.family_ht(t), {"family": "ht", "t": t, "lambda_min": -t})]
    if name == "a3tilde":
        cert = {
            "family": "a3tilde",
            "lattice": "Standard(1)",
            "minus_shape": "ATilde(3)",
            "plus": [["0", "2"], ["1", "3"]],
            "saturated": True,
        }
        return [(families.family_a3tilde(), cert)]
    if name == "an":
        if args.param is None:
            raise argparse.ArgumentTypeError("an needs N1,N2,...")
        try:
            ns = [int(x) for x in args.param.split(",")]
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad parameter list {args.param!r}") from None
        h, psi = families.family_an(ns)
        m = families.an_breakpoints(ns)
        k = len(ns)
        plus = [[f"v{m[j] - 1}", f"v{m[j] + 1}"] for j in range(1, k)]
        cert = {"family": "an", "n": ns, "psi": psi.to_json(), "minus_shape": f"A({m[k] + 1})", "plus": plus, "saturated": True}
        return [(h, cert)]
    if name == "a5":
        h0, h1 = families.family_a5()
        plus = [["v0", "v2"], ["v2", "v4"]]
        return [
            (h, {"family": "a5", "graph": tag, "minus_shape": "A(5)", "plus": plus, "saturated": True})
            for tag, h in (("H0", h0), ("H1", h1))
        ]
    h, rep = families.family_me8()
    return [(h, {"family": "me8", "lattice": "E(8)", "embedding": rep.to_json()})]


def cmd_family(args) -> int:
    try:
        items = _family_output(args)
    except argparse.ArgumentTypeError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    text = "---\n".join(f"# certificate {json.dumps(cert)}\n" + to_hg(h) for h, cert in items)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.cert:
        certs = [c for _, c in items]
        with open(args.cert, "w") as fh:
            json.dump(certs[0] if len(certs) == 1 else certs, fh, indent=2)
            fh.write("\n")
    return 0


def cmd_enumerate(args) -> int:
    filters = [f for f in (args.filter or "").split(",") if f]
    bad = [f for f in filters if f not in enumeration.FILTERS]
    if bad:
        print(f"usage error: unknown filter(s) {', '.join(bad)}", file=sys.stderr)
        return 2
    graphs = list(enumeration.enumerate_graphs(args.max_slim, args.max_fat, filters, allow_large=args.allow_large))
    report = enumeration.verify_corpus(graphs) if args.verify else None
    if args.json:
        out: dict | list = [to_raw(h) for h in graphs]
        if report is not None:
            out = {"graphs": out, "report": report.to_json()}
        _emit(out)
    else:
        sys.stdout.write(enumeration.dumps_stream(graphs))
        if report is not None:
            print("# report")
            for line in report.summary().splitlines():
                print(f"# {line}")
    return 0 if report is None or report.ok else 1


def cmd_limit(args) -> int:
    h = read_hg(args.file)
    rows = spectra.limit_table(h, args.max_n)
    if args.json:
        print(spectra.limit_table_json(rows))
        return 0
    print(f"target λ_min = {spectra.lambda_min(h):.12g}")
    print(f"{'n':>4}  {'λ_min(Γ_n)':>20}  {'gap':>14}")
    for r in rows:
        print(f"{r.n:>4}  {r.lambda_min_gamma_n:>20.12g}  {r.gap:>14.6e}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hofflat", description="Fat Hoffman graphs with smallest eigenvalue at least -3.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="eigenvalue verdict, B, reduced Gram and special graphs")
    a.add_argument("file", help=".hg file, or - for standard input")
    a.add_argument("--norm", type=int, default=3)
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_analyze)

    d = sub.add_parser("decompose", help="split into indecomposable components")
    d.add_argument("file")
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_decompose)

    c = sub.add_parser("classify", help="identify the reduced lattice of norm 3")
    c.add_argument("file")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("saturated", help="test (-mu)-saturation")
    s.add_argument("file")
    s.add_argument("--mu", type=int, default=3)
    s.add_argument("--max-slim-for-saturation", type=int, default=saturation.DEFAULT_MAX_SLIM)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_saturated)

    f = sub.add_parser("family", help="emit an example graph with its certificate")
    f.add_argument("family", choices=["ht", "a3tilde", "an", "a5", "me8"])
    f.add_argument("param", nargs="?", help="T for ht, N1,N2,... for an")
    f.add_argument("-o", "--output", help="write the .hg text here instead of standard output")
    f.add_argument("--cert", help="also write the certificate as JSON to this file")
    f.set_defaults(func=cmd_family)

    e = sub.add_parser("enumerate", help="list small graphs with smallest eigenvalue at least -3")
    e.add_argument("--max-slim", type=int, required=True)
    e.add_argument("--max-fat", type=int, required=True)
    e.add_argument("--filter", default="", help="comma separated subset of fat,indecomposable,saturated")
    e.add_argument("--verify", action="store_true", help="append the property report")
    e.add_argument("--json", action="store_true")
    e.add_argument("--allow-large", action="store_true", help="permit bounds up to 7")
    e.set_defaults(func=cmd_enumerate)

    lim = sub.add_parser("limit", help="smallest eigenvalues of clique expansions")
    lim.add_argument("file")
    lim.add_argument("--max-n", type=int, required=True)
    lim.add_argument("--json", action="store_true")
    lim.set_defaults(func=cmd_limit)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except HoffmanError as exc:
        print(f"{exc.name}: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"FileNotFound: {exc.filename or exc}", file=sys.stderr)
        return 1
    except (IsADirectoryError, PermissionError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())

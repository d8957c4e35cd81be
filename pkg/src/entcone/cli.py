"""Command-line entry point: ``entcone <group> <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import cone as cn
from .coarse import build_delta, parse_map, pullback, pullback_ray
from .entrospace import EntropyVector, format_vector, parse_vector
from .errors import EntconeError
from .hypergraph import FIXTURES, entropy_vector, fixture, parse as parse_hypergraph, relabel, serialize
from .ineq import FAMILIES, family_instances, format_instances
from .reproduce import SCENARIOS, run_scenario
from .states import StateSpec, state_vector

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
MAX_ENUMERATION_N = 4


class InputError(Exception):
    pass


def load_hypergraph(path: str):
    """A hypergraph file, or ``fixtures/<name>`` for a built-in figure when no such file exists."""
    p = Path(path)
    for cand in (p, p.with_name(p.name + ".json")):
        if cand.is_file():
            return parse_hypergraph(cand.read_text())
    if p.name in FIXTURES:
        return fixture(p.name)
    raise InputError(f"no hypergraph file {path} (built-in fixtures: {', '.join(FIXTURES)})")


def _load_any(path: str):
    """Entropy vector, V-rep, H-rep or hypergraph, by content sniffing."""
    p = Path(path)
    if not p.is_file() and not p.with_name(p.name + ".json").is_file():
        return load_hypergraph(path)
    if not p.is_file():
        p = p.with_name(p.name + ".json")
    text = p.read_text()
    head = text.lstrip()
    if head.startswith("{"):
        return parse_hypergraph(text)
    if head.startswith(("HREP", "VREP")):
        return cn.parse_cone(text)
    return parse_vector(text)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _vrep_arg(path: str) -> cn.VRepCone:
    obj = _load_any(path)
    if isinstance(obj, cn.VRepCone):
        return obj
    if isinstance(obj, EntropyVector):
        return cn.VRepCone.of_vectors([obj])
    raise InputError(f"{path} is not a V-representation or entropy vector")


# -- hg -----------------------------------------------------------------------


def cmd_hg(args) -> int:
    H = load_hypergraph(args.file)
    v = entropy_vector(H)
    if args.sub == "entropy":
        _emit(format_vector(v), args.out)
        return EXIT_OK
    S = cn.HRepCone.of(family_instances("sa", H.n))
    c = cn.is_extreme_ray(v, S)
    if args.format == "structured":
        d = {
            "n": H.n,
            "D": c.D,
            "instances": len(S),
            "saturated": list(c.saturated),
            "violated": list(c.violated),
            "rank": c.rank,
            "basis": list(c.basis),
            "verdict": c.verdict,
        }
        _emit(json.dumps(d, indent=2) + "\n", args.out)
    else:
        _emit(
            f"N {H.n}\nD {c.D}\ninstances {len(S)}\nsaturated {len(c.saturated)}\n"
            f"violated {len(c.violated)}\nrank {c.rank}\nverdict {c.verdict}\n",
            args.out,
        )
    return EXIT_OK if c.extreme else EXIT_FAIL


# -- cone ---------------------------------------------------------------------


def cmd_cone(args) -> int:
    if args.sub == "rays":
        if args.hrep:
            H = _load_any(args.hrep)
            if not isinstance(H, cn.HRepCone):
                raise InputError(f"{args.hrep} is not an H-representation")
        else:
            if args.family is None or args.n is None:
                raise InputError("cone rays needs --family and --n, or --hrep")
            H = cn.HRepCone.of(family_instances(args.family, args.n))
        if H.n > MAX_ENUMERATION_N and not (args.long and H.n == 5):
            raise InputError(
                f"full enumeration at N={H.n} is not supported"
                + (" without --long" if H.n == 5 else "")
            )
        V = cn.double_description(H)
        k = cn.orbit_count(V)
        if args.out:
            _emit(cn.format_vrep(V), args.out)
            print(f"rays {len(V)}\norbits {k}")
        else:
            sys.stdout.write(cn.format_vrep(V) + f"# rays {len(V)}\n# orbits {k}\n")
        return EXIT_OK

    if args.sub == "member":
        q = _load_any(args.query)
        if isinstance(q, cn.VRepCone):
            if len(q.rays) != 1:
                raise InputError("member query must be a single vector")
            qv = q.rays[0]
        elif isinstance(q, EntropyVector):
            qv = q.comp
        else:
            qv = entropy_vector(q).comp
        V = _vrep_arg(args.rays)
        cert = cn.conic_membership(qv, V.rays)
        if cert.member:
            lines = ["member"] + [
                f"{c} * ray {i} ({' '.join(map(str, V.rays[i]))})" for i, c in cert.coefficients
            ]
        else:
            lines = ["nonmember", "separating " + " ".join(map(str, cert.separating))]
        _emit("\n".join(lines) + "\n", args.out)
        return EXIT_OK

    A, B = _vrep_arg(args.a), _vrep_arg(args.b)
    rel, wit = cn.compare(A, B, args.threads)
    label = {"equal": "equal", "A<B": "A⊂B", "B<A": "B⊂A", "incomparable": "incomparable"}[rel]
    lines = [label]
    for key, tag in (("A_not_in_B", "A-ray not in B"), ("B_not_in_A", "B-ray not in A")):
        for r, c in wit[key]:
            lines.append(f"{tag}: ({','.join(map(str, r))}) separating {' '.join(map(str, c.separating))}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# -- state / coarse -------------------------------------------------------------


def cmd_state(args) -> int:
    parties = tuple(int(x) for x in args.parties.split(",")) if args.parties else ()
    if args.kind == "ghz" and not parties:
        parties = tuple(range(args.n + 1))
    s = StateSpec(args.kind, args.n, parties)
    _emit(format_vector(state_vector(s)), args.out)
    return EXIT_OK


def cmd_coarse(args) -> int:
    if args.sub == "apply":
        obj = _load_any(args.file)
        n_from = obj.n
        f = parse_map(args.map, n_from=n_from, n_to=args.to)
        if isinstance(obj, EntropyVector):
            out = format_vector(pullback(f, obj))
        elif isinstance(obj, cn.VRepCone):
            V = cn.VRepCone(f.n_to, tuple(pullback_ray(f, r) for r in obj.rays))
            out = cn.format_vrep(V)
        elif isinstance(obj, cn.HRepCone):
            raise InputError("coarse apply takes entropy vectors, V-reps or hypergraphs")
        elif args.as_hypergraph:
            out = serialize(relabel(obj, f))
        else:
            out = format_vector(pullback(f, entropy_vector(obj)))
        _emit(out, args.out)
        return EXIT_OK
    V = _vrep_arg(args.rays)
    D = build_delta(V, args.to, reduced=args.reduced, prune=args.prune)
    _emit(cn.format_vrep(D), args.out)
    return EXIT_OK


def cmd_ineq(args) -> int:
    _emit(format_instances(family_instances(args.family, args.n)), args.out)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    report = run_scenario(args.scenario, threads=args.threads, long=args.long)
    if args.out:
        Path(args.out).write_text(report.to_json(timings=True))
    if args.format == "structured":
        sys.stdout.write(report.to_json(timings=args.timings))
    else:
        sys.stdout.write(report.to_text(timings=args.timings))
    return EXIT_OK if report.overall == "pass" else EXIT_FAIL


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="entcone", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the main output to this file")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("--long", action="store_true", help="enable long-running steps")
    groups = p.add_subparsers(dest="group", required=True)

    hg = groups.add_parser("hg", help="hypergraph models").add_subparsers(dest="sub", required=True)
    for name in ("entropy", "check-extreme"):
        sp = hg.add_parser(name, parents=[common])
        sp.add_argument("file", help="hypergraph JSON file, or fixtures/fig1|fig2|fig3")
    p_cone = groups.add_parser("cone", help="cone enumeration and comparison")
    cone = p_cone.add_subparsers(dest="sub", required=True)
    sp = cone.add_parser("rays", parents=[common])
    sp.add_argument("--family", choices=FAMILIES)
    sp.add_argument("--n", type=int)
    sp.add_argument("--hrep", help="H-representation file instead of --family/--n")
    sp = cone.add_parser("member", parents=[common])
    sp.add_argument("query", help="entropy-vector file (or hypergraph)")
    sp.add_argument("rays", help="V-representation file")
    sp = cone.add_parser("compare", parents=[common])
    sp.add_argument("a")
    sp.add_argument("b")

    st = groups.add_parser("state", help="reference states").add_subparsers(dest="sub", required=True)
    sp = st.add_parser("vector", parents=[common])
    sp.add_argument("--kind", choices=("bell", "ghz", "ame4"), required=True)
    sp.add_argument("--parties", help="comma-separated parties, e.g. 1,2")
    sp.add_argument("--n", type=int, required=True)

    co = groups.add_parser("coarse", help="coarse grainings").add_subparsers(dest="sub", required=True)
    sp = co.add_parser("apply", parents=[common])
    sp.add_argument("--map", required=True, help='images of parties 0..N\', e.g. "0,1,1,2,2,3,3"')
    sp.add_argument("--to", type=int, help="target party count (default: largest image)")
    sp.add_argument("--as-hypergraph", action="store_true", help="emit the relabeled hypergraph")
    sp.add_argument("file")
    sp = co.add_parser("delta", parents=[common])
    sp.add_argument("--rays", required=True, help="V-representation over N' parties")
    sp.add_argument("--to", type=int, required=True)
    sp.add_argument("--reduced", action="store_true", help="one map per coarse relabeling orbit")
    sp.add_argument("--prune", action="store_true", help="drop non-extreme generators")

    iq = groups.add_parser("ineq", help="inequality instances").add_subparsers(dest="sub", required=True)
    sp = iq.add_parser("list", parents=[common])
    sp.add_argument("--family", choices=FAMILIES, required=True)
    sp.add_argument("--n", type=int, required=True)

    sp = groups.add_parser("reproduce", help="run a reproduction scenario", parents=[common])
    sp.add_argument("scenario", choices=sorted(SCENARIOS))
    sp.add_argument("--timings", action="store_true", help="include wall times on stdout")
    return p


HANDLERS = {
    "hg": cmd_hg,
    "cone": cmd_cone,
    "state": cmd_state,
    "coarse": cmd_coarse,
    "ineq": cmd_ineq,
    "reproduce": cmd_reproduce,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return HANDLERS[args.group](args)
    except (InputError, EntconeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

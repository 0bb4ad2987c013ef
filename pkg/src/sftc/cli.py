"""Command-line front end: ``sftc <verb> [options]``.

Every verb prints one JSON document.  Exit status is 0 when the question
was decided, 2 when a bounded search ran out, and 1 on any error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import io
from .correspondences import (
    EmptyComposite,
    compose_correspondences,
    h_equivalent,
    induced_maps,
    presented_isomorphic_corr,
    rat_iso_verify,
    rationally_h_equivalent,
)
from .coverings import lind_marcus_build
from .equivalences import (
    UNKNOWN,
    EquivalenceReport,
    almost_conjugacy_report,
    entropy_report,
    finite_equivalence_report,
    h_invert_report,
    intertwiner_report,
    se_search_report,
    se_verify_report,
)
from .errors import MalformedInput, SFTError
from .graphs import Graph, period, strongly_connected_components
from .invariants import invariant_report, kunneth_check, periodic_counts, zeta, zeta_series_check

EXIT_DECIDED = 0
EXIT_ERROR = 1
EXIT_UNKNOWN = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which we reserve for "unknown"
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def parse_width(text):
    """Accept ``2^-k``, ``p/q`` or an integer."""
    text = text.strip()
    if text.startswith("2^"):
        return Fraction(2) ** int(text[2:])
    try:
        w = Fraction(text)
    except ValueError as exc:
        raise MalformedInput(f"bad width {text!r}") from exc
    if w <= 0:
        raise MalformedInput("width must be positive")
    return w


def _graph(path):
    data = io.load_json(path)
    if isinstance(data, list):
        return Graph.from_matrix(io.matrix_from_json(data))
    return io.graph_from_json(data)


def _policy(args):
    policy = args.policy
    if policy == "seeded":
        policy = f"seeded:{args.seed}"
    return policy


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise MalformedInput(f"{args.verb} needs {', '.join(missing)}")


def cmd_invariants(args):
    _need(args, "g")
    return invariant_report(_graph(args.g), perron_width=parse_width(args.perron_width))


def cmd_zeta(args):
    _need(args, "g")
    g = _graph(args.g)
    return {
        "zeta": zeta(g),
        "periodic_counts": periodic_counts(g, 12),
        "series_check_order_12": zeta_series_check(g, 12),
    }


def cmd_kunneth(args):
    _need(args, "g", "h")
    return kunneth_check(_graph(args.g), _graph(args.h))


def cmd_period(args):
    _need(args, "g")
    g = _graph(args.g)
    return {"period": period(g), "components": strongly_connected_components(g)}


def cmd_entropy_cmp(args):
    _need(args, "g", "h")
    return entropy_report(_graph(args.g), _graph(args.h))


def cmd_almost_conj(args):
    _need(args, "g", "h")
    return almost_conjugacy_report(_graph(args.g), _graph(args.h))


def cmd_intertwiner(args):
    _need(args, "g", "h")
    return intertwiner_report(_graph(args.g), _graph(args.h), args.bound)


def cmd_lm_build(args):
    _need(args, "f", "g", "h")
    return lind_marcus_build(io.load_matrix(args.f), _graph(args.g), _graph(args.h), _policy(args))


def cmd_compose(args):
    _need(args, "c1", "c2")
    c = compose_correspondences(io.load_correspondence(args.c1), io.load_correspondence(args.c2))
    if isinstance(c, EmptyComposite):
        return c
    out = io.to_jsonable(c)
    out["induced"] = io.to_jsonable(induced_maps(c))
    return out


def cmd_induced(args):
    _need(args, "c")
    return induced_maps(io.load_correspondence(args.c))


def cmd_h_equiv(args):
    _need(args, "c1", "c2")
    c1, c2 = io.load_correspondence(args.c1), io.load_correspondence(args.c2)
    iso = presented_isomorphic_corr(c1, c2)
    return {
        "h_equivalent": h_equivalent(c1, c2),
        "presented_isomorphic": iso is not None,
        "induced_c1": induced_maps(c1),
        "induced_c2": induced_maps(c2),
    }


def cmd_rat_h_equiv(args):
    _need(args, "c1", "c2")
    c1, c2 = io.load_correspondence(args.c1), io.load_correspondence(args.c2)
    prop = rationally_h_equivalent(c1, c2)
    return {"rationally_h_equivalent": prop is not None, "proportion": prop}


def cmd_rat_iso_verify(args):
    _need(args, "c1", "c2", "witness")
    c1, c2 = io.load_correspondence(args.c1), io.load_correspondence(args.c2)
    data = io.load_json(args.witness)
    try:
        m = io.graph_from_json(data["m"])
        t1 = io.hom_from_json(data["theta1"], m, c1.mid)
        t2 = io.hom_from_json(data["theta2"], m, c2.mid)
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"witness needs m, theta1, theta2: {exc}") from exc
    return rat_iso_verify(c1, c2, t1, t2)


def cmd_se_search(args):
    _need(args, "g", "h")
    return se_search_report(_graph(args.g), _graph(args.h), args.lag_max, args.bound)


def cmd_se_verify(args):
    _need(args, "g", "h", "witness")
    return se_verify_report(_graph(args.g), _graph(args.h), io.load_witness(args.witness))


def cmd_h_invert(args):
    _need(args, "g", "h", "witness")
    return h_invert_report(_graph(args.g), _graph(args.h), io.load_witness(args.witness))


def cmd_fin_equiv(args):
    _need(args, "g", "h")
    return finite_equivalence_report(_graph(args.g), _graph(args.h), args.bound, _policy(args))


COMMANDS = {
    "invariants": cmd_invariants,
    "zeta": cmd_zeta,
    "kunneth": cmd_kunneth,
    "period": cmd_period,
    "entropy-cmp": cmd_entropy_cmp,
    "almost-conj": cmd_almost_conj,
    "intertwiner": cmd_intertwiner,
    "lm-build": cmd_lm_build,
    "compose": cmd_compose,
    "induced": cmd_induced,
    "h-equiv": cmd_h_equiv,
    "rat-h-equiv": cmd_rat_h_equiv,
    "rat-iso-verify": cmd_rat_iso_verify,
    "se-search": cmd_se_search,
    "se-verify": cmd_se_verify,
    "h-invert": cmd_h_invert,
    "fin-equiv": cmd_fin_equiv,
}


def build_parser():
    p = _Parser(prog="sftc", description="Exact computations with correspondences of edge shifts.")
    p.add_argument("verb", choices=sorted(COMMANDS))
    for name in ("g", "h", "f", "c", "c1", "c2", "witness"):
        p.add_argument(f"--{name}", metavar="FILE")
    p.add_argument("--bound", type=int, default=3, help="coefficient bound for lattice searches")
    p.add_argument("--lag-max", type=int, default=3)
    p.add_argument("--policy", default="lex", help="lex, fibre, seeded or seeded:<n>")
    p.add_argument("--seed", type=int, default=0, help="seed for --policy seeded")
    p.add_argument("--perron-width", default="2^-20")
    p.add_argument("--out", metavar="FILE", help="write JSON here instead of stdout")
    return p


def run(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.bound < 0 or args.lag_max < 1:
            raise MalformedInput("--bound must be >= 0 and --lag-max >= 1")
        result = COMMANDS[args.verb](args)
        text = io.dumps(result)
    except (SFTError, ValueError, OSError) as exc:
        print(f"sftc {args.verb}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    if isinstance(result, EquivalenceReport) and result.verdict == UNKNOWN:
        return EXIT_UNKNOWN
    return EXIT_DECIDED


def main(argv=None):
    try:
        code = run(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_ERROR
    sys.exit(code)


if __name__ == "__main__":
    main()

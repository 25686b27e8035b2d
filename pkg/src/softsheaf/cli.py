"""Command-line front-end: verification runs, corpus generation, reports.

Reports stream as JSON lines (or plain text) in a canonical instance
order; the exit status is 0 exactly when every emitted check passed.
Counterexample payloads carry the instance descriptor that replays them.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field

from . import compord, corpus, finalg, gelfand, order, sheafrep


@dataclass
class RunConfig:
    subcommand: str
    seed: int = 0
    out: str = ""
    fmt: str = "text"
    options: dict = field(default_factory=dict)


@dataclass
class VerificationReport:
    theorem: str
    instance: dict
    ok: bool
    counterexample: object = None
    ms: float = 0.0

    def to_json(self):
        return json.dumps(
            {
                "theorem": self.theorem,
                "instance": self.instance,
                "pass": self.ok,
                "counterexample": _plain(self.counterexample),
                "ms": round(self.ms, 3),
            },
            sort_keys=True,
        )

    def to_text(self):
        verdict = "PASS" if self.ok else "FAIL"
        extra = "" if self.counterexample is None else f"  counterexample={_plain(self.counterexample)!r}"
        inst = ",".join(f"{k}={v}" for k, v in sorted(self.instance.items()))
        return f"{verdict} {self.theorem} [{inst}]{extra}"


def _plain(value):
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return repr(value)


class _Emitter:
    def __init__(self, fmt, out):
        self.fmt = fmt
        self.fh = open(out, "w") if out else sys.stdout
        self.owns = bool(out)
        self.failures = 0

    def emit(self, report):
        if not report.ok:
            self.failures += 1
        line = report.to_json() if self.fmt == "json" else report.to_text()
        print(line, file=self.fh)
        self.fh.flush()

    def raw(self, text):
        self.fh.write(text)
        self.fh.flush()

    def close(self):
        if self.owns:
            self.fh.close()


def _read(path):
    with open(path) as fh:
        return fh.read()


def resolve_lattice(spec):
    if spec in order.NAMED_LATTICES:
        return order.named_lattice(spec), spec
    return order.parse_lattice(_read(spec)), os.path.basename(spec)


NAMED_POSETS = {
    "antichain1": lambda: order.antichain(1),
    "antichain2": lambda: order.antichain(2),
    "antichain3": lambda: order.antichain(3),
    "v3": lambda: order.poset_from_covers(3, [(0, 1), (0, 2)]),
    "cap3": lambda: order.poset_from_covers(3, [(1, 0), (2, 0)]),
}


def resolve_poset(spec):
    if spec in NAMED_POSETS:
        return NAMED_POSETS[spec](), spec
    if spec in order.NAMED_LATTICES:
        return order.named_lattice(spec).poset, spec
    return order.parse_poset(_read(spec)), os.path.basename(spec)


def resolve_algebra(spec):
    if spec in finalg.NAMED_ALGEBRAS:
        return finalg.named_algebra(spec), spec
    return finalg.parse_algebra(_read(spec)), os.path.basename(spec)


def parse_rep(text):
    """Parse a congruence assignment referencing a lattice and an algebra.

    Format: 'rep' header, 'lattice <name-or-path>', 'algebra <name-or-path>',
    then one 'theta <element> <leader...>' line per base element.
    """
    lines = [l.split("#", 1)[0].strip() for l in text.splitlines()]
    lines = [l for l in lines if l]
    if not lines or lines[0] != "rep":
        raise ValueError("expected 'rep' header")
    lattice = algebra = None
    thetas = {}
    for line in lines[1:]:
        parts = line.split()
        if parts[0] == "lattice":
            lattice, _ = resolve_lattice(parts[1])
        elif parts[0] == "algebra":
            algebra, _ = resolve_algebra(parts[1])
        elif parts[0] == "theta":
            thetas[int(parts[1])] = tuple(int(v) for v in parts[2:])
        else:
            raise ValueError(f"unexpected line {line!r}")
    if lattice is None or algebra is None or set(thetas) != set(range(lattice.n)):
        raise ValueError("rep file must name a lattice, an algebra and every theta")
    cons = tuple(finalg.Congruence(algebra, thetas[p]) for p in range(lattice.n))
    return sheafrep.RepMap(lattice, algebra, cons)


def _timed(fn, *args, **kwargs):
    t0 = time.monotonic()
    result = fn(*args, **kwargs)
    return result, (time.monotonic() - t0) * 1000.0


# -- subcommand handlers -------------------------------------------------------


def _cmd_check_lattice(args, emitter):
    t0 = time.monotonic()
    try:
        lat, name = resolve_lattice(args.path)
    except (order.OrderError, OSError) as e:
        emitter.emit(
            VerificationReport(
                "check-lattice", {"input": args.path}, False, str(e), (time.monotonic() - t0) * 1000
            )
        )
        return
    if emitter.fmt == "dot":
        emitter.raw(order.lattice_to_dot(lat, name=name.replace("-", "_").replace(".", "_")))
        return
    emitter.emit(
        VerificationReport(
            "check-lattice",
            {"input": name, "n": lat.n, "distributive": lat.is_distributive},
            True,
            None,
            (time.monotonic() - t0) * 1000,
        )
    )


def _cmd_check_algebra(args, emitter):
    t0 = time.monotonic()
    try:
        alg, name = resolve_algebra(args.path)
    except (finalg.AlgebraError, ValueError, OSError) as e:
        emitter.emit(
            VerificationReport(
                "check-algebra", {"input": args.path}, False, str(e), (time.monotonic() - t0) * 1000
            )
        )
        return
    emitter.emit(
        VerificationReport(
            "check-algebra",
            {"input": name, "n": alg.n, "sig": [f"{o}/{a}" for o, a in alg.sig.ops]},
            True,
            None,
            (time.monotonic() - t0) * 1000,
        )
    )


def _cmd_con_lattice(args, emitter):
    alg, name = resolve_algebra(args.algebra)
    (con, ms) = _timed(finalg.congruence_lattice, alg, args.max_carrier)
    if emitter.fmt == "dot":
        labels = ["|".join("".join(map(str, b)) for b in c.blocks()) for c in con.congruences]
        emitter.raw(order.lattice_to_dot(con.lattice, labels=labels, name="congruences"))
        return
    emitter.emit(
        VerificationReport(
            "con-lattice",
            {"algebra": name, "congruences": len(con.congruences)},
            True,
            None,
            ms,
        )
    )


def _verify_theorem(args, emitter, driver, theorem):
    alg, aname = resolve_algebra(args.algebra)
    lat, lname = resolve_lattice(args.lattice)
    instance = {"algebra": aname, "lattice": lname}
    if args.rep:
        rep = parse_rep(_read(args.rep))
        (report, ms) = _timed(sheafrep.rep_report, rep)
        ok = report.consistent and (report.sheaf.is_k_sheaf == report.qualifies_k_sheaf)
        emitter.emit(
            VerificationReport(theorem, dict(instance, rep=os.path.basename(args.rep)), ok, None, ms)
        )
        return
    (report, ms) = _timed(driver, alg, lat)
    emitter.emit(
        VerificationReport(theorem, dict(instance, **report.counts), report.ok, report.counterexample, ms)
    )


def _cmd_verify(args, emitter):
    what = args.theorem
    if what == "thm-gamma":
        _verify_theorem(args, emitter, sheafrep.verify_thm_gamma, what)
    elif what == "cor-main":
        _verify_theorem(args, emitter, sheafrep.verify_cor_main, what)
    elif what == "t-gen":
        _verify_theorem(args, emitter, sheafrep.verify_t_gen, what)
    elif what == "wilker":
        if args.lattice:
            lats = [resolve_lattice(args.lattice)]
        else:
            lats = [
                (lat, f"corpus[{lat.n}]")
                for lat in corpus.corpus_lattices(args.max_size)
            ]
        for lat, name in lats:
            (res, ms) = _timed(order.wilker_check, lat)
            emitter.emit(
                VerificationReport(
                    "wilker", {"lattice": name, "n": lat.n}, res.ok, res.counterexample, ms
                )
            )
    elif what == "hofmann-mislove":
        if args.space:
            posets = [resolve_poset(args.space)]
        else:
            posets = [(p, f"corpus[{p.n}]") for p in corpus.corpus_posets(args.max_points)]
        for p, name in posets:
            space = compord.up_space(compord.CompOrdSpace(p))
            (ok, ms) = _timed(compord.hofmann_mislove_check, space)
            emitter.emit(VerificationReport("hofmann-mislove", {"space": name, "points": p.n}, ok, None, ms))
    elif what == "commute-triple":
        alg, aname = resolve_algebra(args.algebra)
        con = finalg.congruence_lattice(alg, args.max_carrier)
        t0 = time.monotonic()
        ok = True
        cex = None
        for i, t1 in enumerate(con.congruences):
            for t2 in con.congruences[i:]:
                rep = finalg.commuting_equivalences_report(alg, t1, t2)
                if not rep.agree:
                    ok = False
                    cex = {"theta1": t1.leaders, "theta2": t2.leaders}
                    break
            if not ok:
                break
        emitter.emit(
            VerificationReport(
                "commute-triple",
                {"algebra": aname, "congruences": len(con.congruences)},
                ok,
                cex,
                (time.monotonic() - t0) * 1000,
            )
        )
    else:
        raise ValueError(f"unknown theorem {what!r}")


def _cmd_compord(args, emitter):
    px, xname = resolve_poset(args.x)
    py, yname = resolve_poset(args.y)
    X, Y = compord.CompOrdSpace(px), compord.CompOrdSpace(py)
    (report, ms) = _timed(compord.decomposition_bijection_check, X, Y, args.max_points)
    if emitter.fmt == "dot":
        for k, q in enumerate(report.interpolating):
            emitter.raw(compord.decomposition_to_dot(q, X, Y, name=f"decomposition_{k}"))
        return
    emitter.emit(
        VerificationReport(
            "compord-bijection",
            {"x": xname, "y": yname, **report.counts},
            report.bijection,
            None,
            ms,
        )
    )


def _cmd_gelfand(args, emitter):
    ring = gelfand.resolve_ring(args.ring)
    (result, ms) = _timed(gelfand.gelfand_representation, ring)
    _, report = result
    emitter.emit(
        VerificationReport(
            "gelfand",
            {
                "ring": args.ring,
                "frame_size": report.jr.lattice.n,
                "stalks": [s.annihilator_mask.bit_count() for s in report.stalks],
                "inclusion_empty_join": report.inclusion_preservation["empty_join"],
            },
            report.ok,
            None,
            ms,
        )
    )


def _cmd_pierce(args, emitter):
    ring = gelfand.resolve_ring(args.ring)
    (report, ms) = _timed(gelfand.pierce_decomposition, ring)
    emitter.emit(
        VerificationReport(
            "pierce",
            {"ring": args.ring, "factors": report.factor_sizes, "idempotents": len(report.idempotents)},
            report.ok,
            None,
            ms,
        )
    )


def _cmd_generate_corpus(args, emitter):
    (manifest, ms) = _timed(
        corpus.generate_corpus, args.seed, args.max_size, args.max_points, args.out_dir
    )
    emitter.emit(
        VerificationReport(
            "generate-corpus",
            {
                "out": args.out_dir,
                "seed": manifest.seed,
                "lattices": sum(manifest.lattice_counts.values()),
                "posets": sum(manifest.poset_counts.values()),
            },
            True,
            None,
            ms,
        )
    )


def build_parser():
    env_lattice = int(os.environ.get("SOFTSHEAF_MAX_LATTICE", corpus.DEFAULT_LATTICE_CAP))
    env_points = int(os.environ.get("SOFTSHEAF_MAX_POINTS", corpus.DEFAULT_POINT_CAP))
    env_carrier = int(os.environ.get("SOFTSHEAF_MAX_CARRIER", finalg.CON_LATTICE_CAP))
    # SUPPRESS keeps a subparser from clobbering a value given before the
    # subcommand name; run() fills the defaults in
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument(
        "--format", dest="fmt", choices=["text", "json", "dot"], default=argparse.SUPPRESS
    )
    common.add_argument("--out", default=argparse.SUPPRESS)
    parser = argparse.ArgumentParser(
        prog="softsheaf",
        description="Finite-model checks for lattice-indexed sheaf representations.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def sub_parser(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    p = sub_parser("check-lattice", help="validate a lattice file")
    p.add_argument("path")
    p.set_defaults(handler=_cmd_check_lattice)

    p = sub_parser("check-algebra", help="validate an algebra file")
    p.add_argument("path")
    p.set_defaults(handler=_cmd_check_algebra)

    p = sub_parser("con-lattice", help="congruence lattice of an algebra")
    p.add_argument("--algebra", required=True)
    p.add_argument("--max-carrier", type=int, default=env_carrier)
    p.set_defaults(handler=_cmd_con_lattice)

    p = sub_parser("verify", help="run a theorem verification")
    p.add_argument(
        "theorem",
        choices=["thm-gamma", "cor-main", "t-gen", "wilker", "hofmann-mislove", "commute-triple"],
    )
    p.add_argument("--lattice", default="")
    p.add_argument("--algebra", default="")
    p.add_argument("--space", default="")
    p.add_argument("--rep", default="")
    p.add_argument("--max-size", type=int, default=env_lattice)
    p.add_argument("--max-points", type=int, default=env_points)
    p.add_argument("--max-carrier", type=int, default=env_carrier)
    p.set_defaults(handler=_cmd_verify)

    p = sub_parser("compord", help="compact-ordered-space checks")
    p.add_argument("action", choices=["bijection"])
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--max-points", type=int, default=4)
    p.set_defaults(handler=_cmd_compord)

    p = sub_parser("gelfand", help="ring frame and representation report")
    p.add_argument("--ring", required=True)
    p.add_argument("--report", default="", help="deprecated alias of --format json")
    p.set_defaults(handler=_cmd_gelfand)

    p = sub_parser("pierce", help="idempotent decomposition report")
    p.add_argument("--ring", required=True)
    p.set_defaults(handler=_cmd_pierce)

    p = sub_parser("generate-corpus", help="write the lattice/poset corpus")
    p.add_argument("--max-size", type=int, default=env_lattice)
    p.add_argument("--max-points", type=int, default=env_points)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(handler=_cmd_generate_corpus)
    return parser


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    args.seed = getattr(args, "seed", 0)
    args.fmt = getattr(args, "fmt", "text")
    args.out = getattr(args, "out", "")
    if getattr(args, "report", "") == "json":
        args.fmt = "json"
    emitter = _Emitter(args.fmt, args.out)
    try:
        args.handler(args, emitter)
    except (order.OrderError, finalg.AlgebraError, gelfand.RingError, ValueError, OSError) as e:
        emitter.emit(VerificationReport(args.subcommand, {}, False, str(e)))
    except order.InternalCheckError as e:
        emitter.emit(VerificationReport(args.subcommand, {}, False, f"internal consistency: {e}"))
    finally:
        failures = emitter.failures
        emitter.close()
    return 1 if failures else 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()

"""Command-line entry point.

Decisions are printed, never encoded in the exit status.  Exit codes:
0 completed, 1 usage or input error, 2 resource limit, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import replace
from pathlib import Path

from . import asp, preflib
from .chains import CHAINS, chain_sources, verify_chain
from .control import KINDS as CONTROL_KINDS
from .control import format_control, parse_control, solve_control
from .dodgson import dodgson_score
from .election import format_election, parse_election
from .errors import (ConfigurationError, InvalidInput, InvariantViolation, ResourceLimit,
                     VoteControlError)
from .formulas import format_dimacs, format_qcnf
from .generate import (random_cnf, random_control_instance, random_election,
                       random_graph_instance, random_qbf2)
from .graph_control import KINDS as GRAPH_KINDS
from .graph_control import format_graph_instance
from .kemeny import kemeny_winners
from .reductions.trace import REDUCTIONS, run_reduction
from .rules import RULES, winners
from .young import young_score

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_INVARIANT = 0, 1, 2, 3
GEN_TYPES = CONTROL_KINDS + GRAPH_KINDS + ("election", "cnf", "qcnf")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _yn(b) -> str:
    return "yes" if b else "no"


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None


def _cands(e, cs) -> str:
    return ", ".join(e.name(c) for c in cs)


def _candidate(arg: int | None, m: int) -> int | None:
    if arg is None:
        return None
    if not 1 <= arg <= m:
        raise InvalidInput(f"candidate {arg} out of range 1..{m}")
    return arg - 1


def cmd_score(a) -> str:
    e = parse_election(_read(a.election))
    c = _candidate(a.preferred, e.num_candidates)
    if a.rule in ("kemeny", "kemeny_prime"):
        res = kemeny_winners(e, a.rule)
        return (f"rule: {a.rule}\nscore: {res.score}\n"
                f"consensus: {' > '.join(e.name(x) for x in res.consensus)}\n")
    fn = young_score if a.rule == "young" else dodgson_score
    out = [f"rule: {a.rule}"]
    for x in ([c] if c is not None else e.candidates):
        s = fn(e, x).score
        out.append(f"score {e.name(x)}: {'undefined' if s is None else s}")
    return "\n".join(out) + "\n"


def cmd_winners(a) -> str:
    e = parse_election(_read(a.election))
    return f"rule: {a.rule}\nwinners: {_cands(e, winners(e, a.rule))}\n"


def _load_control(a):
    inst = parse_control(_read(a.instance))
    changes = {}
    if a.rule is not None:
        changes["rule"] = a.rule
    if a.type is not None:
        changes["kind"] = a.type
    if a.limit is not None:
        changes["limit"] = a.limit
    if a.preferred is not None:
        changes["preferred"] = _candidate(a.preferred, inst.election.num_candidates)
    if changes:
        inst = replace(inst, **changes)
    return inst


def cmd_control(a) -> str:
    inst = _load_control(a)
    out = solve_control(inst)
    lines = [f"rule: {inst.rule}", f"type: {inst.kind}", f"limit: {inst.limit}",
             f"preferred: {inst.election.name(inst.preferred)}",
             f"control possible: {_yn(out.decision)}"]
    if out.witness is not None:
        if inst.kind in ("ccav", "ccdv"):
            lines.append("witness votes: " + ",".join(str(i + 1) for i in out.witness))
        else:
            lines.append("witness candidates: " + (_cands(inst.election, out.witness) or "none"))
    lines += [f"actions examined: {out.subsets_examined}", f"seconds: {out.elapsed:.3f}"]
    return "\n".join(lines) + "\n"


def cmd_reduce(a) -> str:
    tr = run_reduction(a.reduction, _read(a.instance))
    text = tr.target_text
    if a.output:
        Path(a.output).write_text(text)
        text = f"wrote {a.output}\n"
    if a.trace:
        text += "--- trace ---\n" + tr.report()
    return text


def cmd_verify_chain(a) -> str:
    names = list(CHAINS) if a.chain == "all" else [a.chain]
    if a.chain != "all" and a.chain not in CHAINS:
        raise InvalidInput(f"unknown chain {a.chain!r}; choose from {', '.join(CHAINS)}")
    out = []
    for name in names:
        family = CHAINS[name][0]
        exh = a.exhaustive_n if family in ("qbf2", "cnf") else None
        srcs = chain_sources(name, exh, max_m=a.max_m, trials=a.trials, seed=a.seed)
        rep = verify_chain(name, srcs)
        out.append(rep.summary())
        if not rep.ok:
            raise InvariantViolation("\n".join(out))
    return "\n".join(out) + "\n"


def cmd_asp_emit(a) -> str:
    art = asp.build_artifact(_load_control(a))
    if a.output:
        art.write(a.output)
        return f"wrote {a.output}\n"
    return art.program_text + "\n% --- instance ---\n" + art.fact_text


def _mem(a):
    return None if a.mem_limit is None else int(a.mem_limit * (1 << 20))


def cmd_asp_solve(a) -> str:
    inst = _load_control(a)
    cmd = asp.resolve_solver(a.solver_bin)
    if a.cross_check:
        return asp.cross_check(inst, cmd, a.time_limit, _mem(a)).report()
    res = asp.run_external(asp.build_artifact(inst), cmd, a.time_limit, _mem(a))
    if res.status in ("timeout", "oom"):
        raise ResourceLimit(f"solver stopped: {res.status} after {res.elapsed:.1f}s")
    text = f"solver status: {res.status}\nseconds: {res.elapsed:.3f}\n"
    if res.decision is None:
        return text + "control possible: unknown\n" + res.output[-2000:]
    return text + f"control possible: {_yn(res.decision)}\n"


def cmd_preflib(a) -> str:
    cmd = asp.resolve_solver(a.solver_bin) if a.solver_bin or a.use_solver else None
    rows = preflib.run_experiment(a.dir, cmd, a.time_limit, _mem(a))
    text = preflib.format_table(rows)
    if a.rows:
        Path(a.rows).write_text(preflib.format_rows(rows))
    s = preflib.summary(rows)
    return text + "summary: " + ", ".join(f"{k} {v}" for k, v in s.items()) + "\n"


def cmd_gen(a) -> str:
    rng = random.Random(a.seed)
    t = a.type
    if t in CONTROL_KINDS:
        inst = random_control_instance(rng, a.rule or "kemeny", t, m=a.candidates,
                                       voters=a.voters, limit=a.limit)
        return format_control(inst)
    if t in GRAPH_KINDS:
        return format_graph_instance(random_graph_instance(rng, t, a.max_n, a.max_k))
    if t == "election":
        return format_election(random_election(rng, a.candidates, a.voters))
    if t == "cnf":
        return format_dimacs(random_cnf(rng, a.vars, a.clauses))
    return format_qcnf(random_qbf2(rng, a.vars, a.clauses))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="votecontrol", description="Election control under Kemeny, Young and Dodgson.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def solver_opts(s):
        s.add_argument("--solver-bin", help=f"solver command (default: ${asp.SOLVER_ENV}, clingo)")
        s.add_argument("--time-limit", type=float, default=3600.0, help="seconds")
        s.add_argument("--mem-limit", type=float, default=16384.0, help="MiB")

    def control_opts(s):
        s.add_argument("--instance", required=True)
        s.add_argument("--rule", choices=RULES)
        s.add_argument("--type", choices=CONTROL_KINDS)
        s.add_argument("--limit", type=int)
        s.add_argument("--preferred", type=int, help="1-based candidate id")

    s = sub.add_parser("score", help="scores under a rule")
    s.add_argument("--rule", choices=RULES, required=True)
    s.add_argument("--election", required=True)
    s.add_argument("--preferred", type=int, help="only this candidate (1-based)")
    s.set_defaults(fn=cmd_score)

    s = sub.add_parser("winners", help="co-winners under a rule")
    s.add_argument("--rule", choices=RULES, required=True)
    s.add_argument("--election", required=True)
    s.set_defaults(fn=cmd_winners)

    s = sub.add_parser("control", help="decide a control instance by brute force")
    control_opts(s)
    s.set_defaults(fn=cmd_control)

    s = sub.add_parser("reduce", help="apply a named reduction to an instance file")
    s.add_argument("reduction", choices=list(REDUCTIONS))
    s.add_argument("--instance", required=True)
    s.add_argument("--output")
    s.add_argument("--trace", action="store_true", help="append a structural report")
    s.set_defaults(fn=cmd_reduce)

    s = sub.add_parser("verify-chain", help="check that a reduction chain preserves decisions")
    s.add_argument("--chain", required=True, help="chain name or 'all'")
    s.add_argument("--exhaustive-n", type=int, help="enumerate formulas (formula chains)")
    s.add_argument("--max-m", type=int, default=2)
    s.add_argument("--trials", type=int, default=50)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(fn=cmd_verify_chain)

    s = sub.add_parser("asp-emit", help="print the logic program and facts")
    control_opts(s)
    s.add_argument("--output")
    s.set_defaults(fn=cmd_asp_emit)

    s = sub.add_parser("asp-solve", help="decide through an external ASP solver")
    control_opts(s)
    solver_opts(s)
    s.add_argument("--cross-check", action="store_true", help="compare with brute force")
    s.set_defaults(fn=cmd_asp_solve)

    s = sub.add_parser("preflib-experiment", help="run the add-candidates experiment on SOC files")
    s.add_argument("--dir", required=True)
    solver_opts(s)
    s.add_argument("--use-solver", action="store_true",
                   help="decide with the resolved ASP solver instead of brute force")
    s.add_argument("--rows", help="also write tab-separated rows here")
    s.set_defaults(fn=cmd_preflib)

    s = sub.add_parser("gen", help="seeded random instance")
    s.add_argument("--type", choices=GEN_TYPES, required=True)
    s.add_argument("--rule", choices=RULES)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--limit", type=int)
    s.add_argument("--candidates", type=int, default=4)
    s.add_argument("--voters", type=int, default=5)
    s.add_argument("--max-n", type=int, default=6)
    s.add_argument("--max-k", type=int, default=2)
    s.add_argument("--vars", type=int, default=2)
    s.add_argument("--clauses", type=int, default=2)
    s.set_defaults(fn=cmd_gen)
    return p


def dispatch(argv: list[str] | None = None) -> tuple[int, str]:
    """Run one command; returns the exit code and the report text."""
    try:
        args = build_parser().parse_args(argv)
        return EXIT_OK, args.fn(args)
    except UsageError as exc:
        return EXIT_USAGE, f"usage error: {exc}\n"
    except (InvalidInput, ConfigurationError) as exc:
        return EXIT_USAGE, f"error: {exc}\n"
    except ResourceLimit as exc:
        return EXIT_RESOURCE, f"resource limit: {exc}\n"
    except InvariantViolation as exc:
        return EXIT_INVARIANT, f"invariant violation: {exc}\n"
    except VoteControlError as exc:
        return EXIT_USAGE, f"error: {exc}\n"


def main(argv: list[str] | None = None) -> int:
    try:
        code, text = dispatch(argv)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    (sys.stdout if code == EXIT_OK else sys.stderr).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

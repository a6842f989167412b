"""PrefLib strict-complete-order (SOC) files and the add-candidates experiment.

Both dialects are read: the legacy layout (candidate count, ``id,name``
lines, a ``voters,total,distinct`` line, then ``count,ranking`` lines) and
the current one (``#`` metadata headers and ``count: ranking`` lines).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from .control import ControlInstance, solve_control
from .election import Election, Vote
from .errors import ConfigurationError, InvalidInput, ResourceLimit, VoteControlError

MIN_CANDIDATES = 4
# brute force is attempted up to this many candidates
BRUTE_LIMIT = 12


@dataclass(frozen=True)
class SocFile:
    """Candidates are renumbered 0..m-1 in declaration order."""
    names: tuple[str, ...]
    votes: tuple[tuple[int, tuple[int, ...]], ...]
    instance_id: str = ""

    @property
    def m(self) -> int:
        return len(self.names)

    @property
    def num_voters(self) -> int:
        return sum(k for k, _ in self.votes)

    def election(self) -> Election:
        return Election(self.m, tuple(Vote(k, o) for k, o in self.votes), self.names)


def _ranking(text: str, ids: dict[int, int], lineno: int) -> tuple[int, ...]:
    if "{" in text:
        raise InvalidInput(f"line {lineno}: ties are not strict orders")
    try:
        raw = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InvalidInput(f"line {lineno}: bad ranking {text!r}") from None
    if any(r not in ids for r in raw):
        raise InvalidInput(f"line {lineno}: unknown candidate in ranking")
    order = tuple(ids[r] for r in raw)
    if len(set(order)) != len(order):
        raise InvalidInput(f"line {lineno}: duplicate candidate in ranking")
    if len(order) != len(ids):
        raise InvalidInput(f"line {lineno}: incomplete ranking")
    return order


def _count(text: str, lineno: int) -> int:
    try:
        k = int(text)
    except ValueError:
        raise InvalidInput(f"line {lineno}: bad vote count {text!r}") from None
    if k < 1:
        raise InvalidInput(f"line {lineno}: vote count must be positive")
    return k


def _parse_modern(lines, instance_id):
    meta: dict[str, str] = {}
    names: dict[int, str] = {}
    body = []
    for lineno, line in lines:
        if line.startswith("#"):
            key, _, val = line[1:].partition(":")
            key = key.strip().upper()
            if key.startswith("ALTERNATIVE NAME"):
                names[int(key.split()[-1])] = val.strip()
            else:
                meta[key] = val.strip()
        else:
            body.append((lineno, line))
    if "NUMBER ALTERNATIVES" in meta:
        m = int(meta["NUMBER ALTERNATIVES"])
        order = sorted(names) if names else list(range(1, m + 1))
        if len(order) != m:
            raise InvalidInput("alternative names do not match the alternative count")
    elif names:
        order = sorted(names)
    else:
        raise InvalidInput("missing NUMBER ALTERNATIVES header")
    ids = {r: i for i, r in enumerate(order)}
    votes = []
    for lineno, line in body:
        head, sep, rest = line.partition(":")
        if not sep:
            raise InvalidInput(f"line {lineno}: expected 'count: ranking'")
        votes.append((_count(head.strip(), lineno), _ranking(rest, ids, lineno)))
    nm = tuple(names.get(r, str(r)) for r in order)
    return SocFile(nm, tuple(votes), meta.get("FILE NAME", instance_id))


def _parse_legacy(lines, instance_id):
    it = iter(lines)
    try:
        lineno, line = next(it)
        m = int(line)
        order, names = [], []
        for _ in range(m):
            lineno, line = next(it)
            key, _, nm = line.partition(",")
            order.append(int(key))
            names.append(nm.strip())
        lineno, line = next(it)
        parts = [int(t) for t in line.split(",")]
    except StopIteration:
        raise InvalidInput("truncated SOC header") from None
    except ValueError:
        raise InvalidInput(f"line {lineno}: malformed SOC header line {line!r}") from None
    if len(parts) != 3:
        raise InvalidInput(f"line {lineno}: expected 'voters,total,distinct'")
    ids = {r: i for i, r in enumerate(order)}
    votes = []
    for lineno, line in it:
        head, _, rest = line.partition(",")
        votes.append((_count(head.strip(), lineno), _ranking(rest, ids, lineno)))
    total = sum(k for k, _ in votes)
    if total != parts[0] or len(votes) != parts[2]:
        raise InvalidInput("vote totals disagree with the header line")
    return SocFile(tuple(names), tuple(votes), instance_id)


def parse_soc(text: str, instance_id: str = "") -> SocFile:
    lines = [(i, l.strip()) for i, l in enumerate(text.splitlines(), 1) if l.strip()]
    if not lines:
        raise InvalidInput("empty SOC file")
    if lines[0][1].startswith("#"):
        return _parse_modern(lines, instance_id)
    return _parse_legacy(lines, instance_id)


def format_soc(s: SocFile, dialect: str = "modern") -> str:
    if dialect == "legacy":
        out = [str(s.m)] + [f"{i + 1},{nm}" for i, nm in enumerate(s.names)]
        out.append(f"{s.num_voters},{s.num_voters},{len(s.votes)}")
        out += [f"{k}," + ",".join(str(c + 1) for c in o) for k, o in s.votes]
    elif dialect == "modern":
        out = []
        if s.instance_id:
            out.append(f"# FILE NAME: {s.instance_id}")
        out += ["# DATA TYPE: soc", f"# NUMBER ALTERNATIVES: {s.m}",
                f"# NUMBER VOTERS: {s.num_voters}", f"# NUMBER UNIQUE ORDERS: {len(s.votes)}"]
        out += [f"# ALTERNATIVE NAME {i + 1}: {nm}" for i, nm in enumerate(s.names)]
        out += [f"{k}: " + ",".join(str(c + 1) for c in o) for k, o in s.votes]
    else:
        raise InvalidInput(f"unknown SOC dialect {dialect!r}")
    return "\n".join(out) + "\n"


def experiment_split(m: int) -> tuple[int, int, int]:
    """(registered, unregistered, limit) for m candidates."""
    u = math.ceil(m / 5)
    return m - u, u, math.ceil(u / 3)


def build_experiment_instance(s: SocFile) -> ControlInstance:
    """First candidate preferred; the last fifth (rounded up) is
    unregistered, with an add limit of a third of those (rounded up)."""
    if s.m < MIN_CANDIDATES:
        raise InvalidInput(f"experiment needs at least {MIN_CANDIDATES} candidates, got {s.m}")
    reg, u, k = experiment_split(s.m)
    return ControlInstance("kemeny", "ccac", s.election(), 0, k,
                           unregistered=frozenset(range(reg, s.m)))


@dataclass
class ExperimentRow:
    instance: str
    registered: int
    unregistered: int
    voters: int
    decision: bool | None
    seconds: float
    outcome: str  # solved, timeout, oom, skipped, error
    note: str = ""

    def cells(self) -> list[str]:
        dec = {True: "Yes", False: "No", None: "-"}[self.decision]
        return [self.instance, str(self.registered), str(self.unregistered), str(self.voters),
                f"{self.seconds:.2f}", dec, self.outcome]


HEADER = ["Instance", "#Reg", "#Unreg", "#Voters", "Seconds", "Control Possible", "Outcome"]


def _decide(inst, solver_cmd, time_limit, mem_limit):
    if solver_cmd is not None:
        from .asp import build_artifact, run_external
        res = run_external(build_artifact(inst), solver_cmd, time_limit, mem_limit)
        if res.status in ("timeout", "oom"):
            return None, res.elapsed, res.status, ""
        if res.decision is None:
            return None, res.elapsed, "error", "solver error"
        return res.decision, res.elapsed, "solved", ""
    if inst.election.num_candidates > BRUTE_LIMIT:
        return None, 0.0, "skipped", f"more than {BRUTE_LIMIT} candidates for brute force"
    out = solve_control(inst)
    return out.decision, out.elapsed, "solved", ""


def run_experiment(directory, solver_cmd: list[str] | None = None,
                   time_limit: float | None = 3600, mem_limit: int | None = 16 << 30
                   ) -> list[ExperimentRow]:
    """One row per SOC file in ``directory`` (sorted by name).  Decisions
    come from the external solver when a command is given, otherwise from
    brute force on files with at most ``BRUTE_LIMIT`` candidates."""
    root = Path(directory)
    if not root.is_dir():
        raise ConfigurationError(f"data directory {root} not found")
    rows = []
    for path in sorted(root.glob("*.soc")):
        try:
            s = parse_soc(path.read_text(), path.stem)
            name = path.stem
            if s.m < MIN_CANDIDATES:
                rows.append(ExperimentRow(name, s.m, 0, s.num_voters, None, 0.0, "skipped",
                                          f"fewer than {MIN_CANDIDATES} candidates"))
                continue
            reg, u, _ = experiment_split(s.m)
            inst = build_experiment_instance(s)
            dec, secs, outcome, note = _decide(inst, solver_cmd, time_limit, mem_limit)
            rows.append(ExperimentRow(name, reg, u, s.num_voters, dec, secs, outcome, note))
        except ConfigurationError:
            raise
        except (VoteControlError, ResourceLimit, OSError, ValueError) as exc:
            rows.append(ExperimentRow(path.stem, 0, 0, 0, None, 0.0, "error", str(exc)))
    return rows


def format_table(rows: list[ExperimentRow]) -> str:
    cells = [HEADER] + [r.cells() for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(HEADER))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    for r in rows:
        if r.note:
            lines.append(f"note {r.instance}: {r.note}")
    return "\n".join(lines) + "\n"


def format_rows(rows: list[ExperimentRow], sep: str = "\t") -> str:
    return "\n".join(sep.join(row) for row in [HEADER] + [r.cells() for r in rows]) + "\n"


def summary(rows: list[ExperimentRow]) -> dict[str, int]:
    out = {"files": len(rows)}
    for r in rows:
        out[r.outcome] = out.get(r.outcome, 0) + 1
    return out

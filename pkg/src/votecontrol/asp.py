"""Saturation encoding of Kemeny control by adding candidates.

The program guesses the added candidates together with a consensus that
puts the preferred candidate first, then co-guesses a rival ordering.
The token ``sat`` is derived whenever the rival is malformed, starts with
the preferred candidate or is not strictly closer to the votes; saturation
makes every candidate model that survives all rivals an answer set.

An external grounder/solver is driven through a subprocess.  Clingo's
conventions apply: exit code 10 or 30 with ``SATISFIABLE`` means an answer
set exists, exit code 20 with ``UNSATISFIABLE`` means none does.
"""

from __future__ import annotations

import os
import re
import shlex
import shutil
import subprocess
import sys
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path

from .control import ControlInstance, solve_control
from .election import Election, Vote
from .errors import ConfigurationError, InvalidInput, InvariantViolation

SOLVER_ENV = "VOTECONTROL_SOLVER"
# clasp's equivalence preprocessing loses answer sets of this program on
# rare instances; disabling it restores agreement with brute force
CLINGO_FLAGS = ["--eq=0"]

_GUESS = """\
preference(1..P) :- prefnum(P).
candidate(1..C) :- rcandnum(C).
ucandidate((M+1)..(M+N)) :- rcandnum(M), ucandnum(N).
% Guess a subset of at most K candidates to add
{ candidate(C) : ucandidate(C) } K :- limit(K).
candnum(N) :- N = #count{ candidate(C) : candidate(C) }.
% wrank(P,C,D): vote P puts D above C
wrank(P,C,D) :- p(P,X,C), p(P,Y,D), Y < X.
wrankC(C,D,N) :- candidate(C), candidate(D), N = #sum{ VC,P : votecount(P,VC), wrank(P,C,D) }.
position(1..M) :- candnum(M).
% Guess a consensus ranking
gpref(X,C) | ungpref(X,C) :- position(X), candidate(C).
:- gpref(X,C), gpref(Y,C), X != Y.
:- gpref(X,C), gpref(X,D), D != C.
:- gpref(X,C), ungpref(X,C).
npos(X,Y) :- position(X), Y = X+1.
countTo(C,1) :- ungpref(1,C).
countTo(C,X) :- countTo(C,Y), npos(Y,X), ungpref(X,C).
:- countTo(C,X), candidate(C), candnum(X).
rank(C,D) :- gpref(X,C), gpref(Y,D), X < Y.
gwrankC(C,D,N) :- rank(C,D), wrankC(C,D,N).
% The preferred candidate heads the consensus
:- preferredCand(X), gpref(Y,X), position(Y), Y != 1.
"""

_CHECK = """\
gprefp(X,C) | ungprefp(X,C) :- position(X), candidate(C).
sat :- gprefp(X,C), gprefp(Y,C), X != Y.
sat :- gprefp(X,C), gprefp(X,D), D != C.
sat :- gprefp(X,C), ungprefp(X,C).
countTop(C,1) :- ungprefp(1,C).
countTop(C,X) :- countTop(C,Y), npos(Y,X), ungprefp(X,C).
sat :- countTop(C,X), candidate(C), candnum(X).
rankp(C,D) :- gprefp(X,C), gprefp(Y,D), X < Y.
gwrankCp(C,D,N) :- rankp(C,D), wrankC(C,D,N).
% The rival is no closer to the votes
sat :- #sum{ M,C1,C2,pos : gwrankCp(C1,C2,M); -N,D1,D2,neg : gwrankC(D1,D2,N) } >= 0.
sat :- preferredCand(X), gprefp(1,X).
"""

_SATURATE = """\
gprefp(X,C) :- position(X), candidate(C), sat.
ungprefp(X,C) :- position(X), candidate(C), sat.
possibleCount(0..X) :- voternum(X).
gwrankCp(C,D,N) :- candidate(C), candidate(D), possibleCount(N), sat.
rankp(C,D) :- candidate(C), candidate(D), sat.
countTop(C,N) :- candidate(C), position(N), sat.
:- not sat.
"""

_HEADER = """\
% Kemeny control by adding candidates: guess, check and saturation parts.
% Primed predicates carry a "p" suffix: gprefp, ungprefp, countTop, rankp,
% gwrankCp stand for gpref', ungpref', countTo', rank', gwrankC'.
% The consistency constraint on a guessed position reads gpref(X,C),
% ungpref(X,C); the source figure prints its first atom as "grepf".
"""


def emit_program() -> str:
    return (_HEADER + "\n% --- guess ---\n" + _GUESS + "\n% --- check ---\n" + _CHECK
            + "\n% --- saturate ---\n" + _SATURATE)


@dataclass(frozen=True)
class FactBase:
    """Instance facts.  Fact candidate ``i`` (1-based) is ``labels[i-1]`` in
    the source election; registered candidates come first."""
    rcandnum: int
    ucandnum: int
    limit: int
    preferred: int
    votes: tuple[tuple[int, tuple[int, ...]], ...]
    labels: tuple[int, ...] = ()

    @property
    def prefnum(self) -> int:
        return len(self.votes)

    @property
    def voternum(self) -> int:
        return sum(k for k, _ in self.votes)

    def text(self) -> str:
        out = [f"prefnum({self.prefnum}).", f"rcandnum({self.rcandnum}).",
               f"ucandnum({self.ucandnum}).", f"limit({self.limit}).",
               f"preferredCand({self.preferred}).", f"voternum({self.voternum})."]
        for i, lab in enumerate(self.labels, 1):
            out.append(f"% label {i} {lab + 1}")
        for i, (k, order) in enumerate(self.votes, 1):
            out.append(f"votecount({i},{k}).")
            out.append(" ".join(f"p({i},{j},{c})." for j, c in enumerate(order, 1)))
        return "\n".join(out) + "\n"

    def to_instance(self) -> ControlInstance:
        """The control instance in the source labelling (votes merged)."""
        m = self.rcandnum + self.ucandnum
        labels = self.labels or tuple(range(m))
        votes = tuple(Vote(k, tuple(labels[c - 1] for c in order)) for k, order in self.votes)
        unreg = frozenset(labels[c - 1] for c in range(self.rcandnum + 1, m + 1))
        return ControlInstance("kemeny", "ccac", Election(m, votes), labels[self.preferred - 1],
                               self.limit, unregistered=unreg)


def facts_from_ccac(inst: ControlInstance) -> FactBase:
    if inst.rule != "kemeny" or inst.kind != "ccac":
        raise InvalidInput("the encoding covers Kemeny control by adding candidates only")
    e = inst.election
    if e.has_partial:
        raise InvalidInput("the encoding needs complete votes")
    if inst.preferred in inst.unregistered:
        raise InvalidInput("the preferred candidate must be registered")
    reg = [c for c in e.candidates if c not in inst.unregistered]
    unreg = sorted(inst.unregistered)
    labels = tuple(reg + unreg)
    fid = {c: i for i, c in enumerate(labels, 1)}
    counts: dict[tuple[int, ...], int] = {}
    for v in e.votes:
        key = tuple(fid[c] for c in v.order)
        counts[key] = counts.get(key, 0) + v.count
    return FactBase(len(reg), len(unreg), inst.limit, fid[inst.preferred],
                    tuple((k, o) for o, k in counts.items()), labels)


_ATOM = re.compile(r"(\w+)\(([^()]*)\)\.")


def parse_facts(text: str) -> FactBase:
    scalars: dict[str, int] = {}
    counts: dict[int, int] = {}
    pos: dict[int, dict[int, int]] = {}
    labels: dict[int, int] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if line.startswith("% label"):
            _, _, i, lab = line.split()
            labels[int(i)] = int(lab) - 1
            continue
        if not line or line.startswith("%"):
            continue
        for name, args in _ATOM.findall(line):
            try:
                vals = [int(a) for a in args.split(",")]
            except ValueError:
                raise InvalidInput(f"line {lineno}: non-integer fact {name}({args})") from None
            if name == "votecount":
                counts[vals[0]] = vals[1]
            elif name == "p":
                pos.setdefault(vals[0], {})[vals[1]] = vals[2]
            else:
                scalars[name] = vals[0]
    need = ("prefnum", "rcandnum", "ucandnum", "limit", "preferredCand", "voternum")
    missing = [k for k in need if k not in scalars]
    if missing:
        raise InvalidInput("missing facts: " + ", ".join(missing))
    votes = []
    for i in range(1, scalars["prefnum"] + 1):
        if i not in counts or i not in pos:
            raise InvalidInput(f"vote {i} lacks votecount or p facts")
        row = pos[i]
        votes.append((counts[i], tuple(row[j] for j in sorted(row))))
    fb = FactBase(scalars["rcandnum"], scalars["ucandnum"], scalars["limit"],
                  scalars["preferredCand"], tuple(votes),
                  tuple(labels[i] for i in sorted(labels)))
    if fb.voternum != scalars["voternum"]:
        raise InvalidInput("votecount facts do not sum to voternum")
    return fb


@dataclass(frozen=True)
class AspArtifact:
    program_text: str
    fact_text: str
    path: Path | None = None

    def write(self, path) -> "AspArtifact":
        path = Path(path)
        path.write_text(self.program_text + "\n% --- instance ---\n" + self.fact_text)
        return AspArtifact(self.program_text, self.fact_text, path)


def build_artifact(inst: ControlInstance) -> AspArtifact:
    return AspArtifact(emit_program(), facts_from_ccac(inst).text())


# --- external solver --------------------------------------------------------

@dataclass
class SolverResult:
    status: str  # sat, unsat, timeout, oom, solver_error
    elapsed: float
    returncode: int | None = None
    output: str = ""

    @property
    def decision(self) -> bool | None:
        return {"sat": True, "unsat": False}.get(self.status)


def resolve_solver(solver_bin: str | None = None) -> list[str]:
    """Solver command: explicit argument, then the environment variable,
    then ``clingo`` on PATH, then the clingo Python module."""
    for cand in (solver_bin, os.environ.get(SOLVER_ENV)):
        if cand:
            cmd = shlex.split(cand)
            if shutil.which(cmd[0]) is None:
                raise ConfigurationError(f"solver binary {cmd[0]!r} not found")
            return cmd
    found = shutil.which("clingo")
    if found:
        return [found]
    try:
        import importlib.util
        if importlib.util.find_spec("clingo") is not None:
            return [sys.executable, "-m", "clingo"]
    except (ImportError, ValueError):
        pass
    raise ConfigurationError(f"no ASP solver configured; pass --solver-bin or set {SOLVER_ENV}")


def _is_clingo(cmd: list[str]) -> bool:
    return (os.path.basename(cmd[0]).startswith("clingo")
            or cmd[1:3] == ["-m", "clingo"])


def solver_command(cmd: list[str]) -> list[str]:
    """Append ``CLINGO_FLAGS`` to clingo commands that set no --eq themselves."""
    if _is_clingo(cmd) and not any(a.startswith("--eq") for a in cmd):
        return cmd + CLINGO_FLAGS
    return cmd


def solver_available(solver_bin: str | None = None) -> bool:
    try:
        resolve_solver(solver_bin)
    except ConfigurationError:
        return False
    return True


def _limit_memory(mem_limit: int | None):
    if mem_limit is None:
        return None

    def apply():
        import resource
        resource.setrlimit(resource.RLIMIT_AS, (mem_limit, mem_limit))
    return apply


def classify(returncode: int | None, output: str, timed_out: bool = False) -> str:
    if timed_out:
        return "timeout"
    if re.search(r"\bUNSATISFIABLE\b", output):
        return "unsat"
    if re.search(r"\bSATISFIABLE\b", output):
        return "sat"
    low = output.lower()
    if "memory" in low or "bad_alloc" in low or returncode in (-9, 137):
        return "oom"
    if "TIME LIMIT" in output or "INTERRUPTED" in output:
        return "timeout"
    return "solver_error"


def run_external(artifact: AspArtifact, solver_cmd: list[str] | str | None = None,
                 time_limit: float | None = 3600, mem_limit: int | None = 16 << 30) -> SolverResult:
    """Run the solver on the artifact (written to a temporary file if it has
    no path) and classify the outcome."""
    cmd = solver_cmd if isinstance(solver_cmd, list) else resolve_solver(solver_cmd)
    tmp = None
    if artifact.path is None:
        tmp = tempfile.NamedTemporaryFile("w", suffix=".lp", delete=False)
        tmp.close()
        artifact = artifact.write(tmp.name)
    start = time.perf_counter()
    try:
        proc = subprocess.run(solver_command(cmd) + [str(artifact.path)], capture_output=True, text=True,
                              timeout=time_limit, preexec_fn=_limit_memory(mem_limit))
    except subprocess.TimeoutExpired as exc:
        out = exc.stdout if isinstance(exc.stdout, str) else ""
        return SolverResult("timeout", time.perf_counter() - start, None, out)
    except OSError as exc:
        raise ConfigurationError(f"cannot run solver {cmd[0]!r}: {exc}") from None
    finally:
        if tmp is not None:
            os.unlink(tmp.name)
    out = proc.stdout + proc.stderr
    return SolverResult(classify(proc.returncode, out), time.perf_counter() - start,
                        proc.returncode, out)


@dataclass
class CrossCheck:
    external: SolverResult
    brute_force: bool
    brute_seconds: float
    witness: tuple | None = None

    @property
    def agree(self) -> bool:
        return self.external.decision == self.brute_force

    def report(self) -> str:
        yn = {True: "yes", False: "no", None: "undecided"}
        return (f"external: {self.external.status} ({yn[self.external.decision]},"
                f" {self.external.elapsed:.3f}s)\n"
                f"brute force: {yn[self.brute_force]} ({self.brute_seconds:.3f}s)\n"
                f"agree: {'yes' if self.agree else 'no'}\n")


def cross_check(inst: ControlInstance, solver_cmd=None, time_limit: float | None = 600,
                mem_limit: int | None = None) -> CrossCheck:
    ext = run_external(build_artifact(inst), solver_cmd, time_limit, mem_limit)
    bf = solve_control(inst)
    out = CrossCheck(ext, bf.decision, bf.elapsed, bf.witness)
    if ext.decision is None:
        return out
    if not out.agree:
        raise InvariantViolation(
            f"ASP decision {ext.status} differs from brute force ({bf.decision},"
            f" witness {bf.witness})\nsolver output:\n{ext.output}")
    return out

"""3CNF and two-level QBF formulas, brute-force deciders and file formats.

Literals use the DIMACS convention: variable ``i`` (1-based) is ``i`` and
its negation ``-i``.  A ``Qbf2Formula`` with ``n`` variables per block uses
``1..n`` for the existential x-block and ``n+1..2n`` for the y-block and
means: there is an x-assignment under which no y-assignment satisfies phi.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InvalidInput, ResourceLimit

SAT_LIMIT = 24
QSAT_LIMIT = 12


def _check_clauses(clauses, num_vars):
    out = []
    for i, cl in enumerate(clauses):
        cl = tuple(int(x) for x in cl)
        if len(cl) != 3:
            raise InvalidInput(f"clause {i} has {len(cl)} literals, expected 3")
        if any(x == 0 or abs(x) > num_vars for x in cl):
            raise InvalidInput(f"clause {i} uses a variable outside 1..{num_vars}")
        out.append(cl)
    return tuple(out)


@dataclass(frozen=True)
class Cnf:
    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.num_vars < 0:
            raise InvalidInput("negative variable count")
        object.__setattr__(self, "clauses", _check_clauses(self.clauses, self.num_vars))

    @property
    def m(self) -> int:
        return len(self.clauses)


@dataclass(frozen=True)
class Qbf2Formula:
    n: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInput("each block needs at least one variable")
        object.__setattr__(self, "clauses", _check_clauses(self.clauses, 2 * self.n))

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def m_hat(self) -> int:
        """Number of y-literal occurrences over all clauses."""
        return sum(1 for cl in self.clauses for x in cl if abs(x) > self.n)

    def is_x(self, lit: int) -> bool:
        return abs(lit) <= self.n

    def matrix(self) -> Cnf:
        return Cnf(2 * self.n, self.clauses)


def _satisfied(clauses, value) -> bool:
    return all(any(value[abs(x)] == (x > 0) for x in cl) for cl in clauses)


def sat3_decide(phi: Cnf, limit: int = SAT_LIMIT) -> tuple[bool, tuple[bool, ...] | None]:
    """Satisfiability by enumeration; the witness lists values of 1..n."""
    if phi.num_vars > limit:
        raise ResourceLimit(f"{phi.num_vars} variables exceeds limit {limit}")
    for bits in itertools.product((False, True), repeat=phi.num_vars):
        value = (None,) + bits
        if _satisfied(phi.clauses, value):
            return True, bits
    return False, None


def qsat2_decide(f: Qbf2Formula, limit: int = QSAT_LIMIT) -> tuple[bool, tuple[bool, ...] | None]:
    """Decide the formula; the witness is an x-assignment refuting every y."""
    if f.n > limit:
        raise ResourceLimit(f"block size {f.n} exceeds limit {limit}")
    for xs in itertools.product((False, True), repeat=f.n):
        if not any(_satisfied(f.clauses, (None,) + xs + ys)
                   for ys in itertools.product((False, True), repeat=f.n)):
            return True, xs
    return False, None


def pad_qbf2(f: Qbf2Formula, min_n: int) -> Qbf2Formula:
    """Grow both blocks to ``min_n`` variables with fresh unused variables."""
    if min_n <= f.n:
        return f
    shift = min_n - f.n

    def move(x):
        return x if abs(x) <= f.n else (x + shift if x > 0 else x - shift)

    return Qbf2Formula(min_n, tuple(tuple(move(x) for x in cl) for cl in f.clauses))


# --- enumerations used by the exhaustive sweeps ----------------------------

def clause_patterns(num_vars: int) -> list[tuple[int, int, int]]:
    """All clauses as multisets of three literals over ``num_vars`` variables."""
    lits = []
    for v in range(1, num_vars + 1):
        lits += [v, -v]
    return list(itertools.combinations_with_replacement(lits, 3))


def formula_patterns(num_vars: int, max_m: int):
    """All multisets of 1..max_m clause patterns, in a fixed order."""
    pats = clause_patterns(num_vars)
    for m in range(1, max_m + 1):
        for combo in itertools.combinations_with_replacement(pats, m):
            yield combo


def all_qbf2(n: int, max_m: int):
    for clauses in formula_patterns(2 * n, max_m):
        yield Qbf2Formula(n, clauses)


def all_3cnf(max_n: int, max_m: int):
    for n in range(1, max_n + 1):
        for clauses in formula_patterns(n, max_m):
            yield Cnf(n, clauses)


# --- file formats ----------------------------------------------------------

def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("c") and not line.startswith("#"):
            yield lineno, line


def _clause_line(line: str, lineno: int) -> tuple[int, ...]:
    try:
        nums = [int(t) for t in line.split()]
    except ValueError:
        raise InvalidInput(f"line {lineno}: bad clause {line!r}") from None
    if not nums or nums[-1] != 0:
        raise InvalidInput(f"line {lineno}: clause must end with 0")
    return tuple(nums[:-1])


def parse_dimacs(text: str) -> Cnf:
    header = None
    clauses = []
    for lineno, line in _content_lines(text):
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise InvalidInput(f"line {lineno}: expected 'p cnf <vars> <clauses>'")
            header = (int(parts[2]), int(parts[3]))
        else:
            if header is None:
                raise InvalidInput(f"line {lineno}: clause before header")
            clauses.append(_clause_line(line, lineno))
    if header is None:
        raise InvalidInput("missing 'p cnf' header")
    if len(clauses) != header[1]:
        raise InvalidInput(f"header promises {header[1]} clauses, found {len(clauses)}")
    return Cnf(header[0], tuple(clauses))


def format_dimacs(phi: Cnf) -> str:
    out = [f"p cnf {phi.num_vars} {phi.m}"]
    out += [" ".join(str(x) for x in cl) + " 0" for cl in phi.clauses]
    return "\n".join(out) + "\n"


def parse_qcnf(text: str) -> Qbf2Formula:
    header = None
    blocks: dict[str, tuple[int, ...]] = {}
    clauses = []
    for lineno, line in _content_lines(text):
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "qcnf":
                raise InvalidInput(f"line {lineno}: expected 'p qcnf <vars> <clauses>'")
            header = (int(parts[2]), int(parts[3]))
        elif line[0] in "xy":
            blocks[line[0]] = _clause_line(line[1:], lineno)
        else:
            if header is None:
                raise InvalidInput(f"line {lineno}: clause before header")
            clauses.append(_clause_line(line, lineno))
    if header is None or set(blocks) != {"x", "y"}:
        raise InvalidInput("need a 'p qcnf' header and both 'x' and 'y' lines")
    n = len(blocks["x"])
    if (blocks["x"] != tuple(range(1, n + 1))
            or blocks["y"] != tuple(range(n + 1, 2 * n + 1)) or header[0] != 2 * n):
        raise InvalidInput("blocks must be x = 1..n and y = n+1..2n")
    if len(clauses) != header[1]:
        raise InvalidInput(f"header promises {header[1]} clauses, found {len(clauses)}")
    return Qbf2Formula(n, tuple(clauses))


def format_qcnf(f: Qbf2Formula) -> str:
    out = [f"p qcnf {2 * f.n} {f.m}",
           "x " + " ".join(str(i) for i in range(1, f.n + 1)) + " 0",
           "y " + " ".join(str(i) for i in range(f.n + 1, 2 * f.n + 1)) + " 0"]
    out += [" ".join(str(x) for x in cl) + " 0" for cl in f.clauses]
    return "\n".join(out) + "\n"

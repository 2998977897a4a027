"""Internal SAT solver and external solver bridge.

The internal solver is complete and deterministic: two-watched-literal unit
propagation, first-UIP clause learning with backjumping, no restarts,
branching on the lowest-index unassigned variable with false tried first.
Resource caps yield an explicit "unknown", never a wrong answer.
"""

from __future__ import annotations

import os
import re
import subprocess
import tempfile
import time
from dataclasses import dataclass, field

from cubevis.encode import CnfFormula

SOLVER_ENV_VAR = "CUBEVIS_SAT_SOLVER"


@dataclass
class SolveOutcome:
    status: str  # "sat" | "unsat" | "unknown"
    assignment: list[bool] | None = None  # 1-indexed; [0] unused
    conflicts: int = 0
    decisions: int = 0
    detail: str = ""

    @property
    def is_sat(self) -> bool:
        return self.status == "sat"

    @property
    def is_unsat(self) -> bool:
        return self.status == "unsat"


def _as_clauses(formula) -> tuple[int, list[list[int]]]:
    if isinstance(formula, CnfFormula):
        return formula.num_vars, formula.clauses
    num_vars, clauses = formula
    return num_vars, clauses


class _Solver:
    def __init__(self, num_vars: int, clauses: list[list[int]]):
        self.n = num_vars
        self.assign = [0] * (num_vars + 1)  # 0 unknown, 1 true, -1 false
        self.level = [0] * (num_vars + 1)
        self.reason: list[list[int] | None] = [None] * (num_vars + 1)
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.watches: dict[int, list[list[int]]] = {}
        self.clauses: list[list[int]] = []
        self.units: list[int] = []
        self.conflicts = 0
        self.decisions = 0
        self.unsat_from_input = False
        for clause in clauses:
            lits = sorted(set(clause), key=abs)
            if any(-lit in lits for lit in lits):
                continue  # tautology
            if not lits:
                self.unsat_from_input = True
                return
            if len(lits) == 1:
                self.units.append(lits[0])
            else:
                self._attach(lits)

    def _attach(self, clause: list[int]) -> None:
        self.clauses.append(clause)
        self.watches.setdefault(clause[0], []).append(clause)
        self.watches.setdefault(clause[1], []).append(clause)

    def _value(self, lit: int) -> int:
        v = self.assign[abs(lit)]
        return v if lit > 0 else -v

    def _enqueue(self, lit: int, reason: list[int] | None) -> bool:
        var = abs(lit)
        val = 1 if lit > 0 else -1
        if self.assign[var] != 0:
            return self.assign[var] == val
        self.assign[var] = val
        self.level[var] = len(self.trail_lim)
        self.reason[var] = reason
        self.trail.append(lit)
        return True

    def _propagate(self) -> list[int] | None:
        """Returns the conflicting clause or None."""
        while self.qhead < len(self.trail):
            lit = self.trail[self.qhead]
            self.qhead += 1
            falsified = -lit
            watch_list = self.watches.get(falsified)
            if not watch_list:
                continue
            i = 0
            while i < len(watch_list):
                clause = watch_list[i]
                # normalize: watched literals at positions 0 and 1
                if clause[0] == falsified:
                    clause[0], clause[1] = clause[1], clause[0]
                first = clause[0]
                if self._value(first) == 1:
                    i += 1
                    continue
                moved = False
                for k in range(2, len(clause)):
                    if self._value(clause[k]) != -1:
                        clause[1], clause[k] = clause[k], clause[1]
                        self.watches.setdefault(clause[1], []).append(clause)
                        watch_list[i] = watch_list[-1]
                        watch_list.pop()
                        moved = True
                        break
                if moved:
                    continue
                # clause is unit or conflicting under the watch invariant
                if self._value(first) == -1:
                    return clause
                self._enqueue(first, clause)
                i += 1
        return None

    def _analyze(self, conflict: list[int]) -> tuple[list[int], int]:
        """First-UIP learned clause and the backjump level."""
        learned: list[int] = []
        seen = [False] * (self.n + 1)
        counter = 0
        lit_iter = conflict
        idx = len(self.trail) - 1
        uip = 0
        cur_level = len(self.trail_lim)
        while True:
            for lit in lit_iter:
                var = abs(lit)
                if seen[var] or self.level[var] == 0:
                    continue
                seen[var] = True
                if self.level[var] == cur_level:
                    counter += 1
                else:
                    learned.append(lit)
            while not seen[abs(self.trail[idx])]:
                idx -= 1
            uip = self.trail[idx]
            seen[abs(uip)] = False
            counter -= 1
            if counter == 0:
                break
            reason = self.reason[abs(uip)]
            lit_iter = [l for l in reason if l != uip] if reason else []
            idx -= 1
        learned.insert(0, -uip)
        if len(learned) == 1:
            return learned, 0
        back = max(self.level[abs(lit)] for lit in learned[1:])
        # put a literal of the backjump level in the second watch position
        for k in range(1, len(learned)):
            if self.level[abs(learned[k])] == back:
                learned[1], learned[k] = learned[k], learned[1]
                break
        return learned, back

    def _cancel_until(self, target_level: int) -> None:
        while len(self.trail_lim) > target_level:
            lim = self.trail_lim.pop()
            for lit in self.trail[lim:]:
                var = abs(lit)
                self.assign[var] = 0
                self.reason[var] = None
            del self.trail[lim:]
        self.qhead = min(self.qhead, len(self.trail))

    def solve(
        self,
        conflict_budget: int | None = None,
        time_budget: float | None = None,
    ) -> SolveOutcome:
        if self.unsat_from_input:
            return SolveOutcome(status="unsat")
        deadline = time.monotonic() + time_budget if time_budget else None
        for lit in self.units:
            if not self._enqueue(lit, None):
                return SolveOutcome(status="unsat")
        if self._propagate() is not None:
            return SolveOutcome(status="unsat")
        next_var = 1
        while True:
            # pick lowest-index unassigned variable, false first
            while next_var <= self.n and self.assign[next_var] != 0:
                next_var += 1
            if next_var > self.n:
                assignment = [False] * (self.n + 1)
                for var in range(1, self.n + 1):
                    assignment[var] = self.assign[var] == 1
                return SolveOutcome(
                    status="sat",
                    assignment=assignment,
                    conflicts=self.conflicts,
                    decisions=self.decisions,
                )
            self.decisions += 1
            self.trail_lim.append(len(self.trail))
            self._enqueue(-next_var, None)
            while True:
                conflict = self._propagate()
                if conflict is None:
                    break
                self.conflicts += 1
                if conflict_budget is not None and self.conflicts > conflict_budget:
                    return SolveOutcome(
                        status="unknown",
                        conflicts=self.conflicts,
                        decisions=self.decisions,
                        detail="conflict budget exceeded",
                    )
                if deadline is not None and time.monotonic() > deadline:
                    return SolveOutcome(
                        status="unknown",
                        conflicts=self.conflicts,
                        decisions=self.decisions,
                        detail="time budget exceeded",
                    )
                if not self.trail_lim:
                    return SolveOutcome(
                        status="unsat",
                        conflicts=self.conflicts,
                        decisions=self.decisions,
                    )
                learned, back = self._analyze(conflict)
                self._cancel_until(back)
                if len(learned) == 1:
                    if not self._enqueue(learned[0], None):
                        return SolveOutcome(
                            status="unsat",
                            conflicts=self.conflicts,
                            decisions=self.decisions,
                        )
                else:
                    self._attach(learned)
                    self._enqueue(learned[0], learned)
                next_var = 1


def dpll_solve(
    formula,
    conflict_budget: int | None = None,
    time_budget: float | None = None,
) -> SolveOutcome:
    """Complete internal solve; formula is a CnfFormula or (num_vars, clauses)."""
    num_vars, clauses = _as_clauses(formula)
    return _Solver(num_vars, clauses).solve(conflict_budget, time_budget)


def validate_assignment(formula, assignment: list[bool]) -> bool:
    _, clauses = _as_clauses(formula)
    return all(
        any((lit > 0) == assignment[abs(lit)] for lit in clause) for clause in clauses
    )


def default_solver_cmd() -> str | None:
    return os.environ.get(SOLVER_ENV_VAR) or None


def external_solve(
    formula: CnfFormula,
    solver_cmd: str,
    time_budget: float | None = None,
) -> SolveOutcome:
    """Run an external DIMACS solver; template must contain {cnf}.

    Parses SAT-competition output ("s ..." / "v ..." lines).  A reported
    model is validated against the formula before being accepted.
    """
    if "{cnf}" not in solver_cmd:
        solver_cmd = solver_cmd + " {cnf}"
    with tempfile.NamedTemporaryFile(
        "w", suffix=".cnf", delete=False, encoding="utf-8"
    ) as f:
        f.write(formula.to_dimacs())
        path = f.name
    try:
        try:
            proc = subprocess.run(
                solver_cmd.format(cnf=path),
                shell=True,
                capture_output=True,
                text=True,
                timeout=time_budget,
            )
        except subprocess.TimeoutExpired:
            return SolveOutcome(status="unknown", detail="solver timeout")
        status = None
        values: list[int] = []
        for line in proc.stdout.splitlines():
            if line.startswith("s "):
                tag = line[2:].strip().upper()
                if tag == "SATISFIABLE":
                    status = "sat"
                elif tag == "UNSATISFIABLE":
                    status = "unsat"
                else:
                    status = "unknown"
            elif line.startswith("v "):
                values.extend(int(t) for t in line[2:].split() if t != "0")
        if status is None:
            return SolveOutcome(
                status="unknown",
                detail=f"no status line (exit {proc.returncode})",
            )
        if status == "sat":
            assignment = [False] * (formula.num_vars + 1)
            for lit in values:
                var = abs(lit)
                if not 1 <= var <= formula.num_vars:
                    return SolveOutcome(
                        status="unknown", detail=f"model variable {var} out of range"
                    )
                assignment[var] = lit > 0
            if not validate_assignment(formula, assignment):
                raise ValueError("external solver reported a non-model assignment")
            return SolveOutcome(status="sat", assignment=assignment)
        if status == "unsat":
            return SolveOutcome(status="unsat")
        return SolveOutcome(status="unknown", detail="solver reported unknown")
    finally:
        os.unlink(path)


def solve(
    formula: CnfFormula,
    solver_cmd: str | None = None,
    conflict_budget: int | None = None,
    time_budget: float | None = None,
) -> SolveOutcome:
    """External solver when configured, internal otherwise."""
    if solver_cmd:
        return external_solve(formula, solver_cmd, time_budget)
    return dpll_solve(formula, conflict_budget, time_budget)

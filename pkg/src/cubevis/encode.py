"""ILP and CNF model emission for the visibility variants.

Conventions (deliberately opposite, both used downstream):
  ILP: x_v = 1  iff v is in the set; CNF: x_v = 0 (false) iff v is in the set.
CNF vertex variables are 1..2^h in vertex order, then one auxiliary per
enumerated shortest path, then the cardinality-counter registers.  Emission
is deterministic: identical configs give byte-identical output.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from cubevis.cube import (
    VertexSet,
    check_dim,
    enumerate_shortest_paths,
    hamming_distance,
    neighbors,
    vertex_from_text,
    vertex_to_text,
)

FORBID_ADJACENT_PAIR = "adjacent-pair"
FORBID_K12_STAR = "k12-star"


@dataclass(frozen=True)
class EncodeConfig:
    h: int
    variant: str  # mutual | total | outer | dual
    ell: int | None = None  # target cardinality (CNF); None for ILP maximization
    path_cap: int | None = None  # s; defaults to h
    presets: VertexSet | None = None  # vertices forced into the set
    forbidden_patterns: tuple[str, ...] = ()
    neighborhood_cap: int | None = None  # max members of N[u] when u is a member
    antipode_closure: bool = False
    reverse_clauses: bool = True  # emit path-variable reverse implications

    def __post_init__(self):
        check_dim(self.h)
        if self.variant not in ("mutual", "total", "outer", "dual"):
            raise ValueError(f"unknown variant {self.variant!r}")
        s = self.s
        if not 2 <= s <= self.h:
            # Q_1 has no pair at distance >= 2; allow s = h there
            if not (self.h == 1 and s == 1):
                raise ValueError(f"path cap must be in [2, h], got {s}")
        if self.ell is not None and not 0 <= self.ell <= (1 << self.h):
            raise ValueError(f"target size {self.ell} out of range for Q_{self.h}")
        if self.presets is not None and self.presets.h != self.h:
            raise ValueError("preset set lives in a different cube")
        for p in self.forbidden_patterns:
            if p not in (FORBID_ADJACENT_PAIR, FORBID_K12_STAR):
                raise ValueError(f"unknown forbidden pattern {p!r}")
        if self.neighborhood_cap is not None and self.neighborhood_cap < 1:
            raise ValueError("neighborhood cap must be >= 1")

    @property
    def s(self) -> int:
        return self.path_cap if self.path_cap is not None else self.h


def _encoded_pairs(config: EncodeConfig):
    """Unordered pairs with 2 <= d(u,v) <= s, with their enumerated paths."""
    n = 1 << config.h
    s = config.s
    for u in range(n):
        for v in range(u + 1, n):
            d = hamming_distance(u, v)
            if 2 <= d <= s:
                yield u, v, enumerate_shortest_paths(config.h, u, v)


def _k12_stars(h: int):
    """All triples (center u, leaves v < z) inducing a path on 3 vertices."""
    for u in range(1 << h):
        nb = neighbors(h, u)
        for v, z in itertools.combinations(sorted(nb), 2):
            yield u, v, z


# ---------------------------------------------------------------------------
# ILP


@dataclass(frozen=True)
class IlpRow:
    name: str
    terms: tuple[tuple[int, str], ...]  # (coefficient, variable name)
    sense: str  # "<=" | "=" | ">="
    rhs: int


@dataclass
class IlpModel:
    h: int
    variant: str
    s: int
    objective: list[str] = field(default_factory=list)
    rows: list[IlpRow] = field(default_factory=list)
    binaries: list[str] = field(default_factory=list)
    # pair structure kept for interpreters: (u, v, [path interiors], [z names])
    pair_groups: list[tuple[int, int, list[tuple[int, ...]], list[str]]] = field(
        default_factory=list
    )

    def to_lp(self) -> str:
        out = [f"\\ visibility model: variant={self.variant} h={self.h} s={self.s}"]
        out.append("Maximize")
        out.append(" obj: " + _wrap_sum([(1, v) for v in self.objective]))
        out.append("Subject To")
        for row in self.rows:
            sense = {"<=": "<=", ">=": ">=", "=": "="}[row.sense]
            out.append(f" {row.name}: {_wrap_sum(row.terms)} {sense} {row.rhs}")
        out.append("Binary")
        line = " "
        for name in self.binaries:
            if len(line) + len(name) + 1 > 78:
                out.append(line.rstrip())
                line = " "
            line += name + " "
        if line.strip():
            out.append(line.rstrip())
        out.append("End")
        return "\n".join(out) + "\n"


def _wrap_sum(terms) -> str:
    parts = []
    for i, (coef, var) in enumerate(terms):
        if coef >= 0:
            sign = "+ " if i else ""
        else:
            sign = "- "
        mag = abs(coef)
        parts.append(f"{sign}{'' if mag == 1 else str(mag) + ' '}{var}")
    return " ".join(parts)


def emit_ilp(config: EncodeConfig) -> IlpModel:
    """The ILP model: maximize the set size under visibility constraints."""
    h = config.h
    vt = lambda v: vertex_to_text(h, v)
    x = lambda v: f"x_{vt(v)}"
    model = IlpModel(h=h, variant=config.variant, s=config.s)
    n = 1 << h
    model.objective = [x(v) for v in range(n)]
    model.binaries = list(model.objective)

    if config.variant == "total":
        # pairwise exclusion at distance 2; no path variables needed
        for u in range(n):
            for v in range(u + 1, n):
                if hamming_distance(u, v) == 2:
                    model.rows.append(
                        IlpRow(
                            name=f"vis_{vt(u)}_{vt(v)}",
                            terms=((1, x(u)), (1, x(v))),
                            sense="<=",
                            rhs=1,
                        )
                    )
    else:
        for u, v, paths in _encoded_pairs(config):
            z_names = [f"z_{vt(u)}_{vt(v)}_{p}" for p in range(len(paths))]
            interiors = [path[1:-1] for path in paths]
            model.binaries.extend(z_names)
            model.pair_groups.append((u, v, interiors, z_names))
            z_terms = tuple((-1, zn) for zn in z_names)
            if config.variant == "outer":
                model.rows.append(
                    IlpRow(
                        name=f"outer_{vt(u)}_{vt(v)}",
                        terms=((1, x(u)), (1, x(v)))
                        + tuple((-2, zn) for zn in z_names),
                        sense="<=",
                        rhs=0,
                    )
                )
            else:
                model.rows.append(
                    IlpRow(
                        name=f"vis_{vt(u)}_{vt(v)}",
                        terms=((1, x(u)), (1, x(v))) + z_terms,
                        sense="<=",
                        rhs=1,
                    )
                )
            if config.variant == "dual":
                model.rows.append(
                    IlpRow(
                        name=f"dual_{vt(u)}_{vt(v)}",
                        terms=((-1, x(u)), (-1, x(v))) + z_terms,
                        sense="<=",
                        rhs=-1,
                    )
                )
            for p, (zn, interior) in enumerate(zip(z_names, interiors)):
                for k, z in enumerate(interior):
                    model.rows.append(
                        IlpRow(
                            name=f"path_{vt(u)}_{vt(v)}_{p}_{k}",
                            terms=((1, zn), (1, x(z))),
                            sense="<=",
                            rhs=1,
                        )
                    )

    if config.presets is not None:
        for v in config.presets:
            model.rows.append(
                IlpRow(name=f"preset_{vt(v)}", terms=((1, x(v)),), sense="=", rhs=1)
            )
    if FORBID_ADJACENT_PAIR in config.forbidden_patterns:
        for u in range(n):
            for b in range(h):
                v = u ^ (1 << b)
                if u < v:
                    model.rows.append(
                        IlpRow(
                            name=f"pair_{vt(u)}_{vt(v)}",
                            terms=((1, x(u)), (1, x(v))),
                            sense="<=",
                            rhs=1,
                        )
                    )
    if FORBID_K12_STAR in config.forbidden_patterns:
        for u, v, z in _k12_stars(h):
            model.rows.append(
                IlpRow(
                    name=f"star_{vt(u)}_{vt(v)}_{vt(z)}",
                    terms=((1, x(u)), (1, x(v)), (1, x(z))),
                    sense="<=",
                    rhs=2,
                )
            )
    if config.neighborhood_cap is not None:
        cap = config.neighborhood_cap
        for u in range(n):
            # members of N(u) bounded by cap-1 whenever u itself is a member
            terms = tuple((1, x(v)) for v in sorted(neighbors(h, u)))
            terms += ((h - cap + 1, x(u)),)
            model.rows.append(
                IlpRow(name=f"nbr_{vt(u)}", terms=terms, sense="<=", rhs=h)
            )
    if config.antipode_closure:
        full = (1 << h) - 1
        for v in range(n):
            if (v >> (h - 1)) & 1 == 0:  # last coordinate 0
                a = v ^ full
                model.rows.append(
                    IlpRow(
                        name=f"anti_{vt(v)}",
                        terms=((1, x(v)), (-1, x(a))),
                        sense="=",
                        rhs=0,
                    )
                )
    return model


# ---------------------------------------------------------------------------
# CNF


@dataclass
class CnfFormula:
    num_vars: int
    clauses: list[list[int]]
    h: int
    variant: str
    ell: int
    s: int
    vertex_vars: dict[int, int] = field(default_factory=dict)  # vertex -> var
    path_vars: dict[tuple[int, int, int], int] = field(default_factory=dict)
    counter_vars: list[int] = field(default_factory=list)

    def check(self) -> None:
        for clause in self.clauses:
            if not clause:
                raise ValueError("empty clause at emission")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} outside declared variables")

    def to_dimacs(self) -> str:
        out = [
            f"c visibility model: variant={self.variant} h={self.h} "
            f"ell={self.ell} s={self.s}",
            "c vertex variables (x <var> <vertex>); x_v false <=> v in set",
        ]
        for v in sorted(self.vertex_vars):
            out.append(f"c x {self.vertex_vars[v]} {vertex_to_text(self.h, v)}")
        out.append(f"p cnf {self.num_vars} {len(self.clauses)}")
        for clause in self.clauses:
            out.append(" ".join(str(lit) for lit in clause) + " 0")
        return "\n".join(out) + "\n"


def sequential_counter_at_most_k(
    literals: list[int], k: int, first_aux_var: int
) -> tuple[list[list[int]], int]:
    """At-most-k over the literals via the unary sequential counter.

    Registers s_{i,j} (i in [n-1], j in [k]) count true literals among the
    first i.  Returns (clauses, number of auxiliaries introduced starting at
    first_aux_var).  k >= n emits nothing; k = 0 forces every literal false.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    n = len(literals)
    if k >= n:
        return [], 0
    if k == 0:
        return [[-lit] for lit in literals], 0

    def s(i: int, j: int) -> int:
        return first_aux_var + (i - 1) * k + (j - 1)

    x = literals
    clauses: list[list[int]] = [[-x[0], s(1, 1)]]
    for j in range(2, k + 1):
        clauses.append([-s(1, j)])
    for i in range(2, n):
        clauses.append([-x[i - 1], s(i, 1)])
        clauses.append([-s(i - 1, 1), s(i, 1)])
        for j in range(2, k + 1):
            clauses.append([-x[i - 1], -s(i - 1, j - 1), s(i, j)])
            clauses.append([-s(i - 1, j), s(i, j)])
        clauses.append([-x[i - 1], -s(i - 1, k)])
    clauses.append([-x[n - 1], -s(n - 1, k)])
    return clauses, (n - 1) * k


def emit_cnf(config: EncodeConfig) -> CnfFormula:
    """The SAT reduction: satisfiable iff a size->=ell set of the variant exists
    (exactly, when the path cap equals the diameter)."""
    if config.ell is None:
        raise ValueError("CNF emission needs a target size ell")
    h = config.h
    n = 1 << h
    k = n - config.ell
    if k < 0:
        raise ValueError("target size exceeds the vertex count")

    vertex_vars = {v: v + 1 for v in range(n)}
    next_var = n + 1
    clauses: list[list[int]] = []
    path_vars: dict[tuple[int, int, int], int] = {}

    if config.variant == "total":
        for u in range(n):
            for v in range(u + 1, n):
                if hamming_distance(u, v) == 2:
                    clauses.append([vertex_vars[u], vertex_vars[v]])
    else:
        for u, v, paths in _encoded_pairs(config):
            y_vars = []
            for p, path in enumerate(paths):
                y = next_var
                next_var += 1
                path_vars[(u, v, p)] = y
                y_vars.append(y)
                interior = path[1:-1]
                for z in interior:
                    clauses.append([-y, vertex_vars[z]])
                if config.reverse_clauses:
                    clauses.append([y] + [-vertex_vars[z] for z in interior])
            xu, xv = vertex_vars[u], vertex_vars[v]
            if config.variant == "mutual":
                clauses.append([xu, xv] + y_vars)
            elif config.variant == "outer":
                clauses.append([xu] + y_vars)
                clauses.append([xv] + y_vars)
            else:  # dual
                clauses.append([xu, xv] + y_vars)
                clauses.append([-xu, -xv] + y_vars)

    if config.presets is not None:
        for v in config.presets:
            clauses.append([-vertex_vars[v]])
    if FORBID_ADJACENT_PAIR in config.forbidden_patterns:
        for u in range(n):
            for b in range(h):
                v = u ^ (1 << b)
                if u < v:
                    clauses.append([vertex_vars[u], vertex_vars[v]])
    if FORBID_K12_STAR in config.forbidden_patterns:
        for u, v, z in _k12_stars(h):
            clauses.append([vertex_vars[u], vertex_vars[v], vertex_vars[z]])
    if config.neighborhood_cap is not None:
        cap = config.neighborhood_cap
        for u in range(n):
            nb = sorted(neighbors(h, u))
            if len(nb) >= cap:
                for subset in itertools.combinations(nb, cap):
                    clauses.append(
                        [vertex_vars[u]] + [vertex_vars[v] for v in subset]
                    )
    if config.antipode_closure:
        full = n - 1
        for v in range(n):
            if (v >> (h - 1)) & 1 == 0:
                a = v ^ full
                clauses.append([-vertex_vars[v], vertex_vars[a]])
                clauses.append([vertex_vars[v], -vertex_vars[a]])

    counter_literals = [vertex_vars[v] for v in range(n)]
    counter_clauses, aux = sequential_counter_at_most_k(counter_literals, k, next_var)
    counter_vars = list(range(next_var, next_var + aux))
    next_var += aux
    clauses.extend(counter_clauses)

    formula = CnfFormula(
        num_vars=next_var - 1,
        clauses=clauses,
        h=h,
        variant=config.variant,
        ell=config.ell,
        s=config.s,
        vertex_vars=vertex_vars,
        path_vars=path_vars,
        counter_vars=counter_vars,
    )
    formula.check()
    return formula


def decode_model(formula: CnfFormula, assignment) -> VertexSet:
    """Recover the set from a satisfying assignment (x_v false <=> member).

    assignment is indexable by variable number (index 0 unused) or a dict.
    The assignment is validated against the formula first.
    """
    getter = assignment.__getitem__
    for clause in formula.clauses:
        if not any(
            (lit > 0) == bool(getter(abs(lit))) for lit in clause
        ):
            raise ValueError("assignment does not satisfy the formula")
    members = [v for v, var in formula.vertex_vars.items() if not getter(var)]
    return VertexSet(formula.h, members)


def parse_dimacs(text: str) -> CnfFormula:
    """Read DIMACS produced by to_dimacs (vertex map recovered from comments)."""
    num_vars = 0
    clauses: list[list[int]] = []
    vertex_vars: dict[int, int] = {}
    h = 0
    variant = "mutual"
    ell = 0
    s = 0
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("c x "):
            _, _, var, vtext = line.split()
            vh, v = vertex_from_text(vtext)
            h = vh
            vertex_vars[v] = int(var)
        elif line.startswith("c"):
            for tok in line.split():
                if "=" in tok:
                    key, _, val = tok.partition("=")
                    if key == "variant":
                        variant = val
                    elif key in ("h", "ell", "s"):
                        try:
                            num = int(val)
                        except ValueError:
                            continue
                        if key == "h":
                            h = num
                        elif key == "ell":
                            ell = num
                        else:
                            s = num
        elif line.startswith("p cnf"):
            num_vars = int(line.split()[2])
        else:
            lits = [int(t) for t in line.split()]
            if lits and lits[-1] == 0:
                lits = lits[:-1]
            if lits:
                clauses.append(lits)
    return CnfFormula(
        num_vars=num_vars,
        clauses=clauses,
        h=h,
        variant=variant,
        ell=ell,
        s=s,
        vertex_vars=vertex_vars,
    )


# ---------------------------------------------------------------------------
# straight-line interpreter used to cross-check the emitted ILP model


def ilp_feasible(model: IlpModel, members: VertexSet) -> bool:
    """Evaluate the model rows at the 0/1 vertex assignment given by members.

    Path variables are chosen greedily: z = 1 exactly when the whole path
    interior lies outside the set (the most permissive choice allowed by the
    path rows).
    """
    values: dict[str, int] = {}
    for v in range(1 << model.h):
        values[f"x_{vertex_to_text(model.h, v)}"] = 1 if v in members else 0
    for u, v, interiors, z_names in model.pair_groups:
        for interior, zn in zip(interiors, z_names):
            values[zn] = 1 if all(z not in members for z in interior) else 0
    for row in model.rows:
        total = sum(coef * values.get(var, 0) for coef, var in row.terms)
        if row.sense == "<=" and not total <= row.rhs:
            return False
        if row.sense == ">=" and not total >= row.rhs:
            return False
        if row.sense == "=" and total != row.rhs:
            return False
    return True

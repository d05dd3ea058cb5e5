"""Parametric Markov chain data model: parsing, validation, graph analysis,
admissibility constraints, and model transformations.

Transition probabilities are polynomials over the model's parameter arena;
rational-function transitions must be converted through `polynomialize`
first.  Valuations assign exact rationals to every parameter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .poly import Polynomial, RationalFunction, VarArena, parse_polynomial
from .realdec import SemiSet1D, solve_constraint

Valuation = Mapping[str, Union[Fraction, int]]
Edge = tuple[str, str]

RELATIONS = ("<=", ">=", "<", ">", "=")


class ModelError(ValueError):
    pass


class ModelSyntaxError(ModelError):
    def __init__(self, message: str, line: int | None = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line


@dataclass(frozen=True)
class Violation:
    kind: str  # "row-sum" | "positivity" | "constraint"
    subject: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind} at {self.subject}: {self.detail}"


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    violations: tuple[Violation, ...]


class InadmissibleError(ModelError):
    def __init__(self, violations: Sequence[Violation]):
        super().__init__("; ".join(str(v) for v in violations))
        self.violations = tuple(violations)


@dataclass(frozen=True)
class Constraint:
    """Polynomial side constraint `lhs rel rhs` with rel in <, <=, >, >=, =."""

    lhs: Polynomial
    rel: str
    rhs: Polynomial

    def __post_init__(self):
        if self.rel not in RELATIONS:
            raise ValueError(f"unknown relation {self.rel!r}")

    def holds_at(self, valuation: Valuation) -> bool:
        left = self.lhs.evaluate(valuation)
        right = self.rhs.evaluate(valuation)
        return {
            "<": left < right,
            "<=": left <= right,
            ">": left > right,
            ">=": left >= right,
            "=": left == right,
        }[self.rel]

    def __str__(self) -> str:
        return f"{self.lhs} {self.rel} {self.rhs}"


class PMC:
    """Parametric Markov chain with polynomial transitions, polynomial side
    constraints, optional labels and polynomial state weights.

    Immutable after construction; transformations return new models.  An edge
    exists exactly when it carries a nonzero transition polynomial.  States
    without outgoing edges are traps.
    """

    __slots__ = ("arena", "states", "init", "trans", "constraints", "labels", "weights",
                 "_succ", "_pred", "_index")

    def __init__(
        self,
        arena: VarArena,
        states: Sequence[str],
        init: str,
        trans: Mapping[Edge, Polynomial],
        constraints: Iterable[Constraint] = (),
        labels: Mapping[str, Iterable[str]] | None = None,
        weights: Mapping[str, Polynomial] | None = None,
    ):
        self.arena = arena
        self.states = tuple(states)
        if len(set(self.states)) != len(self.states):
            raise ModelError("duplicate state names")
        known = set(self.states)
        if init not in known:
            raise ModelError(f"initial state {init!r} is not a declared state")
        self.init = init
        clean_trans: dict[Edge, Polynomial] = {}
        for (s, t), poly in trans.items():
            if s not in known or t not in known:
                raise ModelError(f"edge ({s!r}, {t!r}) uses an unknown state")
            if poly.arena != arena:
                raise ModelError(f"transition ({s}, {t}) uses a foreign arena")
            if poly.is_zero():
                raise ModelError(f"edge ({s}, {t}) carries the zero polynomial")
            clean_trans[(s, t)] = poly
        self.trans = clean_trans
        self.constraints = tuple(constraints)
        for c in self.constraints:
            if c.lhs.arena != arena or c.rhs.arena != arena:
                raise ModelError("constraint uses a foreign arena")
        if labels is None:
            self.labels = {s: frozenset([s]) for s in self.states}
        else:
            for s in labels:
                if s not in known:
                    raise ModelError(f"label for unknown state {s!r}")
            self.labels = {s: frozenset(labels.get(s, ())) for s in self.states}
        zero = Polynomial.zero(arena)
        if weights is None:
            self.weights = {s: zero for s in self.states}
        else:
            for s in weights:
                if s not in known:
                    raise ModelError(f"weight for unknown state {s!r}")
            self.weights = {s: weights.get(s, zero) for s in self.states}
            for w in self.weights.values():
                if w.arena != arena:
                    raise ModelError("weight uses a foreign arena")
        self._succ: dict[str, set[str]] = {s: set() for s in self.states}
        self._pred: dict[str, set[str]] = {s: set() for s in self.states}
        for (s, t) in self.trans:
            self._succ[s].add(t)
            self._pred[t].add(s)
        self._index = {s: i for i, s in enumerate(self.states)}

    def successors(self, s: str) -> set[str]:
        return self._succ[s]

    def predecessors(self, s: str) -> set[str]:
        return self._pred[s]

    def is_trap(self, s: str) -> bool:
        return not self._succ[s]

    def traps(self) -> frozenset[str]:
        return frozenset(s for s in self.states if not self._succ[s])

    def states_with_label(self, prop: str) -> frozenset[str]:
        return frozenset(s for s in self.states if prop in self.labels[s])

    def transition(self, s: str, t: str) -> Polynomial:
        return self.trans.get((s, t), Polynomial.zero(self.arena))

    def row_sum(self, s: str) -> Polynomial:
        total = Polynomial.zero(self.arena)
        for t in self._succ[s]:
            total = total + self.trans[(s, t)]
        return total

    def is_univariate(self) -> bool:
        return len(self.arena) <= 1

    def replace(self, **kw) -> "PMC":
        args = dict(
            arena=self.arena,
            states=self.states,
            init=self.init,
            trans=self.trans,
            constraints=self.constraints,
            labels=self.labels,
            weights=self.weights,
        )
        args.update(kw)
        return PMC(**args)

    def __repr__(self) -> str:
        return f"<PMC |S|={len(self.states)} |E|={len(self.trans)} k={len(self.arena)}>"


@dataclass(frozen=True)
class RationalFunctionPMC:
    """Intermediate model whose transitions are rational functions; only valid
    as input to `polynomialize`."""

    arena: VarArena
    states: tuple[str, ...]
    init: str
    trans: Mapping[Edge, RationalFunction]
    constraints: tuple[Constraint, ...] = ()
    labels: Mapping[str, Iterable[str]] | None = None
    weights: Mapping[str, Polynomial] | None = None


@dataclass(frozen=True)
class ConcreteMC:
    """Markov chain with exact rational transition probabilities."""

    states: tuple[str, ...]
    init: str
    probs: Mapping[Edge, Fraction]
    labels: Mapping[str, frozenset[str]]
    weights: Mapping[str, Fraction]
    _succ: Mapping[str, frozenset[str]] = field(repr=False, default_factory=dict)
    _pred: Mapping[str, frozenset[str]] = field(repr=False, default_factory=dict)

    @staticmethod
    def build(states, init, probs, labels, weights) -> "ConcreteMC":
        succ: dict[str, set[str]] = {s: set() for s in states}
        pred: dict[str, set[str]] = {s: set() for s in states}
        for (s, t), p in probs.items():
            if p:
                succ[s].add(t)
                pred[t].add(s)
        return ConcreteMC(
            tuple(states), init, dict(probs), dict(labels), dict(weights),
            {s: frozenset(v) for s, v in succ.items()},
            {s: frozenset(v) for s, v in pred.items()},
        )

    def successors(self, s: str):
        return self._succ[s]

    def predecessors(self, s: str):
        return self._pred[s]

    def states_with_label(self, prop: str) -> frozenset[str]:
        return frozenset(s for s in self.states if prop in self.labels[s])

    def prob(self, s: str, t: str) -> Fraction:
        return self.probs.get((s, t), Fraction(0))


# -- text format ------------------------------------------------------------------


def parse_model(text: str) -> PMC:
    """Parse the line-oriented model format.

    Sections (any order, `#` starts a comment): ``@params``, ``@states``,
    ``@init``, ``@edges`` (mandatory, lines ``src dst : poly``),
    ``@constraints`` (lines ``poly rel poly``), ``@labels`` (lines
    ``state : prop ...``), ``@weights`` (lines ``state : poly``).
    ``@states`` and ``@init`` default to the edge-mention order and the first
    state.  Without ``@labels`` every state is labelled with its own name.
    """
    sections: dict[str, list[tuple[int, str]]] = {}
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("@"):
            parts = line.split()
            name = parts[0][1:]
            if name not in ("params", "states", "init", "edges", "constraints", "labels", "weights"):
                raise ModelSyntaxError(f"unknown section @{name}", lineno)
            if name in sections:
                raise ModelSyntaxError(f"duplicate section @{name}", lineno)
            sections[name] = [(lineno, " ".join(parts[1:]))] if len(parts) > 1 else []
            current = name
            continue
        if current is None:
            raise ModelSyntaxError("content before any section header", lineno)
        sections[current].append((lineno, line))

    if "edges" not in sections:
        raise ModelSyntaxError("missing mandatory @edges section")

    params: list[str] = []
    for _, line in sections.get("params", []):
        params.extend(line.split())
    arena = VarArena(params)

    declared: list[str] = []
    for _, line in sections.get("states", []):
        declared.extend(line.split())
    explicit_states = bool(declared)

    def poly(text_: str, lineno: int) -> Polynomial:
        try:
            return parse_polynomial(text_, arena)
        except KeyError as exc:
            raise ModelSyntaxError(f"unknown variable: {exc.args[0]}", lineno) from None
        except ValueError as exc:
            raise ModelSyntaxError(str(exc), lineno) from None

    trans: dict[Edge, Polynomial] = {}
    mention_order: list[str] = []
    seen_states = set(declared)

    def note_state(name: str, lineno: int):
        if explicit_states:
            if name not in seen_states:
                raise ModelSyntaxError(f"undeclared state {name!r}", lineno)
        elif name not in seen_states:
            seen_states.add(name)
            mention_order.append(name)

    for lineno, line in sections["edges"]:
        if ":" not in line:
            raise ModelSyntaxError("edge line needs 'src dst : polynomial'", lineno)
        head, body = line.split(":", 1)
        names = head.split()
        if len(names) != 2:
            raise ModelSyntaxError("edge line needs exactly two states", lineno)
        s, t = names
        note_state(s, lineno)
        note_state(t, lineno)
        if (s, t) in trans:
            raise ModelSyntaxError(f"duplicate edge ({s}, {t})", lineno)
        trans[(s, t)] = poly(body, lineno)

    states = declared if explicit_states else mention_order
    if not states:
        raise ModelSyntaxError("model has no states")

    init = states[0]
    init_lines = sections.get("init", [])
    if init_lines:
        lineno, line = init_lines[0]
        tokens = line.split()
        if len(init_lines) > 1 or len(tokens) != 1:
            raise ModelSyntaxError("@init needs exactly one state", lineno)
        init = tokens[0]
        if init not in set(states):
            raise ModelSyntaxError(f"undeclared state {init!r}", lineno)

    constraints: list[Constraint] = []
    for lineno, line in sections.get("constraints", []):
        for rel in RELATIONS:
            if rel in line:
                left, right = line.split(rel, 1)
                constraints.append(Constraint(poly(left, lineno), rel, poly(right, lineno)))
                break
        else:
            raise ModelSyntaxError("constraint line needs a relation", lineno)

    labels: dict[str, set[str]] | None = None
    if "labels" in sections:
        labels = {}
        for lineno, line in sections["labels"]:
            if ":" not in line:
                raise ModelSyntaxError("label line needs 'state : prop ...'", lineno)
            head, body = line.split(":", 1)
            name = head.strip()
            if name not in set(states):
                raise ModelSyntaxError(f"undeclared state {name!r}", lineno)
            labels.setdefault(name, set()).update(body.split())

    weights: dict[str, Polynomial] | None = None
    if "weights" in sections:
        weights = {}
        for lineno, line in sections["weights"]:
            if ":" not in line:
                raise ModelSyntaxError("weight line needs 'state : polynomial'", lineno)
            head, body = line.split(":", 1)
            name = head.strip()
            if name not in set(states):
                raise ModelSyntaxError(f"undeclared state {name!r}", lineno)
            weights[name] = poly(body, lineno)

    try:
        return PMC(arena, states, init, trans, constraints, labels, weights)
    except ModelError as exc:
        raise ModelSyntaxError(str(exc)) from None


def format_model(m: PMC) -> str:
    """Canonical text form; `parse_model(format_model(m))` is structurally equal."""
    out: list[str] = []
    if len(m.arena):
        out.append("@params " + " ".join(m.arena.names))
    out.append("@states " + " ".join(m.states))
    out.append("@init " + m.init)
    out.append("@edges")
    for s in m.states:
        for t in m.states:
            if (s, t) in m.trans:
                out.append(f"{s} {t} : {m.trans[(s, t)]}")
    if m.constraints:
        out.append("@constraints")
        for c in m.constraints:
            out.append(str(c))
    out.append("@labels")
    for s in m.states:
        if m.labels[s]:
            out.append(f"{s} : " + " ".join(sorted(m.labels[s])))
    nonzero_weights = [s for s in m.states if not m.weights[s].is_zero()]
    if nonzero_weights:
        out.append("@weights")
        for s in nonzero_weights:
            out.append(f"{s} : {m.weights[s]}")
    return "\n".join(out) + "\n"


# -- admissibility --------------------------------------------------------------------


def check_admissible(m: PMC, valuation: Valuation) -> AdmissibilityReport:
    """Evaluate row sums, edge positivity and all side constraints at a point."""
    violations: list[Violation] = []
    for s in m.states:
        if m.is_trap(s):
            continue
        total = sum((m.trans[(s, t)].evaluate(valuation) for t in m.successors(s)), Fraction(0))
        if total != 1:
            violations.append(Violation("row-sum", s, f"row sums to {total}"))
    for (s, t), poly in m.trans.items():
        value = poly.evaluate(valuation)
        if value <= 0:
            violations.append(Violation("positivity", f"({s}, {t})", f"probability {value}"))
    for i, c in enumerate(m.constraints):
        if not c.holds_at(valuation):
            violations.append(Violation("constraint", f"#{i}", str(c)))
    return AdmissibilityReport(not violations, tuple(violations))


def admissible_chi(m: PMC) -> list[Constraint]:
    """Full admissibility conjunction: user constraints, non-trivial row-sum
    equalities, and strict positivity of every edge polynomial."""
    one = Polynomial.constant(m.arena, 1)
    zero = Polynomial.zero(m.arena)
    chi: list[Constraint] = []
    for s in m.states:
        if m.is_trap(s):
            continue
        total = m.row_sum(s)
        if total != one:
            chi.append(Constraint(total, "=", one))
    for (s, t), poly in sorted(m.trans.items()):
        chi.append(Constraint(poly, ">", zero))
    chi.extend(m.constraints)
    return chi


def admissible_set(m: PMC) -> SemiSet1D:
    """Admissible parameter set of a univariate model as an exact 1-D set."""
    if len(m.arena) > 1:
        raise ModelError("admissible_set needs a univariate model")
    region = SemiSet1D.whole_line()
    for c in admissible_chi(m):
        region = solve_constraint(c.lhs - c.rhs, c.rel, region)
        if region.is_empty():
            break
    return region


def instantiate(m: PMC, valuation: Valuation) -> ConcreteMC:
    """Concrete Markov chain at an admissible valuation; rejects inadmissible points."""
    report = check_admissible(m, valuation)
    if not report.admissible:
        raise InadmissibleError(report.violations)
    probs = {edge: poly.evaluate(valuation) for edge, poly in m.trans.items()}
    weights = {s: m.weights[s].evaluate(valuation) for s in m.states}
    return ConcreteMC.build(m.states, m.init, probs, m.labels, weights)


# -- graph analysis ---------------------------------------------------------------------


@dataclass(frozen=True)
class GraphInfo:
    """SCC partition in topological order (every edge goes from its own SCC to
    the same or a later SCC), bottom-SCC ids, and trap states."""

    scc_of: Mapping[str, int]
    sccs: tuple[tuple[str, ...], ...]
    bscc_ids: frozenset[int]
    traps: frozenset[str]

    def bsccs(self) -> list[tuple[str, ...]]:
        return [self.sccs[i] for i in sorted(self.bscc_ids)]


def tarjan_sccs(states: Sequence[str], succ: Mapping[str, Iterable[str]]) -> list[list[str]]:
    """Strongly connected components, emitted sinks-first (reverse topological)."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    out: list[list[str]] = []
    counter = 0

    for root in states:
        if root in index:
            continue
        work: list[tuple[str, Iterable[str]]] = [(root, iter(succ.get(root, ())))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for child in it:
                if child not in index:
                    index[child] = low[child] = counter
                    counter += 1
                    stack.append(child)
                    on_stack.add(child)
                    work.append((child, iter(succ.get(child, ()))))
                    advanced = True
                    break
                if child in on_stack:
                    low[node] = min(low[node], index[child])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == node:
                        break
                out.append(comp)
    return out


def graph_info(m: PMC) -> GraphInfo:
    comps = tarjan_sccs(m.states, m._succ)
    comps.reverse()  # topological: edges now point from earlier to later SCCs
    scc_of = {s: i for i, comp in enumerate(comps) for s in comp}
    bscc_ids = set(range(len(comps)))
    for (s, t) in m.trans:
        if scc_of[s] != scc_of[t]:
            bscc_ids.discard(scc_of[s])
    ordered = tuple(tuple(sorted(comp, key=m._index.__getitem__)) for comp in comps)
    return GraphInfo(scc_of, ordered, frozenset(bscc_ids), m.traps())


def until_possible(model, hold: frozenset[str] | set[str], target: frozenset[str] | set[str]) -> set[str]:
    """States with some path to `target` whose proper prefix stays in `hold`."""
    u = set(target)
    frontier = list(target)
    while frontier:
        t = frontier.pop()
        for s in model.predecessors(t):
            if s not in u and s in hold:
                u.add(s)
                frontier.append(s)
    return u


def until_almost_sure(model, hold, target) -> set[str]:
    """States reaching `target` through `hold` with probability one; purely
    graph-based, hence identical at every admissible valuation."""
    states = set(model.states)
    u = until_possible(model, hold, target)
    doomed = states - u
    middle = (set(hold) - set(target))
    tainted = set(doomed)
    frontier = list(doomed)
    while frontier:
        t = frontier.pop()
        for s in model.predecessors(t):
            if s not in tainted and s in middle:
                tainted.add(s)
                frontier.append(s)
    return states - tainted


def reach_almost_sure(model, target) -> set[str]:
    return until_almost_sure(model, set(model.states), set(target))


# -- transformations ---------------------------------------------------------------------


def make_traps(m: PMC, cut: Iterable[str]) -> PMC:
    """Copy of the model with every outgoing edge of `cut` removed."""
    cut = set(cut)
    unknown = cut - set(m.states)
    if unknown:
        raise ModelError(f"cannot trap unknown states {sorted(unknown)}")
    trans = {(s, t): p for (s, t), p in m.trans.items() if s not in cut}
    return m.replace(trans=trans)


def _fresh_name(base: str, taken: set[str]) -> str:
    name = base
    serial = 1
    while name in taken:
        serial += 1
        name = f"{base}_{serial}"
    taken.add(name)
    return name


def _identifier(text: str) -> str:
    return "".join(ch if ch.isalnum() or ch == "_" else "_" for ch in text)


def polynomialize(m: RationalFunctionPMC) -> PMC:
    """Rewrite rational-function transitions f/g into polynomial form by adding,
    per edge with a non-constant denominator, a fresh variable u with
    transition f*u and side constraint g*u = 1."""
    taken = set(m.arena.names)
    fresh: dict[Edge, str] = {}
    plain: dict[Edge, Polynomial] = {}
    pending: dict[Edge, tuple[Polynomial, Polynomial]] = {}
    for edge, rf in m.trans.items():
        if isinstance(rf, Polynomial):
            plain[edge] = rf
            continue
        num, den = rf.num, rf.den
        if den.is_constant():
            plain[edge] = num * (Fraction(1) / den.constant_value())
            continue
        fresh[edge] = _fresh_name(f"u_{_identifier(edge[0])}_{_identifier(edge[1])}", taken)
        pending[edge] = (num, den)
    arena = m.arena.extended(fresh[e] for e in m.trans if e in fresh)
    one = Polynomial.constant(arena, 1)
    trans: dict[Edge, Polynomial] = {e: p.embedded(arena) for e, p in plain.items()}
    constraints = [Constraint(c.lhs.embedded(arena), c.rel, c.rhs.embedded(arena)) for c in m.constraints]
    for edge, (num, den) in pending.items():
        u = Polynomial.variable(arena, fresh[edge])
        trans[edge] = num.embedded(arena) * u
        constraints.append(Constraint(den.embedded(arena) * u, "=", one))
    weights = None
    if m.weights is not None:
        weights = {s: w.embedded(arena) for s, w in m.weights.items()}
    return PMC(arena, m.states, m.init, trans, constraints, m.labels, weights)


IntervalBound = tuple[Fraction, str, str, Fraction]  # (lo, rel1, rel2, hi)


def imc_to_pmc(
    states: Sequence[str],
    init: str,
    intervals: Mapping[Edge, IntervalBound],
    labels: Mapping[str, Iterable[str]] | None = None,
) -> PMC:
    """Interval Markov chain as an augmented pMC: one fresh parameter per edge,
    constrained to its probability interval."""
    taken: set[str] = set()
    names: dict[Edge, str] = {}
    for (s, t), (lo, rel1, rel2, hi) in intervals.items():
        if rel1 not in ("<", "<=") or rel2 not in ("<", "<="):
            raise ModelError(f"interval bounds for ({s}, {t}) need < or <=")
        lo, hi = Fraction(lo), Fraction(hi)
        if not (0 <= lo <= 1 and 0 <= hi <= 1):
            raise ModelError(f"interval for ({s}, {t}) leaves [0, 1]")
        if lo > hi:
            raise ModelError(f"empty interval for ({s}, {t}): {lo} > {hi}")
        names[(s, t)] = _fresh_name(f"x_{_identifier(s)}_{_identifier(t)}", taken)
    arena = VarArena(names[e] for e in intervals)
    trans: dict[Edge, Polynomial] = {}
    constraints: list[Constraint] = []
    for edge, (lo, rel1, rel2, hi) in intervals.items():
        var = Polynomial.variable(arena, names[edge])
        trans[edge] = var
        constraints.append(Constraint(Polynomial.constant(arena, Fraction(lo)), rel1, var))
        constraints.append(Constraint(var, rel2, Polynomial.constant(arena, Fraction(hi))))
    return PMC(arena, states, init, trans, constraints, labels)

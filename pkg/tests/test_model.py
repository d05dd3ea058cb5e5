from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pmcx.poly import Polynomial, RationalFunction, VarArena, parse_polynomial
from pmcx.realdec import SemiSet1D
from pmcx.model import (
    Constraint,
    InadmissibleError,
    ModelSyntaxError,
    PMC,
    RationalFunctionPMC,
    admissible_chi,
    admissible_set,
    check_admissible,
    format_model,
    graph_info,
    imc_to_pmc,
    instantiate,
    make_traps,
    parse_model,
    polynomialize,
    reach_almost_sure,
    until_almost_sure,
    until_possible,
)

TWO_STATE = """
# coin with parametric bias
@params x
@states s0 g f
@init s0
@edges
s0 g : x
s0 f : 1 - x
@labels
g : goal
f : fail
"""


def two_state() -> PMC:
    return parse_model(TWO_STATE)


def cyclic_model() -> PMC:
    return parse_model(
        """
        @params x
        @states s0 s1 g f
        @init s0
        @edges
        s0 g : x
        s0 s1 : 1 - x
        s1 f : x
        s1 s0 : 1 - x
        """
    )


class TestParsing:
    def test_two_state_example(self):
        m = two_state()
        assert len(m.states) == 3
        assert len(m.trans) == 2
        assert m.init == "s0"
        assert m.states_with_label("goal") == {"g"}

    def test_rational_coefficient_edge(self):
        m = parse_model(
            """
            @params x
            @states a b
            @edges
            a b : 1/2 + x^2
            a a : 1/2 - x^2
            """
        )
        assert m.trans[("a", "b")].evaluate({"x": Fraction(1, 2)}) == Fraction(3, 4)

    def test_undeclared_state_is_named(self):
        with pytest.raises(ModelSyntaxError, match="s9"):
            parse_model("@states s0\n@edges\ns0 s9 : 1\n")

    def test_unknown_variable_is_reported_with_line(self):
        with pytest.raises(ModelSyntaxError, match="line 3.*y"):
            parse_model("@params x\n@edges\na b : y\n")

    def test_duplicate_edge_rejected(self):
        with pytest.raises(ModelSyntaxError, match="duplicate edge"):
            parse_model("@edges\na b : 1\na b : 1/2\n")

    def test_zero_polynomial_edge_rejected(self):
        with pytest.raises(ModelSyntaxError, match="zero polynomial"):
            parse_model("@params x\n@edges\na b : x - x\n")

    def test_states_inferred_when_not_declared(self):
        m = parse_model("@edges\na b : 1\nb b : 1\n")
        assert m.states == ("a", "b")
        assert m.init == "a"

    def test_implicit_self_labels(self):
        m = parse_model("@edges\na b : 1\nb b : 1\n")
        assert m.labels["a"] == {"a"}

    def test_round_trip(self):
        m = cyclic_model()
        again = parse_model(format_model(m))
        assert again.states == m.states
        assert again.trans == m.trans
        assert again.labels == m.labels
        assert again.constraints == m.constraints
        assert again.weights == m.weights


class TestAdmissibility:
    def test_admissible_point(self):
        report = check_admissible(two_state(), {"x": Fraction(1, 2)})
        assert report.admissible

    def test_positivity_violation_at_one(self):
        report = check_admissible(two_state(), {"x": 1})
        assert not report.admissible
        assert any(v.kind == "positivity" and "f" in v.subject for v in report.violations)

    def test_constraint_violation(self):
        m = two_state()
        x = Polynomial.variable(m.arena, "x")
        m = m.replace(constraints=(Constraint(x, ">=", Polynomial.constant(m.arena, Fraction(2, 3))),))
        report = check_admissible(m, {"x": Fraction(1, 2)})
        assert not report.admissible
        assert any(v.kind == "constraint" for v in report.violations)

    def test_chi_drops_trivial_row_sum(self):
        chi = admissible_chi(two_state())
        assert all(c.rel != "=" for c in chi)
        assert admissible_set(two_state()) == SemiSet1D.interval(0, 1)

    def test_chi_with_user_constraint(self):
        m = two_state()
        x = Polynomial.variable(m.arena, "x")
        m = m.replace(constraints=(Constraint(x, ">=", Polynomial.constant(m.arena, Fraction(1, 2))),))
        assert admissible_set(m) == SemiSet1D.interval(Fraction(1, 2), 1, lo_closed=True)

    def test_constant_edge_contributes_vacuous_positivity(self):
        m = parse_model("@edges\na b : 1/2\na a : 1/2\n")
        chi = admissible_chi(m)
        assert any(c.rel == ">" and c.lhs.is_constant() and c.lhs.constant_value() == Fraction(1, 2) for c in chi)

    def test_nontrivial_row_sum_kept(self):
        m = parse_model("@params x y\n@edges\na b : x\na a : y\n")
        chi = admissible_chi(m)
        assert any(c.rel == "=" for c in chi)


class TestInstantiate:
    def test_probabilities(self):
        mc = instantiate(two_state(), {"x": Fraction(1, 3)})
        assert mc.prob("s0", "g") == Fraction(1, 3)
        assert mc.prob("s0", "f") == Fraction(2, 3)

    def test_constant_model(self):
        m = parse_model("@edges\na b : 1/2\na a : 1/2\n")
        mc = instantiate(m, {})
        assert mc.prob("a", "b") == Fraction(1, 2)

    def test_boundary_rejected(self):
        with pytest.raises(InadmissibleError):
            instantiate(two_state(), {"x": 0})

    @given(st.fractions(min_value=Fraction(1, 100), max_value=Fraction(99, 100), max_denominator=100))
    def test_support_is_valuation_independent(self, x):
        mc = instantiate(cyclic_model(), {"x": x})
        support = {edge for edge, p in mc.probs.items() if p}
        assert support == set(cyclic_model().trans)


class TestGraph:
    def test_acyclic_chain(self):
        m = parse_model("@edges\na b : 1\nb c : 1\n")
        info = graph_info(m)
        assert info.sccs == (("a",), ("b",), ("c",))
        assert info.traps == {"c"}
        assert info.bsccs() == [("c",)]

    def test_cycle_plus_trap(self):
        m = parse_model(
            "@params x\n@edges\ns0 s1 : x\ns0 g : 1 - x\ns1 s0 : 1\n"
        )
        info = graph_info(m)
        comps = {frozenset(c) for c in info.sccs}
        assert comps == {frozenset({"s0", "s1"}), frozenset({"g"})}
        assert info.bsccs() == [("g",)]

    def test_edges_point_to_same_or_later_scc(self):
        m = cyclic_model()
        info = graph_info(m)
        for (s, t) in m.trans:
            assert info.scc_of[s] <= info.scc_of[t]

    def test_complete_graph_single_scc(self):
        lines = ["@edges"]
        names = ["q0", "q1", "q2", "q3"]
        for s in names:
            for t in names:
                if s != t:
                    lines.append(f"{s} {t} : 1/3")
        info = graph_info(parse_model("\n".join(lines)))
        assert len(info.sccs) == 1
        assert info.bscc_ids == {0}

    def test_until_sets(self):
        m = cyclic_model()
        states = set(m.states)
        assert until_possible(m, states, {"g"}) == {"s0", "s1", "g"}
        assert until_almost_sure(m, states, {"g"}) == {"g"}
        assert reach_almost_sure(m, {"g", "f"}) == states


class TestTransformations:
    def test_make_traps_identity(self):
        m = cyclic_model()
        assert make_traps(m, set()).trans == m.trans

    def test_make_traps_removes_outgoing(self):
        m = parse_model("@edges\ns0 g : 1\ng g2 : 1\ng2 g2 : 1\n")
        cut = make_traps(m, {"g"})
        assert ("g", "g2") not in cut.trans
        assert ("s0", "g") in cut.trans

    def test_make_traps_everything(self):
        m = cyclic_model()
        assert make_traps(m, set(m.states)).trans == {}

    def test_polynomialize_introduces_inverse_variable(self):
        arena = VarArena(["x"])
        x = Polynomial.variable(arena, "x")
        rf = RationalFunction(x, 1 + x)
        raw = RationalFunctionPMC(
            arena,
            ("s", "t", "u"),
            "s",
            {("s", "t"): rf, ("s", "u"): RationalFunction(1 - x * 0, 1 + x * 0), ("t", "t"): rf},
        )
        m = polynomialize(raw)
        assert len(m.arena) == 3  # x plus one inverse per rational edge
        u_st = m.arena.names[1]
        assert m.trans[("s", "t")] == parse_polynomial(f"x*{u_st}", m.arena)
        wanted = parse_polynomial(f"{u_st} + x*{u_st}", m.arena)
        assert any(c.rel == "=" and c.lhs == wanted for c in m.constraints)

    def test_polynomialize_skips_constant_denominators(self):
        arena = VarArena(["x"])
        x = Polynomial.variable(arena, "x")
        half = RationalFunction(Polynomial.constant(arena, 1), Polynomial.constant(arena, 2))
        raw = RationalFunctionPMC(arena, ("s", "t"), "s", {("s", "t"): half, ("s", "s"): RationalFunction(1 - x * 0 - half.num * 0 + x * 0 + (1 - x) * 0 + x * 0 * x, Polynomial.constant(arena, 2))})
        m = polynomialize(raw)
        assert m.arena == arena
        assert m.trans[("s", "t")] == Polynomial.constant(arena, Fraction(1, 2))

    def test_polynomialize_distinct_fresh_vars_for_shared_denominator(self):
        arena = VarArena(["x"])
        x = Polynomial.variable(arena, "x")
        rf = RationalFunction(x, 1 + x)
        raw = RationalFunctionPMC(arena, ("a", "b"), "a", {("a", "b"): rf, ("b", "a"): rf})
        m = polynomialize(raw)
        assert len(m.arena) == 3
        assert m.trans[("a", "b")] != m.trans[("b", "a")]

    def test_imc_intervals(self):
        m = imc_to_pmc(
            ("s", "t", "u"),
            "s",
            {
                ("s", "t"): (Fraction(1, 3), "<=", "<=", Fraction(1, 2)),
                ("s", "u"): (Fraction(1, 2), "<=", "<=", Fraction(2, 3)),
                ("t", "t"): (Fraction(1), "<=", "<=", Fraction(1)),
                ("u", "u"): (Fraction(1), "<=", "<=", Fraction(1)),
            },
        )
        assert len(m.arena) == 4
        var = m.trans[("s", "t")]
        lows = [c for c in m.constraints if c.rhs == var and c.rel == "<="]
        assert len(lows) == 1 and lows[0].lhs.constant_value() == Fraction(1, 3)
        assert check_admissible(m, {
            m.arena.names[0]: Fraction(2, 5),
            m.arena.names[1]: Fraction(3, 5),
            m.arena.names[2]: 1,
            m.arena.names[3]: 1,
        }).admissible

    def test_imc_point_interval_pins_value(self):
        m = imc_to_pmc(("s", "t"), "s", {
            ("s", "t"): (Fraction(1, 2), "<=", "<=", Fraction(1, 2)),
            ("s", "s"): (Fraction(1, 2), "<=", "<=", Fraction(1, 2)),
        })
        name = m.arena.names[0]
        assert check_admissible(m, {n: Fraction(1, 2) for n in m.arena.names}).admissible
        bad = check_admissible(m, {name: Fraction(1, 3), m.arena.names[1]: Fraction(2, 3)})
        assert not bad.admissible

    def test_imc_open_bound_is_strict(self):
        m = imc_to_pmc(("s", "t"), "s", {
            ("s", "t"): (Fraction(0), "<", "<=", Fraction(1)),
            ("s", "s"): (Fraction(0), "<", "<=", Fraction(1)),
        })
        assert any(c.rel == "<" for c in m.constraints)

    def test_imc_rejects_reversed_interval(self):
        with pytest.raises(Exception, match="empty interval"):
            imc_to_pmc(("s", "t"), "s", {("s", "t"): (Fraction(1, 2), "<=", "<=", Fraction(1, 3))})

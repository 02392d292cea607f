import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mnd.logic import (
    And,
    AtomLimitError,
    AtomRef,
    EmptyConjunctionError,
    FormulaSyntaxError,
    Implies,
    Not,
    Or,
    Signature,
    UnknownAtomError,
    WorldSet,
    conjoin,
    consistent,
    entails,
    equivalent,
    models,
    parse_formula,
    pretty,
)

SIG3 = Signature.of(["a", "b", "c"])
FULL3 = WorldSet.full(SIG3)


def test_parse_conjunction():
    sig = Signature.of(["has4wheels", "hasSteeringWheel"])
    f = parse_formula("has4wheels & hasSteeringWheel", sig)
    assert f == And(AtomRef("has4wheels"), AtomRef("hasSteeringWheel"))


def test_parse_precedence():
    f = parse_formula("!(a & b) -> c", SIG3)
    assert f == Implies(Not(And(AtomRef("a"), AtomRef("b"))), AtomRef("c"))
    # ! binds tighter than &, & tighter than |, -> lowest and right-assoc
    assert parse_formula("!a & b | c", SIG3) == Or(
        And(Not(AtomRef("a")), AtomRef("b")), AtomRef("c")
    )
    assert parse_formula("a -> b -> c", SIG3) == Implies(
        AtomRef("a"), Implies(AtomRef("b"), AtomRef("c"))
    )


def test_parse_unknown_atom():
    sig = Signature.of(["has4wheels"])
    with pytest.raises(UnknownAtomError) as err:
        parse_formula("has4wheels & foo", sig)
    assert err.value.name == "foo"


def test_parse_syntax_errors():
    with pytest.raises(FormulaSyntaxError):
        parse_formula("a &", SIG3)
    with pytest.raises(FormulaSyntaxError):
        parse_formula("(a | b", SIG3)
    with pytest.raises(FormulaSyntaxError):
        parse_formula("a - b", SIG3)


def test_tautology_models():
    sig = Signature.of(["a"])
    ws = WorldSet.full(sig)
    assert models(parse_formula("a | !a", sig), ws) == ws.ids
    assert len(ws.ids) == 2


def test_entailment_basics():
    assert entails(parse_formula("a", SIG3), parse_formula("a | b", SIG3), FULL3)
    assert not entails(parse_formula("a | b", SIG3), parse_formula("a", SIG3), FULL3)
    assert not consistent(parse_formula("a", SIG3), parse_formula("!a", SIG3), FULL3)
    f = parse_formula("a & b", SIG3)
    assert consistent(f, f, FULL3)
    assert equivalent(f, f, FULL3)
    assert equivalent(parse_formula("a & b", SIG3), parse_formula("b & a", SIG3), FULL3)


def test_conjoin():
    a, b, c = (AtomRef(n) for n in "abc")
    assert conjoin([a]) == a
    assert conjoin([a, b]) == And(a, b)
    assert conjoin([a, b, c]) == And(a, And(b, c))
    assert models(conjoin([a, b]), FULL3) == models(a, FULL3) & models(b, FULL3)
    with pytest.raises(EmptyConjunctionError):
        conjoin([])


def test_named_worlds():
    sig = Signature.of(["wet", "cold"])
    ws = WorldSet.named(sig, {"rain": ["wet"], "snow": ["wet", "cold"], "sun": []})
    assert models(parse_formula("wet & !cold", sig), ws) == {"rain"}
    assert models(parse_formula("cold -> wet", sig), ws) == {"rain", "snow", "sun"}


def test_full_enumeration_cap(monkeypatch):
    sig = Signature.of([f"p{i}" for i in range(4)])
    monkeypatch.setenv("MND_MAX_ATOMS", "3")
    with pytest.raises(AtomLimitError):
        WorldSet.full(sig)
    monkeypatch.setenv("MND_MAX_ATOMS", "4")
    assert len(WorldSet.full(sig).worlds) == 16


# -- property tests ---------------------------------------------------------

_atoms = st.sampled_from([AtomRef("a"), AtomRef("b"), AtomRef("c")])
formulas = st.recursive(
    _atoms,
    lambda sub: st.one_of(
        st.builds(Not, sub),
        st.builds(And, sub, sub),
        st.builds(Or, sub, sub),
        st.builds(Implies, sub, sub),
    ),
    max_leaves=12,
)


@given(formulas)
def test_print_parse_round_trip(f):
    assert parse_formula(pretty(f), SIG3) == f


@given(formulas, formulas)
def test_model_equations(f, g):
    assert models(Not(f), FULL3) == FULL3.ids - models(f, FULL3)
    assert models(And(f, g), FULL3) == models(f, FULL3) & models(g, FULL3)
    assert models(Or(f, g), FULL3) == models(f, FULL3) | models(g, FULL3)
    assert models(Implies(f, g), FULL3) == (FULL3.ids - models(f, FULL3)) | models(g, FULL3)


@given(formulas, formulas)
def test_mutual_entailment_is_equivalence(f, g):
    both = entails(f, g, FULL3) and entails(g, f, FULL3)
    assert both == equivalent(f, g, FULL3)

"""Negotiating agents: stubborn theories, angle hierarchies and move choice.

An agent owns a fixed stubborn theory (conjunction of unquestionable
formulas) and an ordered, finite list of angles.  Her current angle formula
(CAF) starts at angles[0] and moves only through the three proposal moves:

  W  weaken   - the new angle is a strict consequence of the current one
  C  change   - the new angle and the current one are incomparable
  S  stay     - only move available once the CAF is equivalent to the stub

The stub itself always counts as the (implicit) topmost angle, so an agent
can end a negotiation by weakening all the way up to it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Optional

from .logic import (
    And,
    AtomRef,
    Formula,
    Implies,
    Not,
    Or,
    Signature,
    WorldSet,
    conjoin,
    entails,
    equivalent,
    models,
    satisfiable,
)
from .relations import RelationLabel, Role, classify_models


class Attitude(str, Enum):
    COLLABORATIVE = "collaborative"
    COMPETITIVE = "competitive"


class Move(str, Enum):
    W = "W"
    C = "C"
    S = "S"


class UntranslatableAtomError(Exception):
    def __init__(self, name: str):
        super().__init__(f"atom {name!r} has no translation and is not shared")
        self.name = name


class AgentSpecError(ValueError):
    pass


@dataclass(frozen=True)
class AgentSpec:
    id: str
    sig: Signature
    stubborn: tuple[Formula, ...]
    angles: tuple[Formula, ...]
    attitude: Attitude = Attitude.COLLABORATIVE
    translations: Mapping[str, Mapping[str, str]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.stubborn:
            raise AgentSpecError(f"agent {self.id}: empty stubborn set")
        if not self.angles:
            raise AgentSpecError(f"agent {self.id}: empty angle list")

    def all_angles(self) -> tuple[Formula, ...]:
        """Declared angles plus the stub as implicit top angle."""
        return self.angles + (stub_formula(self),)

    def validate(self, ws: WorldSet) -> None:
        stub = stub_formula(self)
        if not satisfiable(stub, ws):
            raise AgentSpecError(f"agent {self.id}: stubborn theory is unsatisfiable")
        for idx, angle in enumerate(self.angles):
            if not entails(angle, stub, ws):
                raise AgentSpecError(
                    f"agent {self.id}: angle {idx} does not entail the stubborn theory"
                )


def stub_formula(a: AgentSpec) -> Formula:
    return conjoin(a.stubborn)


def translate(a: AgentSpec, from_peer: str, f: Formula) -> Formula:
    """Atom-wise rename of a peer formula into this agent's signature.  Atoms
    without a rename entry must appear verbatim in the agent's signature."""
    rename = a.translations.get(from_peer, {})

    def walk(node: Formula) -> Formula:
        if isinstance(node, AtomRef):
            name = rename.get(node.name, node.name)
            if name not in a.sig:
                raise UntranslatableAtomError(node.name)
            return AtomRef(name)
        if isinstance(node, Not):
            return Not(walk(node.operand))
        if isinstance(node, And):
            return And(walk(node.left), walk(node.right))
        if isinstance(node, Or):
            return Or(walk(node.left), walk(node.right))
        if isinstance(node, Implies):
            return Implies(walk(node.left), walk(node.right))
        raise TypeError(f"not a formula node: {node!r}")

    return walk(f)


@dataclass
class CafState:
    """Mutable per-run record of one agent's angle walk.  History entries are
    (move tag, formula); adoption of an opponent formula is tagged "Ag"."""

    agent_id: str
    k: int
    current: Formula
    history: list[tuple[str, Formula]]

    @classmethod
    def initial(cls, a: AgentSpec) -> "CafState":
        first = a.angles[0]
        return cls(agent_id=a.id, k=0, current=first, history=[("init", first)])

    def advance(self, tag: str, f: Formula) -> None:
        self.k += 1
        self.current = f
        self.history.append((tag, f))

    def held_formulas(self) -> list[Formula]:
        return [f for _, f in self.history]


def legal_successors(
    c: CafState, a: AgentSpec, ws: WorldSet
) -> list[tuple[Move, Formula]]:
    """Every (move, candidate) pair allowed from the current CAF, drawn from
    the declared angles plus the stub.  Once the CAF is equivalent to the stub
    the only move is to repeat it; otherwise the repeat is appended as a
    fallback after all W/C candidates."""
    stub = stub_formula(a)
    cur = c.current
    if equivalent(cur, stub, ws):
        return [(Move.S, cur)]
    out: list[tuple[Move, Formula]] = []
    for g in a.all_angles():
        if equivalent(cur, g, ws):
            continue
        if entails(cur, g, ws):
            out.append((Move.W, g))
        elif not entails(g, cur, ws):
            out.append((Move.C, g))
    out.append((Move.S, cur))
    return out


_COLLAB_RANK = {
    RelationLabel.AGREE: 5,
    RelationLabel.COMP: 4,
    RelationLabel.REL_DIS: 3,
    RelationLabel.ESS_DIS: 2,
    RelationLabel.ABS_DIS: 1,
}


def _hint_penalty(move: Move, received: Optional[RelationLabel]) -> int:
    # Prefer weakening while compatible, changing under essence disagreement.
    if received is RelationLabel.COMP:
        return 0 if move is Move.W else 1
    if received is RelationLabel.ESS_DIS:
        return 0 if move is Move.C else 1
    return 0


def choose_next(
    c: CafState,
    a: AgentSpec,
    last_received: Optional[Formula],
    last_label_received: Optional[RelationLabel],
    ws: WorldSet,
) -> tuple[Move, Formula]:
    """Deterministic move selection; a pure function of its arguments.

    Candidates split into three progress classes: angles never held in this
    run, then the weakening up to the stub, then the stay-put repeat.  Taking
    repeats last is what drives every run into the all-stubborn state the
    terminal rules test for.  Within the first class a collaborative agent
    takes the smallest model set first (so an early weakening never strands a
    still-unvisited stricter angle) and breaks ties on the relation the
    candidate would yield against the received proposal, ranking relative
    disagreement below compatibility because asserting it forces the opponent
    to adopt.  A competitive agent instead maximizes model-set overlap with
    angles[0], staying as close as possible to her initial viewpoint.
    """
    if last_received is None:
        return (Move.S, c.current) if c.history else (Move.W, a.angles[0])

    successors = legal_successors(c, a, ws)
    if len(successors) == 1:
        return successors[0]

    stub_models = models(stub_formula(a), ws)
    held = {models(f, ws) for f in c.held_formulas()}

    def progress_class(move: Move, g: Formula) -> int:
        g_models = models(g, ws)
        if move is Move.S:
            return 2
        if g_models == stub_models:
            return 1
        return 0 if g_models not in held else 3

    candidates = [
        (m, g) for m, g in successors if progress_class(m, g) != 3
    ] or successors

    p_models = models(last_received, ws)
    indexed = list(enumerate(a.all_angles()))

    def angle_index(g: Formula) -> int:
        g_models = models(g, ws)
        for i, angle in indexed:
            if models(angle, ws) == g_models:
                return i
        return len(indexed)

    def would_yield(g: Formula) -> RelationLabel:
        return classify_models(stub_models, models(g, ws), p_models, Role.FOLLOWING)

    if a.attitude is Attitude.COLLABORATIVE:

        def key(item: tuple[Move, Formula]):
            move, g = item
            return (
                progress_class(move, g),
                len(models(g, ws)),
                -_COLLAB_RANK.get(would_yield(g), 0),
                _hint_penalty(move, last_label_received),
                angle_index(g),
            )

    else:

        def key(item: tuple[Move, Formula]):
            move, g = item
            overlap = len(models(g, ws) & models(a.angles[0], ws))
            return (
                progress_class(move, g),
                -overlap,
                _hint_penalty(move, last_label_received),
                angle_index(g),
            )

    return min(candidates, key=key)

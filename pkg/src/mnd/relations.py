"""Negotiation relation tests and EGG/YOLK configuration taxonomy.

Two layers live here.  The semantic layer decides, for one receiver, which
relation holds between an incoming proposal and her stubborn/current theories
(`classify`).  The spatial layer describes the *joint* situation of two agents
as an EGG/YOLK configuration: the egg is the model set of an agent's stubborn
theory, the yolk the model set of her current angle, and the configuration is
the RCC5 quadruple over (egg,egg), (yolk,yolk), (yolk_i,egg_j), (yolk_j,egg_i).

Configuration numbering
-----------------------
Numbers follow the Lehmann-Cohn taxonomy of egg/yolk pairs.  There are
exactly 46 realizable configurations with proper yolks, split by the egg/egg
relation: 1 disjoint, 11 with egg_i inside egg_j, 11 mirrored, 18 partially
overlapping, and 5 with equal eggs (42a-42e).  The quadruples below for the
DR, PP and EQ families are transcribed from the source tables; the PO and PPi
families are reconstructed from the relation-group figures, the transition
graphs and the mirror symmetry (swapping the two agents maps configuration n
to its adjacent partner, e.g. 7<->8, 17<->18, 29<->30), which pins every
assignment used by the bundled walkthrough scenarios.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .logic import Formula, WorldSet, models


class RCC5(str, Enum):
    EQ = "EQ"
    PP = "PP"
    PPI = "PPi"
    PO = "PO"
    DR = "DR"


class RelationLabel(str, Enum):
    CALL_AWAY = "callAway"
    RESTRICTIVE = "restrictive"
    AGREE = "agree"
    ABS_DIS = "absDis"
    ESS_DIS = "essDis"
    REL_DIS = "relDis"
    COMP = "comp"


class Role(str, Enum):
    SECOND = "second"
    FOLLOWING = "following"


class InvalidEggYolkError(ValueError):
    pass


class UnknownConfigError(KeyError):
    pass


def rcc5(a: frozenset, b: frozenset) -> RCC5:
    """RCC5 relation between two finite sets.  EQ wins over DR for two empty
    sets; callers that care about degenerate regions filter beforehand."""
    if a == b:
        return RCC5.EQ
    if a < b:
        return RCC5.PP
    if b < a:
        return RCC5.PPI
    if not (a & b):
        return RCC5.DR
    return RCC5.PO


def classify_models(
    stub: frozenset,
    caf: frozenset,
    proposal: frozenset,
    role: Role = Role.FOLLOWING,
) -> RelationLabel:
    """Fixed relation cascade over model sets.

    Call-away requires the proposal to *strictly* generalize the stubborn
    theory: a proposal exactly equivalent to the stub is acceptable, not a
    reason to quit (configuration 34 sits in the relative-disagreement group).
    The restrictive test only exists for the second proposing agent; a
    following receiver of a strictly stricter proposal falls through to
    compatibility.
    """
    if stub <= proposal and not proposal <= stub:
        return RelationLabel.CALL_AWAY
    if role is Role.SECOND and proposal < caf:
        return RelationLabel.RESTRICTIVE
    if not (stub & proposal):
        return RelationLabel.ABS_DIS
    if not (caf & proposal):
        return RelationLabel.ESS_DIS
    if caf < proposal:
        return RelationLabel.REL_DIS
    if caf == proposal:
        return RelationLabel.AGREE
    return RelationLabel.COMP


def classify(
    stub: Formula,
    caf: Formula,
    proposal: Formula,
    ws: WorldSet,
    role: Role = Role.FOLLOWING,
) -> RelationLabel:
    """Formula-level wrapper; the proposal must already be translated into the
    receiver's signature."""
    return classify_models(models(stub, ws), models(caf, ws), models(proposal, ws), role)


# ---------------------------------------------------------------------------
# EGG/YOLK configurations


@dataclass(frozen=True)
class EggYolkConfig:
    rcc_ee: RCC5
    rcc_yy: RCC5
    rcc_ye: RCC5  # yolk_i vs egg_j
    rcc_ey: RCC5  # yolk_j vs egg_i
    paper_number: str | None = None

    @property
    def quad(self) -> tuple[RCC5, RCC5, RCC5, RCC5]:
        return (self.rcc_ee, self.rcc_yy, self.rcc_ye, self.rcc_ey)

    def compact(self) -> str:
        return "/".join(r.value for r in self.quad)


# (egg-egg, yolk-yolk, yolk_i/egg_j, yolk_j/egg_i) per configuration number.
CONFIG_QUADRUPLES: dict[str, tuple[RCC5, RCC5, RCC5, RCC5]] = {
    # disjoint eggs
    "1": (RCC5.DR, RCC5.DR, RCC5.DR, RCC5.DR),
    # partially overlapping eggs
    "2": (RCC5.PO, RCC5.DR, RCC5.DR, RCC5.DR),
    "3": (RCC5.PO, RCC5.DR, RCC5.PO, RCC5.DR),
    "4": (RCC5.PO, RCC5.DR, RCC5.DR, RCC5.PO),
    "5": (RCC5.PO, RCC5.DR, RCC5.DR, RCC5.PP),
    "6": (RCC5.PO, RCC5.DR, RCC5.PP, RCC5.DR),
    "9": (RCC5.PO, RCC5.DR, RCC5.PO, RCC5.PO),
    "10": (RCC5.PO, RCC5.DR, RCC5.PO, RCC5.PP),
    "11": (RCC5.PO, RCC5.DR, RCC5.PP, RCC5.PO),
    "14": (RCC5.PO, RCC5.PO, RCC5.PO, RCC5.PO),
    "15": (RCC5.PO, RCC5.PO, RCC5.PP, RCC5.PO),
    "16": (RCC5.PO, RCC5.PO, RCC5.PO, RCC5.PP),
    "17": (RCC5.PO, RCC5.PPI, RCC5.PO, RCC5.PP),
    "18": (RCC5.PO, RCC5.PP, RCC5.PP, RCC5.PO),
    "25": (RCC5.PO, RCC5.DR, RCC5.PP, RCC5.PP),
    "28": (RCC5.PO, RCC5.PO, RCC5.PP, RCC5.PP),
    "29": (RCC5.PO, RCC5.PPI, RCC5.PP, RCC5.PP),
    "30": (RCC5.PO, RCC5.PP, RCC5.PP, RCC5.PP),
    "39": (RCC5.PO, RCC5.EQ, RCC5.PP, RCC5.PP),
    # egg_j strictly inside egg_i (opponent's whole viewpoint within mine)
    "7": (RCC5.PPI, RCC5.DR, RCC5.DR, RCC5.PP),
    "12": (RCC5.PPI, RCC5.DR, RCC5.PO, RCC5.PP),
    "19": (RCC5.PPI, RCC5.PO, RCC5.PO, RCC5.PP),
    "21": (RCC5.PPI, RCC5.PPI, RCC5.PPI, RCC5.PP),
    "23": (RCC5.PPI, RCC5.PPI, RCC5.PO, RCC5.PP),
    "26": (RCC5.PPI, RCC5.DR, RCC5.PP, RCC5.PP),
    "31": (RCC5.PPI, RCC5.PO, RCC5.PP, RCC5.PP),
    "33": (RCC5.PPI, RCC5.PPI, RCC5.EQ, RCC5.PP),
    "35": (RCC5.PPI, RCC5.PP, RCC5.PP, RCC5.PP),
    "36": (RCC5.PPI, RCC5.PPI, RCC5.PP, RCC5.PP),
    "40": (RCC5.PPI, RCC5.EQ, RCC5.PP, RCC5.PP),
    # egg_i strictly inside egg_j
    "8": (RCC5.PP, RCC5.DR, RCC5.PP, RCC5.DR),
    "13": (RCC5.PP, RCC5.DR, RCC5.PP, RCC5.PO),
    "20": (RCC5.PP, RCC5.PO, RCC5.PP, RCC5.PO),
    "22": (RCC5.PP, RCC5.PP, RCC5.PP, RCC5.PPI),
    "24": (RCC5.PP, RCC5.PP, RCC5.PP, RCC5.PO),
    "27": (RCC5.PP, RCC5.DR, RCC5.PP, RCC5.PP),
    "32": (RCC5.PP, RCC5.PO, RCC5.PP, RCC5.PP),
    "34": (RCC5.PP, RCC5.PP, RCC5.PP, RCC5.EQ),
    "37": (RCC5.PP, RCC5.PP, RCC5.PP, RCC5.PP),
    "38": (RCC5.PP, RCC5.PPI, RCC5.PP, RCC5.PP),
    "41": (RCC5.PP, RCC5.EQ, RCC5.PP, RCC5.PP),
    # equal eggs
    "42a": (RCC5.EQ, RCC5.DR, RCC5.PP, RCC5.PP),
    "42b": (RCC5.EQ, RCC5.PO, RCC5.PP, RCC5.PP),
    "42c": (RCC5.EQ, RCC5.PP, RCC5.PP, RCC5.PP),
    "42d": (RCC5.EQ, RCC5.PPI, RCC5.PP, RCC5.PP),
    "42e": (RCC5.EQ, RCC5.EQ, RCC5.PP, RCC5.PP),
}

_QUAD_TO_NUMBER = {quad: number for number, quad in CONFIG_QUADRUPLES.items()}

# Relation-group figures: which configurations carry which relation, seen from
# agent i (the plain-line agent receiving the offer drawn as yolk_j).
CONFIG_GROUPS: dict[str, RelationLabel] = {}
for _num in ("22",):
    CONFIG_GROUPS[_num] = RelationLabel.CALL_AWAY
for _num in ("17", "21", "23", "29", "33", "36", "38", "39", "40", "41", "42d", "42e"):
    CONFIG_GROUPS[_num] = RelationLabel.AGREE
for _num in ("1", "2", "3", "6", "8"):
    CONFIG_GROUPS[_num] = RelationLabel.ABS_DIS
for _num in ("4", "5", "7", "9", "10", "11", "12", "13", "25", "26", "27", "42a"):
    CONFIG_GROUPS[_num] = RelationLabel.ESS_DIS
for _num in ("18", "24", "30", "34", "35", "37", "42c"):
    CONFIG_GROUPS[_num] = RelationLabel.REL_DIS
for _num in ("14", "15", "16", "19", "20", "28", "31", "32", "42b"):
    CONFIG_GROUPS[_num] = RelationLabel.COMP

assert set(CONFIG_GROUPS) == set(CONFIG_QUADRUPLES)


def egg_yolk_config(
    stub_i: frozenset,
    caf_i: frozenset,
    stub_j: frozenset,
    caf_j: frozenset,
) -> EggYolkConfig:
    """RCC5 quadruple of a two-agent snapshot, tagged with the taxonomy number
    when the quadruple matches an enumerated configuration (proper yolks);
    degenerate snapshots (yolk equal to egg) simply stay untagged unless they
    happen to coincide with an enumerated quadruple."""
    if not caf_i <= stub_i:
        raise InvalidEggYolkError("agent i: yolk not contained in egg")
    if not caf_j <= stub_j:
        raise InvalidEggYolkError("agent j: yolk not contained in egg")
    quad = (
        rcc5(stub_i, stub_j),
        rcc5(caf_i, caf_j),
        rcc5(caf_i, stub_j),
        rcc5(caf_j, stub_i),
    )
    return EggYolkConfig(*quad, paper_number=_QUAD_TO_NUMBER.get(quad))


_INVERSE = {
    RCC5.EQ: RCC5.EQ,
    RCC5.PO: RCC5.PO,
    RCC5.DR: RCC5.DR,
    RCC5.PP: RCC5.PPI,
    RCC5.PPI: RCC5.PP,
}


def mirror_config(cfg: EggYolkConfig) -> EggYolkConfig:
    """The same snapshot with the two agents swapped."""
    quad = (
        _INVERSE[cfg.rcc_ee],
        _INVERSE[cfg.rcc_yy],
        cfg.rcc_ey,
        cfg.rcc_ye,
    )
    return EggYolkConfig(*quad, paper_number=_QUAD_TO_NUMBER.get(quad))


def relation_of_config(cfg: EggYolkConfig, perspective: str = "i") -> RelationLabel:
    """Relation group of an enumerated configuration, from agent i's or agent
    j's point of view."""
    if perspective not in ("i", "j"):
        raise ValueError(f"perspective must be 'i' or 'j', got {perspective!r}")
    resolved = cfg if perspective == "i" else mirror_config(cfg)
    if resolved.paper_number is None:
        raise UnknownConfigError(
            f"configuration {resolved.compact()} is not an enumerated configuration"
        )
    return CONFIG_GROUPS[resolved.paper_number]

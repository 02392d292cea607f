"""Propositional formulas over finite signatures, with finite-model semantics.

Everything downstream (proposal rules, relation tests, protocol guards) is
decided by model enumeration over a fixed, finite set of worlds.  A world is a
total truth assignment over the signature's atoms; a formula denotes the set
of worlds that satisfy it.  Entailment is model-set inclusion, consistency is
nonempty intersection.  There is no proof theory anywhere in this package.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

DEFAULT_MAX_ATOMS = 20


class FormulaError(Exception):
    """Base class for formula construction and parsing problems."""


class FormulaSyntaxError(FormulaError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownAtomError(FormulaError):
    def __init__(self, name: str):
        super().__init__(f"unknown atom {name!r}")
        self.name = name


class EmptyConjunctionError(FormulaError):
    pass


class AtomLimitError(FormulaError):
    def __init__(self, n_atoms: int, cap: int):
        super().__init__(
            f"signature has {n_atoms} atoms; full enumeration capped at {cap} "
            f"(override with MND_MAX_ATOMS)"
        )


def enumeration_cap() -> int:
    raw = os.environ.get("MND_MAX_ATOMS")
    return int(raw) if raw else DEFAULT_MAX_ATOMS


@dataclass(frozen=True)
class Atom:
    """A named proposition.  Arity is carried as metadata only; every atom is
    evaluated as a ground, zero-argument proposition."""

    name: str
    arity: int = 0

    def __post_init__(self):
        if not self.name:
            raise FormulaError("atom name must be non-empty")


@dataclass(frozen=True)
class Signature:
    atoms: tuple[Atom, ...]

    def __post_init__(self):
        if not self.atoms:
            raise FormulaError("signature must contain at least one atom")
        names = [a.name for a in self.atoms]
        if len(set(names)) != len(names):
            raise FormulaError("duplicate atom names in signature")

    @classmethod
    def of(cls, names: Iterable[str]) -> "Signature":
        return cls(tuple(Atom(n) for n in names))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.atoms)

    def __contains__(self, name: str) -> bool:
        return any(a.name == name for a in self.atoms)


# ---------------------------------------------------------------------------
# Formula AST


@dataclass(frozen=True)
class Formula:
    def atom_names(self) -> frozenset[str]:
        return _atom_names(self)

    def __str__(self) -> str:
        return pretty(self)


@dataclass(frozen=True)
class AtomRef(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


def _atom_names(f: Formula) -> frozenset[str]:
    if isinstance(f, AtomRef):
        return frozenset((f.name,))
    if isinstance(f, Not):
        return _atom_names(f.operand)
    if isinstance(f, (And, Or, Implies)):
        return _atom_names(f.left) | _atom_names(f.right)
    raise TypeError(f"not a formula node: {f!r}")


def conjoin(fs: Sequence[Formula]) -> Formula:
    """Right-nested, order-preserving conjunction of a nonempty list."""
    if not fs:
        raise EmptyConjunctionError("cannot conjoin an empty list")
    result = fs[-1]
    for f in reversed(fs[:-1]):
        result = And(f, result)
    return result


# ---------------------------------------------------------------------------
# Concrete syntax.  atom := [A-Za-z_][A-Za-z0-9_]*, unary "!", binary
# "&", "|", "->", parentheses; precedence ! > & > | > ->; "&" and "|"
# associate left, "->" associates right.  The printer is canonical: parsing
# its output reproduces the AST node for node.

_PREC = {Implies: 0, Or: 1, And: 2, Not: 3, AtomRef: 4}


def pretty(f: Formula) -> str:
    def render(node: Formula, parent_prec: int, right_side: bool) -> str:
        prec = _PREC[type(node)]
        if isinstance(node, AtomRef):
            text = node.name
        elif isinstance(node, Not):
            text = "!" + render(node.operand, prec, False)
        elif isinstance(node, And):
            text = render(node.left, prec, False) + " & " + render(node.right, prec, True)
        elif isinstance(node, Or):
            text = render(node.left, prec, False) + " | " + render(node.right, prec, True)
        elif isinstance(node, Implies):
            text = render(node.left, prec + 1, False) + " -> " + render(node.right, prec, True)
        else:
            raise TypeError(f"not a formula node: {node!r}")
        needs_parens = prec < parent_prec or (
            prec == parent_prec and right_side and isinstance(node, (And, Or))
        )
        return f"({text})" if needs_parens else text

    return render(f, 0, False)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
        elif ch in "!&|()":
            tokens.append((ch, ch, i))
            i += 1
        elif ch == "-":
            if text[i : i + 2] == "->":
                tokens.append(("->", "->", i))
                i += 2
            else:
                raise FormulaSyntaxError("expected '->'", i)
        else:
            raise FormulaSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("eof", "", len(text)))
    return tokens


def parse_formula(text: str, sig: Signature) -> Formula:
    tokens = _tokenize(text)
    pos = 0

    def peek() -> tuple[str, str, int]:
        return tokens[pos]

    def advance() -> tuple[str, str, int]:
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_implies() -> Formula:
        left = parse_or()
        if peek()[0] == "->":
            advance()
            return Implies(left, parse_implies())
        return left

    def parse_or() -> Formula:
        node = parse_and()
        while peek()[0] == "|":
            advance()
            node = Or(node, parse_and())
        return node

    def parse_and() -> Formula:
        node = parse_unary()
        while peek()[0] == "&":
            advance()
            node = And(node, parse_unary())
        return node

    def parse_unary() -> Formula:
        kind, value, at = peek()
        if kind == "!":
            advance()
            return Not(parse_unary())
        if kind == "(":
            advance()
            node = parse_implies()
            kind, _, at = peek()
            if kind != ")":
                raise FormulaSyntaxError("expected ')'", at)
            advance()
            return node
        if kind == "name":
            advance()
            if value not in sig:
                raise UnknownAtomError(value)
            return AtomRef(value)
        raise FormulaSyntaxError(f"unexpected token {value or kind!r}", at)

    node = parse_implies()
    kind, value, at = peek()
    if kind != "eof":
        raise FormulaSyntaxError(f"trailing input {value!r}", at)
    return node


# ---------------------------------------------------------------------------
# Worlds and model sets


@dataclass(frozen=True)
class World:
    """A named total truth assignment: atoms in `trues` hold, the rest do not."""

    name: str
    trues: frozenset[str]


@dataclass(frozen=True)
class WorldSet:
    sig: Signature
    worlds: tuple[World, ...]

    def __post_init__(self):
        names = [w.name for w in self.worlds]
        if len(set(names)) != len(names):
            raise FormulaError("duplicate world names")
        atom_names = set(self.sig.names)
        for w in self.worlds:
            extra = w.trues - atom_names
            if extra:
                raise UnknownAtomError(sorted(extra)[0])

    @classmethod
    def full(cls, sig: Signature) -> "WorldSet":
        n = len(sig.atoms)
        cap = enumeration_cap()
        if n > cap:
            raise AtomLimitError(n, cap)
        names = sig.names
        worlds = []
        for bits in itertools.product((0, 1), repeat=n):
            label = "".join(str(b) for b in bits)
            trues = frozenset(names[i] for i, b in enumerate(bits) if b)
            worlds.append(World(label, trues))
        return cls(sig, tuple(worlds))

    @classmethod
    def named(cls, sig: Signature, assignments: Mapping[str, Iterable[str]]) -> "WorldSet":
        worlds = tuple(World(name, frozenset(trues)) for name, trues in assignments.items())
        return cls(sig, worlds)

    @property
    def ids(self) -> frozenset[str]:
        return frozenset(w.name for w in self.worlds)


@lru_cache(maxsize=None)
def _atom_models(ws: WorldSet) -> dict[str, frozenset[str]]:
    table: dict[str, set[str]] = {name: set() for name in ws.sig.names}
    for w in ws.worlds:
        for name in w.trues:
            table[name].add(w.name)
    return {name: frozenset(ids) for name, ids in table.items()}


@lru_cache(maxsize=262144)
def models(f: Formula, ws: WorldSet) -> frozenset[str]:
    """The set of world identifiers in `ws` whose assignment satisfies `f`."""
    if isinstance(f, AtomRef):
        try:
            return _atom_models(ws)[f.name]
        except KeyError:
            raise UnknownAtomError(f.name) from None
    if isinstance(f, Not):
        return ws.ids - models(f.operand, ws)
    if isinstance(f, And):
        return models(f.left, ws) & models(f.right, ws)
    if isinstance(f, Or):
        return models(f.left, ws) | models(f.right, ws)
    if isinstance(f, Implies):
        return (ws.ids - models(f.left, ws)) | models(f.right, ws)
    raise TypeError(f"not a formula node: {f!r}")


def entails(f: Formula, g: Formula, ws: WorldSet) -> bool:
    return models(f, ws) <= models(g, ws)


def consistent(f: Formula, g: Formula, ws: WorldSet) -> bool:
    return bool(models(f, ws) & models(g, ws))


def equivalent(f: Formula, g: Formula, ws: WorldSet) -> bool:
    return models(f, ws) == models(g, ws)


def satisfiable(f: Formula, ws: WorldSet) -> bool:
    return bool(models(f, ws))

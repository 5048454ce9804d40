"""Relation algebras (calculi) and bit-vector relation operations.

A relation is a plain int used as a bitmask over the calculus's basic
relations: bit k set means basic relation k is in the disjunction.  The
empty relation (0) signals inconsistency; the universal relation has all
bits set.  Keeping relations as single machine words keeps composition
and intersection branch-free inside the propagation loop.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from . import tables

MAX_WIDTH = 32

Relation = int  # bitmask over basic relations


class CalculusError(Exception):
    """Unknown calculus name or a definition violating the algebra laws."""


@dataclass(frozen=True)
class BasicRelation:
    id: int
    symbol: str
    inverse_id: int


@dataclass(frozen=True)
class Calculus:
    """An immutable relation algebra: basic relations plus composition table.

    ``comp[j][k]`` is the relation (bitmask) implied between (i, l) when
    j holds on (i, m) and k holds on (m, l).
    """

    name: str
    basics: tuple[BasicRelation, ...]
    identity_id: int
    comp: tuple[tuple[int, ...], ...]
    _inv_cache: dict = field(default_factory=dict, repr=False, compare=False)
    _comp_cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def p(self) -> int:
        return len(self.basics)

    @property
    def universal(self) -> Relation:
        return (1 << self.p) - 1

    def symbol(self, bit_id: int) -> str:
        return self.basics[bit_id].symbol

    def bit_id(self, symbol: str) -> int:
        for b in self.basics:
            if b.symbol == symbol:
                return b.id
        raise CalculusError(f"unknown relation symbol {symbol!r} in calculus {self.name!r}")

    def mask(self, symbols) -> Relation:
        r = 0
        for s in symbols:
            r |= 1 << self.bit_id(s)
        return r

    def symbols(self, r: Relation) -> list[str]:
        return [b.symbol for b in self.basics if r >> b.id & 1]

    def bits(self, r: Relation) -> list[int]:
        return [k for k in range(self.p) if r >> k & 1]

    def inverse(self, r: Relation) -> Relation:
        """Element-wise converse of a relation."""
        cached = self._inv_cache.get(r)
        if cached is None:
            cached = 0
            for b in self.basics:
                if r >> b.id & 1:
                    cached |= 1 << b.inverse_id
            self._inv_cache[r] = cached
        return cached

    def compose_row(self, bit_id: int, r2: Relation) -> Relation:
        """Composition of a single basic relation with a disjunction."""
        key = (bit_id, r2)
        cached = self._comp_cache.get(key)
        if cached is None:
            row = self.comp[bit_id]
            cached = 0
            rest = r2
            while rest:
                low = rest & -rest
                cached |= row[low.bit_length() - 1]
                rest ^= low
            self._comp_cache[key] = cached
        return cached

    def compose(self, r1: Relation, r2: Relation) -> Relation:
        """Union over all pairs (b in r1, b' in r2) of comp[b][b']."""
        universal = self.universal
        if r1 == universal and r2:
            return universal
        if r2 == universal and r1:
            return universal
        out = 0
        rest = r1
        while rest:
            low = rest & -rest
            out |= self.compose_row(low.bit_length() - 1, r2)
            if out == universal:
                break
            rest ^= low
        return out

    def compose_bounded(self, r1: Relation, r2: Relation, target: Relation) -> Relation:
        """``compose(r1, r2) & target`` with the one-support early exit.

        Scanning stops as soon as every bit of ``target`` has found one
        supporting pair, which is all the propagation loop ever needs.
        """
        universal = self.universal
        if (r1 == universal or r2 == universal) and r1 and r2:
            return target
        out = 0
        rest = r1
        while rest:
            low = rest & -rest
            out |= self.compose_row(low.bit_length() - 1, r2) & target
            if out == target:
                return target
            rest ^= low
        return out

    def weight(self, bit_id: int) -> int:
        """Restrictiveness of a primitive: total width of its composition row."""
        return sum(r.bit_count() for r in self.comp[bit_id])


def compose(calc: Calculus, r1: Relation, r2: Relation) -> Relation:
    return calc.compose(r1, r2)


def inverse(calc: Calculus, r: Relation) -> Relation:
    return calc.inverse(r)


def intersect(r1: Relation, r2: Relation) -> Relation:
    return r1 & r2


def _build_from_rows(name, symbols, inverses, identity, rows) -> Calculus:
    p = len(symbols)
    if p > MAX_WIDTH:
        raise CalculusError(f"calculus {name!r} has {p} basic relations; the limit is {MAX_WIDTH}")
    index = {s: k for k, s in enumerate(symbols)}
    if len(index) != p:
        raise CalculusError(f"duplicate relation symbols in calculus {name!r}")
    if identity not in index:
        raise CalculusError(f"identity symbol {identity!r} not among the basic relations")
    try:
        basics = tuple(
            BasicRelation(id=k, symbol=s, inverse_id=index[inverses[s]])
            for k, s in enumerate(symbols)
        )
        comp = []
        for row_sym in symbols:
            row = rows[row_sym]
            if len(row) != p:
                raise CalculusError(f"composition row {row_sym!r} has {len(row)} entries, expected {p}")
            comp.append(tuple(sum(1 << index[s] for s in _entry_symbols(entry)) for entry in row))
    except KeyError as exc:
        raise CalculusError(f"calculus {name!r} references unknown symbol {exc}") from exc
    calc = Calculus(name=name, basics=basics, identity_id=index[identity], comp=tuple(comp))
    validate(calc)
    return calc


def _entry_symbols(entry):
    if isinstance(entry, str):
        return entry.split()
    return list(entry)


def validate(calc: Calculus) -> None:
    """Check the algebra laws; a violation is an error, not a warning."""
    p = calc.p
    ident = calc.identity_id
    for b in calc.basics:
        if calc.basics[b.inverse_id].inverse_id != b.id:
            raise CalculusError(f"{calc.name}: inverse of inverse of {b.symbol} is not itself")
    if calc.basics[ident].inverse_id != ident:
        raise CalculusError(f"{calc.name}: identity relation is not self-inverse")
    for k in range(p):
        if calc.comp[ident][k] != 1 << k or calc.comp[k][ident] != 1 << k:
            raise CalculusError(f"{calc.name}: identity composition law fails for {calc.symbol(k)}")
    for j in range(p):
        for k in range(p):
            lhs = calc.inverse(calc.comp[j][k])
            rhs = calc.comp[calc.basics[k].inverse_id][calc.basics[j].inverse_id]
            if lhs != rhs:
                raise CalculusError(
                    f"{calc.name}: converse-composition law fails at "
                    f"({calc.symbol(j)}, {calc.symbol(k)})"
                )


_BUILTINS = {
    "ia": (tables.IA_SYMBOLS, tables.IA_INVERSES, tables.IA_IDENTITY, tables.IA_COMPOSITION),
    "rcc8": (tables.RCC8_SYMBOLS, tables.RCC8_INVERSES, tables.RCC8_IDENTITY, tables.RCC8_COMPOSITION),
    "point": (tables.POINT_SYMBOLS, tables.POINT_INVERSES, tables.POINT_IDENTITY, tables.POINT_COMPOSITION),
}

_cache: dict[str, Calculus] = {}


def load_calculus(name: str) -> Calculus:
    """Load a built-in calculus ("ia", "rcc8", "point") or a JSON definition file."""
    if name in _BUILTINS:
        if name not in _cache:
            symbols, inverses, identity, composition = _BUILTINS[name]
            _cache[name] = _build_from_rows(name, symbols, inverses, identity, composition)
        return _cache[name]
    path = Path(name)
    if path.is_file():
        return _load_file(path)
    raise CalculusError(f"unknown calculus {name!r} (not a built-in, not a file)")


def _load_file(path: Path) -> Calculus:
    try:
        doc = json.loads(path.read_text())
        name = doc["name"]
        symbols = [b["symbol"] for b in doc["basics"]]
        inverses = {b["symbol"]: b["inverse"] for b in doc["basics"]}
        identity = doc["identity"]
        comp_rows = doc["composition"]
        rows = {sym: comp_rows[k] for k, sym in enumerate(symbols)}
    except (KeyError, TypeError, IndexError, json.JSONDecodeError) as exc:
        raise CalculusError(f"malformed calculus definition {path}: {exc}") from exc
    return _build_from_rows(name, symbols, inverses, identity, rows)

"""Ground terms: immutable variable-free trees of atoms, integers and compounds.

A term carries all content attached to a graph node. Structural queries
defined here (node count, symbol set, edge set, subterm enumeration) are the
shared vocabulary of every similarity measure.
"""

from __future__ import annotations

from typing import Iterator, Union


class Atom:
    """A named leaf symbol."""

    __slots__ = ("name",)

    def __init__(self, name: str):
        if not isinstance(name, str):
            raise TypeError(f"atom name must be a string, got {type(name).__name__}")
        object.__setattr__(self, "name", name)

    def __setattr__(self, key, value):
        raise AttributeError("Atom is immutable")

    def __eq__(self, other):
        return isinstance(other, Atom) and self.name == other.name

    def __hash__(self):
        return hash(("a", self.name))

    def __repr__(self):
        return f"Atom({self.name!r})"

    def __reduce__(self):
        return (Atom, (self.name,))


class Int:
    """An integer leaf."""

    __slots__ = ("value",)

    def __init__(self, value: int):
        if not isinstance(value, int) or isinstance(value, bool):
            raise TypeError(f"Int value must be an integer, got {type(value).__name__}")
        object.__setattr__(self, "value", value)

    def __setattr__(self, key, value):
        raise AttributeError("Int is immutable")

    def __eq__(self, other):
        return isinstance(other, Int) and self.value == other.value

    def __hash__(self):
        return hash(("i", self.value))

    def __repr__(self):
        return f"Int({self.value})"

    def __reduce__(self):
        return (Int, (self.value,))


class Compound:
    """A functor applied to one or more argument terms.

    Zero-argument compounds do not exist; use Atom. Hash and the derived
    symbol/edge sets are memoized, which is safe because terms never mutate.
    """

    __slots__ = ("functor", "args", "_hash", "_nodes", "_symbols", "_edges")

    def __init__(self, functor: str, args):
        if not isinstance(functor, str):
            raise TypeError("functor must be a string")
        args = tuple(args)
        if not args:
            raise ValueError("compound terms need at least one argument")
        for a in args:
            if not isinstance(a, (Atom, Int, Compound)):
                raise TypeError(f"argument is not a ground term: {a!r}")
        object.__setattr__(self, "functor", functor)
        object.__setattr__(self, "args", args)
        object.__setattr__(self, "_hash", None)
        object.__setattr__(self, "_nodes", None)
        object.__setattr__(self, "_symbols", None)
        object.__setattr__(self, "_edges", None)

    def __setattr__(self, key, value):
        raise AttributeError("Compound is immutable")

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, Compound)
            and self.functor == other.functor
            and self.args == other.args
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(("c", self.functor, self.args))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"Compound({self.functor!r}, {list(self.args)!r})"

    def __reduce__(self):
        return (Compound, (self.functor, self.args))


GroundTerm = Union[Atom, Int, Compound]


def symbol_of(t: GroundTerm) -> str:
    """The symbol naming a term's root: atom name, functor, or decimal digits.

    Symbol identity deliberately ignores arity, so an atom compares equal to
    a functor of the same name.
    """
    if isinstance(t, Atom):
        return t.name
    if isinstance(t, Int):
        return str(t.value)
    return t.functor


def node_count(t: GroundTerm) -> int:
    """Number of tree nodes in a term (leaves count 1)."""
    if not isinstance(t, Compound):
        return 1
    n = t._nodes
    if n is None:
        n = 0
        stack = [t]
        while stack:
            x = stack.pop()
            n += 1
            if isinstance(x, Compound):
                stack.extend(x.args)
        object.__setattr__(t, "_nodes", n)
    return n


def symbol_set(t: GroundTerm) -> frozenset[str]:
    """All symbols occurring anywhere in the term, as a set."""
    if not isinstance(t, Compound):
        return frozenset((symbol_of(t),))
    syms = t._symbols
    if syms is None:
        acc = set()
        stack = [t]
        while stack:
            x = stack.pop()
            acc.add(symbol_of(x))
            if isinstance(x, Compound):
                stack.extend(x.args)
        syms = frozenset(acc)
        object.__setattr__(t, "_symbols", syms)
    return syms


def edge_set(t: GroundTerm) -> frozenset[tuple[str, str]]:
    """All (parent symbol, child symbol) adjacencies of the term's tree."""
    if not isinstance(t, Compound):
        return frozenset()
    edges = t._edges
    if edges is None:
        acc = set()
        stack = [t]
        while stack:
            x = stack.pop()
            if isinstance(x, Compound):
                parent = x.functor
                for child in x.args:
                    acc.add((parent, symbol_of(child)))
                    stack.append(child)
        edges = frozenset(acc)
        object.__setattr__(t, "_edges", edges)
    return edges


def subterm_occurrences(t: GroundTerm) -> list[GroundTerm]:
    """Every subterm position in depth-first pre-order, including the term itself.

    Positions, not values: a subtree appearing twice is listed twice.
    """
    out: list[GroundTerm] = []
    stack = [t]
    while stack:
        x = stack.pop()
        out.append(x)
        if isinstance(x, Compound):
            stack.extend(reversed(x.args))
    return out


def iter_subterms(t: GroundTerm) -> Iterator[GroundTerm]:
    """Lazy pre-order variant of subterm_occurrences."""
    stack = [t]
    while stack:
        x = stack.pop()
        yield x
        if isinstance(x, Compound):
            stack.extend(reversed(x.args))

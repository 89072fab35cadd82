"""Exact spectral coordinates: rationals plus formal indeterminates.

A coordinate is an element of Q + Q<x1, x2, ...> where the x's are named
formal symbols.  This replaces complex spectral parameters so that equality,
half-integrality and genericity tests are all decidable.
"""
from __future__ import annotations

from fractions import Fraction
from functools import total_ordering

__all__ = ["Coord", "coord", "parse_coord"]


def _as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"not an exact rational: {v!r}")


@total_ordering
class Coord:
    """Immutable exact coordinate: rational part + symbolic part.

    The symbolic part is a sorted tuple of (name, rational coefficient)
    pairs with all coefficients nonzero (canonical form).
    """

    __slots__ = ("rat", "sym", "_hash")

    def __init__(self, rat=0, sym=()):
        object.__setattr__(self, "rat", _as_fraction(rat))
        cleaned = tuple(sorted((n, c) for n, c in dict(sym).items() if c != 0))
        object.__setattr__(self, "sym", cleaned)
        object.__setattr__(self, "_hash", hash((self.rat, cleaned)))

    def __setattr__(self, *a):
        raise AttributeError("Coord is immutable")

    @staticmethod
    def var(name: str, coeff=1) -> "Coord":
        return Coord(0, ((name, _as_fraction(coeff)),))

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other) -> "Coord":
        other = coord(other)
        sym = dict(self.sym)
        for n, c in other.sym:
            sym[n] = sym.get(n, Fraction(0)) + c
        return Coord(self.rat + other.rat, sym)

    __radd__ = __add__

    def __neg__(self) -> "Coord":
        return Coord(-self.rat, tuple((n, -c) for n, c in self.sym))

    def __sub__(self, other) -> "Coord":
        return self + (-coord(other))

    def __rsub__(self, other) -> "Coord":
        return coord(other) + (-self)

    def __mul__(self, other) -> "Coord":
        k = _as_fraction(other)
        return Coord(self.rat * k, tuple((n, c * k) for n, c in self.sym))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Coord":
        return self * (Fraction(1) / _as_fraction(other))

    # -- predicates ---------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return not self.sym

    def is_half_integer(self) -> bool:
        """In (1/2)Z: purely rational with 2*rat an integer."""
        return self.is_rational and (2 * self.rat).denominator == 1

    def is_generic(self) -> bool:
        """Not in (1/2)Z: symbolic, or a rational outside the half lattice."""
        return not self.is_half_integer()

    # -- comparisons --------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Coord):
            return self.rat == other.rat and self.sym == other.sym
        if isinstance(other, (int, Fraction)):
            return not self.sym and self.rat == other
        return NotImplemented

    def __hash__(self):
        return self._hash

    def sort_key(self):
        # Lexicographic on (symbolic part, rational part); used only for
        # deterministic printing and iteration order, never for semantics.
        return (self.sym, self.rat)

    def __lt__(self, other):
        return self.sort_key() < coord(other).sort_key()

    # -- formatting ---------------------------------------------------------
    def __str__(self):
        parts = []
        if self.rat != 0 or not self.sym:
            parts.append(str(self.rat))
        for n, c in self.sym:
            if c == 1:
                parts.append(n)
            elif c == -1:
                parts.append(f"-{n}")
            elif c.denominator == 1:
                parts.append(f"{c.numerator}{n}")
            elif c.numerator == 1:
                parts.append(f"{n}/{c.denominator}")
            else:
                parts.append(f"{c.numerator}{n}/{c.denominator}")
        out = "+".join(parts)
        return out.replace("+-", "-")

    def __repr__(self):
        return f"Coord({self})"


def coord(v) -> Coord:
    """Coerce an int, Fraction, string or Coord into a Coord."""
    if isinstance(v, Coord):
        return v
    if isinstance(v, str):
        return parse_coord(v)
    return Coord(v)


class CoordSyntaxError(ValueError):
    pass


def _parse_term(term: str, pos: int) -> Coord:
    term = term.strip()
    if not term:
        raise CoordSyntaxError(f"empty coordinate term at position {pos}")
    sign = 1
    if term.startswith("-"):
        sign = -1
        term = term[1:]
    # split off a symbol name: digits and '/' belong to the coefficient
    i = 0
    while i < len(term) and (term[i].isdigit() or term[i] == "/"):
        i += 1
    num, name = term[:i], term[i:]
    if name:
        tail = ""
        if "/" in name:
            name, tail = name.split("/", 1)
            tail = "/" + tail
        if not name.isidentifier():
            raise CoordSyntaxError(f"bad indeterminate {name!r} at position {pos}")
        coeff = Fraction((num or "1") + tail)
        return Coord.var(name, sign * coeff)
    try:
        return Coord(sign * Fraction(num))
    except ValueError:
        raise CoordSyntaxError(f"bad rational {num!r} at position {pos}") from None


def parse_coord(text: str) -> Coord:
    """Parse a coordinate: rational and/or '+'-joined symbol terms.

    Examples: "-3/2", "k", "2k", "k/3", "1/2+k", "-1+k/2".
    """
    # normalize a-b into a+-b so we can split on '+'
    s = text.strip()
    norm = s[0] + s[1:].replace("-", "+-") if s else s
    total = Coord(0)
    pos = 0
    for term in norm.split("+"):
        total = total + _parse_term(term, pos)
        pos += len(term) + 1
    return total

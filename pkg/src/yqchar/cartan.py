"""Exact Cartan data for the finite-type simple Lie algebras.

Node numbering follows the Bourbaki convention:

  A_r : 1 - 2 - ... - r                                  all d_i = 1
  B_r : 1 - 2 - ... - (r-1) => r   (node r short)        d = (2,...,2,1)
  C_r : 1 - 2 - ... - (r-1) <= r   (node r long)         d = (1,...,1,2)
  D_r : 1 - ... - (r-2) < (r-1, r)                       all d_i = 1
  E_r : 1 - 3 - 4 - 5 - ... - r, with 2 attached to 4    all d_i = 1
  F_4 : 1 - 2 => 3 - 4   (3, 4 short)                    d = (2,2,1,1)
  G_2 : 1 <<= 2          (node 1 short)                  d = (1,3)

Here c[i][j] = 2(a_i,a_j)/(a_i,a_i), d_i = (a_i,a_i)/2 normalized to
{1,2,3} with gcd 1, and d_ij = (a_i,a_j)/2 = d_i*c_ij/2, so that
d_i*c_ij = d_j*c_ji = 2*d_ij.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

__all__ = [
    "LieType", "CartanData", "RootVector", "Weight",
    "build_cartan", "height", "weight_to_root", "root_to_weight",
]

_RANK_RANGE = {
    "A": (1, None), "B": (2, None), "C": (2, None), "D": (4, None),
    "E": (6, 8), "F": (4, 4), "G": (2, 2),
}


@dataclass(frozen=True)
class LieType:
    series: str
    rank: int

    def __post_init__(self):
        s = self.series
        if s not in _RANK_RANGE:
            raise ValueError(f"unknown series {s!r} (expected one of A-G)")
        lo, hi = _RANK_RANGE[s]
        if self.rank < lo or (hi is not None and self.rank > hi):
            if s == "D" and self.rank == 3:
                raise ValueError("D3 is rejected; use the isomorphic A3")
            legal = f">= {lo}" if hi is None else f"in [{lo},{hi}]"
            raise ValueError(f"illegal rank {self.rank} for series {s} (need rank {legal})")

    @staticmethod
    def parse(text: str) -> "LieType":
        t = text.strip().upper()
        if len(t) < 2 or not t[1:].isdigit():
            raise ValueError(f"cannot parse Lie type {text!r} (expected e.g. 'A2', 'G2')")
        return LieType(t[0], int(t[1:]))

    def __str__(self):
        return f"{self.series}{self.rank}"


def _chain(r):
    """Off-diagonal -1 entries of a simply laced path 1-2-...-r."""
    return [(i, i + 1) for i in range(1, r)]


def _edges(lt: LieType):
    """Dynkin edges as (i, j, cij, cji) with 1-based nodes."""
    s, r = lt.series, lt.rank
    if s == "A":
        return [(i, j, -1, -1) for i, j in _chain(r)]
    if s == "B":
        e = [(i, j, -1, -1) for i, j in _chain(r - 1)]
        e.append((r - 1, r, -1, -2))
        return e
    if s == "C":
        e = [(i, j, -1, -1) for i, j in _chain(r - 1)]
        e.append((r - 1, r, -2, -1))
        return e
    if s == "D":
        e = [(i, j, -1, -1) for i, j in _chain(r - 2)]
        e += [(r - 2, r - 1, -1, -1), (r - 2, r, -1, -1)]
        return e
    if s == "E":
        pairs = [(1, 3), (3, 4), (2, 4)] + [(i, i + 1) for i in range(4, r)]
        return [(i, j, -1, -1) for i, j in pairs]
    if s == "F":
        return [(1, 2, -1, -1), (2, 3, -1, -2), (3, 4, -1, -1)]
    if s == "G":
        return [(1, 2, -3, -1)]
    raise AssertionError(s)


def _symmetrizers(lt: LieType):
    s, r = lt.series, lt.rank
    if s == "B":
        return [2] * (r - 1) + [1]
    if s == "C":
        return [1] * (r - 1) + [2]
    if s == "F":
        return [2, 2, 1, 1]
    if s == "G":
        return [1, 3]
    return [1] * r


@dataclass(frozen=True)
class CartanData:
    lie_type: LieType
    c: tuple          # rank x rank Cartan matrix, rows/cols 0-based
    d: tuple          # symmetrizers d_i in {1,2,3}, gcd 1

    @property
    def rank(self) -> int:
        return self.lie_type.rank

    @property
    def nodes(self):
        return range(1, self.rank + 1)

    def cij(self, i: int, j: int) -> int:
        return self.c[i - 1][j - 1]

    def di(self, i: int) -> Fraction:
        return Fraction(self.d[i - 1])

    def dij(self, i: int, j: int) -> Fraction:
        """Symmetric form d_ij = d_i * c_ij / 2, a half integer."""
        return Fraction(self.d[i - 1] * self.c[i - 1][j - 1], 2)

    def validate(self):
        r = self.rank
        assert all(self.c[i][i] == 2 for i in range(r))
        assert all(self.c[i][j] in (0, -1, -2, -3)
                   for i in range(r) for j in range(r) if i != j)
        assert all(di in (1, 2, 3) for di in self.d)
        assert gcd(*self.d) == 1 if r > 1 else self.d == (1,)
        for i in range(r):
            for j in range(r):
                assert self.d[i] * self.c[i][j] == self.d[j] * self.c[j][i]

    def to_json(self) -> str:
        return json.dumps({
            "type": str(self.lie_type),
            "c": [list(row) for row in self.c],
            "d": list(self.d),
            "dsym": [[str(self.dij(i, j)) for j in self.nodes] for i in self.nodes],
        })


@lru_cache(maxsize=None)
def build_cartan(lt: LieType) -> CartanData:
    """Cartan matrix and symmetrizers of a legal LieType (Bourbaki numbering)."""
    r = lt.rank
    c = [[2 if i == j else 0 for j in range(r)] for i in range(r)]
    for i, j, cij, cji in _edges(lt):
        c[i - 1][j - 1] = cij
        c[j - 1][i - 1] = cji
    data = CartanData(lt, tuple(tuple(row) for row in c), tuple(_symmetrizers(lt)))
    data.validate()
    return data


# ---------------------------------------------------------------------------
# Lattice vectors.  Coordinates are exact rationals or Coord values; both
# support +, -, * by Fraction, so the classes are generic over the field.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootVector:
    """Vector in the simple-root basis (alpha-basis)."""
    coords: tuple

    def __add__(self, other):
        return RootVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return RootVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return RootVector(tuple(-a for a in self.coords))

    def in_root_lattice(self) -> bool:
        return all(isinstance(a, (int, Fraction)) and Fraction(a).denominator == 1
                   for a in self.coords)

    def in_negative_cone(self) -> bool:
        return self.in_root_lattice() and all(a <= 0 for a in self.coords)


@dataclass(frozen=True)
class Weight:
    """Vector in the fundamental-weight basis (varpi-basis)."""
    coords: tuple

    def __add__(self, other):
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return Weight(tuple(-a for a in self.coords))

    @staticmethod
    def fundamental(cartan: CartanData, i: int) -> "Weight":
        return Weight(tuple(Fraction(1) if j == i else Fraction(0) for j in cartan.nodes))

    @staticmethod
    def simple_root(cartan: CartanData, i: int) -> "Weight":
        """alpha_i expressed in the varpi-basis: alpha_j = sum_i c_ij varpi_i."""
        return Weight(tuple(Fraction(cartan.cij(j, i)) for j in cartan.nodes))


def height(v: RootVector):
    """Sum of alpha-basis coordinates (each alpha_i has height 1)."""
    total = Fraction(0)
    for a in v.coords:
        total = total + a
    return total


@lru_cache(maxsize=None)
def _cartan_inverse(lt: LieType):
    """Exact inverse of the Cartan matrix over Q (Gauss-Jordan)."""
    c = build_cartan(lt).c
    r = len(c)
    aug = [[Fraction(c[i][j]) for j in range(r)] + [Fraction(int(i == j)) for j in range(r)]
           for i in range(r)]
    for col in range(r):
        piv = next(row for row in range(col, r) if aug[row][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        f = aug[col][col]
        aug[col] = [a / f for a in aug[col]]
        for row in range(r):
            if row != col and aug[row][col] != 0:
                g = aug[row][col]
                aug[row] = [a - g * b for a, b in zip(aug[row], aug[col])]
    return tuple(tuple(row[r:]) for row in aug)


def weight_to_root(cartan: CartanData, w: Weight) -> RootVector:
    """Change of basis varpi -> alpha: solve C r = w exactly."""
    inv = _cartan_inverse(cartan.lie_type)
    r = cartan.rank
    coords = []
    for i in range(r):
        acc = Fraction(0)
        for j in range(r):
            acc = acc + inv[i][j] * w.coords[j]
        coords.append(acc)
    return RootVector(tuple(coords))


def root_to_weight(cartan: CartanData, v: RootVector) -> Weight:
    """Change of basis alpha -> varpi: w_i = sum_j c_ij v_j."""
    r = cartan.rank
    coords = []
    for i in range(r):
        acc = Fraction(0)
        for j in range(r):
            acc = acc + Fraction(cartan.c[i][j]) * v.coords[j]
        coords.append(acc)
    return Weight(tuple(coords))

"""Text and JSON serialization for monomials.

Grammar (whitespace-separated product of factors):

    factor  := [ "/" ] head "[" node "," coord "]" [ "^" int ]
    head    := "Psi" | "Y" | "A"
    coord   := rational and/or "+"-joined indeterminate terms, e.g.
               "-3/2", "k", "2k", "k/3", "1/2+k"

A leading "/" inverts the factor.  Mixed products are normalized: any Psi
factor forces the Psi basis; otherwise A factors are expanded into Y's
when Y factors are present; a pure product of inverted A's parses as an
A-ledger (AVector).
"""
from __future__ import annotations

import re

from .cartan import CartanData
from .coords import parse_coord

_FACTOR = re.compile(
    r"(?P<inv>/)?(?P<head>Psi|Y|A)\[(?P<node>\d+),(?P<coord>[^\]]+)\](\^(?P<exp>-?\d+))?")


class MonomialSyntaxError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _scan(text: str):
    pos = 0
    factors = []
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _FACTOR.match(text, pos)
        if not m:
            raise MonomialSyntaxError(f"cannot parse factor starting at {text[pos:pos+12]!r}", pos)
        try:
            x = parse_coord(m.group("coord"))
        except ValueError as err:
            raise MonomialSyntaxError(str(err), pos) from None
        e = int(m.group("exp") or 1)
        if m.group("inv"):
            e = -e
        factors.append((m.group("head"), int(m.group("node")), x, e))
        pos = m.end()
    return factors


def parse_monomial(text: str, cartan: CartanData | None = None, kind: str | None = None):
    """Parse a monomial string; returns PsiMonomial, YMonomial or AVector.

    ``cartan`` is required whenever a basis conversion is needed (mixed
    products, or any A factor that must be expanded).  ``kind`` forces the
    result basis ("Psi", "Y" or "A"); the empty product "1" needs it.
    """
    from . import monomials as M

    if text.strip() == "1":
        cls = {"Psi": M.PsiMonomial, "Y": M.YMonomial, "A": M.AVector, None: M.PsiMonomial}[kind]
        return cls.unit()
    factors = _scan(text)
    heads = {h for h, *_ in factors}
    if kind is not None:
        heads.add({"Psi": "Psi", "Y": "Y", "A": "_A"}[kind])

    def need_cartan():
        if cartan is None:
            raise MonomialSyntaxError("mixed product requires Cartan data for conversion", 0)
        return cartan

    if "Psi" in heads:
        out = M.PsiMonomial.unit()
        for h, i, x, e in factors:
            if h == "Psi":
                out = out * M.PsiMonomial.gen(i, x, e)
            elif h == "Y":
                out = out * M.expand_Y_to_Psi(need_cartan(), i, x) ** e
            else:
                out = out * M.expand_A_to_Psi(need_cartan(), i, x) ** e
        return out
    if "Y" in heads:
        out = M.YMonomial.unit()
        for h, i, x, e in factors:
            if h == "Y":
                out = out * M.YMonomial.gen(i, x, e)
            else:
                out = out * M.expand_A_to_Y(need_cartan(), i, x) ** e
        return out
    # pure A product: the A-ledger convention stores exponents of A^{-1}
    out = M.AVector.unit()
    for _, i, x, e in factors:
        out = out * M.AVector.gen(i, x, -e)
    return out


def format_monomial(m) -> str:
    """Canonical string form; inverse of parse_monomial on its output."""
    from . import monomials as M

    head = {"PsiMonomial": "Psi", "YMonomial": "Y", "AVector": "A",
            "MultiplicativeMonomial": "Phi"}[type(m).__name__]
    if m.is_unit():
        return "1"
    parts = []
    for (i, x), e in m.items():
        if isinstance(m, M.AVector):
            e = -e
        suffix = "" if e == 1 else f"^{e}"
        cs = f"q^{x}" if head == "Phi" else str(x)
        parts.append(f"{head}[{i},{cs}]{suffix}")
    return " ".join(parts)


def monomial_to_json(m) -> dict:
    from . import monomials as M

    kind = {"PsiMonomial": "Psi", "YMonomial": "Y", "AVector": "A"}[type(m).__name__]
    return {
        "kind": kind,
        "exps": [{"node": i, "coord": str(x), "exp": (-e if isinstance(m, M.AVector) else e)}
                 for (i, x), e in m.items()],
    }

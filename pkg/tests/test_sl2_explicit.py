"""Explicit rank-one matrix modules: relations, extraction, three-term sum."""
import dataclasses
from fractions import Fraction

import pytest

from yqchar.cartan import LieType, build_cartan
from yqchar.characters import asymptotic_char, compare_characters, sl2_kr_char
from yqchar.monomials import PsiMonomial
from yqchar.sl2_explicit import (
    build_module, check_relations, extract_qchar, psi_ratio_series,
    verify_sl2_three_term,
)

A1 = build_cartan(LieType.parse("A1"))


# -- series helpers ----------------------------------------------------------

def test_psi_ratio_series_examples():
    # (u+1)/u = 1 + u^-1
    m = PsiMonomial.gen(1, 1) * PsiMonomial.gen(1, 0, -1)
    assert psi_ratio_series(m, 3) == [1, 1, 0, 0]
    # u/(u+1) = 1 - u^-1 + u^-2 - ...
    assert psi_ratio_series(m.inverse(), 3) == [1, -1, 1, -1]
    with pytest.raises(ValueError):
        psi_ratio_series(PsiMonomial.gen(1, "x"), 2)
    with pytest.raises(ValueError):
        psi_ratio_series(PsiMonomial.gen(2, 0), 2)


# -- construction ------------------------------------------------------------

def test_build_module_validation():
    with pytest.raises(ValueError):
        build_module("finite", Fraction(7, 3), 0)
    with pytest.raises(ValueError):
        build_module("finite", -1, 0)
    with pytest.raises(ValueError):
        build_module("truncated", Fraction(7, 3), 0, M=2)
    with pytest.raises(ValueError):
        build_module("truncated", Fraction(7, 3), 0)      # M is required
    with pytest.raises(ValueError):
        build_module("banana", 1, 0)


def test_specific_matrix_entries():
    mod = build_module("finite", 1, 0, n_max=1)
    # raising: xp_0 v_1 = v_0, annihilates v_0; higher modes kill v_1 (x = 0)
    assert mod.xp[0][0][1] == 1
    assert all(mod.xp[0][r][0] == 0 for r in range(mod.dim))
    assert mod.xp[1][0][1] == 0
    # lowering: xm_0 v_0 = (0+1)(1-0) v_1
    assert mod.xm[0][1][0] == 1
    # Cartan eigenvalue on v_0: (u-1)(u+1)/((u-1)u) = 1 + u^-1
    assert mod.xi[0][0][0] == 1 and mod.xi[1][0][0] == 0


def test_safe_columns():
    assert list(build_module("finite", 2, 0).safe_columns) == [0, 1, 2]
    assert list(build_module("truncated", Fraction(7, 3), 0, M=5).safe_columns) == [0, 1, 2]


def test_matrices_json_is_exact_strings():
    dump = build_module("finite", 1, Fraction(1, 2), n_max=0).matrices_json()
    assert dump["kind"] == "finite" and dump["x"] == "1/2"
    assert dump["xm"][0][1][0] == "1"


# -- defining relations ------------------------------------------------------

@pytest.mark.parametrize("k", range(5))
def test_relations_finite(k):
    for x in (Fraction(0), Fraction(1, 2), Fraction(-2)):
        rep = check_relations(build_module("finite", k, x, n_max=2))
        assert rep.verdict, rep.to_text()
        assert rep.checked > 0


@pytest.mark.parametrize("k", [Fraction(7, 3), Fraction(-5, 2)])
def test_relations_truncated(k):
    rep = check_relations(build_module("truncated", k, Fraction(1, 3), n_max=3, M=8))
    assert rep.verdict, rep.to_text()


def test_relations_mode_bound_guard():
    mod = build_module("finite", 1, 0, n_max=1)
    with pytest.raises(ValueError):
        check_relations(mod, n_max=5)
    assert check_relations(mod, n_max=0).verdict


# -- character extraction ----------------------------------------------------

@pytest.mark.parametrize("k", range(5))
def test_extraction_matches_closed_form(k):
    for x in (Fraction(0), Fraction(-3, 2)):
        got = extract_qchar(build_module("finite", k, x, n_max=1))
        assert compare_characters(got, sl2_kr_char(k, x)).verdict


def test_truncated_extraction_matches_stabilized_engine():
    k, x = Fraction(7, 3), Fraction(1, 2)
    got = extract_qchar(build_module("truncated", k, x, n_max=0, M=8))
    assert got.height_bound == 7
    want = asymptotic_char(A1, 1, x + k, x, 7)
    assert compare_characters(got, want).verdict


def test_extraction_detects_inconsistent_eigenvalues():
    mod = build_module("finite", 1, 0, n_max=0)
    bad_xi = list(list(list(r) for r in m) for m in mod.xi)
    bad_xi[0][1][1] += 1
    broken = dataclasses.replace(mod, xi=tuple(tuple(tuple(r) for r in m) for m in bad_xi))
    with pytest.raises(ValueError):
        extract_qchar(broken)


# -- three-term sum of modules ----------------------------------------------

def test_three_term_examples():
    for x, y in ((Fraction(2), Fraction(0)), (Fraction(-1, 2), Fraction(3)),
                 (Fraction(0), Fraction(0))):
        rep = verify_sl2_three_term(x, y, 8, 3)
        assert rep.verdict, rep.to_text()


def test_three_term_bound_guard():
    with pytest.raises(ValueError):
        verify_sl2_three_term(2, 0, 5, 4)

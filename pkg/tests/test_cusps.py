"""Cusp arithmetic and unfolding matrices."""

from fractions import Fraction

import pytest

import addtwist as at
from addtwist import CuspPoint, UnsupportedCuspError, build_unfolding_matrix


def test_cusp_normalization():
    assert CuspPoint(2, 4) == CuspPoint(1, 2)
    assert CuspPoint(-3, -6) == CuspPoint(1, 2)
    assert CuspPoint(3, -6) == CuspPoint(-1, 2)
    assert CuspPoint(0, 5) == CuspPoint(0, 1)
    assert CuspPoint.infinity().is_infinity
    with pytest.raises(ValueError):
        CuspPoint(2, 0)


def test_cusp_parsing_and_strings():
    assert CuspPoint.from_string("3/7") == CuspPoint(3, 7)
    assert CuspPoint.from_string("-2/4") == CuspPoint(-1, 2)
    assert CuspPoint.from_string("5") == CuspPoint(5, 1)
    assert CuspPoint.from_string("oo").is_infinity
    assert str(CuspPoint(3, 7)) == "3/7"
    assert CuspPoint(3, 7).as_fraction() == Fraction(3, 7)


def test_shifted_mod1():
    assert CuspPoint(9, 7).shifted_mod1() == CuspPoint(2, 7)
    assert CuspPoint(-1, 7).shifted_mod1() == CuspPoint(6, 7)


def test_build_gamma0_level_one():
    m = build_unfolding_matrix(CuspPoint(1, 2), 1)
    assert m.entries == (1, 0, 2, 1)
    assert m.coset == at.GAMMA0
    assert m.det == 1
    assert m.image_of_infinity == CuspPoint(1, 2)


def test_build_fricke_at_zero():
    m = build_unfolding_matrix(CuspPoint(0, 1), 11, coset=at.FRICKE)
    assert m.entries == (0, -1, 11, 0)
    assert m.det == 11
    assert m.normalized_c == pytest.approx(11 / 11**0.5)
    assert m.image_of_infinity == CuspPoint(0, 1)


def test_build_fricke_one_third():
    m = build_unfolding_matrix(CuspPoint(1, 3), 11)
    assert m.coset == at.FRICKE
    assert m.entries == (11, -4, 33, -11)
    assert m.det == 11
    assert m.image_of_infinity == CuspPoint(1, 3)
    assert m.second_cusp == CuspPoint(1, 3)


def test_gamma0_chosen_when_level_divides_denominator():
    m = build_unfolding_matrix(CuspPoint(3, 22), 11)
    assert m.coset == at.GAMMA0
    assert m.det == 1
    assert m.c == 22
    assert m.image_of_infinity == CuspPoint(3, 22)


def test_intermediate_cusp_rejected():
    with pytest.raises(UnsupportedCuspError, match="Atkin-Lehner"):
        build_unfolding_matrix(CuspPoint(1, 2), 12)


def test_matrix_validation():
    with pytest.raises(ValueError, match="det 1"):
        at.UnfoldingMatrix(1, 0, 2, 3, at.GAMMA0, 1)
    with pytest.raises(ValueError, match="N | c"):
        at.UnfoldingMatrix(1, 0, 3, 1, at.GAMMA0, 11)
    # sign normalization flips representatives with c < 0
    m = at.UnfoldingMatrix(-1, 0, -2, -1, at.GAMMA0, 1)
    assert m.entries == (1, 0, 2, 1)


def test_moebius_action_reduces():
    g = at.gamma0_element(2, 1, 7, 4, 1)
    img = g.apply(CuspPoint(1, 5))
    assert img == CuspPoint(2 * 1 + 1 * 5, 7 * 1 + 4 * 5)
    t = at.gamma0_element(1, 3, 0, 1, 1)
    assert t.apply(CuspPoint(1, 2)) == CuspPoint(7, 2)
    assert t.apply(CuspPoint.infinity()).is_infinity


def test_cocycle():
    g = at.gamma0_element(2, 1, 7, 4, 1)
    assert g.cocycle(CuspPoint(1, 5)) == Fraction(7 * 1 + 4 * 5, 5)
    with pytest.raises(ValueError):
        g.cocycle(CuspPoint.infinity())


def test_second_cusp_residue_is_bezout_invariant():
    # two completions of the same column differ by a translation: -d/c mod 1 fixed
    r = CuspPoint(5, 17)
    m = build_unfolding_matrix(r, 1)
    a, b, c, d = m.entries
    m2 = at.UnfoldingMatrix(a, b + 3 * a, c, d + 3 * c, at.GAMMA0, 1)
    assert m2.image_of_infinity == r
    assert m.second_cusp.shifted_mod1() == m2.second_cusp.shifted_mod1()

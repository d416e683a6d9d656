"""Double Butcher tableaux for IMEX Runge-Kutta time stepping.

A scheme is a pair (explicit, implicit) sharing one stage count.  The
solvers require globally stiffly accurate tableaux (both c's end at 1 and
both weight rows equal the last stage row): the final update then *is* the
last stage, which is what lets the relaxation stay well defined at eps = 0.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

_F = Fraction

# ARS(4,4,3): five stages, third order, explicit first stage (a11 = 0).
_ARS443_EXPLICIT = [
    [0, 0, 0, 0, 0],
    [_F(1, 2), 0, 0, 0, 0],
    [_F(11, 18), _F(1, 18), 0, 0, 0],
    [_F(5, 6), _F(-5, 6), _F(1, 2), 0, 0],
    [_F(1, 4), _F(7, 4), _F(3, 4), _F(-7, 4), 0],
]
_ARS443_IMPLICIT = [
    [0, 0, 0, 0, 0],
    [0, _F(1, 2), 0, 0, 0],
    [0, _F(1, 6), _F(1, 2), 0, 0],
    [0, _F(-1, 2), _F(1, 2), _F(1, 2), 0],
    [0, _F(3, 2), _F(-3, 2), _F(1, 2), _F(1, 2)],
]


@dataclass(frozen=True)
class DoubleButcherTableau:
    name: str
    a_ex: np.ndarray
    b_ex: np.ndarray
    c_ex: np.ndarray
    a_im: np.ndarray
    b_im: np.ndarray
    c_im: np.ndarray

    @property
    def n_stages(self) -> int:
        return self.a_ex.shape[0]


def _tableau_from_rationals(name, a_ex, a_im):
    a_ex = np.array([[float(x) for x in row] for row in a_ex])
    a_im = np.array([[float(x) for x in row] for row in a_im])
    return DoubleButcherTableau(
        name=name,
        a_ex=a_ex, b_ex=a_ex[-1].copy(), c_ex=a_ex.sum(axis=1),
        a_im=a_im, b_im=a_im[-1].copy(), c_im=a_im.sum(axis=1),
    )


def ars443() -> DoubleButcherTableau:
    """The ARS(4,4,3) pair; coefficients exact rationals converted once."""
    return _tableau_from_rationals("ars443", _ARS443_EXPLICIT, _ARS443_IMPLICIT)


def validate(tab: DoubleButcherTableau):
    """None when the tableau is usable, else the first violation found."""
    s = tab.a_ex.shape[0]
    for name, arr, shape in (
        ("a_ex", tab.a_ex, (s, s)), ("a_im", tab.a_im, (s, s)),
        ("b_ex", tab.b_ex, (s,)), ("b_im", tab.b_im, (s,)),
        ("c_ex", tab.c_ex, (s,)), ("c_im", tab.c_im, (s,)),
    ):
        if arr.shape != shape:
            return f"{name} has shape {arr.shape}, expected {shape}"
    for i in range(s):
        for j in range(i, s):
            if tab.a_ex[i, j] != 0.0:
                return f"explicit table not strictly lower triangular at ({i},{j})"
        for j in range(i + 1, s):
            if tab.a_im[i, j] != 0.0:
                return f"implicit table not lower triangular at ({i},{j})"
    if not np.allclose(tab.c_ex, tab.a_ex.sum(axis=1), atol=1e-15):
        return "c_ex does not match explicit row sums"
    if not np.allclose(tab.c_im, tab.a_im.sum(axis=1), atol=1e-15):
        return "c_im does not match implicit row sums"
    gsa = (
        tab.c_ex[-1] == 1.0 and tab.c_im[-1] == 1.0
        and np.array_equal(tab.b_ex, tab.a_ex[-1])
        and np.array_equal(tab.b_im, tab.a_im[-1])
    )
    if not gsa:
        return "not globally stiffly accurate"
    return None


def stage_weights(tab: DoubleButcherTableau, stage: int):
    """(explicit row, implicit row) for 1-based stage l.

    The explicit part has l-1 entries (strictly lower), the implicit part l
    entries ending at the diagonal a_ll.
    """
    if not 1 <= stage <= tab.n_stages:
        raise ValueError(f"stage {stage} out of range 1..{tab.n_stages}")
    l = stage - 1
    return tab.a_ex[l, :l].copy(), tab.a_im[l, : l + 1].copy()

"""
Membership tests and enumeration helpers for lattice cosets v + L in
rank one and rank two, based on the Hermite normal form of L.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from qnahm.nahm.specs import LatticeCoset, Vector


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """
    Return (g, x, y) with x * a + y * b = g = gcd(a, b) >= 0.
    """

    x0, y0, x1, y1 = 1, 0, 0, 1
    while b != 0:
        k, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


@dataclass(frozen=True)
class CosetForm:
    """
    A coset v + L in the normalized form

        n_1 = v_1 (mod h11),
        n_2 = v_2 + h21 * (n_1 - v_1) / h11 (mod h22),

    which is the lower-triangular Hermite normal form of L. For rank
    one, only `h11` and `v1` are used.
    """

    rank: int
    h11: int
    h21: int
    h22: int
    v1: int
    v2: int

    def admits_row(self, n1: int) -> bool:
        return (n1 - self.v1) % self.h11 == 0

    def row_residue(self, n1: int) -> int:
        """
        The residue of n_2 modulo h22 within an admissible row n_1.
        """
        t = (n1 - self.v1) // self.h11
        return (self.v2 + self.h21 * t) % self.h22

    def contains(self, n: Vector) -> bool:
        if not self.admits_row(n[0]):
            return False
        if self.rank == 1:
            return True
        return (n[1] - self.row_residue(n[0])) % self.h22 == 0

    def first_row(self, start: int) -> int:
        """
        Smallest admissible n_1 >= start.
        """
        return start + (self.v1 - start) % self.h11

    def rows(self, start: int, stop: int) -> range:
        """
        All admissible n_1 with start <= n_1 <= stop.
        """
        return range(self.first_row(start), stop + 1, self.h11)

    def columns(self, n1: int, start: int, stop: int) -> range:
        """
        All n_2 in start <= n_2 <= stop such that (n_1, n_2) is in the
        coset (the row n_1 must be admissible).
        """
        r = self.row_residue(n1)
        return range(start + (r - start) % self.h22, stop + 1, self.h22)

    def first_column(self, n1: int, start: int) -> int:
        r = self.row_residue(n1)
        return start + (r - start) % self.h22


def coset_form(coset: LatticeCoset) -> CosetForm:
    """
    Bring a coset into Hermite normal form.
    """

    if coset.rank == 1:
        m = abs(coset.basis[0][0])
        return CosetForm(1, m, 0, 1, coset.shift[0], 0)

    # Column operations on the basis (columns generate L): combine the
    # first row into (g, 0) using the extended Euclidean algorithm
    (p, r), (s, t) = coset.basis
    g, x, y = extended_gcd(p, r)
    col1 = (g, x * s + y * t)
    col2 = (0, (r // g) * s - (p // g) * t)

    h22 = abs(col2[1])
    h11 = col1[0]
    h21 = col1[1] % h22
    v1, v2 = coset.shift
    return CosetForm(2, h11, h21, h22, v1, v2)


def coset_representatives(basis: tuple[Vector, ...]) -> list[LatticeCoset]:
    """
    One coset v + L for each class of Z^r / L, with v in a fundamental
    box of the Hermite normal form, in lexicographic order of v.
    """

    rank = len(basis)
    form = coset_form(LatticeCoset(basis, (0,) * rank))
    if rank == 1:
        shifts: list[Vector] = [(i,) for i in range(form.h11)]
    else:
        shifts = list(itertools.product(range(form.h11), range(form.h22)))
    return [LatticeCoset(basis, v) for v in shifts]


def iter_box(coset: LatticeCoset, bound: int) -> Iterator[Vector]:
    """
    All points of the coset in the box [0, bound]^r, in lexicographic
    order (used as a brute-force reference).
    """

    form = coset_form(coset)
    ranges = [range(bound + 1)] * coset.rank
    for n in itertools.product(*ranges):
        if form.contains(n):
            yield n


__all__ = [
    "CosetForm",
    "coset_form",
    "coset_representatives",
    "extended_gcd",
    "iter_box",
]

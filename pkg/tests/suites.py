"""Randomised property suites, shared between the unit tests and the
acceptance gate (which re-runs them under a timing budget)."""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from geowb import catalog
from geowb.forms import (
    InvariantForm,
    Monomial,
    bidegree_basis,
    normalize_monomial,
    wedge,
)
from geowb.lie import StructurePresentation
from geowb.positivity import SimpleForm, pairing
from geowb.scalars import EXACT, FLOAT, GaussRational


def random_scalar(rnd: random.Random) -> GaussRational:
    def frac():
        return Fraction(rnd.randint(-3, 3), rnd.randint(1, 3))

    return GaussRational(frac(), frac())


def random_monomial(rnd: random.Random, n: int, p=None, q=None) -> Monomial:
    if p is None:
        p = rnd.randint(0, n)
    if q is None:
        q = rnd.randint(0, n)
    holo = rnd.sample(range(1, n + 1), p)
    anti = rnd.sample(range(1, n + 1), q)
    return Monomial.make(holo, anti, n)


def random_form(rnd: random.Random, n: int, terms=3, p=None, q=None) -> InvariantForm:
    data = {}
    for _ in range(rnd.randint(1, terms)):
        data[random_monomial(rnd, n, p, q)] = random_scalar(rnd)
    return InvariantForm(n, data, EXACT)


def random_homogeneous(rnd: random.Random, n: int) -> InvariantForm:
    p = rnd.randint(0, n)
    q = rnd.randint(0, n)
    return random_form(rnd, n, p=p, q=q)


# ---- suite bodies ---------------------------------------------------------


def wedge_anticommutativity(cases: int = 1000, seed: int = 101):
    rnd = random.Random(seed)
    for _ in range(cases):
        n = rnd.randint(2, 5)
        f = random_homogeneous(rnd, n)
        g = random_homogeneous(rnd, n)
        df = f.degree() or 0
        dg = g.degree() or 0
        lhs = wedge(f, g)
        rhs = wedge(g, f)
        if (df * dg) % 2:
            rhs = -rhs
        assert lhs.equals(rhs)


def conjugation_morphism(cases: int = 1000, seed: int = 102):
    rnd = random.Random(seed)
    for _ in range(cases):
        n = rnd.randint(2, 5)
        f = random_form(rnd, n)
        g = random_form(rnd, n)
        assert f.conjugate().conjugate().equals(f)
        assert wedge(f, g).conjugate().equals(wedge(f.conjugate(), g.conjugate()))
        assert (f + f.conjugate()).is_real()


def bidegree_partition(cases: int = 1000, seed: int = 103):
    rnd = random.Random(seed)
    for _ in range(cases):
        n = rnd.randint(2, 5)
        f = random_form(rnd, n, terms=5)
        total = InvariantForm.zero(n)
        for p in range(n + 1):
            for q in range(n + 1):
                total = total + f.project(p, q)
        assert total.equals(f)


def normalize_matches_bubble_parity(cases: int = 1000, seed: int = 104):
    rnd = random.Random(seed)
    for _ in range(cases):
        n = rnd.randint(2, 6)
        length = rnd.randint(1, 6)
        word = [
            (rnd.choice("ha"), rnd.randint(1, n)) for _ in range(length)
        ]
        mono, sign = normalize_monomial(word, n)
        # brute-force bubble sort parity on the same key order
        keys = [(0 if k == "h" else 1, i) for k, i in word]
        arr = list(keys)
        swaps = 0
        for i in range(len(arr)):
            for j in range(len(arr) - 1):
                if arr[j] > arr[j + 1]:
                    arr[j], arr[j + 1] = arr[j + 1], arr[j]
                    swaps += 1
        if len(set(keys)) != len(keys):
            assert sign == 0 and mono is None
        else:
            assert sign == (-1) ** swaps


_PRESENTATION_POOL = None


def _presentations():
    global _PRESENTATION_POOL
    if _PRESENTATION_POOL is None:
        _PRESENTATION_POOL = [
            catalog.get("nakamura-iv-3"),
            catalog.get("nakamura-iv-6"),
            catalog.get("nakamura-v-10"),
            catalog.get("eta-beta-5"),
            catalog.get("nakamura-v-17"),
            catalog.fps6(A=GaussRational(1, 1), B=GaussRational(0, 2),
                         C=GaussRational(1), D=GaussRational(2, -1),
                         E=GaussRational(1, -1)),
            catalog.ft8(a1=1, a3=GaussRational(1, 1), a8=GaussRational(0, -1),
                        a12=GaussRational(2)),
            catalog.st10(a1=GaussRational(1, 1), b4=1, c4=GaussRational(0, 1),
                         d4=GaussRational(1, -1)),
        ]
    return _PRESENTATION_POOL


def d_splits_as_del_plus_delbar(cases: int = 1000, seed: int = 105):
    rnd = random.Random(seed)
    pool = _presentations()
    for _ in range(cases):
        pres = rnd.choice(pool)
        f = random_form(rnd, pres.n)
        lhs = pres.d(f)
        rhs = pres.del_(f) + pres.delbar(f)
        assert lhs.equals(rhs)


def dolbeault_squares_vanish(cases: int = 1000, seed: int = 106):
    rnd = random.Random(seed)
    pool = _presentations()
    for _ in range(cases):
        pres = rnd.choice(pool)
        f = random_form(rnd, pres.n)
        assert pres.del_(pres.del_(f)).is_zero()
        assert pres.delbar(pres.delbar(f)).is_zero()
        anti = pres.del_(pres.delbar(f)) + pres.delbar(pres.del_(f))
        assert anti.is_zero()


def differential_commutes_with_conjugation(cases: int = 1000, seed: int = 107):
    rnd = random.Random(seed)
    pool = _presentations()
    for _ in range(cases):
        pres = rnd.choice(pool)
        f = random_form(rnd, pres.n)
        assert pres.d(f.conjugate()).equals(pres.d(f).conjugate())


def pairing_is_real(cases: int = 1000, seed: int = 108):
    rnd = random.Random(seed)
    done = 0
    while done < cases:
        n = rnd.randint(2, 4)
        p = rnd.randint(1, n)
        half = random_form(rnd, n, terms=2, p=p, q=p)
        psi = half + half.conjugate()
        if psi.is_zero():
            continue
        factors = [
            tuple(random_scalar(rnd) for _ in range(n)) for _ in range(n - p)
        ]
        beta = SimpleForm.make(factors, n)
        value = pairing(psi, beta)
        assert value.im == 0
        done += 1


def bott_chern_torus_dimensions():
    from geowb.existence import bott_chern_dimensions

    for n in (1, 2, 3):
        z = InvariantForm.zero(n)
        torus = StructurePresentation(n, [z] * n, name=f"torus-{n}")
        table = bott_chern_dimensions(torus)
        for p in range(n + 1):
            for q in range(n + 1):
                assert table[(p, q)] == math.comb(n, p) * math.comb(n, q)


def backends_agree(cases: int = 1000, seed: int = 109):
    rnd = random.Random(seed)
    for _ in range(cases):
        n = rnd.randint(2, 4)
        f = random_form(rnd, n)
        g = random_form(rnd, n)
        p = rnd.randint(0, n)
        q = rnd.randint(0, n)
        exact = wedge(f, g) + f.conjugate() - g.project(p, q)
        floating = (
            wedge(f.to_float(), g.to_float())
            + f.to_float().conjugate()
            - g.to_float().project(p, q)
        )
        assert exact.to_float().equals(floating, tol=1e-9)


ALL_SUITES = (
    wedge_anticommutativity,
    conjugation_morphism,
    bidegree_partition,
    normalize_matches_bubble_parity,
    d_splits_as_del_plus_delbar,
    dolbeault_squares_vanish,
    differential_commutes_with_conjugation,
    pairing_is_real,
    bott_chern_torus_dimensions,
    backends_agree,
)

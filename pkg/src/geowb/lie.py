"""Complex Lie-algebra presentations and the operators d, del, delbar.

A presentation is the dual picture of a Lie algebra: the rank n and the
values ``d phi^1, ..., d phi^n`` as invariant 2-forms.  The differential
extends to all invariant forms by the graded Leibniz rule, with
``d phibar^i = conjugate(d phi^i)``.  ``d*d = 0`` on the generators is
equivalent to the Jacobi identity and suffices for ``d*d = 0`` everywhere
(again by Leibniz); ``validate`` checks exactly that.

A presentation is *integrable* (the complex structure it encodes has
vanishing Nijenhuis tensor) when no ``d phi^i`` has a (0,2) component.
On integrable presentations d splits as del + delbar by bidegree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import scalars
from .forms import InvariantForm, Monomial, wedge
from .scalars import EXACT, FLOAT


class StructurePresentation:
    """Rank n plus the differentials of the coframe generators.

    Treat instances as immutable after construction; the differential
    caches are internal memoisation only.
    """

    def __init__(self, n: int, dphi, name: str = "", backend: str = EXACT):
        dphi = tuple(dphi)
        if len(dphi) != n:
            raise ValueError(f"expected {n} generator differentials, got {len(dphi)}")
        for i, f in enumerate(dphi, start=1):
            if not isinstance(f, InvariantForm):
                raise TypeError(f"d phi^{i} must be an InvariantForm")
            if f.n != n:
                raise ValueError(f"d phi^{i} has rank {f.n}, expected {n}")
            if f.backend != backend:
                raise ValueError(f"d phi^{i} backend {f.backend} != {backend}")
            if f.terms and f.degree() != 2:
                raise ValueError(f"d phi^{i} must be homogeneous of degree 2")
        self.n = n
        self.dphi = dphi
        self.name = name
        self.backend = backend
        self._dmono_cache: dict[Monomial, InvariantForm] = {}
        self._dgen_bar = tuple(f.conjugate() for f in dphi)

    def __repr__(self):
        label = self.name or f"rank-{self.n}"
        return f"StructurePresentation({label}, backend={self.backend})"

    # ---- the differential ----------------------------------------------

    def d_generator(self, index: int, conjugated: bool = False) -> InvariantForm:
        if not 1 <= index <= self.n:
            raise ValueError(f"generator index {index} out of range 1..{self.n}")
        return self._dgen_bar[index - 1] if conjugated else self.dphi[index - 1]

    def d_monomial(self, mono: Monomial) -> InvariantForm:
        cached = self._dmono_cache.get(mono)
        if cached is not None:
            return cached
        word = [("h", i) for i in mono.holo_indices] + [
            ("a", j) for j in mono.anti_indices
        ]
        total = InvariantForm.zero(self.n, self.backend)
        for t, (kind, index) in enumerate(word):
            dg = self.d_generator(index, conjugated=(kind == "a"))
            if dg.is_zero():
                continue
            prefix = Monomial.make(
                [i for k, i in word[:t] if k == "h"],
                [i for k, i in word[:t] if k == "a"],
                self.n,
            )
            suffix = Monomial.make(
                [i for k, i in word[t + 1 :] if k == "h"],
                [i for k, i in word[t + 1 :] if k == "a"],
                self.n,
            )
            piece = wedge(
                wedge(InvariantForm(self.n, {prefix: 1}, self.backend), dg),
                InvariantForm(self.n, {suffix: 1}, self.backend),
            )
            total = total + (piece if t % 2 == 0 else -piece)
        self._dmono_cache[mono] = total
        return total

    def d(self, f: InvariantForm) -> InvariantForm:
        if f.n != self.n:
            raise ValueError(f"rank mismatch: form has {f.n}, presentation has {self.n}")
        if f.backend != self.backend:
            raise ValueError(
                f"backend mismatch: form {f.backend}, presentation {self.backend}"
            )
        total = InvariantForm.zero(self.n, self.backend)
        for mono, coeff in f.terms.items():
            total = total + self.d_monomial(mono).scale(coeff)
        return total

    # ---- Dolbeault operators ---------------------------------------------

    def is_integrable(self) -> bool:
        return all(
            f.project(0, 2).is_zero() for f in self.dphi
        )

    def _require_integrable(self):
        if not self.is_integrable():
            raise ValueError(
                "presentation is not integrable: some d phi^i has a (0,2) part"
            )

    def del_(self, f: InvariantForm) -> InvariantForm:
        """The (p+1, q) part of d on each (p, q) component."""
        self._require_integrable()
        total = InvariantForm.zero(self.n, self.backend)
        for (p, q), comp in f.components().items():
            if p + 1 <= self.n:
                total = total + self.d(comp).project(p + 1, q)
        return total

    def delbar(self, f: InvariantForm) -> InvariantForm:
        """The (p, q+1) part of d on each (p, q) component."""
        self._require_integrable()
        total = InvariantForm.zero(self.n, self.backend)
        for (p, q), comp in f.components().items():
            if q + 1 <= self.n:
                total = total + self.d(comp).project(p, q + 1)
        return total

    def del_delbar(self, f: InvariantForm) -> InvariantForm:
        return self.del_(self.delbar(f))

    # ---- validation -------------------------------------------------------

    def validate(self, tol: float | None = None, exhaustive: bool = False):
        residuals = {}
        ok = True
        for i in range(1, self.n + 1):
            r = self.d(self.dphi[i - 1])
            residuals[i] = r
            if not r.is_zero(tol):
                ok = False
        integrable = self.is_integrable()
        warnings = []
        if ok and not is_J_nilpotent(self):
            warnings.append(
                "coframe is not nilpotently ordered: some d phi^i involves "
                "generators with index >= i"
            )
        if exhaustive and ok:
            for mono in _all_monomials(self.n):
                r = self.d(self.d_monomial(mono))
                if not r.is_zero(tol):
                    ok = False
                    warnings.append(f"d(d {mono}) != 0 (Leibniz extension is broken)")
                    break
        return ValidationReport(
            name=self.name,
            ok=ok,
            integrable=integrable,
            residuals=residuals,
            warnings=warnings,
            exhaustive=exhaustive,
        )


def _all_monomials(n: int):
    for holo in range(1 << n):
        for anti in range(1 << n):
            yield Monomial(holo, anti)


@dataclass
class ValidationReport:
    """Outcome of the generator-level d*d = 0 check.

    The generator check is sufficient for d*d = 0 on every invariant form,
    because d extends by the graded Leibniz rule; ``exhaustive=True`` runs
    the monomial-by-monomial check as well (a guard on the Leibniz
    implementation itself, not on the presentation).
    """

    name: str
    ok: bool
    integrable: bool
    residuals: dict[int, InvariantForm]
    warnings: list[str] = field(default_factory=list)
    exhaustive: bool = False

    note = (
        "d*d = 0 verified on generators; by the graded Leibniz rule this "
        "extends to every invariant form"
    )

    def __bool__(self):
        return self.ok

    def residual_summary(self) -> dict[int, str]:
        return {i: str(r) for i, r in self.residuals.items() if not r.is_zero()}

    def max_residual(self) -> float:
        worst = 0.0
        for r in self.residuals.values():
            for c in r.terms.values():
                worst = max(worst, abs(complex(c)))
        return worst

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "integrable": self.integrable,
            "residuals": {str(i): s for i, s in self.residual_summary().items()},
            "max_residual": self.max_residual(),
            "warnings": list(self.warnings),
            "exhaustive": self.exhaustive,
            "note": self.note,
        }


def is_J_nilpotent(pres: StructurePresentation, search_permutations: bool = False) -> bool:
    """Whether each d phi^i uses only generators of index < i.

    With ``search_permutations`` the check is repeated over all coframe
    reorderings (bounded to n <= 6).
    """
    if _nilpotent_in_order(pres, tuple(range(1, pres.n + 1))):
        return True
    if not search_permutations:
        return False
    if pres.n > 6:
        raise ValueError("permutation search is limited to n <= 6")
    for perm in itertools.permutations(range(1, pres.n + 1)):
        if _nilpotent_in_order(pres, perm):
            return True
    return False


def _nilpotent_in_order(pres: StructurePresentation, order: tuple[int, ...]) -> bool:
    # position[i] = place of original generator i in the new coframe order
    position = {gen: place for place, gen in enumerate(order, start=1)}
    for gen in range(1, pres.n + 1):
        allowed = 0
        for other in range(1, pres.n + 1):
            if position[other] < position[gen]:
                allowed |= 1 << (other - 1)
        for mono in pres.dphi[gen - 1].terms:
            if (mono.holo | mono.anti) & ~allowed:
                return False
    return True


# ---- real presentations -------------------------------------------------


def complexify_real_presentation(
    de,
    pairing,
    name: str = "",
    backend: str = EXACT,
) -> StructurePresentation:
    """Convert real structure equations to a complex presentation.

    ``de`` lists, for each real generator ``e^1 .. e^{2n}``, the value
    ``d e^a`` as a list of ``(i, j, coeff)`` triples meaning
    ``coeff * e^i ^ e^j`` (i < j).  ``pairing`` is a perfect matching of
    the 2n real generators into n pairs ``(a, b)`` with
    ``phi^j = e^a + i e^b``; the inverse substitution is
    ``e^a = (phi^j + phibar^j)/2`` and ``e^b = (phi^j - phibar^j)/(2i)``.
    """
    m = len(de)
    if m % 2 != 0:
        raise ValueError("need an even number of real generators")
    n = m // 2
    if len(pairing) != n:
        raise ValueError(f"pairing must have {n} pairs, got {len(pairing)}")
    used = set()
    for a, b in pairing:
        for x in (a, b):
            if not 1 <= x <= m or x in used:
                raise ValueError("pairing is not a perfect matching of 1..2n")
            used.add(x)

    half = Fraction(1, 2)
    if backend == EXACT:
        plus_half = scalars.GaussRational(half)
        i_half = scalars.GaussRational(0, half)
    else:
        plus_half = 0.5 + 0j
        i_half = 0.5j

    # e^a = (phi^j + phibar^j)/2 ; e^b = (phi^j - phibar^j)/(2i)
    real_one_forms: dict[int, InvariantForm] = {}
    for j, (a, b) in enumerate(pairing, start=1):
        phi = InvariantForm.generator(n, j, backend)
        phibar = InvariantForm.generator(n, j, backend, conjugated=True)
        real_one_forms[a] = (phi + phibar).scale(plus_half)
        real_one_forms[b] = (phi - phibar).scale(-i_half)

    def real_two_form(entries) -> InvariantForm:
        total = InvariantForm.zero(n, backend)
        for i, j, coeff in entries:
            if not (1 <= i <= m and 1 <= j <= m) or i == j:
                raise ValueError(f"bad real generator pair ({i},{j})")
            term = wedge(real_one_forms[i], real_one_forms[j]).scale(
                scalars.to_scalar(coeff, backend)
            )
            total = total + term
        return total

    dphi = []
    for a, b in pairing:
        # d phi^j = d e^a + i d e^b
        da = real_two_form(de[a - 1])
        db = real_two_form(de[b - 1])
        i_unit = scalars.i_power(1, backend)
        dphi.append(da + db.scale(i_unit))
    return StructurePresentation(n, dphi, name=name, backend=backend)


# ---- serialization --------------------------------------------------------


def presentation_to_json(pres: StructurePresentation) -> dict:
    from .forms import form_to_json

    return {
        "name": pres.name,
        "n": pres.n,
        "backend": pres.backend,
        "dphi": [form_to_json(f) for f in pres.dphi],
    }


def presentation_from_json(obj: dict) -> StructurePresentation:
    from .forms import form_from_json

    if "de" in obj:
        backend = obj.get("backend", EXACT)
        de = []
        for entries in obj["de"]:
            cooked = []
            for e in entries:
                coeff = e["coeff"]
                if backend == EXACT and isinstance(coeff, str):
                    coeff = Fraction(coeff)
                cooked.append((int(e["i"]), int(e["j"]), coeff))
            de.append(cooked)
        pairing = [tuple(p) for p in obj["pairing"]]
        return complexify_real_presentation(
            de, pairing, name=obj.get("name", ""), backend=backend
        )
    n = int(obj["n"])
    backend = obj.get("backend", EXACT)
    dphi = [form_from_json(f) for f in obj["dphi"]]
    return StructurePresentation(n, dphi, name=obj.get("name", ""), backend=backend)

"""Existence conditions, obstruction certificates and invariant cohomology.

Three closure problems recur for the built-in nilpotent families: an
ansatz ``Psi = lambda + fixed + conjugate(lambda)`` with ``fixed`` a real
(p, p)-form (typically omega^p of a positive-definite metric) and
``lambda`` a combination of off-diagonal monomials with free complex
coefficients.  ``closure_system`` solves ``d Psi = 0`` exactly as a real
linear system in the free coefficients; the families' scalar conditions
(``fps_psymplectic_condition`` and friends) are literal transcriptions of
the closed-form answer and are cross-checked against the solver in the
test suite -- disagreement between formula and solver is a hard failure.

Obstruction certificates: if an invariant form beta of total degree
2n - 2p - 1 satisfies ``d beta = sum_i c_i psi^i ^ conj(psi^i)`` with the
psi^i simple (n-p, 0)-forms and the c_i real, nonzero and of one sign,
there is no p-symplectic structure (pairing the equation against the
transverse component of a closed form gives a positive integral of an
exact form).  The ``delbar-del`` variant with beta of degree 2n - 2p - 2
and the (n-p, n-p) part of del delbar beta excludes p-pluriclosed
structures.  ``verify_obstruction_certificate`` re-computes the left-hand
side exactly and checks the decomposition.

On a presentation with purely (2,0) structure equations (a complex-
parallelizable quotient), existence of a p-structure of any of the three
kinds is equivalent to the absence of a nonzero exact simple holomorphic
(n-p, 0)-form; ``exact_simple_holomorphic_search`` decides this where the
linear algebra is exact (q = 1, 2, n-1, n; q = 2 through the Pluecker
quadric on a pencil) and verifies user certificates elsewhere.

All cohomological statements here are invariant-level only and the
reports say so: they concern the finite complex of invariant forms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import catalog as _catalog
from . import linalg, scalars
from .forms import InvariantForm, Monomial, bidegree_basis, wedge
from .lie import StructurePresentation
from .metrics import HermitianMetric, form_power, fundamental_form
from .positivity import SimpleForm, is_decomposable
from .scalars import EXACT, FLOAT, GaussRational


def _gr(x) -> GaussRational:
    if isinstance(x, GaussRational):
        return x
    return GaussRational(x)


def _conj(x):
    return scalars.conj(x)


def _abs2(x):
    if isinstance(x, GaussRational):
        return x.abs2()
    return (x * x.conjugate()).real if isinstance(x, complex) else x * x


def _re(x):
    return scalars.real_part(x)


# ---------------------------------------------------------------------------
# closure systems
# ---------------------------------------------------------------------------


@dataclass
class AnsatzSolution:
    """Affine description of the closedness system d Psi = 0.

    Psi(c) = fixed + sum_i c_i mu_i + conjugate(sum_i c_i mu_i) with the
    mu_i the ansatz monomials.  ``particular`` is one coefficient vector
    solving the system (None when inconsistent) and ``kernel`` spans the
    homogeneous solutions over the reals (conjugations make the system
    real-linear, not complex-linear).
    """

    pres: StructurePresentation
    p: int
    fixed: InvariantForm
    basis: tuple[Monomial, ...]
    names: tuple[str, ...]
    particular: tuple | None
    kernel: tuple[tuple, ...]

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    def psi(self, coefficients) -> InvariantForm:
        if len(coefficients) != len(self.basis):
            raise ValueError("coefficient count does not match the ansatz basis")
        lam = InvariantForm.zero(self.fixed.n, self.fixed.backend)
        for mono, c in zip(self.basis, coefficients):
            lam = lam + InvariantForm(self.fixed.n, {mono: c}, self.fixed.backend)
        return lam + self.fixed + lam.conjugate()

    def closure_residual(self, coefficients) -> InvariantForm:
        return self.pres.d(self.psi(coefficients))

    def is_member(self, coefficients, tol: float | None = None) -> bool:
        return self.closure_residual(coefficients).is_zero(tol)

    def sample_member(self):
        return None if self.particular is None else list(self.particular)

    def to_json(self) -> dict:
        def vec(v):
            return [scalars.scalar_to_json(x) for x in v]

        return {
            "p": self.p,
            "consistent": self.consistent,
            "ansatz": [str(m) for m in self.basis],
            "names": list(self.names),
            "particular": None if self.particular is None else vec(self.particular),
            "kernel": [vec(v) for v in self.kernel],
            "note": "invariant-level closure system",
        }


def closure_system(
    pres: StructurePresentation,
    p: int,
    fixed: InvariantForm,
    ansatz_basis,
    names=None,
) -> AnsatzSolution:
    """Solve d(lambda + fixed + conj(lambda)) = 0 for the lambda coefficients.

    ``ansatz_basis`` lists the monomials of lambda; the typical choice is
    the (p+1, p-1) block but any monomials of total degree 2p are accepted
    (a (p, p) off-diagonal ansatz is occasionally useful).
    """
    n = pres.n
    basis = tuple(ansatz_basis)
    if fixed.n != n or fixed.backend != pres.backend:
        raise ValueError("fixed block must match the presentation's rank/backend")
    if fixed.terms and fixed.bidegree() != (p, p):
        raise ValueError(f"fixed block must be a ({p},{p})-form")
    if not fixed.is_real():
        raise ValueError("fixed block must be real")
    for mono in basis:
        if mono.degree() != 2 * p:
            raise ValueError(f"ansatz monomial {mono} has degree != {2 * p}")
        if (mono.holo | mono.anti) >> n:
            raise ValueError(f"ansatz monomial {mono} exceeds rank {n}")
    if names is None:
        names = tuple(f"c{i + 1}" for i in range(len(basis)))
    else:
        names = tuple(names)

    backend = pres.backend
    d_fixed = pres.d(fixed)
    d_mu = [pres.d(InvariantForm(n, {m: 1}, backend)) for m in basis]
    d_mu_bar = [
        pres.d(InvariantForm(n, {m: 1}, backend).conjugate()) for m in basis
    ]

    support: set[Monomial] = set(d_fixed.terms)
    for f in itertools.chain(d_mu, d_mu_bar):
        support.update(f.terms)
    targets = sorted(support, key=lambda m: (m.holo, m.anti))
    m_count = len(basis)

    if backend == EXACT:
        rows: list[list[Fraction]] = []
        rhs: list[Fraction] = []
        for mono in targets:
            k = _gr(d_fixed.coeff(mono))
            row_re: list[Fraction] = []
            row_im: list[Fraction] = []
            for i in range(m_count):
                a = _gr(d_mu[i].coeff(mono))
                b = _gr(d_mu_bar[i].coeff(mono))
                # coefficient of x_i is a + b, of y_i is i(a - b)
                cx = a + b
                cy = GaussRational(0, 1) * (a - b)
                row_re.extend([cx.re, cy.re])
                row_im.extend([cx.im, cy.im])
            rows.append(row_re)
            rhs.append(-k.re)
            rows.append(row_im)
            rhs.append(-k.im)
        particular_raw = linalg.solve(rows, rhs) if rows else []
        kernel_raw = linalg.nullspace(rows) if rows else []
        if not rows:
            # no constraints at all: the whole coefficient space solves
            particular_raw = [Fraction(0)] * (2 * m_count)
            kernel_raw = [
                [Fraction(1 if j == i else 0) for j in range(2 * m_count)]
                for i in range(2 * m_count)
            ]
        if particular_raw is None:
            return AnsatzSolution(pres, p, fixed, basis, names, None, ())
        particular = tuple(
            GaussRational(particular_raw[2 * i], particular_raw[2 * i + 1])
            for i in range(m_count)
        )
        kernel = tuple(
            tuple(GaussRational(v[2 * i], v[2 * i + 1]) for i in range(m_count))
            for v in kernel_raw
        )
        return AnsatzSolution(pres, p, fixed, basis, names, particular, kernel)

    # float path: least squares + svd kernel
    a_rows = []
    b_vals = []
    for mono in targets:
        k = complex(d_fixed.coeff(mono))
        row_re = []
        row_im = []
        for i in range(m_count):
            a = complex(d_mu[i].coeff(mono))
            b = complex(d_mu_bar[i].coeff(mono))
            cx = a + b
            cy = 1j * (a - b)
            row_re.extend([cx.real, cy.real])
            row_im.extend([cx.imag, cy.imag])
        a_rows.extend([row_re, row_im])
        b_vals.extend([-k.real, -k.imag])
    if not a_rows:
        particular = tuple(0j for _ in range(m_count))
        kernel = tuple(
            tuple(1 + 0j if j == i else 0j for j in range(m_count))
            for i in range(m_count)
        ) + tuple(
            tuple(1j if j == i else 0j for j in range(m_count))
            for i in range(m_count)
        )
        return AnsatzSolution(pres, p, fixed, basis, names, particular, kernel)
    amat = np.array(a_rows, dtype=float)
    bvec = np.array(b_vals, dtype=float)
    sol, *_ = np.linalg.lstsq(amat, bvec, rcond=None)
    residual = float(np.linalg.norm(amat @ sol - bvec))
    if residual > 1e-8:
        return AnsatzSolution(pres, p, fixed, basis, names, None, ())
    particular = tuple(complex(sol[2 * i], sol[2 * i + 1]) for i in range(m_count))
    _, s, vt = np.linalg.svd(amat)
    rank = int(np.sum(s > 1e-10 * (s[0] if len(s) else 1.0)))
    kernel_vectors = vt[rank:]
    kernel = tuple(
        tuple(complex(v[2 * i], v[2 * i + 1]) for i in range(m_count))
        for v in kernel_vectors
    )
    return AnsatzSolution(pres, p, fixed, basis, names, particular, kernel)


# ---------------------------------------------------------------------------
# family ansatz blocks and scalar conditions
# ---------------------------------------------------------------------------


def fps_ansatz_basis() -> tuple[tuple[Monomial, ...], tuple[str, ...]]:
    """(3,1) block L a^{123 1b} + M a^{123 2b} + N a^{123 3b} on rank 3."""
    basis = tuple(Monomial.make([1, 2, 3], [j], 3) for j in (1, 2, 3))
    return basis, ("L", "M", "N")


def ft8_ansatz_basis() -> tuple[tuple[Monomial, ...], tuple[str, ...]]:
    """(4,2) block on rank 4 with the letters L1 L2 L3 M1 M2 N."""
    pairs = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    basis = tuple(Monomial.make([1, 2, 3, 4], list(jk), 4) for jk in pairs)
    return basis, ("L1", "L2", "L3", "M1", "M2", "N")


def st10_ansatz_basis() -> tuple[tuple[Monomial, ...], tuple[str, ...]]:
    """(5,3) block on rank 5 with the letters L1..P."""
    triples = list(itertools.combinations(range(1, 6), 3))
    basis = tuple(Monomial.make([1, 2, 3, 4, 5], list(t), 5) for t in triples)
    names = ("L1", "L2", "L3", "M1", "M2", "N1", "S1", "S2", "S3", "P")
    return basis, names


def fps_psymplectic_condition(
    A, B, C, D, E, N=0, r2=1, s2=1, t2=1, u=0, v=0, w=0
):
    """Closedness scalar for the rank-3 family ansatz.

    Vanishes iff Psi = lambda + omega^2 + conj(lambda) is closed, where
    omega has the letters (r2, s2, t2, u, v, w) and lambda carries the
    free coefficient N (L and M never enter).  The summand i*t2*conj(u*A)
    is read with the conjugation over the whole product u*A; the direct
    d Psi computation in the tests pins this reading.
    """
    A, B, C, D, E, N = map(_gr, (A, B, C, D, E, N))
    u, v, w = map(_gr, (u, v, w))
    r2, s2, t2 = map(_gr, (r2, s2, t2))
    i = GaussRational(0, 1)
    half = GaussRational(Fraction(1, 2))
    bracket = (
        -r2 * t2 * _conj(B)
        + s2 * t2 * _conj(C)
        + GaussRational(v.abs2()) * _conj(B)
        - GaussRational(w.abs2()) * _conj(C)
        + i * t2 * u * _conj(D)
        + i * t2 * _conj(u * A)
        + v * _conj(w * D)
        - _conj(v) * w * _conj(A)
    )
    return -N * _conj(E) + half * bracket


def fps_skt_2symplectic_system(A, B, C, D, E, N) -> bool:
    """Diagonal-metric system: SKT identity plus the closedness scalar."""
    A, B, C, D, E, N = map(_gr, (A, B, C, D, E, N))
    skt = A.abs2() + D.abs2() + E.abs2() + 2 * (_conj(B) * C).re
    half = GaussRational(Fraction(1, 2))
    closed = half * (_conj(C) - _conj(B)) - N * _conj(E)
    return skt == 0 and not closed


@dataclass
class CircleLocus:
    """The diagonal-metric solution circle in the (x, y) = (Re B, Im B) plane
    for fixed C = u + iv and a = |N|^2 > 0:

        x^2 + y^2 + (4a - 2) x u + (4a - 2) y v + u^2 + v^2 = 0.
    """

    exists: bool
    center: tuple[Fraction, Fraction]
    radius2: Fraction

    def to_json(self) -> dict:
        return {
            "exists": self.exists,
            "center": [str(self.center[0]), str(self.center[1])],
            "radius2": str(self.radius2),
        }


def fps_solution_circle(aN, u, v) -> CircleLocus:
    """Circle data for the locus above; a circle exists iff
    16 (u^2 + v^2)(aN^2 - aN) > 0, i.e. aN > 1 with (u, v) != 0."""
    a = Fraction(aN)
    if a <= 0:
        raise ValueError("aN = |N|^2 must be positive")
    u = Fraction(u)
    v = Fraction(v)
    shift = 2 * a - 1
    center = (-shift * u, -shift * v)
    radius2 = (shift * shift - 1) * (u * u + v * v)
    exists = 16 * (u * u + v * v) * (a * a - a) > 0
    return CircleLocus(exists=exists, center=center, radius2=radius2)


def ft8_3symplectic_condition(a, L3=0, M2=0, N=0):
    """Closedness scalar for the rank-4 family:
    (3/4) i (a3 + a8 + a12) - conj(L3) a6 + conj(M2) a2 - conj(N) a1."""
    a = [_gr(x) for x in a]
    if len(a) != 12:
        raise ValueError("expected 12 structure coefficients")
    a1, a2, a3, a4, a5, a6, a7, a8, a9, a10, a11, a12 = a
    L3, M2, N = map(_gr, (L3, M2, N))
    coeff = GaussRational(Fraction(3, 4)) * GaussRational(0, 1)
    return (
        coeff * (a3 + a8 + a12)
        - _conj(L3) * a6
        + _conj(M2) * a2
        - _conj(N) * a1
    )


def ft8_combined_system(a, M2) -> bool:
    """Astheno identity with a8 = 0, the vanishing pattern, and the
    closedness scalar reduced to (3/4) i (a3 + a12) + conj(M2) a2 = 0."""
    a = [_gr(x) for x in a]
    if len(a) != 12:
        raise ValueError("expected 12 structure coefficients")
    a1, a2, a3, a4, a5, a6, a7, a8, a9, a10, a11, a12 = a
    M2 = _gr(M2)
    if not (a8 == 0 and a1 == 0 and a4 == 0 and a6 == 0 and a7 == 0 and a9 == 0 and a11 == 0):
        return False
    astheno = a2.abs2() + a5.abs2() + a10.abs2() == 2 * (a3 * _conj(a12)).re
    closed = (
        GaussRational(Fraction(3, 4)) * GaussRational(0, 1) * (a3 + a12)
        + _conj(M2) * a2
    )
    return astheno and not closed


def ft8_ddbar_omega2(a) -> InvariantForm:
    """del delbar omega^2 for the diagonal metric on the rank-4 family.

    Zero exactly when the astheno identity holds; a nonzero value is a
    single sign-definite multiple of eta^{123 123b}, which feeds the
    pluriclosed obstruction certificate.
    """
    pres = _catalog.ft8(*a)
    omega = fundamental_form(HermitianMetric.identity(4))
    return pres.del_delbar(form_power(omega, 2))


def st10_4symplectic_condition(a, b, c, d, L3=0, M2=0, N1=0, S2=0, S3=0, P=0):
    """Closedness scalar for the rank-5 family:
    (3/2)(d4+c4+b4+a4) - conj(L3) c1 + conj(M2) b2 - conj(N1) b1
    - conj(S2) a3 + conj(S3) a2 - conj(P) a1."""
    a = [_gr(x) for x in a]
    b = [_gr(x) for x in b]
    c = [_gr(x) for x in c]
    d = [_gr(x) for x in d]
    if (len(a), len(b), len(c), len(d)) != (7, 6, 5, 4):
        raise ValueError("expected letter counts (7, 6, 5, 4)")
    L3, M2, N1, S2, S3, P = map(_gr, (L3, M2, N1, S2, S3, P))
    threehalf = GaussRational(Fraction(3, 2))
    return (
        threehalf * (d[3] + c[3] + b[3] + a[3])
        - _conj(L3) * c[0]
        + _conj(M2) * b[1]
        - _conj(N1) * b[0]
        - _conj(S2) * a[2]
        + _conj(S3) * a[1]
        - _conj(P) * a[0]
    )


def st10_combined_system(a, b, c, d, L3=0, P=0) -> bool:
    """The five-line diagonal-metric system on the reduced parameter set
    (a2 = a3 = a5 = a6 = a7 = b1 = b2 = b3 = b5 = b6 = c2 = c3 = c5 =
    d1 = d2 = d3 = 0): astheno identity split into two real lines, two
    orthogonality lines, and the closedness scalar."""
    a = [_gr(x) for x in a]
    b = [_gr(x) for x in b]
    c = [_gr(x) for x in c]
    d = [_gr(x) for x in d]
    if (len(a), len(b), len(c), len(d)) != (7, 6, 5, 4):
        raise ValueError("expected letter counts (7, 6, 5, 4)")
    L3, P = map(_gr, (L3, P))
    pattern = (
        a[1] == 0 and a[2] == 0 and a[4] == 0 and a[5] == 0 and a[6] == 0
        and b[0] == 0 and b[1] == 0 and b[2] == 0 and b[4] == 0 and b[5] == 0
        and c[1] == 0 and c[2] == 0 and c[4] == 0
        and d[0] == 0 and d[1] == 0 and d[2] == 0
    )
    if not pattern:
        return False
    a1, a4, b4, c1, c4, d4 = a[0], a[3], b[3], c[0], c[3], d[3]
    line1 = 2 * (d4 * _conj(a4) + d4 * _conj(b4) + d4 * _conj(c4)).re == c1.abs2()
    line2 = 2 * (c4 * _conj(a4) + c4 * _conj(b4) + b4 * _conj(a4)).re == a1.abs2()
    line3 = (c4 * _conj(b4) - d4 * _conj(a4)).re == 0
    line4 = (b4 * _conj(d4) - c4 * _conj(a4)).re == 0
    closed = (
        GaussRational(Fraction(3, 2)) * (a4 + b4 + c4 + d4)
        - c1 * _conj(L3)
        - a1 * _conj(P)
    )
    return line1 and line2 and line3 and line4 and not closed


# ---------------------------------------------------------------------------
# obstruction certificates
# ---------------------------------------------------------------------------


@dataclass
class ObstructionCertificate:
    """beta plus a same-sign decomposition of its differential.

    mode "d": deg beta = 2n-2p-1 and d beta = sum_i c_i psi^i ^ conj(psi^i)
    excludes p-symplectic structures.  mode "delbar-del": deg beta =
    2n-2p-2 and the (n-p, n-p) part of del delbar beta decomposes the same
    way, excluding p-pluriclosed structures.  The c_i must be real,
    nonzero and all of one sign; the psi^i simple of bidegree (n-p, 0).
    """

    p: int
    mode: str  # "d" | "delbar-del"
    beta: InvariantForm
    decomposition: tuple[tuple[object, SimpleForm], ...]

    def to_json(self) -> dict:
        from .forms import form_to_json

        return {
            "p": self.p,
            "mode": self.mode,
            "beta": form_to_json(self.beta),
            "decomposition": [
                {
                    "coefficient": scalars.scalar_to_json(
                        scalars.to_scalar(c, self.beta.backend)
                    ),
                    "factors": sf.to_json()["factors"],
                    "n": sf.n,
                }
                for c, sf in self.decomposition
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ObstructionCertificate":
        from .forms import form_from_json

        beta = form_from_json(obj["beta"])
        decomposition = []
        for item in obj["decomposition"]:
            coeff = scalars.scalar_from_json(item["coefficient"], beta.backend)
            sf = SimpleForm.from_json(
                {"n": item.get("n", beta.n), "factors": item["factors"]},
                beta.backend,
            )
            decomposition.append((coeff, sf))
        return cls(
            p=int(obj["p"]),
            mode=obj["mode"],
            beta=beta,
            decomposition=tuple(decomposition),
        )


@dataclass
class CertificateReport:
    valid: bool
    conclusion: str
    messages: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.valid

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "conclusion": self.conclusion,
            "messages": list(self.messages),
        }


def verify_obstruction_certificate(
    pres: StructurePresentation,
    cert: ObstructionCertificate,
    tol: float | None = None,
) -> CertificateReport:
    """Check a certificate exactly and state its invariant-level conclusion."""
    n = pres.n
    p = cert.p
    messages: list[str] = []
    if cert.mode not in ("d", "delbar-del"):
        return CertificateReport(False, "", [f"unknown mode {cert.mode!r}"])
    required = 2 * n - 2 * p - 1 if cert.mode == "d" else 2 * n - 2 * p - 2
    deg = cert.beta.degree()
    if deg != required:
        return CertificateReport(
            False,
            "",
            [f"beta must have total degree {required}, got {deg}"],
        )
    if cert.beta.n != n or cert.beta.backend != pres.backend:
        return CertificateReport(False, "", ["beta rank/backend mismatch"])

    signs = set()
    rhs = InvariantForm.zero(n, pres.backend)
    for coeff, sf in cert.decomposition:
        coeff = scalars.to_scalar(coeff, pres.backend)
        im = scalars.imag_part(coeff)
        re = scalars.real_part(coeff)
        if not scalars.is_zero(
            coeff - scalars.to_scalar(re, pres.backend)
            if pres.backend == EXACT
            else complex(im),
            tol,
        ):
            return CertificateReport(
                False, "", [f"coefficient {scalars.format_scalar(coeff)} is not real"]
            )
        if scalars.is_zero(coeff, tol):
            return CertificateReport(False, "", ["zero coefficient in decomposition"])
        signs.add(1 if re > 0 else -1)
        psi_form = sf.to_form(pres.backend)
        if psi_form.terms and psi_form.bidegree() != (n - p, 0):
            return CertificateReport(
                False,
                "",
                [f"decomposition factor has bidegree {psi_form.bidegree()}, "
                 f"expected ({n - p}, 0)"],
            )
        rhs = rhs + wedge(psi_form, psi_form.conjugate()).scale(coeff)
    if len(signs) > 1:
        return CertificateReport(False, "", ["decomposition coefficients mix signs"])

    if cert.mode == "d":
        lhs = pres.d(cert.beta)
        conclusion = (
            f"no {p}-symplectic structure exists at the invariant level"
        )
    else:
        lhs = pres.del_delbar(cert.beta).project(n - p, n - p)
        conclusion = (
            f"no {p}-pluriclosed structure exists at the invariant level"
        )

    if lhs.is_zero(tol):
        return CertificateReport(
            False, "", ["left-hand side vanishes; certificate carries no obstruction"]
        )
    if not lhs.equals(rhs, tol):
        diff = lhs - rhs
        mono = next(iter(diff.terms))
        return CertificateReport(
            False,
            "",
            [
                "decomposition mismatch; residual coefficient of "
                f"{mono} is {scalars.format_scalar(diff.terms[mono])}"
            ],
        )
    messages.append(
        f"decomposition verified with {len(cert.decomposition)} simple block(s), "
        f"uniform sign {'+' if 1 in signs else '-'}"
    )
    return CertificateReport(True, conclusion, messages)


def certificate_search(
    pres: StructurePresentation,
    p: int,
    mode: str = "d",
    budget: int = 200,
    tol: float | None = None,
) -> list[ObstructionCertificate]:
    """Bounded brute force over single-monomial beta with unit coefficients.

    Tries beta = s * (basis monomial) for s in {1, i}; a hit is a beta
    whose relevant differential is a same-sign combination of diagonal
    blocks phi^I ^ phibar^I.  Only a limited certificate shape, but it is
    the shape every catalogued obstruction takes.
    """
    n = pres.n
    required = 2 * n - 2 * p - 1 if mode == "d" else 2 * n - 2 * p - 2
    if required < 0:
        return []
    found: list[ObstructionCertificate] = []
    examined = 0
    unit_i = scalars.i_power(1, pres.backend)
    for bid_p in range(required + 1):
        bid_q = required - bid_p
        if bid_p > n or bid_q > n:
            continue
        for mono in bidegree_basis(n, bid_p, bid_q):
            for scale in (scalars.to_scalar(1, pres.backend), unit_i):
                if examined >= budget:
                    return found
                examined += 1
                beta = InvariantForm(n, {mono: scale}, pres.backend)
                cert = _diagonal_certificate(pres, p, mode, beta, tol)
                if cert is not None:
                    found.append(cert)
    return found


def _diagonal_certificate(pres, p, mode, beta, tol):
    n = pres.n
    if mode == "d":
        lhs = pres.d(beta)
    else:
        lhs = pres.del_delbar(beta).project(n - p, n - p)
    if lhs.is_zero(tol):
        return None
    signs = set()
    decomposition = []
    for mono, coeff in lhs.terms.items():
        if mono.holo != mono.anti:
            return None
        if mono.holo.bit_count() != n - p:
            return None
        re = scalars.real_part(coeff)
        im = scalars.imag_part(coeff)
        if not scalars.is_zero(
            GaussRational(0, im) if pres.backend == EXACT else complex(0, im), tol
        ):
            return None
        signs.add(1 if re > 0 else -1)
        sf = SimpleForm.coordinate(
            [i + 1 for i in range(n) if mono.holo & (1 << i)], n
        )
        decomposition.append((coeff, sf))
    if len(signs) != 1:
        return None
    cert = ObstructionCertificate(
        p=p, mode=mode, beta=beta, decomposition=tuple(decomposition)
    )
    report = verify_obstruction_certificate(pres, cert, tol)
    return cert if report.valid else None


# ---------------------------------------------------------------------------
# exact simple holomorphic forms (complex-parallelizable presentations)
# ---------------------------------------------------------------------------


@dataclass
class SimpleSearchVerdict:
    kind: str  # "no-obstruction" | "obstruction" | "undecided"
    reason: str
    dim_image: int
    xi: InvariantForm | None = None
    minimal_polynomial: str | None = None

    @property
    def obstructed(self) -> bool:
        return self.kind == "obstruction"

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "reason": self.reason,
            "dim_image": self.dim_image,
            "note": "invariant-level search",
        }
        if self.xi is not None:
            out["xi"] = str(self.xi)
        if self.minimal_polynomial is not None:
            out["minimal_polynomial"] = self.minimal_polynomial
        return out


def exact_simple_holomorphic_search(
    pres: StructurePresentation, q: int, xi: InvariantForm | None = None
) -> SimpleSearchVerdict:
    """Search d(Lambda^{q-1,0}) for a nonzero simple element.

    Requires a complex-parallelizable presentation (every d phi^i purely
    (2,0)), where d of a (q-1, 0)-form is again (q, 0) and every invariant
    (q, 0)-form is holomorphic, so the image V = d(Lambda^{q-1,0}) is
    exactly the space of exact holomorphic q-forms.  Existence of a simple
    element of V is decided exactly for q in {1, 2, n-1, n}; q = 2 with
    dim V = 2 goes through a gcd of binary quadrics (the Pluecker
    relation on a pencil); larger middle-degree cases verify a supplied
    certificate xi or stay undecided.
    """
    n = pres.n
    if not 1 <= q <= n:
        raise ValueError(f"q must lie in 1..{n}")
    for i, f in enumerate(pres.dphi, start=1):
        if f.terms and not f.project(2, 0).equals(f):
            raise ValueError(
                f"presentation is not complex-parallelizable: d phi^{i} "
                "has a component outside (2,0)"
            )

    images = []
    for mono in bidegree_basis(n, q - 1, 0):
        img = pres.d(InvariantForm(n, {mono: 1}, pres.backend))
        if not img.is_zero():
            images.append(img)
    basis_monos = bidegree_basis(n, q, 0)
    index = {m: i for i, m in enumerate(basis_monos)}
    columns = []
    for img in images:
        col = [_gr(0)] * len(basis_monos)
        for m, c in img.terms.items():
            col[index[m]] = _gr(c)
        columns.append(col)
    v_basis_vectors = linalg.column_space_basis(columns)
    dim_v = len(v_basis_vectors)

    def vec_to_form(vec) -> InvariantForm:
        return InvariantForm(
            n,
            {basis_monos[i]: c for i, c in enumerate(vec) if c},
            pres.backend,
        )

    v_forms = [vec_to_form(v) for v in v_basis_vectors]

    if xi is not None:
        return _verify_simple_certificate(pres, q, xi, v_basis_vectors, basis_monos, dim_v)

    if dim_v == 0:
        return SimpleSearchVerdict(
            "no-obstruction", "the image d(Lambda^{q-1,0}) is zero", 0
        )

    if q in (1, n - 1, n):
        # every nonzero form of degree 1, n-1 or n is simple
        return SimpleSearchVerdict(
            "obstruction",
            f"every nonzero ({q},0)-form is simple in rank {n}",
            dim_v,
            xi=v_forms[0],
        )

    if q == 2:
        if dim_v == 1:
            sq = wedge(v_forms[0], v_forms[0])
            if sq.is_zero():
                return SimpleSearchVerdict(
                    "obstruction", "the unique image line is simple", dim_v, xi=v_forms[0]
                )
            return SimpleSearchVerdict(
                "no-obstruction",
                "the unique image line fails xi ^ xi = 0",
                dim_v,
            )
        if dim_v == 2:
            return _pencil_search(pres, v_forms[0], v_forms[1], dim_v)
        # bounded search: basis elements, then all pencils
        for f in v_forms:
            if wedge(f, f).is_zero():
                return SimpleSearchVerdict(
                    "obstruction", "an image basis element is simple", dim_v, xi=f
                )
        for f1, f2 in itertools.combinations(v_forms, 2):
            verdict = _pencil_search(pres, f1, f2, dim_v)
            if verdict.kind == "obstruction":
                return verdict
        return SimpleSearchVerdict(
            "undecided",
            "dim V > 2: pencil search found nothing; supply a certificate xi",
            dim_v,
        )

    for f in v_forms:
        if is_decomposable(f):
            return SimpleSearchVerdict(
                "obstruction", "an image basis element is simple", dim_v, xi=f
            )
    return SimpleSearchVerdict(
        "undecided",
        f"degree q = {q} is only certificate-checked; supply xi",
        dim_v,
    )


def _verify_simple_certificate(pres, q, xi, v_basis_vectors, basis_monos, dim_v):
    n = pres.n
    if xi.is_zero():
        return SimpleSearchVerdict("undecided", "certificate xi is zero", dim_v)
    if xi.terms and xi.bidegree() != (q, 0):
        return SimpleSearchVerdict(
            "undecided", f"certificate must be a ({q},0)-form", dim_v
        )
    # exactness: xi = d(alpha) for some (q-1,0) alpha
    source = bidegree_basis(n, q - 1, 0)
    index = {m: i for i, m in enumerate(basis_monos)}
    matrix = [[_gr(0)] * len(source) for _ in basis_monos]
    for c_idx, mono in enumerate(source):
        img = pres.d(InvariantForm(n, {mono: 1}, pres.backend))
        for m, coeff in img.terms.items():
            matrix[index[m]][c_idx] = _gr(coeff)
    rhs = [_gr(0)] * len(basis_monos)
    for m, coeff in xi.terms.items():
        rhs[index[m]] = _gr(coeff)
    if linalg.solve(matrix, rhs) is None:
        return SimpleSearchVerdict(
            "undecided", "certificate xi is not d-exact", dim_v
        )
    if not is_decomposable(xi):
        return SimpleSearchVerdict(
            "undecided", "certificate xi is not simple", dim_v
        )
    return SimpleSearchVerdict(
        "obstruction", "certificate verified: xi is exact, simple, holomorphic",
        dim_v, xi=xi,
    )


def _pencil_search(pres, f1, f2, dim_v) -> SimpleSearchVerdict:
    """Simple elements of span{f1, f2} for (2,0)-forms, decided exactly.

    xi(x) = x f1 + f2 gives xi ^ xi = x^2 (f1^f1) + 2x (f1^f2) + (f2^f2);
    a simple element exists iff the coefficient quadratics share a root
    (or f1 itself is simple, the point at infinity)."""
    if wedge(f1, f1).is_zero():
        return SimpleSearchVerdict(
            "obstruction", "pencil endpoint is simple", dim_v, xi=f1
        )
    a_form = wedge(f1, f1)
    b_form = wedge(f1, f2).scale(2)
    c_form = wedge(f2, f2)
    monos = set(a_form.terms) | set(b_form.terms) | set(c_form.terms)
    polys = []
    for m in monos:
        poly = [_gr(c_form.coeff(m)), _gr(b_form.coeff(m)), _gr(a_form.coeff(m))]
        while poly and not poly[-1]:
            poly.pop()
        if poly:
            polys.append(poly)
    if not polys:
        return SimpleSearchVerdict(
            "obstruction", "every pencil element is simple", dim_v, xi=f2
        )
    g = polys[0]
    for p_next in polys[1:]:
        g = _poly_gcd(g, p_next)
        if len(g) == 1:
            break
    if len(g) == 1:
        return SimpleSearchVerdict(
            "no-obstruction",
            "the Pluecker quadratics on the pencil have no common root",
            dim_v,
        )
    if len(g) == 2:
        root = -g[0] / g[1]
        xi = f1.scale(root) + f2
        return SimpleSearchVerdict(
            "obstruction", "pencil has a rational simple element", dim_v, xi=xi
        )
    # degree-2 gcd: a common root exists in C but not necessarily in Q[i]
    c0, c1, c2 = g
    poly_str = (
        f"({scalars.format_scalar(c2)}) x^2 + ({scalars.format_scalar(c1)}) x "
        f"+ ({scalars.format_scalar(c0)})"
    )
    disc = complex(c1) * complex(c1) - 4 * complex(c2) * complex(c0)
    root = (-complex(c1) + np.sqrt(complex(disc))) / (2 * complex(c2))
    xi_float = f1.to_float().scale(root) + f2.to_float()
    return SimpleSearchVerdict(
        "obstruction",
        "pencil has a simple element with quadratic-irrational parameter "
        "(float witness, exact minimal polynomial recorded)",
        dim_v,
        xi=xi_float,
        minimal_polynomial=poly_str,
    )


def _poly_gcd(a, b):
    """Monic gcd over Q[i][x]; polynomials as low-to-high coefficient lists."""
    a = list(a)
    b = list(b)
    while b:
        a, b = b, _poly_mod(a, b)
    lead = a[-1]
    return [c / lead for c in a]


def _poly_mod(a, b):
    a = list(a)
    while len(a) >= len(b):
        if not a[-1]:
            a.pop()
            continue
        factor = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = a[shift + i] - factor * c
        a.pop()
    while a and not a[-1]:
        a.pop()
    return a


# ---------------------------------------------------------------------------
# invariant del-delbar lemma and Bott-Chern dimensions
# ---------------------------------------------------------------------------


def _operator_matrix(pres, op, source_basis, target_basis):
    index = {m: r for r, m in enumerate(target_basis)}
    if pres.backend == EXACT:
        matrix = [[_gr(0)] * len(source_basis) for _ in target_basis]
        for c, mono in enumerate(source_basis):
            image = op(InvariantForm(pres.n, {mono: 1}, EXACT))
            for m, coeff in image.terms.items():
                matrix[index[m]][c] = _gr(coeff)
        return matrix
    matrix = np.zeros((len(target_basis), len(source_basis)), dtype=complex)
    for c, mono in enumerate(source_basis):
        image = op(InvariantForm(pres.n, {mono: 1.0 + 0j}, FLOAT))
        for m, coeff in image.terms.items():
            matrix[index[m], c] = coeff
    return matrix


def _degree_basis(n, r):
    out = []
    for p in range(max(0, r - n), min(n, r) + 1):
        out.extend(bidegree_basis(n, p, r - p))
    return out


def _rank(pres, matrix) -> int:
    if pres.backend == EXACT:
        if not matrix or not matrix[0]:
            return 0
        return linalg.rank(matrix)
    if matrix.size == 0:
        return 0
    s = np.linalg.svd(matrix, compute_uv=False)
    if len(s) == 0:
        return 0
    return int(np.sum(s > 1e-10 * max(1.0, s[0])))


def _exact_image_in_bidegree(pres, p, q):
    """Basis (as coefficient vectors over the (p,q) monomials) of
    (im d) intersected with Lambda^{p,q}."""
    n = pres.n
    r = p + q
    if r == 0:
        return [], bidegree_basis(n, p, q)
    source = _degree_basis(n, r - 1)
    target = _degree_basis(n, r)
    pq_basis = bidegree_basis(n, p, q)
    pq_set = set(pq_basis)
    d_matrix = _operator_matrix(pres, pres.d, source, target)
    out_rows = [i for i, m in enumerate(target) if m not in pq_set]
    in_rows = {m: i for i, m in enumerate(target)}
    if pres.backend == EXACT:
        restricted = [d_matrix[i] for i in out_rows]
        kernel = linalg.nullspace(restricted) if restricted else [
            [_gr(1) if j == i else _gr(0) for j in range(len(source))]
            for i in range(len(source))
        ]
        vectors = []
        for k in kernel:
            img = linalg.matvec(d_matrix, k)
            vec = [img[in_rows[m]] for m in pq_basis]
            if any(vec):
                vectors.append(vec)
        return linalg.column_space_basis(vectors), pq_basis
    restricted = d_matrix[out_rows, :] if out_rows else np.zeros((0, len(source)))
    if restricted.shape[1] == 0:
        return [], pq_basis
    from scipy.linalg import null_space as _ns

    kernel = _ns(restricted) if restricted.shape[0] else np.eye(len(source))
    vectors = []
    for k in kernel.T:
        img = d_matrix @ k
        vec = np.array([img[in_rows[m]] for m in pq_basis])
        if np.linalg.norm(vec) > 1e-10:
            vectors.append(vec)
    # orthonormalise to a basis
    if not vectors:
        return [], pq_basis
    stacked = np.array(vectors).T
    qmat, rmat = np.linalg.qr(stacked)
    keep = [i for i in range(rmat.shape[0]) if abs(rmat[i, i]) > 1e-10]
    return [qmat[:, i] for i in keep], pq_basis


def invariant_ddbar_lemma_check(pres: StructurePresentation, p: int, q: int) -> bool:
    """ker del ^ ker delbar ^ im d == im (del delbar) inside Lambda^{p,q}.

    Everything is computed on the finite invariant complex; the containment
    im(del delbar) inside the triple intersection always holds, so the
    check compares dimensions exactly (exact backend) or by numeric rank.
    """
    n = pres.n
    pq_basis = bidegree_basis(n, p, q)
    image_basis, _ = _exact_image_in_bidegree(pres, p, q)
    dim_y = _rank(
        pres,
        _operator_matrix(
            pres, pres.del_delbar, bidegree_basis(n, p - 1, q - 1), pq_basis
        )
        if p >= 1 and q >= 1
        else ([] if pres.backend == EXACT else np.zeros((len(pq_basis), 0))),
    )
    if not image_basis:
        return dim_y == 0
    del_matrix = _operator_matrix(
        pres, pres.del_, pq_basis, bidegree_basis(n, p + 1, q)
    )
    delbar_matrix = _operator_matrix(
        pres, pres.delbar, pq_basis, bidegree_basis(n, p, q + 1)
    )
    if pres.backend == EXACT:
        stacked = []
        rows_d = len(del_matrix)
        rows_db = len(delbar_matrix)
        for r in range(rows_d + rows_db):
            row = []
            for vec in image_basis:
                source_row = del_matrix[r] if r < rows_d else delbar_matrix[r - rows_d]
                row.append(linalg.sum_product(source_row, vec))
            stacked.append(row)
        dim_x = len(image_basis) - (linalg.rank(stacked) if stacked else 0)
    else:
        w = np.array(image_basis).T
        stacked = np.vstack([del_matrix @ w, delbar_matrix @ w])
        dim_x = len(image_basis) - _rank(pres, stacked)
    return dim_x == dim_y


def bott_chern_dimensions(pres: StructurePresentation) -> dict[tuple[int, int], int]:
    """dim (ker del ^ ker delbar / im del delbar) per bidegree,
    on the invariant complex."""
    n = pres.n
    out = {}
    for p in range(n + 1):
        for q in range(n + 1):
            pq_basis = bidegree_basis(n, p, q)
            del_matrix = _operator_matrix(
                pres, pres.del_, pq_basis, bidegree_basis(n, p + 1, q)
            )
            delbar_matrix = _operator_matrix(
                pres, pres.delbar, pq_basis, bidegree_basis(n, p, q + 1)
            )
            if pres.backend == EXACT:
                stacked = list(del_matrix) + list(delbar_matrix)
                ker = len(pq_basis) - (linalg.rank(stacked) if stacked else 0)
            else:
                stacked = np.vstack([del_matrix, delbar_matrix])
                ker = len(pq_basis) - _rank(pres, stacked)
            if p >= 1 and q >= 1:
                dd = _operator_matrix(
                    pres, pres.del_delbar, bidegree_basis(n, p - 1, q - 1), pq_basis
                )
                rk = _rank(pres, dd)
            else:
                rk = 0
            out[(p, q)] = ker - rk
    return out

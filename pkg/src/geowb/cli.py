"""Command-line front end.

Exit codes: 0 the check ran and holds, 1 the check ran and fails,
2 usage or input-parse error, 3 internal error.  Randomised reports embed
seed and sample count; identical seed and configuration reproduce them
bit-for-bit.  The seed falls back to the GEOWB_SEED environment variable,
then to a fixed default.
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

import click

from . import catalog as cat
from . import existence, metrics, positivity, scalars
from .forms import InvariantForm, form_from_json, form_to_json
from .lie import presentation_from_json, presentation_to_json
from .scalars import EXACT, FLOAT, GaussRational

DEFAULT_SEED = 20240


@dataclass
class RunConfig:
    backend: str = EXACT
    epsilon: float = scalars.DEFAULT_EPS
    samples: int = 10000
    seed: int = DEFAULT_SEED
    as_json: bool = False


class InputError(Exception):
    """Bad user input (unparsable file, unknown key): exit code 2."""


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise InputError(f"file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc


def _parse_param_value(value, backend: str):
    """Accept "p/q", int, float, [re, im] or {"re":..,"im":..}."""
    if isinstance(value, dict):
        return scalars.scalar_from_json(value, backend)
    if isinstance(value, list):
        if len(value) != 2:
            raise InputError(f"scalar list must be [re, im], got {value}")
        if backend == EXACT:
            return GaussRational(Fraction(str(value[0])), Fraction(str(value[1])))
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, bool):
        raise InputError(f"boolean is not a scalar: {value}")
    if isinstance(value, int):
        return GaussRational(value) if backend == EXACT else complex(value)
    if isinstance(value, float):
        if backend == EXACT:
            raise InputError(
                f"float {value} cannot enter an exact computation; "
                "pass \"p/q\" strings or use --backend float"
            )
        return complex(value)
    if isinstance(value, str):
        try:
            if backend == EXACT:
                return GaussRational(Fraction(value))
            return complex(Fraction(value))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse scalar {value!r}") from exc
    raise InputError(f"cannot parse scalar {value!r}")


def _load_params(path: str | None, backend: str) -> dict:
    if path is None:
        return {}
    raw = _load_json(path)
    if not isinstance(raw, dict):
        raise InputError("params file must be a JSON object of named scalars")
    return {k: _parse_param_value(v, backend) for k, v in raw.items()}


def _resolve_structure(spec: str, params_path: str | None = None):
    """A structure argument is an existing JSON file or a catalog key."""
    if os.path.exists(spec):
        return presentation_from_json(_load_json(spec))
    if spec in cat.CATALOG:
        entry = cat.entry(spec)
        backend = FLOAT if spec == "s1-pi2" else EXACT
        params = _load_params(params_path, backend)
        try:
            return entry.instantiate(**params)
        except (ValueError, TypeError) as exc:
            raise InputError(str(exc)) from exc
    raise InputError(f"{spec!r} is neither a readable file nor a catalog key")


def _load_metric(spec: str, pres) -> metrics.HermitianMetric:
    if spec == "diagonal" or spec == "identity":
        return metrics.HermitianMetric.identity(pres.n, pres.backend)
    obj = _load_json(spec)
    try:
        metric = metrics.HermitianMetric.from_json(obj)
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"bad metric file: {exc}") from exc
    return metric


def _emit(config: RunConfig, payload: dict, text_lines):
    if config.as_json:
        click.echo(json.dumps(payload, indent=2, default=str))
    else:
        for line in text_lines:
            click.echo(line)


def _guard(func):
    """Map exceptions to the documented exit codes."""
    import functools

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except InputError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
        except click.ClickException:
            raise
        except SystemExit:
            raise
        except BrokenPipeError:
            sys.exit(0)
        except Exception as exc:  # internal failure
            click.echo(f"internal error: {type(exc).__name__}: {exc}", err=True)
            sys.exit(3)

    return wrapper


@click.group()
@click.option("--backend", type=click.Choice([EXACT, FLOAT]), default=EXACT,
              show_default=True, help="scalar backend for new objects")
@click.option("--epsilon", type=float, default=scalars.DEFAULT_EPS,
              show_default=True, help="absolute tolerance on the float backend")
@click.option("--samples", type=int, default=10000, show_default=True,
              help="sample count for randomised transversality checks")
@click.option("--seed", type=int, default=None,
              help=f"RNG seed (falls back to GEOWB_SEED, then {DEFAULT_SEED})")
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
@click.pass_context
def main(ctx, backend, epsilon, samples, seed, as_json):
    """Invariant-form calculus on complex nilmanifolds and solvmanifolds."""
    if samples <= 0:
        raise click.UsageError("--samples must be positive")
    if epsilon <= 0:
        raise click.UsageError("--epsilon must be positive")
    if seed is None:
        env = os.environ.get("GEOWB_SEED")
        seed = int(env) if env else DEFAULT_SEED
    ctx.obj = RunConfig(
        backend=backend, epsilon=epsilon, samples=samples, seed=seed,
        as_json=as_json,
    )


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------


@main.group("catalog")
def catalog_group():
    """List or print the built-in structure presentations."""


@catalog_group.command("list")
@click.pass_obj
@_guard
def catalog_list(config):
    lines = []
    payload = []
    for key in cat.keys():
        entry = cat.entry(key)
        params = ", ".join(p.name for p in entry.params) or "-"
        lines.append(f"{key:18s} {entry.summary}  [params: {params}]")
        payload.append({
            "key": key,
            "summary": entry.summary,
            "params": [p.name for p in entry.params],
            "provenance": entry.provenance,
        })
    _emit(config, {"catalog": payload}, lines)


@catalog_group.command("show")
@click.argument("key")
@click.option("--params", "params_path", default=None, type=str,
              help="JSON file of parameter values")
@click.pass_obj
@_guard
def catalog_show(config, key, params_path):
    if key not in cat.CATALOG:
        raise InputError(f"unknown catalog key {key!r}")
    pres = _resolve_structure(key, params_path)
    doc = presentation_to_json(pres)
    doc["provenance"] = cat.entry(key).provenance
    click.echo(json.dumps(doc, indent=2))


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------


@main.command()
@click.argument("structure")
@click.option("--params", "params_path", default=None, type=str)
@click.option("--exhaustive", is_flag=True,
              help="also check d(d m) = 0 on every monomial")
@click.pass_obj
@_guard
def validate(config, structure, params_path, exhaustive):
    """Check d*d = 0 and integrability for a structure file or catalog key."""
    pres = _resolve_structure(structure, params_path)
    tol = config.epsilon if pres.backend == FLOAT else None
    report = pres.validate(tol=tol, exhaustive=exhaustive)
    lines = [
        f"structure:   {pres.name or structure}",
        f"d*d = 0:     {'pass' if report.ok else 'FAIL'}",
        f"integrable:  {report.integrable}",
        f"max |d(d phi^i)| residual: {report.max_residual():.3e}",
    ]
    for i, residual in report.residual_summary().items():
        lines.append(f"  residual d(d phi^{i}) = {residual}")
    for w in report.warnings:
        lines.append(f"warning: {w}")
    _emit(config, report.to_json(), lines)
    sys.exit(0 if report.ok else 1)


# ---------------------------------------------------------------------------
# classify-metric
# ---------------------------------------------------------------------------


@main.command("classify-metric")
@click.argument("structure")
@click.option("--metric", "metric_spec", default="diagonal", show_default=True,
              help="metric JSON file, or 'diagonal' for the identity matrix")
@click.option("--params", "params_path", default=None, type=str)
@click.pass_obj
@_guard
def classify_metric(config, structure, metric_spec, params_path):
    """Evaluate the special-metric flags for a presentation and metric."""
    pres = _resolve_structure(structure, params_path)
    metric = _load_metric(metric_spec, pres)
    tol = config.epsilon if pres.backend == FLOAT else None
    if not metric.is_positive_definite(tol):
        raise InputError("metric is not positive definite")
    report = metrics.classify(pres, metric, tol)
    lines = [f"structure: {pres.name or structure}"]
    for flag, value in report.flags.items():
        lines.append(f"{flag:20s} {str(value):5s}  {report.evidence[flag]}")
    for note in report.notes:
        lines.append(f"note: {note}")
    _emit(config, report.to_json(), lines)


# ---------------------------------------------------------------------------
# transverse
# ---------------------------------------------------------------------------


@main.command()
@click.option("--form", "form_path", default=None, type=str,
              help="JSON file with the (p,p)-form to test")
@click.option("--structure", "structure", default=None, type=str,
              help="optional structure context (for rank/backend only)")
@click.option("--omega-a", "omega_a", default=None, type=str,
              help="test the rank-4 quadric family member with this a "
                   "(e.g. '3/2' or '1+1i' as re,im pair 're/1 im/1')")
@click.option("--quadric/--no-quadric", default=None,
              help="force or forbid the rank-4 quadric path for (2,2)-forms")
@click.pass_obj
@_guard
def transverse(config, form_path, structure, omega_a, quadric):
    """Transversality of a real (p,p)-form: sampling or quadric criterion."""
    if omega_a is not None:
        a = _parse_param_value(omega_a, EXACT)
        matrix = positivity.omega_a_matrix(a)
        verdict = positivity.quadric_transversality(
            matrix, starts=64, seed=config.seed
        )
        lines = [
            f"quadric family member, a = {scalars.format_scalar(a)}",
            f"verdict: {verdict.kind}"
            + (f" ({verdict.certificate})" if verdict.certificate else ""),
        ]
        _emit(config, verdict.to_json(), lines)
        sys.exit(0 if verdict.positive else 1)

    if form_path is None:
        raise InputError("provide --form FILE or --omega-a VALUE")
    form = form_from_json(_load_json(form_path))
    if structure is not None:
        pres = _resolve_structure(structure)
        if pres.n != form.n:
            raise InputError("form rank does not match the structure")
    bideg = form.bidegree()
    use_quadric = quadric if quadric is not None else (
        form.n == 4 and bideg == (2, 2)
    )
    if use_quadric and form.n == 4 and bideg == (2, 2):
        matrix = positivity.quadric_matrix(form)
        verdict = positivity.quadric_transversality(
            matrix, starts=64, seed=config.seed
        )
        path = "quadric"
    else:
        verdict = positivity.transversality_sample(
            form, samples=config.samples, seed=config.seed
        )
        path = "sampling"
    lines = [
        f"path: {path}",
        f"verdict: {verdict.kind}",
    ]
    if verdict.min_value is not None:
        lines.append(f"minimum over {verdict.samples} samples: {verdict.min_value:.6e}")
    if verdict.value is not None:
        lines.append(f"witness value: {verdict.value:.6e}")
    payload = verdict.to_json()
    payload["path"] = path
    _emit(config, payload, lines)
    sys.exit(0 if verdict.positive else 1)


# ---------------------------------------------------------------------------
# psymplectic
# ---------------------------------------------------------------------------

_FAMILIES = {
    "fps6": {
        "p": 2,
        "letters": ["A", "B", "C", "D", "E"],
        "free": ["L", "M", "N"],
        "ansatz": existence.fps_ansatz_basis,
    },
    "ft8": {
        "p": 3,
        "letters": [f"a{i}" for i in range(1, 13)],
        "free": ["L1", "L2", "L3", "M1", "M2", "N"],
        "ansatz": existence.ft8_ansatz_basis,
    },
    "st10": {
        "p": 4,
        "letters": (
            [f"a{i}" for i in range(1, 8)]
            + [f"b{i}" for i in range(1, 7)]
            + [f"c{i}" for i in range(1, 6)]
            + [f"d{i}" for i in range(1, 5)]
        ),
        "free": ["L1", "L2", "L3", "M1", "M2", "N1", "S1", "S2", "S3", "P"],
        "ansatz": existence.st10_ansatz_basis,
    },
}


@main.command()
@click.option("--family", required=True, type=click.Choice(sorted(_FAMILIES)))
@click.option("--params", "params_path", required=True, type=str,
              help="JSON file with structure letters and free coefficients")
@click.option("--metric", "metric_spec", default="diagonal", show_default=True)
@click.pass_obj
@_guard
def psymplectic(config, family, params_path, metric_spec):
    """Closedness of the family ansatz Psi = lambda + omega^p + conj(lambda)."""
    spec = _FAMILIES[family]
    p = spec["p"]
    params = _load_params(params_path, EXACT)
    letters = {k: params.get(k, GaussRational(0)) for k in spec["letters"]}
    free = {k: params.get(k, GaussRational(0)) for k in spec["free"]}
    unknown = set(params) - set(spec["letters"]) - set(spec["free"])
    if unknown:
        raise InputError(f"unknown parameters: {sorted(unknown)}")

    pres = cat.get(family, **letters)
    metric = _load_metric(metric_spec, pres)
    if not metric.is_positive_definite():
        raise InputError("metric is not positive definite")
    omega = metrics.fundamental_form(metric)
    fixed = metrics.form_power(omega, p)

    if family == "fps6":
        r2, s2, t2, u, v, w = metric.letters()
        condition = existence.fps_psymplectic_condition(
            letters["A"], letters["B"], letters["C"], letters["D"], letters["E"],
            N=free["N"], r2=r2, s2=s2, t2=t2, u=u, v=v, w=w,
        )
    elif family == "ft8":
        if metric_spec not in ("diagonal", "identity"):
            raise InputError("the rank-4 family condition is for the diagonal metric")
        condition = existence.ft8_3symplectic_condition(
            [letters[f"a{i}"] for i in range(1, 13)],
            L3=free["L3"], M2=free["M2"], N=free["N"],
        )
    else:
        if metric_spec not in ("diagonal", "identity"):
            raise InputError("the rank-5 family condition is for the diagonal metric")
        condition = existence.st10_4symplectic_condition(
            [letters[f"a{i}"] for i in range(1, 8)],
            [letters[f"b{i}"] for i in range(1, 7)],
            [letters[f"c{i}"] for i in range(1, 6)],
            [letters[f"d{i}"] for i in range(1, 5)],
            L3=free["L3"], M2=free["M2"], N1=free["N1"],
            S2=free["S2"], S3=free["S3"], P=free["P"],
        )

    basis, names = spec["ansatz"]()
    solution = existence.closure_system(pres, p, fixed, basis, names)
    coeffs = [free[name] for name in names]
    closed = solution.is_member(coeffs)
    condition_zero = scalars.is_zero(condition)
    if closed != condition_zero:
        raise RuntimeError(
            "condition formula and direct closure check disagree; "
            "this is a transcription bug"
        )

    verdict = "YES" if closed else "NO"
    lines = [
        f"family {family}, p = {p}",
        f"{p}-symplectic: {verdict} "
        f"(closedness condition = {scalars.format_scalar(condition)}; "
        "transversality: metric-power certificate)",
        f"some lambda closes the ansatz: {solution.consistent}",
    ]
    payload = {
        "family": family,
        "p": p,
        "condition": scalars.scalar_to_json(condition),
        "closed": closed,
        "solvable": solution.consistent,
        "transversality": positivity.certified("metric-power").to_json(),
        "closure": solution.to_json(),
    }
    _emit(config, payload, lines)
    sys.exit(0 if closed else 1)


# ---------------------------------------------------------------------------
# obstruct
# ---------------------------------------------------------------------------


@main.command()
@click.option("--cert", "cert_path", default=None, type=str,
              help="certificate JSON file")
@click.option("--structure", "structure", default=None, type=str,
              help="structure file or catalog key (overrides the certificate's)")
@click.option("--library", "library_name", default=None, type=str,
              help="use a named certificate from the built-in library")
@click.option("--search", is_flag=True, help="brute-force single-monomial search")
@click.option("--p", "p_value", type=int, default=None)
@click.option("--mode", type=click.Choice(["d", "delbar-del"]), default="d")
@click.option("--budget", type=int, default=200, show_default=True)
@click.pass_obj
@_guard
def obstruct(config, cert_path, structure, library_name, search, p_value, mode, budget):
    """Verify (or search for) a same-sign obstruction certificate."""
    if library_name is not None:
        lib = cat.certificate_library()
        if library_name not in lib:
            raise InputError(
                f"unknown library certificate {library_name!r}; "
                f"available: {sorted(lib)}"
            )
        structure_key, cert = lib[library_name]
        pres = _resolve_structure(structure or structure_key)
    elif search:
        if structure is None or p_value is None:
            raise InputError("--search needs --structure and --p")
        pres = _resolve_structure(structure)
        found = existence.certificate_search(pres, p_value, mode, budget)
        lines = [f"candidates found: {len(found)}"]
        payload = {"found": [c.to_json() for c in found]}
        for c in found:
            report = existence.verify_obstruction_certificate(pres, c)
            lines.append(f"  beta = {c.beta}: {report.conclusion}")
        _emit(config, payload, lines)
        sys.exit(0 if found else 1)
    else:
        if cert_path is None:
            raise InputError("provide --cert FILE, --library NAME or --search")
        obj = _load_json(cert_path)
        try:
            cert = existence.ObstructionCertificate.from_json(obj)
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError(f"bad certificate file: {exc}") from exc
        spec = structure or obj.get("structure")
        if spec is None:
            raise InputError("certificate carries no structure; pass --structure")
        pres = _resolve_structure(spec)

    tol = config.epsilon if pres.backend == FLOAT else None
    report = existence.verify_obstruction_certificate(pres, cert, tol)
    lines = [
        f"certificate valid: {report.valid}",
    ]
    if report.valid:
        lines.append(report.conclusion + " (invariant certificate verified)")
    lines.extend(report.messages)
    _emit(config, report.to_json(), lines)
    sys.exit(0 if report.valid else 1)


# ---------------------------------------------------------------------------
# bc-dims and ddbar-lemma
# ---------------------------------------------------------------------------


@main.command("bc-dims")
@click.argument("structure")
@click.option("--params", "params_path", default=None, type=str)
@click.pass_obj
@_guard
def bc_dims(config, structure, params_path):
    """Invariant-level Bott-Chern dimensions for all bidegrees."""
    pres = _resolve_structure(structure, params_path)
    table = existence.bott_chern_dimensions(pres)
    lines = [f"structure: {pres.name or structure} (invariant-level)"]
    header = "p\\q " + " ".join(f"{q:3d}" for q in range(pres.n + 1))
    lines.append(header)
    for p in range(pres.n + 1):
        row = " ".join(f"{table[(p, q)]:3d}" for q in range(pres.n + 1))
        lines.append(f"{p:3d} {row}")
    payload = {
        "structure": pres.name or structure,
        "note": "invariant-level Bott-Chern dimensions",
        "dimensions": {f"{p},{q}": v for (p, q), v in table.items()},
    }
    _emit(config, payload, lines)


@main.command("ddbar-lemma")
@click.argument("structure")
@click.option("--p", "p_value", type=int, required=True)
@click.option("--q", "q_value", type=int, required=True)
@click.option("--params", "params_path", default=None, type=str)
@click.pass_obj
@_guard
def ddbar_lemma(config, structure, p_value, q_value, params_path):
    """Invariant-level del-delbar lemma check at one bidegree."""
    pres = _resolve_structure(structure, params_path)
    holds = existence.invariant_ddbar_lemma_check(pres, p_value, q_value)
    lines = [
        f"structure: {pres.name or structure}",
        f"del-delbar lemma at ({p_value},{q_value}) (invariant-level): "
        f"{'holds' if holds else 'FAILS'}",
    ]
    payload = {
        "structure": pres.name or structure,
        "p": p_value,
        "q": q_value,
        "holds": holds,
        "note": "invariant-level check",
    }
    _emit(config, payload, lines)
    sys.exit(0 if holds else 1)


if __name__ == "__main__":
    main()

"""Command-line front end.

Usage:
    barygeo dot --matrix tri.csv --u=-2/3,1/3,1/3 --v=-2/3,1/3,1/3
    barygeo dot --matrix tri.csv --mode points --u "1,0,0;1/3,1/3,1/3" --v ...
    barygeo dist --matrix tri345.csv --p 1,0,0 --q 0,1,0 --sqrt
    barygeo gram --matrix tri.csv --out gram.csv
    barygeo embed --matrix cycle4.csv
    barygeo check-euclidean --matrix cycle4.csv
    barygeo check-sturm --matrix tripod.csv
    barygeo tri --edges 3,4,5 --p 1,0,0 --q 0,1/2,1/2

Exit codes: 0 success, 2 input/parse error, 3 invariant violation in the
input data, 4 mathematical refusal, 5 instance too large.

Values starting with ``-`` must be attached with ``=`` (``--u=-1,1,0``).
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import click
import numpy as np

from . import __version__
from .coords import DisplacementVector, displacement_between
from .curvature import N_MAX, check_sturm, sample_check
from .errors import (
    DegenerateCoordinatesError,
    GeometryError,
    InvalidInputError,
    ParseError,
    RefusalError,
    ShapeError,
)
from .linalg import DEFAULT_TOL
from .metric import SquaredDistanceMatrix, TriangleEdges, scalar_product, squared_distance
from .spectral import check_euclidean, gram_from_distances, realize, signature_of


# ---------------------------------------------------------------------------
# parsing


def parse_number(token: str) -> Fraction:
    token = token.strip()
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a decimal or rational number: {token!r}") from None


def parse_coords(text: str) -> list[Fraction]:
    """Comma-separated list of decimal or rational tokens, kept exact."""
    tokens = [t for t in text.split(",")]
    if not text.strip() or any(not t.strip() for t in tokens):
        raise ParseError(f"malformed coordinate list: {text!r}")
    return [parse_number(t) for t in tokens]


def to_floats(values: list[Fraction]) -> np.ndarray:
    return np.array([float(v) for v in values])


def read_matrix(path: Path, tol: float) -> tuple[SquaredDistanceMatrix, bytes]:
    """Load a square CSV table, skipping an optional header row of labels."""
    raw = path.read_bytes()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise ParseError(f"{path}: not UTF-8 text") from None
    rows = [r for r in csv.reader(io.StringIO(text)) if any(c.strip() for c in r)]
    if not rows:
        raise ParseError(f"{path}: empty matrix file")
    try:
        [parse_number(c) for c in rows[0]]
    except ParseError:
        rows = rows[1:]
    table = []
    for lineno, row in enumerate(rows, 1):
        try:
            table.append([float(parse_number(c)) for c in row])
        except ParseError as exc:
            raise ParseError(f"{path}: data row {lineno}: {exc}") from None
    n = len(table)
    if n == 0 or any(len(r) != n for r in table):
        raise ShapeError(f"{path}: matrix is not square ({n} rows, row lengths {sorted({len(r) for r in table})})")
    return SquaredDistanceMatrix(table, tol), raw


def digest(*parts: bytes) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(p)
        h.update(b"\0")
    return "sha256:" + h.hexdigest()


def exact_normalize(values: list[Fraction], what: str, notices: list[str]) -> np.ndarray:
    """Divide by the exact rational sum, with a notice when it is not 1."""
    total = sum(values, Fraction(0))
    if total == 0:
        raise DegenerateCoordinatesError(f"{what}: coordinate weights sum to 0; no point is encoded")
    if total != 1:
        notices.append(f"{what}: weights sum to {total}, normalized by dividing by the sum")
        values = [v / total for v in values]
    return to_floats(values)


# ---------------------------------------------------------------------------
# output


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def to_csv(rows) -> str:
    return "".join(",".join(fmt(x) for x in row) + "\n" for row in rows if len(row))


def _clean(x):
    if isinstance(x, dict):
        return {k: _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_clean(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            raise ValueError("non-finite value in report")
        return 0.0 if x == 0 else x
    return x


def make_report(command, input_digest, result, tol, witness=None, signature=None, notices=()):
    report = {"command": command, "input_digest": input_digest, "result": result}
    if witness is not None:
        report["witness"] = witness
    if signature is not None:
        report["signature"] = {"n_pos": signature.n_pos, "n_neg": signature.n_neg, "n_zero": signature.n_zero}
    if notices:
        report["notices"] = list(notices)
    report["tolerances"] = {"tol": tol}
    report["version"] = __version__
    return _clean(report)


def _plain_lines(prefix, value):
    if isinstance(value, dict):
        for k, v in value.items():
            yield from _plain_lines(f"{prefix}.{k}" if prefix else k, v)
    elif isinstance(value, list) and value and isinstance(value[0], list):
        for i, row in enumerate(value):
            yield f"{prefix}[{i}]: " + ", ".join(repr(v) for v in row)
    elif isinstance(value, list):
        yield f"{prefix}: " + ", ".join(repr(v) for v in value)
    else:
        yield f"{prefix}: {value}"


def emit(ctx, report) -> None:
    if ctx.obj["json"]:
        click.echo(json.dumps(report, indent=2))
    else:
        for key in ("command", "result", "signature", "witness", "notices"):
            if key in report:
                for line in _plain_lines(key if key != "result" else "", report[key]):
                    click.echo(line)
    for notice in report.get("notices", ()):
        click.echo(f"notice: {notice}", err=True)


def emit_payload(ctx, report, payload_csv: str, out: str | None) -> None:
    """Write a CSV payload to ``out`` (``-`` for stdout) and the report."""
    if out == "-":
        click.echo(payload_csv, nl=False)
        return
    if out is not None:
        Path(out).write_text(payload_csv)
        report["result"]["output"] = out
    emit(ctx, report)


# ---------------------------------------------------------------------------
# commands


class Group(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except GeometryError as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(exc.exit_code)


matrix_option = click.option(
    "--matrix", "matrix", required=True,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="CSV file with the squared-distance matrix.",
)
tol_option = click.option("--tol", default=DEFAULT_TOL, show_default=True, type=float, help="Relative tolerance.")


@click.group(cls=Group)
@click.option("--json/--plain", "as_json", default=True, help="JSON report (default) or plain text.")
@click.version_option(__version__, prog_name="barygeo")
@click.pass_context
def cli(ctx, as_json):
    """Metric geometry on squared-distance matrices."""
    ctx.ensure_object(dict)
    ctx.obj["json"] = as_json


@cli.command()
@matrix_option
@click.option("--u", "u", required=True, help="First vector.")
@click.option("--v", "v", required=True, help="Second vector.")
@click.option("--mode", type=click.Choice(["displacement", "points"]), default="displacement", show_default=True,
              help="Sum-zero weights, or 'start;end' pairs of point coordinates.")
@tol_option
@click.pass_context
def dot(ctx, matrix, u, v, mode, tol):
    """Scalar product of two vectors given in barycentric form."""
    D, raw = read_matrix(matrix, tol)
    notices: list[str] = []
    vectors = []
    for name, text in (("u", u), ("v", v)):
        if mode == "displacement":
            vectors.append(DisplacementVector(to_floats(parse_coords(text)), tol).weights)
        else:
            parts = text.split(";")
            if len(parts) != 2:
                raise ParseError(f"{name}: points mode expects 'start;end', got {text!r}")
            start = exact_normalize(parse_coords(parts[0]), f"{name} start", notices)
            end = exact_normalize(parse_coords(parts[1]), f"{name} end", notices)
            if start.size != end.size:
                raise ShapeError(f"{name}: start and end have different lengths")
            vectors.append(displacement_between(start, end, tol).weights)
    for name, w in zip("uv", vectors):
        if w.size != D.n:
            raise ShapeError(f"{name} has {w.size} weights but the matrix has n = {D.n}")
    value = scalar_product(D, vectors[0], vectors[1], tol)
    digest_ = digest(raw, mode.encode(), u.encode(), v.encode())
    emit(ctx, make_report("dot", digest_, {"mode": mode, "scalar_product": value}, tol, notices=notices))


def _distance_result(squared: float, want_sqrt: bool, scale: float, tol: float) -> dict:
    result = {"squared_distance": squared}
    if want_sqrt:
        if squared < -tol * max(1.0, scale):
            raise RefusalError(
                f"squared distance {squared!r} is negative (pseudo-Euclidean); "
                "no real distance exists, --sqrt refused"
            )
        result["distance"] = math.sqrt(max(squared, 0.0))
    return result


def _two_points(D_n, p, q, notices):
    a = exact_normalize(parse_coords(p), "p", notices)
    b = exact_normalize(parse_coords(q), "q", notices)
    for name, w in (("p", a), ("q", b)):
        if w.size != D_n:
            raise ShapeError(f"{name} has {w.size} weights, expected {D_n}")
    return a, b


@cli.command()
@matrix_option
@click.option("--p", "p", required=True, help="First point, barycentric weights.")
@click.option("--q", "q", required=True, help="Second point, barycentric weights.")
@click.option("--sqrt", "want_sqrt", is_flag=True, help="Also report the distance itself.")
@tol_option
@click.pass_context
def dist(ctx, matrix, p, q, want_sqrt, tol):
    """Squared distance between two points given in barycentric coordinates."""
    D, raw = read_matrix(matrix, tol)
    notices: list[str] = []
    a, b = _two_points(D.n, p, q, notices)
    squared = squared_distance(D, a, b, tol)
    result = _distance_result(squared, want_sqrt, D.scale, tol)
    emit(ctx, make_report("dist", digest(raw, p.encode(), q.encode()), result, tol, notices=notices))


@cli.command()
@click.option("--edges", required=True, help="Edge lengths l12,l13,l23 (not squared).")
@click.option("--p", "p", required=True, help="First point, 3 barycentric weights.")
@click.option("--q", "q", required=True, help="Second point, 3 barycentric weights.")
@click.option("--sqrt", "want_sqrt", is_flag=True, help="Also report the distance itself.")
@click.option("--strict", is_flag=True, help="Reject edges violating the triangle inequality.")
@tol_option
@click.pass_context
def tri(ctx, edges, p, q, want_sqrt, strict, tol):
    """Squared distance inside a triangle known only by its edge lengths."""
    lengths = to_floats(parse_coords(edges))
    if lengths.size != 3:
        raise ParseError(f"--edges needs exactly 3 lengths, got {lengths.size}")
    try:
        E = TriangleEdges(*lengths)
    except ShapeError as exc:
        raise InvalidInputError(str(exc)) from None
    if strict and not E.satisfies_triangle_inequality(tol):
        raise InvalidInputError(f"edges {edges} violate the triangle inequality")
    D = E.squared_distance_matrix()
    notices: list[str] = []
    a, b = _two_points(3, p, q, notices)
    squared = squared_distance(D, a, b, tol)
    result = _distance_result(squared, want_sqrt, D.scale, tol)
    emit(ctx, make_report("tri", digest(edges.encode(), p.encode(), q.encode()), result, tol, notices=notices))


out_option = click.option("--out", default=None, help="Write the CSV payload here ('-' for stdout).")


@cli.command()
@matrix_option
@out_option
@tol_option
@click.pass_context
def gram(ctx, matrix, out, tol):
    """Double-centered Gram matrix (classical MDS)."""
    D, raw = read_matrix(matrix, tol)
    G = gram_from_distances(D).entries
    report = make_report("gram", digest(raw), {"n": D.n, "gram": G}, tol, signature=signature_of(D, tol))
    emit_payload(ctx, report, to_csv(G), out)


@cli.command()
@matrix_option
@out_option
@tol_option
@click.pass_context
def embed(ctx, matrix, out, tol):
    """Realize the matrix as points in a (pseudo-)Euclidean space."""
    D, raw = read_matrix(matrix, tol)
    R = realize(D, tol)
    result = {"n": D.n, "dimension": R.dim, "metric": R.signature, "coordinates": R.points}
    report = make_report("embed", digest(raw), result, tol, signature=signature_of(D, tol))
    emit_payload(ctx, report, to_csv(R.points), out)


@cli.command("check-euclidean")
@matrix_option
@tol_option
@click.pass_context
def check_euclidean_cmd(ctx, matrix, tol):
    """Negative-type test for Euclidean embeddability."""
    D, raw = read_matrix(matrix, tol)
    rep = check_euclidean(D, tol)
    witness = None
    if rep.witness is not None:
        witness = {"vector": rep.witness, "value": rep.witness_value}
    report = make_report("check-euclidean", digest(raw), {"embeddable": rep.embeddable}, tol,
                         witness=witness, signature=rep.signature)
    emit(ctx, report)


@cli.command("check-sturm")
@matrix_option
@click.option("--method", type=click.Choice(["exact", "sample"]), default="exact", show_default=True)
@click.option("--samples", default=100_000, show_default=True, type=click.IntRange(min=1))
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--n-max", default=N_MAX, show_default=True, type=int, help="Size limit of the exact check.")
@tol_option
@click.pass_context
def check_sturm_cmd(ctx, matrix, method, samples, seed, n_max, tol):
    """Sturm non-negative curvature test."""
    D, raw = read_matrix(matrix, tol)
    if method == "exact":
        rep = check_sturm(D, tol, n_max=n_max)
    else:
        rep = sample_check(D, samples=samples, seed=seed, tol=tol)
    result = {
        "method": method,
        "satisfied": rep.satisfied,
        "verdict": rep.verdict,
        "per_vertex": list(rep.per_vertex),
    }
    if method == "sample":
        result["samples"] = samples
        result["seed"] = seed
    witness = None
    if rep.witness is not None:
        witness = {"vector": rep.witness, "value": rep.witness_value}
    emit(ctx, make_report("check-sturm", digest(raw, method.encode()), result, tol, witness=witness))


def main(argv=None):
    return cli.main(args=argv, prog_name="barygeo")


if __name__ == "__main__":
    sys.exit(main())

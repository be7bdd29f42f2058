"""Command-line frontend: verify, construct, fidelity, rate, bound, simulate, catalog.

Exit codes: 0 when every requested check passes, 1 on a verification failure,
2 on usage or parse errors.  Reports go to stdout as text or, with
--format kv, as stable key=value lines; --figure additionally renders a
matplotlib figure next to the data output.
"""

from __future__ import annotations

import math
import sys
from fractions import Fraction

import click

from . import construct, criteria, metrics, simulate
from .algebra import format_poly
from .codes import Code, CodeFormatError, catalog_entry, catalog_ids, parse_code, serialize_code

PASS, FAIL, USAGE = 0, 1, 2


def _fail_usage(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(USAGE)


def _parse_gamma(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        _fail_usage(f"bad gamma {text!r}")


def _load_code(catalog_id: int | None, file: str | None,
               as_printed: bool) -> Code:
    if (catalog_id is None) == (file is None):
        _fail_usage("give exactly one of --catalog or --file")
    if catalog_id is not None:
        try:
            entry = catalog_entry(catalog_id)
        except KeyError as exc:
            _fail_usage(str(exc))
        return entry.printed if as_printed else entry.default
    try:
        with open(file, encoding="utf-8") as fh:
            return parse_code(fh.read())
    except OSError as exc:
        _fail_usage(f"cannot read {file}: {exc}")
    except CodeFormatError as exc:
        _fail_usage(f"{file}: {exc}")


class Reporter:
    def __init__(self, fmt: str):
        self.kv = fmt == "kv"

    def emit(self, key: str, value, text: str | None = None):
        if self.kv:
            click.echo(f"{key}={value}")
        else:
            click.echo(text if text is not None else f"{key}: {value}")


def _echo_descriptor(rep: Reporter, code: Code):
    rep.emit("code", code.descriptor,
             f"code {code.descriptor} name={code.name!r}")


@click.group()
@click.option("--threads", type=int, default=1, show_default=True,
              help="Reserved worker-count knob; current operations are single-threaded.")
def main(threads: int):
    """Exact-arithmetic bosonic quantum codes for amplitude damping."""


fmt_option = click.option("--format", "fmt", type=click.Choice(["text", "kv"]),
                          default="text", show_default=True)
catalog_option = click.option("--catalog", "catalog_id", type=int, default=None,
                              help="Built-in code id (1..11).")
file_option = click.option("--file", "file", type=str, default=None,
                           help="Code file in the canonical text format.")


@main.command()
@catalog_option
@file_option
@click.option("--t", "t", type=int, default=None,
              help="Losses to verify against (default: the code's design t).")
@click.option("--as-printed", is_flag=True,
              help="Use the published form of a catalog code, typos included.")
@click.option("--mode", type=click.Choice(["exact", "numeric"]), default="exact",
              show_default=True)
@click.option("--gamma", default="1/20", show_default=True,
              help="Evaluation point for numeric mode.")
@click.option("--tol", type=float, default=1e-12, show_default=True)
@fmt_option
def verify(catalog_id, file, t, as_printed, mode, gamma, tol, fmt):
    """Check the orthogonality, norm-equality, moment and distance conditions."""
    code = _load_code(catalog_id, file, as_printed)
    if t is None:
        t = code.design_t
    rep = Reporter(fmt)
    _echo_descriptor(rep, code)
    rep.emit("t", t)
    rep.emit("mode", mode)
    if mode == "numeric":
        reports = criteria.verify_numeric(code, t, float(_parse_gamma(gamma)), tol)
    else:
        reports = criteria.verify(code, t)
    ok = True
    for name, report in reports.items():
        if report is None:
            continue
        if report.not_applicable:
            status = "not_applicable"
        else:
            status = "pass" if report.passed else "fail"
            if name in ("orthogonality", "nondeformation") and not report.passed:
                ok = False
        rep.emit(f"check.{name}", status)
        for v in report.violations[:10]:
            rep.emit(f"check.{name}.violation", v.detail,
                     f"  {name} violation: {v.detail}")
        if report.min_distance is not None:
            rep.emit("min_distance", report.min_distance)
    rep.emit("result", "pass" if ok else "fail")
    sys.exit(PASS if ok else FAIL)


@main.group()
def construct_cmd():
    """Build codes: t1 orbit families, t2 reversal pairs, solved weights."""


main.add_command(construct_cmd, name="construct")


def _emit_code(code: Code, out: str | None):
    text = serialize_code(code)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        click.echo(f"wrote {out}")
    else:
        click.echo(text, nl=False)


@construct_cmd.command("t1")
@click.option("--n", type=int, required=True)
@click.option("--m", type=int, required=True)
@click.option("--d", type=int, default=2, show_default=True)
@click.option("--out", type=str, default=None)
def construct_t1(n, m, d, out):
    """Equal-weight codeword per cyclic orbit of Q(n, m), scaled by d."""
    try:
        family = construct.build_t1_family(n, m, d)
    except construct.ConstructionError as exc:
        _fail_usage(str(exc))
    _emit_code(family.code, out)


@construct_cmd.command("t2")
@click.option("--x", "x_text", type=str, required=True,
              help="Comma-separated occupation tuple, e.g. 1,0,2.")
@click.option("--d", type=int, default=3, show_default=True)
@click.option("--out", type=str, default=None)
def construct_t2(x_text, d, out):
    """Two-codeword pair from a tuple's cyclic orbit and its reversal's."""
    try:
        x = tuple(int(v) for v in x_text.split(","))
    except ValueError:
        _fail_usage(f"bad occupation tuple {x_text!r}")
    try:
        code = construct.build_t2_pair(x, d)
    except construct.ConstructionError as exc:
        _fail_usage(str(exc))
    _emit_code(code, out)


def parse_supports(text: str) -> list[list[tuple[int, ...]]]:
    """Supports file: 'word <i>' markers, then one occupation vector per line."""
    supports: list[list[tuple[int, ...]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("word"):
            supports.append([])
            continue
        if not supports:
            raise CodeFormatError("row before any 'word' marker", lineno)
        try:
            supports[-1].append(tuple(int(tok) for tok in line.split()))
        except ValueError:
            raise CodeFormatError(f"bad occupation vector {line!r}", lineno)
    if not supports or any(not s for s in supports):
        raise CodeFormatError("empty supports", 1)
    return supports


@construct_cmd.command("weights")
@click.option("--supports", "supports_file", type=str, required=True)
@click.option("--t", type=int, required=True)
@click.option("--out", type=str, default=None)
def construct_weights(supports_file, t, out):
    """Solve the moment equations for weights over the given QCS supports."""
    try:
        with open(supports_file, encoding="utf-8") as fh:
            supports = parse_supports(fh.read())
    except OSError as exc:
        _fail_usage(f"cannot read {supports_file}: {exc}")
    except CodeFormatError as exc:
        _fail_usage(f"{supports_file}: {exc}")
    result = construct.solve_unbalanced_weights(supports, t)
    for w in result.warnings:
        click.echo(f"warning: {w}", err=True)
    click.echo(f"status: {result.status}")
    if result.status == "infeasible":
        click.echo(result.message)
        sys.exit(FAIL)
    _emit_code(result.as_code(supports, t, name=f"weights-t{t}"), out)


@main.command()
@catalog_option
@file_option
@click.option("--N", "n_total", type=int, default=None,
              help="Total photon number, instead of a code.")
@click.option("--t", "t", type=int, default=None)
@click.option("--gamma", default=None, help="Optionally evaluate F at this gamma.")
@click.option("--figure", type=str, default=None,
              help="Render the fidelity curve to this image file.")
@fmt_option
def fidelity(catalog_id, file, n_total, t, gamma, figure, fmt):
    """Exact fidelity polynomial and its leading deficit C(N, t+1)."""
    rep = Reporter(fmt)
    if n_total is None:
        code = _load_code(catalog_id, file, as_printed=False)
        n_total = code.total_photons
        if t is None:
            t = code.design_t
        _echo_descriptor(rep, code)
    elif t is None:
        _fail_usage("--t is required with --N")
    try:
        result = metrics.fidelity_poly(n_total, t)
    except ValueError as exc:
        _fail_usage(str(exc))
    coeffs = result.coefficients()
    rep.emit("N", n_total)
    rep.emit("t", t)
    rep.emit("deficit", result.leading_deficit,
             f"leading deficit C({n_total},{t + 1}) = {result.leading_deficit}")
    rep.emit("coefficients", ",".join(str(c) for c in coeffs),
             "F(g) = " + format_poly(coeffs))
    if gamma is not None:
        g = _parse_gamma(gamma)
        value = result.polynomial.eval_at(g)
        rep.emit("value", value, f"F({g}) = {value} = {float(value):.10f}")
    if figure:
        from .report import save_fidelity_figure

        save_fidelity_figure(figure, result)
        rep.emit("figure", figure, f"figure written to {figure}")
    sys.exit(PASS)


@main.command()
@catalog_option
@file_option
@fmt_option
def rate(catalog_id, file, fmt):
    """Encoded qubits per qubit-equivalent of Hilbert space."""
    code = _load_code(catalog_id, file, as_printed=False)
    rep = Reporter(fmt)
    _echo_descriptor(rep, code)
    result = metrics.rate(code)
    rep.emit("k", f"{result.k:.4f}")
    rep.emit("rate", f"{result.rate:.4f}")
    sys.exit(PASS)


@main.command()
@click.option("--lo", "l_o", type=int, required=True,
              help="Number of codewords minus one.")
@click.option("--t", type=int, required=True)
@click.option("--m", type=int, required=True)
@fmt_option
def bound(l_o, t, m, fmt):
    """Photon-number upper bound guaranteeing a code exists (loose)."""
    rep = Reporter(fmt)
    try:
        value = construct.existence_min_N(l_o, t, m)
    except ValueError as exc:
        _fail_usage(str(exc))
    rep.emit("N", value, f"codes with m={m} correcting t={t} exist for N >= {value}")
    sys.exit(PASS)


def _parse_weights(text: str | None, count: int) -> list[tuple[Fraction, int]]:
    if text is None:
        return [(Fraction(1), 1)] + [(Fraction(0), 1)] * (count - 1)
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        sign = 1
        if tok.startswith("-"):
            sign, tok = -1, tok[1:]
        try:
            out.append((Fraction(tok), sign))
        except (ValueError, ZeroDivisionError):
            _fail_usage(f"bad weight {tok!r}")
    if len(out) != count:
        _fail_usage(f"{len(out)} weights for {count} codewords")
    return out


@main.command("simulate")
@catalog_option
@file_option
@click.option("--t", type=int, default=None)
@click.option("--gamma", required=True)
@click.option("--shots", type=int, default=1_000_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--weights", "weights_text", type=str, default=None,
              help="Comma-separated squared input coefficients, e.g. 1/2,1/2.")
@click.option("--figure", type=str, default=None,
              help="Render the realized pattern histogram to this image file.")
@fmt_option
def simulate_cmd(catalog_id, file, t, gamma, shots, seed, weights_text, figure, fmt):
    """Monte Carlo over the damped branch distribution with exact bookkeeping."""
    code = _load_code(catalog_id, file, as_printed=False)
    if t is None:
        t = code.design_t
    g = _parse_gamma(gamma)
    weights = _parse_weights(weights_text, len(code.codewords))
    rep = Reporter(fmt)
    _echo_descriptor(rep, code)
    try:
        result = simulate.run_monte_carlo(code, t, weights, g, shots, seed)
    except (simulate.RecoveryError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(FAIL)
    exact = float(result.exact_fidelity)
    sigma = math.sqrt(exact * (1 - exact) / shots) if 0 < exact < 1 else 0.0
    z = (result.estimated_fidelity - exact) / sigma if sigma else 0.0
    rep.emit("t", t)
    rep.emit("gamma", g)
    rep.emit("shots", shots)
    rep.emit("seed", seed)
    rep.emit("successes", result.successes)
    rep.emit("estimate", f"{result.estimated_fidelity:.8f}")
    rep.emit("exact", result.exact_fidelity,
             f"exact: {result.exact_fidelity} = {exact:.10f}")
    rep.emit("z", f"{z:+.4f}", f"z-score: {z:+.4f}")
    if figure:
        from .report import save_simulation_figure

        save_simulation_figure(figure, result, t)
        rep.emit("figure", figure, f"figure written to {figure}")
    sys.exit(PASS)


@main.group("catalog")
def catalog_cmd():
    """Inspect and verify the built-in published codes."""


@catalog_cmd.command("list")
@fmt_option
def catalog_list(fmt):
    rep = Reporter(fmt)
    for i in catalog_ids():
        entry = catalog_entry(i)
        code = entry.default
        flag = f"  [{entry.note}]" if entry.note else ""
        rep.emit(f"catalog.{i}",
                 f"{code.descriptor} t={entry.design_t} {code.name}",
                 f"{i:2d}  {code.descriptor:>16s}  t={entry.design_t}  "
                 f"{code.name}{flag}")
    sys.exit(PASS)


@catalog_cmd.command("show")
@click.argument("code_id", type=int)
@click.option("--as-printed", is_flag=True)
def catalog_show(code_id, as_printed):
    try:
        entry = catalog_entry(code_id)
    except KeyError as exc:
        _fail_usage(str(exc))
    click.echo(serialize_code(entry.printed if as_printed else entry.default),
               nl=False)
    sys.exit(PASS)


@catalog_cmd.command("verify-all")
@fmt_option
def catalog_verify_all(fmt):
    """Verify every entry at its design t; published typos count as flags."""
    rep = Reporter(fmt)
    passed = flagged = broken = 0
    for i in catalog_ids():
        entry = catalog_entry(i)
        printed_ok = criteria.passes(entry.printed, entry.design_t) \
            if not entry.printed.structural_issues() else False
        default_ok = printed_ok if entry.corrected is None else \
            criteria.passes(entry.corrected, entry.design_t)
        if printed_ok and not entry.note:
            passed += 1
            status = "pass"
        elif entry.note:
            flagged += 1
            status = "flagged" + (" (corrected form passes)" if
                                  entry.corrected is not None and default_ok else "")
        else:
            broken += 1
            status = "FAIL"
        rep.emit(f"catalog.{i}", status.split()[0],
                 f"{i:2d}  {status:<32s} {entry.note}")
        if entry.note and entry.corrected is None:
            repair = _attempt_repair(entry)
            rep.emit(f"catalog.{i}.repair", repair, f"    repair attempt: {repair}")
    rep.emit("passed", passed)
    rep.emit("flagged", flagged)
    rep.emit("failed", broken)
    sys.exit(PASS if broken == 0 else FAIL)


def _attempt_repair(entry) -> str:
    """Re-solve the weights on the published supports at the design t."""
    supports = [list(cw.support()) for cw in entry.printed.codewords]
    result = construct.solve_unbalanced_weights(supports, entry.design_t)
    if result.status == "infeasible":
        return f"infeasible ({result.message})"
    ws = ["[" + ", ".join(str(w) for w in word) + "]" for word in result.weights]
    return f"{result.status}: weights " + " ".join(ws)


if __name__ == "__main__":
    main()

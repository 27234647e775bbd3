# cli.py
# Command line front end

"""
negabeta command line.

Every subcommand prints JSON on stdout (sorted keys, no timestamps) unless
--pretty asks for rich tables. Logs go to stderr.

Exit codes: 0 success, 1 negative answer (admissible, verify), 2 usage or
parse errors, 3 undecided reference word, 4 trivial (-beta)-integer set.
"""

import csv
import io
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

import click
from rich.console import Console
from rich.table import Table

from admissibility import is_admissible_beta, is_admissible_negbeta
from config import RunConfig, load_config, merge_overrides
from errors import IoFailure, NotParry, NumerationError, ParseError, TrivialSet, UndecidedReference
from expansion import (
    expand_real_beta,
    expand_real_negbeta,
    reference_l,
    reference_r_star,
    renyi_one,
    renyi_one_star,
)
from field_kernel import make_base
from fractal import EXPORT_FORMATS, export, hull_area, point_cloud
from integer_sets import (
    DELTA_METHODS,
    enumerate_beta_integers,
    enumerate_negbeta_integers,
    gap_coincidences,
    satisfies_finite_hypothesis,
    satisfies_infinite_hypothesis,
    triviality_report,
    verify_window,
)
from log_config import configure_logging
from substitution import (
    DEFAULT_HORIZON,
    antimorphism_phi,
    canonical_substitution_beta,
    conjugacy_witness,
    finite_morphism,
)
from utility_converter import (
    format_word,
    morphism_to_json,
    parse_digit_word,
    parse_field_element,
    parse_polynomial,
    window_from_json,
    window_to_json,
)
from visualization import render_integer_window

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_UNDECIDED = 3
EXIT_TRIVIAL = 4


def exit_code_for(exc):
    if isinstance(exc, UndecidedReference):
        return EXIT_UNDECIDED
    if isinstance(exc, TrivialSet):
        return EXIT_TRIVIAL
    return EXIT_USAGE


@dataclass
class State:
    config: RunConfig
    pretty: bool = False


class NumerationGroup(click.Group):
    """Group that turns library errors into the documented exit codes."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except NumerationError as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(exit_code_for(exc))


def base_options(command):
    """Options selecting the base, accepted by every subcommand."""
    options = [
        click.option("--poly", default=None, help="Polynomial of beta, e.g. x^3-x^2-x-1"),
        click.option("--root", default=None, help="largest-real or an index into the ascending real roots"),
        click.option("--sign", type=click.Choice(["pos", "neg"]), default=None),
        click.option("--orbit-budget", type=int, default=None),
        click.option("--refinement-bits", type=int, default=None),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def _config(state, **flags):
    return merge_overrides(
        state.config,
        base_poly=flags.get("poly"),
        root_selector=flags.get("root"),
        sign=flags.get("sign"),
        orbit_budget=flags.get("orbit_budget"),
        refinement_bits=flags.get("refinement_bits"),
    )


def _base(config):
    return make_base(
        parse_polynomial(config.base_poly),
        config.root_selector,
        refinement_bits=config.refinement_bits,
        orbit_budget=config.orbit_budget,
    )


def _emit(state, payload, title=None):
    if state.pretty:
        table = Table(title=title, show_header=True)
        table.add_column("key", style="bold")
        table.add_column("value")
        for key, value in payload.items():
            text = value if isinstance(value, str) else json.dumps(value, sort_keys=True)
            table.add_row(str(key), text)
        Console().print(table)
    else:
        click.echo(json.dumps(payload, sort_keys=True, indent=2))


def _write(path, text):
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
    logger.info("Wrote %s", path)


@click.group(cls=NumerationGroup)
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None, help="key=value settings file")
@click.option("--pretty", is_flag=True, help="Human readable tables instead of JSON")
@click.option("--log-level", default=None)
@click.option("--json-logs/--no-json-logs", default=None)
@click.pass_context
def main(ctx, config_path, pretty, log_level, json_logs):
    """Exact beta- and (-beta)-expansions, their integers and the morphisms fixing them."""
    config = load_config(config_path) if config_path else RunConfig()
    config = merge_overrides(config, log_level=log_level, json_logs=json_logs)
    configure_logging(config.log_level, config.json_logs)
    ctx.obj = State(config, pretty)


@main.command()
@base_options
@click.pass_obj
def base(state, **flags):
    """Facts about the base."""
    ctx = _base(_config(state, **flags))
    report = triviality_report(ctx)
    _emit(
        state,
        {
            "polynomial": str(ctx.poly),
            "root_index": ctx.root_index,
            "beta": float(ctx.beta),
            "floor": ctx.beta_floor,
            "negative_digits": list(range(ctx.alphabet_max + 1)),
            "positive_digits": list(range(ctx.positive_alphabet_max + 1)),
            "l": str(ctx.l),
            "r": str(ctx.r),
            "trivial": report.trivial,
            "infinite_hypothesis": satisfies_infinite_hypothesis(ctx),
            "finite_hypothesis": satisfies_finite_hypothesis(ctx),
        },
        "base",
    )


@main.command()
@base_options
@click.argument("value")
@click.pass_obj
def expand(state, value, **flags):
    """Pointed expansion of VALUE, an expression in b (the base)."""
    config = _config(state, **flags)
    ctx = _base(config)
    x = parse_field_element(ctx, value)
    pointed = expand_real_negbeta(ctx, x) if config.sign == "neg" else expand_real_beta(ctx, x)
    _emit(state, {"value": str(x), "sign": config.sign, "expansion": str(pointed)}, "expansion")


@main.command()
@base_options
@click.pass_obj
def reference(state, **flags):
    """Reference words: d(l) and d*(r) for neg, d(1) and d*(1) for pos."""
    config = _config(state, **flags)
    ctx = _base(config)
    if config.sign == "neg":
        payload = {"sign": "neg", "l": str(reference_l(ctx)), "r_star": str(reference_r_star(ctx))}
    else:
        payload = {"sign": "pos", "one": str(renyi_one(ctx)), "one_star": str(renyi_one_star(ctx))}
    _emit(state, payload, "reference words")


@main.command()
@base_options
@click.option("--word", required=True, help='Digit word such as "10(1)"')
@click.pass_obj
@click.pass_context
def admissible(click_ctx, state, word, **flags):
    """Exit 0 if WORD is admissible, 1 if not."""
    config = _config(state, **flags)
    ctx = _base(config)
    w = parse_digit_word(word)
    result = is_admissible_negbeta(ctx, w) if config.sign == "neg" else is_admissible_beta(ctx, w)
    _emit(state, {"word": str(w), "sign": config.sign, "admissible": result}, "admissibility")
    click_ctx.exit(EXIT_OK if result else EXIT_NO)


def _window_csv(window):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["digits", "value_approx", "gap_letter"])
    for n, (value, digits) in enumerate(window.points):
        letter = window.gap_letters[n] if n < len(window.gap_letters) else ""
        writer.writerow([format_word(digits), repr(float(value)), letter])
    return buffer.getvalue()


@main.command()
@base_options
@click.option("--count", type=int, default=None, help="Integers on each side of 0 (positive side for pos)")
@click.option("--bound", default=None, help="All integers of absolute value at most BOUND")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.option("--output", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
def integers(state, count, bound, fmt, output, **flags):
    """Window of (-beta)-integers or beta-integers with its gap letters."""
    config = _config(state, **flags)
    ctx = _base(config)
    if count is None and bound is None:
        count = 20
    limit = parse_field_element(ctx, bound) if bound is not None else None
    if config.sign == "neg":
        window = enumerate_negbeta_integers(ctx, count=count, bound=limit)
    else:
        window = enumerate_beta_integers(ctx, count=count, bound=limit)
    text = _window_csv(window) if fmt == "csv" else json.dumps(window_to_json(ctx, window), sort_keys=True, indent=2) + "\n"
    target = output or config.output
    if target:
        _write(target, text)
    else:
        click.echo(text, nl=False)


@main.command()
@base_options
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
@click.pass_context
def verify(click_ctx, state, path, **flags):
    """Re-validate an integers JSON file; exit 1 if anything is wrong."""
    ctx = _base(_config(state, **flags))
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise IoFailure(f"cannot read window {path}: {exc}") from exc
    points, letters, sign = window_from_json(ctx, data)
    problems = verify_window(ctx, points, letters, negative=sign == "neg")
    _emit(state, {"points": len(points), "valid": not problems, "problems": problems}, "verification")
    click_ctx.exit(EXIT_OK if not problems else EXIT_NO)


@main.command()
@base_options
@click.option("--k-max", type=int, default=12)
@click.option("--method", type=click.Choice(list(DELTA_METHODS)), default=None)
@click.pass_obj
def distances(state, k_max, method, **flags):
    """Gap values Delta_k with their coincidence classes."""
    ctx = _base(_config(state, **flags))
    table = gap_coincidences(ctx, k_max, method)
    _emit(
        state,
        {
            "delta": {str(k): str(value) for k, value in table.entries.items()},
            "delta_approx": {str(k): float(value) for k, value in table.entries.items()},
            "classes": [{"value": str(value), "letters": list(ks)} for value, ks in table.distinct_values],
            "pattern": table.coincidence_check.pattern,
            "predicted_hold": table.coincidence_check.holds,
            "bounded_by_two": table.bounded_by_two,
        },
        "gap distances",
    )


@main.command()
@base_options
@click.option("--horizon", type=int, default=DEFAULT_HORIZON, help="Largest letter whose rule is derived")
@click.option("--max-conjugacy", type=int, default=10, help="Longest conjugating word tried")
@click.pass_obj
def morphism(state, horizon, max_conjugacy, **flags):
    """Antimorphism over N, its projection and the finite morphisms."""
    ctx = _base(_config(state, **flags))
    finite = finite_morphism(ctx, horizon)
    payload = {
        "Phi": {str(k): format_word(antimorphism_phi(ctx, k)) for k in range(horizon + 1)},
        "projection": {str(k): v for k, v in finite.projection.mapping.items()},
        "phi": morphism_to_json(finite.phi),
        "psi": morphism_to_json(finite.psi),
        "primitive": finite.primitive,
        "frequencies": {str(a): f for a, f in finite.psi.perron_frequencies().items()},
    }
    try:
        canonical = canonical_substitution_beta(ctx)
    except NotParry:
        canonical = None
    payload["canonical"] = morphism_to_json(canonical) if canonical else None
    witness = None
    if canonical is not None and set(canonical.alphabet) == set(finite.psi.alphabet):
        witness = conjugacy_witness(finite.psi, canonical.square(), max_conjugacy)
    payload["conjugacy_witness"] = format_word(witness) if witness is not None else None
    _emit(state, payload, "morphisms")


@main.command()
@base_options
@click.option("--count", type=int, default=1000)
@click.option("--format", "fmt", type=click.Choice(["csv", "json", "svg", "png"]), default=None)
@click.option("--output", type=click.Path(dir_okay=False), required=True)
@click.option("--embedding", "embeddings", type=int, multiple=True, help="Embedding index, repeat for two")
@click.pass_obj
def fractal(state, count, fmt, output, embeddings, **flags):
    """Conjugate embeddings of the integers, written to OUTPUT."""
    config = _config(state, **flags)
    ctx = _base(config)
    fmt = fmt or Path(output).suffix.lstrip(".") or config.output_format
    if fmt not in EXPORT_FORMATS:
        raise ParseError(f"unknown point cloud format {fmt!r}", key="format")
    cloud = point_cloud(ctx, config.sign, count, embeddings or None, prec_bits=config.embedding_bits)
    export(cloud, fmt, output)
    _emit(
        state,
        {"points": len(cloud), "bound": cloud.bound, "hull_area": hull_area(cloud), "output": str(output), "format": fmt},
        "point cloud",
    )


@main.command()
@base_options
@click.option("--count", type=int, default=20)
@click.option("--output", type=click.Path(dir_okay=False), required=True)
@click.pass_obj
def plot(state, count, output, **flags):
    """PNG of an integer window with gaps coloured by letter."""
    config = _config(state, **flags)
    ctx = _base(config)
    if config.sign == "neg":
        window = enumerate_negbeta_integers(ctx, count=count)
    else:
        window = enumerate_beta_integers(ctx, count=count)
    render_integer_window(window, output, title=f"{config.sign} integers of {ctx.poly}")
    _emit(state, {"points": len(window.points), "output": str(output)}, "plot")


def run(argv=None):
    """
    Run the command line and return its exit code instead of exiting.

    Args:
        argv: Arguments without the program name; sys.argv[1:] when omitted

    Returns:
        int exit code
    """
    try:
        result = main.main(args=argv, prog_name="negabeta", standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.Abort:
        return EXIT_NO
    return result if isinstance(result, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(run())

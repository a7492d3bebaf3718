"""Command-line front door.

Exit codes follow one rule everywhere: 0 when the input is satisfied or
coherent, 1 when a violation, incoherence, or sure-loss book was found,
2 when the input itself is unusable.  Every command takes --json for a
schema-stable machine rendering of the same facts the text shows.
"""
from __future__ import annotations

import json
import sys
from fractions import Fraction
from importlib.resources import files

import click

from . import axioms, bayes, coherence, elicit, qualitative, representation, scoring
from .problem import DecisionProblem, ProblemFormatError, load_document, problem_from_document
from .qualitative import AgreementFailure, ProbabilityMeasure
from .rational import RationalFormatError, format_decimal, format_rational, parse_rational
from .reports import VIOLATED, ViolationReport


def _fail_input(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


def _load_document(path: str) -> dict:
    try:
        return load_document(path)
    except FileNotFoundError:
        _fail_input(f"no such file: {path}")
    except (ProblemFormatError, RationalFormatError, ValueError) as exc:
        _fail_input(f"{path}: {exc}")


def _load_problem_doc(path: str) -> tuple[DecisionProblem, dict]:
    doc = _load_document(path)
    try:
        return problem_from_document(doc), doc
    except ProblemFormatError as exc:
        _fail_input(f"{path}: {exc}")


def _measure_from_doc(doc: dict, key: str = "probability") -> ProbabilityMeasure:
    return ProbabilityMeasure.build(doc[key])


def _emit(as_json: bool, doc: dict, text_lines: list[str]) -> None:
    if as_json:
        click.echo(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            click.echo(line)


def _report_lines(report: ViolationReport) -> list[str]:
    lines = [f"{report.axiom}: {report.verdict}"]
    for w in report.witnesses:
        parts = ", ".join(f"{k}={v}" for k, v in w.detail)
        text = f"  witness [{w.kind}] {parts}"
        if w.note:
            text += f" ({w.note})"
        lines.append(text)
    if report.undecided:
        lines.append(f"  undecided instances: {len(report.undecided)}")
    return lines


def _corpus_path(name: str):
    return files("seu").joinpath("corpus", f"{name}.json")


@click.group()
@click.version_option(package_name="seu", prog_name="seu")
def main() -> None:
    """Coherence tools for preferences, betting prices, and beliefs."""


@main.command()
@click.argument("path", type=click.Path())
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
@click.option(
    "--audit/--no-audit",
    default=False,
    help="also replay strict preferences under small-event modifications "
    "(requires a probability entry in the document)",
)
@click.option(
    "--threshold",
    default="1/20",
    show_default=True,
    help="largest event mass still counted as small for the audit",
)
def check(path: str, as_json: bool, audit: bool, threshold: str) -> None:
    """Check recorded preferences against the rationality postulates."""
    problem, doc = _load_problem_doc(path)
    reports = axioms.check_all(problem)
    if audit:
        if "probability" not in doc:
            _fail_input(f"{path}: the audit needs a 'probability' entry")
        try:
            measure = _measure_from_doc(doc)
            bound = parse_rational(threshold)
        except (RationalFormatError, ValueError) as exc:
            _fail_input(str(exc))
        small = [e for e in problem.events if measure.of(e.members) <= bound]
        reports.append(
            axioms.small_event_continuity_audit(problem, small, measure, bound)
        )
    lines: list[str] = []
    for report in reports:
        lines.extend(_report_lines(report))
    violated = any(r.verdict == VIOLATED for r in reports)
    _emit(as_json, {"reports": [r.to_document() for r in reports]}, lines)
    sys.exit(1 if violated else 0)


@main.command()
@click.argument("path", type=click.Path())
@click.option("--json", "as_json", is_flag=True)
@click.option(
    "--utility",
    "utility_path",
    type=click.Path(),
    default=None,
    help="fix the utility (JSON map consequence -> value) and fit only the measure",
)
@click.option(
    "--measure",
    "measure_path",
    type=click.Path(),
    default=None,
    help="fix the measure (JSON map state -> mass) and fit only the utility",
)
@click.option("--cap", default=64, show_default=True, help="joint-fit size cap |S|*|F|")
def fit(path: str, as_json: bool, utility_path, measure_path, cap: int) -> None:
    """Fit a probability/utility pair whose expected utility matches the data."""
    problem, _ = _load_problem_doc(path)
    if utility_path and measure_path:
        _fail_input("give at most one of --utility and --measure")
    try:
        if utility_path:
            utility = representation.UtilityFunction.build(_load_document(utility_path))
            outcome = representation.fit_probability(problem, utility)
            found = isinstance(outcome, ProbabilityMeasure)
            doc = (
                {"measure": {s: format_rational(m) for s, m in outcome.masses.items()}}
                if found
                else {"infeasible": outcome.reason}
            )
            lines = (
                [f"measure: {doc['measure']}"] if found else [f"infeasible: {outcome.reason}"]
            )
        elif measure_path:
            measure = ProbabilityMeasure.build(_load_document(measure_path))
            outcome = representation.fit_utility(problem, measure)
            found = isinstance(outcome, representation.UtilityFunction)
            doc = (
                {"utility": {c: format_rational(v) for c, v in outcome.values.items()}}
                if found
                else {"infeasible": outcome.reason}
            )
            lines = (
                [f"utility: {doc['utility']}"] if found else [f"infeasible: {outcome.reason}"]
            )
        else:
            rep = representation.fit_joint(problem, cap=cap)
            found = rep is not None
            if found:
                doc = rep.to_document()
                lines = [f"measure: {doc['measure']}", f"utility: {doc['utility']}"]
            else:
                doc = {"not_found": "no agreeing measure/utility pair was found"}
                lines = ["not found: no agreeing measure/utility pair was found"]
    except (RationalFormatError, ValueError) as exc:
        _fail_input(str(exc))
    _emit(as_json, doc, lines)
    sys.exit(0 if found else 1)


@main.command(name="dutch-book")
@click.argument("path", type=click.Path())
@click.option("--json", "as_json", is_flag=True)
def dutch_book(path: str, as_json: bool) -> None:
    """Search posted betting prices for a guaranteed-profit stake vector."""
    doc = _load_document(path)
    try:
        system = coherence.PriceSystem.from_document(doc)
    except (ProblemFormatError, ValueError) as exc:
        _fail_input(f"{path}: {exc}")
    book = coherence.dutch_book_search(system)
    if book is None:
        outcome = coherence.coherence_check(system)
        masses = (
            {s: format_rational(m) for s, m in outcome.masses.items()}
            if isinstance(outcome, ProbabilityMeasure)
            else None
        )
        _emit(
            as_json,
            {"book": None, "coherent": True, "witness_measure": masses},
            ["no book exists; the prices are coherent"]
            + ([f"witness measure: {masses}"] if masses else []),
        )
        sys.exit(0)
    _emit(
        as_json,
        {"book": book.to_document(), "coherent": False},
        ["sure-loss book found:"] + ["  " + line for line in book.ledger()],
    )
    sys.exit(1)


@main.command()
@click.argument("path", type=click.Path())
@click.option("--json", "as_json", is_flag=True)
def score(path: str, as_json: bool) -> None:
    """Score a lottery file under expected utility and decision weights."""
    doc = _load_document(path)
    try:
        branches = [(b["probability"], b["payoff"]) for b in doc["branches"]]
        lottery = scoring.Lottery.build(branches, name=doc.get("name", ""))
    except (KeyError, TypeError, ValueError, RationalFormatError) as exc:
        _fail_input(f"{path}: {exc}")
    out = {"eu": format_rational(scoring.eu_score(lottery))}
    lines = [f"expected value: {out['eu']}"]
    if "weights" in doc:
        try:
            w = scoring.WeightFunction.build(
                doc["weights"]["anchors"],
                doc["weights"].get("at_zero", 0),
                doc["weights"].get("at_one", 1),
            )
        except (KeyError, TypeError, ValueError, RationalFormatError) as exc:
            _fail_input(f"{path}: weights: {exc}")
        out["weighted"] = format_rational(scoring.prospect_score(lottery, None, w))
        lines.append(f"decision-weighted value: {out['weighted']}")
    _emit(as_json, out, lines)
    sys.exit(0)


def _dollars(value: Fraction) -> str:
    if value.denominator == 1:
        return f"${value.numerator:,}"
    return f"${format_decimal(value, 2)}"


def _demo_allais(as_json: bool) -> int:
    doc = json.loads(_corpus_path("allais").read_text())
    problem = problem_from_document(doc)
    measure = _measure_from_doc(doc)
    values = problem.consequences.values

    probs = {s: measure.mass(s) for s in problem.states}
    money = {
        act.name: scoring.MoneyAct.build(
            act.name, problem.states.labels, [values[act.payoff(s)] for s in problem.states]
        )
        for act in problem.acts
    }
    scores = {
        name: scoring.eu_score(money[name].as_lottery(probs)) for name in ("I", "II", "III", "IV")
    }
    analysis = scoring.allais_analysis({"S1": "I", "S2": "IV"})
    p2 = axioms.check_p2(problem)
    small = [problem.event("ticket-1")]
    audit = axioms.small_event_continuity_audit(problem, small, measure)
    combined_a = scoring.combine_simultaneous([money["I"], money["IV"]])
    combined_b = scoring.combine_simultaneous([money["II"], money["III"]])

    lines = [doc["description"], "", "payoffs by ticket group:"]
    header = "  act  " + "  ".join(f"{s:>14}" for s in problem.states.labels)
    lines.append(header)
    for name in ("I", "II", "III", "IV"):
        row = "  ".join(f"{_dollars(x):>14}" for x in money[name].payoffs)
        lines.append(f"  {name:<4} {row}")
    lines.append("")
    lines.append("expected values at the ticket odds (linear utility):")
    for name in ("I", "II", "III", "IV"):
        lines.append(f"  EU({name}) = {_dollars(scores[name])}")
    lines.append("")
    lines.append("recorded choices: I over II, and IV over III")
    lines.extend(_report_lines(p2))
    lines.append(f"implied contradiction: {analysis.contradiction}")
    lines.append(
        "rationalizable only with decision weights obeying "
        f"{analysis.subcertainty_requirement}"
    )
    lines.append("")
    lines.extend(_report_lines(audit))
    lines.append("")
    lines.append("bundling both situations on one draw:")
    lines.append(
        f"  I+IV  pays ({', '.join(_dollars(x) for x in combined_a.payoffs)})"
    )
    lines.append(
        f"  II+III pays ({', '.join(_dollars(x) for x in combined_b.payoffs)})"
    )
    lines.append("  the two portfolios are identical, so choosing {I, IV} is paying for framing")

    out = {
        "scores": {k: format_rational(v) for k, v in scores.items()},
        "analysis": analysis.to_document(),
        "p2": p2.to_document(),
        "audit": audit.to_document(),
        "combined": {
            "I+IV": [format_rational(x) for x in combined_a.payoffs],
            "II+III": [format_rational(x) for x in combined_b.payoffs],
        },
    }
    _emit(as_json, out, lines)
    return 1 if p2.verdict == VIOLATED else 0


def _demo_ellsberg(as_json: bool) -> int:
    doc = json.loads(_corpus_path("ellsberg").read_text())
    system = coherence.PriceSystem.from_document(doc)
    book = coherence.dutch_book_search(system)
    analysis = scoring.ellsberg_analysis(doc["choices"])
    urn = bayes.laplace_urn(60)
    marginal = urn.full_urn_marginal(30)

    lines = [doc["description"], "", "posted prices:"]
    for offer in system.offers:
        lines.append(f"  {offer.describe()}")
    lines.append("")
    if book:
        lines.append("sure-loss book against these prices:")
        lines.extend("  " + line for line in book.ledger())
    else:
        lines.append("no book exists against these prices")
    lines.append("")
    lines.append(
        f"choice pattern ({analysis.choices[0]}, {analysis.choices[1]}): {analysis.pattern}"
    )
    for j in analysis.event_order.judgments:
        lines.append(f"  implied event order: {j.describe()}")
    if not analysis.consistent:
        lines.append(f"  {analysis.agreement.reason}")
    lines.append("")
    lines.append(
        "a uniform prior over the 60 unknown balls gives every composition "
        f"probability {format_rational(urn.composition_probability(0))}, expected "
        f"black count {format_rational(urn.expected_black())}, and a black-draw "
        f"marginal of {format_rational(marginal)}; the odds match the red bet, "
        "so the aversion buys nothing"
    )
    out = {
        "prices": system.to_document(),
        "book": book.to_document() if book else None,
        "analysis": analysis.to_document(),
        "urn": {
            "composition_probability": format_rational(urn.composition_probability(0)),
            "expected_black": format_rational(urn.expected_black()),
            "marginal_black": format_rational(marginal),
        },
    }
    _emit(as_json, out, lines)
    return 1 if book or not analysis.consistent else 0


def _demo_ryder(as_json: bool) -> int:
    doc = json.loads(_corpus_path("ryder").read_text())
    price_a = parse_rational(doc["price_a"])
    price_b = parse_rational(doc["price_b"])
    stake = parse_rational(doc["stake"])
    book = coherence.two_agent_dutch_book(price_a, price_b, stake)
    lines = [
        doc["description"],
        "",
        f"agent A prices the event at {format_rational(price_a)}"
        f" ({format_decimal(price_a)})",
        f"agent B prices the event at {format_rational(price_b)}"
        f" ({format_decimal(price_b)})",
        "",
    ]
    if book:
        lines.append("an outsider can trade against both at their own prices:")
        lines.extend("  " + line for line in book.ledger())
        lines.append(
            "the two agents jointly lose the spread no matter how the event turns out"
        )
    else:
        lines.append("equal prices: no spread to collect, no book")
    out = {
        "price_a": format_rational(price_a),
        "price_b": format_rational(price_b),
        "stake": format_rational(stake),
        "book": book.to_document() if book else None,
    }
    _emit(as_json, out, lines)
    return 1 if book else 0


def _demo_laplace(as_json: bool) -> int:
    urn = bayes.laplace_urn(60)
    lines = [
        "urn with 30 red balls and 60 balls black or yellow in unknown proportion",
        "",
        f"uniform prior over compositions: P(k black) = "
        f"{format_rational(urn.composition_probability(0))} for every k in 0..60",
        f"expected number of black balls: {format_rational(urn.expected_black())}",
        f"draw from the unknown 60 only: P(black) = {format_rational(urn.marginal_black())}",
        f"draw from the whole urn: P(black) = {format_rational(urn.full_urn_marginal(30))}"
        f" = P(red)",
        "",
        "under this prior a bet on black is worth exactly a bet on red",
    ]
    out = {
        "n_unknown": 60,
        "composition_probability": format_rational(urn.composition_probability(0)),
        "expected_black": format_rational(urn.expected_black()),
        "marginal_black_unknown_part": format_rational(urn.marginal_black()),
        "marginal_black_full_urn": format_rational(urn.full_urn_marginal(30)),
    }
    _emit(as_json, out, lines)
    return 0


_DEMOS = {
    "allais": _demo_allais,
    "ellsberg": _demo_ellsberg,
    "ryder": _demo_ryder,
    "laplace": _demo_laplace,
}


@main.command()
@click.argument("name", type=click.Choice(sorted(_DEMOS)))
@click.option("--json", "as_json", is_flag=True)
def demo(name: str, as_json: bool) -> None:
    """Walk through one of the bundled worked examples."""
    sys.exit(_DEMOS[name](as_json))


@main.command(name="elicit")
@click.option("--event", "event_description", default="the event occurs", show_default=True)
@click.option("--width", default="1/1024", show_default=True, help="target interval width")
@click.option("--payoff", default="100", show_default=True, help="payoff scale in dollars")
@click.option(
    "--scripted",
    default=None,
    help="answer automatically as an agent with this probability (e.g. 1/4)",
)
@click.option("--json", "as_json", is_flag=True)
def elicit_command(event_description, width, payoff, scripted, as_json) -> None:
    """Run the betting-price interview in the terminal."""
    try:
        session = elicit.create_session(event_description, width, payoff)
    except (ValueError, RationalFormatError) as exc:
        _fail_input(str(exc))
    if scripted is not None:
        try:
            respond = elicit.scripted_respondent(scripted)
        except (ValueError, RationalFormatError) as exc:
            _fail_input(str(exc))
        session = elicit.run_script(session, respond)
        if not as_json:
            for price, response in session.transcript:
                click.echo(f"offered {format_rational(price)}: {response}")
    else:
        while session.status == elicit.ACTIVE:
            query = elicit.next_query(session)
            click.echo(query.framing)
            answer = click.prompt(
                "answer",
                type=click.Choice(list(elicit.RESPONSES) + ["stop"]),
                show_choices=True,
            )
            if answer == "stop":
                session = elicit.abandon(session)
                break
            session = elicit.submit_answer(session, answer)
    summary = elicit.report(session)
    if as_json:
        click.echo(json.dumps(summary, indent=2, sort_keys=True))
    else:
        click.echo(
            f"interval [{summary['interval']['lo']}, {summary['interval']['hi']}]"
            f" after {summary['answers']} answers ({summary['status']})"
        )
        if summary["fair_price"] is not None:
            click.echo(
                f"estimate {summary['estimate']}; fair price ${summary['fair_price']}"
                f" on a ${summary['payoff_scale']} payoff"
            )
    sys.exit(0)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve(host: str, port: int) -> None:
    """Serve the elicitation HTTP API."""
    import uvicorn

    from .api import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()

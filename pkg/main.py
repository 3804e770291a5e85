"""
Octodp — CLI Entry Point
Run the octanomial pipelines from the command line.
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from acceptance import SuiteScale
from config import settings
from errors import InvariantViolation, PreconditionError
from lines.census import full_census
from model.moduli import ModuliVector
from orchestrator import (
    EXIT_INVARIANT,
    EXIT_OK,
    EXIT_PRECONDITION,
    OctodpOrchestrator,
    exit_status,
)
from polytope.symmetry import triangulation_census
from sampler.search import TARGETS, search
from stages.blowdown_stage import BlowdownStage
from tropical.arrangements import arrangement_trees, classify_moduli
from utils.exporters import dumps_json, newick_lines, schlafli_dot, write_text
from utils.pdf_generator import generate_classification_pdf

logger = logging.getLogger(__name__)

COMMANDS = ("build", "classify", "lines", "trees", "triangulations", "sample", "blowdown", "verify")
MODULI_COMMANDS = frozenset({"build", "classify", "lines", "trees", "blowdown"})
FORMATS = {
    "classify": ("json", "pdf"),
    "lines": ("json", "dot"),
    "trees": ("json", "newick"),
}


def setup_logging(verbose: bool = False) -> None:
    level = logging.DEBUG if verbose else getattr(logging, settings.log_level.upper(), logging.INFO)
    logging.basicConfig(
        level=level,
        format="%(asctime)s │ %(name)-30s │ %(levelname)-7s │ %(message)s",
        datefmt="%H:%M:%S",
        stream=sys.stderr,
    )
    # Quiet noisy libraries
    for name in ("sympy", "reportlab", "PIL"):
        logging.getLogger(name).setLevel(logging.WARNING)


@dataclass(frozen=True)
class RunConfig:
    """One parsed command line."""

    command: str
    moduli: ModuliVector | None = None
    prime: int = 5
    seed: int = 20240229
    output: Path | None = None
    format: str = "json"
    target: str = "naruki-general"
    budget: int = 100
    threads: int | None = None
    trees: bool = False
    quick: bool = False
    only: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise PreconditionError(f"Unknown command {self.command!r}")
        settings.validate_prime(self.prime)
        if self.command in MODULI_COMMANDS and self.moduli is None:
            raise PreconditionError(f"{self.command} needs moduli (-d d1,...,d6)")
        allowed = FORMATS.get(self.command, ("json",))
        if self.format not in allowed:
            raise PreconditionError(
                f"{self.command} writes {' or '.join(allowed)}, not {self.format}"
            )

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(
            command=args.command,
            moduli=ModuliVector.parse(args.moduli) if getattr(args, "moduli", None) else None,
            prime=settings.prime if args.prime is None else args.prime,
            seed=settings.seed if args.seed is None else args.seed,
            output=Path(args.output) if args.output else None,
            format=getattr(args, "format", "json"),
            target=getattr(args, "target", "naruki-general"),
            budget=getattr(args, "budget", 100),
            threads=getattr(args, "threads", None),
            trees=getattr(args, "trees", False),
            quick=getattr(args, "quick", False),
            only=tuple(args.only) if getattr(args, "only", None) else None,
        )


# ----------------------------------------------------------------------
# Command handlers: each returns (exit status, report text)
# ----------------------------------------------------------------------

def _build(config: RunConfig) -> tuple[int, str]:
    results = OctodpOrchestrator(config.prime).run_pipeline(config.moduli, config.trees)
    print_results(results)
    return exit_status(results), dumps_json(results)


def _classify(config: RunConfig) -> tuple[int, str]:
    report = classify_moduli(config.moduli, config.prime)
    if config.format == "pdf":
        path = config.output or settings.output_dir / "classification.pdf"
        generate_classification_pdf(report, path)
        return EXIT_OK, ""
    return EXIT_OK, dumps_json(report.to_json(include_trees=config.trees))


def _lines(config: RunConfig) -> tuple[int, str]:
    census = full_census(config.moduli)
    if config.format == "dot":
        return EXIT_OK, schlafli_dot(census)
    return EXIT_OK, dumps_json(census.to_json())


def _trees(config: RunConfig) -> tuple[int, str]:
    trees = arrangement_trees(full_census(config.moduli), config.prime)
    if config.format == "newick":
        return EXIT_OK, newick_lines(trees)
    return EXIT_OK, dumps_json({str(label): tree.to_json() for label, tree in trees.items()})


def _triangulations(config: RunConfig) -> tuple[int, str]:
    census = triangulation_census()
    unimodular = [s for s in census if s.unimodular]
    return EXIT_OK, dumps_json({
        "regular_triangulations": sum(s.size for s in census),
        "orbits": len(census),
        "unimodular_triangulations": sum(s.size for s in unimodular),
        "unimodular_orbits": len(unimodular),
        "census": [s.to_json() for s in census],
    })


def _sample(config: RunConfig) -> tuple[int, str]:
    findings = search(
        config.target, config.budget, stream=config.seed, prime=config.prime, threads=config.threads
    )
    return EXIT_OK, "".join(json.dumps(f.to_json(), ensure_ascii=False) + "\n" for f in findings)


def _blowdown(config: RunConfig) -> tuple[int, str]:
    result = BlowdownStage(config.prime).run({"moduli": config.moduli, "seed": config.seed})
    return EXIT_OK, dumps_json(result)


def _verify(config: RunConfig) -> tuple[int, str]:
    scale = SuiteScale.reduced() if config.quick else SuiteScale()
    results = OctodpOrchestrator(config.prime).verify_suite(
        scale, only=config.only, threads=config.threads, seed=config.seed
    )
    print_verify(results)
    return exit_status(results), dumps_json(results)


HANDLERS = {
    "build": _build,
    "classify": _classify,
    "lines": _lines,
    "trees": _trees,
    "triangulations": _triangulations,
    "sample": _sample,
    "blowdown": _blowdown,
    "verify": _verify,
}


def run(config: RunConfig) -> tuple[int, str]:
    """Dispatch one command; map failures to exit status 1 or 2."""
    try:
        return HANDLERS[config.command](config)
    except PreconditionError as exc:
        logger.error("Precondition failed: %s", exc)
        return EXIT_PRECONDITION, f"error: {exc}\n"
    except InvariantViolation as exc:
        logger.error("Invariant violated: %s", exc)
        return EXIT_INVARIANT, f"internal error: {exc}\n"
    except Exception as exc:
        logger.exception("Unexpected failure in %s", config.command)
        return EXIT_INVARIANT, f"internal error: {exc}\n"


# ----------------------------------------------------------------------
# Console output
# ----------------------------------------------------------------------

def print_banner() -> None:
    print()
    print("╔══════════════════════════════════════════════════════════╗")
    print("║                    Octodp — Octanomials                  ║")
    print("║        Cubic surfaces, 27 lines and tropical trees       ║")
    print("╚══════════════════════════════════════════════════════════╝")
    print()


def print_results(results: dict) -> None:
    """Pretty-print the pipeline results."""
    summary = results.get("summary", {})

    print()
    print("┌──────────────────────────────────────────────────────────┐")
    print("│                   PIPELINE RESULTS                       │")
    print("├──────────────────────────────────────────────────────────┤")
    print(f"│  Status      : {results.get('status', 'N/A'):<41}│")
    print(f"│  Duration    : {results.get('total_duration_s', 0):<41}│")
    print(f"│  Moduli      : {','.join(summary.get('moduli', [])):<41}│")
    print(f"│  Prime       : {summary.get('prime', 'N/A'):<41}│")
    print(f"│  Class       : {str(summary.get('class')):<41}│")
    print(f"│  Type        : {summary.get('type', 'N/A'):<41}│")
    print(f"│  Blow-down   : {'PASS' if summary.get('blowdown') else 'FAIL':<41}│")
    print("├──────────────────────────────────────────────────────────┤")
    print(f"│  Statistic: {str(summary.get('statistic', 'N/A'))[:44]:<44}│")
    print("└──────────────────────────────────────────────────────────┘")

    for step_name, step_data in results.get("steps", {}).items():
        if "error" not in step_data:
            print(f"\n  ✔ {step_name:<25} ({step_data.get('duration_s', '?')}s)")
        else:
            print(f"\n  ✘ {step_name:<25} ERROR: {step_data.get('error', 'Unknown')}")

    errors = results.get("errors", [])
    if errors:
        print("\n⚠ Errors:")
        for err in errors:
            print(f"  - {err}")
    print()


def print_verify(results: dict) -> None:
    print()
    for name, outcome in results.get("criteria", {}).items():
        mark = "✔" if outcome.get("passed") else "✘"
        print(f"  {mark} {name:<28} ({outcome.get('duration_s', '?')}s)")
    print(f"\n  {results.get('passed', 0)}/{results.get('total', 0)} criteria passed")
    print()


# ----------------------------------------------------------------------
# Argument parsing
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="octodp",
        description="Octodp — octanomial cubic surfaces, their lines and tropical trees",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Enable debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, moduli: bool = False) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        if moduli:
            p.add_argument("-d", "--moduli", required=True, help="d1,...,d6 as n or n/m")
        p.add_argument("-p", "--prime", type=int, default=None, help="Prime for valuations")
        p.add_argument("--seed", type=int, default=None, help="Random stream seed")
        p.add_argument("-o", "--output", default=None, help="Report path (default: stdout)")
        if name in FORMATS:
            p.add_argument("--format", choices=FORMATS[name], default="json")
        return p

    build = add("build", "Run the whole pipeline on one moduli vector", moduli=True)
    build.add_argument("--trees", action="store_true", help="Embed the 27 trees")
    classify = add("classify", "Tropical classification at a prime", moduli=True)
    classify.add_argument("--trees", action="store_true", help="Embed the 27 trees")
    add("lines", "Census of the 27 lines", moduli=True)
    add("trees", "The 27 phylogenetic trees", moduli=True)
    add("triangulations", "Regular triangulations of the octanomial support")
    sample = add("sample", "Search chain samples for a target arrangement")
    sample.add_argument("--target", choices=sorted(TARGETS), default="naruki-general")
    sample.add_argument("--budget", type=int, default=100, help="Number of draws")
    sample.add_argument("--threads", type=int, default=None, help="Worker cap")
    add("blowdown", "Blow-down round trip", moduli=True)
    verify = add("verify", "Run the acceptance battery")
    verify.add_argument("--quick", action="store_true", help="Reduced sample counts")
    verify.add_argument("--only", nargs="+", default=None, help="Criterion names")
    verify.add_argument("--threads", type=int, default=None, help="Worker cap")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose)

    try:
        config = RunConfig.from_args(args)
    except PreconditionError as exc:
        print(f"❌ {exc}", file=sys.stderr)
        return EXIT_PRECONDITION

    if config.command in ("build", "verify"):
        print_banner()
    status, report = run(config)
    if status != EXIT_OK and report.startswith(("error:", "internal error:")):
        print(report, end="", file=sys.stderr)
    elif report and (config.output or config.command not in ("build", "verify")):
        write_text(report, config.output)
    return status


if __name__ == "__main__":
    sys.exit(main())

#! python3

# Copyright Tomer Figenblat.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python script for resolving Koszul quiver algebras."""

import logging
import sys
from argparse import ArgumentParser, Namespace, RawDescriptionHelpFormatter
from dataclasses import dataclass
from enum import Enum, unique
from pathlib import Path
from typing import Callable, Dict, FrozenSet, Optional, Sequence, Tuple, final

from koszulres.algebra import FieldSpec
from koszulres.bimodule import (
    BimoduleResolution,
    bimodule_euler_characteristic,
    bimodule_homology,
    build_bimodule_resolution,
    check_linear_over_enveloping,
    verify_delta_squared,
    verify_tensor_down_left,
    verify_tensor_down_right,
)
from koszulres.comult import (
    ComultTable,
    build_left_resolution,
    comult_table,
    verify_h_identity,
    verify_left_resolution,
)
from koszulres.presentation import Presentation, PresentationError
from koszulres.presentation.parser import parse_presentation
from koszulres.presentation.report import (
    Fragment,
    betti_fragment,
    bimodule_fragment,
    build_report,
    check_fragment,
    comult_fragment,
    levels_fragment,
    meta_fragment,
    serialize_report,
    verdict_fragment,
)
from koszulres.presentation.tools import validate_presentation
from koszulres.resolution import (
    CheckResult,
    ConstructionError,
    KoszulVerdict,
    Limits,
    NotQuadraticError,
    ResolutionData,
    ResourceLimitError,
    VerdictKind,
    Witness,
)
from koszulres.resolution.ideal import lambda_block_dimensions
from koszulres.resolution.tools import (
    certify_koszul_up_to,
    check_directness,
    check_identities,
    compute_resolution,
)

logger = logging.getLogger("koszul")

DEFAULT_LEVELS = 6

EXIT_OK = 0
EXIT_NOT_KOSZUL = 1
EXIT_INVALID = 2
EXIT_LIMIT = 3

_examples = """example usage:

python koszul.py resolve tests/testresources/corpus/poly2.alg\n
python koszul.py resolve tests/testresources/corpus/poly2.alg --json out.json\n
python koszul.py check-koszul tests/testresources/corpus/dn.alg --levels 6 --degree 8\n
python koszul.py check-koszul tests/testresources/corpus/kr3.alg\n
python koszul.py comult tests/testresources/corpus/a4z.alg -n 4\n
python koszul.py bimodule tests/testresources/corpus/qp2.alg --check square tensor\n
python koszul.py report tests/testresources/corpus/poly3.alg --field "GF(5)" -c all\n
"""


@unique
class Command(Enum):
    """Enum for the supported commands."""

    RESOLVE = "resolve", "compute the resolution elements and the betti numbers"
    COMULT = "comult", "certify and compute the comultiplication constants"
    BIMODULE = "bimodule", "certify and build the bimodule resolution"
    CHECK_KOSZUL = "check-koszul", "certify koszulity up to the bounds"
    REPORT = "report", "run every stage into one report"

    def __new__(cls, value: str, description: str) -> "Command":
        """Override the default enum constructor and include extra properties."""
        new_enum = object.__new__(cls)
        new_enum._value_ = value
        new_enum._description = description  # type: ignore
        return new_enum

    @property
    def description(self) -> str:
        """Return the command help text."""
        return self._description  # type: ignore


@unique
class CheckKind(Enum):
    """Enum for the structural checks of the bimodule stage."""

    SQUARE = "square"
    TENSOR = "tensor"
    EXACT = "exact"
    LEFT = "left"
    ALL = "all"

    @classmethod
    def expand(cls, names: Sequence[str]) -> FrozenSet["CheckKind"]:
        """Return the selected checks, all standing for every check."""
        kinds = {cls(name) for name in names}
        if cls.ALL in kinds:
            return frozenset(kind for kind in cls if kind is not cls.ALL)
        return frozenset(kinds)


@final
@dataclass(frozen=True)
class RunConfig:
    """Configuration of a single run.

    Args:
        input: path of the presentation file.
        command: the command to run.
        levels: the level bound N.
        degree: the internal degree bound D, defaults to N + 2.
        field: optional field overriding the presentation field.
        output: optional path for the json report, stdout otherwise.
        checks: the structural checks to run.
        limits: computation limits.

    """

    input: str
    command: Command
    levels: int = DEFAULT_LEVELS
    degree: Optional[int] = None
    field: Optional[FieldSpec] = None
    output: Optional[str] = None
    checks: FrozenSet[CheckKind] = frozenset({CheckKind.SQUARE, CheckKind.TENSOR})
    limits: Limits = Limits()

    def __post_init__(self) -> None:
        """Post initialization, validate the bounds."""
        if self.levels < 2:
            raise ValueError(f"levels must be at least 2, got {self.levels}")
        if self.degree_bound < self.levels:
            raise ValueError(
                f"degree {self.degree_bound} must be at least levels {self.levels}"
            )

    @property
    def degree_bound(self) -> int:
        """Return the resolved degree bound."""
        return self.degree if self.degree is not None else self.levels + 2

    @classmethod
    def from_args(cls, args: Namespace) -> "RunConfig":
        """Create a configuration from parsed arguments."""
        return cls(
            input=args.input,
            command=Command(args.command),
            levels=args.levels,
            degree=args.degree,
            field=FieldSpec.parse(args.field) if args.field else None,
            output=args.json,
            checks=CheckKind.expand(args.check),
            limits=Limits(max_level=args.max_level, max_block_paths=args.max_paths),
        )


# shared parse
shared_parser = ArgumentParser(add_help=False)
shared_parser.add_argument(
    "-v",
    "--verbose",
    default=False,
    action="store_true",
    help="log the progress of every stage",
)
shared_parser.add_argument("input", type=str, help="the presentation file")
shared_parser.add_argument(
    "-n",
    "--levels",
    type=int,
    default=DEFAULT_LEVELS,
    help=f"the level bound, defaults to {DEFAULT_LEVELS}",
)
shared_parser.add_argument(
    "-d",
    "--degree",
    type=int,
    default=None,
    help="the internal degree bound, defaults to levels + 2",
)
shared_parser.add_argument(
    "-f",
    "--field",
    type=str,
    default=None,
    help="override the presentation field, Q or GF(p)",
)
shared_parser.add_argument(
    "-o",
    "--json",
    type=str,
    default=None,
    help="write the json report to this path instead of stdout",
)
shared_parser.add_argument(
    "-c",
    "--check",
    nargs="+",
    choices=[kind.value for kind in CheckKind],
    default=[CheckKind.SQUARE.value, CheckKind.TENSOR.value],
    help="the structural checks to run, defaults to square and tensor",
)
shared_parser.add_argument(
    "--max-level",
    type=int,
    default=Limits().max_level,
    help="refuse levels above this bound",
)
shared_parser.add_argument(
    "--max-paths",
    type=int,
    default=Limits().max_block_paths,
    help="refuse linear systems with more paths than this bound",
)

# parent parser
main_parser = ArgumentParser(
    description="Resolve Koszul quiver algebras",
    epilog=_examples,
    formatter_class=RawDescriptionHelpFormatter,
)

subparsers = main_parser.add_subparsers(
    dest="command", description="supported commands"
)
subparsers.required = True
for command in Command:
    subparsers.add_parser(
        command.value, help=command.description, parents=[shared_parser]
    )

Outcome = Tuple[Fragment, int]


def _exit_code(verdicts: Dict[str, Fragment]) -> int:
    for fragment in verdicts.values():
        if fragment.get("passed") is False or fragment.get("koszul") is False:
            return EXIT_NOT_KOSZUL
    return EXIT_OK


def _not_quadratic(config: RunConfig, exc: NotQuadraticError) -> KoszulVerdict:
    return KoszulVerdict(
        VerdictKind.NOT_KOSZUL,
        config.levels,
        config.degree_bound,
        Witness(str(exc), level=2, degree=exc.degree),
    )


def _certify(config: RunConfig, presentation: Presentation) -> KoszulVerdict:
    logger.info("certifying up to (%s, %s)", config.levels, config.degree_bound)
    return certify_koszul_up_to(
        presentation, config.levels, config.degree_bound, config.limits
    )


def _deepened(
    config: RunConfig, data: ResolutionData, res: BimoduleResolution
) -> BimoduleResolution:
    degree = config.degree_bound
    if res.max_level >= degree:
        return res
    deep = compute_resolution(data.presentation, degree, config.limits)
    table = comult_table(deep, degree, config.limits)
    return build_bimodule_resolution(table, deep, degree)


def _bimodule_checks(
    config: RunConfig,
    data: ResolutionData,
    table: ComultTable,
    res: BimoduleResolution,
) -> Dict[str, CheckResult]:
    checks = {"linear": check_linear_over_enveloping(res)}
    presentation = data.presentation
    if CheckKind.SQUARE in config.checks:
        checks["delta-squared"] = verify_delta_squared(res, config.limits)
    if CheckKind.TENSOR in config.checks:
        left = build_left_resolution(table, data)
        checks["tensor-down-right"] = verify_tensor_down_right(res, data)
        checks["tensor-down-left"] = verify_tensor_down_left(res, left)
    if CheckKind.EXACT in config.checks:
        homology = bimodule_homology(res, config.degree_bound, config.limits)
        found = homology.first_nonzero()
        checks["bimodule-exact"] = CheckResult(
            "bimodule-exact",
            found is None,
            None if found is None else f"level {found[0]}, degree {found[1]}",
        )
        deep = _deepened(config, data, res)
        for d in range(config.degree_bound + 1):
            euler = bimodule_euler_characteristic(deep, d, config.limits)
            if euler != lambda_block_dimensions(presentation, d, config.limits):
                checks["bimodule-euler"] = CheckResult(
                    "bimodule-euler", False, f"degree {d}"
                )
                break
        else:
            checks["bimodule-euler"] = CheckResult("bimodule-euler", True)
    if CheckKind.LEFT in config.checks:
        checks["left"] = verify_left_resolution(
            presentation, config.levels, config.degree_bound, config.limits
        )
    return checks


def resolve(config: RunConfig, presentation: Presentation) -> Outcome:
    """Compute the resolution data and the betti numbers."""
    logger.info("resolving up to level %s", config.levels)
    try:
        data = compute_resolution(presentation, config.levels, config.limits)
    except NotQuadraticError as exc:
        verdicts = {"koszul": verdict_fragment(_not_quadratic(config, exc))}
        outcome = build_report(meta_fragment(presentation), verdicts=verdicts)
        return outcome, EXIT_NOT_KOSZUL
    verdicts = {
        "identity": check_fragment(check_identities(data)),
        "directness": check_fragment(
            check_directness(data, config.degree_bound, config.limits)
        ),
    }
    outcome = build_report(
        meta_fragment(presentation, **betti_fragment(data)),
        levels_fragment(data),
        verdicts=verdicts,
    )
    return outcome, _exit_code(verdicts)


def check_koszul(config: RunConfig, presentation: Presentation) -> Outcome:
    """Certify koszulity and report the witness of a failure."""
    verdict = _certify(config, presentation)
    verdicts = {"koszul": verdict_fragment(verdict)}
    outcome = build_report(meta_fragment(presentation), verdicts=verdicts)
    return outcome, _exit_code(verdicts)


def _stages(config: RunConfig, presentation: Presentation, full: bool) -> Outcome:
    verdict = _certify(config, presentation)
    verdicts = {"koszul": verdict_fragment(verdict)}
    stopped = build_report(meta_fragment(presentation), verdicts=verdicts)
    if not verdict.is_koszul and not full:
        return stopped, EXIT_NOT_KOSZUL
    try:
        data = compute_resolution(presentation, config.levels, config.limits)
    except NotQuadraticError:
        return stopped, EXIT_NOT_KOSZUL
    logger.info("computing the comultiplication table")
    table = comult_table(data, config.levels, config.limits)
    verdicts["h-identity"] = check_fragment(verify_h_identity(table, data))
    bimodule_part = None
    if full or config.command is Command.BIMODULE:
        logger.info("building the bimodule resolution")
        res = build_bimodule_resolution(table, data, config.levels)
        bimodule_part = bimodule_fragment(res)
        for name, result in _bimodule_checks(config, data, table, res).items():
            verdicts[name] = check_fragment(result)
    outcome = build_report(
        meta_fragment(presentation, **betti_fragment(data)),
        levels_fragment(data) if full else (),
        comult_fragment(table) if full or config.command is Command.COMULT else None,
        bimodule_part,
        verdicts,
    )
    return outcome, _exit_code(verdicts)


def comult(config: RunConfig, presentation: Presentation) -> Outcome:
    """Certify, then compute the comultiplication constants."""
    return _stages(config, presentation, False)


def bimodule(config: RunConfig, presentation: Presentation) -> Outcome:
    """Certify, then build and check the bimodule resolution."""
    return _stages(config, presentation, False)


def report(config: RunConfig, presentation: Presentation) -> Outcome:
    """Run every stage into a single report."""
    return _stages(config, presentation, True)


COMMANDS: Dict[Command, Callable[[RunConfig, Presentation], Outcome]] = {
    Command.RESOLVE: resolve,
    Command.COMULT: comult,
    Command.BIMODULE: bimodule,
    Command.CHECK_KOSZUL: check_koszul,
    Command.REPORT: report,
}


def _write(config: RunConfig, text: str) -> None:
    if config.output:
        Path(config.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run a command and return its exit code.

    Args:
        argv: the command line arguments, sys.argv when omitted.

    Return:
        0 on success, 1 when koszulity fails with a witness in the report, 2 for
        invalid input and 3 when a computation limit is exceeded.

    """
    args = main_parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        config = RunConfig.from_args(args)
        text = Path(config.input).read_text(encoding="utf-8")
        presentation = parse_presentation(text, config.field)
    except (PresentationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    for diagnostic in validate_presentation(presentation):
        logger.log(diagnostic.severity.level, "%s", diagnostic.message)
    try:
        outcome, code = COMMANDS[config.command](config, presentation)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except ConstructionError as exc:
        logger.error("construction failed: %s", exc)
        witness = CheckResult("construction", False, str(exc))
        outcome = build_report(
            meta_fragment(presentation),
            verdicts={"construction": check_fragment(witness)},
        )
        code = EXIT_NOT_KOSZUL
    _write(config, serialize_report(outcome))
    return code


def main() -> None:
    """Run the koszul script."""
    sys.exit(run())


if __name__ == "__main__":
    main()

"""CLI command implementations."""

from __future__ import annotations

import csv
import json
import logging
import sys
from pathlib import Path
from typing import Any

from cadist import __version__
from cadist.cli.config import RunConfig, Settings
from cadist.cli.formatters import OutputFormatter
from cadist.exceptions import ConfigurationError, ParameterRangeError
from cadist.filling import (
    area,
    check_certificate,
    corridor_fill,
    dehn_inequality_check,
    dense_loop_lengths,
    dense_loops,
    phi_step_function,
)
from cadist.groups import dense_witness_loop, load_presentation, render_word, tokenize
from cadist.growth import (
    OrderWitness,
    check_preceq,
    compare_both,
    default_range,
    parse_function,
    strongly_superpoly_check,
    superquadratic_check,
)
from cadist.profile import check_length_bound, compute_h, profile_rows, write_profile_csv
from cadist.structures import CayleyAutomaticStructure, catalog_names, resolve, verify_structure

logger = logging.getLogger(__name__)

DEFAULT_DEHN_STRUCTURE = "Z2-zigzag-binary"
DEFAULT_DEHN_PRESENTATION = "Z2"
DEFAULT_DEHN_SIZES = (4, 6, 8)
DEFAULT_GRID = "16x8"


def parse_grid(text: str) -> tuple[int, int]:
    """'16x8' -> (16, 8).

    Raises:
        ParameterRangeError: If the text is not KxM with positive K and M
    """
    try:
        k, m = (int(x) for x in text.lower().split("x"))
    except ValueError:
        raise ParameterRangeError("grid", text, "KxM with integers K, M") from None
    if k < 1 or m < 1:
        raise ParameterRangeError("grid", text, "K >= 1 and M >= 1")
    return k, m


def parse_int_list(text: str | list[int]) -> list[int]:
    if isinstance(text, list):
        return [int(x) for x in text]
    return [int(x) for x in text.replace(",", " ").split()]


class CLICommands:
    """Implementation of CLI commands.

    Every command returns the process exit code: 0 on success and 1 when a
    check does not pass, after printing a failure record. Errors propagate
    to the entry point.
    """

    def __init__(self, config: RunConfig, settings: Settings | None = None) -> None:
        """Initialize CLI commands.

        Args:
            config: Effective run configuration
            settings: Environment settings (budget caps)
        """
        self.config = config
        self.settings = settings or Settings()

    @property
    def options(self) -> dict[str, Any]:
        return self.config.options

    @property
    def word_budget(self) -> int:
        return self.settings.cap_words(self.config.max_words)

    def _structure(self, default: str | None = None) -> CayleyAutomaticStructure:
        name = self.config.structure or default
        if name is None:
            raise ConfigurationError("No structure given; use --structure")
        s = resolve(name)
        s.graph.ball_bound = self.settings.cap_elements(self.config.ball_bound)
        return s

    def _header(self, s: CayleyAutomaticStructure | None = None) -> dict[str, Any]:
        header: dict[str, Any] = {
            "tool": f"cadist {__version__}",
            "config_digest": self.config.digest(),
            "seed": self.config.seed,
        }
        if s is not None:
            header["structure"] = s.name
            header["constants"] = s.filling_constants.as_dict()
        return header

    def _write_json(self, name: str, payload: Any, header: dict[str, Any]) -> Path:
        path = self.config.out_dir / name
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as f:
            json.dump({"header": header, "result": payload}, f, indent=2, sort_keys=True)
            f.write("\n")
        logger.info("Wrote %s", path)
        return path

    def _failure(self, error: str, message: str, details: Any = None) -> int:
        record = {"status": "failed", "error": error, "message": message, "details": details}
        print(json.dumps(record, sort_keys=True))
        return 1

    def list_structures(self) -> int:
        include_raw = bool(self.options.get("include_raw"))
        rows = [resolve(name).summary() for name in catalog_names(include_raw)]
        print(OutputFormatter.format_structure_list(rows))
        self._write_json("structures.json", rows, self._header())
        return 0

    def verify(self) -> int:
        s = self._structure()
        report = verify_structure(
            s, self.config.depth, budget=self.word_budget, workers=self.config.workers
        )
        print(OutputFormatter.format_verification(report))
        self._write_json(f"verify-{s.name}.json", report.model_dump(mode="json"), self._header(s))
        failure = report.first_failure()
        if failure is not None:
            return self._failure("VerificationFailed", failure.name, failure.counterexample)
        return 0

    def hfun(self) -> int:
        s = self._structure()
        n = 12 if self.config.n is None else self.config.n
        profile = compute_h(
            s,
            n,
            budget=self.word_budget,
            radius_cap=self.config.radius_cap,
            workers=self.config.workers,
        )
        header = self._header(s)
        out = self.options.get("out")
        path = Path(out) if out else self.config.out_dir / f"h-{s.name}.csv"
        write_profile_csv(profile, path, header)
        self._write_json(f"h-{s.name}.json", profile.model_dump(mode="json"), header)
        print(OutputFormatter.format_header(header))
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["n", "h", "witness"])
        writer.writerows(profile_rows(profile))

        if self.options.get("check_length"):
            bound = check_length_bound(s, n, budget=self.word_budget, workers=self.config.workers)
            self._write_json(f"length-bound-{s.name}.json", bound.model_dump(mode="json"), header)
            if not bound.passed:
                return self._failure(
                    "LengthBoundViolated",
                    f"|u| > m d(1, psi(u)) + e on {s.name}",
                    {"word": render_word(bound.violation or [])},
                )
            print(OutputFormatter.format_success(f"Length bound holds on L<={n}"))
        return 0

    def _loop(self, s: CayleyAutomaticStructure) -> tuple[str, ...]:
        if self.options.get("dense_n") is not None:
            return dense_witness_loop(int(self.options["dense_n"]))
        if self.options.get("loop_file"):
            path = Path(self.options["loop_file"])
            if not path.exists():
                raise ConfigurationError(f"Loop file not found: {path}")
            return tokenize(path.read_text(), s.generators.names)
        if self.options.get("loop") is not None:
            return tokenize(str(self.options["loop"]), s.generators.names)
        raise ConfigurationError("No loop given; use --loop, --loop-file or --dense-n")

    def fill(self) -> int:
        s = self._structure()
        loop = self._loop(s)
        profile = None
        if self.options.get("profile_n") is not None:
            profile = compute_h(
                s,
                int(self.options["profile_n"]),
                budget=self.word_budget,
                radius_cap=self.config.radius_cap,
                workers=self.config.workers,
            )
        cert = corridor_fill(
            s, loop, profile=profile, radius_cap=self.config.radius_cap, budget=self.word_budget
        )
        check = check_certificate(s, cert, budget=self.word_budget)
        print(OutputFormatter.format_certificate(cert, check))
        out = self.options.get("out") or f"certificate-{s.name}.json"
        payload = {**cert.model_dump(mode="json"), "check": check.model_dump(mode="json")}
        self._write_json(out, payload, self._header(s))
        if not check.passed:
            return self._failure(
                "CertificateCheckFailed", "certificate check failed", check.first_failure
            )
        return 0

    def area(self) -> int:
        presentation = load_presentation(self.options.get("presentation") or "Z2")
        word = tokenize(str(self.options.get("word") or ""), presentation.alphabet)
        result = area(presentation, word, self.config.max_area)
        print(OutputFormatter.format_success(f"area({render_word(word)}) = {result.area}"))
        header = {**self._header(), "presentation": presentation.name}
        self._write_json(f"area-{presentation.name}.json", result.model_dump(mode="json"), header)
        return 0

    def dehn_check(self) -> int:
        s = self._structure(DEFAULT_DEHN_STRUCTURE)
        presentation = load_presentation(
            self.options.get("presentation") or DEFAULT_DEHN_PRESENTATION
        )
        if self.options.get("sizes") is not None:
            sizes = parse_int_list(self.options["sizes"])
        elif self.config.n is not None:
            sizes = [self.config.n]
        else:
            sizes = list(DEFAULT_DEHN_SIZES)
        samples = int(self.options.get("samples", 8))
        reports = []
        for n in sizes:
            report = dehn_inequality_check(
                s,
                presentation,
                n,
                samples=samples,
                seed=self.config.seed,
                max_area=self.config.max_area,
                workers=self.config.workers,
            )
            print(OutputFormatter.format_dehn(report))
            reports.append(report)
        header = {**self._header(s), "presentation": presentation.name}
        self._write_json(
            f"dehn-{s.name}.json", [r.model_dump(mode="json") for r in reports], header
        )
        for report in reports:
            if not report.passed:
                case = next(c for c in report.cases if not c.passed)
                return self._failure(
                    "DehnInequalityFailed",
                    f"Dehn inequality fails at n={report.n}",
                    {"loop": render_word(case.loop), "failure": case.failure},
                )
        return 0

    def dense_loops(self) -> int:
        s = self._structure("LL2")
        n_max = 2 if self.config.n is None else self.config.n
        rows = []
        for n, loop in dense_loops(n_max):
            rows.append(
                {
                    "n": n,
                    "length": len(loop),
                    "loop": render_word(loop),
                    "is_loop": s.graph.is_identity(loop),
                }
            )
        for row in rows:
            mark = "✓" if row["is_loop"] else "✗"
            print(f"{mark} n={row['n']} length {row['length']}: {row['loop']}")
        self._write_json(f"dense-loops-{s.name}.json", rows, self._header(s))
        bad = next((r for r in rows if not r["is_loop"]), None)
        if bad is not None:
            return self._failure("NotALoop", f"witness loop n={bad['n']} is not a loop", bad)
        return 0

    def phi(self) -> int:
        if self.options.get("lengths") is not None:
            lengths = parse_int_list(self.options["lengths"])
        else:
            lengths = dense_loop_lengths(2 if self.config.n is None else self.config.n)
        fn = phi_step_function(lengths)
        upto = int(self.options.get("upto") or lengths[-1] + 8)
        header = self._header()
        path = self.config.out_dir / "phi.csv"
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as f:
            for key, value in header.items():
                f.write(f"# {key}: {json.dumps(value, sort_keys=True)}\n")
            f.write(f"# breakpoints: {json.dumps(list(fn.breakpoints))}\n")
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(["n", "phi"])
            writer.writerows([n, fn(n)] for n in range(upto + 1))
        print(OutputFormatter.format_success(f"phi through {list(fn.breakpoints)} -> {path}"))
        return 0

    def compare(self) -> int:
        g = parse_function(str(self.options.get("g") or "step:incomparable"))
        f = parse_function(str(self.options.get("f") or "identity"))
        k_max, m_max = parse_grid(str(self.options.get("grid") or DEFAULT_GRID))
        range_end = int(self.options.get("range") or default_range(g, f))
        breakpoints_only = bool(self.options.get("breakpoints_only"))
        header = self._header()

        if self.options.get("witness"):
            k, m, n = (int(x) for x in str(self.options["witness"]).split(","))
            check = check_preceq(
                g, f, OrderWitness(K=k, M=m, N=n), range_end, breakpoints_only=breakpoints_only
            )
            self._write_json("preceq.json", check.model_dump(mode="json"), header)
            if not check.holds:
                return self._failure(
                    "WitnessRefuted",
                    f"{g.spec} <= {k} {f.spec}({m} n) fails",
                    {"violation": check.violation, "undecided": check.undecided},
                )
            print(OutputFormatter.format_success(f"witness ({k},{m},{n}) {check.label}"))
            return 0

        result = compare_both(
            g,
            f,
            k_max,
            m_max,
            range_end,
            workers=self.config.workers,
            breakpoints_only=breakpoints_only,
        )
        print(OutputFormatter.format_comparison(result))
        self._write_json("compare.json", result.model_dump(mode="json"), header)
        return 0

    def classify(self) -> int:
        f = parse_function(str(self.options.get("f") or "exp:2"))
        sq = superquadratic_check(f)
        strong = strongly_superpoly_check(f, workers=self.config.workers)
        print(OutputFormatter.format_growth(sq, strong))
        payload = {
            "superquadratic": {**sq.model_dump(mode="json"), "evidence": sq.evidence},
            "strong": {**strong.model_dump(mode="json"), "found": strong.found},
        }
        self._write_json("classify.json", payload, self._header())
        return 0


COMMANDS = {
    "list": CLICommands.list_structures,
    "verify": CLICommands.verify,
    "hfun": CLICommands.hfun,
    "fill": CLICommands.fill,
    "area": CLICommands.area,
    "dehn-check": CLICommands.dehn_check,
    "dense-loops": CLICommands.dense_loops,
    "phi": CLICommands.phi,
    "compare": CLICommands.compare,
    "classify": CLICommands.classify,
}


def run(config: RunConfig, settings: Settings | None = None) -> int:
    """Dispatch one subcommand and return its exit code.

    Raises:
        ConfigurationError: If the subcommand is unknown
    """
    try:
        command = COMMANDS[config.subcommand]
    except KeyError:
        raise ConfigurationError(
            f"Unknown subcommand {config.subcommand!r}. Valid: {', '.join(COMMANDS)}"
        ) from None
    logger.info(
        "Running %s (digest %s)",
        config.subcommand,
        config.digest(),
        extra={"subcommand": config.subcommand},
    )
    return command(CLICommands(config, settings))

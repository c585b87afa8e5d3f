"""Output formatting utilities for CLI."""

from __future__ import annotations

import json
from collections.abc import Mapping
from typing import Any

from cadist.filling import CertificateCheck, DehnReport, FillingCertificate
from cadist.growth import Comparability, GridReport, StrongReport, SuperquadraticReport
from cadist.structures import VerificationReport


class OutputFormatter:
    """Format output for CLI display."""

    @staticmethod
    def format_structure_list(rows: list[dict[str, Any]]) -> str:
        """Format catalog summaries for display.

        Args:
            rows: Structure summaries

        Returns:
            Formatted string
        """
        if not rows:
            return "No structures found."
        lines = [f"\nFound {len(rows)} structure(s):\n"]
        for i, row in enumerate(rows, 1):
            lines.append(f"{i}. {row['name']}")
            lines.append(f"   Model: {row['model']}")
            lines.append(f"   Generators: {' '.join(row['generators'])}")
            lines.append(f"   Symbols: {' '.join(row['letters'])}")
            lines.append(f"   (m, e): ({row['m']}, {row['e']})")
            if row.get("description"):
                lines.append(f"   {row['description']}")
            lines.append("")
        return "\n".join(lines)

    @staticmethod
    def format_verification(report: VerificationReport) -> str:
        lines = [
            f"\nStructure: {report.structure} "
            f"(depth {report.depth}, m={report.m}, e={report.e})"
        ]
        for check in report.checks:
            mark = "✓" if check.passed else "✗"
            lines.append(f"{mark} {check.name}: {check.checked} checked")
            if check.counterexample:
                record = json.dumps(check.counterexample, sort_keys=True)
                lines.append(f"   counterexample: {record}")
        return "\n".join(lines)

    @staticmethod
    def format_certificate(cert: FillingCertificate, check: CertificateCheck) -> str:
        lines = [
            f"\nLoop of length {len(cert.loop)} in {cert.structure}: {len(cert.cells)} cells",
            f"Max cell perimeter: {cert.max_cell_perimeter} "
            f"(bound 4h({cert.h_argument}) + sigma = {cert.perimeter_bound}, "
            f"h from {cert.h_source}{', truncated' if cert.truncated else ''})",
        ]
        for name in (
            "free_reduction_identity",
            "cells_are_loops",
            "geodesics_within_h",
            "profile_matches",
            "perimeter_within_bound",
            "cell_count_within_bound",
        ):
            mark = "✓" if getattr(check, name) else "✗"
            lines.append(f"{mark} {name.replace('_', ' ')}")
        return "\n".join(lines)

    @staticmethod
    def format_dehn(report: DehnReport) -> str:
        mark = "✓" if report.passed else "✗"
        return (
            f"{mark} Dehn inequality on {report.structure} at n={report.n} "
            f"(D={report.dehn_constant:g}, {len(report.cases)} loops, seed {report.seed}): "
            f"min margin {report.min_margin}"
        )

    @staticmethod
    def format_grid(report: GridReport) -> str:
        if report.all_refuted:
            return f"{report.g} vs {report.f}: all witnesses refuted, {report.label}"
        survivors = ", ".join(f"({k},{m})" for k, m in report.surviving[:8])
        more = "" if len(report.surviving) <= 8 else f" and {len(report.surviving) - 8} more"
        return (
            f"{report.g} vs {report.f}: {len(report.surviving)} surviving, "
            f"e.g. {survivors}{more}; {report.label}"
        )

    @staticmethod
    def format_comparison(result: Comparability) -> str:
        lines = [
            OutputFormatter.format_grid(result.g_below_f),
            OutputFormatter.format_grid(result.f_below_g),
        ]
        if result.g_below_f.all_refuted and result.f_below_g.all_refuted:
            lines.append("all witnesses refuted both directions")
        return "\n".join(lines)

    @staticmethod
    def format_growth(sq: SuperquadraticReport, strong: StrongReport) -> str:
        truth = strong.ground_truth
        return "\n".join(
            [
                f"{sq.function}: super-quadratic evidence {sq.evidence} "
                f"(catalog: {sq.ground_truth}), {sq.label}",
                f"{strong.function}: {len(strong.witnesses)} strong witnesses "
                f"(catalog: {truth.strongly_superpolynomial}), {strong.label}",
            ]
        )

    @staticmethod
    def format_header(header: Mapping[str, Any]) -> str:
        return "\n".join(f"# {k}: {json.dumps(v, sort_keys=True)}" for k, v in header.items())

    @staticmethod
    def format_success(message: str) -> str:
        """Format success message.

        Args:
            message: Success message

        Returns:
            Formatted string
        """
        return f"✓ {message}"

    @staticmethod
    def format_error(message: str) -> str:
        """Format error message.

        Args:
            message: Error message

        Returns:
            Formatted string
        """
        return f"✗ {message}"

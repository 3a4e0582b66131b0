"""Report documents and their JSON and table renderings.

Reports hold no timestamps or host details, so the same configuration always
renders to the same bytes. Table output shows margins in scientific notation
with 3 significant digits; JSON keeps full precision.
"""

import math
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from qbnet_entropy.batch import RunResult
from qbnet_entropy.config import REPORT_SCHEMA, OutputFormat, RunConfig
from qbnet_entropy.entropy import nats_to_bits
from qbnet_entropy.errors import ConfigError
from qbnet_entropy.holevo import HolevoReport
from qbnet_entropy.randgen import GENERATOR_ALGORITHM, GENERATOR_VERSION
from qbnet_entropy.rum import RumSystem, mask_parties, rum_subset_table
from qbnet_entropy.serialization import dumps, encode_float, encode_floats, verdict_to_json
from qbnet_entropy.verdicts import CheckVerdict


def format_margin(x: float) -> str:
    """3 significant digits in scientific notation; infinities by name."""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.2e}"


def _status(ok: bool) -> str:
    return "ok" if ok else "FAIL"


def _table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(str(c)) for c in column) for column in zip(header, *rows, strict=True)]
    lines = [
        "  ".join(str(cell).ljust(width) for cell, width in zip(row, widths, strict=True)).rstrip()
        for row in (header, *rows)
    ]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _base(command: str) -> dict[str, Any]:
    return {
        "schema": REPORT_SCHEMA,
        "command": command,
        "generator": {"algorithm": GENERATOR_ALGORITHM, "version": GENERATOR_VERSION},
    }


def check_document(result: RunResult, config: RunConfig) -> dict[str, Any]:
    """Report of a `check` run: per-id summary, every verdict and the counterexamples."""
    doc = _base("check")
    doc["config"] = {
        "ids": list(config.ids),
        "trials": config.trials,
        "dims": list(config.dims),
        "seed": config.seed,
    }
    doc["summary"] = [
        {
            "id": b.id.value,
            "description": b.description,
            "dims": list(b.dims),
            "trials": b.trials,
            "passed": b.passed,
            "min_margin": encode_float(b.min_margin),
        }
        for b in result.batches
    ]
    doc["verdicts"] = [verdict_to_json(v) for b in result.batches for v in b.verdicts]
    doc["counterexamples"] = [verdict_to_json(v) for v in result.counterexamples]
    doc["passed"] = result.passed
    return doc


def check_table(result: RunResult) -> str:
    """Human-readable summary of a `check` run."""
    rows = [
        [
            b.id.value,
            str(b.trials),
            str(b.passed),
            format_margin(b.min_margin),
            _status(b.all_passed),
        ]
        for b in result.batches
    ]
    text = _table(["id", "trials", "passed", "min margin", "status"], rows)
    counter_rows = [
        [v.id, v.label, format_margin(v.margin), _status(v.as_expected)]
        for v in result.counterexamples
    ]
    text += "\ncounterexamples (expected to fail)\n"
    text += _table(["id", "naive identity", "margin", "status"], counter_rows)
    text += f"\n{'PASS' if result.passed else 'FAIL'}\n"
    return text


def entropy_document(values: Sequence[tuple[str, float]]) -> dict[str, Any]:
    """Values of the requested quantities in nats and bits."""
    doc = _base("entropy")
    doc["quantities"] = [
        {"quantity": q, "nats": encode_float(v), "bits": encode_float(nats_to_bits(v))}
        for q, v in values
    ]
    return doc


def entropy_table(values: Sequence[tuple[str, float]]) -> str:
    """Quantities with 4 decimals in nats and bits."""
    rows = [[q, f"{v:.4f}", f"{nats_to_bits(v):.4f}"] for q, v in values]
    return _table(["quantity", "nats", "bits"], rows)


def holevo_document(report: HolevoReport, source: str, seed: int) -> dict[str, Any]:
    """Holevo information, the accessible-information lower bound and their gap."""
    doc = _base("holevo-demo")
    doc.update(
        {
            "source": source,
            "seed": seed,
            "samples": report.samples,
            "hol": report.hol,
            "acc_lower_bound": report.acc_lower_bound,
            "gap": report.gap,
            "holds": report.holds,
            "basis_info": report.basis_info,
            "per_sample": encode_floats(report.per_sample),
        },
    )
    return doc


def holevo_table(report: HolevoReport, source: str) -> str:
    """Holevo demo summary."""
    rows = [
        ["ensemble", source],
        ["Hol (nats)", f"{report.hol:.4f}"],
        ["Acc lower bound (nats)", f"{report.acc_lower_bound:.4f}"],
        ["gap", format_margin(report.gap)],
        ["computational basis (nats)", f"{report.basis_info:.4f}"],
        ["random measurements", str(report.samples)],
        ["bound holds", _status(report.holds)],
    ]
    return _table(["quantity", "value"], rows)


def rum_document(system: RumSystem, verdicts: Sequence[CheckVerdict]) -> dict[str, Any]:
    """Every subset value and the suite verdicts."""
    table = rum_subset_table(system)
    doc = _base("rum")
    doc["n"] = system.n
    doc["subsets"] = [
        {"parties": mask_parties(mask), "entropy": float(table[mask])}
        for mask in range(1, system.full_mask + 1)
    ]
    doc["verdicts"] = [verdict_to_json(v) for v in verdicts]
    doc["passed"] = all(v.as_expected for v in verdicts)
    return doc


def rum_table(system: RumSystem, verdicts: Sequence[CheckVerdict]) -> str:
    """Suite verdicts with their instance counts."""
    rows = [
        [v.id, v.label, str(v.instances), format_margin(v.margin), _status(v.as_expected)]
        for v in verdicts
    ]
    return f"roots-of-unity model, n = {system.n}\n" + _table(
        ["id", "claim", "instances", "margin", "status"],
        rows,
    )


def render(doc: dict[str, Any], table: str, output_format: OutputFormat) -> str:
    """Pick the JSON or the table rendering."""
    return dumps(doc) if output_format is OutputFormat.JSON else table


def write_output(text: str, out: str | None) -> None:
    """Write a rendered report to `out`, or to stdout when None.

    Raises:
        ConfigError: If `out` cannot be written.
    """
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as e:
        msg = f"cannot write report to {out}: {e.strerror}"
        raise ConfigError(msg) from e

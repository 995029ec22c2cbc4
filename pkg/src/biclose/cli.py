"""Command-line front end.

Reads a CSV/TSV file plus its JSON sidecar schema, enumerates biclusters,
optionally applies the relevance filter and the greedy selection, and
serializes the results.  Exit codes: 0 ok, 2 configuration error, 3 data
error.  Set BICLOSE_LOG to a level name (INFO, DEBUG, ...) for progress
output.
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .datamodel import (
    BicloseError,
    DataError,
    EnumParams,
    SchemaError,
    load_dataset,
    load_schema,
    _read_table,
)
from .enumerator import enumerate_biclusters
from .oracle import brute_force_enumerate
from .rules import (
    filter_relevance,
    greedy_select,
    render_qcar,
    row_coverage,
    score_rules,
)

log = logging.getLogger("biclose")

STAGE_CHAIN = ("enumerate", "filter1", "filter2")
FORMATS = ("json", "csv", "text")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3


@dataclass
class RunConfig:
    input_path: Path
    schema_path: Path
    min_rows: int = 1
    min_cols: int = 1
    min_conf: float = 0.95
    min_lift_distance: float = 0.2
    stages: tuple[str, ...] = ("enumerate",)
    out_dir: Path = Path("out")
    formats: tuple[str, ...] = ("json", "text")
    use_oracle: bool = False

    def __post_init__(self):
        if tuple(self.stages) != tuple(STAGE_CHAIN[: len(self.stages)]):
            raise SchemaError(
                "stages must be a prefix of "
                f"{','.join(STAGE_CHAIN)}; got {','.join(self.stages) or '(none)'}"
            )
        bad = [f for f in self.formats if f not in FORMATS]
        if bad:
            raise SchemaError(f"unknown output formats: {', '.join(bad)}")


@dataclass
class SchemaReport:
    """Outcome of checking a schema file against a data header."""

    bindings: list[str] = field(default_factory=list)
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems


def validate_schema(schema_path: str | Path, header: list[str]) -> SchemaReport:
    """Check a schema file against a header row and report the bindings."""
    report = SchemaReport()
    try:
        ds = load_schema(schema_path)
    except SchemaError as exc:
        report.problems.append(str(exc))
        return report

    declared = {c.name for c in ds.columns}
    if len(set(header)) != len(header):
        report.problems.append("duplicate column names in data header")
    for name in header:
        if name == ds.label_column:
            report.bindings.append(f"{name}: label column")
        elif name in declared:
            col = ds.column(name)
            report.bindings.append(
                f"{name}: {col.kind.value} eps={col.epsilon:g}"
            )
        else:
            report.problems.append(f"header column {name!r} not in schema")
    for name in sorted(declared - set(header)):
        report.problems.append(f"schema column {name!r} not in data header")
    if ds.label_column is not None and ds.label_column not in header:
        report.problems.append(
            f"label column {ds.label_column!r} not in data header"
        )
    return report


def _json_metrics(m) -> dict:
    return {
        "support": m.support,
        "rsup": round(m.rsup, 6),
        "confidence": round(m.confidence, 6),
        "completeness": round(m.completeness, 6),
        "lift": round(m.lift, 6),
        "leverage": round(m.leverage, 6),
    }


def _bicluster_entry(b, matrix, scored_entry) -> dict:
    entry = {
        "extent": [i + 1 for i in b.extent],
        "intent": [j + 1 for j in b.intent],
    }
    if scored_entry is not None:
        qcar, metrics = scored_entry
        entry["rule"] = {
            "text": render_qcar(qcar, matrix),
            "consequent": qcar.consequent,
            "items": [
                {
                    "column": matrix.schema[it.column].name,
                    "lo": round(it.lo, 6),
                    "hi": round(it.hi, 6),
                }
                for it in qcar.antecedent
            ],
        }
        entry["metrics"] = _json_metrics(metrics)
    return entry


def _coverage_pct(scored, matrix):
    rows, cols = row_coverage(scored, matrix)
    return round(100.0 * rows, 6), round(100.0 * cols, 6)


def run(config: RunConfig) -> int:
    """Execute the configured stages and write the requested artifacts."""
    matrix = load_dataset(config.input_path, config.schema_path)
    log.info(
        "loaded %s: %d rows, %d columns%s",
        config.input_path,
        matrix.n,
        matrix.m,
        "" if matrix.row_labels is None else " (labeled)",
    )
    if not config.stages:
        log.info("no stages requested; dry parse only")
        return EXIT_OK

    labeled = matrix.row_labels is not None
    if not labeled and len(config.stages) > 1:
        raise DataError(
            "filter stages need class labels but the schema declares no "
            "label column"
        )

    params = EnumParams.for_matrix(matrix, config.min_rows, config.min_cols)
    if config.use_oracle:
        biclusters = brute_force_enumerate(matrix, params)
    else:
        biclusters = enumerate_biclusters(matrix, params)
    log.info("enumerated %d maximal biclusters", len(biclusters))

    scored = score_rules(biclusters, matrix) if labeled else None
    stage_rules = {"enumerate": scored}
    if "filter1" in config.stages:
        stage_rules["filter1"] = filter_relevance(
            scored, config.min_conf, config.min_lift_distance
        )
        log.info("relevance filter kept %d rules", len(stage_rules["filter1"]))
    if "filter2" in config.stages:
        stage_rules["filter2"] = greedy_select(stage_rules["filter1"], matrix)
        log.info("greedy selection kept %d rules", len(stage_rules["filter2"]))

    config.out_dir.mkdir(parents=True, exist_ok=True)
    final_stage = config.stages[-1]

    summary = {
        "input": config.input_path.name,
        "n_rows": matrix.n,
        "n_cols": matrix.m,
        "params": {
            "min_rows": config.min_rows,
            "min_cols": config.min_cols,
            "min_conf": config.min_conf,
            "min_lift_distance": config.min_lift_distance,
        },
        "stages": {},
    }
    for stage in config.stages:
        if stage == "enumerate":
            count = len(biclusters)
            cov = _coverage_pct(scored, matrix) if labeled else None
        else:
            count = len(stage_rules[stage])
            cov = _coverage_pct(stage_rules[stage], matrix)
        summary["stages"][stage] = {
            "biclusters": count,
            "row_coverage_pct": None if cov is None else cov[0],
            "column_coverage_pct": None if cov is None else cov[1],
        }

    if "json" in config.formats:
        entries = [
            _bicluster_entry(b, matrix, scored[k] if scored else None)
            for k, b in enumerate(biclusters)
        ]
        _write_json(config.out_dir / "biclusters.json", entries)
        _write_json(config.out_dir / "summary.json", summary)
    if "csv" in config.formats:
        _write_csv(config.out_dir / "biclusters.csv", biclusters, matrix, scored)
    if "text" in config.formats and labeled:
        final = stage_rules[final_stage]
        lines = [render_qcar(q, matrix, m) for q, m in final]
        (config.out_dir / "rules.txt").write_text(
            "\n".join(lines) + ("\n" if lines else "")
        )
    return EXIT_OK


def _write_json(path: Path, obj):
    path.write_text(json.dumps(obj, sort_keys=True, indent=None) + "\n")


def _write_csv(path: Path, biclusters, matrix, scored):
    import csv as _csv

    with open(path, "w", newline="") as fh:
        writer = _csv.writer(fh)
        header = ["extent", "intent"]
        if scored is not None:
            header += [
                "rule", "consequent", "support", "rsup", "confidence",
                "completeness", "lift", "leverage",
            ]
        writer.writerow(header)
        for k, b in enumerate(biclusters):
            row = [
                " ".join(str(i + 1) for i in b.extent),
                " ".join(str(j + 1) for j in b.intent),
            ]
            if scored is not None:
                q, m = scored[k]
                row += [
                    render_qcar(q, matrix), q.consequent, m.support,
                    round(m.rsup, 6), round(m.confidence, 6),
                    round(m.completeness, 6), round(m.lift, 6),
                    round(m.leverage, 6),
                ]
            writer.writerow(row)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="biclose",
        description=(
            "Enumerate all maximal homogeneous biclusters of a mixed-attribute "
            "CSV dataset and optionally distill them into class rules."
        ),
    )
    parser.add_argument("--input", required=True, help="CSV/TSV data file with a header row")
    parser.add_argument("--schema", required=True, help="JSON sidecar schema file")
    parser.add_argument("--mr", type=int, default=1, help="minimum rows per bicluster (default 1)")
    parser.add_argument("--mc", type=int, default=1, help="minimum columns per bicluster (default 1)")
    parser.add_argument("--min-conf", type=float, default=0.95,
                        help="relevance filter: minimum confidence (default 0.95)")
    parser.add_argument("--min-lift-dist", type=float, default=0.2,
                        help="relevance filter: minimum |lift - 1| (default 0.2)")
    parser.add_argument("--stages", default="enumerate",
                        help="comma list, a prefix of enumerate,filter1,filter2; "
                             "empty for a dry parse (default: enumerate)")
    parser.add_argument("--out", default="out", help="output directory (default: out)")
    parser.add_argument("--format", default="json,text",
                        help="comma list of json,csv,text (default: json,text)")
    parser.add_argument("--use-oracle", action="store_true", help=argparse.SUPPRESS)
    parser.add_argument("--version", action="version", version=f"biclose {__version__}")
    return parser


def main(argv=None) -> int:
    logging.basicConfig(
        level=os.environ.get("BICLOSE_LOG", "WARNING").upper(),
        format="%(levelname)s %(name)s: %(message)s",
    )
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            input_path=Path(args.input),
            schema_path=Path(args.schema),
            min_rows=args.mr,
            min_cols=args.mc,
            min_conf=args.min_conf,
            min_lift_distance=args.min_lift_dist,
            stages=tuple(s for s in args.stages.split(",") if s),
            out_dir=Path(args.out),
            formats=tuple(f for f in args.format.split(",") if f),
            use_oracle=args.use_oracle,
        )
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        header, _ = _read_table(config.input_path)
        report = validate_schema(config.schema_path, header)
        for line in report.bindings:
            log.info("bound %s", line)
        if not report.ok:
            for line in report.problems:
                print(f"error: {line}", file=sys.stderr)
            return EXIT_CONFIG
        return run(config)
    except (SchemaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BicloseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())

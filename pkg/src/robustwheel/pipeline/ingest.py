"""Reading replicate responses from CSV."""

import csv
import io
import math
import re
from pathlib import Path

import numpy as np

from ..exceptions import DuplicateRun, IoError, MissingRun, NonNumeric, ValidationError
from ..taguchi import ResponseMatrix

_REPLICATE = re.compile(r"replicate_(\d+)$")


def parse_responses(text, plan, source="<responses>"):
    rows = list(csv.reader(io.StringIO(text)))
    rows = [r for r in rows if any(cell.strip() for cell in r)]
    if not rows:
        raise ValidationError(f"{source}: no header row")
    header = [h.strip() for h in rows[0]]
    reps = [_REPLICATE.match(h) for h in header[1:]]
    if header[0] != "run" or not reps or not all(reps) or [
        int(m.group(1)) for m in reps
    ] != list(range(1, len(reps) + 1)):
        raise ValidationError(
            f"{source}: header must be run,replicate_1,...,replicate_n", [f"got {header}"]
        )
    n_rep = len(reps)
    seen = {}
    bad_numbers = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != n_rep + 1:
            raise ValidationError(
                f"{source}: line {lineno} has {len(row)} fields, expected {n_rep + 1}"
            )
        try:
            run = int(row[0])
        except ValueError:
            bad_numbers.append(f"line {lineno}, run: {row[0]!r}")
            continue
        values = []
        for k, cell in enumerate(row[1:], start=1):
            try:
                v = float(cell)
            except ValueError:
                v = math.nan
            if not math.isfinite(v):
                bad_numbers.append(f"line {lineno}, replicate_{k}: {cell!r}")
            values.append(v)
        if run in seen:
            raise DuplicateRun(f"{source}: run {run} appears on lines {seen[run][0]} and {lineno}")
        seen[run] = (lineno, values)
    if bad_numbers:
        raise NonNumeric(f"{source}: non-numeric response values", bad_numbers)
    expected = set(range(1, plan.n_runs + 1))
    missing = sorted(expected - set(seen))
    extra = sorted(set(seen) - expected)
    if missing or extra:
        details = [f"missing run {r}" for r in missing] + [
            f"run {r} is not in the {plan.array_id} plan (1..{plan.n_runs})" for r in extra
        ]
        raise MissingRun(f"{source}: responses do not align with the plan", details)
    values = np.array([seen[r][1] for r in range(1, plan.n_runs + 1)], dtype=float)
    return ResponseMatrix(values)


def ingest_responses(path, plan):
    """Load ``run,replicate_1..replicate_n`` rows aligned to ``plan``."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read responses ({exc.strerror})", path) from exc
    return parse_responses(text, plan, str(path))


def responses_csv(responses):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["run", *[f"replicate_{k}" for k in range(1, responses.n_replicates + 1)]])
    for i, row in enumerate(responses.values, start=1):
        w.writerow([i, *[f"{v:.6f}" for v in row]])
    return buf.getvalue()

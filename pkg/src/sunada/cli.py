"""Command-line batch front-end: ``sunada --job FILE [--job FILE ...]``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .config import load_caps
from .jobs import EXIT_CONFIRMED, EXIT_ERROR, JobError, dumps_report, parse_job, run_job

log = logging.getLogger("sunada")


def _execute(args: tuple[str, int | None, bool, str | None]) -> tuple[str, dict]:
    text, seed, timing, caps = args
    if caps:
        load_caps(caps)
    try:
        job = parse_job(text)
    except JobError as exc:
        return "", {"status": "error", "exit_code": EXIT_ERROR,
                    "error": {"type": "JobError", "violations": exc.errors}}
    t0 = time.perf_counter()
    report = run_job(job, seed=seed)
    if timing:
        report["timing_seconds"] = round(time.perf_counter() - t0, 3)
    return report["job_hash"], report


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sunada", description="Run Sunada-equivalence jobs and write JSON reports.")
    ap.add_argument("--job", action="append", required=True, metavar="FILE", help="job file (repeatable)")
    ap.add_argument("--out", metavar="DIR", help="directory for reports (default: stdout)")
    ap.add_argument("--seed", type=int, default=None, help="seed for randomized checks")
    ap.add_argument("--threads", type=int, default=1, help="worker processes for independent jobs")
    ap.add_argument("--caps", metavar="FILE", help="JSON file overriding resource caps")
    ap.add_argument("--timing", action="store_true", help="add wall-clock timing (breaks byte-identity)")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.caps:
        load_caps(args.caps)
    texts = []
    for f in args.job:
        try:
            texts.append(Path(f).read_text())
        except OSError as exc:
            print(f"cannot read {f}: {exc}", file=sys.stderr)
            return EXIT_ERROR
    work = [(t, args.seed, args.timing, args.caps) for t in texts]
    if args.threads > 1 and len(work) > 1:
        with ProcessPoolExecutor(args.threads) as pool:
            outs = list(pool.map(_execute, work))
    else:
        outs = [_execute(w) for w in work]
    code = EXIT_CONFIRMED
    out_dir = Path(args.out) if args.out else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    for f, (h, report) in zip(args.job, outs):
        code = max(code, report["exit_code"])
        text = dumps_report(report)
        if out_dir:
            name = f"{h or 'invalid-' + Path(f).stem}.json"
            (out_dir / name).write_text(text)
            log.info("%s -> %s (%s)", f, name, report["status"])
        else:
            sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Run the pipeline on every stored construction and print or save the reports.

    python scripts/run_constructions.py            # text reports
    python scripts/run_constructions.py --json out/ # one JSON file per construction
"""

import argparse
import time
from pathlib import Path

from darboux_eta.pipeline import fixture_ids, load_fixture, run_blueprint


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("ids", nargs="*", help="construction ids (default: all)")
    parser.add_argument("--json", type=Path, help="directory for JSON reports")
    parser.add_argument("--no-frommer", action="store_true")
    args = parser.parse_args()
    if args.json:
        args.json.mkdir(parents=True, exist_ok=True)
    for ident in args.ids or fixture_ids():
        start = time.perf_counter()
        report = run_blueprint(load_fixture(ident), keep_going=True, frommer=not args.no_frommer)
        print(report.text())
        print(f"time: {time.perf_counter() - start:.1f} s\n")
        if args.json:
            (args.json / f"{ident}.json").write_text(report.to_json() + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()

"""Run the ten-element worked example end to end and print the report."""

import argparse
import time

from bohrlogic.cli import render
from bohrlogic.scenario import worked_example_report


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--format", default="table", choices=["table", "json"])
    args = ap.parse_args()
    t0 = time.perf_counter()
    doc = worked_example_report()
    doc["seconds"] = round(time.perf_counter() - t0, 3)
    print(render(doc, args.format), end="")


if __name__ == "__main__":
    main()

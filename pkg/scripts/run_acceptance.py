"""Run the acceptance battery, print the table and optionally dump details as JSON."""
import argparse
import json

from dkron.suite import run_suite


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, default=None, help="restrict q-aware criteria to one q")
    ap.add_argument("--json", default=None, help="write full details to this file")
    a = ap.parse_args()
    results = run_suite(a.q)
    for r in results:
        print(r.line(), flush=True)
    if a.json:
        with open(a.json, "w") as fh:
            json.dump([r.to_json() for r in results], fh, indent=2)
    print(f"{sum(r.ok for r in results)}/{len(results)} passed")


if __name__ == "__main__":
    main()

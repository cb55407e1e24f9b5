#!/usr/bin/env python3
"""Runs `syzmirror fiber-invariants` on a local P^2 job and compares 1 + delta_0
with the standalone oracle."""
import json
import os
import subprocess
import sys
from fractions import Fraction

sys.path.insert(0, os.path.dirname(__file__))
from local_p2_oracle import fiber_series  # noqa: E402

ORDER = 8


def main(exe, job):
    out = subprocess.run([exe, "fiber-invariants", "-i", job, "--order", str(ORDER)],
                         check=True, capture_output=True, text=True).stdout
    series = json.loads(out)["one_plus_delta"][0]
    got = [Fraction(0)] * (ORDER + 1)
    for term in series:
        got[term["e"][0]] = Fraction(term["c"])
    want, _ = fiber_series(ORDER)
    if got != want:
        print("mismatch:", [str(x) for x in got], "vs", [str(x) for x in want])
        return 1
    print("cli agrees with oracle through order", ORDER)
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1], sys.argv[2]))

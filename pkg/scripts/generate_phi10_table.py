#!/usr/bin/env python3
"""Regenerate the packaged coefficient table of the weight-10 Jacobi form.

Builds the table through the Eisenstein-combination construction, verifies
it in full against the independent eta-theta product construction, and
writes src/paratwist/data/phi10_c.json.gz.

Usage: python scripts/generate_phi10_table.py [max_disc]
"""

import gzip
import json
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from paratwist.forms import phi10_eta_theta_table, phi10_table  # noqa: E402

DEFAULT_MAX_DISC = 30000


def main() -> None:
    max_disc = int(sys.argv[1]) if len(sys.argv) > 1 else DEFAULT_MAX_DISC
    t0 = time.time()
    table = phi10_table(max_disc)
    print(f"eisenstein route: {len(table)} values in {time.time() - t0:.1f}s")
    t0 = time.time()
    check = phi10_eta_theta_table(max_disc)
    keys = set(table) | set(check)
    bad = [d for d in keys if table.get(d, 0) != check.get(d, 0)]
    if bad:
        raise SystemExit(f"construction mismatch at discriminants {bad[:10]}")
    print(f"eta-theta route agrees on {len(keys)} values "
          f"({time.time() - t0:.1f}s)")
    payload = {
        "format": "paratwist-phi10-v1",
        "weight": 10,
        "index": 1,
        "max_disc": max_disc,
        "values": {str(d): v for d, v in sorted(table.items()) if v},
    }
    out = os.path.join(os.path.dirname(__file__), "..", "src", "paratwist",
                       "data", "phi10_c.json.gz")
    with gzip.open(out, "wt") as fh:
        json.dump(payload, fh, sort_keys=True)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()

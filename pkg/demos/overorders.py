"""Overorders of Z + 5^i Z_K for the three quintic test fields, and the CLI.

The same enumeration is then run through ``ordertree overorders`` with one
and with four worker threads; the JSON Lines output is byte for byte equal.
"""

import io
import json
import tempfile
from pathlib import Path

from ordertree import nf_make, p_overorders
from ordertree.cli import main
from ordertree.suites import INERT, RAMIFIED, SPLIT, conductor_order

for name, f in (("split", SPLIT), ("inert", INERT), ("ramified", RAMIFIED)):
    K = nf_make(f)
    counts = [len(p_overorders(conductor_order(K, 5, i), 5)) for i in (1, 2)]
    print(f"{name:9s} Z + 5 Z_K: {counts[0]:5d}   Z + 25 Z_K: {counts[1]:5d}")

with tempfile.TemporaryDirectory() as tmp:
    field = Path(tmp) / "f.json"
    field.write_text(json.dumps({"coeffs": RAMIFIED}))
    lam = Path(tmp) / "lam.json"
    lam.write_text(json.dumps(conductor_order(nf_make(RAMIFIED), 5, 2).to_field().to_json()))
    outs = []
    for threads in ("1", "4"):
        buf = io.StringIO()
        main(["overorders", "--field", str(field), "--order", str(lam), "--no-timing",
              "--threads", threads], buf)
        outs.append(buf.getvalue())
    print("threads agree:", outs[0] == outs[1])
    print("summary:", outs[0].splitlines()[-1])

"""Run the identity suite on every manifest in a directory and print a timing table.

Each manifest is verified twice through the CLI so byte-stability of the JSON
report is checked along the way.
"""

import argparse
import io
import json
import sys
import time
from contextlib import redirect_stdout
from pathlib import Path

from nlconn.cli import main as cli_main

ROOT = Path(__file__).resolve().parent.parent


def verify_bytes(path: Path, points: int) -> tuple[int, bytes]:
    buf = io.TextIOWrapper(io.BytesIO(), encoding="utf-8")
    with redirect_stdout(buf):
        code = cli_main(["verify", str(path), "--points", str(points)])
        buf.flush()
    return code, buf.buffer.getvalue()


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("directory", nargs="?", default=str(ROOT / "manifests"))
    ap.add_argument("--points", type=int, default=4)
    args = ap.parse_args()

    print(f"{'manifest':<28} {'exit':>4} {'pass':>5} {'fail':>5} {'skip':>5} {'secs':>7}  stable  failing")
    for path in sorted(Path(args.directory).glob("*.json")):
        t0 = time.perf_counter()
        code, first = verify_bytes(path, args.points)
        secs = time.perf_counter() - t0
        _, second = verify_bytes(path, args.points)
        if not first:
            print(f"{path.stem:<28} {code:>4}  (no report)")
            continue
        rep = json.loads(first)
        s = rep["summary"]
        bad = ",".join(c["check_id"] for c in rep["checks"] if c["status"] == "fail")
        print(f"{path.stem:<28} {code:>4} {s['pass']:>5} {s['fail']:>5} {s['skipped']:>5} {secs:>7.3f}  "
              f"{'yes' if first == second else 'NO':<6}  {bad}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

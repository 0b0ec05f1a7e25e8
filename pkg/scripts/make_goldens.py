#!/usr/bin/env python3
"""Regenerate the committed golden reports for the flagship fixture.

Run after any intentional change to report content, inspect the diff, and
commit.  Tests compare against these files with a 1e-9 float tolerance,
ignoring the timestamp.
"""

import contextlib
import io
import pathlib
import sys

REPO = pathlib.Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from koszul.cli import main  # noqa: E402

GOLDEN = REPO / "fixtures" / "golden"


def capture(argv) -> str:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    if code != 0:
        raise SystemExit(f"command {argv} exited {code}; refusing to freeze a failure")
    return buf.getvalue()


def main_():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    f1 = str(REPO / "fixtures" / "f1.json")
    (GOLDEN / "f1_check.json").write_text(capture(["check", f1]))
    (GOLDEN / "f1_solve.json").write_text(
        capture(["solve", f1, "--out", "/dev/null"])
    )
    (GOLDEN / "identities_seed0.json").write_text(capture(["identities", "--seed", "0"]))
    print("wrote", sorted(p.name for p in GOLDEN.iterdir()))


if __name__ == "__main__":
    main_()

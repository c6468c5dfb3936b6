"""Download the SNAP edge lists used by the acceptance suite into ./data.

    python scripts/fetch_datasets.py [--dest DIR] [name ...]

Files are stored gzipped under their SNAP names; the loader reads .gz directly.
"""

import argparse
import shutil
import sys
import urllib.request
from pathlib import Path

BASE = "https://snap.stanford.edu/data/"
FILES = {
    "ca-grqc": "ca-GrQc.txt.gz",
    "wiki-vote": "wiki-Vote.txt.gz",
    "ca-astroph": "ca-AstroPh.txt.gz",
    "ca-condmat": "ca-CondMat.txt.gz",
    "ca-hepph": "ca-HepPh.txt.gz",
    "ca-hepth": "ca-HepTh.txt.gz",
    "email-enron": "email-Enron.txt.gz",
}
REQUIRED = ("ca-grqc", "wiki-vote")


def fetch(name: str, dest: Path) -> Path:
    target = dest / FILES[name]
    if target.exists():
        return target
    part = target.with_suffix(target.suffix + ".part")
    with urllib.request.urlopen(BASE + FILES[name], timeout=60) as resp, open(part, "wb") as fh:
        shutil.copyfileobj(resp, fh)
    part.replace(target)
    return target


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("names", nargs="*", metavar="name", help=f"any of: {', '.join(FILES)}")
    ap.add_argument("--dest", type=Path, default=Path(__file__).resolve().parent.parent / "data")
    args = ap.parse_args(argv)
    unknown = [n for n in args.names if n not in FILES]
    if unknown:
        ap.error(f"unknown dataset(s): {', '.join(unknown)}")
    args.dest.mkdir(parents=True, exist_ok=True)
    status = 0
    for name in args.names or REQUIRED:
        try:
            print(fetch(name, args.dest))
        except OSError as exc:
            print(f"{name}: download failed: {exc}", file=sys.stderr)
            status = 1
    return status


if __name__ == "__main__":
    sys.exit(main())

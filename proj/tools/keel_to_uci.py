#!/usr/bin/env python3
"""Convert the KEEL copy of the UCI splice-junction set into the UCI record layout.

The KEEL file drops the per-record identifiers, so synthetic ones are assigned
in input order. Usage: keel_to_uci.py splice.dat > splice.data
"""
import sys


def main(path):
    n = 0
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("@"):
                continue
            fields = [f.strip() for f in line.split(",")]
            n += 1
            print(f"{fields[-1]},KEEL-{n:04d},{''.join(fields[:-1])}")


if __name__ == "__main__":
    main(sys.argv[1])

#!/usr/bin/env python3
"""Regenerate the bundled clean test scene PNG used by the test suite."""

import argparse
import os

from nirfuse.image import save_rgb
from nirfuse.synthetic import make_test_scene


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    default = os.path.join(os.path.dirname(__file__), "..", "tests", "data", "scene_128.png")
    parser.add_argument("--out", default=os.path.normpath(default))
    parser.add_argument("--size", type=int, default=128)
    args = parser.parse_args()

    os.makedirs(os.path.dirname(args.out), exist_ok=True)
    save_rgb(args.out, make_test_scene(args.size))
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()

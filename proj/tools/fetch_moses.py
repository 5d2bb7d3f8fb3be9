#!/usr/bin/env python3
#
# Project safekit - Copyright 2026 The safekit Authors.
# SPDX-License-Identifier: Apache-2.0
#
"""Rebuild the bundled MOSES subsets under data/moses/.

The MOSES benchmark data (MIT license) ships inside the `molsets` wheel.
This script downloads the wheel, extracts train/test splits and writes
seeded random subsets:

  data/moses/train_100k.smi  100,000 training molecules (random order)
  data/moses/test_10k.smi    10,000 held-out test molecules

The first 10,000 lines of train_100k.smi form the MOSES-10k subset.
"""
import argparse
import gzip
import io
import pathlib
import random
import subprocess
import sys
import tempfile
import zipfile


def read_split(wheel: zipfile.ZipFile, name: str) -> list[str]:
    raw = wheel.read(f"moses/dataset/data/{name}.csv.gz")
    lines = gzip.GzipFile(fileobj=io.BytesIO(raw)).read().decode().splitlines()
    return [line.strip() for line in lines[1:] if line.strip()]


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data" / "moses"))
    parser.add_argument("--seed", type=int, default=20241016)
    parser.add_argument("--wheel", default=None, help="path to an already downloaded molsets wheel")
    args = parser.parse_args()

    with tempfile.TemporaryDirectory() as tmp:
        wheel_path = args.wheel
        if wheel_path is None:
            subprocess.run([sys.executable, "-m", "pip", "download", "--no-deps", "-d", tmp, "molsets==0.3.1"], check=True)
            wheel_path = next(pathlib.Path(tmp).glob("molsets-*.whl"))
        with zipfile.ZipFile(wheel_path) as wheel:
            train = read_split(wheel, "train")
            test = read_split(wheel, "test")

    rng = random.Random(args.seed)
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "train_100k.smi").write_text("\n".join(rng.sample(train, 100_000)) + "\n")
    (out / "test_10k.smi").write_text("\n".join(rng.sample(test, 10_000)) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())

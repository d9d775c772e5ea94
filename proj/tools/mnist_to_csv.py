# Copyright 2026 The Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Converts MNIST IDX files (optionally gzipped) to the dataset CSV layout.

Usage: mnist_to_csv.py IMAGES LABELS OUT.csv [--limit N]
Writes columns f0..f783,label with pixel values scaled to [0, 1].
"""

import argparse
import csv
import gzip
import struct


def _open(path):
    return gzip.open(path, "rb") if path.endswith(".gz") else open(path, "rb")


def read_images(path):
    with _open(path) as f:
        magic, count, rows, cols = struct.unpack(">IIII", f.read(16))
        if magic != 2051:
            raise ValueError(f"{path}: not an IDX image file")
        size = rows * cols
        data = f.read(count * size)
    return [data[i * size:(i + 1) * size] for i in range(count)]


def read_labels(path):
    with _open(path) as f:
        magic, count = struct.unpack(">II", f.read(8))
        if magic != 2049:
            raise ValueError(f"{path}: not an IDX label file")
        return list(f.read(count))


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("images")
    parser.add_argument("labels")
    parser.add_argument("out")
    parser.add_argument("--limit", type=int, default=None)
    args = parser.parse_args()
    images, labels = read_images(args.images), read_labels(args.labels)
    if len(images) != len(labels):
        raise ValueError("image and label counts differ")
    n = len(images) if args.limit is None else min(args.limit, len(images))
    with open(args.out, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow([f"f{i}" for i in range(len(images[0]))] + ["label"])
        for image, label in zip(images[:n], labels[:n]):
            writer.writerow([f"{v / 255:.6g}" for v in image] + [label])


if __name__ == "__main__":
    main()

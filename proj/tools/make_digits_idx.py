#!/usr/bin/env python3
"""Build a 28x28 handwritten-digit training set in IDX format.

Upsamples the bundled scikit-learn handwritten digits (8x8, 17 gray levels)
to 28x28 and augments each class with small random shifts until the requested
per-digit count is reached. Output matches the classic MNIST container layout
(train-images-idx3-ubyte / train-labels-idx1-ubyte).
"""

import argparse
import pathlib
import struct

import numpy as np
from scipy import ndimage
from sklearn.datasets import load_digits


def upsample(img8):
    out = ndimage.zoom(img8.astype(np.float64), 28 / 8, order=1)
    out = np.clip(out, 0, 16) * (255.0 / 16.0)
    return out.astype(np.uint8)


def shift(img, dy, dx):
    out = np.zeros_like(img)
    ys = slice(max(dy, 0), 28 + min(dy, 0))
    xs = slice(max(dx, 0), 28 + min(dx, 0))
    ys_src = slice(max(-dy, 0), 28 + min(-dy, 0))
    xs_src = slice(max(-dx, 0), 28 + min(-dx, 0))
    out[ys, xs] = img[ys_src, xs_src]
    return out


def write_idx_images(path, images):
    with open(path, "wb") as f:
        f.write(struct.pack(">IIII", 0x00000803, len(images), 28, 28))
        for img in images:
            f.write(img.tobytes())


def write_idx_labels(path, labels):
    with open(path, "wb") as f:
        f.write(struct.pack(">II", 0x00000801, len(labels)))
        f.write(bytes(labels))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", required=True)
    ap.add_argument("--per-digit", type=int, default=600)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--max-shift", type=int, default=2)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    digits = load_digits()
    by_class = {d: [] for d in range(10)}
    for img, label in zip(digits.images, digits.target):
        by_class[int(label)].append(upsample(img))

    images, labels = [], []
    for d in range(10):
        base = by_class[d]
        for i in range(args.per_digit):
            img = base[i % len(base)]
            if i >= len(base):
                dy, dx = rng.integers(-args.max_shift, args.max_shift + 1, size=2)
                img = shift(img, int(dy), int(dx))
            images.append(img)
            labels.append(d)

    # interleave classes so per-digit curricula do not depend on file order
    order = rng.permutation(len(images))
    images = [images[i] for i in order]
    labels = [labels[i] for i in order]

    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_idx_images(out / "train-images-idx3-ubyte", images)
    write_idx_labels(out / "train-labels-idx1-ubyte", labels)
    print(f"wrote {len(images)} examples to {out}")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
# Copyright 2026 The irwal Authors.
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

"""Writes data/hourly_pair.csv: two synthetic hourly series with daily and
weekly memory, cross dependence and ARCH-type errors."""

import argparse

import numpy as np


def simulate(length, seed, burn_in=2000):
    rng = np.random.default_rng(seed)
    total = length + burn_in
    y = np.zeros((2, total))
    e = np.zeros((2, total))
    # (target, source, lag, coefficient)
    mean_terms = [
        (0, 0, 1, 0.55), (0, 0, 2, -0.10), (0, 0, 24, 0.20), (0, 0, 168, 0.15), (0, 1, 1, 0.08),
        (1, 1, 1, 0.70), (1, 1, 24, 0.12), (1, 1, 168, 0.10), (1, 1, 336, 0.04), (1, 0, 1, -0.05),
    ]
    vol_terms = [(0, 1, 0.30), (0, 24, 0.15), (1, 1, 0.25), (1, 2, 0.10)]  # (series, lag, alpha)
    omega = (0.05, 0.03)
    start = 336
    for t in range(start, total):
        for i in range(2):
            sigma = omega[i] + sum(a * abs(e[i, t - k]) for s, k, a in vol_terms if s == i)
            e[i, t] = sigma * rng.standard_normal()
            mean = sum(c * y[src, t - k] for tgt, src, k, c in mean_terms if tgt == i)
            y[i, t] = mean + e[i, t]
    return y[:, burn_in:]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--length", type=int, default=3000)
    parser.add_argument("--seed", type=int, default=20260501)
    parser.add_argument("--out", default="data/hourly_pair.csv")
    args = parser.parse_args()
    y = simulate(args.length, args.seed)
    with open(args.out, "w") as fh:
        fh.write("price,load\n")
        for t in range(y.shape[1]):
            fh.write(f"{y[0, t]:.10g},{y[1, t]:.10g}\n")


if __name__ == "__main__":
    main()

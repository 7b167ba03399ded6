#!/usr/bin/env python3
"""Benchmark the compiled finite-field kernel against the pure-Python one.

Times the three workloads that dominate the verification pipeline: raw
products, square-and-multiply powers with word-sized exponents, and full
Pohlig-Hellman discrete logarithms in F_{3^27}.

Run:  python benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import random
import time

MOD27 = tuple([1, 0, 0, 0, 0, 0, 0, 2] + [0] * 19 + [1])


def load_kernels():
    from galcert._fqpure import FqKernel as Pure

    kernels = {"pure": Pure}
    try:
        from galcert._fqcore import FqKernel as Compiled

        kernels["compiled"] = Compiled
    except ImportError:
        print("note: compiled kernel not built; benchmarking the fallback only")
    return kernels


def bench_mul(kernel, pairs, repeat):
    mul = kernel.mul
    t0 = time.perf_counter()
    for _ in range(repeat):
        for a, b in pairs:
            mul(a, b)
    return (time.perf_counter() - t0) / (repeat * len(pairs))


def bench_pow(kernel, bases, exponent, repeat):
    powf = kernel.pow
    t0 = time.perf_counter()
    for _ in range(repeat):
        for a in bases:
            powf(a, exponent)
    return (time.perf_counter() - t0) / (repeat * len(bases))


def bench_dlog(kind, targets):
    import importlib
    import os

    os.environ.pop("GALCERT_PURE", None)
    if kind == "pure":
        os.environ["GALCERT_PURE"] = "1"
    import galcert.ffield as ff

    importlib.reload(ff)
    ctx = ff.fq_new(3, 27, MOD27)
    c = ctx.gen
    elems = [c**t for t in targets]
    t0 = time.perf_counter()
    for e in elems:
        ff.discrete_log(c, e)
    elapsed = (time.perf_counter() - t0) / len(elems)
    os.environ.pop("GALCERT_PURE", None)
    importlib.reload(ff)
    return elapsed


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=20)
    args = parser.parse_args()

    rng = random.Random(42)
    pairs = [
        (
            tuple(rng.randrange(3) for _ in range(27)),
            tuple(rng.randrange(3) for _ in range(27)),
        )
        for _ in range(500)
    ]
    bases = [a for a, _ in pairs[:50]]
    exponent = rng.randrange(1 << 43)
    targets = [rng.randrange(1, 3**27 - 1) for _ in range(5)]

    kernels = load_kernels()
    rows = {}
    for name, cls in kernels.items():
        k = cls(3, MOD27)
        rows[name] = {
            "mul": bench_mul(k, pairs, args.repeat),
            "pow(2^43)": bench_pow(k, bases, exponent, max(1, args.repeat // 4)),
            "discrete_log": bench_dlog(name, targets),
        }

    ops = ["mul", "pow(2^43)", "discrete_log"]
    print(f"{'op':14s}" + "".join(f"{name:>14s}" for name in rows) + ("   speedup" if len(rows) == 2 else ""))
    for op in ops:
        line = f"{op:14s}"
        vals = []
        for name in rows:
            v = rows[name][op]
            vals.append(v)
            line += f"{v * 1e6:12.2f}us"
        if len(vals) == 2 and vals[1]:
            line += f"{vals[0] / vals[1]:9.1f}x"
        print(line)


if __name__ == "__main__":
    main()

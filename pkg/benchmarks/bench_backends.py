"""Compare the numba kernels against the pure-numpy fallback.

Each backend runs in its own interpreter because the backend is fixed at
import time by TEXBENCH_NO_NUMBA.

    python benchmarks/bench_backends.py [--size 512] [--repeats 7]
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, statistics, sys, time
from texbench import BACKEND
from texbench.classify import Extractor
from texbench.perturb import rotate, salt_pepper
from texbench.raster import CorpusSpec, build_corpus

size, repeats = int(sys.argv[1]), int(sys.argv[2])
images = [img for _, img in build_corpus(CorpusSpec(size=size))]
cases = {f"features:{m}": Extractor.for_method(m) for m in ("haar", "db4", "sym8", "glcm")}
cases["rotate:30"] = lambda img: rotate(img, 30)
cases["salt_pepper:0.09"] = lambda img: salt_pepper(img, 0.09, 7)
out = {}
for name, fn in cases.items():
    fn(images[0])  # compile / warm caches
    runs = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        for img in images:
            fn(img)
        runs.append((time.perf_counter() - t0) / len(images))
    out[name] = statistics.median(runs)
print(json.dumps({"backend": BACKEND, "times": out}))
"""


def run(backend_env, size, repeats):
    env = dict(os.environ)
    env.pop("TEXBENCH_NO_NUMBA", None)
    env.update(backend_env)
    proc = subprocess.run([sys.executable, "-c", WORKER, str(size), str(repeats)],
                          env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=512)
    ap.add_argument("--repeats", type=int, default=7)
    args = ap.parse_args()

    fast = run({}, args.size, args.repeats)
    slow = run({"TEXBENCH_NO_NUMBA": "1"}, args.size, args.repeats)
    print(f"per-image median over {args.repeats} repeats, {args.size}x{args.size}, 10-texture corpus\n")
    print(f"| kernel | {fast['backend']} (ms) | {slow['backend']} (ms) | speed-up |")
    print("|---|---|---|---|")
    for name in fast["times"]:
        a, b = fast["times"][name] * 1e3, slow["times"][name] * 1e3
        print(f"| {name} | {a:.3f} | {b:.3f} | {b / a:.2f}x |")


if __name__ == "__main__":
    main()

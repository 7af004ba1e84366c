"""Compiled vs pure-Python kernels, raw and inside whole computations.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit

from frobcalc import _kernels
from frobcalc._kernels import _pykernels, available_backends, use_backend
from frobcalc.frobenius import frobenius_root
from frobcalc.groebner import Ideal
from frobcalc.hsl import hsl_number
from frobcalc.invariants import nu
from frobcalc.ring import RingContext


def dense(n, deg, p, seed):
    rng = random.Random(seed)
    terms = {}
    for _ in range(deg * deg):
        m = tuple(rng.randint(0, deg) for _ in range(n))
        terms[m] = rng.randrange(1, p)
    return terms


def raw_cases():
    a, b = dense(3, 12, 101, 1), dense(3, 12, 101, 2)
    big = dense(2, 40, 7, 3)
    return {
        "mul 3 vars, ~140x140 terms": lambda k: k.mul(a, b, 101),
        "mul_trunc bound 10": lambda k: k.mul_trunc(a, b, 101, 10),
        "frob_split q=49": lambda k: k.frob_split(big, 49),
    }


def workload_cases():
    c101 = RingContext.parse("p=101;vars=x,y,z")
    cyc = RingContext.parse("p=32003;vars=a,b,c,d,e")
    cyclic5 = ("a+b+c+d+e, a*b+b*c+c*d+d*e+e*a, a*b*c+b*c*d+c*d*e+d*e*a+e*a*b,"
               " a*b*c*d+b*c*d*e+c*d*e*a+d*e*a*b+e*a*b*c, a*b*c*d*e-1")
    c7 = RingContext.parse("p=7;vars=x,y")
    c5 = RingContext.parse("p=5;vars=x,y")
    return {
        "(x+2y+3z+1)^24 at p=101": lambda: c101.poly("(x+2*y+3*z+1)^24"),
        "groebner basis, cyclic-5": lambda: Ideal.parse(cyc, cyclic5).basis,
        "frobenius root q=49": lambda: frobenius_root(Ideal.parse(c7, "(x+y+1)^60, (x-y)^55*y"), 49),
        "nu(x^2+y^3) at 7^5": lambda: nu(c7.poly("x^2+y^3"), 5),
        "hsl of x^3+y^4+x^2*y at p=5": lambda: hsl_number(c5.poly("x^3+y^4+x^2*y")),
    }


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    backends = available_backends()
    if "compiled" not in backends:
        print("compiled kernels are not built; only the python backend is available")
    mods = {"python": _pykernels}
    if "compiled" in backends:
        mods["compiled"] = _kernels._BACKENDS["compiled"]

    header = f"{'case':34s}" + "".join(f"{name:>12s}" for name in mods) + f"{'speedup':>10s}"
    print(header)
    for name, fn in raw_cases().items():
        times = {b: best(lambda: fn(mod), args.repeat) for b, mod in mods.items()}
        _row(name, times)
    for name, fn in workload_cases().items():
        times = {}
        for b in mods:
            with use_backend(b):
                times[b] = best(fn, args.repeat)
        _row(name, times)


def _row(name, times):
    cells = "".join(f"{t * 1e3:10.2f}ms" for t in times.values())
    speed = f"{times['python'] / times['compiled']:9.1f}x" if "compiled" in times else ""
    print(f"{name:34s}{cells}{speed}")


if __name__ == "__main__":
    main()

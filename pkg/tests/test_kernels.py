"""The compiled and pure kernels must agree operation for operation."""

import os
import random
import subprocess
import sys

import pytest

from galcert import ffield
from galcert._fqpure import FqKernel as PureKernel

MOD27 = tuple([1, 0, 0, 0, 0, 0, 0, 2] + [0] * 19 + [1])
MOD5 = (3, 4, 0, 0, 0, 1)  # x^5 - x - 2 reduced mod 5


def _compiled():
    try:
        from galcert._fqcore import FqKernel

        return FqKernel
    except ImportError:
        return None


@pytest.mark.parametrize("p,mod", [(3, MOD27), (5, MOD5), (2147483629, (1, 2, 1))])
def test_kernel_parity(p, mod):
    compiled = _compiled()
    if compiled is None:
        pytest.skip("compiled kernel unavailable")
    ka, kb = compiled(p, mod), PureKernel(p, mod)
    n = len(mod) - 1
    rng = random.Random(7)
    for _ in range(100):
        a = tuple(rng.randrange(p) for _ in range(n))
        b = tuple(rng.randrange(p) for _ in range(n))
        assert ka.mul(a, b) == kb.mul(a, b)
        assert ka.add(a, b) == kb.add(a, b)
        assert ka.sub(a, b) == kb.sub(a, b)
        assert ka.neg(a) == kb.neg(a)
        e = rng.randrange(1 << 50)
        assert ka.pow(a, e) == kb.pow(a, e)
    assert ka.pow(ka.zero(), 5) == kb.zero()
    assert ka.pow(a, 0) == kb.one()


@pytest.mark.parametrize("kernel_cls", [PureKernel, _compiled()])
def test_kernel_validation(kernel_cls):
    if kernel_cls is None:
        pytest.skip("compiled kernel unavailable")
    with pytest.raises(ValueError):
        kernel_cls(5, (1,))  # degree 0
    with pytest.raises(ValueError):
        kernel_cls(5, (1, 2))  # not monic
    k = kernel_cls(5, MOD5)
    with pytest.raises(ValueError):
        k.pow(k.one(), -1)


def test_pure_fallback_env(tmp_path):
    code = (
        "import galcert.ffield as f; assert not f.KERNEL_COMPILED; "
        "ctx = f.fq_new(5, 5, (-2, -1, 0, 0, 0, 1)); "
        "assert f.mult_order(ctx.gen) == 3124"
    )
    env = dict(os.environ, GALCERT_PURE="1")
    subprocess.run([sys.executable, "-c", code], check=True, env=env)

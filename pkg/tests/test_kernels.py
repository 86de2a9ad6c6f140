import subprocess
import sys

import pytest

from knuthovals import _kernels
from knuthovals._kernels import fallback
from knuthovals.search import _scan_tables


def _tables(plane, domain):
    contrib, star, d = _scan_tables(plane, domain)
    return contrib, star, d


def test_backend_is_selected():
    assert _kernels.BACKEND in ("cython", "numpy")


@pytest.mark.parametrize("domain,stop", [("full", 300_000), ("zero_one", None)])
def test_type_a_backends_agree(kn5, domain, stop):
    contrib, star, d = _tables(kn5, domain)
    hi = d ** kn5.n if stop is None else stop
    got = _kernels.scan_type_a(contrib, star, 0, hi)
    ref = fallback.scan_type_a(contrib, star, 0, hi)
    assert got == ref


@pytest.mark.parametrize("domain,stop", [("full", 300_000), ("zero_one", None)])
def test_type_b_backends_agree(td5, domain, stop):
    contrib, star, d = _tables(td5, domain)
    hi = d ** td5.n if stop is None else stop
    got = _kernels.scan_type_b(contrib, star, 0, hi)
    ref = fallback.scan_type_b(contrib, star, 0, hi)
    assert [tuple(t) for t in got] == [tuple(t) for t in ref]


def test_partitioned_scan_covers_range(kn5):
    contrib, star, d = _tables(kn5, "full")
    whole = _kernels.scan_type_a(contrib, star, 0, 400_000)
    parts = []
    for lo in range(0, 400_000, 100_000):
        parts.extend(_kernels.scan_type_a(contrib, star, lo, lo + 100_000))
    assert whole == parts


def test_env_var_forces_fallback():
    code = (
        "import os; os.environ['KNUTHOVALS_KERNEL'] = 'numpy';"
        "import knuthovals; print(knuthovals.KERNEL_BACKEND)"
    )
    out = subprocess.run([sys.executable, "-c", code], capture_output=True,
                         text=True, check=True)
    assert out.stdout.strip() == "numpy"

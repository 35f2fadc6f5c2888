"""The JIT and plain-numpy paths must agree on a canary workload."""

import json
import os
import subprocess
import sys

import numpy as np

CANARY = """
import json
import numpy as np
import bregopt as bo
from bregopt.oracle import prox_oracle

out = {"backend": bo.backend_name()}
pen = bo.penalty("scaled_burg", gamma=0.5)
out["prox_closed"] = bo.prox_scalar_closed("burg", pen, 1.0, 2.0)
out["prox_numeric"] = bo.prox_scalar_numeric("burg", pen, 1.0, 2.0)
out["oracle"] = prox_oracle("burg", pen, 1.0, 2.0)
out["lambert"] = bo.lambert_w0(1.234).w
f = bo.separable("boltzmann_shannon", [1.0, 2.0])
out["distance"] = bo.bregman_distance(f, [0.5, 1.5], [1.0, 1.0])
p = bo.bregman_project(f, bo.HyperplaneSet(a=[1.0, 1.0], b=1.0), [2.0, 2.0])
out["projection"] = list(p)
print(json.dumps(out))
"""


def _run(disable_numba):
    env = dict(os.environ)
    env["BREGOPT_DISABLE_NUMBA"] = "1" if disable_numba else "0"
    proc = subprocess.run(
        [sys.executable, "-c", CANARY],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    return json.loads(proc.stdout.strip().splitlines()[-1])


def test_backends_agree():
    jit = _run(disable_numba=False)
    plain = _run(disable_numba=True)
    assert plain["backend"] == "numpy"
    for key in ("prox_closed", "prox_numeric", "oracle", "lambert", "distance"):
        assert np.isclose(jit[key], plain[key], rtol=1e-13, atol=1e-15), key
    np.testing.assert_allclose(
        jit["projection"], plain["projection"], rtol=1e-13
    )
